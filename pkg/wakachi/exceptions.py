"""
Jerarquía de errores del toolkit de segmentación
"""

from typing import Optional

# Códigos de salida por familia de error
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4
EXIT_NUMERIC = 5


class WakachiError(Exception):
    """Error base del toolkit"""

    exit_code = EXIT_FAILURE


class UsageError(WakachiError):
    """Uso incorrecto de un comando u operación"""

    exit_code = EXIT_USAGE


class CorpusIOError(WakachiError):
    """Error de lectura/escritura de archivos"""

    exit_code = EXIT_IO


class CorpusFormatError(WakachiError):
    """Línea de corpus mal formada"""

    exit_code = EXIT_FORMAT

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"línea {line_number}: {message}"
        super().__init__(message)


class CorpusDecodeError(CorpusFormatError):
    """Bytes que no son UTF-8 válido"""

    pass


class LexiconFormatError(WakachiError):
    """Lexema inválido (vacío o con separadores)"""

    exit_code = EXIT_FORMAT


class EmptyInputError(WakachiError):
    """Entrada vacía donde se requieren datos"""

    exit_code = EXIT_FORMAT


class AlignmentError(WakachiError):
    """Secuencias que deberían estar alineadas no lo están"""

    exit_code = EXIT_FORMAT


class LabelEncodingError(WakachiError):
    """Etiqueta desconocida para el inventario del modelo"""

    exit_code = EXIT_FORMAT


class ModelFormatError(WakachiError):
    """Archivo de modelo corrupto o de otra versión de formato"""

    exit_code = EXIT_FORMAT


class BoundsError(WakachiError, IndexError):
    """Posición fuera del rango de la oración"""

    pass


class NumericError(WakachiError):
    """Valor no finito durante el cálculo"""

    exit_code = EXIT_NUMERIC

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (posición {position})"
        super().__init__(message)


class TrainingError(NumericError):
    """Divergencia del optimizador"""

    def __init__(self, message: str, iteration: Optional[int] = None):
        self.iteration = iteration
        if iteration is not None:
            message = f"{message} (iteración {iteration})"
        super().__init__(message)


class UndefinedResultError(WakachiError):
    """Medida indefinida para los datos dados (p. ej. tau con Y degenerada)"""

    exit_code = EXIT_NUMERIC
