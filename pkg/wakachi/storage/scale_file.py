"""
Tablas de escalas en JSON, para reutilizarlas entre entrenamientos
"""

import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from ..exceptions import CorpusIOError, ModelFormatError
from ..models.scales import ScaleTable

logger = logging.getLogger(__name__)

TEXT_REPORT_SUFFIX = ".txt"


def read_scale_table(path: Union[str, Path]) -> ScaleTable:
    """
    Lee una tabla de escalas

    Raises:
        CorpusIOError: El archivo no se puede leer
        ModelFormatError: El contenido no es una tabla válida
    """
    try:
        data = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusIOError(f"No se pudo leer la tabla de escalas {path}: {e}")
    try:
        table = ScaleTable.model_validate_json(data)
    except ValidationError as e:
        raise ModelFormatError(f"Tabla de escalas inválida en {path}: {e.error_count()} errores")
    logger.debug(f"Tabla de escalas leída de {path}: {len(table.values)} especies")
    return table


def write_scale_table(path: Union[str, Path], table: ScaleTable) -> None:
    """Escribe la tabla de escalas como JSON indentado"""
    try:
        Path(path).write_text(table.model_dump_json(indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise CorpusIOError(f"No se pudo escribir la tabla de escalas {path}: {e}")


def write_scale_report(path: Union[str, Path], table: ScaleTable) -> None:
    """
    Guarda el reporte de escalas de un entrenamiento

    Con extensión `.txt` se escribe el reporte de texto tabulado, una especie
    por línea; con cualquier otra, la tabla JSON reutilizable con `--scale-file`.
    """
    path = Path(path)
    if path.suffix.lower() != TEXT_REPORT_SUFFIX:
        write_scale_table(path, table)
        return
    try:
        path.write_text("\n".join(table.report_lines()) + "\n", encoding="utf-8")
    except OSError as e:
        raise CorpusIOError(f"No se pudo escribir el reporte de escalas {path}: {e}")
