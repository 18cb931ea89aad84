"""
Lectura de corpus segmentados, vocabulario y estadísticas de longitud de palabra
"""

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import (BinaryIO, Iterable, Iterator, List, Optional, Sequence,
                    TextIO, Tuple, Union)

from ..exceptions import (CorpusDecodeError, CorpusFormatError, CorpusIOError,
                          EmptyInputError, UsageError)
from ..models.corpus import CoverageTable, Vocab

logger = logging.getLogger(__name__)

WORD_SEPARATOR = " "

# Terminadores de línea prohibidos dentro de una palabra
LINE_TERMINATORS = frozenset("\r\x0b\x0c\x1c\x1d\x1e\x85\u2028\u2029")

LineSource = Union[BinaryIO, TextIO, Iterable[Union[bytes, str]]]


@dataclass(frozen=True)
class Sentence:
    """
    Oración segmentada: caracteres y offsets de inicio de palabra

    Los offsets cuentan valores escalares Unicode. Una oración no vacía siempre
    contiene el offset 0.
    """

    chars: str
    boundaries: Tuple[int, ...]

    def __post_init__(self):
        if not self.chars:
            if self.boundaries:
                raise CorpusFormatError("Oración vacía con límites de palabra")
            return
        if not self.boundaries or self.boundaries[0] != 0:
            raise CorpusFormatError("Los límites deben comenzar en 0")
        previous = -1
        for b in self.boundaries:
            if b <= previous or b >= len(self.chars):
                raise CorpusFormatError(
                    f"Límite inválido {b} para una oración de {len(self.chars)} caracteres"
                )
            previous = b

    @classmethod
    def from_words(cls, words: Sequence[str]) -> "Sentence":
        """Construye una oración a partir de sus palabras"""
        boundaries = []
        offset = 0
        for word in words:
            if not word:
                raise CorpusFormatError("Palabra vacía")
            boundaries.append(offset)
            offset += len(word)
        return cls("".join(words), tuple(boundaries))

    def __len__(self) -> int:
        return len(self.chars)

    def spans(self) -> List[Tuple[int, int]]:
        """Intervalos [inicio, fin) de cada palabra"""
        ends = list(self.boundaries[1:]) + [len(self.chars)]
        return list(zip(self.boundaries, ends))

    @property
    def words(self) -> List[str]:
        return [self.chars[s:e] for s, e in self.spans()]

    def word_lengths(self) -> List[int]:
        return [e - s for s, e in self.spans()]


def _iter_raw_lines(stream: LineSource) -> Iterator[Union[bytes, str]]:
    if hasattr(stream, "read"):
        data = stream.read()
        separator = b"\n" if isinstance(data, bytes) else "\n"
        parts = data.split(separator)
        # El último fragmento vacío corresponde al salto de línea final
        if parts and not parts[-1]:
            parts.pop()
        yield from parts
    else:
        for line in stream:
            yield line


def iter_lines(stream: LineSource) -> Iterator[Tuple[int, str]]:
    """
    Itera las líneas decodificadas de un flujo

    Args:
        stream: Flujo binario, de texto o iterable de líneas

    Returns:
        Iterador de (número de línea, texto sin salto de línea)
    """
    for line_number, raw in enumerate(_iter_raw_lines(stream), start=1):
        if isinstance(raw, bytes):
            try:
                text = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise CorpusDecodeError(f"UTF-8 inválido: {e.reason}", line_number)
        else:
            text = raw
        if text.endswith("\n"):
            text = text[:-1]
        yield line_number, text


def parse_line(text: str, line_number: Optional[int] = None) -> Sentence:
    """
    Convierte una línea segmentada en una oración

    Args:
        text: Palabras separadas por un único espacio ASCII
        line_number: Número de línea para los mensajes de error

    Returns:
        Sentence correspondiente
    """
    if text.startswith(WORD_SEPARATOR) or text.endswith(WORD_SEPARATOR):
        raise CorpusFormatError("Espacio al inicio o al final de la línea", line_number)
    words = text.split(WORD_SEPARATOR)
    if any(not w for w in words):
        raise CorpusFormatError("Espacios consecutivos", line_number)
    for word in words:
        if any(c in LINE_TERMINATORS for c in word):
            raise CorpusFormatError(
                f"Terminador de línea dentro de la palabra {word!r}", line_number
            )
    return Sentence.from_words(words)


def parse_corpus(stream: LineSource) -> List[Sentence]:
    """
    Lee un corpus segmentado: una oración por línea, palabras separadas por espacio

    Args:
        stream: Flujo UTF-8 (binario recomendado para detectar bytes inválidos)

    Returns:
        Lista de oraciones; las líneas vacías se omiten
    """
    sentences = []
    for line_number, text in iter_lines(stream):
        if not text:
            continue
        sentences.append(parse_line(text, line_number))
    logger.debug(f"Corpus leído: {len(sentences)} oraciones")
    return sentences


def read_corpus(path: Union[str, Path]) -> List[Sentence]:
    """Lee un corpus segmentado desde un archivo"""
    try:
        with open(path, "rb") as f:
            return parse_corpus(f)
    except OSError as e:
        raise CorpusIOError(f"No se pudo leer el corpus {path}: {e}")


def serialize(corpus: Iterable[Sentence]) -> str:
    """Emite el corpus en el formato de archivo (palabras separadas por espacio)"""
    return "".join(WORD_SEPARATOR.join(s.words) + "\n" for s in corpus)


def write_corpus(path: Union[str, Path], corpus: Iterable[Sentence]) -> None:
    """Escribe un corpus segmentado en un archivo"""
    try:
        Path(path).write_text(serialize(corpus), encoding="utf-8", newline="\n")
    except OSError as e:
        raise CorpusIOError(f"No se pudo escribir el corpus {path}: {e}")


def build_vocab(corpus: Iterable[Sentence]) -> Vocab:
    """Vocabulario de tipos de palabra y total de tokens"""
    types = set()
    tokens = 0
    for sentence in corpus:
        words = sentence.words
        types.update(words)
        tokens += len(words)
    return Vocab(types=frozenset(types), token_count=tokens)


def word_length_coverage(corpus: Sequence[Sentence], max_k: int) -> CoverageTable:
    """
    Cobertura acumulada de tokens por longitud de palabra

    Args:
        corpus: Oraciones segmentadas
        max_k: Umbral máximo de longitud a reportar

    Returns:
        CoverageTable con el porcentaje de tokens de longitud ≤ k para k en 1..max_k
    """
    if max_k < 1:
        raise UsageError("max_k debe ser positivo")
    lengths = Counter(n for s in corpus for n in s.word_lengths())
    total = sum(lengths.values())
    if total == 0:
        raise EmptyInputError("El corpus no contiene palabras")

    rows = {}
    cumulative = 0
    for k in range(1, max_k + 1):
        cumulative += lengths.get(k, 0)
        rows[k] = 100.0 * cumulative / total
    return CoverageTable(rows=rows, total_tokens=total, longest_word=max(lengths))


def mark_oov(test: Sequence[Sentence], train_vocab: Vocab) -> List[List[bool]]:
    """
    Marca cada palabra de test como OOV (True) o IV (False)

    Args:
        test: Oraciones de test
        train_vocab: Vocabulario construido solo con el corpus de entrenamiento

    Returns:
        Flags alineados con las palabras de cada oración
    """
    types = train_vocab.types
    return [[w not in types for w in s.words] for s in test]
