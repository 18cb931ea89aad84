"""
Archivos de léxico: UTF-8, un lexema por línea
"""

import logging
from pathlib import Path
from typing import Iterable, List, Union

from ..exceptions import CorpusIOError, LexiconFormatError
from ..services.corpus import iter_lines
from ..services.lexicon import Lexicon, validate_lexeme

logger = logging.getLogger(__name__)


def read_lexemes(path: Union[str, Path]) -> List[str]:
    """
    Lee los lexemas de un archivo

    Las líneas vacías se omiten y los duplicados se conservan una sola vez, en
    orden de aparición.
    """
    try:
        with open(path, "rb") as f:
            lexemes: List[str] = []
            seen = set()
            for line_number, text in iter_lines(f):
                if not text:
                    continue
                try:
                    validate_lexeme(text)
                except LexiconFormatError as e:
                    raise LexiconFormatError(f"línea {line_number}: {e}")
                if text not in seen:
                    seen.add(text)
                    lexemes.append(text)
    except OSError as e:
        raise CorpusIOError(f"No se pudo leer el léxico {path}: {e}")
    logger.debug(f"Léxico leído de {path}: {len(lexemes)} lexemas")
    return lexemes


def read_lexicon(path: Union[str, Path], generation: int = 0) -> Lexicon:
    """Lee un archivo de léxico como snapshot"""
    return Lexicon(read_lexemes(path), generation=generation)


def format_lexemes(lexemes: Iterable[str]) -> str:
    """Lexemas ordenados, uno por línea"""
    return "".join(f"{w}\n" for w in sorted(set(lexemes)))


def write_lexicon(path: Union[str, Path], lexicon: Lexicon) -> None:
    """Escribe el léxico ordenado"""
    try:
        Path(path).write_text(format_lexemes(lexicon.entries), encoding="utf-8", newline="\n")
    except OSError as e:
        raise CorpusIOError(f"No se pudo escribir el léxico {path}: {e}")
