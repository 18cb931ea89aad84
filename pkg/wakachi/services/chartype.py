"""
Clasificación de caracteres por categoría Unicode y por clase de escritura
"""

import unicodedata
from functools import lru_cache
from typing import List, NamedTuple, Sequence

# Clases de escritura
HIRAGANA = "H"
KATAKANA = "T"
KANJI = "K"
LATIN = "L"
DIGIT = "N"
PUNCTUATION = "P"
SYMBOL = "S"
SPACE = "Z"
OTHER = "O"

SCRIPT_CLASSES = (HIRAGANA, KATAKANA, KANJI, LATIN, DIGIT, PUNCTUATION, SYMBOL, SPACE, OTHER)
JAPANESE_SCRIPTS = frozenset({HIRAGANA, KATAKANA, KANJI})

_HIRAGANA_RANGES = ((0x3041, 0x309F),)
_KATAKANA_RANGES = ((0x30A0, 0x30FF), (0xFF66, 0xFF9D), (0x31F0, 0x31FF))
_KANJI_RANGES = (
    (0x4E00, 0x9FFF),  # CJK Unified Ideographs
    (0x3400, 0x4DBF),  # Extensión A
    (0xF900, 0xFAFF),  # Ideogramas de compatibilidad
    (0x20000, 0x2FA1F),  # Extensiones B en adelante
    (0x3005, 0x3005),  # 々
)
_LATIN_RANGES = (
    (0x41, 0x5A),
    (0x61, 0x7A),
    (0xFF21, 0xFF3A),
    (0xFF41, 0xFF5A),
)


class CharClass(NamedTuple):
    """Clase de un carácter: categoría general, escritura y si es letra japonesa"""

    general: str
    script: str
    japanese_letter: bool


def _in_ranges(cp: int, ranges) -> bool:
    return any(lo <= cp <= hi for lo, hi in ranges)


def _script_of(c: str, general: str) -> str:
    cp = ord(c)
    if _in_ranges(cp, _HIRAGANA_RANGES):
        return HIRAGANA
    if _in_ranges(cp, _KATAKANA_RANGES):
        return KATAKANA
    if _in_ranges(cp, _KANJI_RANGES):
        return KANJI
    if _in_ranges(cp, _LATIN_RANGES):
        return LATIN
    if unicodedata.category(c) == "Nd":
        return DIGIT
    if general in (PUNCTUATION, SYMBOL, SPACE):
        return general
    return OTHER


@lru_cache(maxsize=65536)
def classify(c: str) -> CharClass:
    """
    Clasifica un carácter

    Args:
        c: Un único carácter (valor escalar Unicode)

    Returns:
        CharClass con la clase mayor Unicode, la escritura y el flag japonés
    """
    if len(c) != 1:
        raise ValueError(f"Se esperaba un único carácter, se recibió {c!r}")
    general = unicodedata.category(c)[0]
    script = _script_of(c, general)
    return CharClass(general, script, script in JAPANESE_SCRIPTS)


def classify_all(chars: Sequence[str]) -> List[CharClass]:
    """Clasifica cada carácter de una secuencia"""
    return [classify(c) for c in chars]
