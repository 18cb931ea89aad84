"""
Léxico inmutable: coincidencias por posición, perfiles de longitud por carácter
y códigos LC/WC
"""

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import (Dict, FrozenSet, Iterable, List, NamedTuple, Optional,
                    Sequence, Set, Tuple)

from ..exceptions import LexiconFormatError
from ..models.lexicon import ExpansionSummary, LexiconStats
from .chartype import CharClass, classify
from .corpus import LINE_TERMINATORS, WORD_SEPARATOR, Sentence

logger = logging.getLogger(__name__)

LONG_BUCKET = "+"
MAX_EXPLICIT_LENGTH = 5
BUCKET_ORDER = ("1", "2", "3", "4", "5", LONG_BUCKET)

EMPTY_PROFILE = "0"
NO_MATCH = "NONE"


def length_bucket(n: int) -> str:
    """Bucket de longitud: "1".."5" o "+" para palabras más largas"""
    return str(n) if n <= MAX_EXPLICIT_LENGTH else LONG_BUCKET


def sort_buckets(buckets: Iterable[str]) -> List[str]:
    """Ordena buckets con los dígitos ascendentes y "+" al final"""
    return sorted(set(buckets), key=BUCKET_ORDER.index)


def match_tag(offset: int, length: int) -> str:
    """Tag posicional B23IES de un carácter dentro de una coincidencia"""
    if length == 1:
        return "S"
    if offset == 0:
        return "B"
    if offset == length - 1:
        return "E"
    if offset == 1:
        return "2"
    if offset == 2:
        return "3"
    return "I"


def validate_lexeme(lexeme: str) -> str:
    """Valida que un lexema sea no vacío y sin separadores"""
    if not lexeme:
        raise LexiconFormatError("Lexema vacío")
    if WORD_SEPARATOR in lexeme or any(c in LINE_TERMINATORS for c in lexeme):
        raise LexiconFormatError(f"Lexema con separadores: {lexeme!r}")
    return lexeme


class PositionMatch(NamedTuple):
    """Coincidencia de un lexema que cubre una posición de la oración"""

    lexeme: str
    start: int
    length_bucket: str
    positional_tag: str

    @property
    def code(self) -> str:
        """Elemento del código WC: "S" o tag-bucket (p. ej. "B-3")"""
        if self.positional_tag == "S":
            return "S"
        return f"{self.positional_tag}-{self.length_bucket}"


@dataclass(frozen=True)
class CharRecord:
    """Información de un carácter en su oración"""

    char: str
    offset: Optional[int]
    word_length: Optional[int]
    script: str
    r_items: FrozenSet[str]
    s_items: FrozenSet[str]
    r_lengths: FrozenSet[str]
    s_lengths: FrozenSet[str]

    def as_row(self) -> Dict[str, str]:
        """Fila textual con columnas C, O, L, T, R, S, L_R, L_S"""
        return {
            "C": self.char,
            "O": "" if self.offset is None else str(self.offset),
            "L": "" if self.word_length is None else str(self.word_length),
            "T": self.script,
            "R": ", ".join(sorted(self.r_items)),
            "S": ", ".join(sorted(self.s_items)),
            "L_R": ", ".join(sort_buckets(self.r_lengths)),
            "L_S": ", ".join(sort_buckets(self.s_lengths)),
        }


class Lexicon:
    """
    Snapshot inmutable de un conjunto de lexemas

    El índice de coincidencias es un diccionario de prefijos: cada lexema guarda
    su longitud y cada prefijo propio guarda None, de modo que un recorrido
    desde cada inicio se detiene al primer fragmento desconocido.
    """

    def __init__(
        self,
        entries: Iterable[str] = (),
        generation: int = 0,
        expansion: Optional[ExpansionSummary] = None,
    ):
        self._entries = frozenset(validate_lexeme(w) for w in entries)
        self.generation = generation
        self.expansion = expansion

        self._prefixes: Dict[str, Optional[int]] = {}
        profile: Dict[str, Set[str]] = {}
        containing: Dict[str, Set[str]] = {}
        for word in self._entries:
            self._prefixes[word] = len(word)
            for i in range(1, len(word)):
                fragment = word[:i]
                self._prefixes[fragment] = self._prefixes.get(fragment, None)
            bucket = length_bucket(len(word))
            for c in set(word):
                profile.setdefault(c, set()).add(bucket)
                containing.setdefault(c, set()).add(word)

        self._char_profile = {c: frozenset(b) for c, b in profile.items()}
        self._char_lexemes = {c: frozenset(w) for c, w in containing.items()}
        self._lc_cache: Dict[str, str] = {}

    @property
    def entries(self) -> FrozenSet[str]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, lexeme: str) -> bool:
        return lexeme in self._entries

    @cached_property
    def fingerprint(self) -> str:
        """sha256 sobre los lexemas ordenados"""
        digest = hashlib.sha256()
        for word in sorted(self._entries):
            digest.update(word.encode("utf-8"))
            digest.update(b"\n")
        return digest.hexdigest()

    def char_profile(self, c: str) -> FrozenSet[str]:
        """Buckets de longitud de los lexemas que contienen el carácter"""
        return self._char_profile.get(c, frozenset())

    def lexemes_with(self, c: str) -> FrozenSet[str]:
        return self._char_lexemes.get(c, frozenset())

    def find_all(self, sentence: str) -> List[Tuple[int, int]]:
        """
        Todas las ocurrencias de lexemas en la oración

        Returns:
            Lista de intervalos (inicio, fin) ordenada por inicio y luego fin
        """
        result = []
        length = len(sentence)
        for start in range(length):
            for end in range(start + 1, length + 1):
                value = self._prefixes.get(sentence[start:end], -1)
                if value == -1:
                    break
                if value:
                    result.append((start, end))
        return result

    def match_positions(self, sentence: str) -> List[List[PositionMatch]]:
        """
        Coincidencias que cubren cada posición

        Args:
            sentence: Secuencia de caracteres

        Returns:
            Por cada posición i, las coincidencias (lexema, inicio) con
            inicio ≤ i < inicio + len(lexema)
        """
        positions: List[List[PositionMatch]] = [[] for _ in sentence]
        for start, end in self.find_all(sentence):
            lexeme = sentence[start:end]
            n = end - start
            bucket = length_bucket(n)
            for i in range(start, end):
                positions[i].append(
                    PositionMatch(lexeme, start, bucket, match_tag(i - start, n))
                )
        return positions

    def lc_code(self, c: str, char_class: Optional[CharClass] = None) -> str:
        """
        Código de longitud-categoría: escritura, "|" y buckets del perfil

        Returns:
            Código como "K|1234+"; "<escritura>|0" si el carácter no aparece
        """
        cached = self._lc_cache.get(c)
        if cached is not None:
            return cached
        script = (char_class or classify(c)).script
        buckets = self.char_profile(c)
        code = f"{script}|{''.join(sort_buckets(buckets)) if buckets else EMPTY_PROFILE}"
        self._lc_cache[c] = code
        return code

    def lc_codes(self, sentence: str) -> List[str]:
        return [self.lc_code(c) for c in sentence]

    @staticmethod
    def wc_from_matches(
        matches: Sequence[PositionMatch], c: str, include_char: bool
    ) -> str:
        codes = sorted({m.code for m in matches})
        code = "|".join(codes) if codes else NO_MATCH
        return f"{code}|{c}" if include_char else code

    def wc_code(self, sentence: str, i: int, include_char: bool = True) -> str:
        """Código palabra-carácter de la posición i"""
        matches = self.match_positions(sentence)[i]
        return self.wc_from_matches(matches, sentence[i], include_char)

    def wc_codes(self, sentence: str, include_char: bool = True) -> List[str]:
        """Códigos WC de todas las posiciones con una única búsqueda"""
        positions = self.match_positions(sentence)
        return [
            self.wc_from_matches(matches, c, include_char)
            for matches, c in zip(positions, sentence)
        ]

    def sentence_info(
        self, sentence: str, boundaries: Optional[Sequence[int]] = None
    ) -> List[CharRecord]:
        """
        Información por carácter de una oración

        Args:
            sentence: Secuencia de caracteres
            boundaries: Límites gold opcionales para las columnas O y L

        Returns:
            Una CharRecord por carácter
        """
        offsets: List[Optional[int]] = [None] * len(sentence)
        lengths: List[Optional[int]] = [None] * len(sentence)
        if boundaries is not None:
            gold = Sentence(sentence, tuple(boundaries))
            for start, end in gold.spans():
                for i in range(start, end):
                    offsets[i] = i - start
                    lengths[i] = end - start

        records = []
        for i, matches in enumerate(self.match_positions(sentence)):
            c = sentence[i]
            r_items = self.lexemes_with(c)
            s_items = frozenset(m.lexeme for m in matches)
            records.append(
                CharRecord(
                    char=c,
                    offset=offsets[i],
                    word_length=lengths[i],
                    script=classify(c).script,
                    r_items=r_items,
                    s_items=s_items,
                    r_lengths=self.char_profile(c),
                    s_lengths=frozenset(m.length_bucket for m in matches),
                )
            )
        return records

    def expand(
        self, add: Iterable[str] = (), remove: Iterable[str] = ()
    ) -> "Lexicon":
        """
        Nuevo snapshot con altas y bajas; este snapshot no cambia

        Las bajas de lexemas inexistentes se ignoran y se informan en el
        resumen `expansion` del snapshot resultante.
        """
        add_set = {validate_lexeme(w) for w in add}
        remove_set = {validate_lexeme(w) for w in remove}
        ignored = sorted(remove_set - self._entries)
        removed = remove_set & self._entries
        new_entries = (self._entries - removed) | add_set
        summary = ExpansionSummary(
            generation=self.generation + 1,
            added=len(add_set - self._entries),
            already_present=len(add_set & self._entries),
            removed=len(removed - add_set),
            ignored_removals=ignored,
            size=len(new_entries),
        )
        if ignored:
            logger.info(
                f"Bajas ignoradas (no pertenecen al léxico): {len(ignored)}",
                extra={"generation": summary.generation},
            )
        return Lexicon(new_entries, generation=summary.generation, expansion=summary)

    def stats(self) -> LexiconStats:
        histogram = {bucket: 0 for bucket in BUCKET_ORDER}
        for word in self._entries:
            histogram[length_bucket(len(word))] += 1
        return LexiconStats(
            size=len(self._entries),
            generation=self.generation,
            fingerprint=self.fingerprint,
            length_buckets=histogram,
        )


def build_from_corpus(train: Iterable[Sentence]) -> Lexicon:
    """Léxico con los tipos de palabra distintos del corpus (generación 0)"""
    words = set()
    for sentence in train:
        words.update(sentence.words)
    return Lexicon(words, generation=0)


def expand(
    lexicon: Lexicon, add: Iterable[str] = (), remove: Iterable[str] = ()
) -> Lexicon:
    return lexicon.expand(add, remove)


def match_positions(lexicon: Lexicon, sentence: str) -> List[List[PositionMatch]]:
    return lexicon.match_positions(sentence)


def lc_code(lexicon: Lexicon, c: str, char_class: Optional[CharClass] = None) -> str:
    return lexicon.lc_code(c, char_class)


def wc_code(lexicon: Lexicon, sentence: str, i: int, include_char: bool = True) -> str:
    return lexicon.wc_code(sentence, i, include_char)


def sentence_info(
    lexicon: Lexicon, sentence: str, boundaries: Optional[Sequence[int]] = None
) -> List[CharRecord]:
    return lexicon.sentence_info(sentence, boundaries)
