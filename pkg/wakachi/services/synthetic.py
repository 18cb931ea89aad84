"""
Generador de corpus sintéticos con tres escrituras disjuntas
"""

import logging
from typing import List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from ..exceptions import UsageError
from .corpus import Sentence

logger = logging.getLogger(__name__)

# Rangos de caracteres que simulan tres escrituras
SCRIPT_RANGES: Tuple[Tuple[int, int], ...] = (
    (0x3042, 0x3093),  # hiragana
    (0x30A2, 0x30F3),  # katakana
    (0x4E00, 0x4F2B),  # kanji
)

# Distribución de longitudes de lexema: 1..6 caracteres
LENGTHS = np.array([1, 2, 3, 4, 5, 6])
LENGTH_WEIGHTS = np.array([0.15, 0.45, 0.2, 0.1, 0.05, 0.05])


class SyntheticCorpus(NamedTuple):
    """Corpus sintético y su vocabulario generador"""

    sentences: List[Sentence]
    lexemes: List[str]


def _random_word(rng: np.random.Generator, script: int, length: int) -> str:
    lo, hi = SCRIPT_RANGES[script]
    return "".join(chr(int(c)) for c in rng.integers(lo, hi + 1, size=length))


def generate_lexemes(
    size: int, rng: np.random.Generator, exclude: Optional[Set[str]] = None
) -> List[str]:
    """
    Lexemas distintos repartidos entre las tres escrituras

    Args:
        size: Cantidad de lexemas
        rng: Generador aleatorio
        exclude: Lexemas que no deben generarse
    """
    exclude = exclude or set()
    lexemes: List[str] = []
    seen = set(exclude)
    while len(lexemes) < size:
        script = len(lexemes) % len(SCRIPT_RANGES)
        length = int(rng.choice(LENGTHS, p=LENGTH_WEIGHTS))
        word = _random_word(rng, script, length)
        if word not in seen:
            seen.add(word)
            lexemes.append(word)
    return lexemes


def generate_corpus(
    n_sentences: int = 2000,
    vocab_size: int = 200,
    min_words: int = 4,
    max_words: int = 12,
    seed: int = 0,
) -> SyntheticCorpus:
    """
    Corpus de oraciones muestreadas de un vocabulario de juguete

    Las palabras se muestrean con frecuencias tipo Zipf.

    Args:
        n_sentences: Oraciones a generar
        vocab_size: Lexemas del vocabulario
        min_words: Mínimo de palabras por oración
        max_words: Máximo de palabras por oración
        seed: Semilla

    Returns:
        SyntheticCorpus
    """
    if n_sentences < 1 or vocab_size < 1 or not 1 <= min_words <= max_words:
        raise UsageError("Parámetros de generación inválidos")
    rng = np.random.default_rng(seed)
    lexemes = generate_lexemes(vocab_size, rng)
    weights = 1.0 / np.arange(1, vocab_size + 1) ** 0.8
    weights /= weights.sum()
    sentences = []
    for _ in range(n_sentences):
        n_words = int(rng.integers(min_words, max_words + 1))
        picks = rng.choice(vocab_size, size=n_words, p=weights)
        sentences.append(Sentence.from_words([lexemes[k] for k in picks]))
    logger.info(f"Corpus sintético: {n_sentences} oraciones, {vocab_size} lexemas")
    return SyntheticCorpus(sentences, lexemes)


def split_corpus(
    sentences: Sequence[Sentence], test_fraction: float = 0.1
) -> Tuple[List[Sentence], List[Sentence]]:
    """Divide en (train, test) conservando el orden"""
    if not 0.0 < test_fraction < 1.0:
        raise UsageError("test_fraction debe estar en (0, 1)")
    cut = int(round(len(sentences) * (1.0 - test_fraction)))
    return list(sentences[:cut]), list(sentences[cut:])


def inject_oov(
    test: Sequence[Sentence],
    known: Set[str],
    count: int = 20,
    seed: int = 1,
) -> Tuple[List[Sentence], List[str]]:
    """
    Inserta lexemas nuevos en las oraciones de test

    Cada lexema nuevo se inserta en varias oraciones, en una posición aleatoria
    entre palabras existentes.

    Args:
        test: Oraciones de test
        known: Lexemas a evitar (vocabulario de entrenamiento)
        count: Lexemas nuevos a inyectar
        seed: Semilla

    Returns:
        (oraciones modificadas, lexemas inyectados)
    """
    if not test:
        raise UsageError("No hay oraciones de test donde inyectar")
    if count < 0:
        raise UsageError("count no puede ser negativo")
    if count == 0:
        return list(test), []
    rng = np.random.default_rng(seed)
    injected: List[str] = []
    seen = set(known)
    while len(injected) < count:
        script = len(injected) % len(SCRIPT_RANGES)
        length = int(rng.integers(2, 5))
        word = _random_word(rng, script, length)
        if word not in seen:
            seen.add(word)
            injected.append(word)

    sentences = [list(s.words) for s in test]
    for k, sentence_index in enumerate(rng.permutation(len(sentences))):
        word = injected[k % count]
        words = sentences[int(sentence_index)]
        words.insert(int(rng.integers(0, len(words) + 1)), word)
    return [Sentence.from_words(words) for words in sentences], injected
