"""
Evaluación de segmentación: F1 de palabras, recall/F1 IV-OOV y reporte por etiqueta
"""

import logging
from collections import Counter
from typing import Optional, Sequence, Tuple

from ..exceptions import AlignmentError
from ..models.corpus import Vocab
from ..models.evaluation import EvalReport, LabelStats
from .chartype import classify_all
from .corpus import Sentence
from .labels import SCHEME_PRESETS, LabelScheme, encode_labels

logger = logging.getLogger(__name__)


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator else None


def f1_score(precision: float, recall: float) -> float:
    """Media armónica (0 si ambas son 0)"""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _prf(correct: int, gold: int, system: int) -> Tuple[float, float, float]:
    precision = correct / system if system else 0.0
    recall = correct / gold if gold else 0.0
    return precision, recall, f1_score(precision, recall)


def _subset_f1(correct: int, gold: int, system: int) -> Optional[float]:
    if gold == 0:
        return None
    return _prf(correct, gold, system)[2]


def evaluate(
    gold: Sequence[Sentence],
    system: Sequence[Sentence],
    train_vocab: Vocab,
    scheme: Optional[LabelScheme] = None,
) -> EvalReport:
    """
    Compara una segmentación del sistema contra la referencia

    Una palabra del sistema es correcta si su intervalo (inicio, fin) coincide
    con el de una palabra gold.

    Args:
        gold: Oraciones de referencia
        system: Oraciones del sistema, alineadas con gold
        train_vocab: Vocabulario de entrenamiento para IV/OOV
        scheme: Esquema para el reporte por etiqueta (final si es None)

    Returns:
        EvalReport completo
    """
    if len(gold) != len(system):
        raise AlignmentError(
            f"{len(gold)} oraciones gold frente a {len(system)} del sistema"
        )
    scheme = scheme or SCHEME_PRESETS["final"]
    types = train_vocab.types

    gold_words = system_words = correct_words = 0
    gold_iv = gold_oov = system_iv = system_oov = correct_iv = correct_oov = 0
    characters = correct_labels = 0
    gold_labels: Counter = Counter()
    system_labels: Counter = Counter()
    agreeing_labels: Counter = Counter()

    for index, (g, s) in enumerate(zip(gold, system)):
        if g.chars != s.chars:
            raise AlignmentError(f"La oración {index + 1} difiere en sus caracteres")
        gold_spans = set(g.spans())
        system_spans = s.spans()
        gold_words += len(gold_spans)
        system_words += len(system_spans)

        for start, end in gold_spans:
            if g.chars[start:end] in types:
                gold_iv += 1
            else:
                gold_oov += 1
        for start, end in system_spans:
            word = s.chars[start:end]
            in_vocab = word in types
            if in_vocab:
                system_iv += 1
            else:
                system_oov += 1
            if (start, end) in gold_spans:
                correct_words += 1
                if in_vocab:
                    correct_iv += 1
                else:
                    correct_oov += 1

        classes = classify_all(g.chars)
        g_labels = encode_labels(g, scheme, classes)
        s_labels = encode_labels(s, scheme, classes)
        characters += len(g_labels)
        for gl, sl in zip(g_labels, s_labels):
            gold_labels[gl] += 1
            system_labels[sl] += 1
            if gl == sl:
                agreeing_labels[gl] += 1
                correct_labels += 1

    precision, recall, f1 = _prf(correct_words, gold_words, system_words)
    per_label = []
    for label in scheme.inventory:
        lp, lr, lf = _prf(agreeing_labels[label], gold_labels[label], system_labels[label])
        per_label.append(
            LabelStats(
                label=label.name,
                gold=gold_labels[label],
                system=system_labels[label],
                correct=agreeing_labels[label],
                precision=lp,
                recall=lr,
                f1=lf,
            )
        )

    return EvalReport(
        sentences=len(gold),
        gold_words=gold_words,
        system_words=system_words,
        correct_words=correct_words,
        word_precision=precision,
        word_recall=recall,
        word_f1=f1,
        characters=characters,
        correct_labels=correct_labels,
        char_label_accuracy=_ratio(correct_labels, characters) or 0.0,
        per_label=per_label,
        gold_iv_words=gold_iv,
        gold_oov_words=gold_oov,
        correct_iv_words=correct_iv,
        correct_oov_words=correct_oov,
        recall_iv=_ratio(correct_iv, gold_iv),
        recall_oov=_ratio(correct_oov, gold_oov),
        f1_iv=_subset_f1(correct_iv, gold_iv, system_iv),
        f1_oov=_subset_f1(correct_oov, gold_oov, system_oov),
    )
