"""
Escalas por especie: modelos de una sola especie, interpolación IV/OOV y
estandarización
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from ..envs import (DEFAULT_ALPHA, DEFAULT_L1, DEFAULT_L2, DEFAULT_MAX_ITER,
                    DEFAULT_TOL, WORKERS)
from ..exceptions import EmptyInputError, UsageError
from ..models.corpus import Vocab
from ..models.model import Hyper, TemplateConfig, TemplatePreset
from ..models.scales import ScaleMode, ScaleTable, ScoreKind, SpeciesScale
from ..utils.logging_config import log_timed
from .corpus import Sentence, build_vocab
from .crf import train
from .evaluation import evaluate
from .features import FeatureSpecies, enumerate_species
from .labels import LabelScheme
from .lexicon import Lexicon
from .lexicon_store import LexiconStore
from .segmenter import Segmenter

logger = logging.getLogger(__name__)


def interpolate(iv: float, oov: float, alpha: float) -> float:
    """(1 − α)·IV + α·OOV"""
    if not 0.0 <= alpha <= 1.0:
        raise UsageError(f"alpha fuera de [0, 1]: {alpha}")
    return (1.0 - alpha) * iv + alpha * oov


def standardize(values: Sequence[float]) -> np.ndarray:
    """
    Media cero y varianza poblacional uno

    Si todos los valores son iguales devuelve ceros.
    """
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return array
    if np.all(array == array[0]):
        return np.zeros_like(array)
    std = array.std(ddof=0)
    if std == 0.0:
        return np.zeros_like(array)
    return (array - array.mean()) / std


def _species_scores(
    species: FeatureSpecies,
    train_corpus: Sequence[Sentence],
    dev_corpus: Sequence[Sentence],
    scheme: LabelScheme,
    lexicon: Lexicon,
    hyper: Hyper,
    wc_include_char: bool,
    vocab: Vocab,
) -> dict:
    """Entrena el modelo de una sola especie y lo evalúa en dev"""
    start_time = time.perf_counter()
    templates = TemplateConfig(
        preset=TemplatePreset.FULL,
        families=[species.family],
        species=[species.id],
        wc_include_char=wc_include_char,
    )
    model = train(train_corpus, scheme, templates, None, lexicon, hyper, vocab=vocab)
    segmenter = Segmenter(model, LexiconStore(lexicon), workers=1)
    report = evaluate(dev_corpus, segmenter.segment_corpus(dev_corpus), vocab, scheme)
    logger.info(
        f"Especie {species.id}: recall IV={report.recall_iv}, OOV={report.recall_oov}",
        extra={
            "species": species.id,
            "duration_ms": (time.perf_counter() - start_time) * 1000,
        },
    )
    return {
        "species": species.id,
        "recall_iv": report.recall_iv or 0.0,
        "recall_oov": report.recall_oov or 0.0,
        "f1_iv": report.f1_iv or 0.0,
        "f1_oov": report.f1_oov or 0.0,
        "zero_support": report.gold_oov_words == 0,
    }


def build_scale_table(
    scores: List[dict], alpha: float, score: ScoreKind = ScoreKind.RECALL
) -> ScaleTable:
    """
    Interpola y estandariza los puntajes de cada especie

    Args:
        scores: Un dict por especie con recall_iv, recall_oov, f1_iv, f1_oov
        alpha: Peso OOV de la interpolación
        score: Medida a interpolar (recall o f1)

    Returns:
        ScaleTable con los valores estandarizados
    """
    suffix = "recall" if score == ScoreKind.RECALL else "f1"
    interpolated = [
        interpolate(s[f"{suffix}_iv"], s[f"{suffix}_oov"], alpha) for s in scores
    ]
    standardized = standardize(interpolated)
    entries = [
        SpeciesScale(
            species=s["species"],
            recall_iv=s["recall_iv"],
            recall_oov=s["recall_oov"],
            f1_iv=s.get("f1_iv", 0.0),
            f1_oov=s.get("f1_oov", 0.0),
            interpolated=value,
            standardized=float(z),
            alpha=alpha,
            zero_support=s.get("zero_support", False),
        )
        for s, value, z in zip(scores, interpolated, standardized)
    ]
    return ScaleTable(
        mode=ScaleMode.LEARNED,
        alpha=alpha,
        score=score,
        entries=entries,
        values={e.species: e.standardized for e in entries},
    )


@log_timed("scales")
def compute_species_scales(
    train_corpus: Sequence[Sentence],
    dev_corpus: Sequence[Sentence],
    scheme: LabelScheme,
    lexicon: Lexicon,
    alpha: float = DEFAULT_ALPHA,
    hyper: Optional[Hyper] = None,
    wc_include_char: bool = True,
    score: ScoreKind = ScoreKind.RECALL,
    species: Optional[Sequence[FeatureSpecies]] = None,
    workers: int = WORKERS,
) -> ScaleTable:
    """
    Calcula la tabla de escalas de las 45 especies

    Por cada especie entrena un CRF con solo esa plantilla, segmenta dev y mide
    recall (y F1) sobre palabras IV y OOV; luego interpola con alpha y
    estandariza entre especies.

    Args:
        train_corpus: Corpus de entrenamiento
        dev_corpus: Corpus de desarrollo (disjunto de train)
        scheme: Esquema de etiquetas
        lexicon: Léxico de entrenamiento
        alpha: Peso OOV
        hyper: Hiperparámetros de cada modelo individual
        wc_include_char: Configuración de WC
        score: recall (por defecto) o f1
        species: Especies a evaluar (las 45 si es None)
        workers: Entrenamientos concurrentes

    Returns:
        ScaleTable en modo learned
    """
    if not train_corpus or not dev_corpus:
        raise EmptyInputError("Las escalas requieren corpus de train y dev")
    if not 0.0 <= alpha <= 1.0:
        raise UsageError(f"alpha fuera de [0, 1]: {alpha}")
    hyper = hyper or Hyper(
        l1=DEFAULT_L1, l2=DEFAULT_L2, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
    )
    species = list(species) if species is not None else enumerate_species()
    vocab = build_vocab(train_corpus)

    overlap = {s.chars for s in train_corpus} & {s.chars for s in dev_corpus}
    if overlap:
        logger.warning(f"{len(overlap)} oraciones de dev también aparecen en train")

    def run(sp: FeatureSpecies) -> dict:
        return _species_scores(
            sp, train_corpus, dev_corpus, scheme, lexicon, hyper, wc_include_char, vocab
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(run, species))
    else:
        scores = [run(sp) for sp in species]

    logger.info(f"Escalas calculadas para {len(species)} especies")
    return build_scale_table(scores, alpha, score)
