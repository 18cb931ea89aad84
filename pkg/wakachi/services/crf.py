"""
CRF de cadena lineal de primer orden: forward-backward, objetivo penalizado,
entrenamiento elastic-net con L-BFGS-B y decodificación Viterbi
"""

import logging
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, minimize
from scipy.special import logsumexp

from ..envs import BATCH_SIZE, LBFGS_MEMORY
from ..exceptions import EmptyInputError, NumericError, TrainingError
from ..models.corpus import Vocab
from ..models.model import Hyper, TemplateConfig
from ..models.scales import ScaleTable
from ..utils.logging_config import LoggerMixin, log_timed
from .chartype import classify_all
from .corpus import Sentence
from .features import FeatureExtractor, FeatureVector
from .labels import Label, LabelScheme, encode_labels
from .lexicon import Lexicon

logger = logging.getLogger(__name__)

# Una instancia es la lista de FeatureVector o su matriz dispersa ya indexada
Instance = Union[Sequence[FeatureVector], sparse.csr_matrix]


@dataclass(eq=False)
class CrfModel:
    """
    Modelo CRF entrenado

    `state_weights` tiene forma [etiqueta × feature] y `transition_weights`
    [etiqueta anterior × etiqueta siguiente]. `state_support` guarda los índices
    planos de los pares (etiqueta, feature) observados en entrenamiento, que
    son los únicos pesos de estado entrenables.
    """

    scheme: LabelScheme
    features: List[str]
    state_weights: np.ndarray
    transition_weights: np.ndarray
    hyper: Hyper
    state_support: Optional[np.ndarray] = None
    templates: Optional[TemplateConfig] = None
    scales: Optional[ScaleTable] = None
    vocab: Vocab = field(default_factory=Vocab)
    lexicon: Lexicon = field(default_factory=Lexicon)
    iterations: int = 0
    final_objective: Optional[float] = None
    converged: bool = False
    train_sentences: int = 0

    def __post_init__(self):
        n_labels = len(self.scheme.inventory)
        self.state_weights = np.asarray(self.state_weights, dtype=np.float64)
        self.transition_weights = np.asarray(self.transition_weights, dtype=np.float64)
        if self.state_weights.shape != (n_labels, len(self.features)):
            raise NumericError(
                f"Pesos de estado con forma {self.state_weights.shape}, "
                f"se esperaba {(n_labels, len(self.features))}"
            )
        if self.transition_weights.shape != (n_labels, n_labels):
            raise NumericError("Pesos de transición con forma inválida")
        if self.state_support is None:
            self.state_support = np.arange(self.state_weights.size, dtype=np.int64)

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self.scheme.inventory

    @property
    def num_labels(self) -> int:
        return len(self.scheme.inventory)

    @property
    def num_features(self) -> int:
        return len(self.features)

    @cached_property
    def feature_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.features)}

    @cached_property
    def extractor(self) -> FeatureExtractor:
        if self.templates is None:
            raise NumericError("El modelo no tiene configuración de plantillas")
        return FeatureExtractor.from_config(self.templates, self.scales)

    def parameters(self) -> np.ndarray:
        """Parámetros entrenables: pesos de estado del soporte y transiciones"""
        return np.concatenate(
            [self.state_weights.ravel()[self.state_support], self.transition_weights.ravel()]
        )

    def zero_fraction(self) -> float:
        """Fracción de parámetros entrenables exactamente cero"""
        params = self.parameters()
        return float(np.count_nonzero(params == 0.0)) / max(params.size, 1)

    def featurize(self, vectors: Sequence[FeatureVector]) -> sparse.csr_matrix:
        """
        Matriz dispersa [posición × feature]; las features desconocidas se
        descartan y no aportan puntaje
        """
        index = self.feature_index
        rows, cols, vals = [], [], []
        for i, vector in enumerate(vectors):
            for name, value in vector.items:
                j = index.get(name)
                if j is not None:
                    rows.append(i)
                    cols.append(j)
                    vals.append(value)
        return sparse.csr_matrix(
            (vals, (rows, cols)), shape=(len(vectors), self.num_features), dtype=np.float64
        )

    def state_scores(self, instance: Instance) -> np.ndarray:
        """Puntajes de estado [posición × etiqueta]"""
        if not sparse.issparse(instance):
            instance = self.featurize(instance)
        return np.asarray(instance @ self.state_weights.T)

    def decode(self, chars: str, lexicon: Optional[Lexicon] = None) -> List[Label]:
        """Etiquetas Viterbi de una secuencia de caracteres"""
        if lexicon is None:
            lexicon = self.lexicon
        vectors = self.extractor.sentence_features(chars, lexicon)
        labels, _ = viterbi(vectors, self)
        return labels


class PartitionResult(NamedTuple):
    """Resultado de forward-backward en espacio logarítmico"""

    log_z: float
    log_alpha: np.ndarray
    log_beta: np.ndarray
    marginals: np.ndarray
    transition_marginals: np.ndarray


class Gradient(NamedTuple):
    """Gradiente denso sobre todos los pesos"""

    state: np.ndarray
    transition: np.ndarray


def _check_finite(scores: np.ndarray, transitions: np.ndarray) -> None:
    if not np.all(np.isfinite(transitions)):
        raise NumericError("Peso de transición no finito")
    bad = ~np.all(np.isfinite(scores), axis=1)
    if bad.any():
        raise NumericError("Puntaje de estado no finito", position=int(np.argmax(bad)))


def partition(instance: Instance, model: CrfModel) -> PartitionResult:
    """
    Forward-backward en espacio logarítmico para una instancia

    Args:
        instance: FeatureVectors por posición (o su matriz dispersa)
        model: Modelo CRF

    Returns:
        PartitionResult con log Z, tablas forward/backward y marginales
    """
    scores = model.state_scores(instance)
    trans = model.transition_weights
    n, n_labels = scores.shape
    if n == 0:
        raise EmptyInputError("Instancia vacía")
    _check_finite(scores, trans)

    log_alpha = np.empty((n, n_labels))
    log_beta = np.zeros((n, n_labels))
    log_alpha[0] = scores[0]
    for t in range(1, n):
        log_alpha[t] = logsumexp(log_alpha[t - 1][:, None] + trans, axis=0) + scores[t]
    for t in range(n - 2, -1, -1):
        log_beta[t] = logsumexp(trans + (scores[t + 1] + log_beta[t + 1])[None, :], axis=1)

    log_z = float(logsumexp(log_alpha[-1]))
    if not np.isfinite(log_z):
        raise NumericError("log Z no finito", position=n - 1)

    marginals = np.exp(log_alpha + log_beta - log_z)
    transition_marginals = np.empty((max(n - 1, 0), n_labels, n_labels))
    for t in range(1, n):
        transition_marginals[t - 1] = np.exp(
            log_alpha[t - 1][:, None]
            + trans
            + (scores[t] + log_beta[t])[None, :]
            - log_z
        )
    return PartitionResult(log_z, log_alpha, log_beta, marginals, transition_marginals)


def viterbi_path(scores: np.ndarray, trans: np.ndarray) -> Tuple[List[int], float]:
    """
    Camino de máximo puntaje

    Los empates se resuelven por el menor índice de etiqueta en cada paso.
    """
    n, n_labels = scores.shape
    delta = scores[0].copy()
    back = np.zeros((n, n_labels), dtype=np.int64)
    columns = np.arange(n_labels)
    for t in range(1, n):
        candidates = delta[:, None] + trans
        back[t] = np.argmax(candidates, axis=0)
        delta = candidates[back[t], columns] + scores[t]
    best = int(np.argmax(delta))
    score = float(delta[best])
    path = [best]
    for t in range(n - 1, 0, -1):
        best = int(back[t, best])
        path.append(best)
    path.reverse()
    return path, score


def viterbi(instance: Instance, model: CrfModel) -> Tuple[List[Label], float]:
    """
    Decodificación Viterbi

    Returns:
        (secuencia de Label, puntaje del camino)
    """
    scores = model.state_scores(instance)
    if scores.shape[0] == 0:
        return [], 0.0
    path, score = viterbi_path(scores, model.transition_weights)
    labels = model.labels
    return [labels[k] for k in path], score


class _BatchPlan(NamedTuple):
    index: np.ndarray  # (B, T) posiciones globales; relleno con 0
    mask: np.ndarray  # (B, T)
    lengths: np.ndarray  # (B,)


def _plan_batches(lengths: np.ndarray, batch_size: int) -> List[_BatchPlan]:
    """Agrupa oraciones ordenadas por longitud en lotes con relleno"""
    offsets = np.concatenate([[0], np.cumsum(lengths)[:-1]])
    order = np.argsort(lengths, kind="stable")
    plans = []
    for begin in range(0, len(order), batch_size):
        chosen = order[begin : begin + batch_size]
        batch_lengths = lengths[chosen]
        width = int(batch_lengths.max())
        steps = np.arange(width)
        mask = steps[None, :] < batch_lengths[:, None]
        index = np.where(mask, offsets[chosen][:, None] + steps[None, :], 0)
        plans.append(_BatchPlan(index, mask, batch_lengths))
    return plans


def _batch_expectations(
    scores: np.ndarray, trans: np.ndarray, plan: _BatchPlan
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Forward-backward escalado en espacio de probabilidad para un lote

    Returns:
        (log Z por oración, marginales (B, T, L), transiciones esperadas (L, L))
    """
    index, mask, lengths = plan
    batch, width = index.shape
    s = np.where(mask[..., None], scores[index], 0.0)
    peak = s.max(axis=2)
    emit = np.exp(s - peak[..., None])
    tmax = float(trans.max())
    move = np.exp(trans - tmax)

    alpha = np.empty_like(emit)
    scale = np.ones((batch, width))
    a = emit[:, 0]
    scale[:, 0] = a.sum(axis=1)
    alpha[:, 0] = a / scale[:, 0, None]
    for t in range(1, width):
        a = (alpha[:, t - 1] @ move) * emit[:, t]
        active = mask[:, t]
        c = np.where(active, a.sum(axis=1), 1.0)
        scale[:, t] = c
        alpha[:, t] = np.where(active[:, None], a / c[:, None], alpha[:, t - 1])

    beta = np.ones_like(emit)
    for t in range(width - 2, -1, -1):
        b = ((emit[:, t + 1] * beta[:, t + 1]) @ move.T) / scale[:, t + 1, None]
        beta[:, t] = np.where(mask[:, t + 1, None], b, 1.0)

    log_z = (
        np.log(scale).sum(axis=1)
        + (peak * mask).sum(axis=1)
        + tmax * (lengths - 1)
    )
    marginals = alpha * beta

    if width > 1:
        weighted = (emit[:, 1:] * beta[:, 1:]) / scale[:, 1:, None] * mask[:, 1:, None]
        accumulated = alpha[:, :-1].reshape(-1, alpha.shape[2]).T @ weighted.reshape(
            -1, alpha.shape[2]
        )
        expected_trans = accumulated * move
    else:
        expected_trans = np.zeros_like(trans)
    return log_z, marginals, expected_trans


class _Statistics(NamedTuple):
    log_likelihood: float
    marginals: np.ndarray  # (N, L)
    expected_trans: np.ndarray  # (L, L)


class _Corpus:
    """Corpus indexado: matriz de features apilada, etiquetas gold y lotes"""

    def __init__(
        self,
        matrix: sparse.csr_matrix,
        gold: np.ndarray,
        lengths: np.ndarray,
        n_labels: int,
        batch_size: int,
    ):
        self.matrix = matrix
        self.gold = gold
        self.lengths = lengths
        self.n_labels = n_labels
        self.plans = _plan_batches(lengths, batch_size)

        starts = np.concatenate([[0], np.cumsum(lengths)[:-1]])
        follows = np.ones(len(gold), dtype=bool)
        follows[starts] = False
        self.prev_gold = gold[np.flatnonzero(follows) - 1]
        self.next_gold = gold[follows]
        self.empirical_trans = np.zeros((n_labels, n_labels))
        np.add.at(self.empirical_trans, (self.prev_gold, self.next_gold), 1.0)

        self.gold_onehot = np.zeros((len(gold), n_labels))
        self.gold_onehot[np.arange(len(gold)), gold] = 1.0

    def statistics(self, state_weights: np.ndarray, trans: np.ndarray) -> _Statistics:
        scores = np.asarray(self.matrix @ state_weights.T)
        gold_score = scores[np.arange(len(self.gold)), self.gold].sum() + float(
            (self.empirical_trans * trans).sum()
        )
        marginals = np.zeros_like(scores)
        expected_trans = np.zeros_like(trans)
        log_z_total = 0.0
        for plan in self.plans:
            log_z, batch_marginals, batch_trans = _batch_expectations(scores, trans, plan)
            log_z_total += float(log_z.sum())
            marginals[plan.index[plan.mask]] = batch_marginals[plan.mask]
            expected_trans += batch_trans
        return _Statistics(gold_score - log_z_total, marginals, expected_trans)


def _index_batch(
    batch: Sequence[Tuple[Instance, Sequence[Label]]], model: CrfModel, batch_size: int
) -> _Corpus:
    matrices, gold, lengths = [], [], []
    for instance, labels in batch:
        matrix = instance if sparse.issparse(instance) else model.featurize(instance)
        if matrix.shape[0] != len(labels):
            raise NumericError("Instancia y etiquetas gold de distinta longitud")
        matrices.append(matrix)
        gold.extend(model.scheme.index_of(label) for label in labels)
        lengths.append(len(labels))
    if not matrices:
        raise EmptyInputError("Lote vacío")
    return _Corpus(
        sparse.vstack(matrices, format="csr"),
        np.asarray(gold, dtype=np.int64),
        np.asarray(lengths, dtype=np.int64),
        model.num_labels,
        batch_size,
    )


def objective_and_gradient(
    batch: Sequence[Tuple[Instance, Sequence[Label]]],
    model: CrfModel,
    batch_size: int = BATCH_SIZE,
) -> Tuple[float, Gradient]:
    """
    Log-verosimilitud penalizada y su gradiente denso

    value = Σ log p(y|x) − (λ2/2)‖w‖²; λ1 lo aplica el optimizador.

    Args:
        batch: Pares (instancia, etiquetas gold)
        model: Modelo con los pesos a evaluar

    Returns:
        (valor, Gradient sobre todos los pesos de estado y transición)
    """
    corpus = _index_batch(batch, model, batch_size)
    l2 = model.hyper.l2
    w, trans = model.state_weights, model.transition_weights
    stats = corpus.statistics(w, trans)
    value = stats.log_likelihood - 0.5 * l2 * (float((w**2).sum()) + float((trans**2).sum()))
    difference = corpus.gold_onehot - stats.marginals
    state_grad = np.asarray(corpus.matrix.T @ difference).T - l2 * w
    trans_grad = corpus.empirical_trans - stats.expected_trans - l2 * trans
    return value, Gradient(state_grad, trans_grad)


class _Trainer(LoggerMixin):
    """Función objetivo para L-BFGS-B sobre los parámetros del soporte"""

    def __init__(self, corpus: _Corpus, n_features: int, support: np.ndarray, hyper: Hyper):
        self.corpus = corpus
        self.n_labels = corpus.n_labels
        self.n_features = n_features
        self.support = support
        self.hyper = hyper
        self.split = hyper.l1 > 0.0
        self.n_params = len(support) + self.n_labels**2
        self.iteration = 0
        self.last_value = float("nan")
        self.last_theta = np.zeros(self.n_params)

        empirical = np.asarray(corpus.matrix.T @ corpus.gold_onehot).T
        self.empirical_state = empirical.ravel()[support]

    def unpack(self, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n_state = len(self.support)
        weights = np.zeros(self.n_labels * self.n_features)
        weights[self.support] = theta[:n_state]
        trans = theta[n_state:].reshape(self.n_labels, self.n_labels)
        return weights.reshape(self.n_labels, self.n_features), trans

    def theta_of(self, x: np.ndarray) -> np.ndarray:
        if self.split:
            return x[: self.n_params] - x[self.n_params :]
        return x

    def loss(self, theta: np.ndarray) -> Tuple[float, np.ndarray]:
        """Pérdida −LL + (λ2/2)‖θ‖² y su gradiente respecto de θ"""
        weights, trans = self.unpack(theta)
        stats = self.corpus.statistics(weights, trans)
        value = -stats.log_likelihood + 0.5 * self.hyper.l2 * float(theta @ theta)
        expected = np.asarray(self.corpus.matrix.T @ stats.marginals).T.ravel()[self.support]
        grad = np.concatenate(
            [
                expected - self.empirical_state,
                (stats.expected_trans - self.corpus.empirical_trans).ravel(),
            ]
        )
        grad += self.hyper.l2 * theta
        return value, grad

    def fun(self, x: np.ndarray) -> Tuple[float, np.ndarray]:
        theta = self.theta_of(x)
        value, grad = self.loss(theta)
        if self.split:
            value += self.hyper.l1 * float(x.sum())
            grad = np.concatenate([grad + self.hyper.l1, -grad + self.hyper.l1])
        if not np.isfinite(value) or not np.all(np.isfinite(grad)):
            raise TrainingError("Objetivo no finito", iteration=self.iteration)
        self.last_value = value
        return value, grad

    def callback(self, x: np.ndarray) -> None:
        self.iteration += 1
        theta = self.theta_of(x)
        self.last_theta = theta
        self.log_iteration(self.iteration, self.last_value, int(np.count_nonzero(theta)))


@log_timed("featurize")
def index_corpus(
    corpus: Sequence[Sentence],
    scheme: LabelScheme,
    extractor: FeatureExtractor,
    lexicon: Optional[Lexicon],
) -> Tuple[List[str], sparse.csr_matrix, np.ndarray, np.ndarray]:
    """
    Extrae features y etiquetas gold de un corpus de entrenamiento

    Returns:
        (nombres de features en orden de aparición, matriz [posición × feature],
        etiquetas gold, longitudes de oración)
    """
    feature_index: Dict[str, int] = {}
    rows, cols, vals, gold, lengths = [], [], [], [], []
    row = 0
    for sentence in corpus:
        labels = encode_labels(sentence, scheme, classify_all(sentence.chars))
        gold.extend(scheme.index_of(label) for label in labels)
        lengths.append(len(sentence))
        for vector in extractor.sentence_features(sentence.chars, lexicon):
            for name, value in vector.items:
                j = feature_index.setdefault(name, len(feature_index))
                rows.append(row)
                cols.append(j)
                vals.append(value)
            row += 1
    matrix = sparse.csr_matrix(
        (vals, (rows, cols)), shape=(row, len(feature_index)), dtype=np.float64
    )
    return (
        list(feature_index),
        matrix,
        np.asarray(gold, dtype=np.int64),
        np.asarray(lengths, dtype=np.int64),
    )


def train(
    corpus: Sequence[Sentence],
    scheme: LabelScheme,
    templates: TemplateConfig,
    scales: Optional[ScaleTable],
    lexicon: Optional[Lexicon],
    hyper: Hyper,
    batch_size: int = BATCH_SIZE,
    lbfgs_memory: int = LBFGS_MEMORY,
    vocab: Optional[Vocab] = None,
) -> CrfModel:
    """
    Entrena un CRF maximizando la log-verosimilitud penalizada

    Con λ1 > 0 cada parámetro se descompone en parte positiva y negativa con
    cotas de no negatividad en L-BFGS-B; la proyección a la cota produce ceros
    exactos. Se detiene por cambio relativo del objetivo < tol o por max_iter.

    Args:
        corpus: Oraciones de entrenamiento (no vacío)
        scheme: Esquema de etiquetas
        templates: Plantillas de features
        scales: Tabla de escalas (None para valores unitarios)
        lexicon: Léxico para LC/WC
        hyper: λ1, λ2, tolerancia y máximo de iteraciones
        batch_size: Oraciones por lote de forward-backward
        lbfgs_memory: Pares de corrección de L-BFGS
        vocab: Vocabulario de entrenamiento a embeber en el modelo

    Returns:
        CrfModel entrenado
    """
    corpus = [s for s in corpus if len(s)]
    if not corpus:
        raise EmptyInputError("Corpus de entrenamiento vacío")

    start_time = time.perf_counter()
    extractor = FeatureExtractor.from_config(templates, scales)
    features, matrix, gold, lengths = index_corpus(corpus, scheme, extractor, lexicon)
    n_labels = len(scheme.inventory)
    n_features = len(features)

    coo = matrix.tocoo()
    support = np.unique(gold[coo.row] * n_features + coo.col)
    indexed = _Corpus(matrix, gold, lengths, n_labels, batch_size)
    trainer = _Trainer(indexed, n_features, support, hyper)
    logger.info(
        f"Entrenando CRF: {len(corpus)} oraciones, {matrix.shape[0]} posiciones, "
        f"{n_features} features, {trainer.n_params} parámetros",
        extra={"operation": "train", "sentences": len(corpus)},
    )

    if trainer.split:
        x0 = np.zeros(2 * trainer.n_params)
        bounds = Bounds(np.zeros_like(x0), np.full_like(x0, np.inf))
    else:
        x0 = np.zeros(trainer.n_params)
        bounds = None
    result = minimize(
        trainer.fun,
        x0,
        jac=True,
        method="L-BFGS-B",
        bounds=bounds,
        callback=trainer.callback,
        options={
            "maxiter": hyper.max_iter,
            "ftol": hyper.tol,
            "gtol": 1e-10,
            "maxcor": lbfgs_memory,
        },
    )
    theta = trainer.theta_of(result.x)
    weights, trans = trainer.unpack(theta)
    if not (np.all(np.isfinite(weights)) and np.all(np.isfinite(trans))):
        raise TrainingError("Pesos no finitos al finalizar", iteration=result.nit)

    duration_ms = (time.perf_counter() - start_time) * 1000
    trainer.log_performance(
        "train",
        duration_ms,
        iteration=int(result.nit),
        objective=float(result.fun),
    )
    if not result.success:
        logger.warning(f"L-BFGS-B terminó sin converger: {result.message}")

    model = CrfModel(
        scheme=scheme,
        features=features,
        state_weights=weights,
        transition_weights=trans,
        hyper=hyper,
        state_support=support,
        templates=templates,
        scales=scales,
        vocab=vocab if vocab is not None else Vocab(),
        lexicon=lexicon if lexicon is not None else Lexicon(),
        iterations=int(result.nit),
        final_objective=float(result.fun),
        converged=bool(result.success),
        train_sentences=len(corpus),
    )
    logger.info(
        f"Fracción de pesos en cero: {model.zero_fraction():.4f}",
        extra={"operation": "train"},
    )
    return model
