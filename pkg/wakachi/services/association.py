"""
Asociación entre variables categóricas con la tau de Goodman y Kruskal
"""

import logging
from typing import Dict, Hashable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..exceptions import EmptyInputError, UndefinedResultError, UsageError
from .chartype import classify_all
from .corpus import Sentence
from .features import BOS, EOS, SHAPES, VALUE_SEPARATOR
from .labels import LabelScheme, encode_labels, lt_label_view
from .lexicon import CharRecord, sort_buckets

logger = logging.getLogger(__name__)

TAU_VARIABLES = ("T", "L_R", "L_S", "O", "L")
EMPTY_SET = "∅"

LABEL_VIEWS = ("scheme", "lt")


def contingency_table(x: Sequence[Hashable], y: Sequence[Hashable]) -> pd.DataFrame:
    """
    Tabla de contingencia de dos variables categóricas alineadas

    Returns:
        DataFrame con una fila por categoría de X y una columna por categoría de Y
    """
    if len(x) != len(y):
        raise UsageError("Las variables deben tener la misma longitud")
    if not len(x):
        raise EmptyInputError("Sin observaciones")
    return pd.crosstab(pd.Series(list(x), name="X"), pd.Series(list(y), name="Y"))


def gk_tau(table: Union[pd.DataFrame, np.ndarray, Sequence[Sequence[float]]]) -> float:
    """
    Tau de Goodman y Kruskal τ(X→Y) con X en filas e Y en columnas

    τ = (Σ_x Σ_y n_xy²/n_x· − Σ_y n_·y²/n) / (n − Σ_y n_·y²/n)

    Args:
        table: Conteos n_xy no negativos

    Returns:
        τ en [0, 1]
    """
    counts = np.asarray(table, dtype=np.float64)
    if counts.ndim != 2:
        raise UsageError("La tabla de contingencia debe ser bidimensional")
    if np.any(counts < 0):
        raise UsageError("La tabla de contingencia no admite conteos negativos")
    n = counts.sum()
    if n <= 0:
        raise UndefinedResultError("Tabla sin observaciones")

    row_totals = counts.sum(axis=1)
    col_totals = counts.sum(axis=0)
    baseline = float((col_totals**2).sum() / n)
    denominator = n - baseline
    if np.count_nonzero(col_totals) < 2 or denominator <= 0:
        raise UndefinedResultError("τ indefinida: Y tiene una sola categoría")

    nonzero = row_totals > 0
    explained = float(((counts[nonzero] ** 2).sum(axis=1) / row_totals[nonzero]).sum())
    tau = (explained - baseline) / denominator
    return float(min(1.0, max(0.0, tau)))


def tau_of(x: Sequence[Hashable], y: Sequence[Hashable]) -> float:
    """τ(X→Y) a partir de observaciones alineadas"""
    return gk_tau(contingency_table(x, y))


def ngram_values(chars: str, shape: str) -> List[str]:
    """
    Cadena del n-grama de caracteres en cada posición

    Args:
        chars: Caracteres de la oración
        shape: Forma y offset (p. ej. "u0", "t-1" para el trigrama centrado)
    """
    kind, offset = shape[0], int(shape[1:])
    if kind not in SHAPES or offset not in SHAPES[kind][0]:
        raise UsageError(f"Forma de n-grama inválida: {shape!r}")
    deltas = [offset + d for d in SHAPES[kind][1]]
    n = len(chars)
    values = []
    for i in range(n):
        parts = []
        for d in deltas:
            j = i + d
            parts.append(BOS if j < 0 else EOS if j >= n else chars[j])
        values.append(VALUE_SEPARATOR.join(parts))
    return values


def label_feature_tau(
    corpus: Sequence[Sentence],
    scheme: LabelScheme,
    shape: str = "t-1",
    include_prev_label: bool = False,
    label_view: str = "scheme",
) -> float:
    """
    τ entre un n-grama de caracteres (opcionalmente con y₋₁) y la etiqueta

    Args:
        corpus: Oraciones segmentadas
        scheme: Esquema de etiquetas
        shape: Forma del n-grama como en las especies de features
        include_prev_label: Anteponer la etiqueta anterior (BOS en la posición 0)
        label_view: "scheme" (etiquetas del esquema) o "lt" (tag|longitud|escritura)

    Returns:
        τ(X→Y)
    """
    if label_view not in LABEL_VIEWS:
        raise UsageError(f"Vista de etiquetas desconocida: {label_view}")
    xs: List[str] = []
    ys: List[str] = []
    for sentence in corpus:
        classes = classify_all(sentence.chars)
        if label_view == "lt":
            labels = lt_label_view(sentence, scheme, classes)
        else:
            labels = [label.name for label in encode_labels(sentence, scheme, classes)]
        grams = ngram_values(sentence.chars, shape)
        for i, gram in enumerate(grams):
            if include_prev_label:
                previous = labels[i - 1] if i > 0 else BOS
                gram = f"{previous}{VALUE_SEPARATOR}{gram}"
            xs.append(gram)
            ys.append(labels[i])
    if not xs:
        raise EmptyInputError("Corpus sin caracteres")
    return tau_of(xs, ys)


def record_variable(record: CharRecord, variable: str) -> str:
    """Valor categórico de una variable de CharRecord"""
    if variable == "T":
        return record.script
    if variable in ("L_R", "L_S"):
        buckets = record.r_lengths if variable == "L_R" else record.s_lengths
        return ",".join(sort_buckets(buckets)) or EMPTY_SET
    if variable in ("O", "L"):
        value = record.offset if variable == "O" else record.word_length
        if value is None:
            raise UsageError(f"La variable {variable} requiere límites gold")
        return str(value)
    raise UsageError(f"Variable desconocida: {variable}")


def tau_matrix(
    records: Sequence[CharRecord], variables: Optional[Sequence[str]] = None
) -> pd.DataFrame:
    """
    Matriz de τ(fila→columna) entre variables de información por carácter

    Las celdas indefinidas quedan como NaN.
    """
    if not records:
        raise EmptyInputError("Sin registros")
    variables = list(variables or TAU_VARIABLES)
    columns: Dict[str, List[str]] = {
        v: [record_variable(r, v) for r in records] for v in variables
    }
    matrix = pd.DataFrame(np.nan, index=variables, columns=variables, dtype=float)
    for source in variables:
        for target in variables:
            try:
                matrix.loc[source, target] = tau_of(columns[source], columns[target])
            except UndefinedResultError:
                logger.debug(f"τ({source}→{target}) indefinida")
    return matrix
