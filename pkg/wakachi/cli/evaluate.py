"""
Comando eval: compara una segmentación con la referencia
"""

from pathlib import Path
from typing import Annotated, Optional

import typer

from ..exceptions import UsageError
from ..models.corpus import Vocab
from ..models.evaluation import EvalReport
from ..services.corpus import build_vocab, read_corpus
from ..services.evaluation import evaluate
from ..services.labels import get_scheme
from ..services.lexicon_store import get_lexicon_store
from ..services.segmenter import Segmenter
from ..storage import load_model
from .common import (build_config, console, echo_porcelain, print_table,
                     publish_lexicon)
from .error_handler import handle_errors


def _fmt(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.4f}"


def print_report(report: EvalReport) -> None:
    """Reporte legible con tablas de rich"""
    print_table(
        "Palabras",
        ["medida", "valor"],
        [
            ("oraciones", report.sentences),
            ("palabras gold", report.gold_words),
            ("palabras sistema", report.system_words),
            ("correctas", report.correct_words),
            ("precisión", _fmt(report.word_precision)),
            ("recall", _fmt(report.word_recall)),
            ("F1", _fmt(report.word_f1)),
            ("recall IV", _fmt(report.recall_iv)),
            ("recall OOV", _fmt(report.recall_oov)),
            ("F1 IV", _fmt(report.f1_iv)),
            ("F1 OOV", _fmt(report.f1_oov)),
            ("palabras OOV gold", report.gold_oov_words),
            ("exactitud de etiquetas", _fmt(report.char_label_accuracy)),
        ],
    )
    print_table(
        "Etiquetas",
        ["etiqueta", "gold", "sistema", "correctas", "P", "R", "F1"],
        [
            (s.label, s.gold, s.system, s.correct, _fmt(s.precision), _fmt(s.recall), _fmt(s.f1))
            for s in report.per_label
        ],
    )
    if report.gold_oov_words == 0:
        console().print("Sin palabras OOV en la referencia: recall OOV indefinido")


@handle_errors
def evaluate_command(
    test_path: Annotated[Path, typer.Option("--test", help="Corpus de referencia segmentado")],
    model_path: Annotated[
        Optional[Path], typer.Option("--model", help="Modelo con el que segmentar")
    ] = None,
    system_path: Annotated[
        Optional[Path],
        typer.Option("--system", help="Segmentación ya calculada, en lugar de --model"),
    ] = None,
    train_path: Annotated[
        Optional[Path],
        typer.Option("--train", help="Corpus de entrenamiento para IV/OOV con --system"),
    ] = None,
    extra_lexicon: Annotated[Optional[Path], typer.Option("--extra-lexicon")] = None,
    scheme: Annotated[
        Optional[str], typer.Option("--scheme", help="Esquema del reporte por etiqueta")
    ] = None,
    workers: Annotated[Optional[int], typer.Option("--workers")] = None,
    porcelain: Annotated[
        bool, typer.Option("--porcelain", help="Salida clave/valor")
    ] = False,
):
    """Evalúa F1 de palabras, recall IV/OOV y etiquetas por carácter"""
    config = build_config(
        test=test_path,
        model=model_path,
        train=train_path,
        extra_lexicon=extra_lexicon,
        workers=workers,
    )
    if (config.model is None) == (system_path is None):
        raise UsageError("Indique exactamente uno de --model o --system")

    gold = read_corpus(config.test)
    if config.model is not None:
        model = load_model(config.model)
        publish_lexicon(model, config.extra_lexicon)
        segmenter = Segmenter(model, get_lexicon_store(), workers=config.workers)
        system = segmenter.segment_corpus(gold)
        vocab = model.vocab
        label_scheme = model.scheme
    else:
        if config.extra_lexicon is not None:
            raise UsageError("--extra-lexicon requiere --model")
        system = read_corpus(system_path)
        vocab = build_vocab(read_corpus(config.train)) if config.train else Vocab()
        label_scheme = None

    if scheme is not None:
        label_scheme = get_scheme(scheme)
    report = evaluate(gold, system, vocab, label_scheme)

    if porcelain:
        echo_porcelain(report.porcelain_items())
    else:
        print_report(report)
