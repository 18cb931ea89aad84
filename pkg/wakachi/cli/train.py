"""
Comando train: entrena un modelo y lo guarda en disco
"""

from pathlib import Path
from typing import Annotated, Optional

import typer

from ..models.scales import ScaleMode, ScaleTable
from ..services.corpus import build_vocab, read_corpus
from ..services.crf import train
from ..services.features import boost_preset
from ..services.lexicon import Lexicon, build_from_corpus
from ..services.scaling import compute_species_scales
from ..storage import (read_lexicon, read_scale_table, save_model,
                       write_scale_report)
from ..utils.logging_config import get_logger
from .common import build_config, echo_porcelain
from .error_handler import handle_errors

logger = get_logger(__name__)


def resolve_scales(config, train_corpus, lexicon: Lexicon) -> Optional[ScaleTable]:
    """Tabla de escalas según el modo configurado"""
    if config.scale == ScaleMode.NONE:
        return None
    if config.scale == ScaleMode.BOOST:
        return boost_preset()
    if config.scale_file is not None:
        return read_scale_table(config.scale_file)
    dev_corpus = read_corpus(config.dev)
    return compute_species_scales(
        train_corpus,
        dev_corpus,
        config.label_scheme(),
        lexicon,
        alpha=config.alpha,
        hyper=config.hyper(),
        wc_include_char=config.wc_include_char,
        score=config.score,
        workers=config.workers,
    )


@handle_errors
def train_command(
    train_path: Annotated[Path, typer.Option("--train", help="Corpus segmentado de entrenamiento")],
    model_path: Annotated[Path, typer.Option("--model", help="Archivo de modelo a escribir")],
    dev: Annotated[
        Optional[Path], typer.Option("--dev", help="Corpus de desarrollo (escalas)")
    ] = None,
    lexicon: Annotated[
        Optional[Path], typer.Option("--lexicon", help="Léxico (por defecto, tipos de train)")
    ] = None,
    scheme: Annotated[Optional[str], typer.Option("--scheme")] = None,
    templates: Annotated[Optional[str], typer.Option("--templates", help="vanilla o full")] = None,
    families: Annotated[
        Optional[str], typer.Option("--families", help="Subconjunto de C,LC,WC")
    ] = None,
    scale: Annotated[Optional[str], typer.Option("--scale", help="none, boost o learned")] = None,
    scale_file: Annotated[Optional[Path], typer.Option("--scale-file")] = None,
    scale_report: Annotated[
        Optional[Path],
        typer.Option(
            "--scale-report", help="Tabla de escalas (JSON, o texto si termina en .txt)"
        ),
    ] = None,
    score: Annotated[Optional[str], typer.Option("--score", help="recall o f1")] = None,
    alpha: Annotated[Optional[float], typer.Option("--alpha")] = None,
    l1: Annotated[Optional[float], typer.Option("--l1")] = None,
    l2: Annotated[Optional[float], typer.Option("--l2")] = None,
    tol: Annotated[Optional[float], typer.Option("--tol")] = None,
    max_iter: Annotated[Optional[int], typer.Option("--max-iter")] = None,
    wc_include_char: Annotated[Optional[str], typer.Option("--wc-include-char")] = None,
    batch_size: Annotated[Optional[int], typer.Option("--batch-size")] = None,
    workers: Annotated[Optional[int], typer.Option("--workers")] = None,
):
    """Entrena un CRF de segmentación y guarda el modelo"""
    config = build_config(
        train=train_path,
        model=model_path,
        dev=dev,
        lexicon=lexicon,
        scheme=scheme,
        templates=templates,
        families=families,
        scale=scale,
        scale_file=scale_file,
        score=score,
        alpha=alpha,
        l1=l1,
        l2=l2,
        tol=tol,
        max_iter=max_iter,
        wc_include_char=wc_include_char,
        batch_size=batch_size,
        workers=workers,
    )

    train_corpus = read_corpus(config.train)
    active_lexicon = (
        read_lexicon(config.lexicon)
        if config.lexicon is not None
        else build_from_corpus(train_corpus)
    )
    scales = resolve_scales(config, train_corpus, active_lexicon)
    if scales is not None and scale_report is not None:
        write_scale_report(scale_report, scales)

    model = train(
        train_corpus,
        config.label_scheme(),
        config.template_config(),
        scales,
        active_lexicon,
        config.hyper(),
        batch_size=config.batch_size,
        lbfgs_memory=config.lbfgs_memory,
        vocab=build_vocab(train_corpus),
    )
    save_model(model, config.model)

    echo_porcelain(
        [
            ("iterations", model.iterations),
            ("final_objective", f"{model.final_objective:.6f}"),
            ("converged", str(model.converged).lower()),
            ("num_features", model.num_features),
            ("num_parameters", model.parameters().size),
            ("zero_fraction", f"{model.zero_fraction():.6f}"),
        ]
    )
