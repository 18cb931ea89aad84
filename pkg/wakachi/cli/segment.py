"""
Comando segment: segmenta texto crudo con un modelo guardado
"""

from pathlib import Path
from typing import Annotated, Optional

import typer

from ..services.lexicon_store import get_lexicon_store
from ..services.segmenter import Segmenter
from ..storage import load_model
from .common import build_config, input_lines, publish_lexicon
from .error_handler import handle_errors


@handle_errors
def segment_command(
    model_path: Annotated[Path, typer.Option("--model", help="Archivo de modelo")],
    input_path: Annotated[
        Optional[Path], typer.Option("--input", help="Texto crudo (stdin si se omite)")
    ] = None,
    extra_lexicon: Annotated[
        Optional[Path],
        typer.Option("--extra-lexicon", help="Lexemas añadidos al léxico de entrenamiento"),
    ] = None,
    workers: Annotated[Optional[int], typer.Option("--workers")] = None,
):
    """
    Segmenta cada línea de entrada y escribe las palabras separadas por un espacio
    """
    config = build_config(
        model=model_path, input=input_path, extra_lexicon=extra_lexicon, workers=workers
    )
    model = load_model(config.model)
    publish_lexicon(model, config.extra_lexicon)
    segmenter = Segmenter(model, get_lexicon_store(), workers=config.workers)

    for sentence in segmenter.segment_lines(input_lines(config.input)):
        typer.echo(" ".join(sentence.words))
