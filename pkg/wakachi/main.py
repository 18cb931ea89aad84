"""
Punto de entrada de la CLI
"""

from typing import Annotated

import typer

from .cli import analyze, lexicon
from .cli.evaluate import evaluate_command
from .cli.segment import segment_command
from .cli.synth import synth_command
from .cli.train import train_command
from .utils.logging_config import get_logger, init_logging

logger = get_logger(__name__)

app = typer.Typer(
    name="wakachi",
    help="Segmentación de palabras en japonés con CRF y léxico dinámico",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)


@app.callback()
def main(
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Logs INFO en stderr")
    ] = False,
):
    """
    Inicializa el logging antes de cada comando
    """
    init_logging(verbose=verbose)


app.command("train")(train_command)
app.command("segment")(segment_command)
app.command("eval")(evaluate_command)
app.command("synth")(synth_command)
app.add_typer(analyze.app, name="analyze")
app.add_typer(lexicon.app, name="lexicon")


if __name__ == "__main__":
    app()
