"""
Subcomandos de léxico: construcción, expansión y estadísticas
"""

from pathlib import Path
from typing import Annotated, Optional

import typer

from ..exceptions import UsageError
from ..services.corpus import read_corpus
from ..services.lexicon import build_from_corpus
from ..storage import read_lexemes, read_lexicon, write_lexicon
from .common import echo_porcelain, print_table
from .error_handler import handle_errors

app = typer.Typer(help="Gestión de léxicos", no_args_is_help=True)


@app.command("build")
@handle_errors
def build_command(
    train_path: Annotated[Path, typer.Option("--train", help="Corpus segmentado")],
    output: Annotated[Path, typer.Option("--output", help="Archivo de léxico a escribir")],
):
    """Léxico con los tipos de palabra de un corpus"""
    lexicon = build_from_corpus(read_corpus(train_path))
    write_lexicon(output, lexicon)
    echo_porcelain([("size", len(lexicon)), ("fingerprint", lexicon.fingerprint)])


@app.command("expand")
@handle_errors
def expand_command(
    lexicon_path: Annotated[Path, typer.Option("--lexicon", help="Léxico base")],
    output: Annotated[Path, typer.Option("--output", help="Léxico resultante")],
    add: Annotated[Optional[Path], typer.Option("--add", help="Lexemas a agregar")] = None,
    remove: Annotated[
        Optional[Path], typer.Option("--remove", help="Lexemas a eliminar")
    ] = None,
):
    """Agrega y elimina lexemas; las bajas inexistentes se informan y se ignoran"""
    if add is None and remove is None:
        raise UsageError("Indique --add y/o --remove")
    base = read_lexicon(lexicon_path)
    expanded = base.expand(
        add=read_lexemes(add) if add else (),
        remove=read_lexemes(remove) if remove else (),
    )
    write_lexicon(output, expanded)

    summary = expanded.expansion
    echo_porcelain(
        [
            ("size", summary.size),
            ("added", summary.added),
            ("already_present", summary.already_present),
            ("removed", summary.removed),
            ("ignored_removals", len(summary.ignored_removals)),
        ]
    )
    for lexeme in summary.ignored_removals:
        typer.echo(f"ignored\t{lexeme}", err=True)


@app.command("stats")
@handle_errors
def stats_command(
    lexicon_path: Annotated[Path, typer.Option("--lexicon", help="Archivo de léxico")],
    porcelain: Annotated[bool, typer.Option("--porcelain")] = False,
):
    """Tamaño, histograma de longitudes y huella del léxico"""
    stats = read_lexicon(lexicon_path).stats()
    if porcelain:
        echo_porcelain(
            [("size", stats.size), ("fingerprint", stats.fingerprint)]
            + [(f"length.{bucket}", count) for bucket, count in stats.length_buckets.items()]
        )
        return
    print_table(
        f"Léxico ({stats.size} lexemas)",
        ["longitud", "lexemas"],
        stats.length_buckets.items(),
    )
    typer.echo(f"sha256: {stats.fingerprint}")
