"""
Utilidades compartidas por los comandos
"""

from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Tuple

import typer
from rich.console import Console
from rich.table import Table

from ..config import RunConfig
from ..services.corpus import iter_lines
from ..services.crf import CrfModel
from ..services.lexicon import Lexicon
from ..services.lexicon_store import reset_lexicon_store
from ..storage import read_lexemes
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


def build_config(**options) -> RunConfig:
    """
    RunConfig a partir de las opciones de un comando

    Las opciones no indicadas (None) toman el valor por defecto del entorno.
    """
    families = options.pop("families", None)
    if isinstance(families, str):
        options["families"] = split_csv(families)
    return RunConfig(**{k: v for k, v in options.items() if v is not None})


def split_csv(value: Optional[str]) -> List[str]:
    if not value:
        return []
    return [part.strip() for part in value.split(",") if part.strip()]


def console() -> Console:
    """Consola de salida estándar sin ajuste de línea"""
    return Console(soft_wrap=True, highlight=False)


def echo_porcelain(items: Iterable[Tuple[str, object]]) -> None:
    """Salida clave/valor separada por tabulador, una por línea"""
    for key, value in items:
        typer.echo(f"{key}\t{value}")


def print_table(title: str, columns: List[str], rows: Iterable[Iterable[object]]) -> None:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(str(value) for value in row))
    console().print(table)


def input_lines(path: Optional[Path]) -> Iterator[str]:
    """Líneas de un archivo o de la entrada estándar, sin terminador"""
    if path is not None:
        with open(path, "rb") as f:
            for _, text in iter_lines(f):
                yield text
        return
    for _, text in iter_lines(typer.get_binary_stream("stdin")):
        yield text


def publish_lexicon(model: CrfModel, extra_lexicon: Optional[Path]) -> Lexicon:
    """
    Publica en el contenedor global el léxico efectivo: el de entrenamiento
    más el léxico extra, si se indicó

    El modelo no se modifica; el léxico extra no se persiste. Los comandos
    segmentan leyendo `get_lexicon_store()`.
    """
    store = reset_lexicon_store(model.lexicon)
    if extra_lexicon is None:
        return store.current()
    expanded = store.expand(add=read_lexemes(extra_lexicon))
    logger.info(
        f"Léxico extra aplicado: {expanded.expansion.added} lexemas nuevos",
        extra={"generation": expanded.generation},
    )
    return expanded
