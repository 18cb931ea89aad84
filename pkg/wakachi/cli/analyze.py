"""
Subcomandos de análisis: cobertura por longitud, τ e información por carácter
"""

import math
from pathlib import Path
from typing import Annotated, List, Optional

import typer

from ..exceptions import UsageError
from ..services.association import (TAU_VARIABLES, label_feature_tau,
                                    tau_matrix)
from ..services.corpus import parse_line, read_corpus, word_length_coverage
from ..services.labels import get_scheme
from ..services.lexicon import CharRecord, build_from_corpus
from ..storage import read_lexicon
from .common import echo_porcelain, print_table, split_csv
from .error_handler import handle_errors

app = typer.Typer(help="Análisis de corpus y léxicos", no_args_is_help=True)

INFO_COLUMNS = ["C", "O", "L", "T", "R", "S", "L_R", "L_S"]


@app.command("coverage")
@handle_errors
def coverage_command(
    corpus_path: Annotated[Path, typer.Option("--corpus", help="Corpus segmentado")],
    max_k: Annotated[int, typer.Option("--max-k", help="Longitud máxima a reportar")] = 10,
    porcelain: Annotated[bool, typer.Option("--porcelain")] = False,
):
    """Porcentaje acumulado de tokens con longitud ≤ k"""
    table = word_length_coverage(read_corpus(corpus_path), max_k)
    if porcelain:
        echo_porcelain(
            [("total_tokens", table.total_tokens), ("longest_word", table.longest_word)]
            + [(f"coverage.{k}", f"{value:.2f}") for k, value in table.rows.items()]
        )
        return
    print_table(
        f"Cobertura ({table.total_tokens} tokens)",
        ["k", "%"],
        [(k, f"{value:.2f}") for k, value in table.rows.items()],
    )


@app.command("tau")
@handle_errors
def tau_command(
    corpus_path: Annotated[Path, typer.Option("--corpus", help="Corpus segmentado")],
    scheme: Annotated[str, typer.Option("--scheme")] = "final",
    shape: Annotated[str, typer.Option("--shape", help="Forma del n-grama, p. ej. t-1")] = "t-1",
    prev_label: Annotated[
        bool, typer.Option("--prev-label", help="Incluir la etiqueta anterior en X")
    ] = False,
    label_view: Annotated[
        str, typer.Option("--label-view", help="scheme o lt")
    ] = "scheme",
    porcelain: Annotated[bool, typer.Option("--porcelain")] = False,
):
    """τ(n-grama → etiqueta) sobre un corpus segmentado"""
    tau = label_feature_tau(
        read_corpus(corpus_path),
        get_scheme(scheme),
        shape=shape,
        include_prev_label=prev_label,
        label_view=label_view,
    )
    if porcelain:
        echo_porcelain([("tau", f"{tau:.6f}")])
        return
    print_table(
        "τ",
        ["esquema", "forma", "y₋₁", "vista", "τ"],
        [(scheme, shape, "sí" if prev_label else "no", label_view, f"{tau:.4f}")],
    )


def _records(corpus_path: Path, lexicon_path: Optional[Path]) -> List[CharRecord]:
    corpus = read_corpus(corpus_path)
    lexicon = read_lexicon(lexicon_path) if lexicon_path else build_from_corpus(corpus)
    records: List[CharRecord] = []
    for sentence in corpus:
        records.extend(lexicon.sentence_info(sentence.chars, sentence.boundaries))
    return records


@app.command("tau-matrix")
@handle_errors
def tau_matrix_command(
    corpus_path: Annotated[Path, typer.Option("--corpus", help="Corpus segmentado")],
    lexicon_path: Annotated[
        Optional[Path], typer.Option("--lexicon", help="Léxico (por defecto, tipos del corpus)")
    ] = None,
    variables: Annotated[
        Optional[str], typer.Option("--variables", help="Subconjunto de T,L_R,L_S,O,L")
    ] = None,
    porcelain: Annotated[bool, typer.Option("--porcelain")] = False,
):
    """Matriz τ(fila → columna) entre variables por carácter"""
    selected = split_csv(variables) or list(TAU_VARIABLES)
    unknown = [v for v in selected if v not in TAU_VARIABLES]
    if unknown:
        raise UsageError(f"Variables desconocidas: {unknown}")
    matrix = tau_matrix(_records(corpus_path, lexicon_path), selected)

    def cell(value: float) -> str:
        return "NA" if math.isnan(value) else f"{value:.6f}"

    if porcelain:
        echo_porcelain(
            (f"tau.{source}.{target}", cell(matrix.loc[source, target]))
            for source in selected
            for target in selected
        )
        return
    print_table(
        "τ(fila → columna)",
        ["X \\ Y"] + selected,
        [[source] + [cell(matrix.loc[source, t]) for t in selected] for source in selected],
    )


@app.command("info")
@handle_errors
def info_command(
    lexicon_path: Annotated[Path, typer.Option("--lexicon", help="Archivo de léxico")],
    sentence: Annotated[
        Optional[str],
        typer.Option("--sentence", help="Oración; con espacios se toma como segmentada"),
    ] = None,
    corpus_path: Annotated[Optional[Path], typer.Option("--corpus")] = None,
    porcelain: Annotated[bool, typer.Option("--porcelain")] = False,
):
    """Información por carácter: offset, longitud, escritura y coincidencias del léxico"""
    if (sentence is None) == (corpus_path is None):
        raise UsageError("Indique exactamente uno de --sentence o --corpus")
    lexicon = read_lexicon(lexicon_path)
    if sentence is not None:
        gold = parse_line(sentence) if " " in sentence else None
        chars = gold.chars if gold is not None else sentence
        records = lexicon.sentence_info(chars, gold.boundaries if gold else None)
    else:
        records = []
        for s in read_corpus(corpus_path):
            records.extend(lexicon.sentence_info(s.chars, s.boundaries))

    rows = [[record.as_row()[column] for column in INFO_COLUMNS] for record in records]
    if porcelain:
        typer.echo("\t".join(INFO_COLUMNS))
        for row in rows:
            typer.echo("\t".join(row))
        return
    print_table("Información por carácter", INFO_COLUMNS, rows)
