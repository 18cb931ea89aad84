"""
Comando synth: corpus sintético de tres escrituras y léxico OOV inyectado
"""

from pathlib import Path
from typing import Annotated

import typer

from ..exceptions import CorpusIOError
from ..services.corpus import write_corpus
from ..services.lexicon import Lexicon
from ..services.synthetic import generate_corpus, inject_oov, split_corpus
from ..storage import write_lexicon
from .common import echo_porcelain
from .error_handler import handle_errors


@handle_errors
def synth_command(
    output_dir: Annotated[Path, typer.Option("--output-dir", help="Directorio de salida")],
    sentences: Annotated[int, typer.Option("--sentences")] = 2000,
    vocab_size: Annotated[int, typer.Option("--vocab-size")] = 200,
    test_fraction: Annotated[float, typer.Option("--test-fraction")] = 0.1,
    dev_fraction: Annotated[
        float, typer.Option("--dev-fraction", help="Fracción de train reservada como dev")
    ] = 0.0,
    oov_count: Annotated[int, typer.Option("--oov-count")] = 20,
    seed: Annotated[int, typer.Option("--seed")] = 0,
):
    """
    Escribe train.txt, test.txt, test_oov.txt, oov_lexicon.txt y, si se pide,
    dev.txt
    """
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise CorpusIOError(f"No se pudo crear {output_dir}: {e}")

    corpus = generate_corpus(n_sentences=sentences, vocab_size=vocab_size, seed=seed)
    train, test = split_corpus(corpus.sentences, test_fraction)
    if dev_fraction > 0.0:
        train, dev = split_corpus(train, dev_fraction)
        write_corpus(output_dir / "dev.txt", dev)
    test_oov, injected = inject_oov(
        test, set(corpus.lexemes), count=oov_count, seed=seed + 1
    )

    write_corpus(output_dir / "train.txt", train)
    write_corpus(output_dir / "test.txt", test)
    write_corpus(output_dir / "test_oov.txt", test_oov)
    write_lexicon(output_dir / "oov_lexicon.txt", Lexicon(injected))

    echo_porcelain(
        [
            ("train_sentences", len(train)),
            ("test_sentences", len(test)),
            ("injected_lexemes", len(injected)),
        ]
    )
