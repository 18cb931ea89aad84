"""
Configuración global de pytest y fixtures compartidos
"""

import logging
import os
import sys
from typing import Generator, List

import pytest
from dotenv import load_dotenv
from typer.testing import CliRunner

# Cargar variables de entorno de test antes de importar el paquete
test_env_path = os.path.join(os.path.dirname(__file__), ".env.test")
load_dotenv(test_env_path, override=True)

# Agregar el directorio padre al path para importar el paquete
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from wakachi.models.model import Hyper, TemplateConfig, TemplatePreset  # noqa: E402
from wakachi.services.corpus import Sentence, build_vocab, parse_line  # noqa: E402
from wakachi.services.crf import CrfModel, train  # noqa: E402
from wakachi.services.features import enumerate_species  # noqa: E402
from wakachi.services.labels import SCHEME_PRESETS  # noqa: E402
from wakachi.services.lexicon import Lexicon, build_from_corpus  # noqa: E402
from wakachi.services.synthetic import (SyntheticCorpus,  # noqa: E402
                                        generate_corpus, split_corpus)

LUBBA_LEXEMES = ["a", "bad", "dub", "Lu", "!"]


@pytest.fixture
def lubba_lexicon() -> Lexicon:
    """Léxico de juguete {a, bad, dub, Lu, !}"""
    return Lexicon(LUBBA_LEXEMES)


@pytest.fixture
def lubba_sentence() -> Sentence:
    """Oración "Lubba dub !" con sus límites gold"""
    return parse_line("Lubba dub !")


@pytest.fixture
def toy_corpus() -> List[Sentence]:
    """Corpus mínimo con las tres escrituras y puntuación"""
    lines = [
        "東京 に 行く 。",
        "カタカナ の 言葉 を 書く 。",
        "東京 の 言葉 。",
        "Lubba dub !",
    ]
    return [parse_line(line) for line in lines]


@pytest.fixture(scope="session")
def synthetic_corpus() -> SyntheticCorpus:
    """Corpus sintético pequeño y determinista"""
    return generate_corpus(n_sentences=150, vocab_size=30, min_words=3, max_words=7, seed=0)


@pytest.fixture(scope="session")
def synthetic_split(synthetic_corpus):
    """(train, test) del corpus sintético"""
    return split_corpus(synthetic_corpus.sentences, test_fraction=0.2)


@pytest.fixture(scope="session")
def fast_hyper() -> Hyper:
    """Hiperparámetros con pocas iteraciones para tests rápidos"""
    return Hyper(l1=0.000015, l2=0.0025, tol=1e-6, max_iter=40)


@pytest.fixture(scope="session")
def tiny_model(synthetic_split, fast_hyper) -> CrfModel:
    """Modelo final (esquema de 22 clases, 45 especies) entrenado sobre el corpus sintético"""
    train_corpus, _ = synthetic_split
    templates = TemplateConfig(
        preset=TemplatePreset.FULL,
        families=["C", "LC", "WC"],
        species=[s.id for s in enumerate_species()],
        wc_include_char=True,
    )
    return train(
        train_corpus,
        SCHEME_PRESETS["final"],
        templates,
        None,
        build_from_corpus(train_corpus),
        fast_hyper,
        batch_size=32,
        vocab=build_vocab(train_corpus),
    )


@pytest.fixture
def cli_runner() -> Generator[CliRunner, None, None]:
    """Runner de Typer; limpia los handlers que la CLI deja en el logger raíz"""
    yield CliRunner()
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)
