"""
Tests de integración de la CLI
"""

import io
import json
import logging
import zipfile

import pytest
from typer.testing import CliRunner

from wakachi.main import app
from wakachi.models.scales import ScaleMode
from wakachi.services.features import enumerate_species
from wakachi.services.lexicon_store import get_lexicon_store
from wakachi.storage import load_model, read_lexemes
from wakachi.storage.model_file import METADATA_ENTRY


def _invoke(args):
    """Invoca la CLI fuera de un test y quita los handlers que deja en el logger raíz"""
    result = CliRunner().invoke(app, args)
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)
    return result


def _lines(result):
    return result.stdout.splitlines()


def _porcelain(result) -> dict:
    return dict(line.split("\t", 1) for line in _lines(result))


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    """Corpus sintético escrito por el comando synth"""
    directory = tmp_path_factory.mktemp("synth")
    result = _invoke(
        [
            "synth",
            "--output-dir", str(directory),
            "--sentences", "200",
            "--vocab-size", "40",
            "--dev-fraction", "0.1",
            "--oov-count", "5",
            "--seed", "2",
        ],
    )
    assert result.exit_code == 0, result.stderr
    return directory


@pytest.fixture(scope="module")
def trained_model(dataset):
    """Modelo vanilla entrenado con pocas iteraciones"""
    model_path = dataset / "model.wkc"
    result = _invoke(
        [
            "train",
            "--train", str(dataset / "train.txt"),
            "--model", str(model_path),
            "--scheme", "bies",
            "--templates", "vanilla",
            "--max-iter", "20",
        ],
    )
    assert result.exit_code == 0, result.stderr
    return model_path


@pytest.fixture(scope="module")
def oov_dataset(tmp_path_factory):
    """Corpus de 400 oraciones con 20 lexemas OOV y un modelo final sin carácter en WC"""
    directory = tmp_path_factory.mktemp("oov")
    result = _invoke(
        [
            "synth",
            "--output-dir", str(directory),
            "--sentences", "400",
            "--oov-count", "20",
            "--seed", "0",
        ],
    )
    assert result.exit_code == 0, result.stderr
    result = _invoke(
        [
            "train",
            "--train", str(directory / "train.txt"),
            "--model", str(directory / "final.wkc"),
            "--scheme", "final",
            "--templates", "full",
            "--wc-include-char", "false",
            "--max-iter", "150",
        ],
    )
    assert result.exit_code == 0, result.stderr

    gold_lines = (directory / "test_oov.txt").read_text(encoding="utf-8").splitlines()
    (directory / "raw_oov.txt").write_text(
        "".join(line.replace(" ", "") + "\n" for line in gold_lines), encoding="utf-8"
    )
    return directory


@pytest.mark.integration
class TestSynthAndTrain:
    """Tests de los comandos synth y train"""

    def test_synth_outputs(self, dataset):
        """Test de archivos generados"""
        for name in ("train.txt", "dev.txt", "test.txt", "test_oov.txt", "oov_lexicon.txt"):
            assert (dataset / name).exists()
        lexemes = (dataset / "oov_lexicon.txt").read_text(encoding="utf-8").split()
        assert len(lexemes) == 5

    def test_train_summary(self, trained_model, dataset, cli_runner):
        """Test de resumen de entrenamiento"""
        result = cli_runner.invoke(
            app,
            [
                "train",
                "--train", str(dataset / "train.txt"),
                "--model", str(dataset / "other.wkc"),
                "--scheme", "bies",
                "--templates", "vanilla",
                "--max-iter", "5",
                "--l1", "0",
            ],
        )
        summary = _porcelain(result)

        assert result.exit_code == 0, result.stderr
        assert int(summary["iterations"]) <= 5
        assert summary["converged"] in ("true", "false")
        assert int(summary["num_features"]) > 0

    def test_train_with_boost(self, dataset, cli_runner, tmp_path):
        """Test de entrenamiento con escalas de refuerzo y reporte"""
        report = tmp_path / "scales.json"
        result = cli_runner.invoke(
            app,
            [
                "train",
                "--train", str(dataset / "train.txt"),
                "--model", str(tmp_path / "boost.wkc"),
                "--scale", "boost",
                "--scale-report", str(report),
                "--max-iter", "5",
            ],
        )
        assert result.exit_code == 0, result.stderr
        assert '"boost"' in report.read_text(encoding="utf-8")

    def test_train_with_learned_scales(self, dataset, cli_runner, tmp_path):
        """Test de escalas aprendidas con dev: 45 filas en el modelo y reporte de texto"""
        model_path = tmp_path / "learned.wkc"
        report = tmp_path / "scales.txt"
        result = cli_runner.invoke(
            app,
            [
                "train",
                "--train", str(dataset / "train.txt"),
                "--dev", str(dataset / "dev.txt"),
                "--model", str(model_path),
                "--scheme", "bies",
                "--templates", "vanilla",
                "--scale", "learned",
                "--scale-report", str(report),
                "--max-iter", "5",
                "--workers", "2",
            ],
        )
        assert result.exit_code == 0, result.stderr

        scales = load_model(model_path).scales
        assert scales.mode == ScaleMode.LEARNED
        assert len(scales.entries) == 45
        assert set(scales.values) == {s.id for s in enumerate_species()}

        lines = report.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("species\trecall_iv\trecall_oov")
        assert len(lines) == 46


@pytest.mark.integration
class TestSegmentAndEvaluate:
    """Tests de los comandos segment y eval"""

    def test_segment_file(self, trained_model, dataset, cli_runner):
        """Test de una línea de salida por línea de entrada"""
        raw = dataset / "raw.txt"
        raw.write_text("あいう\n\nカキク 東\n", encoding="utf-8")
        result = cli_runner.invoke(
            app, ["segment", "--model", str(trained_model), "--input", str(raw)]
        )

        assert result.exit_code == 0, result.stderr
        lines = _lines(result)
        assert len(lines) == 3
        assert lines[1] == ""
        assert lines[0].replace(" ", "") == "あいう"
        assert lines[2].replace(" ", "") == "カキク東"
        assert lines[2].split(" ")[-1] == "東"

    def test_segment_stdin(self, trained_model, cli_runner):
        """Test de lectura desde la entrada estándar"""
        result = cli_runner.invoke(
            app, ["segment", "--model", str(trained_model)], input="東京\n"
        )
        assert result.exit_code == 0, result.stderr
        assert _lines(result)[0].replace(" ", "") == "東京"

    def test_eval_porcelain(self, trained_model, dataset, cli_runner):
        """Test de reporte clave/valor"""
        result = cli_runner.invoke(
            app,
            [
                "eval",
                "--test", str(dataset / "test_oov.txt"),
                "--model", str(trained_model),
                "--extra-lexicon", str(dataset / "oov_lexicon.txt"),
                "--porcelain",
            ],
        )
        report = _porcelain(result)

        assert result.exit_code == 0, result.stderr
        assert 0.0 <= float(report["word_f1"]) <= 1.0
        assert int(report["gold_oov_words"]) > 0
        assert report["recall_oov"] != "NA"

    def test_eval_oracle(self, dataset, cli_runner):
        """Test de sistema igual a la referencia"""
        test = str(dataset / "test.txt")
        result = cli_runner.invoke(
            app,
            ["eval", "--test", test, "--system", test, "--train", test, "--porcelain"],
        )
        report = _porcelain(result)

        assert result.exit_code == 0, result.stderr
        assert report["word_f1"] == "1.000000"
        assert report["recall_oov"] == "NA"

    def test_eval_readable(self, dataset, cli_runner):
        """Test de reporte con tablas"""
        test = str(dataset / "test.txt")
        result = cli_runner.invoke(app, ["eval", "--test", test, "--system", test])
        assert result.exit_code == 0, result.stderr
        assert "F1" in result.stdout

    def test_eval_needs_one_source(self, trained_model, dataset, cli_runner):
        """Test de --model y --system a la vez"""
        test = str(dataset / "test.txt")
        result = cli_runner.invoke(
            app,
            ["eval", "--test", test, "--system", test, "--model", str(trained_model)],
        )
        assert result.exit_code == 2


@pytest.mark.integration
class TestLexiconExpansion:
    """Tests de léxico extra en inferencia sin reentrenar"""

    def test_segment_output_changes(self, oov_dataset, cli_runner):
        """Test de salida distinta con --extra-lexicon y modelo intacto"""
        model_path = oov_dataset / "final.wkc"
        model_bytes = model_path.read_bytes()
        common = [
            "segment",
            "--model", str(model_path),
            "--input", str(oov_dataset / "raw_oov.txt"),
        ]

        plain = cli_runner.invoke(app, common)
        extended = cli_runner.invoke(
            app, common + ["--extra-lexicon", str(oov_dataset / "oov_lexicon.txt")]
        )

        assert plain.exit_code == 0, plain.stderr
        assert extended.exit_code == 0, extended.stderr
        assert len(_lines(plain)) == len(_lines(extended))
        assert plain.stdout != extended.stdout
        assert model_path.read_bytes() == model_bytes

        published = get_lexicon_store().current()
        for lexeme in read_lexemes(oov_dataset / "oov_lexicon.txt"):
            assert lexeme in published
        assert not load_model(model_path).templates.wc_include_char

    def test_oov_recall_improves(self, oov_dataset, cli_runner):
        """Test de recall OOV estrictamente mayor con los lexemas inyectados"""
        model_path = oov_dataset / "final.wkc"
        model_bytes = model_path.read_bytes()
        common = [
            "eval",
            "--test", str(oov_dataset / "test_oov.txt"),
            "--model", str(model_path),
            "--porcelain",
        ]

        before = cli_runner.invoke(app, common)
        after = cli_runner.invoke(
            app, common + ["--extra-lexicon", str(oov_dataset / "oov_lexicon.txt")]
        )

        assert before.exit_code == 0, before.stderr
        assert after.exit_code == 0, after.stderr
        recall_before = float(_porcelain(before)["recall_oov"])
        recall_after = float(_porcelain(after)["recall_oov"])
        assert recall_after > recall_before
        assert model_path.read_bytes() == model_bytes


class TestAnalyze:
    """Tests de los subcomandos de análisis"""

    def test_coverage(self, tmp_path, cli_runner):
        """Test de cobertura sobre un corpus mínimo"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a b\nab\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            ["analyze", "coverage", "--corpus", str(corpus), "--max-k", "2", "--porcelain"],
        )
        values = _porcelain(result)

        assert result.exit_code == 0, result.stderr
        assert values["total_tokens"] == "3"
        assert values["coverage.1"] == "66.67"
        assert values["coverage.2"] == "100.00"

    def test_tau(self, tmp_path, cli_runner):
        """Test de τ en un corpus determinista"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("ab cde f\nab cde f\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            ["analyze", "tau", "--corpus", str(corpus), "--scheme", "bies", "--porcelain"],
        )
        assert result.exit_code == 0, result.stderr
        assert _lines(result) == ["tau\t1.000000"]

    def test_tau_undefined(self, tmp_path, cli_runner):
        """Test de τ indefinida con una sola etiqueta"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a b c\n", encoding="utf-8")
        result = cli_runner.invoke(
            app, ["analyze", "tau", "--corpus", str(corpus), "--scheme", "bies"]
        )
        assert result.exit_code == 5

    def test_tau_matrix(self, tmp_path, cli_runner):
        """Test de matriz con celdas NA"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("ab\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            [
                "analyze", "tau-matrix",
                "--corpus", str(corpus),
                "--variables", "O,L",
                "--porcelain",
            ],
        )
        values = _porcelain(result)

        assert result.exit_code == 0, result.stderr
        assert values["tau.O.O"] == "1.000000"
        assert values["tau.O.L"] == "NA"

    def test_info(self, tmp_path, cli_runner):
        """Test de información por carácter de la oración de ejemplo"""
        lexicon = tmp_path / "lexicon.txt"
        lexicon.write_text("a\nbad\ndub\nLu\n!\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            [
                "analyze", "info",
                "--lexicon", str(lexicon),
                "--sentence", "Lubba dub !",
                "--porcelain",
            ],
        )
        lines = _lines(result)

        assert result.exit_code == 0, result.stderr
        assert lines[0] == "C\tO\tL\tT\tR\tS\tL_R\tL_S"
        assert lines[2] == "u\t1\t5\tL\tLu, dub\tLu\t2, 3\t2"
        assert lines[3] == "b\t2\t5\tL\tbad, dub\t\t3\t"
        assert len(lines) == 10

    def test_info_raw_sentence(self, tmp_path, cli_runner):
        """Test de oración sin segmentar con O y L vacíos"""
        lexicon = tmp_path / "lexicon.txt"
        lexicon.write_text("a\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            ["analyze", "info", "--lexicon", str(lexicon), "--sentence", "ab", "--porcelain"],
        )
        assert result.exit_code == 0, result.stderr
        assert _lines(result)[1] == "a\t\t\tL\ta\ta\t1\t1"


class TestLexiconCommands:
    """Tests de los subcomandos de léxico"""

    def test_build_expand_stats(self, tmp_path, cli_runner):
        """Test de construcción, expansión con bajas ignoradas y estadísticas"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("Lubba dub !\na bad\n", encoding="utf-8")
        base = tmp_path / "base.txt"
        additions = tmp_path / "add.txt"
        additions.write_text("Lu\nabcdefg\n", encoding="utf-8")
        removals = tmp_path / "remove.txt"
        removals.write_text("zzz\n!\n", encoding="utf-8")
        expanded = tmp_path / "expanded.txt"

        build = cli_runner.invoke(
            app, ["lexicon", "build", "--train", str(corpus), "--output", str(base)]
        )
        assert build.exit_code == 0, build.stderr
        assert _porcelain(build)["size"] == "5"

        expand = cli_runner.invoke(
            app,
            [
                "lexicon", "expand",
                "--lexicon", str(base),
                "--output", str(expanded),
                "--add", str(additions),
                "--remove", str(removals),
            ],
        )
        summary = _porcelain(expand)
        assert expand.exit_code == 0, expand.stderr
        assert summary == {
            "size": "6",
            "added": "2",
            "already_present": "0",
            "removed": "1",
            "ignored_removals": "1",
        }
        assert "ignored\tzzz" in expand.stderr

        stats = cli_runner.invoke(
            app, ["lexicon", "stats", "--lexicon", str(expanded), "--porcelain"]
        )
        values = _porcelain(stats)
        assert stats.exit_code == 0, stats.stderr
        assert values["size"] == "6"
        assert values["length.+"] == "1"
        assert len(values["fingerprint"]) == 64

    def test_expand_without_changes(self, tmp_path, cli_runner):
        """Test de expand sin --add ni --remove"""
        base = tmp_path / "base.txt"
        base.write_text("a\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            ["lexicon", "expand", "--lexicon", str(base), "--output", str(tmp_path / "o")],
        )
        assert result.exit_code == 2


class TestExitCodes:
    """Tests de códigos de salida por familia de error"""

    def test_missing_file(self, tmp_path, cli_runner):
        """Test de archivo inexistente"""
        result = cli_runner.invoke(
            app,
            ["train", "--train", str(tmp_path / "nada.txt"), "--model", str(tmp_path / "m")],
        )
        assert result.exit_code == 3
        assert "error: " in result.stderr

    def test_invalid_alpha(self, tmp_path, cli_runner):
        """Test de alpha fuera de rango"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a b\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            [
                "train",
                "--train", str(corpus),
                "--model", str(tmp_path / "m"),
                "--alpha", "2",
            ],
        )
        assert result.exit_code == 2
        assert "alpha" in result.stderr

    def test_malformed_corpus(self, tmp_path, cli_runner):
        """Test de corpus con espacios consecutivos"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a  b\n", encoding="utf-8")
        result = cli_runner.invoke(
            app, ["train", "--train", str(corpus), "--model", str(tmp_path / "m")]
        )
        assert result.exit_code == 4
        assert "línea 1" in result.stderr

    def test_learned_without_dev(self, tmp_path, cli_runner):
        """Test de escalas aprendidas sin corpus de desarrollo"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a b\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            [
                "train",
                "--train", str(corpus),
                "--model", str(tmp_path / "m"),
                "--scale", "learned",
            ],
        )
        assert result.exit_code == 2

    def test_unknown_scheme(self, tmp_path, cli_runner):
        """Test de esquema desconocido"""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a b\n", encoding="utf-8")
        result = cli_runner.invoke(
            app,
            [
                "train",
                "--train", str(corpus),
                "--model", str(tmp_path / "m"),
                "--scheme", "xyz",
            ],
        )
        assert result.exit_code == 2

    def test_corrupt_model(self, tmp_path, cli_runner):
        """Test de modelo corrupto"""
        model = tmp_path / "model.wkc"
        model.write_bytes(b"basura")
        result = cli_runner.invoke(app, ["segment", "--model", str(model)], input="a\n")
        assert result.exit_code == 4

    def test_invalid_scheme_in_model(self, trained_model, tmp_path, cli_runner):
        """Test de esquema inválido en los metadatos con código de formato"""
        source = zipfile.ZipFile(io.BytesIO(trained_model.read_bytes()))
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w") as target:
            for info in source.infolist():
                content = source.read(info.filename)
                if info.filename == METADATA_ENTRY:
                    metadata = json.loads(content)
                    metadata["scheme"]["positional_tags"] = ["I", "E", "S"]
                    content = json.dumps(metadata).encode("utf-8")
                target.writestr(info, content)
        model = tmp_path / "broken.wkc"
        model.write_bytes(buffer.getvalue())

        result = cli_runner.invoke(app, ["segment", "--model", str(model)], input="a\n")
        assert result.exit_code == 4
        assert "Esquema" in result.stderr

    def test_internal_error(self, tmp_path, cli_runner, mocker):
        """Test de error inesperado con código 1"""
        mocker.patch("wakachi.cli.train.read_corpus", side_effect=RuntimeError("fallo"))
        result = cli_runner.invoke(
            app, ["train", "--train", str(tmp_path / "c"), "--model", str(tmp_path / "m")]
        )
        assert result.exit_code == 1
        assert "error: fallo" in result.stderr
