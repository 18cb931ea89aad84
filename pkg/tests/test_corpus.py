"""
Tests para lectura de corpus, vocabulario y cobertura por longitud
"""

import io
import random

import pytest

from wakachi.exceptions import (CorpusDecodeError, CorpusFormatError,
                                CorpusIOError, EmptyInputError, UsageError)
from wakachi.models.corpus import Vocab
from wakachi.services.corpus import (Sentence, build_vocab, mark_oov,
                                     parse_corpus, parse_line, read_corpus,
                                     serialize, word_length_coverage,
                                     write_corpus)


class TestParseCorpus:
    """Tests para el parser de corpus segmentados"""

    def test_parse_lubba_line(self):
        """Test de offsets de la oración de ejemplo"""
        sentences = parse_corpus(io.BytesIO("Lubba dub !\n".encode("utf-8")))

        assert len(sentences) == 1
        assert sentences[0].chars == "Lubbadub!"
        assert sentences[0].boundaries == (0, 5, 8)

    def test_single_character_word(self):
        """Test de una palabra de un carácter"""
        (sentence,) = parse_corpus(io.BytesIO(b"a\n"))
        assert sentence == Sentence("a", (0,))

    def test_multiple_lines(self):
        """Test de dos oraciones con sus límites"""
        sentences = parse_corpus(io.BytesIO(b"ab cd\nx y z\n"))

        assert [s.boundaries for s in sentences] == [(0, 2), (0, 1, 2)]

    def test_empty_lines_skipped(self):
        """Test de líneas vacías omitidas"""
        sentences = parse_corpus(io.BytesIO(b"ab\n\ncd\n\n"))
        assert [s.chars for s in sentences] == ["ab", "cd"]

    def test_offsets_count_scalar_values(self):
        """Test de offsets en caracteres y no en bytes"""
        (sentence,) = parse_corpus(io.BytesIO("東京 都\n".encode("utf-8")))
        assert sentence.boundaries == (0, 2)

    def test_consecutive_spaces_rejected(self):
        """Test de espacios consecutivos con número de línea"""
        with pytest.raises(CorpusFormatError) as exc_info:
            parse_corpus(io.BytesIO(b"ok\na  b\n"))
        assert exc_info.value.line_number == 2

    @pytest.mark.parametrize("line", [" ab", "ab ", " "])
    def test_leading_or_trailing_space_rejected(self, line):
        """Test de espacios al inicio o al final"""
        with pytest.raises(CorpusFormatError):
            parse_line(line, 1)

    def test_invalid_utf8(self):
        """Test de bytes inválidos con número de línea"""
        with pytest.raises(CorpusDecodeError) as exc_info:
            parse_corpus(io.BytesIO(b"ok\n\xff\xfe\n"))
        assert exc_info.value.line_number == 2

    def test_line_terminator_inside_word(self):
        """Test de separador de línea Unicode dentro de una palabra"""
        with pytest.raises(CorpusFormatError):
            parse_line("a\u2028b")

    def test_serialize_round_trip(self):
        """Test de reemisión idéntica del corpus"""
        text = "東京 に 行く 。\nLubba dub !\n"
        assert serialize(parse_corpus(io.BytesIO(text.encode("utf-8")))) == text

    def test_read_missing_file(self, tmp_path):
        """Test de archivo inexistente"""
        with pytest.raises(CorpusIOError):
            read_corpus(tmp_path / "missing.txt")

    def test_write_and_read(self, tmp_path, toy_corpus):
        """Test de escritura y lectura desde disco"""
        path = tmp_path / "corpus.txt"
        write_corpus(path, toy_corpus)
        assert read_corpus(path) == toy_corpus


class TestSentence:
    """Tests para el tipo Sentence"""

    def test_words_and_spans(self, lubba_sentence):
        """Test de palabras e intervalos"""
        assert lubba_sentence.words == ["Lubba", "dub", "!"]
        assert lubba_sentence.spans() == [(0, 5), (5, 8), (8, 9)]
        assert lubba_sentence.word_lengths() == [5, 3, 1]

    def test_boundaries_must_start_at_zero(self):
        """Test de límites que no comienzan en 0"""
        with pytest.raises(CorpusFormatError):
            Sentence("abc", (1,))

    def test_boundaries_strictly_increasing(self):
        """Test de límites repetidos"""
        with pytest.raises(CorpusFormatError):
            Sentence("abc", (0, 1, 1))


class TestVocabAndOov:
    """Tests para vocabulario y marcado IV/OOV"""

    def test_build_vocab(self, toy_corpus):
        """Test de tipos y tokens"""
        vocab = build_vocab(toy_corpus)

        assert "東京" in vocab
        assert vocab.token_count == sum(len(s.words) for s in toy_corpus)

    def test_mark_oov(self, lubba_sentence):
        """Test de dub conocido y Lubba desconocido"""
        vocab = Vocab(types=frozenset({"a", "bad", "dub", "Lu", "!"}))
        flags = mark_oov([lubba_sentence], vocab)

        assert flags == [[True, False, False]]

    def test_empty_vocab_marks_everything(self, toy_corpus):
        """Test de vocabulario vacío"""
        flags = mark_oov(toy_corpus, Vocab())
        assert all(all(row) for row in flags)

    def test_iv_oov_partition(self, toy_corpus):
        """Test de IV + OOV = total de tokens"""
        vocab = build_vocab(toy_corpus[:2])
        flags = mark_oov(toy_corpus, vocab)
        total = sum(len(s.words) for s in toy_corpus)
        assert sum(f for row in flags for f in row) + sum(
            not f for row in flags for f in row
        ) == total


class TestCoverage:
    """Tests para la cobertura por longitud de palabra"""

    def test_hand_counted_example(self):
        """Test de 2 de 3 tokens con longitud 1"""
        corpus = [parse_line("a b"), parse_line("ab")]
        table = word_length_coverage(corpus, 2)

        assert round(table.rows[1], 2) == 66.67
        assert table.rows[2] == 100.0

    def test_single_token(self):
        """Test de un único token"""
        assert word_length_coverage([parse_line("x")], 1).rows == {1: 100.0}

    def test_empty_corpus(self):
        """Test de corpus sin palabras"""
        with pytest.raises(EmptyInputError):
            word_length_coverage([], 3)

    def test_invalid_max_k(self):
        """Test de max_k no positivo"""
        with pytest.raises(UsageError):
            word_length_coverage([parse_line("x")], 0)

    def test_monotonic_on_random_corpora(self):
        """Test de monotonía y 100% en la longitud máxima"""
        rng = random.Random(7)
        for _ in range(100):
            corpus = [
                Sentence.from_words(
                    ["x" * rng.randint(1, 8) for _ in range(rng.randint(1, 6))]
                )
                for _ in range(rng.randint(1, 5))
            ]
            table = word_length_coverage(corpus, 10)
            values = [table.rows[k] for k in range(1, 11)]
            assert values == sorted(values)
            assert table.rows[table.longest_word] == pytest.approx(100.0)
