"""
Tests para el léxico: coincidencias, perfiles, códigos LC/WC y expansión
"""

import random
import threading

import pytest

from wakachi.exceptions import LexiconFormatError
from wakachi.services.corpus import parse_line
from wakachi.services.lexicon import (Lexicon, build_from_corpus, expand,
                                      lc_code, length_bucket, match_positions,
                                      sentence_info, wc_code)
from wakachi.services.lexicon_store import (LexiconStore, get_lexicon_store,
                                            reset_lexicon_store)

# Filas esperadas para "Lubba dub !" con el léxico {a, bad, dub, Lu, !}
LUBBA_ROWS = [
    # C, O, L, T, R, L_R, S, L_S
    ("L", "0", "5", "L", "Lu", "2", "Lu", "2"),
    ("u", "1", "5", "L", "Lu, dub", "2, 3", "Lu", "2"),
    ("b", "2", "5", "L", "bad, dub", "3", "", ""),
    ("b", "3", "5", "L", "bad, dub", "3", "bad", "3"),
    ("a", "4", "5", "L", "a, bad", "1, 3", "a, bad", "1, 3"),
    ("d", "0", "3", "L", "bad, dub", "3", "bad, dub", "3"),
    ("u", "1", "3", "L", "Lu, dub", "2, 3", "dub", "3"),
    ("b", "2", "3", "L", "bad, dub", "3", "dub", "3"),
    ("!", "0", "1", "P", "!", "1", "!", "1"),
]


def _brute_force_matches(lexicon, sentence):
    positions = [set() for _ in sentence]
    for word in lexicon.entries:
        for start in range(len(sentence) - len(word) + 1):
            if sentence[start : start + len(word)] == word:
                for i in range(start, start + len(word)):
                    positions[i].add((word, start))
    return positions


class TestBuild:
    """Tests para la construcción del léxico"""

    def test_from_corpus(self):
        """Test de tipos distintos del corpus"""
        corpus = [parse_line("Lu bad"), parse_line("a dub !"), parse_line("a Lu")]
        lexicon = build_from_corpus(corpus)

        assert lexicon.entries == frozenset({"a", "bad", "dub", "Lu", "!"})
        assert lexicon.generation == 0

    def test_empty_corpus(self):
        """Test de léxico vacío sin coincidencias"""
        lexicon = build_from_corpus([])
        assert len(lexicon) == 0
        assert match_positions(lexicon, "abc") == [[], [], []]

    def test_long_word_bucket(self):
        """Test de bucket + para palabras de más de cinco caracteres"""
        lexicon = build_from_corpus([parse_line("abcdef")])
        assert "+" in lexicon.char_profile("a")

    def test_invalid_lexeme(self):
        """Test de lexema con espacio"""
        with pytest.raises(LexiconFormatError):
            Lexicon(["a b"])

    def test_length_bucket(self):
        """Test de buckets de longitud"""
        assert [length_bucket(n) for n in (1, 5, 6, 12)] == ["1", "5", "+", "+"]


class TestMatches:
    """Tests para las coincidencias por posición"""

    def test_position_u(self, lubba_lexicon):
        """Test de 'u' cubierto solo por Lu"""
        matches = match_positions(lubba_lexicon, "Lubbadub!")[1]
        assert {(m.lexeme, m.start) for m in matches} == {("Lu", 0)}
        assert {m.length_bucket for m in matches} == {"2"}

    def test_position_d(self, lubba_lexicon):
        """Test de 'd' cubierto por bad y dub"""
        matches = match_positions(lubba_lexicon, "Lubbadub!")[5]
        assert {(m.lexeme, m.start) for m in matches} == {("bad", 3), ("dub", 5)}

    def test_position_a(self, lubba_lexicon):
        """Test de 'a' cubierto por a y bad"""
        matches = match_positions(lubba_lexicon, "Lubbadub!")[4]
        assert {(m.lexeme, m.start) for m in matches} == {("a", 4), ("bad", 3)}
        assert {m.length_bucket for m in matches} == {"1", "3"}

    def test_positional_tags(self, lubba_lexicon):
        """Test de tags B23IES dentro de la coincidencia"""
        matches = match_positions(lubba_lexicon, "Lubbadub!")[5]
        assert {(m.lexeme, m.positional_tag) for m in matches} == {("bad", "E"), ("dub", "B")}

    def test_covering_matches_brute_force(self):
        """Test de soundness y completitud contra un recorrido exhaustivo"""
        rng = random.Random(3)
        alphabet = "abcあい東"
        for _ in range(50):
            words = {
                "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 4)))
                for _ in range(rng.randint(1, 40))
            }
            lexicon = Lexicon(words)
            sentence = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 64)))
            found = [
                {(m.lexeme, m.start) for m in matches}
                for matches in lexicon.match_positions(sentence)
            ]
            assert found == _brute_force_matches(lexicon, sentence)


class TestCodes:
    """Tests para los códigos LC y WC"""

    def test_lc_kanji_profile(self):
        """Test de K|1234+ sin palabras de cinco caracteres"""
        lexicon = Lexicon(["東", "東京", "東京都", "東京都庁", "東京都庁舎前"])
        assert lc_code(lexicon, "東") == "K|1234+"

    def test_lc_absent_character(self, lubba_lexicon):
        """Test del centinela de perfil vacío"""
        assert lc_code(lubba_lexicon, "あ") == "H|0"

    def test_lc_lubba(self, lubba_lexicon):
        """Test de 'u' en Lu y dub"""
        assert lc_code(lubba_lexicon, "u") == "L|23"

    def test_wc_with_char(self):
        """Test de WC de 東 ante 京都"""
        lexicon = Lexicon(["東", "東京", "東京都"])
        assert wc_code(lexicon, "東京都", 0, include_char=True) == "B-2|B-3|S|東"

    def test_wc_no_match(self, lubba_lexicon):
        """Test del centinela sin coincidencias"""
        assert wc_code(lubba_lexicon, "Lubbadub!", 2, include_char=False) == "NONE"

    def test_wc_lubba(self, lubba_lexicon):
        """Test de 'd' en la posición 5"""
        assert wc_code(lubba_lexicon, "Lubbadub!", 5, include_char=True) == "B-3|E-3|d"

    def test_profile_consistency(self):
        """Test de perfil LC igual al cálculo exhaustivo"""
        words = ["ab", "abc", "b", "bcdefgh", "c"]
        lexicon = Lexicon(words)
        for c in "abcdefgh":
            expected = {length_bucket(len(w)) for w in words if c in w}
            assert lexicon.char_profile(c) == expected


class TestSentenceInfo:
    """Tests para la información por carácter"""

    def test_lubba_rows(self, lubba_lexicon, lubba_sentence):
        """Test de todas las filas de la oración de ejemplo"""
        records = sentence_info(
            lubba_lexicon, lubba_sentence.chars, lubba_sentence.boundaries
        )
        rows = [
            tuple(r.as_row()[k] for k in ("C", "O", "L", "T", "R", "L_R", "S", "L_S"))
            for r in records
        ]
        assert rows == LUBBA_ROWS

    def test_subset_invariants(self, lubba_lexicon, lubba_sentence):
        """Test de S ⊆ R y L_S ⊆ L_R"""
        for record in sentence_info(lubba_lexicon, lubba_sentence.chars):
            assert record.s_items <= record.r_items
            assert record.s_lengths <= record.r_lengths
            assert record.offset is None and record.word_length is None

    def test_empty_lexicon(self):
        """Test de filas vacías sin léxico"""
        for record in Lexicon().sentence_info("abc"):
            assert not record.r_items and not record.s_items
            assert not record.r_lengths and not record.s_lengths


class TestExpand:
    """Tests para la expansión de léxico"""

    def test_add_lexeme(self, lubba_lexicon):
        """Test de Lubba visible tras la expansión"""
        expanded = expand(lubba_lexicon, add={"Lubba"})
        matches = expanded.match_positions("Lubbadub!")[0]

        assert ("Lubba", 0, "5", "B") in {
            (m.lexeme, m.start, m.length_bucket, m.positional_tag) for m in matches
        }
        assert expanded.generation == lubba_lexicon.generation + 1

    def test_empty_expansion(self, lubba_lexicon):
        """Test de expansión vacía con generación incrementada"""
        expanded = expand(lubba_lexicon)
        assert expanded.entries == lubba_lexicon.entries
        assert expanded.generation == 1

    def test_long_lexeme_bucket(self, lubba_lexicon):
        """Test de bucket + en todas las posiciones cubiertas"""
        expanded = expand(lubba_lexicon, add={"abcdefg"})
        positions = expanded.match_positions("abcdefg")
        assert all(
            any(m.lexeme == "abcdefg" and m.length_bucket == "+" for m in matches)
            for matches in positions
        )

    def test_ignored_removals(self, lubba_lexicon):
        """Test de baja inexistente informada en el resumen"""
        expanded = expand(lubba_lexicon, remove={"zzz", "dub"})

        assert expanded.expansion.ignored_removals == ["zzz"]
        assert expanded.expansion.removed == 1
        assert "dub" not in expanded

    def test_snapshot_isolation(self, lubba_lexicon):
        """Test de snapshot anterior intacto tras expandir"""
        before = [
            [(m.lexeme, m.start) for m in ms]
            for ms in lubba_lexicon.match_positions("Lubbadub!")
        ]
        expand(lubba_lexicon, add={"Lubba", "bb"}, remove={"a"})
        after = [
            [(m.lexeme, m.start) for m in ms]
            for ms in lubba_lexicon.match_positions("Lubbadub!")
        ]
        assert before == after

    def test_fingerprint_depends_on_entries(self, lubba_lexicon):
        """Test de huella estable y sensible al contenido"""
        same = Lexicon(reversed(sorted(lubba_lexicon.entries)))
        assert same.fingerprint == lubba_lexicon.fingerprint
        assert expand(lubba_lexicon, add={"x"}).fingerprint != lubba_lexicon.fingerprint


class TestLexiconStore:
    """Tests para el contenedor global de léxico"""

    def test_swap_returns_previous(self, lubba_lexicon):
        """Test de reemplazo atómico"""
        store = LexiconStore(lubba_lexicon)
        new = lubba_lexicon.expand(add={"Lubba"})

        previous = store.swap(new)

        assert previous is lubba_lexicon
        assert store.current() is new
        assert store.get_stats()["swaps"] == 1

    def test_expand_publishes(self, lubba_lexicon):
        """Test de expansión publicada en el contenedor"""
        store = LexiconStore(lubba_lexicon)
        store.expand(add={"Lubba"})

        assert "Lubba" in store.current()
        assert store.get_stats()["generation"] == 1

    def test_global_store(self, lubba_lexicon):
        """Test de instancia global reiniciable"""
        store = reset_lexicon_store(lubba_lexicon)
        assert get_lexicon_store() is store
        assert get_lexicon_store().current() is lubba_lexicon

    def test_concurrent_expansions(self):
        """Test de expansiones concurrentes sin pérdidas"""
        store = LexiconStore(Lexicon())
        words = [f"w{i}" for i in range(40)]

        def worker(word):
            store.expand(add={word})

        threads = [threading.Thread(target=worker, args=(w,)) for w in words]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert store.current().entries == frozenset(words)
        assert store.current().generation == len(words)
