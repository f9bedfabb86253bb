import random

import pytest

from hlprofile.clifford import IDENTITY, CNormalForm, c_multiply
from hlprofile.kgroup import K0NormalForm, is_trivial
from hlprofile.oracles import (
    RelatorSoupConfig,
    naive_c_multiply,
    nontrivial_witness,
    random_conjugator,
    random_pinch_free_form,
    read_corpus,
    relator_soup,
    soup_of_length,
    write_corpus,
)
from hlprofile.presentations import Presentation, clifford_presentation, k_presentation, verify_derivation
from hlprofile.words import Alphabet, K, Word, free_reduce, invert, parse_word


def test_naive_examples():
    g = CNormalForm(1, (2, 5))
    assert naive_c_multiply(IDENTITY, g) == g
    assert naive_c_multiply(CNormalForm(0, (1, 3)), CNormalForm(0, (2, 3))) == CNormalForm(1, (1, 2))


def test_single_factor_soup_is_the_relator():
    pres = k_presentation()
    cfg = RelatorSoupConfig(num_factors=1, max_conjugator_length=0, seed=0)
    soup = relator_soup(cfg, pres)
    candidates = [free_reduce(w) for r in pres.relators.values() for w in (r, invert(r))]
    assert soup.word in candidates
    only = Presentation(K, {"tzt^-1z^-2": pres.relators["tzt^-1z^-2"]})
    words = {relator_soup(RelatorSoupConfig(1, 0, s), only).word for s in range(10)}
    assert parse_word("t z t^-1 z^-2", K) in words
    assert words <= {parse_word("t z t^-1 z^-2", K), parse_word("z^2 t z^-1 t^-1", K)}


def test_empty_soup():
    soup = relator_soup(RelatorSoupConfig(num_factors=0))
    assert soup.word.length == 0 and soup.derivation == ()


def test_config_validation():
    with pytest.raises(ValueError):
        RelatorSoupConfig(num_factors=-1)


@pytest.mark.parametrize("seed", range(40))
def test_soups_are_trivial_and_derivable(seed):
    soup = relator_soup(RelatorSoupConfig(seed % 9 + 1, 8, seed))
    assert is_trivial(soup.word)[0]
    assert verify_derivation(soup.presentation, soup.word, soup.derivation) == len(soup.derivation)


def test_clifford_soups():
    pres = clifford_presentation(4)
    for seed in range(20):
        soup = relator_soup(RelatorSoupConfig(6, 5, seed), pres)
        assert soup.word.alphabet == Alphabet.cn(4)
        assert is_trivial(soup.word)[0]
        verify_derivation(pres, soup.word, soup.derivation)


def test_conjugators_balanced_in_t():
    rng = random.Random(0)
    for _ in range(200):
        u = random_conjugator(rng, K, 10)
        assert sum(e for s, e in u.runs if s.kind == "t") == 0


def test_soup_of_length_respects_cap():
    for seed in range(10):
        w = soup_of_length(500, seed, max_length=600)
        assert w.length <= 600
        assert is_trivial(w)[0]


def test_witness_examples():
    assert not is_trivial(K0NormalForm(0, 1, ()).to_word(K))[0]
    assert str(K0NormalForm(0, 1, ()).to_word(K)) == "J"
    assert not is_trivial(parse_word("t x0 t^-1", K))[0]
    with pytest.raises(ValueError):
        nontrivial_witness(0, 0)


def test_witness_deterministic():
    assert nontrivial_witness(17, 5) == nontrivial_witness(17, 5)


def test_pinch_free_forms():
    rng = random.Random(3)
    for _ in range(200):
        f = random_pinch_free_form(rng, rng.randint(1, 6), 3)
        assert f.is_pinch_free()
        assert not is_trivial(f.to_word())[0]


def test_corpus_round_trip(tmp_path):
    words = [nontrivial_witness(s, 4) for s in range(5)] + [Word.empty(K)]
    path = tmp_path / "corpus.txt"
    write_corpus(path, words[:-1], {"seed": 1, "kind": "witness"})
    text = path.read_text().splitlines()
    assert text[0] == "# seed: 1" and text[1] == "# kind: witness"
    assert read_corpus(path) == words[:-1]


def test_naive_matches_fast_on_large_random_pairs():
    rng = random.Random(8)
    for _ in range(2000):
        g = CNormalForm(rng.randint(0, 1), tuple(sorted(rng.sample(range(-40, 40), rng.randint(0, 10)))))
        h = CNormalForm(rng.randint(0, 1), tuple(sorted(rng.sample(range(-40, 40), rng.randint(0, 10)))))
        assert naive_c_multiply(g, h) == c_multiply(g, h)[0]
