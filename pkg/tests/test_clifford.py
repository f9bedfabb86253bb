import functools
import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hlprofile.clifford import (
    IDENTITY,
    J_ELEMENT,
    CNormalForm,
    c_multiply,
    c_normal_form,
    count_bound,
    enumerate_group,
    merge_normal_forms,
    multiplication_table,
    sort_with_parity,
)
from hlprofile.oracles import naive_c_multiply
from hlprofile.replab import exact_clifford_rep, faithful_clifford_rep, lift_to_table
from hlprofile.words import C_INF, Alphabet, Word, parse_word

from strategies import c_forms, words_over


def nf(b, *idx):
    return CNormalForm(b, tuple(idx))


def test_normal_form_examples():
    assert c_normal_form(parse_word("x1 x3 x2 x3", C_INF)) == nf(1, 1, 2)
    assert c_normal_form(parse_word("J J", C_INF)) == IDENTITY
    assert c_normal_form(parse_word("x0", C_INF)) == nf(0, 0)


def test_inverse_letters_resolve_to_involutions():
    assert c_normal_form(parse_word("x2^-1 J^-1 x2^3", C_INF)) == J_ELEMENT


def test_normal_form_matches_matrices():
    # both sides of x1 x3 x2 x3 = J x1 x2 under the irrep of C(3)
    phi = exact_clifford_rep(3)
    lhs = phi.evaluate(parse_word("x1 x3 x2 x3", Alphabet.cn(3)))
    rhs = phi.evaluate(parse_word("J x1 x2", Alphabet.cn(3)))
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_multiply_examples():
    prod, count = c_multiply(nf(0, 1, 3), nf(0, 2, 3))
    assert prod == nf(1, 1, 2)
    assert count.total <= count_bound(3)
    g = nf(1, 2, 5)
    prod, count = c_multiply(IDENTITY, g)
    assert prod == g and count.total == 0
    for j in (-3, 0, 7, 2**70):
        assert c_multiply(nf(0, j), nf(0, j))[0] == IDENTITY


def test_count_bound():
    assert count_bound(2) == 9
    assert count_bound(1) == 4
    with pytest.raises(ValueError):
        count_bound(0)


def test_count_bound_exhaustive_c4():
    group = enumerate_group(4)
    assert max(c_multiply(g, h)[1].total for g in group for h in group) <= 25


@pytest.mark.parametrize("n", range(1, 7))
def test_count_bound_exhaustive(n):
    group = enumerate_group(n)
    worst = max(c_multiply(g, h)[1].total for g in group for h in group)
    assert worst <= count_bound(n)


def test_count_by_relation_sums_to_total():
    _, count = c_multiply(nf(1, 1, 2, 4), nf(1, 2, 3))
    assert sum(count.by_relation.values()) == count.total
    assert set(count.by_relation) == {"square", "J-central", "anticommute", "J-square"}


def test_enumerate_group():
    assert enumerate_group(1) == (IDENTITY, J_ELEMENT, nf(0, 1), nf(1, 1))
    assert len(enumerate_group(2)) == 8
    assert enumerate_group(5)[0] == IDENTITY
    assert len(set(enumerate_group(8))) == 512
    for bad in (0, 9):
        with pytest.raises(ValueError):
            enumerate_group(bad)


def test_invalid_normal_forms():
    with pytest.raises(ValueError):
        CNormalForm(0, (2, 1))
    with pytest.raises(ValueError):
        CNormalForm(2, ())


@pytest.mark.parametrize("n", range(1, 6))
def test_naive_oracle_exhaustive(n):
    group = enumerate_group(n)
    for g, h in itertools.product(group, repeat=2):
        assert c_multiply(g, h)[0] == naive_c_multiply(g, h)


def test_naive_oracle_big_indices():
    rng = random.Random(5)
    for _ in range(10_000):
        pool = [rng.randint(-2**80, 2**80) for _ in range(6)]
        g = nf(rng.randint(0, 1), *sorted(set(rng.sample(pool, rng.randint(0, 6)))))
        h = nf(rng.randint(0, 1), *sorted(set(rng.sample(pool, rng.randint(0, 6)))))
        assert c_multiply(g, h)[0] == naive_c_multiply(g, h)


def test_associativity_random_triples():
    rng = random.Random(1)
    for n in range(1, 6):
        group = enumerate_group(n)
        for _ in range(300):
            a, b, c = (rng.choice(group) for _ in range(3))
            assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("n", range(1, 7))
def test_j_central_and_anticommutation(n):
    for g in enumerate_group(n):
        assert J_ELEMENT * g == g * J_ELEMENT
    assert J_ELEMENT * J_ELEMENT == IDENTITY
    for i, j in itertools.permutations(range(1, n + 1), 2):
        xi, xj = nf(0, i), nf(0, j)
        assert xi * xj * xi * xj == J_ELEMENT


@given(st.lists(st.integers(-30, 30), max_size=40))
def test_sort_with_parity_counts_inversions(seq):
    res = sort_with_parity(seq)
    ref = functools.reduce(naive_c_multiply, [nf(0, i) for i in seq], IDENTITY)
    assert (res.flip, res.indices) == (ref.b, ref.indices)


@given(c_forms(), c_forms())
def test_merge_comparisons_linear(g, h):
    res = merge_normal_forms(g.indices, h.indices)
    assert res.comparisons <= len(g.indices) + len(h.indices)
    assert CNormalForm(g.b ^ h.b ^ res.flip, res.indices) == naive_c_multiply(g, h)


@given(words_over(C_INF, 30))
def test_normal_form_is_homomorphic(w):
    half = len(w.runs) // 2
    left = Word(w.runs[:half], C_INF)
    right = Word(w.runs[half:], C_INF)
    assert c_normal_form(w) == c_normal_form(left) * c_normal_form(right)


@given(c_forms())
def test_json_round_trip(g):
    assert CNormalForm.from_json(g.to_json()) == g
    assert all(isinstance(i, str) for i in g.to_json()["indices"])
    assert c_normal_form(g.to_word()) == g


@pytest.mark.parametrize("n", range(1, 7))
def test_matrix_oracle(n):
    psi = lift_to_table(faithful_clifford_rep(n))
    m = psi.matrices
    table = multiplication_table(n)
    assert np.abs(m[table] - m[:, None] @ m[None, :]).max() <= 1e-9
    flat = m.reshape(len(m), -1)
    dist = np.linalg.norm(flat[:, None] - flat[None, :], axis=-1)
    np.fill_diagonal(dist, np.inf)
    assert dist.min() > 0.5
