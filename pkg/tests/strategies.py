from hypothesis import strategies as st

from hlprofile.clifford import CNormalForm
from hlprofile.kgroup import K0NormalForm
from hlprofile.words import J, K, K0, T, X0, Z, Alphabet, Word, x

exponents = st.integers(-5, 5).filter(bool)


def words_over(alphabet: Alphabet, max_runs: int = 20):
    if alphabet == K:
        symbols = st.sampled_from([J, T, Z, X0])
    elif alphabet == K0:
        symbols = st.sampled_from([J, Z, X0])
    elif alphabet.kind == "cn":
        symbols = st.one_of(st.just(J), st.integers(1, alphabet.n).map(x))
    else:
        symbols = st.one_of(st.just(J), st.integers(-50, 50).map(x))
    runs = st.lists(st.tuples(symbols, exponents), max_size=max_runs)
    return runs.map(lambda rs: Word(rs, alphabet))


k_words = words_over(K)

big = st.integers(-(2**256), 2**256)


def c_forms(max_index=None, size=8):
    idx = st.integers(1, max_index) if max_index else big
    return st.builds(lambda b, s: CNormalForm(b, tuple(sorted(s))),
                     st.integers(0, 1), st.sets(idx, max_size=size))


k0_forms = st.builds(lambda a, b, s: K0NormalForm(a, b, tuple(sorted(s))),
                     big, st.integers(0, 1), st.sets(big, max_size=8))
