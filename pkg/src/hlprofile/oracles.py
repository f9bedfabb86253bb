"""Brute-force oracles and random generators for the property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .clifford import CNormalForm
from .kgroup import BrittonForm, K0NormalForm
from .presentations import DerivationStep, Presentation, k_presentation
from .words import (
    Alphabet,
    J,
    K,
    T,
    X0,
    Z,
    Word,
    concat,
    free_reduce,
    invert,
    parse_word,
    x,
)


def naive_c_multiply(g1: CNormalForm, g2: CNormalForm) -> CNormalForm:
    """Bubble sort of the concatenated index lists: one ``J`` per adjacent swap."""
    seq = list(g1.indices) + list(g2.indices)
    b = g1.b ^ g2.b
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(seq) - 1:
            if seq[i] == seq[i + 1]:
                del seq[i:i + 2]
                changed = True
            elif seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                b ^= 1
                changed = True
                i += 1
            else:
                i += 1
    return CNormalForm(b, tuple(seq))


@dataclass(frozen=True)
class RelatorSoupConfig:
    num_factors: int = 10
    max_conjugator_length: int = 8
    seed: int = 0
    index_window: int = 2

    def __post_init__(self):
        if min(self.num_factors, self.max_conjugator_length, self.index_window) < 0:
            raise ValueError("soup parameters must be non-negative")


@dataclass(frozen=True)
class Soup:
    word: Word
    derivation: tuple[DerivationStep, ...]
    presentation: Presentation


def random_conjugator(rng: random.Random, alphabet: Alphabet, max_length: int) -> Word:
    """Random word of length <= max_length; over K the t-exponent sums to zero."""
    if max_length <= 0:
        return Word.empty(alphabet)
    length = rng.randint(0, max_length)
    runs = []
    if alphabet.is_clifford:
        n = alphabet.n if alphabet.kind == "cn" else 6
        for _ in range(length):
            sym = J if rng.random() < 0.2 else x(rng.randint(1, n) if alphabet.kind == "cn"
                                                    else rng.randint(-n, n))
            runs.append((sym, rng.choice((1, -1))))
        return Word(runs, alphabet)
    pool = (J, X0, Z, Z, T) if alphabet == K else (J, X0, Z, Z)
    t_sum = 0
    for _ in range(max(0, length - 1)):
        sym = rng.choice(pool)
        e = rng.choice((1, -1))
        if sym is T:
            if abs(t_sum + e) > max_length // 4 + 1:
                e = -e
            t_sum += e
        runs.append((sym, e))
    if t_sum:
        runs.append((T, -t_sum))
    return Word(runs, alphabet)


def _soup_factors(rng, presentation, names, max_conjugator_length):
    while True:
        name = rng.choice(names)
        power = rng.choice((1, -1))
        u = random_conjugator(rng, presentation.alphabet, max_conjugator_length)
        r = presentation.relators[name]
        factor = concat(u, r if power == 1 else invert(r), invert(u))
        yield name, power, u, factor


def _assemble(factors, presentation) -> Soup:
    acc = Word.empty(presentation.alphabet)
    prefix_lengths = []
    for *_, f in factors:
        acc = free_reduce(concat(acc, f))
        prefix_lengths.append(acc.length)
    # undo factor i by appending u r^-p u^-1 to the reduced prefix ending at it
    steps = [DerivationStep(name, -power, prefix_lengths[i], u)
             for i, (name, power, u, _) in reversed(list(enumerate(factors)))]
    return Soup(acc, tuple(steps), presentation)


def relator_soup(cfg: RelatorSoupConfig, presentation: Presentation | None = None) -> Soup:
    """Free reduction of ``prod u_i r_i^(+-1) u_i^-1``; trivial by construction.

    The recorded derivation removes the factors right to left, one relation
    application each.
    """
    if presentation is None:
        presentation = k_presentation(cfg.index_window)
    rng = random.Random(cfg.seed)
    names = presentation.names()
    gen = _soup_factors(rng, presentation, names, cfg.max_conjugator_length)
    factors = [next(gen) for _ in range(cfg.num_factors)]
    return _assemble(factors, presentation)


def soup_of_length(target: int, seed: int, *, max_length: int | None = None,
                   max_conjugator_length: int = 8, index_window: int = 2,
                   presentation: Presentation | None = None) -> Word:
    """A freely reduced relator soup whose length first reaches ``target``.

    Factors are appended to a run stack that cancels as it goes, so the
    length check is against the reduced word.  With ``max_length`` set,
    factors that would overshoot it are skipped.
    """
    if presentation is None:
        presentation = k_presentation(index_window)
    rng = random.Random(seed)
    gen = _soup_factors(rng, presentation, presentation.names(), max_conjugator_length)
    stack: list[list] = []
    total = 0
    misses = 0
    while total < target and misses < 50:
        *_, factor = next(gen)
        if max_length is not None and total + factor.length > max_length:
            misses += 1
            continue
        for sym, e in factor.runs:
            if stack and stack[-1][0] == sym:
                total -= abs(stack[-1][1])
                stack[-1][1] += e
                if stack[-1][1]:
                    total += abs(stack[-1][1])
                else:
                    stack.pop()
            else:
                stack.append([sym, e])
                total += abs(e)
    return Word(((sym, e) for sym, e in stack), presentation.alphabet, check=False)


def random_k0_form(rng: random.Random, size: int, bits: int = 8,
                   nonidentity: bool = False) -> K0NormalForm:
    bound = 1 << bits
    count = rng.randint(0, size)
    indices = sorted(set(rng.randint(-bound, bound) for _ in range(count)))
    a = rng.randint(-bound, bound) if rng.random() < 0.7 else 0
    b = rng.randint(0, 1)
    form = K0NormalForm(a, b, tuple(indices))
    if nonidentity and form.is_identity:
        form = K0NormalForm(0, 1, ()) if rng.random() < 0.5 else K0NormalForm(rng.choice((-1, 1)))
    return form


def random_pinch_free_form(rng: random.Random, k: int, size: int, bits: int = 8) -> BrittonForm:
    signs = [rng.choice((1, -1)) for _ in range(k)]
    forms = [random_k0_form(rng, size, bits) for _ in range(k + 1)]
    for i in range(1, k):
        c1, c2, w = signs[i - 1], signs[i], forms[i]
        if c1 == 1 and c2 == -1 and w.in_z:
            forms[i] = K0NormalForm(w.a, 1, ()) if rng.random() < 0.5 else \
                K0NormalForm(w.a, 0, (rng.randint(-8, 8),))
        elif c1 == -1 and c2 == 1 and w.in_z2:
            forms[i] = K0NormalForm(w.a + 1, 0, ()) if rng.random() < 0.5 else \
                K0NormalForm(w.a, 0, (rng.randint(-8, 8),))
    return BrittonForm(tuple(forms), tuple(signs))


def nontrivial_witness(seed: int, size: int, *, soup_factors: int | None = None) -> Word:
    """A word that is non-trivial in K by normal-form uniqueness or Britton's lemma.

    Samples either a non-identity K0 normal form or a pinch-free Britton form
    with ``k >= 1``, renders it, and (by default for odd seeds) splices a
    relator soup in at a random position.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    rng = random.Random(seed)
    bits = rng.choice((4, 8, 20, 40, 70))
    if rng.random() < 0.4:
        w = random_k0_form(rng, size, bits, nonidentity=True).to_word(K)
    else:
        w = random_pinch_free_form(rng, rng.randint(1, size), max(1, size // 2), bits).to_word()
    if soup_factors is None:
        soup_factors = rng.randint(1, 6) if rng.random() < 0.5 else 0
    if soup_factors:
        soup = relator_soup(RelatorSoupConfig(soup_factors, 6, rng.getrandbits(32))).word
        letters = list(w.runs)
        cut = rng.randint(0, len(letters))
        w = concat(Word(letters[:cut], K, check=False), soup, Word(letters[cut:], K, check=False))
    return w


def write_corpus(path, words, header: dict) -> None:
    lines = [f"# {key}: {value}" for key, value in header.items()]
    lines.extend(str(w) for w in words)
    Path(path).write_text("\n".join(lines) + "\n")


def read_corpus(path, alphabet: Alphabet = K) -> list[Word]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            continue
        out.append(parse_word(line, alphabet))
    return out
