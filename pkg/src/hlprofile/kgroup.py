"""Word problem in K0 = Z x| C and in the HNN extension K = <K0, t : t z t^-1 = z^2>.

Pipeline: split the word at its ``t`` letters, put every ``t``-free block in
K0 normal form ``z^a J^b x_{i1} ... x_{il}``, then remove pinches
``t z^a t^-1 -> z^(2a)`` and ``t^-1 z^(2a) t -> z^a`` until none is left.
By Britton's lemma the word is trivial iff what remains is a single
identity segment.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .clifford import _merge, sort_with_parity
from .words import (
    Alphabet,
    AlphabetError,
    J,
    K,
    K0,
    T,
    X0,
    Z,
    Word,
    concat,
    free_reduce,
    invert,
)

PLAIN_POWER_LIMIT = 2**16


def bit_length(v: int) -> int:
    """Signed bit length: magnitude bits plus a sign bit (``0`` takes one bit)."""
    return abs(v).bit_length() + 1 if v else 1


@dataclass(frozen=True)
class K0NormalForm:
    a: int = 0
    b: int = 0
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.b not in (0, 1):
            raise ValueError("b must be 0 or 1")
        idx = self.indices
        if not isinstance(idx, tuple):
            object.__setattr__(self, "indices", idx := tuple(idx))
        for u, v in zip(idx, idx[1:]):
            if not u < v:
                raise ValueError(f"indices must be strictly increasing: {idx}")

    @property
    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and not self.indices

    @property
    def in_z(self) -> bool:
        return self.b == 0 and not self.indices

    @property
    def in_z2(self) -> bool:
        return self.in_z and self.a % 2 == 0

    def max_bits(self) -> int:
        bits = bit_length(self.a)
        for i in self.indices:
            bl = bit_length(i)
            if bl > bits:
                bits = bl
        return bits

    def __mul__(self, other: "K0NormalForm") -> "K0NormalForm":
        return k0_multiply(self, other)

    def to_word(self, alphabet: Alphabet = K) -> Word:
        """Render as ``z^a J^b (z^i x0 z^-i) ...``.

        Over K, indices beyond ``2^16`` in absolute value are conjugated by
        ``build_z`` towers instead of plain ``z`` powers.
        """
        parts = [Word((( Z, self.a), (J, self.b)), alphabet, check=False)]
        for i in self.indices:
            if alphabet == K and abs(i) > PLAIN_POWER_LIMIT:
                zi = build_z(abs(i))
                if i < 0:
                    zi = invert(zi)
                parts.extend((zi, Word(((X0, 1),), K, check=False), invert(zi)))
            else:
                parts.append(Word(((Z, i), (X0, 1), (Z, -i)), alphabet, check=False))
        return concat(*parts)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": self.b, "indices": [str(i) for i in self.indices]}

    @classmethod
    def from_json(cls, data: dict) -> "K0NormalForm":
        return cls(int(data["a"]), int(data["b"]), tuple(int(i) for i in data["indices"]))


K0_IDENTITY = K0NormalForm()


def _k0_mul(w1: K0NormalForm, w2: K0NormalForm) -> tuple[K0NormalForm, int]:
    shift = w2.a
    first = [i - shift for i in w1.indices] if shift else w1.indices
    out, flip, comparisons = _merge(first, w2.indices)
    return K0NormalForm(w1.a + w2.a, w1.b ^ w2.b ^ flip, tuple(out)), comparisons


def k0_multiply(w1: K0NormalForm, w2: K0NormalForm) -> K0NormalForm:
    return _k0_mul(w1, w2)[0]


def _k0_from_runs(runs) -> tuple[K0NormalForm, int]:
    b = 0
    acc = 0
    blocks = []  # z-exponents a_0, ..., a_m between the x0 letters
    for sym, e in runs:
        kind = sym.kind
        if kind == "z":
            acc += e
        elif kind == "J":
            b ^= e & 1
        elif kind == "x":
            if abs(e) & 1:
                blocks.append(acc)
                acc = 0
        else:
            raise AlphabetError("k0_normal_form got a t letter")
    blocks.append(acc)
    # w = z^{k_0} J^b x_{-k_1} ... x_{-k_m} with k_j the suffix sums of a
    total = 0
    suffix = [0] * len(blocks)
    for j in range(len(blocks) - 1, -1, -1):
        total += blocks[j]
        suffix[j] = total
    res = sort_with_parity([-k for k in suffix[1:]])
    return K0NormalForm(suffix[0], b ^ res.flip, res.indices), res.comparisons


def k0_normal_form(w: Word) -> K0NormalForm:
    if w.alphabet not in (K0, K):
        raise AlphabetError(f"k0_normal_form expects a K0 or K word, got {w.alphabet}")
    return _k0_from_runs(w.runs)[0]


@dataclass(frozen=True)
class BrittonForm:
    """``w0' t^c1 w1' ... t^ck wk'`` with K0 normal forms ``wi'``."""

    forms: tuple[K0NormalForm, ...]
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.forms) != len(self.signs) + 1:
            raise ValueError("a Britton form needs one more segment than t-letters")
        if any(c not in (1, -1) for c in self.signs):
            raise ValueError("t exponents must be +1 or -1")

    @property
    def k(self) -> int:
        return len(self.signs)

    def pinches(self) -> list[int]:
        """Positions ``i`` (1-based, as in ``w_i'``) where a pinch sits."""
        out = []
        for i in range(1, self.k):
            c1, c2, w = self.signs[i - 1], self.signs[i], self.forms[i]
            if (c1 == 1 and c2 == -1 and w.in_z) or (c1 == -1 and c2 == 1 and w.in_z2):
                out.append(i)
        return out

    def is_pinch_free(self) -> bool:
        return not self.pinches()

    @property
    def is_identity(self) -> bool:
        return self.k == 0 and self.forms[0].is_identity

    def max_bits(self) -> int:
        return max(f.max_bits() for f in self.forms)

    def to_word(self) -> Word:
        parts = [self.forms[0].to_word(K)]
        for c, f in zip(self.signs, self.forms[1:]):
            parts.append(Word(((T, c),), K, check=False))
            parts.append(f.to_word(K))
        return concat(*parts)

    def to_json(self) -> dict:
        segments = [self.forms[0].to_json()]
        for c, f in zip(self.signs, self.forms[1:]):
            segments.append({"t": c})
            segments.append(f.to_json())
        return {"segments": segments}

    @classmethod
    def from_json(cls, data: dict) -> "BrittonForm":
        segs = data["segments"]
        forms = [K0NormalForm.from_json(s) for s in segs[0::2]]
        signs = [int(s["t"]) for s in segs[1::2]]
        return cls(tuple(forms), tuple(signs))


@dataclass
class ReductionTrace:
    pinch_steps: int = 0
    max_bit_length_history: list[int] = field(default_factory=list)
    comparisons: int = 0
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {
            "pinch_steps": self.pinch_steps,
            "max_bits": list(self.max_bit_length_history),
            "comparisons": self.comparisons,
            "micros": int(round(self.wall_time * 1e6)),
        }


def _split(w: Word) -> tuple[BrittonForm, int]:
    forms = []
    signs = []
    comparisons = 0
    block = []
    for sym, e in w.runs:
        if sym.kind != "t":
            block.append((sym, e))
            continue
        c = 1 if e > 0 else -1
        for _ in range(abs(e)):
            nf, cmp = _k0_from_runs(block)
            forms.append(nf)
            comparisons += cmp
            signs.append(c)
            block = []
    nf, cmp = _k0_from_runs(block)
    forms.append(nf)
    return BrittonForm(tuple(forms), tuple(signs)), comparisons + cmp


def britton_split(w: Word) -> BrittonForm:
    if w.alphabet not in (K0, K):
        raise AlphabetError(f"britton_split expects a K0 or K word, got {w.alphabet}")
    return _split(w)[0]


def britton_reduce(f: BrittonForm) -> tuple[BrittonForm, ReductionTrace]:
    """Remove pinches left to right until the form is pinch-free.

    The segment list is scanned with a stack, so a pinch is resolved as soon
    as its closing ``t`` letter arrives and the fused segment is rechecked
    against the next letter.  ``max_bit_length_history`` holds the running
    maximum bit length, one entry per pinch step after the initial one.
    """
    start = time.perf_counter()
    trace = ReductionTrace()
    running = f.max_bits()
    trace.max_bit_length_history.append(running)
    forms = [f.forms[0]]
    signs: list[int] = []
    for c, w in zip(f.signs, f.forms[1:]):
        if signs:
            top, cp = forms[-1], signs[-1]
            replacement = None
            if cp == 1 and c == -1 and top.in_z:
                replacement = 2 * top.a
            elif cp == -1 and c == 1 and top.in_z2:
                replacement = top.a // 2
            if replacement is not None:
                forms.pop()
                signs.pop()
                left = forms.pop()
                left = K0NormalForm(left.a + replacement, left.b,
                                    tuple(i - replacement for i in left.indices)
                                    if replacement else left.indices)
                fused, cmp = _k0_mul(left, w)
                forms.append(fused)
                trace.comparisons += cmp
                trace.pinch_steps += 1
                running = max(running, fused.max_bits())
                trace.max_bit_length_history.append(running)
                continue
        signs.append(c)
        forms.append(w)
    trace.wall_time = time.perf_counter() - start
    return BrittonForm(tuple(forms), tuple(signs)), trace


def is_trivial(w: Word) -> tuple[bool, ReductionTrace]:
    """Decide whether ``w`` is the identity (of C(n)/C for Clifford alphabets)."""
    start = time.perf_counter()
    if w.alphabet.is_clifford:
        from .clifford import c_normal_form

        trivial = c_normal_form(w).is_identity
        trace = ReductionTrace(max_bit_length_history=[0])
        trace.wall_time = time.perf_counter() - start
        return trivial, trace
    form, split_comparisons = _split(free_reduce(w))
    reduced, trace = britton_reduce(form)
    trace.comparisons += split_comparisons
    trace.wall_time = time.perf_counter() - start
    return reduced.is_identity, trace


def normal_form(w: Word):
    """Canonical object for ``w``: CNormalForm, K0NormalForm or reduced BrittonForm."""
    if w.alphabet.is_clifford:
        from .clifford import c_normal_form

        return c_normal_form(w)
    if w.alphabet == K0:
        return k0_normal_form(w)
    return britton_reduce(britton_split(free_reduce(w)))[0]


def equal(w1: Word, w2: Word) -> bool:
    return is_trivial(concat(w1, invert(w2)))[0]


def build_z(k: int) -> Word:
    """``prod_i t^i z t^-i`` over the set bits ``i`` of ``k``; equals ``z^k`` in K."""
    if k < 0:
        raise ValueError("build_z needs k >= 0")
    runs = []
    i = 0
    while k:
        if k & 1:
            runs.extend(((T, i), (Z, 1), (T, -i)))
        k >>= 1
        i += 1
    return Word(runs, K, check=False)


def build_x(k: int) -> Word:
    """``z(k) x0 z(k)^-1``; equals ``x_k`` in K."""
    zk = build_z(k)
    return concat(zk, Word(((X0, 1),), K, check=False), invert(zk))
