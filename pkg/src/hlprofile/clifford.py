"""Normal forms in the Clifford groups C(n) and C.

Every element is ``J^b x_{i1} ... x_{il}`` with ``i1 < ... < il``.  Products
are computed by merging the two index lists while tracking the parity of
what is left in the first list; each element that leaves the second list
has to travel past that many elements of the first one, each crossing
costing one ``J``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .words import Alphabet, C_INF, J, Word, x


@dataclass(frozen=True, order=True)
class CNormalForm:
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
        return self.b == 0 and not self.indices

    def __mul__(self, other: "CNormalForm") -> "CNormalForm":
        return c_multiply(self, other)[0]

    def to_word(self, alphabet: Alphabet = C_INF) -> Word:
        runs = [(J, 1)] if self.b else []
        runs.extend((x(i), 1) for i in self.indices)
        return Word(runs, alphabet)

    def to_json(self) -> dict:
        return {"b": self.b, "indices": [str(i) for i in self.indices]}

    @classmethod
    def from_json(cls, data: dict) -> "CNormalForm":
        return cls(int(data["b"]), tuple(int(i) for i in data["indices"]))

    def __str__(self):
        return str(self.to_word()) or "1"


IDENTITY = CNormalForm()
J_ELEMENT = CNormalForm(1, ())


@dataclass(frozen=True)
class ApplicationCount:
    """Relation applications used to rewrite a product into normal form."""

    square: int = 0
    j_central: int = 0
    anticommute: int = 0
    j_square: int = 0

    @property
    def total(self) -> int:
        return self.square + self.j_central + self.anticommute + self.j_square

    @property
    def by_relation(self) -> dict[str, int]:
        return {
            "square": self.square,
            "J-central": self.j_central,
            "anticommute": self.anticommute,
            "J-square": self.j_square,
        }

    def to_json(self) -> dict:
        return {"total": self.total, "by_relation": self.by_relation}


@dataclass(frozen=True)
class MergeResult:
    indices: tuple[int, ...]
    flip: int
    comparisons: int


def _merge(first, second, below=None):
    out = []
    i = j = 0
    n1, n2 = len(first), len(second)
    p = n1 & 1
    b = 0
    comparisons = 0
    while i < n1 and j < n2:
        u = first[i]
        v = second[j]
        comparisons += 1
        if u < v:
            out.append(u)
            i += 1
            p ^= 1
            if below is not None:
                below.append((j, False))
        elif v < u:
            out.append(v)
            j += 1
            b ^= p
        else:
            i += 1
            p ^= 1
            if below is not None:
                below.append((j, True))
            j += 1
            b ^= p
    if i < n1:
        out.extend(first[i:])
        if below is not None:
            below.extend((n2, False) for _ in range(n1 - i))
    elif j < n2:
        out.extend(second[j:])
    return out, b, comparisons


def merge_normal_forms(first, second) -> MergeResult:
    """Merge two strictly increasing index lists as a product ``x_first * x_second``."""
    out, b, comparisons = _merge(first, second)
    return MergeResult(tuple(out), b, comparisons)


def sort_with_parity(seq) -> MergeResult:
    """Bottom-up merge sort of a product ``x_{s1} x_{s2} ...`` into normal form.

    ``flip`` is the resulting power of ``J``; equal neighbours annihilate.
    """
    runs = [([v], 0) for v in seq]
    flip = 0
    comparisons = 0
    while len(runs) > 1:
        merged = []
        for k in range(0, len(runs) - 1, 2):
            (a, _), (b, _) = runs[k], runs[k + 1]
            out, f, c = _merge(a, b)
            flip ^= f
            comparisons += c
            merged.append((out, 0))
        if len(runs) % 2:
            merged.append(runs[-1])
        runs = merged
    return MergeResult(tuple(runs[0][0]) if runs else (), flip, comparisons)


def c_normal_form(w: Word) -> CNormalForm:
    """Normal form of a word over a Clifford alphabet (``x_i^-1 = x_i``, ``J^-1 = J``)."""
    if not w.alphabet.is_clifford:
        raise ValueError(f"c_normal_form expects a C or C_n word, got {w.alphabet}")
    b = 0
    seq = []
    for sym, e in w.runs:
        if sym.kind == "J":
            b ^= e & 1
        elif abs(e) & 1:
            seq.append(sym.index)
    res = sort_with_parity(seq)
    return CNormalForm(b ^ res.flip, res.indices)


def c_multiply(g1: CNormalForm, g2: CNormalForm) -> tuple[CNormalForm, ApplicationCount]:
    """Product ``g1 * g2`` by merging, plus the relation-application count.

    The count charges the rewriting that moves the letters of ``g1`` one at a
    time (right to left) into ``g2``: crossing the leading ``J`` (1), the
    ``k`` smaller indices (``k`` anticommutations), gathering the ``k`` new
    ``J``s to the front (``k`` applications, split between ``[x,J]=1`` and
    ``J^2=1``), and cancelling a repeated index (1).  A leading ``J`` of
    ``g1`` costs at most one ``J^2=1``.
    """
    below: list[tuple[int, bool]] = []
    out, flip, _ = _merge(g1.indices, g2.indices, below)
    product = CNormalForm(g1.b ^ g2.b ^ flip, tuple(out))

    square = j_central = anticommute = j_square = 0
    cur_b = g2.b
    for k, equal in reversed(below):
        j_central += cur_b
        anticommute += k
        j_central += k // 2
        j_square += k // 2
        if k & 1 and cur_b:
            j_square += 1
        square += equal
        cur_b ^= k & 1
    if g1.b and cur_b:
        j_square += 1
    return product, ApplicationCount(square, j_central, anticommute, j_square)


def count_bound(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n + 1) ** 2


MAX_ENUMERATION_RANK = 8


def element_index(g: CNormalForm) -> int:
    """Position of ``g`` in :func:`enumerate_group` order (any n containing it)."""
    mask = 0
    for i in g.indices:
        if i < 1:
            raise ValueError(f"{g} is not in any C(n)")
        mask |= 1 << (i - 1)
    return 2 * mask + g.b


@lru_cache(maxsize=None)
def enumerate_group(n: int) -> tuple[CNormalForm, ...]:
    """All ``2^(n+1)`` elements of C(n): index subsets in binary-counting order, ``b`` innermost."""
    if not 1 <= n <= MAX_ENUMERATION_RANK:
        raise ValueError(f"n must be in 1..{MAX_ENUMERATION_RANK}")
    out = []
    for mask in range(1 << n):
        idx = tuple(i + 1 for i in range(n) if mask >> i & 1)
        out.append(CNormalForm(0, idx))
        out.append(CNormalForm(1, idx))
    return tuple(out)


@lru_cache(maxsize=None)
def multiplication_table(n: int) -> np.ndarray:
    """``table[g, h]`` is the index of ``g*h``; read-only."""
    elements = enumerate_group(n)
    size = len(elements)
    table = np.empty((size, size), dtype=np.intp)
    for a, g in enumerate(elements):
        for b, h in enumerate(elements):
            table[a, b] = element_index(c_multiply(g, h)[0])
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def inverse_table(n: int) -> np.ndarray:
    table = multiplication_table(n)
    inv = np.argmax(table == 0, axis=1)
    inv.flags.writeable = False
    return inv
