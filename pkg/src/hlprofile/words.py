"""Words over the generator alphabets of C(n), C, K0 and K.

A word is stored as a tuple of runs ``(symbol, exponent)`` so that letters
such as ``z^(2^64)`` stay cheap, but every length reported is the expanded
letter count.  Adjacent runs are merged only when they have the same symbol
*and* the same sign, so the letter sequence is never freely reduced behind
the caller's back.

Grammar::

    word := { term } ;  term := gen [ "^" int ] ;
    gen  := "J" | "t" | "z" | "x" [ int ] ;  int := [ "-" ] digit { digit }

``x`` without an index means ``x0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AlphabetError(ValueError):
    pass


KINDS = ("J", "t", "z", "x")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind != "x" and self.index != 0:
            raise ValueError(f"generator {self.kind} takes no index")

    def __str__(self):
        return f"x{self.index}" if self.kind == "x" else self.kind


J = GeneratorSymbol("J")
T = GeneratorSymbol("t")
Z = GeneratorSymbol("z")
X0 = GeneratorSymbol("x", 0)


def x(i: int) -> GeneratorSymbol:
    return GeneratorSymbol("x", i)


@dataclass(frozen=True)
class Letter:
    symbol: GeneratorSymbol
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.sign)

    def __str__(self):
        return str(self.symbol) if self.sign == 1 else f"{self.symbol}^-1"


@dataclass(frozen=True)
class Alphabet:
    """Context tag: ``cn`` (with rank ``n``), ``c``, ``k0`` or ``k``."""

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in ("cn", "c", "k0", "k"):
            raise ValueError(f"unknown alphabet {self.kind!r}")
        if self.kind == "cn":
            if self.n is None or self.n < 1:
                raise ValueError("C_n alphabet needs a rank n >= 1")
        elif self.n is not None:
            raise ValueError(f"alphabet {self.kind} takes no rank")

    @classmethod
    def cn(cls, n: int) -> "Alphabet":
        return cls("cn", n)

    @classmethod
    def from_name(cls, name: str, n: int | None = None) -> "Alphabet":
        name = name.lower()
        return cls("cn", n) if name == "cn" else cls(name)

    @property
    def is_clifford(self) -> bool:
        return self.kind in ("cn", "c")

    def check(self, symbol: GeneratorSymbol) -> None:
        kind = symbol.kind
        if self.is_clifford:
            if kind not in ("J", "x"):
                raise AlphabetError(f"{symbol} is not a generator of {self}")
            if self.kind == "cn" and kind == "x" and not 1 <= symbol.index <= self.n:
                raise AlphabetError(f"{symbol} outside x1..x{self.n} in {self}")
        else:
            if kind == "t" and self.kind == "k0":
                raise AlphabetError(f"t is not a generator of {self}")
            if kind == "x" and symbol.index != 0:
                raise AlphabetError(f"only x0 is a generator of {self}, got {symbol}")

    def __str__(self):
        return {"cn": f"C_n({self.n})", "c": "C_inf", "k0": "K0", "k": "K"}[self.kind]


C_INF = Alphabet("c")
K0 = Alphabet("k0")
K = Alphabet("k")


def _canonical_runs(runs: Iterable[tuple[GeneratorSymbol, int]]) -> tuple:
    out: list[list] = []
    for sym, e in runs:
        if e == 0:
            continue
        if out and out[-1][0] == sym and (out[-1][1] > 0) == (e > 0):
            out[-1][1] += e
        else:
            out.append([sym, e])
    return tuple((s, e) for s, e in out)


class Word:
    """Immutable word in a free group, tagged with its alphabet context."""

    __slots__ = ("runs", "alphabet", "_length")

    def __init__(self, runs: Iterable[tuple[GeneratorSymbol, int]], alphabet: Alphabet,
                 *, check: bool = True):
        runs = _canonical_runs(runs)
        if check:
            for sym, _ in runs:
                alphabet.check(sym)
        self.runs = runs
        self.alphabet = alphabet
        self._length = sum(abs(e) for _, e in runs)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Word":
        return cls((), alphabet, check=False)

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], alphabet: Alphabet) -> "Word":
        return cls(((l.symbol, l.sign) for l in letters), alphabet)

    @classmethod
    def of(cls, symbol: GeneratorSymbol, alphabet: Alphabet, exponent: int = 1) -> "Word":
        return cls(((symbol, exponent),), alphabet)

    @property
    def length(self) -> int:
        return self._length

    def iter_letters(self) -> Iterator[Letter]:
        for sym, e in self.runs:
            letter = Letter(sym, 1 if e > 0 else -1)
            for _ in range(abs(e)):
                yield letter

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(self.iter_letters())

    def __bool__(self):
        return bool(self.runs)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.runs == other.runs

    def __hash__(self):
        return hash((self.alphabet, self.runs))

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def count(self, kind: str) -> int:
        return sum(abs(e) for s, e in self.runs if s.kind == kind)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Word({render(self)!r}, {self.alphabet})"


_TERM = re.compile(r"(J|t|z|x(-?\d+)?)(?:\^(-?\d+))?")
_CARET = re.compile(r"\^")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``text`` into a Word; exponents are kept as runs, never reduced."""
    runs = []
    pos = 0
    end = len(text)
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        m = _TERM.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group(3) is None and _CARET.match(text, m.end()):
            raise WordSyntaxError("malformed exponent", m.end())
        gen = m.group(1)
        if gen[0] == "x":
            sym = x(int(m.group(2)) if m.group(2) is not None else 0)
        else:
            sym = GeneratorSymbol(gen)
        try:
            alphabet.check(sym)
        except AlphabetError as exc:
            raise AlphabetError(f"{exc} (position {pos})") from None
        exponent = int(m.group(3)) if m.group(3) is not None else 1
        runs.append((sym, exponent))
        pos = m.end()
    return Word(runs, alphabet, check=False)


def render(w: Word) -> str:
    parts = []
    for sym, e in w.runs:
        parts.append(str(sym) if e == 1 else f"{sym}^{e}")
    return " ".join(parts)


def length(w: Word) -> int:
    return w.length


def free_reduce(w: Word) -> Word:
    stack: list[list] = []
    for sym, e in w.runs:
        if stack and stack[-1][0] == sym:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([sym, e])
    return Word(((s, e) for s, e in stack), w.alphabet, check=False)


def invert(w: Word) -> Word:
    return Word(((s, -e) for s, e in reversed(w.runs)), w.alphabet, check=False)


def concat(*words: Word) -> Word:
    if not words:
        raise ValueError("concat needs at least one word")
    alphabet = words[0].alphabet
    for w in words[1:]:
        if w.alphabet != alphabet:
            raise AlphabetError(f"cannot concatenate words over {alphabet} and {w.alphabet}")
    return Word((r for w in words for r in w.runs), alphabet, check=False)


def commutator(a: Word, b: Word) -> Word:
    """``[a, b] = a b a^-1 b^-1``."""
    return concat(a, b, invert(a), invert(b))


def power(w: Word, k: int) -> Word:
    if k < 0:
        w, k = invert(w), -k
    return Word((r for _ in range(k) for r in w.runs), w.alphabet, check=False)


def relabel(w: Word, alphabet: Alphabet) -> Word:
    """Reinterpret the letters of ``w`` in another alphabet context."""
    return Word(w.runs, alphabet)
