"""Defining relators of C(n) and K, and verification of relator derivations.

A derivation step inserts a conjugate ``u r^(+-1) u^-1`` of a relator at a
letter position of the current (freely reduced) word and then freely
reduces.  That is exactly one relation application plus uncounted free
moves; replacing a subword ``b`` by ``a^-1 c^-1`` for a relator ``abc`` is
the special case ``u = a^-1`` inserted in front of ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import (
    Alphabet,
    K,
    J,
    T,
    X0,
    Z,
    Word,
    commutator,
    concat,
    free_reduce,
    invert,
    x,
)


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: dict[str, Word] = field(hash=False)

    def names(self) -> list[str]:
        return list(self.relators)


def clifford_presentation(n: int) -> Presentation:
    alpha = Alphabet.cn(n)
    j = Word.of(J, alpha)
    rels = {"J^2": concat(j, j)}
    gens = {i: Word.of(x(i), alpha) for i in range(1, n + 1)}
    for i, xi in gens.items():
        rels[f"x{i}^2"] = concat(xi, xi)
        rels[f"[x{i},J]"] = commutator(xi, j)
    for i, xi in gens.items():
        for k, xk in gens.items():
            if i != k:
                rels[f"[x{i},x{k}]J^-1"] = concat(commutator(xi, xk), invert(j))
    return Presentation(alpha, rels)


def conjugated_x(i: int) -> Word:
    """``z^i x0 z^-i``, the word for ``x_i`` in K."""
    return Word(((Z, i), (X0, 1), (Z, -i)), K)


def k_presentation(index_window: int = 2) -> Presentation:
    """Relators of K, with commutator relators for ``|i|, |j| <= index_window``."""
    j = Word.of(J, K)
    x0 = Word.of(X0, K)
    z = Word.of(Z, K)
    t = Word.of(T, K)
    rels = {
        "J^2": concat(j, j),
        "x0^2": concat(x0, x0),
        "[x0,J]": commutator(x0, j),
        "[z,J]": commutator(z, j),
        "tzt^-1z^-2": concat(t, z, invert(t), Word.of(Z, K, -2)),
    }
    window = range(-index_window, index_window + 1)
    for a in window:
        for b in window:
            if a != b:
                rels[f"[x{a},x{b}]J^-1"] = concat(
                    commutator(conjugated_x(a), conjugated_x(b)), invert(j))
    return Presentation(K, rels)


@dataclass(frozen=True)
class DerivationStep:
    relator: str
    power: int
    position: int
    conjugator: Word

    def to_json(self) -> dict:
        return {
            "relator": self.relator,
            "power": self.power,
            "position": self.position,
            "conjugator": str(self.conjugator),
        }


def _reduce_letters(letters):
    out = []
    for letter in letters:
        if out and out[-1].symbol == letter.symbol and out[-1].sign == -letter.sign:
            out.pop()
        else:
            out.append(letter)
    return out


def verify_derivation(presentation: Presentation, w: Word, steps) -> int:
    """Replay ``steps`` on ``w``; return the number of relation applications.

    Raises DerivationError if a step is malformed or the word does not end
    up empty.
    """
    if w.alphabet != presentation.alphabet:
        raise DerivationError(f"word over {w.alphabet}, presentation over {presentation.alphabet}")
    current = list(free_reduce(w).iter_letters())
    for number, step in enumerate(steps):
        rel = presentation.relators.get(step.relator)
        if rel is None:
            raise DerivationError(f"step {number}: unknown relator {step.relator!r}")
        if step.power not in (1, -1):
            raise DerivationError(f"step {number}: power must be +1 or -1")
        if not 0 <= step.position <= len(current):
            raise DerivationError(f"step {number}: position {step.position} outside word "
                                  f"of length {len(current)}")
        if step.conjugator.alphabet != presentation.alphabet:
            raise DerivationError(f"step {number}: conjugator over the wrong alphabet")
        r = rel if step.power == 1 else invert(rel)
        inserted = concat(step.conjugator, r, invert(step.conjugator))
        pos = step.position
        current = _reduce_letters(current[:pos] + list(inserted.iter_letters()) + current[pos:])
    if current:
        raise DerivationError(f"derivation leaves {len(current)} letters")
    return len(steps)
