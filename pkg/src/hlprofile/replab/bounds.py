"""Constant chain for the hyperlinear-profile lower bound, and defect-from-area bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..presentations import (
    DerivationStep,
    Presentation,
    clifford_presentation,
    k_presentation,
    verify_derivation,
)
from ..words import Word

FIT_CONSTANT = 42
GUARANTEE_SLACK = 1e-12


@dataclass(frozen=True)
class HlpParams:
    delta: float
    epsilon: float
    C4: float
    kappa: float
    iso_exponent: int = 26
    log_exponent: int = 52

    def __post_init__(self):
        for name in ("delta", "epsilon", "C4", "kappa", "iso_exponent", "log_exponent"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")


@dataclass(frozen=True)
class HlpBound:
    n: int
    d_min: int
    alpha: float
    C: float
    Cprime: float
    guarantee_log_margin: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d_min": str(self.d_min),
            "log2_d_min": self.d_min.bit_length() - 1,
            "alpha": self.alpha,
            "C": self.C,
            "Cprime": self.Cprime,
            "guarantee_log_margin": self.guarantee_log_margin,
        }


def _floor_root(ratio: float, exponent: float) -> int:
    n = math.floor(ratio**exponent)
    # guard against floating error at exact integer roots
    if (n + 1) ** (1 / exponent) <= ratio * (1 + 1e-15):
        n += 1
    elif n > 0 and n ** (1 / exponent) > ratio * (1 + 1e-15):
        n -= 1
    return n


def hlp_lower_bound(p: HlpParams) -> HlpBound:
    """Dimension lower bound forced by an ``epsilon``-representation keeping ``delta``.

    The guarantee ``d_min >= C' exp(C (delta/epsilon)^alpha)`` is checked in
    log space since ``d_min`` can be astronomically large.
    """
    alpha = 1 / (2 + p.kappa)
    ratio = p.delta / (2 * FIT_CONSTANT * p.C4 * p.epsilon)
    n = _floor_root(ratio, alpha)
    d_min = 1 << (n // 2 - 1) if n >= 2 else 1
    C = math.log(2) / (2 * (2 * FIT_CONSTANT * p.C4) ** alpha)
    Cprime = 2**-2.5
    rhs = math.log(Cprime) + C * (p.delta / p.epsilon) ** alpha
    lhs = (n // 2 - 1) * math.log(2) if n >= 2 else 0.0
    margin = lhs - rhs
    if margin < -GUARANTEE_SLACK * max(1.0, abs(rhs)):
        raise ArithmeticError(f"lower-bound guarantee failed (log margin {margin:.3g})")
    return HlpBound(n, d_min, alpha, C, Cprime, margin)


def isoperimetric_bound(m: int, C2: float, p: HlpParams) -> float:
    """``C2 m^iso_exponent epsilon``: defect of a trivial word of length m."""
    if m < 0 or C2 <= 0:
        raise ValueError("need m >= 0 and C2 > 0")
    return C2 * float(m) ** p.iso_exponent * p.epsilon


def defect_bound_from_derivation(w: Word, derivation, epsilon: float,
                                 presentation: Presentation | None = None) -> float:
    """``(number of relation applications) * epsilon`` after checking the derivation."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    steps = list(derivation)
    if any(not isinstance(s, DerivationStep) for s in steps):
        raise TypeError("derivation must be a sequence of DerivationStep")
    if presentation is None:
        presentation = (clifford_presentation(w.alphabet.n) if w.alphabet.kind == "cn"
                        else k_presentation())
    count = verify_derivation(presentation, w, steps)
    return count * epsilon
