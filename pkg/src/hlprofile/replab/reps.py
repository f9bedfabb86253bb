"""Unitary assignments of generators: exact Clifford irreps, perturbations, defects."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ..presentations import clifford_presentation
from ..words import Alphabet, GeneratorSymbol, J, Word, x
from .norms import FROBENIUS, NormKind, matrix_norm, unitarity_error

UNITARY_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
I2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class UnitaryMap:
    """Assignment of ``d x d`` unitaries to generator symbols of ``group``."""

    group: Alphabet
    images: dict

    def __post_init__(self):
        dims = {m.shape for m in self.images.values()}
        if len(dims) != 1:
            raise ValueError("all images must be square matrices of one dimension")
        (shape,) = dims
        if len(shape) != 2 or shape[0] != shape[1]:
            raise ValueError("images must be square")
        for sym, m in self.images.items():
            self.group.check(sym)
            if not np.all(np.isfinite(m)):
                raise ValueError(f"image of {sym} has non-finite entries")
        err = unitarity_error(np.stack([self.images[s] for s in self.symbols]))
        if err > UNITARY_TOL:
            raise ValueError(f"images are not unitary (error {err:.3g})")

    @property
    def d(self) -> int:
        return next(iter(self.images.values())).shape[0]

    @property
    def symbols(self) -> list[GeneratorSymbol]:
        return sorted(self.images)

    def __getitem__(self, sym: GeneratorSymbol) -> np.ndarray:
        return self.images[sym]

    def evaluate(self, w: Word) -> np.ndarray:
        return evaluate(self, w)


def _mpow(m: np.ndarray, e: int) -> np.ndarray:
    if e < 0:
        m, e = np.conj(m.T), -e
    result = np.eye(m.shape[0], dtype=np.complex128)
    while e:
        if e & 1:
            result = result @ m
        e >>= 1
        if e:
            m = m @ m
    return result


def evaluate(phi: UnitaryMap, w: Word) -> np.ndarray:
    """Image of a word under the free-group homomorphism determined by ``phi``."""
    out = np.eye(phi.d, dtype=np.complex128)
    for sym, e in w.runs:
        out = out @ _mpow(phi.images[sym], e)
    return out


def _kron(*ms):
    return reduce(np.kron, ms, np.eye(1, dtype=np.complex128))


def clifford_generators(n: int) -> list[np.ndarray]:
    """Images of ``x_1..x_n`` in the ``2^floor(n/2)``-dimensional irrep."""
    m = n // 2
    gens = []
    for j in range(1, m + 1):
        chain = [PAULI_Z] * (j - 1)
        rest = [I2] * (m - j)
        gens.append(_kron(*chain, PAULI_X, *rest))
        gens.append(_kron(*chain, PAULI_Y, *rest))
    if n % 2:
        gens.append(_kron(*([PAULI_Z] * m)))
    return gens


def exact_clifford_rep(n: int) -> UnitaryMap:
    if not 1 <= n <= 14:
        raise ValueError("n must be in 1..14")
    gens = clifford_generators(n)
    d = gens[0].shape[0]
    images = {J: -np.eye(d, dtype=np.complex128)}
    images.update({x(i + 1): g for i, g in enumerate(gens)})
    return UnitaryMap(Alphabet.cn(n), images)


def faithful_clifford_rep(n: int) -> UnitaryMap:
    """A faithful exact representation of C(n).

    For odd ``n`` the irrep sends ``x_1 ... x_n`` to a scalar, so it is not
    injective when ``n = 1 mod 4``; restricting the irrep of C(n+1) avoids
    that.
    """
    rank = n + (n % 2)
    gens = clifford_generators(rank)[:n]
    d = gens[0].shape[0]
    images = {J: -np.eye(d, dtype=np.complex128)}
    images.update({x(i + 1): g for i, g in enumerate(gens)})
    return UnitaryMap(Alphabet.cn(n), images)


def negated_clifford_rep(n: int) -> UnitaryMap:
    """The irrep with every ``x_i`` negated (inequivalent to the first for odd n)."""
    phi = exact_clifford_rep(n)
    images = {s: (m if s == J else -m) for s, m in phi.images.items()}
    return UnitaryMap(phi.group, images)


def sign_character(n: int, signs) -> UnitaryMap:
    """One-dimensional representation ``J -> 1``, ``x_i -> signs[i-1]``."""
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise ValueError("need n signs in {+1, -1}")
    images = {J: np.ones((1, 1), dtype=np.complex128)}
    images.update({x(i + 1): np.full((1, 1), s, dtype=np.complex128) for i, s in enumerate(signs)})
    return UnitaryMap(Alphabet.cn(n), images)


def direct_sum(*maps: UnitaryMap) -> UnitaryMap:
    group = maps[0].group
    if any(m.group != group for m in maps):
        raise ValueError("direct sum of maps over different groups")
    dims = [m.d for m in maps]
    total = sum(dims)
    images = {}
    for sym in maps[0].symbols:
        block = np.zeros((total, total), dtype=np.complex128)
        off = 0
        for m, d in zip(maps, dims):
            block[off:off + d, off:off + d] = m.images[sym]
            off += d
        images[sym] = block
    return UnitaryMap(group, images)


def random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    """Gaussian Hermitian matrix scaled to unit normalized Frobenius norm."""
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (a + np.conj(a.T)) / 2
    return h / matrix_norm(h)


def unitary_exp(h: np.ndarray, theta: float) -> np.ndarray:
    """``exp(i theta h)`` for Hermitian ``h``."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * theta * w)) @ np.conj(v.T)


def perturb(phi: UnitaryMap, magnitude: float, seed: int) -> UnitaryMap:
    """Right-multiply each image by ``exp(i magnitude H)``, H seeded Hermitian."""
    if magnitude < 0:
        raise ValueError("magnitude must be >= 0")
    if magnitude == 0:
        return phi
    rng = np.random.Generator(np.random.Philox(key=seed))
    images = {}
    for sym in phi.symbols:
        h = random_hermitian(rng, phi.d)
        images[sym] = phi.images[sym] @ unitary_exp(h, magnitude)
    return UnitaryMap(phi.group, images)


def relator_images(phi: UnitaryMap) -> dict[str, np.ndarray]:
    if phi.group.kind != "cn":
        raise ValueError("relation defects are defined for C(n) maps")
    pres = clifford_presentation(phi.group.n)
    return {name: evaluate(phi, r) for name, r in pres.relators.items()}


def relation_defect(phi: UnitaryMap, kind: NormKind = FROBENIUS) -> float:
    """``max_r ||phi(r) - 1||`` over the defining relators of C(n)."""
    imgs = relator_images(phi)
    stack = np.stack(list(imgs.values())) - np.eye(phi.d)
    return float(np.max(matrix_norm(stack, kind)))


def commutant_dimension(phi: UnitaryMap, tol: float = 1e-9) -> int:
    """Dimension of ``{X : X phi(s) = phi(s) X for all s}``."""
    d = phi.d
    eye = np.eye(d)
    blocks = [np.kron(eye, m) - np.kron(m.T, eye) for m in phi.images.values()]
    sv = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    return int(np.sum(sv <= tol * max(1.0, sv[0] if sv.size else 1.0)))
