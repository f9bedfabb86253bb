"""Normalized matrix norms and a batched cyclic Jacobi eigensolver.

All functions accept a single ``d x d`` matrix or a stack ``(..., d, d)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 30


@dataclass(frozen=True)
class NormKind:
    name: str
    p: float | None = None

    def __post_init__(self):
        if self.name not in ("frobenius", "operator", "schatten"):
            raise ValueError(f"unknown norm {self.name!r}")
        if self.name == "schatten":
            if self.p is None or not self.p >= 1:
                raise ValueError("schatten norm needs p >= 1")
        elif self.p is not None:
            raise ValueError(f"{self.name} norm takes no p")

    @classmethod
    def parse(cls, text: str) -> "NormKind":
        m = re.fullmatch(r"schatten:([0-9.eE+]+)", text)
        if m:
            return cls("schatten", float(m.group(1)))
        if text in ("frobenius", "frobenius_normalized", "f"):
            return FROBENIUS
        if text == "operator":
            return OPERATOR
        raise ValueError(f"unknown norm {text!r}")

    def __str__(self):
        if self.name == "schatten":
            return f"schatten:{self.p:g}"
        return self.name


FROBENIUS = NormKind("frobenius")
OPERATOR = NormKind("operator")


def schatten(p: float) -> NormKind:
    return NormKind("schatten", float(p))


def jacobi_eigvalsh(h, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigenvalues of Hermitian matrices by cyclic complex Jacobi rotations.

    Every matrix of the stack follows the same (p, q) sweep order; a rotation
    is skipped for matrices whose (p, q) entry is already below ``tol``
    relative to their Frobenius norm.
    """
    h = np.array(h, dtype=np.complex128)
    single = h.ndim == 2
    if single:
        h = h[None]
    shape = h.shape
    d = shape[-1]
    a = h.reshape(-1, d, d).copy()
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2)))
    scale = np.where(scale > 0, scale, 1.0)
    limit = tol * scale
    if d > 1:
        iu = np.triu_indices(d, 1)
        for _ in range(max_sweeps):
            off = np.abs(a[:, iu[0], iu[1]]).max(axis=1)
            if np.all(off <= limit):
                break
            for p in range(d - 1):
                for q in range(p + 1, d):
                    apq = a[:, p, q]
                    mag = np.abs(apq)
                    active = mag > limit
                    if not active.any():
                        continue
                    safe = np.where(active, mag, 1.0)
                    phase = np.where(active, apq / safe, 1.0)
                    app = a[:, p, p].real
                    aqq = a[:, q, q].real
                    theta = (aqq - app) / (2.0 * safe)
                    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta**2 + 1.0))
                    t = np.where(active, t, 0.0)
                    c = 1.0 / np.sqrt(t**2 + 1.0)
                    s = t * c
                    ph = np.conj(phase)
                    g_pp, g_pq, g_qp, g_qq = c, s, -s * ph, c * ph
                    col_p = a[:, :, p].copy()
                    col_q = a[:, :, q]
                    a[:, :, p] = col_p * g_pp[:, None] + col_q * g_qp[:, None]
                    a[:, :, q] = col_p * g_pq[:, None] + col_q * g_qq[:, None]
                    row_p = a[:, p, :].copy()
                    row_q = a[:, q, :]
                    a[:, p, :] = np.conj(g_pp)[:, None] * row_p + np.conj(g_qp)[:, None] * row_q
                    a[:, q, :] = np.conj(g_pq)[:, None] * row_p + np.conj(g_qq)[:, None] * row_q
                    a[:, p, q] = np.where(active, 0.0, a[:, p, q])
                    a[:, q, p] = np.where(active, 0.0, a[:, q, p])
    w = np.sort(np.real(np.diagonal(a, axis1=-2, axis2=-1)), axis=-1)
    w = w.reshape(shape[:-1])
    return w[0] if single else w


def _gram_eigenvalues(a):
    gram = np.conj(np.swapaxes(a, -1, -2)) @ a
    return np.clip(jacobi_eigvalsh(gram), 0.0, None)


def matrix_norm(a, kind: NormKind = FROBENIUS):
    """Normalized norm of a matrix (float) or of each matrix in a stack (array)."""
    a = np.asarray(a, dtype=np.complex128)
    d = a.shape[-1]
    if kind.name == "frobenius":
        out = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2)) / d)
    elif kind.name == "operator":
        out = np.sqrt(_gram_eigenvalues(a)[..., -1])
    else:
        lam = _gram_eigenvalues(a)
        out = (np.sum(lam ** (kind.p / 2.0), axis=-1) / d) ** (1.0 / kind.p)
    return float(out) if a.ndim == 2 else out


def unitarity_error(u) -> float:
    """``max ||U*U - 1||`` in operator norm over a matrix or a stack."""
    u = np.asarray(u, dtype=np.complex128)
    d = u.shape[-1]
    gram = np.conj(np.swapaxes(u, -1, -2)) @ u - np.eye(d)
    return float(np.max(matrix_norm(gram.reshape(-1, d, d), OPERATOR)))


def isometry_error(u) -> float:
    """``||U*U - 1||`` in operator norm for an ``m x d`` matrix."""
    u = np.asarray(u, dtype=np.complex128)
    gram = np.conj(u.T) @ u - np.eye(u.shape[1])
    return matrix_norm(gram, OPERATOR)
