"""Maps from all of C(n) to unitaries, and their multiplicativity defect."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..clifford import CNormalForm, element_index, enumerate_group, multiplication_table
from ..words import J, x
from .norms import FROBENIUS, NormKind, matrix_norm, unitarity_error
from .reps import UNITARY_TOL, UnitaryMap

MAX_DEFECT_RANK = 6
_PAIR_CHUNK = 8192


@dataclass(frozen=True, eq=False)
class HomTable:
    """``matrices[k]`` is the image of ``enumerate_group(n)[k]``."""

    n: int
    matrices: np.ndarray

    def __post_init__(self):
        size = 2 ** (self.n + 1)
        m = np.asarray(self.matrices, dtype=np.complex128)
        if m.ndim != 3 or m.shape[0] != size or m.shape[1] != m.shape[2]:
            raise ValueError(f"C({self.n}) table needs shape ({size}, d, d), got {m.shape}")
        err = unitarity_error(m)
        if err > UNITARY_TOL:
            raise ValueError(f"table entries are not unitary (error {err:.3g})")
        m.flags.writeable = False
        object.__setattr__(self, "matrices", m)

    @property
    def d(self) -> int:
        return self.matrices.shape[1]

    @property
    def elements(self) -> tuple[CNormalForm, ...]:
        return enumerate_group(self.n)

    @property
    def entries(self) -> dict[CNormalForm, np.ndarray]:
        return dict(zip(self.elements, self.matrices))

    def __getitem__(self, g: CNormalForm) -> np.ndarray:
        return self.matrices[element_index(g)]

    @property
    def j_image(self) -> np.ndarray:
        return self.matrices[1]


def lift_to_table(phi: UnitaryMap) -> HomTable:
    """``psi(g) = phi(J)^b phi(x_i1) ... phi(x_il)`` on the normal form of each g."""
    if phi.group.kind != "cn":
        raise ValueError("lift_to_table needs a C(n) map")
    n = phi.group.n
    eye = np.eye(phi.d, dtype=np.complex128)
    jm = phi.images.get(J, eye)
    mats = []
    for g in enumerate_group(n):
        m = jm.copy() if g.b else eye.copy()
        for i in g.indices:
            m = m @ phi.images[x(i)]
        mats.append(m)
    return HomTable(n, np.stack(mats))


def pair_defects(psi: HomTable, kind: NormKind = FROBENIUS) -> np.ndarray:
    """``out[g, h] = ||psi(gh) - psi(g) psi(h)||``."""
    if psi.n > MAX_DEFECT_RANK:
        raise ValueError(f"pair defects need n <= {MAX_DEFECT_RANK}")
    m = psi.matrices
    size, d = m.shape[0], m.shape[1]
    table = multiplication_table(psi.n)
    out = np.empty((size, size))
    rows_per_chunk = max(1, _PAIR_CHUNK // size)
    for start in range(0, size, rows_per_chunk):
        stop = min(size, start + rows_per_chunk)
        prod = m[start:stop, None] @ m[None, :]
        diff = m[table[start:stop]] - prod
        out[start:stop] = matrix_norm(diff.reshape(-1, d, d), kind).reshape(stop - start, size)
    return out


def hom_defect(psi: HomTable, kind: NormKind = FROBENIUS) -> float:
    return float(np.max(pair_defects(psi, kind)))


def matrix_to_json(m: np.ndarray) -> list:
    """Row-major ``[re, im]`` pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def matrix_from_json(data) -> np.ndarray:
    a = np.asarray(data, dtype=np.float64)
    if a.ndim != 3 or a.shape[2] != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix JSON must be a square array of [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def table_to_json(psi: HomTable) -> dict:
    return {
        "n": psi.n,
        "d": psi.d,
        "entries": [{"element": g.to_json(), "matrix": matrix_to_json(m)}
                    for g, m in zip(psi.elements, psi.matrices)],
    }


def table_from_json(data: dict) -> HomTable:
    n = int(data["n"])
    entries = {CNormalForm.from_json(e["element"]): matrix_from_json(e["matrix"])
               for e in data["entries"]}
    group = enumerate_group(n)
    missing = [g for g in group if g not in entries]
    if missing or len(entries) != len(group):
        raise ValueError(f"table must list every element of C({n}) exactly once")
    return HomTable(n, np.stack([entries[g] for g in group]))
