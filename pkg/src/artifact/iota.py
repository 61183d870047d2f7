"""Complexes equipped with a homotopy involution, and the standard family X_i."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels as K
from .complexes import (
    GradedComplex,
    MonomialMatrix,
    as_grading,
    dual,
    exponent_matrix,
    shift,
    tensor,
)
from .errors import NoHomotopy, NotAChainMap


def sandwich_system(a: GradedComplex, b: GradedComplex, degree, left: np.ndarray, right: np.ndarray):
    """Linear system for the unknown entries of a map ``X: a -> b`` in ``left X + X right``.

    Column ``j`` of the returned matrix is the row-major flattening of
    ``left E_j + E_j right`` for the elementary map ``E_j`` at
    ``positions[j] = (target, source)``.  Unknowns are every homogeneous
    position of the given degree, ordered by source index, then target index.
    """
    E = exponent_matrix(a.gradings, b.gradings, degree)
    xs, ys = np.nonzero((E >= 0).T)
    m = xs.size
    na = a.n
    A = np.zeros((b.n * na, m), dtype=np.uint8)
    if m:
        w, j = np.nonzero(left[:, ys])
        np.bitwise_xor.at(A, (w * na + xs[j], j), 1)
        j2, z = np.nonzero(right[xs, :])
        np.bitwise_xor.at(A, (ys[j2] * na + z, j2), 1)
    return A, list(zip(ys.tolist(), xs.tolist()))


def homotopy_system(a: GradedComplex, b: GradedComplex, degree=1):
    """System for ``d_b H + H d_a`` over all homogeneous ``H`` of the given degree."""
    return sandwich_system(a, b, degree, b.differential, a.differential)


def solve_homotopy(a: GradedComplex, b: GradedComplex, residual: np.ndarray) -> MonomialMatrix | None:
    """Lexicographically least ``H`` of degree +1 with ``d_b H + H d_a = residual``."""
    if not residual.any():
        return MonomialMatrix.zero(a.gradings, b.gradings, 1)
    A, pos = homotopy_system(a, b)
    sol = K.solve_lexmin(A, residual.reshape(-1).astype(np.uint8))
    if sol is None:
        return None
    bits = np.zeros((b.n, a.n), dtype=np.uint8)
    for j in np.flatnonzero(sol):
        y, x = pos[j]
        bits[y, x] = 1
    return MonomialMatrix(bits, a.gradings, b.gradings, 1)


@dataclass(frozen=True, eq=False)
class IotaComplex:
    complex: GradedComplex
    iota: np.ndarray

    def __post_init__(self):
        m = MonomialMatrix(self.iota, self.complex.gradings, self.complex.gradings, 0)
        object.__setattr__(self, "iota", m.bits)

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def names(self):
        return self.complex.names

    @property
    def gradings(self):
        return self.complex.gradings

    @property
    def iota_map(self) -> MonomialMatrix:
        return MonomialMatrix(self.iota, self.gradings, self.gradings, 0)

    def omega(self) -> MonomialMatrix:
        """``1 + iota``."""
        return MonomialMatrix(self.iota ^ np.eye(self.n, dtype=np.uint8), self.gradings, self.gradings, 0)

    def same_as(self, other: "IotaComplex") -> bool:
        return self.complex.same_as(other.complex) and np.array_equal(self.iota, other.iota)

    @cached_property
    def homotopy(self) -> MonomialMatrix:
        return validate(self)

    def to_json(self) -> dict:
        data = self.complex.to_json()
        data["iota"] = sorted(
            ({"from": self.names[x], "to": self.names[y], "upow": k} for x, y, k in self.iota_map.entries()),
            key=lambda e: (e["from"], e["to"]),
        )
        return data

    @classmethod
    def from_json(cls, data) -> "IotaComplex":
        if isinstance(data, str):
            data = json.loads(data)
        c = GradedComplex.from_json(data)
        m = MonomialMatrix.from_entries(
            c.gradings, c.gradings, 0,
            [(c.index(e["from"]), c.index(e["to"]), e["upow"]) for e in data.get("iota", [])],
        )
        return cls(c, m.bits)


def validate(ic: IotaComplex) -> MonomialMatrix:
    """Return the lexicographically least ``H`` with ``iota^2 + 1 = dH + Hd``.

    Also checks that the localised homology has rank one.
    """
    c = ic.complex
    if (K.matmul(c.differential, ic.iota) ^ K.matmul(ic.iota, c.differential)).any():
        raise NotAChainMap("iota does not commute with the differential")
    c.tower_index()
    resid = K.matmul(ic.iota, ic.iota) ^ np.eye(c.n, dtype=np.uint8)
    H = solve_homotopy(c, c, resid)
    if H is None:
        raise NoHomotopy("iota squared is not homotopic to the identity")
    return H


def make_X(i: int) -> IotaComplex:
    """Generators ``x, ix`` in grading 0 and ``alpha`` in grading ``1 - 2i``; ``d alpha = U^i (x + ix)``."""
    if i < 1:
        raise ValueError("i must be positive")
    c = GradedComplex.from_entries(
        [("x", 0), ("ix", 0), ("alpha", 1 - 2 * i)],
        [("alpha", "x", i), ("alpha", "ix", i)],
    )
    return IotaComplex(c, _swap_first_two())


def make_X_dual(i: int) -> IotaComplex:
    """Generators ``x*, ix*`` in grading 0 and ``alpha*`` in grading ``2i - 1``."""
    if i < 1:
        raise ValueError("i must be positive")
    c = GradedComplex.from_entries(
        [("x*", 0), ("ix*", 0), ("alpha*", 2 * i - 1)],
        [("x*", "alpha*", i), ("ix*", "alpha*", i)],
    )
    return IotaComplex(c, _swap_first_two())


def _swap_first_two() -> np.ndarray:
    m = np.zeros((3, 3), dtype=np.uint8)
    m[0, 1] = m[1, 0] = m[2, 2] = 1
    return m


def trivial_iota(grading=0) -> IotaComplex:
    return IotaComplex(GradedComplex.trivial(grading), np.ones((1, 1), dtype=np.uint8))


def iota_tensor(a: IotaComplex, b: IotaComplex) -> IotaComplex:
    return IotaComplex(tensor(a.complex, b.complex), np.kron(a.iota, b.iota).astype(np.uint8))


def iota_dual(a: IotaComplex) -> IotaComplex:
    return IotaComplex(dual(a.complex), a.iota.T)


def iota_shift(a: IotaComplex, delta) -> IotaComplex:
    return IotaComplex(shift(a.complex, as_grading(delta)), a.iota)


def omega_squared_null(ic: IotaComplex) -> bool:
    """Check ``omega^2`` is null-homotopic (it equals ``iota^2 + 1`` over F2)."""
    w = ic.omega().bits
    resid = K.matmul(w, w)
    return solve_homotopy(ic.complex, ic.complex, resid) is not None


def parse_named(text: str) -> IotaComplex:
    """Named constructors ``X(i)`` and ``Xdual(i)``."""
    t = text.replace(" ", "")
    for prefix, ctor in (("Xdual(", make_X_dual), ("X(", make_X)):
        if t.startswith(prefix) and t.endswith(")"):
            return ctor(int(t[len(prefix):-1]))
    raise ValueError(f"unknown iota-complex constructor {text!r}")


__all__ = [
    "IotaComplex",
    "validate",
    "make_X",
    "make_X_dual",
    "trivial_iota",
    "iota_tensor",
    "iota_dual",
    "iota_shift",
    "omega_squared_null",
    "solve_homotopy",
    "homotopy_system",
    "sandwich_system",
    "parse_named",
]
