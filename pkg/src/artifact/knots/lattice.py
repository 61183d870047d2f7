"""Generator-level models of the full knot Floer complex and the quotient complexes A_s, B_s.

A model lists generators ``x`` with Maslov grading ``M(x)`` and Alexander
grading ``A(x)`` of the lattice point ``[x, 0, A(x)]``, together with an arrow
mask ``D[y, x] = 1`` when ``[y, -di, A(x) - dj]`` appears in the differential
of ``[x, 0, A(x)]``.  The filtration shifts ``di`` and ``dj`` are implied by
the gradings, so the mask alone determines every complex built here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import _kernels as K
from ..complexes import GradedComplex, MonomialMatrix, d_invariant, tensor_names
from ..errors import GradingError, NotAChainMap, UnsupportedIota
from ..iota import IotaComplex
from .staircase import Staircase

#: Default cap on the number of generators a tensor product may produce.
MODEL_GUARD = 4000


@dataclass(frozen=True, eq=False)
class LatticeCFK:
    names: tuple
    maslov: np.ndarray
    alexander: np.ndarray
    D: np.ndarray
    iota: np.ndarray | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "maslov", np.asarray(self.maslov, dtype=np.int64))
        object.__setattr__(self, "alexander", np.asarray(self.alexander, dtype=np.int64))
        object.__setattr__(self, "D", np.asarray(self.D, dtype=np.uint8) & 1)
        if self.iota is not None:
            object.__setattr__(self, "iota", np.asarray(self.iota, dtype=np.uint8) & 1)
        self._check()

    @property
    def n(self) -> int:
        return len(self.names)

    def shifts(self) -> tuple[np.ndarray, np.ndarray]:
        """Matrices of ``di`` and ``dj`` for every pair ``(y, x)``; only arrow positions matter."""
        M, A = self.maslov, self.alexander
        twice_di = M[:, None] - M[None, :] + 1
        di = twice_di // 2
        dj = A[None, :] - A[:, None] + di
        return di, dj

    def _check(self) -> None:
        ys, xs = np.nonzero(self.D)
        M, A = self.maslov, self.alexander
        twice = M[ys] - M[xs] + 1
        if (twice % 2).any():
            raise GradingError("an arrow changes the Maslov grading by an even amount")
        di, dj = self.shifts()
        if (di[ys, xs] < 0).any() or (dj[ys, xs] < 0).any():
            raise GradingError("an arrow increases a filtration level")
        if ((di[ys, xs] == 0) & (dj[ys, xs] == 0)).any():
            raise GradingError("an arrow preserves both filtrations")
        if K.matmul(self.D, self.D).any():
            raise NotAChainMap("differential does not square to zero")

    # -- constructors ------------------------------------------------------
    @classmethod
    def unknot(cls) -> "LatticeCFK":
        return cls(("u",), [0], [0], np.zeros((1, 1), dtype=np.uint8), np.ones((1, 1), dtype=np.uint8))

    @classmethod
    def from_staircase(cls, st: Staircase, prefix: str = "x") -> "LatticeCFK":
        n = len(st.exponents)
        D = np.zeros((n, n), dtype=np.uint8)
        for src, tgt in st.arrows:
            D[tgt, src] = 1
        M = [m for m, _ in st.gradings]
        A = [a for _, a in st.gradings]
        return cls(tuple(f"{prefix}{k}" for k in range(n)), M, A, D)

    def mirror(self) -> "LatticeCFK":
        io = None if self.iota is None else self.iota.T
        return LatticeCFK(self.names, -self.maslov, -self.alexander, self.D.T, io)

    def tensor(self, other: "LatticeCFK", guard: int = MODEL_GUARD) -> "LatticeCFK":
        if self.n * other.n > guard:
            from ..errors import SearchTooLarge

            raise SearchTooLarge(f"tensor product with {self.n * other.n} generators exceeds {guard}")
        ia = np.eye(self.n, dtype=np.uint8)
        ib = np.eye(other.n, dtype=np.uint8)
        D = (np.kron(self.D, ib) ^ np.kron(ia, other.D)).astype(np.uint8)
        M = (self.maslov[:, None] + other.maslov[None, :]).ravel()
        A = (self.alexander[:, None] + other.alexander[None, :]).ravel()
        # the involution of a connected sum carries a correction term beyond
        # the tensor product, so it is only kept against a one-generator factor
        io = None
        if self.iota is not None and other.n == 1:
            io = np.kron(self.iota, np.ones((1, 1), dtype=np.uint8)).astype(np.uint8)
        elif other.iota is not None and self.n == 1:
            io = np.kron(np.ones((1, 1), dtype=np.uint8), other.iota).astype(np.uint8)
        return LatticeCFK(tensor_names(self.names, other.names), M, A, D, io)

    # -- quotient complexes ------------------------------------------------
    def top_levels(self, s: int) -> np.ndarray:
        """Largest ``i`` with ``[x, i, A + i]`` inside ``{i <= 0, j <= s}``."""
        return np.minimum(0, s - self.alexander)

    def build_As(self, s: int) -> GradedComplex:
        grs = self.maslov + 2 * self.top_levels(s)
        return GradedComplex(self.names, tuple(Fraction(int(g)) for g in grs), self.D)

    def build_Bs(self) -> GradedComplex:
        return GradedComplex(self.names, tuple(Fraction(int(g)) for g in self.maslov), self.D)

    def v_map(self, s: int) -> MonomialMatrix:
        """Inclusion ``A_s -> B_s`` sending each generator to ``U^{-i_x} x``."""
        a, b = self.build_As(s), self.build_Bs()
        return MonomialMatrix(np.eye(self.n, dtype=np.uint8), a.gradings, b.gradings, 0)

    def Vs(self, s: int) -> int:
        a, b = self.build_As(s), self.build_Bs()
        cyc, _ = a.tower_cycle()
        if b.tower_coordinate(cyc) != 1:
            raise ArithmeticError("the inclusion does not carry the tower of A_s into the tower of B_s")
        gap = d_invariant(b) - d_invariant(a)
        if gap.denominator != 1 or gap % 2:
            raise ArithmeticError("tower grading gap is not an even integer")
        return int(gap) // 2

    def V0(self) -> int:
        return self.Vs(0)

    def large_surgery_iota(self) -> IotaComplex:
        """``(A_0, iota_K)`` for models carrying an involution."""
        if self.iota is None:
            raise UnsupportedIota("this model carries no involution")
        a = self.build_As(0)
        return IotaComplex(a, self.iota)


def thin_negative(height: int, has_box: bool = False) -> LatticeCFK:
    """Step-length-one staircase opening north-east, ``2 * height + 1`` generators, reflection involution.

    With ``has_box`` a unit box ``d -> c, c'``; ``c, c' -> e`` sits at the centre with
    the corrected involution ``d -> d + b``, ``b -> b + e``, ``c -> c' + a'``, ``c' -> c + a``.
    """
    if height < 1:
        raise ValueError("height must be positive")
    base = LatticeCFK.from_staircase(Staircase.step_one(height), "y").mirror()
    n = base.n
    iota = np.zeros((n, n), dtype=np.uint8)
    for k in range(n):
        iota[n - 1 - k, k] = 1
    if not has_box:
        return LatticeCFK(base.names, base.maslov, base.alexander, base.D, iota)
    if height % 2:
        raise ValueError("a box needs an even staircase height so that its centre is a non-cycle")
    T = height
    names = base.names + ("d", "c", "c'", "e")
    M = np.concatenate([base.maslov, [T, T + 1, T - 1, T]])
    A = np.concatenate([base.alexander, [0, 1, -1, 0]])
    N = n + 4
    d, c, cp, e = n, n + 1, n + 2, n + 3
    D = np.zeros((N, N), dtype=np.uint8)
    D[:n, :n] = base.D
    D[c, d] = D[cp, d] = D[e, c] = D[e, cp] = 1
    I = np.zeros((N, N), dtype=np.uint8)
    I[:n, :n] = iota
    b, a, ap = T, T + 1, T - 1
    I[[d, b], d] = 1
    I[b, b] = 0
    I[[b, e], b] = 1
    I[[cp, ap], c] = 1
    I[[c, a], cp] = 1
    I[e, e] = 1
    return LatticeCFK(names, M, A, D, I)


def thin_model(tau: int, has_box: bool = False, selfsum: bool = False) -> LatticeCFK:
    """Simplified thin representative with ``tau`` (doubled when ``selfsum``) and its involution."""
    if tau == 0:
        raise ValueError("tau must be nonzero")
    total = 2 * tau if selfsum else tau
    neg = thin_negative(abs(total), has_box)
    return neg if total < 0 else neg.mirror()


def staircase_model(st: Staircase) -> LatticeCFK:
    """Lattice model of a positive staircase (no involution attached)."""
    return LatticeCFK.from_staircase(st)


__all__ = ["LatticeCFK", "thin_negative", "thin_model", "staircase_model", "MODEL_GUARD"]
