"""Two-handle cobordism intersection forms and their definiteness."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import ParityError, ZeroLinking
from .knots.expr import KnotExpr, Mirror
from .knots.invariants import v0
from .tangles import PatternRecord


@dataclass(frozen=True)
class CobordismParams:
    M: int
    N1: int
    N2: int
    ell: int

    def __post_init__(self):
        if self.M == 0:
            raise ValueError("M must be nonzero")


def form(p: CobordismParams) -> np.ndarray:
    """Symmetric integer matrix, stored as written (any positive rescaling is irrelevant)."""
    l2 = p.ell * p.ell
    off = -p.N1 * p.N2 * l2
    return np.array([[p.N1 * (p.M - p.N1 * l2), off], [off, p.N2 * (p.M - p.N2 * l2)]], dtype=np.int64)


def char_poly(p: CobordismParams) -> tuple[int, int]:
    """``(trace_term, det_term)`` of ``t^2 + trace_term t + det_term``."""
    l2 = p.ell * p.ell
    trace_term = l2 * (p.N1 ** 2 + p.N2 ** 2) - (p.N1 + p.N2) * p.M
    det_term = p.M * p.N1 * p.N2 * (-l2 * (p.N1 + p.N2) + p.M)
    return trace_term, det_term


def is_negative_definite(p: CobordismParams) -> bool:
    """Both characteristic-polynomial coefficients positive."""
    tr, de = char_poly(p)
    return tr > 0 and de > 0


def sylvester_negative_definite(m: np.ndarray) -> bool:
    return bool(m[0, 0] < 0 and m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] > 0)


def grid_scan(M_max: int = 15, N_max: int = 15, ell_max: int = 4) -> dict:
    """Compare the polynomial test with the matrix test on a full grid and record the sign claims."""
    Ms = np.array([m for m in range(-M_max, M_max + 1) if m % 2], dtype=np.int64)
    Ns = np.arange(-N_max, N_max + 1, dtype=np.int64)
    ells = np.arange(-ell_max, ell_max + 1, dtype=np.int64)
    by_poly, by_matrix = K.definiteness_grid(Ms, Ns, ells)
    M, N1, N2, L = np.meshgrid(Ms, Ns, Ns, ells, indexing="ij")
    pos_M = M > 0
    both_pos = (N1 > 0) & (N2 > 0)
    ell_nonzero = L != 0
    ell_zero_defs = by_poly & pos_M & (L == 0)
    return {
        "points": int(by_poly.size),
        "agree": bool(np.array_equal(by_poly, by_matrix)),
        "positive_framings_never_definite": not bool((by_poly & pos_M & both_pos & ell_nonzero).any()),
        "ell_zero_forces_negative": bool(((N1 < 0) & (N2 < 0))[ell_zero_defs].all()),
        "ell_zero_negative_always_definite": bool(by_poly[pos_M & (L == 0) & (N1 < 0) & (N2 < 0)].all()),
        "negative_M_positive_framings_definite": int((by_poly & ~pos_M & both_pos & ell_nonzero).sum()),
    }


def find_params(M: int, ell: int, limit: int = 100_001) -> tuple[int, int]:
    """Least odd ``N1 > 0``, then odd ``N2 < 0`` with ``|N2| < N1``, giving a negative definite form."""
    if M <= 0:
        raise ValueError("M must be positive")
    if ell == 0:
        raise ZeroLinking("the construction needs nonzero linking")
    for N1 in range(1, limit, 2):
        for N2 in range(-1, -N1, -2):
            if is_negative_definite(CobordismParams(M, N1, N2, ell)):
                return N1, N2
    raise RuntimeError(f"no admissible framings below {limit}; the search order is broken")


def chern_shift_E(M: int, N1: int, N2: int) -> int:
    prod = M * N1 * N2
    if prod % 2 == 0:
        raise ParityError("M, N1 and N2 must all be odd")
    return (prod - 1) // 2


def v0_bound_report(k: KnotExpr, pattern: PatternRecord, M: int = 1) -> dict:
    """``V0(J) >= V0(k) - V0(-k) + C`` with the constant ``C`` kept symbolic."""
    if pattern.ell == 0:
        raise ZeroLinking("a pattern with zero linking number gives no bound")
    if M % 2 == 0 or M <= 0:
        raise ParityError("M must be a positive odd integer")
    vk, vm = v0(k).value, v0(Mirror(k)).value
    N1, N2 = find_params(M, abs(pattern.ell))
    gap = vk - vm
    return {
        "knot": str(k),
        "pattern": pattern.to_json(),
        "V0": vk,
        "V0_mirror": vm,
        "gap": gap,
        "bound": f"V0(J) >= {gap} + C",
        "C": "symbolic",
        "M": M,
        "N1": N1,
        "N2": N2,
        "E": chern_shift_E(M, N1, N2),
    }


__all__ = [
    "CobordismParams", "form", "char_poly", "is_negative_definite", "sylvester_negative_definite", "grid_scan",
    "find_params", "chern_shift_E", "v0_bound_report",
]
