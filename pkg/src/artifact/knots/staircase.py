"""Staircase complexes of L-space knots and the connected-sum V0 algorithm."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .. import _kernels as K
from ..errors import NotLSpaceForm, NotPositiveLSpace, SearchTooLarge
from .alexander import AlexPoly

#: Largest number of corner tuples the product enumeration will visit.
PRODUCT_GUARD = 1 << 20


def lspace_exponents(delta: AlexPoly) -> tuple[int, ...]:
    """Exponents ``a_0 > a_1 > ... > a_2m`` of an L-space form ``sum (-1)^k t^{a_k}``."""
    if not delta.is_symmetric():
        raise NotLSpaceForm("polynomial is not symmetric")
    exps = sorted(delta.coeffs, reverse=True)
    for k, e in enumerate(exps):
        if delta.coeffs[e] != (-1) ** k:
            raise NotLSpaceForm(f"coefficient of t^{e} breaks the alternating +-1 pattern")
    return tuple(exps)


@dataclass(frozen=True)
class Staircase:
    """Generators ``x_0 .. x_2m`` of a positive staircase.

    ``maslov`` and ``alexander`` are the gradings of each generator at
    filtration level ``i = 0``.  Odd generators are the non-cycles:
    ``x_k -> x_{k-1}`` is horizontal of length ``steps[k-1]`` and
    ``x_k -> x_{k+1}`` is vertical of length ``steps[k]``.
    """

    exponents: tuple

    def __post_init__(self):
        e = self.exponents
        if len(e) % 2 == 0 or any(a <= b for a, b in zip(e, e[1:])) or e[0] != -e[-1]:
            raise NotLSpaceForm("staircase exponents must be a strictly decreasing symmetric odd-length list")

    @classmethod
    def from_alexander(cls, delta: AlexPoly) -> "Staircase":
        return cls(lspace_exponents(delta))

    @classmethod
    def step_one(cls, height: int) -> "Staircase":
        """Staircase with every step of length one and ``2 * height + 1`` generators."""
        return cls(tuple(range(height, -height - 1, -1)))

    @property
    def genus(self) -> int:
        return self.exponents[0]

    @property
    def steps(self) -> tuple:
        e = self.exponents
        return tuple(a - b for a, b in zip(e, e[1:]))

    @cached_property
    def gradings(self) -> tuple[tuple[int, int], ...]:
        """``(Maslov, Alexander)`` per generator."""
        m, out = 0, [(0, self.exponents[0])]
        for k, n in enumerate(self.steps, start=1):
            m = m - 2 * n + 1 if k % 2 else m - 1
            out.append((m, self.exponents[k]))
        return tuple(out)

    @cached_property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(source, target)`` of the differential."""
        out = []
        for k in range(1, len(self.exponents), 2):
            out += [(k, k - 1), (k, k + 1)]
        return tuple(out)

    @cached_property
    def corners(self) -> tuple[tuple[int, int], ...]:
        """First-quadrant ``(i, j)`` of the Maslov-zero translates of the cycle generators."""
        out = []
        for k in range(0, len(self.exponents), 2):
            m, a = self.gradings[k]
            i = -m // 2
            out.append((i, i + a))
        return tuple(out)


def v0_lspace(delta: AlexPoly) -> int:
    """Alternating sum ``n_m - n_{m-1} + ... +- n_1`` of the positive exponents."""
    exps = lspace_exponents(delta)
    pos = sorted(e for e in exps if e > 0)
    return sum((-1) ** (len(pos) - 1 - k) * n for k, n in enumerate(pos))


def term_count_lower_bound(delta: AlexPoly) -> int:
    """``floor((n - 1) / 4)`` for ``n`` nonzero terms."""
    return (delta.nonzero_terms() - 1) // 4


def v0_connected_sum(summands, guard: int = PRODUCT_GUARD, check_bounds: bool = True) -> int:
    """V0 of a sum of positive staircases as a min over corner tuples of ``max(sum i, sum j)``."""
    summands = list(summands)
    for s in summands:
        if not isinstance(s, Staircase):
            raise NotPositiveLSpace(f"{s!r} is not a positive staircase")
    total = 1
    for s in summands:
        total *= len(s.corners)
    if total > guard:
        raise SearchTooLarge(f"{total} corner tuples exceeds the guard {guard}")
    alphas = [c[0] for s in summands for c in s.corners]
    betas = [c[1] for s in summands for c in s.corners]
    offsets = np.cumsum([0] + [len(s.corners) for s in summands])
    value = K.min_of_max_over_products(np.array(alphas), np.array(betas), offsets)
    if check_bounds:
        singles = [_single_v0(s) for s in summands]
        floor_half = len(summands) // 2
        if value < max([floor_half] + singles):
            raise ArithmeticError("connected-sum V0 fell below the summand lower bounds")
    return value


def _single_v0(s: Staircase) -> int:
    return min(max(i, j) for i, j in s.corners)


def v0_pareto(summands) -> int:
    """Same minimum via a Pareto frontier of partial corner sums; polynomial in practice."""
    front = {(0, 0)}
    for s in summands:
        if not isinstance(s, Staircase):
            raise NotPositiveLSpace(f"{s!r} is not a positive staircase")
        cand = sorted({(a + i, b + j) for a, b in front for i, j in s.corners})
        front, best_b = set(), None
        for a, b in cand:
            if best_b is None or b < best_b:
                front.add((a, b))
                best_b = b
    return min(max(a, b) for a, b in front)


__all__ = [
    "Staircase", "lspace_exponents", "v0_lspace", "term_count_lower_bound", "v0_connected_sum", "v0_pareto",
    "PRODUCT_GUARD",
]
