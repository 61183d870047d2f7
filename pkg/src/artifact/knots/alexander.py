"""Symmetric Alexander polynomials as exponent -> coefficient maps."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import UnsupportedLeaf
from .expr import Cable, GenusOneClass, KnotExpr, Mirror, Multiple, Sum, ThinClass, Torus, Unknot


@dataclass(frozen=True)
class AlexPoly:
    coeffs: dict = field(default_factory=lambda: {0: 1})

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(k): int(v) for k, v in sorted(self.coeffs.items()) if v})

    @classmethod
    def from_array(cls, low: int, arr) -> "AlexPoly":
        return cls({low + i: int(c) for i, c in enumerate(arr) if c})

    def to_array(self) -> tuple[int, np.ndarray]:
        lo, hi = min(self.coeffs), max(self.coeffs)
        arr = np.zeros(hi - lo + 1, dtype=np.int64)
        for k, v in self.coeffs.items():
            arr[k - lo] = v
        return lo, arr

    def __mul__(self, other: "AlexPoly") -> "AlexPoly":
        la, a = self.to_array()
        lb, b = other.to_array()
        return AlexPoly.from_array(la + lb, np.convolve(a, b))

    def __pow__(self, n: int) -> "AlexPoly":
        out = AlexPoly()
        for _ in range(n):
            out = out * self
        return out

    def substitute_power(self, p: int) -> "AlexPoly":
        """``Delta(t^p)``."""
        return AlexPoly({k * p: v for k, v in self.coeffs.items()})

    def symmetrized(self) -> "AlexPoly":
        lo, hi = min(self.coeffs), max(self.coeffs)
        if (lo + hi) % 2:
            raise ValueError("polynomial has odd span and cannot be centred")
        c = (lo + hi) // 2
        return AlexPoly({k - c: v for k, v in self.coeffs.items()})

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get(-k) == v for k, v in self.coeffs.items())

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    @property
    def degree(self) -> int:
        return max(self.coeffs)

    def nonzero_terms(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> dict:
        return {str(k): v for k, v in sorted(self.coeffs.items(), reverse=True)}

    def __str__(self) -> str:
        parts = []
        for k, v in sorted(self.coeffs.items(), reverse=True):
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = "" if abs(v) == 1 and k != 0 else str(abs(v))
            body = (coef + ("" if mono == "1" and coef else mono)) if k != 0 else str(abs(v))
            parts.append(("- " if v < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _poly_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Exact integer division of polynomials given low-to-high coefficient arrays."""
    num = num.astype(np.int64).copy()
    out = np.zeros(len(num) - len(den) + 1, dtype=np.int64)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c, r = divmod(int(num[k + len(den) - 1]), int(lead))
        if r:
            raise ArithmeticError("division is not exact")
        out[k] = c
        num[k:k + len(den)] -= c * den
    if num.any():
        raise ArithmeticError("division is not exact")
    return out


def _xn_minus_one(n: int) -> np.ndarray:
    a = np.zeros(n + 1, dtype=np.int64)
    a[0], a[n] = -1, 1
    return a


def torus_alexander(p: int, q: int) -> AlexPoly:
    """``(t^{pq}-1)(t-1) / ((t^p-1)(t^q-1))``, centred."""
    num = np.convolve(_xn_minus_one(p * q), _xn_minus_one(1))
    den = np.convolve(_xn_minus_one(p), _xn_minus_one(q))
    return AlexPoly.from_array(0, _poly_divide(num, den)).symmetrized()


def alexander(k: KnotExpr) -> AlexPoly:
    if isinstance(k, Unknot):
        return AlexPoly()
    if isinstance(k, Torus):
        return torus_alexander(k.p, k.q)
    if isinstance(k, Mirror):
        return alexander(k.child)
    if isinstance(k, Sum):
        out = AlexPoly()
        for t in k.terms:
            out = out * alexander(t)
        return out
    if isinstance(k, Multiple):
        return alexander(k.child) ** k.n
    if isinstance(k, Cable):
        pattern = torus_alexander(k.p, abs(k.q)) if abs(k.q) >= 2 else AlexPoly()
        return alexander(k.child).substitute_power(k.p) * pattern
    if isinstance(k, (ThinClass, GenusOneClass)):
        raise UnsupportedLeaf(f"{type(k).__name__} carries no Alexander polynomial")
    raise TypeError(f"not a knot expression: {k!r}")


def song_decomposition(p: int, q: int) -> tuple[int, int, int, int]:
    """Positive ``(x, y, u, v)`` with ``vx - uy = 1``, ``p = x + y`` and ``q = u + v``."""
    x = pow(q, -1, p) if p > 1 else 1
    u = (q * x - 1) // p
    y, v = p - x, q - u
    return x, y, u, v


def nonzero_term_count(p: int, q: int) -> tuple[int, tuple[int, int, int, int]]:
    x, y, u, v = song_decomposition(p, q)
    return v * x + u * y, (x, y, u, v)


__all__ = ["AlexPoly", "alexander", "torus_alexander", "song_decomposition", "nonzero_term_count"]
