"""Local classes of surgeries on knots, comparison maps to X-dual classes, and d-invariant formulas."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .complexes import GradedComplex, MonomialMatrix, d_invariant
from .errors import (
    FixtureFailed,
    HalfInteger,
    ParityError,
    PrimitiveNotFound,
    ThresholdViolated,
    UnsupportedIota,
    UnsupportedLeaf,
)
from .iota import IotaComplex, iota_shift, make_X_dual, validate
from .knots.expr import KnotExpr, Mirror, Multiple, reverse
from .knots.invariants import split_signs, tau, v0
from .knots.lattice import LatticeCFK, thin_negative
from .local_maps import LocalMapWitness


def nearest_int(p: int, q: int) -> int:
    """The integer closest to ``p / (2q)``."""
    if q < 1:
        raise ValueError("q must be positive")
    twice = Fraction(p, 2 * q)
    if twice.denominator == 2:
        raise HalfInteger(f"{p}/{2 * q} is a half-integer")
    return int(twice + Fraction(1, 2)) if twice >= 0 else -int(-twice + Fraction(1, 2))


def threshold(p: int, q: int) -> int:
    """``floor((floor(p/q) + 1) / 4)``."""
    return (p // q + 1) // 4


def numerology_holds(p: int, q: int) -> bool:
    return nearest_int(p, q) // 2 == threshold(p, q)


@dataclass(eq=False)
class SurgeryClass:
    parity: str
    s: int | None
    complex: IotaComplex
    knot: str = ""
    coefficient: Fraction = Fraction(0)
    model: LatticeCFK | None = field(default=None, repr=False)

    @property
    def d(self) -> Fraction:
        return d_invariant(self.complex.complex)

    def to_json(self) -> dict:
        return {
            "parity": self.parity,
            "s": self.s,
            "knot": self.knot,
            "coefficient": str(self.coefficient),
            "d": str(self.d),
            "complex": self.complex.to_json(),
        }


def _check_coefficient(p: int, q: int, want_even: bool) -> Fraction:
    if q < 1 or p <= 0:
        raise ValueError("only positive coefficients p/q with q >= 1 are supported")
    if p % 2 == 0:
        raise ParityError("p must be odd")
    if (q % 2 == 0) != want_even:
        raise ParityError(f"q = {q} has the wrong parity for this construction")
    return Fraction(p, q)


def even_surgery_class(model: LatticeCFK, p: int, q: int, knot: str = "") -> SurgeryClass:
    """Cone of ``(v, v): A_s + A_s -> B_s`` with the swap involution.

    The two copies of ``A_s`` keep their gradings and ``B_s`` is lowered by
    one, so the class has the d-invariant of ``A_s``, carried by ``a1 + a2``.
    """
    coef = _check_coefficient(p, q, want_even=True)
    s = nearest_int(p, q)
    a, b = model.build_As(s), model.build_Bs()
    n = model.n
    names = tuple(f"a1:{x}" for x in a.names) + tuple(f"a2:{x}" for x in a.names) + tuple(f"b:{x}" for x in b.names)
    grs = a.gradings + a.gradings + tuple(g - 1 for g in b.gradings)
    D = np.zeros((3 * n, 3 * n), dtype=np.uint8)
    D[:n, :n] = a.differential
    D[n:2 * n, n:2 * n] = a.differential
    D[2 * n:, 2 * n:] = b.differential
    eye = np.eye(n, dtype=np.uint8)
    D[2 * n:, :n] = eye
    D[2 * n:, n:2 * n] = eye
    cone = GradedComplex(names, grs, D)
    iota = np.zeros_like(D)
    iota[n:2 * n, :n] = eye
    iota[:n, n:2 * n] = eye
    iota[2 * n:, 2 * n:] = eye
    ic = IotaComplex(cone, iota)
    validate(ic)
    return SurgeryClass("even", s, ic, knot, coef, model)


def odd_surgery_class(model: LatticeCFK, p: int, q: int, knot: str = "") -> SurgeryClass:
    """``(A_0, iota_K)`` for a model that carries its involution."""
    coef = _check_coefficient(p, q, want_even=False)
    if model.iota is None:
        raise UnsupportedIota("odd classes need a knot model with a known involution")
    ic = model.large_surgery_iota()
    validate(ic)
    return SurgeryClass("odd", None, ic, knot, coef, model)


def comparison_witness(sc: SurgeryClass) -> tuple[int, LocalMapWitness]:
    """``(V_s, witness)`` for the map ``X_{V_s}^dual[-d] -> sc`` with ``x -> a1 + c``, ``ix -> a2 + c``, ``alpha -> b``."""
    if sc.parity != "even" or sc.model is None:
        raise ValueError("comparison maps are defined for even classes")
    model, s = sc.model, sc.s
    a, b = model.build_As(s), model.build_Bs()
    n = model.n
    ta, da = a.tower_cycle()
    tb, db = b.tower_cycle()
    gap = db - da
    if gap.denominator != 1 or gap % 2 or gap < 0:
        raise PrimitiveNotFound("tower gradings of A_s and B_s are incompatible")
    V = int(gap) // 2
    # c lives in B_s in grading d(A_s) + 1 and bounds v(a) + U^V b
    target = da + 1
    cand = [g for g in range(n) if b.gradings[g] >= target and (b.gradings[g] - target) % 2 == 0]
    rhs = (ta ^ tb).astype(np.uint8)
    c = np.zeros(n, dtype=np.uint8)
    if rhs.any():
        sol = K.solve_lexmin(b.differential[:, cand], rhs) if cand else None
        if sol is None:
            raise PrimitiveNotFound("v(a) + U^V b is not a boundary in B_s")
        c[np.asarray(cand, dtype=np.int64)[sol.astype(bool)]] = 1
    if V == 0:
        raise PrimitiveNotFound("V_s = 0: the class has no X-dual comparison of positive index")
    source = iota_shift(make_X_dual(V), -da)
    f = np.zeros((3 * n, 3), dtype=np.uint8)
    f[:n, 0] = ta
    f[n:2 * n, 1] = ta
    f[2 * n:, 0] = c
    f[2 * n:, 1] = c
    f[2 * n:, 2] = tb
    cone = sc.complex
    F = MonomialMatrix(f, source.gradings, cone.gradings, 0)
    H = MonomialMatrix.zero(source.gradings, cone.gradings, 1)
    w = LocalMapWitness(source, cone, F, H)
    if not w.verify():
        raise PrimitiveNotFound(f"comparison map fails its checks: {w.checks()}")
    return V, w


def thin_even_reduction(tau_k: int, p: int, q: int) -> int:
    """Predicted X-dual index ``tau_K - floor(s/2)`` for the even class of ``K # K``."""
    _check_coefficient(p, q, want_even=True)
    t = threshold(p, q)
    if tau_k <= t:
        raise ThresholdViolated(f"tau(K) = {tau_k} must exceed {t}")
    return tau_k - nearest_int(p, q) // 2


# ---------------------------------------------------------------------------
# Odd-case fixture
# ---------------------------------------------------------------------------


def odd_target(t: int, box: bool) -> IotaComplex:
    """Three-generator (or five with ``box``) complex: ``d x1 = U^t x2``, ``omega x1 = x0`` (and ``d x3 = U x4``, ``omega x3 = x2``)."""
    gens = [("x0", 0), ("x1", 0), ("x2", 2 * t - 1)]
    arrows = [("x1", "x2", t)]
    if box:
        gens += [("x3", 2 * t - 1), ("x4", 2 * t)]
        arrows.append(("x3", "x4", 1))
    c = GradedComplex.from_entries(gens, arrows)
    iota = np.eye(c.n, dtype=np.uint8)
    iota[0, 1] = 1
    if box:
        iota[2, 3] = 1
    return IotaComplex(c, iota)


def odd_fixture_maps(t: int, box: bool):
    """``(target, A_0, f, H)`` with the explicit homotopy-equivalence data."""
    T = 2 * t
    model = thin_negative(T, box)
    a0 = model.large_surgery_iota()
    src = odd_target(t, box)
    idx = a0.complex.index
    sigma = [idx(f"y{k}") for k in range(T + 2, 2 * T + 1, 2)]
    sigma_p = [idx(f"y{k}") for k in range(0, T, 2)]
    b, a = idx(f"y{T}"), idx(f"y{T + 1}")
    f = np.zeros((a0.n, src.n), dtype=np.uint8)
    H = np.zeros((a0.n, src.n), dtype=np.uint8)
    f[sigma + [b] + sigma_p, 0] = 1
    f[sigma, 1] = 1
    f[a, 2] = 1
    H[b, 2] = 1
    if box:
        f[idx("c'"), 3] = 1
        f[idx("e"), 4] = 1
        H[idx("c"), 0] = 1
        H[idx("d"), 3] = 1
    try:
        F = MonomialMatrix(f, src.gradings, a0.gradings, 0)
        Hm = MonomialMatrix(H, src.gradings, a0.gradings, 1)
    except Exception as exc:  # inhomogeneous data
        raise FixtureFailed(f"fixture maps are not homogeneous: {exc}") from exc
    return src, a0, F, Hm


def thin_odd_f_H_fixture(t: int = 1, box: bool = False) -> dict:
    """Check the explicit ``f`` and ``H`` generator by generator; raises FixtureFailed on any mismatch."""
    src, a0, F, Hm = odd_fixture_maps(t, box)
    d_a, d_s = a0.complex.differential, src.complex.differential
    lhs = K.matmul(F.bits, src.iota) ^ K.matmul(a0.iota, F.bits)
    rhs = K.matmul(d_a, Hm.bits) ^ K.matmul(Hm.bits, d_s)
    chain = K.matmul(d_a, F.bits) ^ K.matmul(F.bits, d_s)
    per_gen = {}
    for j, name in enumerate(src.names):
        per_gen[name] = {
            "equivariance": bool(np.array_equal(lhs[:, j], rhs[:, j])),
            "chain": not chain[:, j].any(),
            "f": [a0.names[y] for y in np.flatnonzero(F.bits[:, j])],
            "H": [a0.names[y] for y in np.flatnonzero(Hm.bits[:, j])],
        }
    omega = src.omega().bits
    report = {
        "t": t,
        "box": box,
        "generators": per_gen,
        "omega_x1_is_x0": bool(omega[:, 1].tolist() == [1] + [0] * (src.n - 1)),
        "local_map": LocalMapWitness(src, a0, F, Hm).verify(),
    }
    ok = all(g["equivariance"] and g["chain"] for g in per_gen.values())
    report["passed"] = ok and report["omega_x1_is_x0"] and report["local_map"]
    if not report["passed"]:
        raise FixtureFailed(f"explicit homotopy data fails: {report}")
    return report


# ---------------------------------------------------------------------------
# d-invariants and the Whitehead-double criterion
# ---------------------------------------------------------------------------


def d_surgery(M: int, k: KnotExpr) -> Fraction:
    """d of ``M``-surgery (M odd) in the spin structure labelled 0."""
    if M == 0 or M % 2 == 0:
        raise ParityError("M must be a nonzero odd integer")
    if M > 0:
        return Fraction(M - 1, 4) - 2 * v0(k).value
    return Fraction(M + 1, 4) + 2 * v0(Mirror(k)).value


def double_of(k: KnotExpr) -> KnotExpr:
    """``K # K^r``, recorded as ``2K`` because the invariants used cannot see orientation."""
    return Multiple(2, reverse(k))


def double_independence_check(k: KnotExpr) -> dict:
    """Report whether ``V0(K # K^r) > 0`` and ``tau(K) < 0`` can be certified."""
    t = tau(k)
    kk = double_of(k)
    report: dict = {"knot": str(k), "tau": t}
    try:
        res = v0(kk)
        report.update(v0_double=res.value, v0_method=res.method, v0_exact=True)
        positive = res.value > 0
    except UnsupportedLeaf:
        pos, neg = split_signs(kk)
        vp, vn = v0(pos).value, v0(neg).value
        report.update(v0_double_lower_bound=vp - vn, v0_positive_part=vp, v0_negative_part=vn, v0_exact=False)
        positive = vp - vn > 0
    report["v0_positive"] = positive
    report["tau_negative"] = t < 0
    report["independent"] = positive and t < 0
    return report


__all__ = [
    "nearest_int", "threshold", "numerology_holds", "SurgeryClass", "even_surgery_class", "odd_surgery_class",
    "comparison_witness", "thin_even_reduction", "odd_target", "odd_fixture_maps", "thin_odd_f_H_fixture",
    "d_surgery", "double_of", "double_independence_check",
]
