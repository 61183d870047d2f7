"""Named reproduction targets: each runs a fixed set of fixture lines and reports PASS/FAIL."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..cobordism import grid_scan
from ..errors import UnknownTarget
from ..knots import parse_knot, tau, v0
from ..knots.alexander import torus_alexander
from ..knots.invariants import lattice_model, lspace_staircase
from ..knots.lattice import thin_model
from ..knots.staircase import Staircase, v0_connected_sum
from ..local_maps import build_certificate, locally_equivalent
from ..iota import iota_shift, iota_tensor, make_X_dual
from ..complexes import d_invariant
from ..surgery import (
    comparison_witness,
    double_independence_check,
    double_of,
    even_surgery_class,
    odd_surgery_class,
    thin_even_reduction,
    thin_odd_f_H_fixture,
)
from ..tangles import PAIRING_INF, cf_eval, cf_expand, is_proper, pairing_of

REFERENCE = "reference value"
COMPUTED = "independent computation"


@dataclass
class Line:
    name: str
    expected: Any
    observed: Any
    basis: str

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "basis": self.basis,
            "status": "PASS" if self.passed else "FAIL",
        }

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: observed {_plain(self.observed)}, expected {_plain(self.expected)} ({self.basis})"


@dataclass
class Report:
    target: str
    lines: list = field(default_factory=list)
    certificate: dict | None = None

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    def add(self, name, expected, observed, basis=REFERENCE) -> None:
        self.lines.append(Line(name, expected, observed, basis))

    def to_json(self) -> dict:
        out = {"target": self.target, "passed": self.passed, "lines": [ln.to_json() for ln in self.lines]}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def text(self) -> str:
        return "\n".join([f"# {self.target}"] + [ln.text() for ln in self.lines])


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def _staircase(p: int, q: int) -> Staircase:
    return Staircase.from_alexander(torus_alexander(p, q))


# ---------------------------------------------------------------------------
# Targets
# ---------------------------------------------------------------------------


def torus_sum_fixtures(**_) -> Report:
    r = Report("torus-sum-fixtures")
    r.add("V0(10 T(2,3)) by corner tuples", 5, v0_connected_sum([_staircase(2, 3)] * 10))
    r.add("V0(4 T(3,4)) by corner tuples", 4, v0_connected_sum([_staircase(3, 4)] * 4))
    r.add("tau(5 T(2,3))", 5, tau(parse_knot("5*T(2,3)")))
    r.add("tau(2 T(3,4))", 6, tau(parse_knot("2*T(3,4)")))
    rep = double_independence_check(parse_knot("5*T(2,3) - 2*T(3,4)"))
    r.add("5 T(2,3) - 2 T(3,4): V0 gap lower bound", 1, rep.get("v0_double_lower_bound"), COMPUTED)
    r.add("5 T(2,3) - 2 T(3,4): tau", -1, rep["tau"])
    return r


def slice_family(ns=(2, 3, 4), ps=(1, 2, 3), qs=(1, 2, 3), **_) -> Report:
    r = Report("slice-family")
    for n in ns:
        cab = lspace_staircase(parse_knot(f"cable(2,{2 * n + 1}; T(2,3))"))
        t2n = _staircase(2, 2 * n + 1)
        t23 = _staircase(2, 3)
        for p in ps:
            r.add(f"V0({2 * p} cable(2,{2 * n + 1}; T(2,3))) n={n} p={p}", p * n, v0_connected_sum([cab] * (2 * p)))
            for q in qs:
                val = v0_connected_sum([t2n] * (2 * p) + [t23] * (2 * q))
                r.add(f"V0({2 * p} T(2,{2 * n + 1}) + {2 * q} T(2,3)) n={n} p={p} q={q}", p * n + q, val)
                k = parse_knot(f"{p}*(T(2,{2 * n + 1}) - cable(2,{2 * n + 1}; g1(1))) + {q}*g1(1)")
                r.add(f"tau gap n={n} p={p} q={q}", q - 2 * p, tau(k))
    return r


def whitehead_rank(limit: int = 2, **_) -> Report:
    r = Report("whitehead-rank")
    classes, targets, wits = [], [], []
    for n in range(1, limit + 1):
        for k in range(1, limit + 1):
            sc = even_surgery_class(lattice_model(double_of(parse_knot(f"{n}*T(2,{2 * k + 1})"))), 1, 2)
            V, w = comparison_witness(sc)
            r.add(f"comparison map n={n} k={k} verifies", True, w.verify(), COMPUTED)
            r.add(f"comparison index n={n} k={k}", n * k, V)
            wd = w.dual()
            classes.append((f"n={n},k={k}", wd.source))
            targets.append((V, sc.d))
            wits.append(wd)
    cert = build_certificate(classes, targets, wits)
    sel = cert.selected
    r.add("selection strictly increasing", True, all(a < b for a, b in zip(sel, sel[1:])) and len(sel) >= 2, COMPUTED)
    expected = tuple(sorted({n * k for n in range(1, limit + 1) for k in range(1, limit + 1)}))
    r.add("selected indices", expected, sel, COMPUTED)
    r.certificate = cert.to_json()
    return r


def double_independence(**_) -> Report:
    r = Report("double-independence")
    rep = double_independence_check(parse_knot("5*T(2,3) - 2*T(3,4)"))
    r.add("5 T(2,3) - 2 T(3,4) independent", True, rep["independent"])
    r.add("T(2,3) independent", False, double_independence_check(parse_knot("T(2,3)"))["independent"])
    for n, p, q in ((2, 1, 1), (2, 2, 3), (3, 2, 1), (4, 3, 5)):
        k = parse_knot(f"{p}*(T(2,{2 * n + 1}) - cable(2,{2 * n + 1}; g1(1))) + {q}*g1(1)")
        rep = double_independence_check(k)
        r.add(f"slice family n={n} p={p} q={q}: V0 gap", q, rep.get("v0_double_lower_bound"), COMPUTED)
        r.add(f"slice family n={n} p={p} q={q}: independent", True, rep["independent"])
    return r


def thin_reductions(taus=(1, 2, 3), coefficients=((1, 2), (3, 2), (7, 2)), **_) -> Report:
    r = Report("thin-reductions")
    from ..errors import ThresholdViolated

    for t in taus:
        for p, q in coefficients:
            try:
                idx = thin_even_reduction(t, p, q)
            except ThresholdViolated:
                continue
            sc = even_surgery_class(thin_model(t, selfsum=True), p, q)
            target = iota_shift(make_X_dual(idx), -sc.d)
            r.add(f"even tau={t} p/q={p}/{q} equivalent to X-dual({idx})", True,
                  locally_equivalent(sc.complex, target), COMPUTED)
    for box in (False, True):
        rep = thin_odd_f_H_fixture(1, box)
        r.add(f"odd explicit f, H (box={box})", True, rep["passed"])
        sc = odd_surgery_class(thin_model(-1, box, selfsum=True), 1, 1)
        target = make_X_dual(1)
        if box:
            target = iota_tensor(target, make_X_dual(1))
        target = iota_shift(target, d_invariant(target.complex) - sc.d)
        r.add(f"odd class (box={box}) equivalent to its X-dual model", True,
              locally_equivalent(sc.complex, target), COMPUTED)
    return r


def definiteness_grid(**_) -> Report:
    r = Report("definiteness-grid")
    g = grid_scan()
    r.add("polynomial test agrees with matrix test", True, g["agree"], COMPUTED)
    r.add("M > 0, N1, N2 > 0, ell != 0 never definite", True, g["positive_framings_never_definite"])
    r.add("ell = 0, M > 0 definite only for N1, N2 < 0", True, g["ell_zero_forces_negative"])
    return r


def properness_law(bound: int = 20, cf_bound: int = 200, **_) -> Report:
    from math import gcd

    r = Report("properness-law")
    bad = [
        (p, q)
        for p in range(-bound, bound + 1)
        for q in range(0, bound + 1)
        if gcd(p, q) == 1 and (pairing_of(p, q) == PAIRING_INF) != is_proper(p, q)
    ]
    r.add(f"q even iff pairing matches T_inf, |p|,|q| <= {bound}", [], bad, COMPUTED)
    trips = [
        (p, q)
        for p in range(-cf_bound, cf_bound + 1)
        for q in range(1, cf_bound + 1)
        if gcd(p, q) == 1 and cf_eval(cf_expand(p, q)) != (p, q)
    ]
    r.add(f"continued fraction round trip, |p|,|q| <= {cf_bound}", [], trips, COMPUTED)
    return r


TARGETS: dict[str, Callable[..., Report]] = {
    "torus-sum-fixtures": torus_sum_fixtures,
    "slice-family": slice_family,
    "whitehead-rank": whitehead_rank,
    "double-independence": double_independence,
    "thin-reductions": thin_reductions,
    "definiteness-grid": definiteness_grid,
    "properness-law": properness_law,
}


def run(target: str, **params) -> Report:
    if target not in TARGETS:
        raise UnknownTarget(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    return TARGETS[target](**params)


__all__ = ["Line", "Report", "TARGETS", "run"]
