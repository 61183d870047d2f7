"""tau, V0 and the genus-one rewrite for knot expressions."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotLSpaceForm, SearchTooLarge, UnsupportedLeaf
from .alexander import alexander, torus_alexander
from .expr import (
    Cable,
    GenusOneClass,
    KnotExpr,
    Mirror,
    Multiple,
    Sum,
    ThinClass,
    Torus,
    Unknot,
    signed_summands,
)
from .lattice import MODEL_GUARD, LatticeCFK, staircase_model, thin_model
from .staircase import PRODUCT_GUARD, Staircase, v0_connected_sum, v0_pareto


def reduce_genus_one(k: KnotExpr) -> KnotExpr:
    """Replace every genus-one leaf by ``tau * T(2,3)``, also inside cables.

    The result has the same tau and V-invariants, which is all it is used for.
    """
    if isinstance(k, GenusOneClass):
        return {1: Torus(2, 3), 0: Unknot(), -1: Mirror(Torus(2, 3))}[k.tau]
    if isinstance(k, Mirror):
        return Mirror(reduce_genus_one(k.child))
    if isinstance(k, Multiple):
        return Multiple(k.n, reduce_genus_one(k.child))
    if isinstance(k, Cable):
        return Cable(k.p, k.q, reduce_genus_one(k.child))
    if isinstance(k, Sum):
        return Sum(tuple(reduce_genus_one(t) for t in k.terms))
    return k


def reduce_genus_one_sum(k: KnotExpr) -> KnotExpr:
    """Collapse a sum of genus-one leaves to ``c * T(2,3)`` with ``c`` the total tau."""
    terms = list(signed_summands(k))
    if any(not isinstance(node, GenusOneClass) for _, _, node in terms):
        raise UnsupportedLeaf("every leaf must be a genus one class")
    c = sum(sign * mult * node.tau for sign, mult, node in terms)
    if c == 0:
        return Unknot()
    base = Torus(2, 3) if c > 0 else Mirror(Torus(2, 3))
    return base if abs(c) == 1 else Multiple(abs(c), base)


# ---------------------------------------------------------------------------
# L-space summands
# ---------------------------------------------------------------------------


def lspace_staircase(node: KnotExpr) -> Staircase:
    """Staircase of a supported positive L-space knot: torus knots and ``(T(2,3))_{2,2n+1}``, n >= 2."""
    if isinstance(node, Torus):
        return Staircase.from_alexander(torus_alexander(node.p, node.q))
    if isinstance(node, Cable) and node.child == Torus(2, 3) and node.p == 2 and node.q >= 5:
        return Staircase.from_alexander(alexander(node))
    raise NotLSpaceForm(f"{node} is not in the supported L-space table")


def _is_thin(node: KnotExpr) -> bool:
    return isinstance(node, ThinClass) or (isinstance(node, Torus) and node.p == 2)


def _leaf_tau(node: KnotExpr) -> int:
    if isinstance(node, Torus):
        return (node.p - 1) * (node.q - 1) // 2
    if isinstance(node, (ThinClass, GenusOneClass)):
        return node.tau
    if isinstance(node, Cable):
        try:
            return lspace_staircase(node).genus
        except NotLSpaceForm as exc:
            raise UnsupportedLeaf(f"tau of {node} is not available") from exc
    raise UnsupportedLeaf(f"tau of {node!r} is not available")


def tau(k: KnotExpr) -> int:
    k = reduce_genus_one(k)
    return sum(sign * mult * _leaf_tau(node) for sign, mult, node in signed_summands(k))


# ---------------------------------------------------------------------------
# V0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class V0Result:
    value: int
    method: str


def _leaf_model(node: KnotExpr) -> LatticeCFK:
    if isinstance(node, ThinClass):
        return thin_model(node.tau, node.has_box) if node.tau else LatticeCFK.unknot()
    return staircase_model(lspace_staircase(node))


def lattice_model(k: KnotExpr, guard: int = MODEL_GUARD) -> LatticeCFK:
    """Tensor product of summand models; involutions are kept only when every factor has one."""
    model = None
    for sign, mult, node in signed_summands(reduce_genus_one(k)):
        leaf = _leaf_model(node)
        if sign < 0:
            leaf = leaf.mirror()
        for _ in range(mult):
            model = leaf if model is None else model.tensor(leaf, guard)
    return LatticeCFK.unknot() if model is None else model


def v0(k: KnotExpr, guard: int = PRODUCT_GUARD) -> V0Result:
    """Exact V0 where the expression falls in a supported family.

    Positive L-space sums use the corner-tuple minimum (or its Pareto form
    beyond the guard), sums of thin knots use ``max(0, ceil(tau / 2))``,
    sums of negative L-space knots give 0, and anything else small enough is
    computed on the tensor-product lattice model.
    """
    k = reduce_genus_one(k)
    terms = list(signed_summands(k))
    if not terms:
        return V0Result(0, "unknot")
    if all(_is_thin(node) for _, _, node in terms):
        t = sum(sign * mult * _leaf_tau(node) for sign, mult, node in terms)
        return V0Result(max(0, -(-t // 2)), "thin")
    try:
        stairs = [(sign, mult, lspace_staircase(node)) for sign, mult, node in terms]
    except NotLSpaceForm:
        stairs = None
    if stairs is not None:
        if all(sign > 0 for sign, _, _ in stairs):
            summands = [s for _, mult, s in stairs for _ in range(mult)]
            try:
                return V0Result(v0_connected_sum(summands, guard), "corner-tuples")
            except SearchTooLarge:
                return V0Result(v0_pareto(summands), "pareto")
        if all(sign < 0 for sign, _, _ in stairs):
            return V0Result(0, "negative-lspace")
    size = 1
    for _, mult, node in terms:
        try:
            size *= _leaf_model(node).n ** mult
        except NotLSpaceForm as exc:
            raise UnsupportedLeaf(f"V0 of {k} is outside the supported families") from exc
    if size > MODEL_GUARD:
        raise UnsupportedLeaf(f"V0 of {k} needs a {size}-generator model; use the subadditivity bound")
    try:
        return V0Result(lattice_model(k).V0(), "lattice")
    except (SearchTooLarge, NotLSpaceForm) as exc:
        raise UnsupportedLeaf(f"V0 of {k} is outside the supported families") from exc


def split_signs(k: KnotExpr) -> tuple[KnotExpr, KnotExpr]:
    """``(P, N)`` with ``k = P - N`` and both built from positively signed summands."""
    pos, neg = [], []
    for sign, mult, node in signed_summands(k):
        term = node if mult == 1 else Multiple(mult, node)
        (pos if sign > 0 else neg).append(term)

    def join(ts):
        return Unknot() if not ts else ts[0] if len(ts) == 1 else Sum(tuple(ts))

    return join(pos), join(neg)


def v0_lower_bound(k: KnotExpr) -> tuple[int, int, int]:
    """Subadditivity bound ``V0(k) >= V0(P) - V0(N)``; returns ``(bound, V0(P), V0(N))``."""
    p, n = split_signs(reduce_genus_one(k))
    vp, vn = v0(p).value, v0(n).value
    return vp - vn, vp, vn


__all__ = [
    "reduce_genus_one", "reduce_genus_one_sum", "lspace_staircase", "tau", "v0", "V0Result",
    "lattice_model", "split_signs", "v0_lower_bound",
]
