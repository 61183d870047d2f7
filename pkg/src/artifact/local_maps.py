"""Local maps between iota-complexes, the induced preorder, and rank certificates.

A local map ``a -> b`` is a grading-preserving chain map ``f`` together with
a degree +1 homotopy ``H`` such that ``f iota_a + iota_b f = d H + H d`` and
``f`` carries the tower of ``a`` to a non-torsion class.  For fixed gradings
all three conditions are linear in the unknown entries of ``(f, H)``, so
existence is decided exactly by one affine solve over F2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .complexes import GradedComplex, MonomialMatrix, d_invariant, exponent_matrix
from .errors import EmptySelection, GradingCosetMismatch, SearchTooLarge
from .iota import IotaComplex, homotopy_system, iota_dual, iota_shift, make_X, sandwich_system

#: Largest ``n_source * n_target`` the affine solver accepts by default.
DEFAULT_GUARD = 4096


@dataclass(frozen=True, eq=False)
class LocalMapWitness:
    source: IotaComplex
    target: IotaComplex
    f: MonomialMatrix
    H: MonomialMatrix

    def checks(self) -> dict[str, bool]:
        a, b = self.source, self.target
        da, db = a.complex.differential, b.complex.differential
        chain = not (K.matmul(db, self.f.bits) ^ K.matmul(self.f.bits, da)).any()
        lhs = K.matmul(self.f.bits, a.iota) ^ K.matmul(b.iota, self.f.bits)
        rhs = K.matmul(db, self.H.bits) ^ K.matmul(self.H.bits, da)
        equivariant = np.array_equal(lhs, rhs)
        bits, _ = a.complex.tower_cycle()
        image = K.matmul(self.f.bits, bits[:, None])[:, 0]
        tower = chain and b.complex.tower_coordinate(image) == 1
        return {"chain_map": chain, "iota_homotopy": equivariant, "tower_nonzero": tower}

    def verify(self) -> bool:
        return all(self.checks().values())

    def dual(self) -> "LocalMapWitness":
        """The transposed data, a local map ``dual(target) -> dual(source)``."""
        return LocalMapWitness(iota_dual(self.target), iota_dual(self.source), self.f.transpose(), self.H.transpose())

    def then(self, second: "LocalMapWitness") -> "LocalMapWitness":
        """Composite ``second o self`` with homotopy ``f2 H1 + H2 f1``."""
        f = second.f.compose(self.f)
        H = second.f.compose(self.H) + second.H.compose(self.f)
        return LocalMapWitness(self.source, second.target, f, H)

    def to_json(self) -> dict:
        def ents(m: MonomialMatrix):
            return [
                {"from": self.source.names[x], "to": self.target.names[y], "upow": k} for x, y, k in m.entries()
            ]

        return {"f": ents(self.f), "H": ents(self.H), "verified": self.verify()}


def _check_cosets(a: IotaComplex, b: IotaComplex) -> None:
    """Raise unless some source and target generator differ by an even integer."""
    if (a.gradings[0] - b.gradings[0]).denominator != 1:
        raise GradingCosetMismatch("no grading-preserving maps between different cosets")
    parities = {int(g - a.gradings[0]) % 2 for g in a.gradings}
    if not parities & {int(g - a.gradings[0]) % 2 for g in b.gradings}:
        raise GradingCosetMismatch("no grading-preserving maps: gradings never differ by an even integer")


def find_local_map(a: IotaComplex, b: IotaComplex, guard: int = DEFAULT_GUARD) -> LocalMapWitness | None:
    """Lexicographically least local map ``a -> b``, or ``None`` if none exists."""
    _check_cosets(a, b)
    if a.n * b.n > guard:
        raise SearchTooLarge(f"{a.n} x {b.n} generators exceeds the guard {guard}")
    ca, cb = a.complex, b.complex
    A_chain, fpos = sandwich_system(ca, cb, 0, cb.differential, ca.differential)
    A_twist, _ = sandwich_system(ca, cb, 0, b.iota, a.iota)
    A_hom, hpos = homotopy_system(ca, cb, 1)
    mf, mh = len(fpos), len(hpos)
    if mf == 0:
        return None
    ta, _ = ca.tower_cycle()
    pinv_row = cb._reduction.Pinv[cb.tower_index()]
    tower_row = np.array([pinv_row[y] & ta[x] for y, x in fpos], dtype=np.uint8)
    rows = A_chain.shape[0]
    A = np.zeros((2 * rows + 1, mf + mh), dtype=np.uint8)
    A[:rows, :mf] = A_chain
    A[rows:2 * rows, :mf] = A_twist
    A[rows:2 * rows, mf:] = A_hom
    A[-1, :mf] = tower_row
    rhs = np.zeros(A.shape[0], dtype=np.uint8)
    rhs[-1] = 1
    keep = A.any(axis=1) | (rhs == 1)
    sol = K.solve_lexmin(A[keep], rhs[keep])
    if sol is None:
        return None
    fb = np.zeros((cb.n, ca.n), dtype=np.uint8)
    hb = np.zeros((cb.n, ca.n), dtype=np.uint8)
    for j in np.flatnonzero(sol[:mf]):
        y, x = fpos[j]
        fb[y, x] = 1
    for j in np.flatnonzero(sol[mf:]):
        y, x = hpos[j]
        hb[y, x] = 1
    return LocalMapWitness(
        a, b, MonomialMatrix(fb, ca.gradings, cb.gradings, 0), MonomialMatrix(hb, ca.gradings, cb.gradings, 1)
    )


def leq(a: IotaComplex, b: IotaComplex, guard: int = DEFAULT_GUARD) -> bool:
    """Equal d-invariants and a local map from ``a`` to ``b``."""
    if d_invariant(a.complex) != d_invariant(b.complex):
        return False
    return find_local_map(a, b, guard) is not None


def locally_equivalent(a: IotaComplex, b: IotaComplex, guard: int = DEFAULT_GUARD) -> bool:
    return find_local_map(a, b, guard) is not None and find_local_map(b, a, guard) is not None


def equivalent_up_to_shift(a: IotaComplex, b: IotaComplex, guard: int = DEFAULT_GUARD) -> bool:
    """Regrade ``b`` so the d-invariants agree, then test local equivalence."""
    delta = d_invariant(b.complex) - d_invariant(a.complex)
    return locally_equivalent(a, iota_shift(b, delta), guard)


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------


def _localised_tower_test(c: GradedComplex, grading) -> np.ndarray:
    """Rows pairing nontrivially with a homogeneous cycle exactly when it is non-torsion.

    After inverting U the cycle is non-torsion iff it is not a boundary, and
    in a fixed grading the localised complex is a finite F2 vector space on
    the generators of matching parity.
    """
    same = np.array([(g - grading).denominator == 1 and (g - grading) % 2 == 0 for g in c.gradings])
    other = np.array([(g - grading).denominator == 1 and (g - grading) % 2 == 1 for g in c.gradings])
    sub = c.differential[np.ix_(same, other)]
    left_null = K.nullspace(sub.T) if sub.size else np.eye(int(same.sum()), dtype=np.uint8)
    out = np.zeros((left_null.shape[0], c.n), dtype=np.uint8)
    out[:, np.flatnonzero(same)] = left_null
    return out


def brute_force_count(a: IotaComplex, b: IotaComplex, max_bits: int = 22) -> tuple[int, int]:
    """Enumerate every degree-0 matrix ``a -> b`` and count the local maps.

    Independent of :func:`find_local_map`: chain and twist conditions are
    checked by direct multiplication per candidate and the tower condition
    uses the localised complex rather than the reduced basis.  Returns
    ``(count, number_of_candidates)``.
    """
    _check_cosets(a, b)
    ca, cb = a.complex, b.complex
    E = exponent_matrix(ca.gradings, cb.gradings, 0)
    cols, rows = np.nonzero((E >= 0).T)
    if rows.size > max_bits:
        raise SearchTooLarge(f"{rows.size} free entries exceeds {max_bits}")
    # source tower cycle from the same localised viewpoint: any cycle in the
    # top tower grading that is non-torsion
    ta, g = ca.tower_cycle()
    Kt = _localised_tower_test(cb, g)
    A_hom, _ = homotopy_system(ca, cb, 1)
    L = K.nullspace(A_hom.T) if A_hom.shape[1] else np.eye(A_hom.shape[0], dtype=np.uint8)
    count, _ = K.enumerate_local_maps(
        rows, cols, ca.differential, cb.differential, a.iota, b.iota, ta, Kt, L
    )
    return int(count), 1 << int(rows.size)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass
class RankCertificate:
    entries: list = field(default_factory=list)  # (label, n_i, d_i, witness)
    selected: tuple = ()

    def to_json(self) -> dict:
        return {
            "entries": [
                {"label": lab, "index": n, "shift": str(d), "witness": w.to_json()} for lab, n, d, w in self.entries
            ],
            "selected": list(self.selected),
        }


def _same_structure(a: IotaComplex, b: IotaComplex) -> bool:
    """Equal gradings, differential and involution; generator names may differ."""
    return (
        a.gradings == b.gradings
        and np.array_equal(a.complex.differential, b.complex.differential)
        and np.array_equal(a.iota, b.iota)
    )


def greedy_increasing(indices) -> tuple:
    out: list = []
    for n in indices:
        if not out or n > out[-1]:
            out.append(n)
    return tuple(out)


def build_certificate(classes, targets, witnesses=None, guard: int = DEFAULT_GUARD) -> RankCertificate:
    """Verify a local map from each class to ``X_{n_i}[d_i]`` and select increasing indices.

    ``witnesses`` may supply precomputed maps (for classes too large for the
    affine solver); each is re-verified and its target checked.
    """
    if len(classes) != len(targets):
        raise ValueError("one target per class is required")
    cert = RankCertificate()
    for k, ((label, cls), (n, d)) in enumerate(zip(classes, targets)):
        target = iota_shift(make_X(n), d)
        w = witnesses[k] if witnesses is not None else None
        if w is None:
            w = find_local_map(cls, target, guard)
            if w is None:
                raise ValueError(f"no local map from {label} to X_{n}[{d}]")
        if not (_same_structure(w.target, target) and _same_structure(w.source, cls)):
            raise ValueError(f"witness for {label} does not connect the stated complexes")
        if not w.verify():
            raise ValueError(f"witness for {label} fails verification")
        if d_invariant(cls.complex) != d_invariant(target.complex):
            raise ValueError(f"d-invariants of {label} and X_{n}[{d}] differ")
        cert.entries.append((label, n, d, w))
    cert.selected = greedy_increasing([e[1] for e in cert.entries])
    if len(cert.selected) < 2:
        raise EmptySelection("no strictly increasing subsequence of length two")
    return cert
