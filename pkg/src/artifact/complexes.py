"""Free graded chain complexes over F2[U], with U of degree -2.

A homogeneous map between free modules has monomial entries, and the power
of U on an entry is forced by the gradings of its endpoints.  Maps are
therefore stored as 0/1 matrices, with the exponents recomputed on demand:
an entry from ``x`` to ``y`` in a map of degree ``deg`` carries
``U^k`` with ``gr(y) - 2k = gr(x) + deg``.  Composition of homogeneous maps
is then plain matrix multiplication over F2.

Gradings are exact :class:`fractions.Fraction` values.  Within one complex
they must share a coset of the integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import GradingError, NotAChainMap, NotAnIotaCandidate

Grading = Fraction


def as_grading(value) -> Fraction:
    if isinstance(value, (list, tuple)):
        return Fraction(int(value[0]), int(value[1]))
    return Fraction(value)


def _coset_offsets(gradings: Sequence[Fraction]) -> tuple[Fraction, np.ndarray]:
    """Split gradings as ``base + integer offsets``; raise if cosets differ."""
    if not gradings:
        return Fraction(0), np.zeros(0, dtype=np.int64)
    base = min(gradings)
    offs = []
    for g in gradings:
        d = g - base
        if d.denominator != 1:
            raise GradingError(f"gradings {base} and {g} lie in different cosets of Z")
        offs.append(int(d))
    return base, np.asarray(offs, dtype=np.int64)


def exponent_matrix(src: Sequence[Fraction], tgt: Sequence[Fraction], degree) -> np.ndarray:
    """``E[y, x]`` is the forced U-power of an entry x -> y, or -1 if none exists."""
    degree = Fraction(degree)
    E = np.full((len(tgt), len(src)), -1, dtype=np.int64)
    if not src or not tgt:
        return E
    bs, os_ = _coset_offsets(src)
    bt, ot = _coset_offsets(tgt)
    delta = bt - bs - degree
    if delta.denominator != 1:
        return E
    twice_k = ot[:, None] - os_[None, :] + int(delta)
    ok = (twice_k >= 0) & (twice_k % 2 == 0)
    E[ok] = twice_k[ok] // 2
    return E


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.uint8, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MonomialMatrix:
    """A homogeneous F2[U]-linear map between free modules.

    ``bits[y, x] = 1`` records a monomial entry from source generator ``x``
    to target generator ``y``; its U-power is given by :attr:`exponents`.
    """

    bits: np.ndarray
    source_gradings: tuple
    target_gradings: tuple
    degree: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "bits", _frozen(self.bits))
        object.__setattr__(self, "source_gradings", tuple(as_grading(g) for g in self.source_gradings))
        object.__setattr__(self, "target_gradings", tuple(as_grading(g) for g in self.target_gradings))
        object.__setattr__(self, "degree", Fraction(self.degree))
        if self.bits.shape != (len(self.target_gradings), len(self.source_gradings)):
            raise ValueError("bit matrix shape does not match the gradings")
        bad = (self.bits == 1) & (self.exponents < 0)
        if bad.any():
            y, x = map(int, np.argwhere(bad)[0])
            raise GradingError(f"entry {x}->{y} is not homogeneous of degree {self.degree}")

    @cached_property
    def exponents(self) -> np.ndarray:
        return exponent_matrix(self.source_gradings, self.target_gradings, self.degree)

    @classmethod
    def zero(cls, src, tgt, degree=0) -> "MonomialMatrix":
        return cls(np.zeros((len(tgt), len(src)), dtype=np.uint8), tuple(src), tuple(tgt), degree)

    @classmethod
    def from_entries(cls, src, tgt, degree, entries: Iterable[tuple[int, int, int]]) -> "MonomialMatrix":
        """Build from ``(source index, target index, upow)`` triples, checking each power."""
        src = tuple(as_grading(g) for g in src)
        tgt = tuple(as_grading(g) for g in tgt)
        E = exponent_matrix(src, tgt, degree)
        bits = np.zeros((len(tgt), len(src)), dtype=np.uint8)
        for x, y, k in entries:
            if E[y, x] != k:
                raise GradingError(
                    f"entry {x}->{y} with U^{k} is not homogeneous of degree {degree} "
                    f"(gradings {src[x]} -> {tgt[y]})"
                )
            bits[y, x] ^= 1
        return cls(bits, src, tgt, degree)

    def entries(self) -> list[tuple[int, int, int]]:
        """Nonzero entries as ``(source index, target index, upow)``, column-major."""
        out = []
        for x in range(self.bits.shape[1]):
            for y in np.flatnonzero(self.bits[:, x]):
                out.append((x, int(y), int(self.exponents[y, x])))
        return out

    def compose(self, first: "MonomialMatrix") -> "MonomialMatrix":
        """``self o first``."""
        if first.target_gradings != self.source_gradings:
            raise ValueError("cannot compose: gradings do not line up")
        return MonomialMatrix(
            K.matmul(self.bits, first.bits),
            first.source_gradings,
            self.target_gradings,
            self.degree + first.degree,
        )

    def __add__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if (
            other.source_gradings != self.source_gradings
            or other.target_gradings != self.target_gradings
            or other.degree != self.degree
        ):
            raise ValueError("cannot add maps with different shapes or degrees")
        return MonomialMatrix(self.bits ^ other.bits, self.source_gradings, self.target_gradings, self.degree)

    def transpose(self) -> "MonomialMatrix":
        """The dual map between dual modules (gradings negated, same degree)."""
        return MonomialMatrix(
            self.bits.T,
            tuple(-g for g in self.target_gradings),
            tuple(-g for g in self.source_gradings),
            self.degree,
        )

    def is_zero(self) -> bool:
        return not self.bits.any()


@dataclass(frozen=True)
class HomologyDescription:
    """``F2[U]`` tower with top in ``tower_grading`` plus torsion ``(grading, length)``."""

    tower_grading: Fraction
    torsion: tuple

    def to_json(self) -> dict:
        return {
            "tower": [self.tower_grading.numerator, self.tower_grading.denominator],
            "torsion": [[[g.numerator, g.denominator], n] for g, n in self.torsion],
        }


@dataclass(frozen=True)
class _Reduction:
    partner: np.ndarray
    is_source: np.ndarray
    P: np.ndarray
    Pinv: np.ndarray

    @property
    def free(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.partner < 0)]


@dataclass(frozen=True, eq=False)
class GradedComplex:
    """Free, finitely generated chain complex over F2[U].

    ``differential[y, x] = 1`` when ``d(x)`` has a ``U^k y`` term; the
    powers are implied by the gradings (degree -1).
    """

    names: tuple
    gradings: tuple
    differential: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        object.__setattr__(self, "gradings", tuple(as_grading(g) for g in self.gradings))
        object.__setattr__(self, "differential", _frozen(self.differential))
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("generator names must be distinct")
        if len(self.gradings) != n or self.differential.shape != (n, n):
            raise ValueError("names, gradings and differential disagree in size")
        _coset_offsets(self.gradings)
        bad = (self.differential == 1) & (self.exponents < 0)
        if bad.any():
            y, x = map(int, np.argwhere(bad)[0])
            raise GradingError(f"differential entry {self.names[x]}->{self.names[y]} is not homogeneous")
        if K.matmul(self.differential, self.differential).any():
            raise ValueError("differential does not square to zero")

    # -- construction ------------------------------------------------------
    @classmethod
    def from_entries(cls, generators, entries) -> "GradedComplex":
        """``generators``: ``(name, grading)``; ``entries``: ``(from, to, upow)`` by name."""
        names = [g[0] for g in generators]
        grs = [as_grading(g[1]) for g in generators]
        index = {n: i for i, n in enumerate(names)}
        dmat = MonomialMatrix.from_entries(
            grs, grs, -1, [(index[a], index[b], int(k)) for a, b, k in entries]
        )
        return cls(tuple(names), tuple(grs), dmat.bits)

    @classmethod
    def trivial(cls, grading=0, name: str = "g") -> "GradedComplex":
        return cls((name,), (as_grading(grading),), np.zeros((1, 1), dtype=np.uint8))

    # -- basic data --------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def exponents(self) -> np.ndarray:
        return exponent_matrix(self.gradings, self.gradings, -1)

    @property
    def d(self) -> MonomialMatrix:
        return MonomialMatrix(self.differential, self.gradings, self.gradings, -1)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def entries(self) -> list[tuple[str, str, int]]:
        return [(self.names[x], self.names[y], k) for x, y, k in self.d.entries()]

    def same_as(self, other: "GradedComplex") -> bool:
        return (
            self.names == other.names
            and self.gradings == other.gradings
            and np.array_equal(self.differential, other.differential)
        )

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        order = sorted(range(self.n), key=lambda i: (-self.gradings[i], self.names[i]))
        gens = [
            {"name": self.names[i], "grading": [self.gradings[i].numerator, self.gradings[i].denominator]}
            for i in order
        ]
        rank = {i: r for r, i in enumerate(order)}
        ents = sorted(self.d.entries(), key=lambda e: (rank[e[0]], rank[e[1]]))
        diff = [{"from": self.names[x], "to": self.names[y], "upow": k} for x, y, k in ents]
        return {"generators": gens, "differential": diff}

    @classmethod
    def from_json(cls, data) -> "GradedComplex":
        if isinstance(data, str):
            data = json.loads(data)
        gens = [(g["name"], as_grading(g["grading"])) for g in data["generators"]]
        ents = [(e["from"], e["to"], e["upow"]) for e in data.get("differential", [])]
        return cls.from_entries(gens, ents)

    # -- homology ----------------------------------------------------------
    @cached_property
    def _reduction(self) -> _Reduction:
        E = self.exponents
        _, P, Pinv, partner, is_source = K.reduce_graded(self.differential, E)
        return _Reduction(partner, is_source, P, Pinv)

    @cached_property
    def homology_summands(self) -> tuple[list[Fraction], list[tuple[Fraction, int]]]:
        """Free generator gradings and torsion summands, with no rank check."""
        red = self._reduction
        free = sorted((self.gradings[i] for i in red.free), reverse=True)
        torsion = []
        for x in np.flatnonzero(red.is_source):
            y = int(red.partner[x])
            k = int(self.exponents[y, x])
            if k > 0:
                torsion.append((self.gradings[y], k))
        torsion.sort(key=lambda t: (-t[0], -t[1]))
        return free, torsion

    def tower_index(self) -> int:
        free = self._reduction.free
        if len(free) != 1:
            raise NotAnIotaCandidate(f"U-localised homology has rank {len(free)}, expected 1")
        return free[0]

    def tower_cycle(self) -> tuple[np.ndarray, Fraction]:
        """A homogeneous cycle generating the tower, as bits in the original basis."""
        t = self.tower_index()
        return self._reduction.P[:, t].copy(), self.gradings[t]

    def tower_coordinate(self, bits: np.ndarray) -> int:
        """Coefficient (0/1) of a homogeneous cycle on the tower generator.

        For a cycle this is nonzero exactly when its class is not U-torsion.
        """
        t = self.tower_index()
        return int(np.dot(self._reduction.Pinv[t].astype(np.int64), np.asarray(bits, dtype=np.int64)) & 1)


def homology(c: GradedComplex) -> HomologyDescription:
    """Exact F2[U]-module decomposition; raises NotAnIotaCandidate unless rank one."""
    free, torsion = c.homology_summands
    if len(free) != 1:
        raise NotAnIotaCandidate(f"U-localised homology has rank {len(free)}, expected 1")
    return HomologyDescription(free[0], tuple(torsion))


def d_invariant(c: GradedComplex) -> Fraction:
    return homology(c).tower_grading


def dual(c: GradedComplex) -> GradedComplex:
    return GradedComplex(c.names, tuple(-g for g in c.gradings), c.differential.T)


def shift(c: GradedComplex, delta) -> GradedComplex:
    """``c[delta]``: every grading lowered by ``delta``."""
    delta = as_grading(delta)
    return GradedComplex(c.names, tuple(g - delta for g in c.gradings), c.differential)


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b).astype(np.uint8)


def tensor_names(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    return tuple(f"{x}⊗{y}" for x in a for y in b)


def tensor(a: GradedComplex, b: GradedComplex) -> GradedComplex:
    ia = np.eye(a.n, dtype=np.uint8)
    ib = np.eye(b.n, dtype=np.uint8)
    dmat = _kron(a.differential, ib) ^ _kron(ia, b.differential)
    grs = tuple(x + y for x in a.gradings for y in b.gradings)
    return GradedComplex(tensor_names(a.names, b.names), grs, dmat)


def is_chain_map(f: MonomialMatrix, a: GradedComplex, b: GradedComplex) -> bool:
    return not (K.matmul(b.differential, f.bits) ^ K.matmul(f.bits, a.differential)).any()


def mapping_cone(f: MonomialMatrix, a: GradedComplex, b: GradedComplex,
                 labels: tuple[str, str] = ("a", "b")) -> GradedComplex:
    """Cone with differential ``(d_a, f + d_b)``.

    Source generators are regraded by ``deg(f) + 1`` so that the cone
    differential has degree -1; target gradings are unchanged.
    """
    if f.source_gradings != a.gradings or f.target_gradings != b.gradings:
        raise ValueError("map gradings do not match the given complexes")
    if not is_chain_map(f, a, b):
        raise NotAChainMap("d_b f != f d_a")
    lift = f.degree + 1
    names = tuple(f"{labels[0]}:{x}" for x in a.names) + tuple(f"{labels[1]}:{y}" for y in b.names)
    grs = tuple(g + lift for g in a.gradings) + b.gradings
    n = a.n + b.n
    dmat = np.zeros((n, n), dtype=np.uint8)
    dmat[: a.n, : a.n] = a.differential
    dmat[a.n:, : a.n] = f.bits
    dmat[a.n:, a.n:] = b.differential
    return GradedComplex(names, grs, dmat)


def identity_map(c: GradedComplex) -> MonomialMatrix:
    return MonomialMatrix(np.eye(c.n, dtype=np.uint8), c.gradings, c.gradings, 0)
