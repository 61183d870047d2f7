"""Rational tangles, continued fractions and satellite pattern records."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from .errors import ParityError

INFINITY = (1, 0)

POINTS = ("NW", "NE", "SW", "SE")
# a pairing is stored as a frozenset of two frozensets of endpoint labels
PAIRING_INF = frozenset({frozenset({"NW", "SW"}), frozenset({"NE", "SE"})})
PAIRING_ZERO = frozenset({frozenset({"NW", "NE"}), frozenset({"SW", "SE"})})


def _reduced(p: int, q: int) -> tuple[int, int]:
    if q == 0:
        if p == 0:
            raise ZeroDivisionError("0/0 is not a slope")
        return INFINITY
    g = gcd(p, q)
    p, q = p // g, q // g
    return (-p, -q) if q < 0 else (p, q)


def cf_expand(p: int, q: int) -> list[int]:
    """Floor-based expansion ``[x_1, ..., x_n]`` with ``p/q = x_1 + 1/(x_2 + ...)``.

    ``0/1`` gives ``[]`` and ``1/0`` gives the sentinel ``[0, 0]``.
    """
    p, q = _reduced(p, q)
    if q == 0:
        return [0, 0]
    if p == 0:
        return []
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def cf_eval(xs) -> tuple[int, int]:
    """Reduced ``(p, q)`` with ``q >= 0``; the empty list evaluates to ``0/1``."""
    xs = list(xs)
    if not xs:
        return (0, 1)
    p, q = 1, 0  # value of the empty tail is infinity
    for x in reversed(xs):
        p, q = x * p + q, p
    return _reduced(p, q)


def tangle_word(p: int, q: int) -> tuple[list[tuple[str, int]], str]:
    """Twist word applied (rightmost first) to the base tangle ``"inf"`` or ``"0"``."""
    xs = cf_expand(p, q)
    if not xs:
        return [], "0"
    letters = ["h" if k % 2 == 0 else "v" for k in range(len(xs))]
    return list(zip(letters, xs)), ("inf" if len(xs) % 2 == 0 else "0")


def _apply(letter: str, pairing: frozenset) -> frozenset:
    swap = {"h": ("NE", "SE"), "v": ("SW", "SE")}[letter]

    def move(pt):
        return swap[1] if pt == swap[0] else swap[0] if pt == swap[1] else pt

    return frozenset(frozenset(move(pt) for pt in arc) for arc in pairing)


def connectivity(word, base: str) -> frozenset:
    """Endpoint pairing of ``word`` applied to ``T_inf`` or ``T_0``."""
    pairing = PAIRING_INF if base == "inf" else PAIRING_ZERO
    for letter, power in reversed(list(word)):
        if power % 2:
            pairing = _apply(letter, pairing)
    return pairing


def pairing_of(p: int, q: int) -> frozenset:
    return connectivity(*tangle_word(p, q))


def format_pairing(pairing: frozenset) -> list[str]:
    order = {pt: k for k, pt in enumerate(POINTS)}
    arcs = [sorted(arc, key=order.get) for arc in pairing]
    return sorted("-".join(a) for a in arcs)


def is_proper(p: int, q: int) -> bool:
    """The replacement of ``T_{p/q}`` by ``T_inf`` is proper exactly when ``q`` is even."""
    p, q = _reduced(p, q)
    return q % 2 == 0


# ---------------------------------------------------------------------------
# Pattern records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternRecord:
    coefficient: Fraction
    ell: int
    kind: str = "user-declared"
    label: str = ""

    def __post_init__(self):
        c = Fraction(self.coefficient)
        object.__setattr__(self, "coefficient", c)
        if c.numerator % 2 == 0:
            raise ParityError("the coefficient numerator must be odd")
        if self.kind not in ("rational-tangle-pattern", "user-declared"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "rational-tangle-pattern" and abs(self.ell) != 1:
            raise ValueError("rational tangle patterns have linking number +-1")

    @property
    def parity(self) -> str:
        return "even" if self.coefficient.denominator % 2 == 0 else "odd"

    @property
    def sign(self) -> str:
        return "positive" if self.coefficient > 0 else "negative"

    @property
    def proper(self) -> bool:
        return self.parity == "even"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "coefficient": f"{self.coefficient.numerator}/{self.coefficient.denominator}",
            "parity": self.parity,
            "sign": self.sign,
            "ell": abs(self.ell),
            "kind": self.kind,
            "proper": self.proper,
        }


def rational_tangle_pattern(p: int, q: int) -> PatternRecord:
    p, q = _reduced(p, q)
    if q == 0:
        raise ValueError("the infinity tangle does not give a pattern")
    return PatternRecord(Fraction(p, q), 1, "rational-tangle-pattern", f"R({p}/{q})")


def whitehead_pattern(clasp: int = 1, twists: int = 0) -> PatternRecord:
    """Whitehead double with clasp sign ``+-1`` and ``twists`` full twists: coefficient ``(clasp + 4 twists)/2``."""
    if clasp not in (1, -1):
        raise ValueError("clasp must be +1 or -1")
    return PatternRecord(Fraction(clasp + 4 * twists, 2), 1, "rational-tangle-pattern", f"D({clasp:+d},{twists})")


def declare_pattern(coefficient: Fraction, ell: int, label: str = "") -> PatternRecord:
    return PatternRecord(Fraction(coefficient), ell, "user-declared", label)


def mirror(rec: PatternRecord) -> PatternRecord:
    return replace(rec, coefficient=-rec.coefficient, label=f"-{rec.label}" if rec.label else "")


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


__all__ = [
    "cf_expand", "cf_eval", "tangle_word", "connectivity", "pairing_of", "format_pairing", "is_proper",
    "PatternRecord", "rational_tangle_pattern", "whitehead_pattern", "declare_pattern", "mirror",
    "PAIRING_INF", "PAIRING_ZERO", "parse_fraction",
]
