"""Knot expression syntax trees, a recursive-descent parser and a canonical printer.

Grammar::

    expr  := term (("+" | "-") term)*
    term  := INT "*" term | "-" term | atom
    atom  := "T(" INT "," INT ")" | "cable(" INT "," INT ";" expr ")"
           | "thin(" INT ["," "box"] ")" | "g1(" INT ")" | "unknot" | "(" expr ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from ..errors import KnotSyntaxError, SemanticError


class KnotExpr:
    """Base class for expression nodes."""

    def __add__(self, other: "KnotExpr") -> "Sum":
        return Sum((self, other))

    def __neg__(self) -> "Mirror":
        return Mirror(self)

    def __rmul__(self, n: int) -> "Multiple":
        return Multiple(n, self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Unknot(KnotExpr):
    pass


@dataclass(frozen=True)
class Torus(KnotExpr):
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise SemanticError(f"torus parameters must be at least 2, got ({self.p},{self.q})")
        if gcd(self.p, self.q) != 1:
            raise SemanticError(f"torus parameters ({self.p},{self.q}) are not coprime")


@dataclass(frozen=True)
class ThinClass(KnotExpr):
    """A thin knot entered by its tau, optionally carrying one unit box."""

    tau: int
    has_box: bool = False


@dataclass(frozen=True)
class GenusOneClass(KnotExpr):
    tau: int

    def __post_init__(self):
        if self.tau not in (-1, 0, 1):
            raise SemanticError("a genus one knot has tau in {-1, 0, 1}")


@dataclass(frozen=True)
class Mirror(KnotExpr):
    child: KnotExpr


@dataclass(frozen=True)
class Cable(KnotExpr):
    p: int
    q: int
    child: KnotExpr

    def __post_init__(self):
        if self.p < 2 or self.q == 0:
            raise SemanticError(f"cable parameters ({self.p},{self.q}) need p >= 2 and q != 0")
        if gcd(self.p, self.q) != 1:
            raise SemanticError(f"cable parameters ({self.p},{self.q}) are not coprime")


@dataclass(frozen=True)
class Sum(KnotExpr):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Multiple(KnotExpr):
    n: int
    child: KnotExpr

    def __post_init__(self):
        if self.n < 0:
            raise SemanticError("multiples must be non-negative; use a mirror for negatives")


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------


def to_text(e: KnotExpr) -> str:
    if isinstance(e, Unknot):
        return "unknot"
    if isinstance(e, Torus):
        return f"T({e.p},{e.q})"
    if isinstance(e, ThinClass):
        return f"thin({e.tau}, box)" if e.has_box else f"thin({e.tau})"
    if isinstance(e, GenusOneClass):
        return f"g1({e.tau})"
    if isinstance(e, Cable):
        return f"cable({e.p},{e.q}; {to_text(e.child)})"
    if isinstance(e, Mirror):
        return "-" + _wrapped(e.child)
    if isinstance(e, Multiple):
        return f"{e.n}*" + _wrapped(e.child)
    if isinstance(e, Sum):
        return " + ".join(f"({to_text(t)})" if isinstance(t, Sum) else to_text(t) for t in e.terms)
    raise TypeError(f"not a knot expression: {e!r}")


def _wrapped(e: KnotExpr) -> str:
    text = to_text(e)
    return f"({text})" if isinstance(e, (Sum, Multiple)) else text


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(T|cable|thin|g1|unknot|box)\b|([-+*(),;]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise KnotSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        kind = ("int", "word", "sym")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise KnotSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def integer(self) -> int:
        sign = -1 if self.peek()[1] == "-" else 1
        if sign < 0:
            self.take("-")
        return sign * int(self.take(kind="int")[1])

    def expr(self) -> KnotExpr:
        terms = [self.term()]
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            terms.append(t if op == "+" else Mirror(t))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> KnotExpr:
        kind, value, _ = self.peek()
        if kind == "int":
            n = int(self.take()[1])
            self.take("*")
            return Multiple(n, self.term())
        if value == "-":
            self.take()
            return Mirror(self.term())
        return self.atom()

    def atom(self) -> KnotExpr:
        kind, value, pos = self.peek()
        if value == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if kind != "word":
            raise KnotSyntaxError(f"unexpected {value or 'end of input'!r}", pos)
        self.take()
        if value == "unknot":
            return Unknot()
        self.take("(")
        if value == "T":
            p = self.integer()
            self.take(",")
            q = self.integer()
            self.take(")")
            return Torus(p, q)
        if value == "cable":
            p = self.integer()
            self.take(",")
            q = self.integer()
            self.take(";")
            child = self.expr()
            self.take(")")
            return Cable(p, q, child)
        if value == "thin":
            tau = self.integer()
            box = False
            if self.peek()[1] == ",":
                self.take(",")
                self.take("box")
                box = True
            self.take(")")
            return ThinClass(tau, box)
        if value == "g1":
            tau = self.integer()
            self.take(")")
            return GenusOneClass(tau)
        raise KnotSyntaxError(f"unexpected keyword {value!r}", pos)


def parse_knot(text: str) -> KnotExpr:
    p = _Parser(text)
    e = p.expr()
    kind, value, pos = p.peek()
    if kind != "end":
        raise KnotSyntaxError(f"trailing input {value!r}", pos)
    return e


# ---------------------------------------------------------------------------
# Structural helpers
# ---------------------------------------------------------------------------


def leaves(e: KnotExpr):
    """Yield every leaf node."""
    if isinstance(e, (Mirror, Multiple, Cable)):
        yield from leaves(e.child)
    elif isinstance(e, Sum):
        for t in e.terms:
            yield from leaves(t)
    else:
        yield e


def signed_summands(e: KnotExpr, sign: int = 1, mult: int = 1):
    """Flatten sums, multiples and mirrors into ``(sign, multiplicity, node)`` triples.

    Cables and leaves are returned as nodes.
    """
    if isinstance(e, Sum):
        for t in e.terms:
            yield from signed_summands(t, sign, mult)
    elif isinstance(e, Multiple):
        if e.n:
            yield from signed_summands(e.child, sign, mult * e.n)
    elif isinstance(e, Mirror):
        yield from signed_summands(e.child, -sign, mult)
    elif isinstance(e, Unknot):
        return
    else:
        yield sign, mult, e


def reverse(e: KnotExpr) -> KnotExpr:
    """Orientation reversal; knot Floer data cannot see it, so ``K^r`` is ``K`` here."""
    return e


__all__ = [
    "KnotExpr", "Unknot", "Torus", "ThinClass", "GenusOneClass", "Mirror", "Cable", "Sum", "Multiple",
    "parse_knot", "to_text", "leaves", "signed_summands", "reverse",
]
