from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from artifact.errors import ParityError
from artifact.tangles import (
    PAIRING_INF,
    PAIRING_ZERO,
    cf_eval,
    cf_expand,
    declare_pattern,
    format_pairing,
    is_proper,
    mirror,
    pairing_of,
    rational_tangle_pattern,
    tangle_word,
    whitehead_pattern,
)


def _pairing_by_parity(p, q):
    """Closed form for the endpoint pairing: it depends only on (p mod 2, q mod 2)."""
    if q % 2 == 0:
        return PAIRING_INF
    if p % 2 == 0:
        return PAIRING_ZERO
    return frozenset({frozenset({"NW", "SE"}), frozenset({"NE", "SW"})})


@pytest.mark.parametrize("pq,xs", [((21, 16), [1, 3, 5]), ((1, 2), [0, 2]), ((0, 1), []), ((1, 0), [0, 0]),
                                   ((-7, 3), [-3, 1, 2]), ((4, 2), [2])])
def test_cf_fixtures(pq, xs):
    assert cf_expand(*pq) == xs


def test_cf_eval_fixtures():
    assert cf_eval([1, 3, 5]) == (21, 16)
    assert cf_eval([]) == (0, 1)
    assert cf_eval([0, 0]) == (1, 0)


@given(st.integers(-200, 200), st.integers(1, 200))
def test_cf_round_trip(p, q):
    g = gcd(p, q)
    assert cf_eval(cf_expand(p, q)) == (p // g, q // g)


@given(st.integers(-40, 40), st.integers(0, 40))
def test_pairing_depends_on_parities(p, q):
    if p == 0 and q == 0:
        return
    g = gcd(p, q)
    assert pairing_of(p, q) == _pairing_by_parity(p // g, q // g)
    assert is_proper(p, q) == (pairing_of(p, q) == PAIRING_INF)


def test_pairing_fixtures():
    assert format_pairing(pairing_of(1, 0)) == ["NE-SE", "NW-SW"]
    assert pairing_of(1, 2) == PAIRING_INF
    assert pairing_of(1, 1) != PAIRING_INF
    assert is_proper(21, 16) and is_proper(1, 2) and not is_proper(3, 1)


def test_tangle_word_bases():
    assert tangle_word(0, 1) == ([], "0")
    assert tangle_word(21, 16) == ([("h", 1), ("v", 3), ("h", 5)], "0")
    assert tangle_word(1, 2)[1] == "inf"


def test_whitehead_record():
    d = whitehead_pattern()
    assert d.coefficient == Fraction(1, 2)
    assert (d.parity, d.sign, abs(d.ell), d.proper) == ("even", "positive", 1, True)
    assert mirror(d).coefficient == Fraction(-1, 2)
    assert whitehead_pattern(-1, 1).coefficient == Fraction(3, 2)


def test_rational_pattern_records():
    r = rational_tangle_pattern(21, 16)
    assert r.parity == "even" and r.proper
    assert r.to_json()["coefficient"] == "21/16"
    assert rational_tangle_pattern(3, 1).parity == "odd"
    with pytest.raises(ParityError):
        rational_tangle_pattern(2, 3)
    with pytest.raises(ValueError):
        rational_tangle_pattern(1, 0)


def test_declared_pattern():
    r = declare_pattern(Fraction(5, 2), 3, "J")
    assert r.to_json()["ell"] == 3
    with pytest.raises(ParityError):
        declare_pattern(Fraction(4, 3), 1)
