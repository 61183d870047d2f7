import numpy as np
import pytest

from artifact.complexes import GradedComplex
from artifact.errors import NoHomotopy, NotAChainMap
from artifact.iota import (
    IotaComplex,
    iota_dual,
    iota_shift,
    iota_tensor,
    make_X,
    make_X_dual,
    omega_squared_null,
    parse_named,
    trivial_iota,
    validate,
)

from corpus import small_corpus


@pytest.mark.parametrize("name", sorted(small_corpus()))
def test_corpus_members_are_iota_complexes(name):
    ic = small_corpus()[name]
    H = validate(ic)
    assert H.degree == 1
    assert omega_squared_null(ic)


def test_x_structure():
    x = make_X(2)
    assert x.names == ("x", "ix", "alpha")
    assert x.complex.entries() == [("alpha", "x", 2), ("alpha", "ix", 2)]
    assert make_X_dual(2).complex.entries() == [("x*", "alpha*", 2), ("ix*", "alpha*", 2)]


def test_dual_of_x_has_x_dual_structure():
    a, b = iota_dual(make_X(3)), make_X_dual(3)
    assert a.gradings == b.gradings
    assert np.array_equal(a.complex.differential, b.complex.differential)
    assert np.array_equal(a.iota, b.iota)


def test_iota_must_commute_with_d():
    c = GradedComplex.from_entries([("a", 0), ("b", 0), ("c", -1)], [("a", "c", 0)])
    iota = np.zeros((3, 3), dtype=np.uint8)
    iota[1, 0] = iota[0, 1] = iota[2, 2] = 1
    with pytest.raises(NotAChainMap):
        validate(IotaComplex(c, iota))


def test_iota_square_must_be_homotopic_to_identity():
    # a single free generator with iota = 0 gives iota^2 + 1 = 1, not nullhomotopic
    with pytest.raises(NoHomotopy):
        validate(IotaComplex(GradedComplex.trivial(), np.zeros((1, 1), dtype=np.uint8)))


def test_json_round_trip():
    ic = iota_shift(iota_tensor(make_X(1), make_X_dual(2)), 3)
    back = IotaComplex.from_json(ic.to_json())
    assert back.to_json() == ic.to_json()


def test_parse_named():
    assert parse_named("X(2)").same_as(make_X(2))
    assert parse_named("Xdual( 3 )").same_as(make_X_dual(3))
    with pytest.raises(ValueError):
        parse_named("Y(1)")


def test_trivial():
    t = trivial_iota(4)
    assert validate(t).is_zero()
    assert t.gradings == (4,)
