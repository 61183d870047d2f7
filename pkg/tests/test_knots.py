from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from artifact.errors import KnotSyntaxError, NotLSpaceForm, SemanticError, UnsupportedLeaf
from artifact.knots import (
    AlexPoly,
    Cable,
    GenusOneClass,
    LatticeCFK,
    Mirror,
    Multiple,
    Staircase,
    Sum,
    ThinClass,
    Torus,
    Unknot,
    alexander,
    lattice_model,
    term_count_lower_bound,
    nonzero_term_count,
    parse_knot,
    reduce_genus_one,
    reduce_genus_one_sum,
    song_decomposition,
    split_signs,
    staircase_model,
    tau,
    thin_model,
    to_text,
    torus_alexander,
    v0,
    v0_connected_sum,
    v0_lower_bound,
    v0_lspace,
    v0_pareto,
)

from oracles import alexander_by_semigroup, bl_min_max, coprime_pairs, staircase_corners_from_poly

TORUS_8 = coprime_pairs(8)
TORUS_12 = coprime_pairs(12)


# -- expressions -----------------------------------------------------------

leaf = st.one_of(
    st.just(Unknot()),
    st.sampled_from([Torus(p, q) for p, q in TORUS_8]),
    st.builds(ThinClass, st.integers(-4, 4), st.booleans()),
    st.builds(GenusOneClass, st.integers(-1, 1)),
)


def _extend(children):
    return st.one_of(
        st.builds(Mirror, children),
        st.builds(Multiple, st.integers(0, 4), children),
        st.builds(lambda q, c: Cable(2, q, c), st.sampled_from([-5, -3, 1, 3, 5]), children),
        st.builds(lambda ts: Sum(tuple(ts)), st.lists(children, min_size=2, max_size=3)),
    )


exprs = st.recursive(leaf, _extend, max_leaves=6)


@given(exprs)
def test_print_parse_round_trip(e):
    assert parse_knot(to_text(e)) == e


@pytest.mark.parametrize(
    "text,expected",
    [
        ("T(2,3)", Torus(2, 3)),
        ("-T(2,3)", Mirror(Torus(2, 3))),
        ("10*T(2,3)", Multiple(10, Torus(2, 3))),
        ("T(2,3) - T(3,4)", Sum((Torus(2, 3), Mirror(Torus(3, 4))))),
        ("cable(2,5; T(2,3))", Cable(2, 5, Torus(2, 3))),
        ("thin(-2, box)", ThinClass(-2, True)),
        ("g1(-1)", GenusOneClass(-1)),
        ("2*(T(2,5) - cable(2,5; g1(1)))", Multiple(2, Sum((Torus(2, 5), Mirror(Cable(2, 5, GenusOneClass(1))))))),
    ],
)
def test_parse_examples(text, expected):
    assert parse_knot(text) == expected


@pytest.mark.parametrize("text,pos", [("T(2,3", 5), ("T(2 3)", 4), ("T(2,3) $", 7), ("", 0), ("3*", 2)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(KnotSyntaxError) as info:
        parse_knot(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text", ["T(2,4)", "T(1,3)", "cable(2,4; T(2,3))", "g1(2)", "cable(1,3; T(2,3))"])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_knot(text)


# -- Alexander polynomials -------------------------------------------------


@pytest.mark.parametrize("p,q", TORUS_12)
def test_torus_alexander_matches_semigroup(p, q):
    assert torus_alexander(p, q).coeffs == alexander_by_semigroup(p, q)


@given(exprs)
@settings(max_examples=40)
def test_alexander_symmetric_and_normalised(e):
    try:
        d = alexander(e)
    except UnsupportedLeaf:
        return
    assert d.is_symmetric()
    assert d.at_one() == 1


def test_cable_alexander():
    # Delta_{(T23)_{2,5}}(t) = Delta_{T23}(t^2) * Delta_{T25}(t)
    got = alexander(parse_knot("cable(2,5; T(2,3))"))
    expect = AlexPoly({2: 1, -2: 1, 0: -1}) * torus_alexander(2, 5)
    assert got == expect
    assert got.coeffs == {4: 1, 3: -1, 0: 1, -3: -1, -4: 1}


def test_alexander_str():
    assert str(torus_alexander(2, 3)) == "t - 1 + t^-1"


@pytest.mark.parametrize("p,q", TORUS_12)
def test_song_count(p, q):
    count, (x, y, u, v) = nonzero_term_count(p, q)
    assert min(x, y, u, v) >= 1
    assert v * x - u * y == 1 and x + y == p and u + v == q
    assert count == len(alexander_by_semigroup(p, q))
    assert count >= max(p, q)


def test_song_fixtures():
    assert nonzero_term_count(2, 3) == (3, (1, 1, 1, 2))
    assert song_decomposition(3, 4) == (1, 2, 1, 3)


# -- staircases and V0 -----------------------------------------------------


def test_staircase_t34():
    st_ = Staircase.from_alexander(torus_alexander(3, 4))
    assert st_.exponents == (3, 2, 0, -2, -3)
    assert st_.gradings == ((0, 3), (-1, 2), (-2, 0), (-5, -2), (-6, -3))
    assert st_.corners == ((0, 3), (1, 1), (3, 0))


def test_non_lspace_rejected():
    with pytest.raises(NotLSpaceForm):
        Staircase.from_alexander(torus_alexander(2, 3) ** 2)


@pytest.mark.parametrize("p,q", TORUS_8)
def test_v0_lspace_equals_corner_minimum(p, q):
    d = torus_alexander(p, q)
    corners = staircase_corners_from_poly(d.coeffs)
    assert Staircase.from_alexander(d).corners == tuple(corners)
    assert v0_lspace(d) == bl_min_max([corners])


@pytest.mark.parametrize("p,q", TORUS_12)
def test_term_count_lower_bound(p, q):
    d = torus_alexander(p, q)
    assert v0_lspace(d) >= term_count_lower_bound(d) == (len(d.coeffs) - 1) // 4


@given(st.lists(st.sampled_from(TORUS_8[:8]), min_size=1, max_size=4))
@settings(max_examples=40)
def test_connected_sum_methods_agree(pairs):
    stairs = [Staircase.from_alexander(torus_alexander(p, q)) for p, q in pairs]
    corners = [staircase_corners_from_poly(torus_alexander(p, q).coeffs) for p, q in pairs]
    expected = bl_min_max(corners)
    assert v0_connected_sum(stairs) == expected
    assert v0_pareto(stairs) == expected
    assert expected >= len(stairs) // 2


@pytest.mark.parametrize("text", ["T(2,3)", "2*T(2,3)", "T(2,5) + T(2,3)", "T(3,4) + T(2,3)", "T(2,3) - T(2,5)",
                                  "T(3,4) - T(2,3)", "2*T(2,3) - T(2,3)", "cable(2,5; T(2,3))"])
def test_lattice_v0_matches_closed_forms(text):
    k = parse_knot(text)
    model = lattice_model(k)
    assert model.V0() == v0(k).value


@pytest.mark.parametrize("text", ["T(2,3)", "2*T(2,3)", "T(3,4)", "T(3,4) - T(2,3)", "thin(3)", "thin(2, box)"])
def test_ni_wu_sandwich_and_symmetry(text):
    model = lattice_model(parse_knot(text))
    g = int(abs(model.alexander).max())
    vs = {s: model.Vs(s) for s in range(-g - 1, g + 2)}
    for s in range(-g - 1, g + 1):
        assert vs[s] - 1 <= vs[s + 1] <= vs[s]
    for s in range(0, g + 2):
        assert vs[0] - s <= vs[s] <= vs[0]
        assert vs[-s] == vs[s] + s
    assert vs[g + 1] == 0


THIN_CASES = [(t, box) for t in (-4, -3, -2, -1, 1, 2, 3, 4) for box in (False, True) if not (box and t % 2)]


@pytest.mark.parametrize("t,box", THIN_CASES)
def test_thin_v0_formula(t, box):
    model = thin_model(t, box)
    expect = max(0, -(-t // 2))
    assert model.V0() == expect
    assert v0(ThinClass(t, box)).value == expect


def test_thin_model_involution_validates():
    for t in (-2, -4):
        for box in (False, True):
            thin_model(t, box).large_surgery_iota().homotopy


def test_mirror_negates_tau():
    for text in ["T(3,5)", "thin(3)", "cable(2,7; T(2,3))"]:
        k = parse_knot(text)
        assert tau(Mirror(k)) == -tau(k)


def test_tau_values():
    assert tau(parse_knot("5*T(2,3)")) == 5
    assert tau(parse_knot("2*T(3,4)")) == 6
    assert tau(parse_knot("cable(2,5; T(2,3))")) == 4
    assert tau(parse_knot("thin(-3, box)")) == -3


def test_genus_one_rewrite():
    assert reduce_genus_one(parse_knot("cable(2,5; g1(1))")) == Cable(2, 5, Torus(2, 3))
    assert reduce_genus_one_sum(parse_knot("g1(1) + g1(1) - g1(-1)")) == Multiple(3, Torus(2, 3))
    assert reduce_genus_one_sum(parse_knot("g1(1) - g1(1)")) == Unknot()
    with pytest.raises(UnsupportedLeaf):
        reduce_genus_one_sum(parse_knot("g1(1) + T(2,3)"))


def test_v0_dispatch():
    assert v0(parse_knot("10*T(2,3)")).method == "thin"
    assert v0(parse_knot("4*T(3,4)")).method == "corner-tuples"
    assert v0(parse_knot("40*T(3,4)")).method == "pareto"
    assert v0(parse_knot("-T(3,4)")).method == "negative-lspace"
    assert v0(parse_knot("T(3,4) - T(2,3)")).method == "lattice"
    assert v0(parse_knot("40*T(3,4)")).value == 40


def test_lower_bound_for_large_mixed_sum():
    k = parse_knot("10*T(2,3) - 4*T(3,4)")
    with pytest.raises(UnsupportedLeaf):
        v0(k)
    assert v0_lower_bound(k) == (1, 5, 4)
    pos, neg = split_signs(k)
    assert pos == Multiple(10, Torus(2, 3)) and neg == Multiple(4, Torus(3, 4))


def test_lattice_mirror_and_unknot():
    u = LatticeCFK.unknot()
    assert u.V0() == 0
    st_ = staircase_model(Staircase.from_alexander(torus_alexander(2, 3)))
    assert st_.mirror().V0() == 0
    assert st_.tensor(st_.mirror()).V0() == 0


def test_box_needs_even_height():
    with pytest.raises(ValueError):
        thin_model(3, True)
