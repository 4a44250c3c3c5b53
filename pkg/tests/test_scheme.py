from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from f1geom.abelian import AbGroup
from f1geom.monoid import (F1Group, FreeMonoid, MonoidError, all_monoids, f1, f1_cyclic, idempotent, ideals,
                           maximal_ideal, named_monoids, prime_ideals, spec_space, truncated_polynomial)
from f1geom.scheme import (CountingPoly, DescriptorError, NotACover, all_covers_contain_whole, base_projection,
                           base_projection_index, brute_force_points, counting_polynomial, cover_exactness, covers,
                           describe, open_subfunctor_points, p1, p1_base_projection, p1_points_of,
                           parse_descriptor, points_over_f1n, proj_line_points, realize)
from f1geom.space import GeoScheme, TopologyError

from oracles import homs_brute

DESCRIPTORS = ["P1", "affine:1", "affine:2", "affine:3", "torus:0", "torus:1", "torus:2", "mu:1", "mu:4", "mu:6"]


# --- descriptors ------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("P1", ("P1",)), ("affine:2", ("affine", 2)), ("torus:0", ("torus", 0)), ("mu:6", ("mu", 6)),
    ('{"scheme": "affine", "n": 3}', ("affine", 3)),
])
def test_parse_descriptor(text, expected):
    assert parse_descriptor(text) == expected


@pytest.mark.parametrize("bad", ["affine:0", "mu:0", "torus:-1", "affine:x", "plane", {"scheme": "mu"},
                                 {"scheme": "spec"}])
def test_parse_descriptor_rejects(bad):
    with pytest.raises(DescriptorError):
        parse_descriptor(bad)


def test_spec_descriptor_and_describe():
    d = parse_descriptor({"scheme": "spec", "monoid": {"free": 2}})
    assert d == ("spec", FreeMonoid(2))
    assert describe("affine:2") == "affine:2"
    assert describe("P1") == "P1"


# --- realizations -----------------------------------------------------------

def test_p1_shape():
    x = p1()
    assert x.points == ("0", "u", "inf")
    assert x.dims == (0, 1, 0)
    assert x.closure(1) == frozenset({0, 1, 2})
    assert x.closure(0) == frozenset({0})


def test_affine_line_realization():
    x = realize("affine:1")
    assert sorted(x.dims) == [0, 1]
    assert len(x.opens) == 3


def test_topology_checked():
    with pytest.raises(TopologyError):
        GeoScheme(("a", "b"), (frozenset(), frozenset({0, 1})), (AbGroup(), AbGroup()))
    with pytest.raises(TopologyError):
        GeoScheme(("a",), (frozenset(),), (AbGroup(),))


# --- counting ---------------------------------------------------------------

def test_p1_counts():
    x = p1()
    # two closed points with trivial units plus the generic point with units Z
    assert [points_over_f1n(x, n) for n in range(1, 6)] == [3, 4, 5, 6, 7]
    assert counting_polynomial(x).coefficients == (1, 1)
    assert str(counting_polynomial(x)) == "x + 1"


@pytest.mark.parametrize("n", range(1, 5))
def test_affine_counting_polynomial(n):
    poly = counting_polynomial(realize(f"affine:{n}"))
    assert poly.coefficients == (0,) * n + (1,)
    assert poly.shifted == tuple(comb(n, j) for j in range(n + 1))


def test_torus_counting_polynomial():
    # (x - 1)^2
    assert counting_polynomial(realize("torus:2")).coefficients == (1, -2, 1)
    assert str(counting_polynomial(realize("torus:2"))) == "x^2 - 2*x + 1"


def test_torsion_has_no_polynomial():
    poly = counting_polynomial(realize("mu:4"))
    assert not poly.torsion_free
    assert poly.raw_counter(6) == 2
    with pytest.raises(ValueError):
        poly(3)


def test_counting_poly_of():
    c = CountingPoly.of([1, 1, 0])
    assert c.coefficients == (1, 1)
    assert c.degree == 1
    assert c.raw_counter(4) == 6


def test_points_over_f1n_rejects_zero():
    with pytest.raises(ValueError):
        points_over_f1n(p1(), 0)


@pytest.mark.parametrize("desc", DESCRIPTORS)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_count_matches_morphism_enumeration(desc, n):
    if desc.startswith("affine") and n ** int(desc[-1]) > 300:
        pytest.skip("enumeration too large")
    assert points_over_f1n(realize(desc), n) == brute_force_points(desc, n)


@pytest.mark.parametrize("desc", [d for d in DESCRIPTORS if not d.startswith("mu")])
def test_polynomial_interpolates_counts(desc):
    # N(n + 1) = #X(F1^n)
    poly = counting_polynomial(realize(desc))
    for n in range(1, 8):
        assert poly(n + 1) == points_over_f1n(realize(desc), n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_monoids(4)), st.integers(1, 5))
def test_spec_counts_match_homs(m, n):
    x = realize(("spec", m))
    assert points_over_f1n(x, n) == len(homs_brute(m, f1_cyclic(n)))


# --- P1(M) ------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_monoids(4) + list(named_monoids().values())))
def test_p1_point_count(m):
    pts = proj_line_points(m)
    assert len(pts.points) == 2 * m.size - len(m.unit_set)
    assert len(pts.points) == len(p1_points_of(m))
    part = pts.partition()
    assert part["overlap"] == len(m.unit_set)
    assert part["e1"] == part["e2"] == m.size - len(m.unit_set)


def test_p1_over_f1():
    pts = proj_line_points(f1())
    assert len(pts.points) == 3
    assert sorted(p.part for p in pts.points) == ["e1", "e2", "overlap"]


def test_p1_over_group_monoid_matches_counting():
    for n in range(1, 6):
        assert len(proj_line_points(f1_cyclic(n)).points) == points_over_f1n(p1(), n)


def test_p1_base_projection():
    m = idempotent()
    e = m.element("e")
    assert p1_base_projection(m, 1, m.one) == "u"
    assert p1_base_projection(m, 1, e) == "0"
    assert p1_base_projection(m, 2, e) == "inf"
    with pytest.raises(ValueError):
        p1_base_projection(m, 3, e)


# --- base projection and open subfunctors ----------------------------------

def test_base_projection_of_identity_is_closed_point():
    from f1geom.monoid import MonoidHom

    m = idempotent()
    ident = MonoidHom(m, m, tuple(m.elements))
    assert base_projection(ident).members == maximal_ideal(m).members
    x = spec_space(m)
    assert base_projection_index(x, ident) == x.points.index(m.label_of(maximal_ideal(m).members))


def test_open_subfunctor_counts():
    m = idempotent()
    e = m.element("e")
    # D(eM)(F1): homs sending e to a unit of F1, i.e. e -> 1
    pts = open_subfunctor_points(m, {m.zero, e}, f1())
    assert len(pts) == 1 and pts[0](e) == 1
    with pytest.raises(MonoidError):
        open_subfunctor_points(m, {e}, f1())


# --- locality ---------------------------------------------------------------

def _proper_covers(m):
    return [[m.one, x] for x in m.elements if x != m.one]


@pytest.mark.parametrize("m", list(named_monoids().values()) + all_monoids(3))
@pytest.mark.parametrize("src", [FreeMonoid(1), f1_cyclic(2), idempotent()])
def test_cover_exactness(m, src):
    for cover in _proper_covers(m):
        assert cover_exactness(src, m, cover).passed


def test_not_a_cover():
    m = idempotent()
    with pytest.raises(NotACover):
        cover_exactness(FreeMonoid(1), m, [m.element("e")])
    assert not covers(m, [m.element("e")])
    assert covers(m, [m.one])


def test_nilpotent_cover_member_is_harmless():
    m = truncated_polynomial(3)
    rep = cover_exactness(F1Group(AbGroup(1)), m, [m.one, m.element("x")])
    assert rep.passed and rep.families == rep.descended


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_monoids(5)))
def test_every_cover_contains_the_whole_spectrum(m):
    assert all_covers_contain_whole(m)
    primes = prime_ideals(m)
    # only ideals meeting the units have D(I) = Spec M
    for i in ideals(m):
        if len(primes) and all(not i.members <= p.members for p in primes):
            assert m.one in i.members
