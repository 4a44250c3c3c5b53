from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from f1geom.abelian import AbGroup
from f1geom.monoid import (CapExceeded, F1Group, FreeMonoid, all_monoids, f1, f1_cyclic, f1_group, idempotent,
                           named_monoids, truncated_polynomial)
from f1geom.ringbridge import (EpsilonMonoid, MonoidRing, PrimeField, adjunction_check, epsilon_quotient, is_prime,
                               monoid_ring, mu_points_expected, ring_points, scheme_fq_points)
from f1geom.scheme import counting_polynomial, realize

from oracles import coker_finite, rational_rank

PRIMES = [2, 3, 5, 7]


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        MonoidRing(f1(), 4)


# --- Z[M] -------------------------------------------------------------------

def test_zero_of_monoid_is_ring_zero():
    r = monoid_ring(idempotent())
    assert r.rank == 2
    assert r.basis_vector(0) == r.zero()
    e = r.basis_vector(idempotent().element("e"))
    assert r.mul(e, e) == e
    assert str(r) == "Z[1, e]"


def test_group_ring_multiplication():
    m = f1_cyclic(3)
    r = monoid_ring(m)
    g = r.basis_vector(m.element("g"))
    assert r.mul(g, r.mul(g, g)) == r.one()
    # (1 + g)^2 = 1 + 2g + g^2
    one_g = r.add(r.one(), g)
    assert r.mul(one_g, one_g) == (1, 2, 1)


def test_coefficients_reduced_mod_p():
    m = f1_cyclic(2)
    r = monoid_ring(m, 2)
    s = r.basis_vector(m.element("g"))
    one_s = r.add(r.one(), s)
    assert r.mul(one_s, one_s) == r.zero()
    assert str(r) == "F_2[1, g]"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_monoids(5)))
def test_ring_axioms_hold_for_every_small_monoid(m):
    monoid_ring(m)  # the constructor checks the axioms on the basis


# --- Z[M] / (1 + eps) -------------------------------------------------------

def _rows(m, eps):
    r = MonoidRing(m)
    ope = r.add(r.one(), r.basis_vector(eps))
    return [r.mul(ope, r.basis_vector(b)) for b in r.basis], r.rank


def test_epsilon_quotient_sign_of_z2():
    m = f1_cyclic(2)
    q = epsilon_quotient(EpsilonMonoid(m, m.element("g")))
    # Z[s]/(1+s) = Z with s = -1
    assert q == AbGroup(1)


def test_epsilon_quotient_z4():
    m = f1_cyclic(4)
    assert epsilon_quotient(EpsilonMonoid(m, m.element("g^2"))) == AbGroup(2)


def test_epsilon_one_gives_two_torsion():
    m = f1_cyclic(3)
    q = epsilon_quotient(EpsilonMonoid(m, m.one))
    rows, cols = _rows(m, m.one)
    assert coker_finite(rows, cols) == (8, 2)
    assert q == AbGroup(0, (2, 2, 2))


def test_epsilon_must_square_to_one():
    m = f1_cyclic(3)
    with pytest.raises(ValueError):
        EpsilonMonoid(m, m.element("g"))


def _epsilon_pairs():
    out = []
    for m in named_monoids().values():
        for e in m.elements:
            if m.mul(e, e) == m.one:
                out.append((m, e))
    return out


@pytest.mark.parametrize("m, eps", _epsilon_pairs())
def test_epsilon_quotient_matches_oracle(m, eps):
    q = epsilon_quotient(EpsilonMonoid(m, eps))
    rows, cols = _rows(m, eps)
    assert q.rank == cols - rational_rank(rows, cols)
    brute = coker_finite(rows, cols)
    if brute is not None:
        assert (q.order, q.exponent) == brute


# --- F_p points -------------------------------------------------------------

def test_ring_points_of_small_monoids():
    assert ring_points(f1_cyclic(2), 3) == 2
    assert ring_points(idempotent(), 5) == 2
    assert ring_points(f1(), 7) == 1
    assert ring_points(FreeMonoid(2), 3) == 9
    assert ring_points(F1Group(AbGroup(1)), 5) == 4


@pytest.mark.parametrize("p", PRIMES + [11])
@pytest.mark.parametrize("desc", ["P1", "affine:1", "affine:2", "torus:1", "torus:2"])
def test_fp_points_equal_counting_polynomial(desc, p):
    assert scheme_fq_points(desc, p) == counting_polynomial(realize(desc))(p)


@pytest.mark.parametrize("p", PRIMES + [11, 13])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_mu_points(d, p):
    assert scheme_fq_points(f"mu:{d}", p) == mu_points_expected(d, p) == gcd(d, p - 1)


def test_spec_descriptor_points():
    m = truncated_polynomial(2)
    # x^2 = 0 in a field forces x = 0
    assert scheme_fq_points(("spec", m), 5) == 1


# --- adjunction -------------------------------------------------------------

@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("name", sorted(k for k, m in named_monoids().items() if m.size <= 6))
def test_adjunction_on_named_monoids(name, p):
    m = named_monoids()[name]
    rep = adjunction_check(m, p)
    assert rep.passed, rep
    assert rep.monoid_homs == ring_points(m, p)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(all_monoids(4)), st.sampled_from(PRIMES))
def test_adjunction_on_small_monoids(m, p):
    assert adjunction_check(m, p).passed


def test_adjunction_cap():
    with pytest.raises(CapExceeded):
        adjunction_check(f1_group(AbGroup(0, (7,))), 2)
    with pytest.raises(CapExceeded):
        adjunction_check(f1(), 11)
