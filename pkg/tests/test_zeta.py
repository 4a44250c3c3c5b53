import math

import pytest
from hypothesis import given, settings, strategies as st

from f1geom.scheme import CountingPoly, counting_polynomial, realize
from f1geom.zeta import (DivergenceError, DivisorSingularity, TorsionError, ZetaDivisor, eval_divisor,
                         fqs_riemann_sum, kurokawa_power, mellin_integral, soule_limit, zeta_from_counting,
                         zeta_from_scheme, zeta_of)

TORSION_FREE = ["P1", "affine:1", "affine:2", "affine:3", "torus:0", "torus:1", "torus:2"]


def test_p1_zeta():
    d = zeta_of("P1")
    assert d.as_dict() == {0: -1, 1: -1}
    assert str(d) == "(s)^-1 * (s-1)^-1"
    assert eval_divisor(d, 3.0) == pytest.approx(1 / 6)


def test_affine_and_torus_zeta():
    assert zeta_of("affine:1").as_dict() == {1: -1}
    assert zeta_of("affine:3").as_dict() == {3: -1}
    assert zeta_of("torus:1").as_dict() == {0: 1, 1: -1}
    assert zeta_of("torus:0").as_dict() == {0: -1}


def test_torsion_zeta_refused():
    with pytest.raises(TorsionError):
        zeta_of("mu:3")
    with pytest.raises(TorsionError):
        zeta_from_counting(counting_polynomial(realize("mu:2")))


def test_kurokawa_powers():
    assert kurokawa_power(0).as_dict() == {0: 1}
    assert kurokawa_power(1).as_dict() == {1: 1, 0: -1}
    assert kurokawa_power(2).as_dict() == {2: 1, 1: -2, 0: 1}
    with pytest.raises(ValueError):
        kurokawa_power(-1)


@given(st.integers(0, 12))
def test_kurokawa_power_has_degree_zero(n):
    # (1 - 1/s)^(tensor n) for n >= 1 has as many zeros as poles
    assert kurokawa_power(n).degree() == (1 if n == 0 else 0)


@pytest.mark.parametrize("desc", TORSION_FREE)
def test_scheme_and_counting_routes_agree(desc):
    x = realize(desc)
    assert zeta_from_scheme(x) == zeta_from_counting(counting_polynomial(x))


divisors = st.dictionaries(st.integers(-3, 5), st.integers(-3, 3), max_size=4).map(ZetaDivisor.of)


@given(divisors, divisors, st.floats(6.5, 9.5))
def test_divisor_product_evaluates_as_product(a, b, s):
    assert eval_divisor(a + b, s) == pytest.approx(eval_divisor(a, s) * eval_divisor(b, s), rel=1e-12)
    assert eval_divisor(a - a, s) == 1.0


def test_divisor_normalizes():
    d = ZetaDivisor(((1, 2), (1, -2), (0, 1)))
    assert d.items == ((0, 1),)
    assert str(ZetaDivisor()) == "1"
    assert str(ZetaDivisor.of({-2: 1})) == "(s+2)^1"


def test_singularities():
    with pytest.raises(DivisorSingularity) as exc:
        eval_divisor(zeta_of("P1"), 1.0)
    assert exc.value.kind == "pole" and exc.value.location == 1
    with pytest.raises(DivisorSingularity, match="zero"):
        eval_divisor(zeta_of("torus:1"), 0.0)


@pytest.mark.parametrize("desc", TORSION_FREE)
@pytest.mark.parametrize("s", [3.5, 5.0, 8.0])
def test_soule_limit_matches_divisor(desc, s):
    poly = counting_polynomial(realize(desc))
    exact = eval_divisor(zeta_from_counting(poly), s)
    assert soule_limit(poly, s) == pytest.approx(exact, rel=1e-3)


def test_soule_limit_validation():
    poly = CountingPoly.of([0, 0, 1])
    with pytest.raises(DivergenceError):
        soule_limit(poly, 2.0)
    with pytest.raises(ValueError):
        soule_limit(poly, 4.0, eps=(1e-2, 1e-2, 1e-3))


@pytest.mark.parametrize("coeffs, s", [([1, 1], 3.0), ([0, 0, 1], 4.0), ([1, -2, 1], 3.5)])
def test_riemann_sum_approaches_mellin_integral(coeffs, s):
    poly = CountingPoly.of(coeffs)
    exact = mellin_integral(poly, s)
    errs = [abs(fqs_riemann_sum(poly, 1 + e, s) - exact) for e in (1e-1, 1e-2, 1e-3)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-2 * abs(exact)


def test_mellin_integral_is_log_derivative_of_divisor():
    # -d/ds log zeta = sum a_k / (s - k) for zeta = prod (s - k)^-a_k
    poly = counting_polynomial(realize("P1"))
    d = zeta_from_counting(poly)
    s, h = 4.0, 1e-5
    deriv = (math.log(eval_divisor(d, s + h)) - math.log(eval_divisor(d, s - h))) / (2 * h)
    assert mellin_integral(poly, s) == pytest.approx(-deriv, rel=1e-8)


def test_riemann_sum_rejects_bad_q():
    with pytest.raises(ValueError):
        fqs_riemann_sum(CountingPoly.of([1]), 1.0, 2.0)
