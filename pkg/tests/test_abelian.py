from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from f1geom.abelian import (AbGroup, InfiniteHomSet, IntMatrix, StructureError, hom_count, smith_diagonal,
                            smith_normalize, structure_of_finite_group)

from oracles import coker_finite, rational_rank, solutions_mod


def test_abgroup_rejects_bad_chains():
    with pytest.raises(ValueError):
        AbGroup(0, (4, 2))
    with pytest.raises(ValueError):
        AbGroup(0, (1,))
    with pytest.raises(ValueError):
        AbGroup(-1)


def test_cyclic_special_cases():
    assert AbGroup.cyclic(0) == AbGroup(1)
    assert AbGroup.cyclic(1) == AbGroup()
    assert AbGroup.cyclic(6) == AbGroup(0, (6,))


def test_from_orders_normalizes():
    assert AbGroup.from_orders(0, [2, 3]) == AbGroup(0, (6,))
    assert AbGroup.from_orders(1, [4, 6, 0]) == AbGroup(2, (2, 12))


def test_intmatrix_shape_checked():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, ((1, 2),))


# smithNormalize examples

def test_snf_single_relation():
    assert smith_normalize(IntMatrix.of([[2]])) == AbGroup(0, (2,))


def test_snf_empty_matrix_is_free():
    assert smith_normalize(IntMatrix(0, 2, ())) == AbGroup(2)


def test_snf_diagonal_2_4():
    m = [[2, 0], [0, 4]]
    # oracle: subgroup closure gives 8 elements with exponent 4
    assert coker_finite(m, 2) == (8, 4)
    g = smith_normalize(IntMatrix.of(m))
    assert g == AbGroup(0, (2, 4))
    assert (g.order, g.exponent) == (8, 4)


def test_snf_merges_coprime_factors():
    assert smith_normalize(IntMatrix.of([[2, 0], [0, 3]])) == AbGroup(0, (6,))
    assert smith_diagonal(IntMatrix.of([[4, 6], [6, 4]])) == [2, 10]


small_rows = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=1, max_size=4)
    .map(lambda rows: (rows, c)))


@settings(max_examples=150, deadline=None)
@given(small_rows)
def test_snf_rank_and_hom_counts_match_enumeration(data):
    rows, cols = data
    g = smith_normalize(IntMatrix.of(rows, cols=cols))
    assert g.rank == cols - rational_rank(rows, cols)
    for n in range(2, 7 if cols <= 3 else 4):
        assert hom_count(g, AbGroup.cyclic(n)) == solutions_mod(rows, cols, n)


@settings(max_examples=150, deadline=None)
@given(small_rows)
def test_snf_torsion_order_matches_coker_enumeration(data):
    rows, cols = data
    g = smith_normalize(IntMatrix.of(rows, cols=cols))
    brute = coker_finite(rows, cols)
    if brute is not None:
        assert g.rank == 0
        assert (g.order, g.exponent) == brute


# homCount

def test_hom_count_torus_into_cyclic():
    assert hom_count(AbGroup(1), AbGroup.cyclic(5)) == 5


def test_hom_count_z6_z4():
    assert sum(1 for x in range(4) if 6 * x % 4 == 0) == 2
    assert hom_count(AbGroup(0, (6,)), AbGroup(0, (4,))) == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_hom_count_trivial_source(n):
    assert hom_count(AbGroup(), AbGroup.cyclic(n)) == 1


def test_hom_count_infinite():
    with pytest.raises(InfiniteHomSet):
        hom_count(AbGroup(1), AbGroup(2))


def test_hom_count_into_free_target_from_finite():
    assert hom_count(AbGroup(0, (2, 4)), AbGroup(1)) == 1


groups = st.tuples(st.integers(0, 2), st.lists(st.sampled_from([2, 3, 4, 6]), max_size=2)).map(
    lambda t: AbGroup.from_orders(*t))


@settings(max_examples=100, deadline=None)
@given(groups, st.integers(1, 8))
def test_hom_count_matches_generator_enumeration(g, n):
    gens = [0] * g.rank + list(g.torsion)
    brute = sum(1 for x in product(range(n), repeat=len(gens)) if all(d * v % n == 0 for d, v in zip(gens, x)))
    assert hom_count(g, AbGroup.cyclic(n)) == brute


@given(groups)
def test_hom_count_into_trivial_group(g):
    assert hom_count(g, AbGroup.cyclic(1)) == 1


# structureOfFiniteGroup

def test_structure_cyclic_four():
    assert structure_of_finite_group(range(4), lambda a, b: (a + b) % 4) == AbGroup(0, (4,))


def test_structure_klein():
    elems = list(product(range(2), repeat=2))
    op = lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)  # noqa: E731
    # no element of order 4
    assert all(op(x, x) == (0, 0) for x in elems)
    assert structure_of_finite_group(elems, op) == AbGroup(0, (2, 2))


def test_structure_trivial():
    assert structure_of_finite_group([0], lambda a, b: 0) == AbGroup()


def test_structure_z2_z4_z3():
    elems = list(product(range(2), range(4), range(3)))
    op = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, (2, 4, 3)))  # noqa: E731
    assert structure_of_finite_group(elems, op) == AbGroup(0, (2, 12))


def test_structure_rejects_non_abelian():
    from itertools import permutations

    elems = list(permutations(range(3)))
    op = lambda p, q: tuple(p[q[i]] for i in range(3))  # noqa: E731
    with pytest.raises(StructureError, match="not abelian"):
        structure_of_finite_group(elems, op)


def test_structure_rejects_non_group():
    with pytest.raises(StructureError):
        structure_of_finite_group(range(3), lambda a, b: a * b % 3)
