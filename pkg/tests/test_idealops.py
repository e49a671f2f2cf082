import random

import pytest
from hypothesis import given, strategies as st

from hyperarr.idealops import (Ideal, eliminate, ideal_equal, intersect, is_saturated, quotient,
                               radical_membership, saturate, saturate_irrelevant, saturate_iterate,
                               unit_ideal)
from hyperarr.oracle import random_ideal
from hyperarr.ring import Ring


R = Ring(3)
x0, x1, x2, x3 = R.gens()


def I(*gens, ring=R):
    return Ideal(list(gens), ring)


def test_intersection_of_coordinate_lines():
    meet = intersect(I(x0, x1), I(x2, x3))
    assert ideal_equal(meet, I(x0 * x2, x0 * x3, x1 * x2, x1 * x3))


def test_quotient_by_variable():
    assert ideal_equal(quotient(I(x0 ** 2, x0 * x1), x0), I(x0, x1))
    assert ideal_equal(quotient(I(x0 ** 2, x0 * x1), I(x0, x1)), I(x0))


def test_saturation_removes_irrelevant_component():
    P1 = Ring(1)
    y0, y1 = P1.gens()
    assert ideal_equal(saturate_irrelevant(I(y0 ** 2, y0 * y1, ring=P1)), I(y0, ring=P1))
    assert not is_saturated(I(y0 ** 2, y0 * y1, ring=P1))
    assert saturate_irrelevant(I(y0 ** 2, y1 ** 3, ring=P1)).is_unit()


def test_elimination():
    J = eliminate(I(x0 - x1, x1 ** 2 - x2 * x3), 1)
    assert ideal_equal(J, I(x1 ** 2 - x2 * x3))


def test_radical_membership():
    J = I(x0 ** 3, x1)
    assert radical_membership(x0, J)
    assert radical_membership(x0 * x2 + x1 * x3, J)
    assert not radical_membership(x2, J)


def test_minimal_generators_drop_redundant():
    J = I(x0, x1, x0 + x1, x0 * x2)
    assert J.generator_degrees() == [1, 1]


def test_unit_and_containment():
    assert unit_ideal(R).is_unit()
    assert I(x0 * x1).is_subset(I(x0))
    assert not I(x0).is_subset(I(x0 * x1))


ideals = st.integers(0, 10 ** 6).map(lambda s: random.Random(s))


def _two(rng):
    ring = Ring(rng.choice([2, 3]))
    return (Ideal(random_ideal(ring, rng, max_degree=2), ring),
            Ideal(random_ideal(ring, rng, max_degree=2), ring))


@given(ideals)
def test_intersection_containments(rng):
    A, B = _two(rng)
    meet = intersect(A, B)
    assert meet.is_subset(A) and meet.is_subset(B)
    assert (A * B).is_subset(meet)


@given(ideals)
def test_quotient_containments(rng):
    A, B = _two(rng)
    Q = quotient(A, B)
    assert A.is_subset(Q)
    assert (Q * B).is_subset(A)


@given(ideals)
def test_saturation_routes_agree(rng):
    A, B = _two(rng)
    S = saturate(A, B)
    assert A.is_subset(S)
    assert ideal_equal(S, saturate_iterate(A, B))


@given(ideals)
def test_irrelevant_saturation_routes_agree(rng):
    A, _ = _two(rng)
    S = saturate_irrelevant(A)
    assert ideal_equal(S, saturate_iterate(A, Ideal(A.ring.gens(), A.ring)))
    assert is_saturated(S)


def test_ring_mismatch_rejected():
    with pytest.raises(ValueError):
        intersect(I(x0), Ideal([Ring(2).gens()[0]], Ring(2)))
