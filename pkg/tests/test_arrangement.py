import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperarr.arrangement import (ArrangementSpec, HypothesisError, PencilArrangement, UncoveredComponent,
                                  basic_double_link, check_hypotheses, default_supports, general_form,
                                  hilbert_additivity, hyperplane_flat_components, jacobian_ideal,
                                  liaison_addition, minors_codim_check, rao_of, star_power_identity,
                                  top_part, verify_component_stability, verify_liaison_decomposition,
                                  verify_plane_pencil, verify_sat_is_ci)
from hyperarr.idealops import Ideal, ideal_equal, intersect
from hyperarr.invariants import hilbert_data, is_acm
from hyperarr.ring import Ring

R = Ring(3)
x0, x1, x2, x3 = R.gens()


def test_spec_validation():
    with pytest.raises(ValueError):
        ArrangementSpec([x0 * x1 - x2 ** 2, (x0 * x1 - x2 ** 2).scale(5)], R)
    with pytest.raises(ValueError):
        ArrangementSpec([x0 + x1 * x2], R)
    with pytest.raises(ValueError):
        ArrangementSpec([R.one()], R)
    spec = ArrangementSpec(["x0", "x1^2 + x2*x3"], R)
    assert spec.degrees == [1, 2] and spec.product().degree == 3


def test_jacobian_of_two_planes():
    assert ideal_equal(jacobian_ideal(ArrangementSpec([x0, x1], R)), Ideal([x0, x1], R))


@pytest.mark.parametrize("s,d", [(2, 1), (3, 1), (3, 2), (2, 3)])
def test_pencil_checks(s, d):
    p = PencilArrangement.random(R, s, d, seed=3)
    r = verify_sat_is_ci(p)
    assert r.ok, r
    assert r.values["type"] == [(s - 1) * d] * 2
    assert star_power_identity(p).ok


def test_plane_pencil_is_saturated_ci():
    p = PencilArrangement.random(R, 4, 1, seed=2, base=Ideal([x2, x3], R))
    r = verify_plane_pencil(p)
    assert r.ok and r.values["type"] == [3, 3]


def test_pencil_rejects_repeated_members():
    with pytest.raises(ValueError):
        PencilArrangement(x0 ** 2 - x1 * x2, x3 ** 2 - x0 * x1, [(1, 2), (2, 4)])


@pytest.mark.parametrize("seed", [1, 2])
def test_minor_codimensions(seed):
    r = minors_codim_check(PencilArrangement.random(R, 3, 2, seed=seed))
    assert r.ok
    assert r.values["codim of Jacobian minors is n"] == 3
    assert r.values["codim of augmented minors is n+1"] == 4


def test_liaison_addition_of_two_lines():
    Z = liaison_addition(Ideal([x0, x1], R), Ideal([x2, x3], R), x0, x2)
    assert ideal_equal(Z, Ideal([x0 * x2, x1 * x2, x0 * x3], R))
    assert is_acm(Z)


def test_liaison_addition_hypotheses():
    with pytest.raises(HypothesisError):
        liaison_addition(Ideal([x0, x1], R), Ideal([x2, x3], R), x2, x3)
    with pytest.raises(HypothesisError):
        liaison_addition(Ideal([x0, x1], R), Ideal([x0, x2], R), x0, x0)


def test_additivity_shift_follows_the_multiplier():
    I1, I2 = Ideal([x0, x1], R), Ideal([x2, x3 ** 2], R)  # a line and a double line
    F1, F2 = x0, x2 ** 3 + x3 ** 3
    Z = liaison_addition(I1, I2, F1, F2)
    V = Ideal([F1, F2], R)
    assert hilbert_additivity(Z, V, I1, I2, 1, 3)
    # V1 is multiplied by F2, so pairing it with deg F1 is wrong when degrees differ
    assert not hilbert_additivity(Z, V, I1, I2, 3, 1)


def test_basic_double_link_shifts_rao_module():
    skew = intersect(Ideal([x0, x1], R), Ideal([x2, x3], R))
    F1 = general_form(skew, 2, 1)
    Z = basic_double_link(skew, F1, x0 + x1 + x2 + x3, check_rao=True)
    assert rao_of(Z).support() == (1, 1)
    assert hilbert_data(Z).degree == 2 + 2


@given(st.integers(0, 10 ** 4))
@settings(max_examples=8)
def test_liaison_addition_is_additive(seed):
    rng = random.Random(seed)
    I1 = Ideal([R.random_form(1, rng), R.random_form(rng.randint(1, 2), rng)], R)
    I2 = Ideal([R.random_form(1, rng), R.random_form(2, rng)], R)
    F1, F2 = general_form(I1, rng.randint(2, 3), rng), general_form(I2, rng.randint(2, 3), rng)
    Z = liaison_addition(I1, I2, F1, F2)  # raises if saturation or additivity fails
    assert is_acm(Z)


def test_two_general_quadrics_top_is_the_intersection():
    rng = random.Random(5)
    f, g = R.random_form(2, rng), R.random_form(2, rng)
    spec = ArrangementSpec([f, g], R)
    top, pieces = top_part(jacobian_ideal(spec), default_supports(spec))
    assert ideal_equal(top, Ideal([f, g], R)) and len(pieces) == 1


def test_missing_support_fails_loudly():
    rng = random.Random(2)
    L = Ideal([x2, x3], R)
    spec = ArrangementSpec([general_form(L, 2, rng) for _ in range(3)], R)
    with pytest.raises(UncoveredComponent):
        top_part(jacobian_ideal(spec), [])


def test_three_general_planes():
    rng = random.Random(7)
    r = hyperplane_flat_components(ArrangementSpec([R.random_form(1, rng) for _ in range(3)], R))
    assert r.ok, r


def test_unequal_degrees_on_one_locus_violate_hypotheses():
    rng = random.Random(4)
    F, G = R.random_form(2, rng), R.random_form(3, rng)
    H = general_form(Ideal([F, G], R), 3, rng)
    hyp = check_hypotheses(ArrangementSpec([F, G, H], R))
    assert not hyp.checks["factors sharing a codim-2 locus have equal degree"]


def test_decomposition_of_two_plane_pencils():
    specF = ArrangementSpec([x2, x3], R)
    specG = ArrangementSpec([x0, x1, x0 + x1], R)
    r = verify_liaison_decomposition(specF, specG, rao=True)
    assert r.ok, r


def test_component_stability():
    L = Ideal([x2, x3], R)
    p = PencilArrangement.random(R, 3, 1, seed=1, base=L)
    r = verify_component_stability(p.spec(), R.random_form(2, random.Random(9)), L)
    assert r.ok, r
