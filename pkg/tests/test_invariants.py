import random
from pathlib import Path

import pytest

from hyperarr.idealops import Ideal, intersect
from hyperarr.invariants import (BettiTable, NotSaturated, fit_polynomial, hilbert_data, is_acm,
                                 is_unmixed, minimal_betti, rao_module, top_ext_annihilator)
from hyperarr.ring import Ring

GOLDEN = Path(__file__).parent / "golden"
R = Ring(3)
x0, x1, x2, x3 = R.gens()
CUBIC = Ideal([x0 * x2 - x1 ** 2, x1 * x3 - x2 ** 2, x0 * x3 - x1 * x2], R)
SKEW = intersect(Ideal([x0, x1], R), Ideal([x2, x3], R))


def test_twisted_cubic():
    h = hilbert_data(CUBIC)
    assert h.poly_string() == "3t + 1" and h.degree == 3 and h.codim == 2
    b = minimal_betti(CUBIC)
    assert b.totals() == [1, 3, 2]
    assert b.rows() == {0: [1, 0, 0], 1: [0, 3, 2]}
    assert is_acm(CUBIC)
    assert rao_module(CUBIC).is_zero()


def test_complete_intersection_2_3():
    h = hilbert_data(Ideal([R.random_form(2, random.Random(1)), R.random_form(3, random.Random(2))], R))
    assert h.degree == 6 and h.poly_string() == "6t - 3"


def test_skew_lines_rao_module():
    assert hilbert_data(SKEW).poly_string() == "2t + 2"
    assert not is_acm(SKEW)
    M = rao_module(SKEW)
    assert M.sequence() == [1] and M.support() == (0, 0)
    assert M.shifted(2).support() == (2, 2)
    assert is_unmixed(SKEW)


def test_embedded_point_is_mixed():
    J = Ideal([x2, x1 * x3, x3 ** 2], R)  # the line x2 = x3 = 0 plus an embedded point
    assert not is_unmixed(J)
    ann = top_ext_annihilator(J)
    # the last Ext lives at the embedded point only
    assert J.is_subset(ann)
    assert not ann.is_subset(Ideal([x2, x3], R))


def test_acm_needs_saturated_input():
    with pytest.raises(NotSaturated):
        is_acm(Ideal([x0 ** 2, x0 * x1, x0 * x2, x0 * x3], R))


def test_betti_table_gives_hilbert_function():
    b = minimal_betti(SKEW)
    h = hilbert_data(SKEW)
    assert all(b.hilbert_function(t, R.nvars) == h.function(t) for t in range(12))


def test_fit_polynomial():
    assert fit_polynomial([4, 7, 10], 1) == [1, 3]


def test_golden_diagram_exact():
    table = BettiTable({(0, 0): 1, (1, 16): 4, (2, 22): 4, (3, 24): 1})
    assert table.format() == (GOLDEN / "betti_top.txt").read_text().rstrip("\n")


def test_golden_diagram_up_to_whitespace():
    # the printed diagram indents its header and elision row by one column less
    table = BettiTable({(0, 0): 1, (1, 14): 12, (2, 16): 15, (3, 18): 4})
    assert table.format().split() == (GOLDEN / "betti_radical.txt").read_text().split()
