import json

import pytest

from hyperarr.groebner import Budget
from hyperarr.idealops import ideal_equal
from hyperarr.scenarios import (LOCI, ScenarioFileError, double_line, line, load_scenario_file, registry,
                                run_file, run_scenario, scenarios_for_tier, twisted_cubic)
from hyperarr.ring import Ring

REQUIRED = ["plane-pencil-2", "plane-pencil-6", "star-config-3-2", "pencil-ci-2-3", "quadric-cone-plane",
            "counterexa", "tangent-double-line", "three-quadrics-line", "four-cubics-p2",
            "planes-through-point", "gen-ms", "skew-lines-rao", "liaison-addition-random", "bdl-random",
            "kummer"] + [f"twc-{s}" for s in range(3, 12)]


def test_registry_contents():
    reg = registry()
    for name in REQUIRED:
        assert name in reg, name
    assert not reg["kummer"].enabled
    assert {s.tier for s in reg.values()} <= {"fast", "standard", "extended"}


def _expected(name):
    return {e.key: e for e in registry()[name].expectations}


def test_twc_table_entries():
    e4, e5 = _expected("twc-4"), _expected("twc-5")
    assert (e4["deg Y"].expected, e4["deg X^top"].expected, e4["X^top ACM"].expected) == (24, 30, True)
    assert e4["J saturated"].expected is True and e4["J saturated"].observational
    assert (e5["deg X^top"].expected, e5["X^top ACM"].expected, e5["J^sat unmixed"].expected) == (52, False, True)
    degrees = [_expected(f"twc-{s}")["deg Y"].expected for s in range(3, 12)]
    assert degrees == [12, 24, 42, 63, 87, 117, 150, 189, 231]


def test_tiers():
    fast = {s.name for s in scenarios_for_tier("fast")}
    assert "plane-pencil-4" in fast and "twc-3" not in fast
    assert "twc-6" in {s.name for s in scenarios_for_tier("standard")}
    assert "kummer" not in {s.name for s in scenarios_for_tier("extended")}


def test_base_loci():
    R = Ring(3)
    x0, x1, x2, x3 = R.gens()
    assert ideal_equal(line(R), LOCI["line"](R))
    assert len(twisted_cubic(R).gens) == 3
    D, F = double_line(R, seed=1)
    assert D.is_subset(line(R)) and line(R).contains(F)


@pytest.mark.parametrize("name", ["plane-pencil-4", "pencil-ci-3-2", "star-config-4-1", "skew-lines-rao"])
def test_fast_scenarios_pass(name):
    r = run_scenario(name)
    assert r.ok, r.text()


@pytest.mark.parametrize("seed", [2, 3, 4, 5])
def test_fast_scenario_other_seeds(seed):
    assert run_scenario("pencil-ci-3-1", seed=seed).ok


def test_plane_pencil_report():
    r = run_scenario("plane-pencil-4")
    assert r.values["CI type"] == [3, 3] and r.values["degree"] == 9 and r.values["J saturated"]


def test_report_round_trip():
    r = run_scenario("plane-pencil-3")
    d = json.loads(json.dumps(r.as_dict()))
    text = r.text()
    for v in d["verdicts"]:
        assert f"{v['key']}: expected {v['expected']}, got {v['computed']}" in text


def test_budget_exhaustion_is_reported():
    r = run_scenario("pencil-ci-4-2", budget=Budget(max_degree=2))
    assert r.budget_exhausted and not r.ok
    assert all(v.status == "skipped-budget" for v in r.verdicts)


def test_unknown_and_disabled():
    with pytest.raises(KeyError):
        run_scenario("nosuch")
    with pytest.raises(NotImplementedError):
        run_scenario("kummer")


def test_file_two_general_quadrics():
    text = json.dumps({"ring": 3, "seed": 4, "factors": [{"random": 2}, {"random": 2}],
                       "tasks": ["top", "acm"], "expect": {"top = (f, g)": True, "X^top ACM": True}})
    assert run_file(text).ok


def test_file_smooth_quadric_has_no_curve():
    r = run_file(json.dumps({"ring": 3, "factors": ["x0^2 + x1^2 + x2^2 + x3^2"], "tasks": ["top"]}))
    assert r.values["verdict"] == "no codim-2 singular locus"


def test_file_errors():
    with pytest.raises(ScenarioFileError) as err:
        load_scenario_file('{"ring": 3,\n "factors": ["x0", ]\n}')
    assert err.value.line == 2
    with pytest.raises(ScenarioFileError):
        run_file(json.dumps({"factors": ["x0*x1 - x2^2", "2*x0*x1 - 2*x2^2"]}))
    with pytest.raises(ScenarioFileError):
        run_file(json.dumps({"loci": {"Q": "conic"}, "factors": [{"general": "Q", "degree": 2}]}))
    with pytest.raises(ScenarioFileError):
        load_scenario_file(json.dumps({"factors": ["x0"], "color": "red"}))
    with pytest.raises(ScenarioFileError):
        run_file(json.dumps({"factors": ["x0 +* x1"]}))


def test_file_with_hint():
    text = json.dumps({"seed": 2, "loci": {"C": "twisted_cubic"}, "hints": ["C"],
                       "factors": [{"general": "C", "degree": 2}] * 3, "tasks": ["top", "acm"],
                       "expect": {"deg X^top": 15, "X^top ACM": True}})
    assert run_file(text).ok
