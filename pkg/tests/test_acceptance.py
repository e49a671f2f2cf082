"""Acceptance gates, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible with
``pytest -s`` or in the terminal summary) and then asserts.
"""

import random

import pytest

from hyperarr import idealops, scenarios, suites
from hyperarr.arrangement import (PencilArrangement, minors_codim_check, star_power_identity, verify_plane_pencil,
                                  verify_sat_is_ci)
from hyperarr.idealops import Ideal
from hyperarr.oracle import engine_sweep, random_ideal
from hyperarr.ring import Ring
from hyperarr.scenarios import Context, run_scenario

SEEDS = range(1, 6)
PENCIL_CASES = [(s, 1) for s in range(2, 7)] + [(s, 2) for s in range(2, 5)] + [(s, 3) for s in range(2, 4)]

RESULTS: dict[int, str] = {}


def _record(capsys, n: int, title: str, problems: list[str], detail: str = "") -> None:
    status = "PASS" if not problems else "FAIL"
    line = f"criterion {n}: {status}  {title}"
    if detail:
        line += f"  ({detail})"
    if problems:
        line += "\n    " + "\n    ".join(problems[:10])
    RESULTS[n] = line
    with capsys.disabled():
        print("\n" + line)
    assert not problems, line


def _ctx(seed=1) -> Context:
    return Context(seed=seed, char=32003, budget=None)


def test_criterion_1_pencil_theorems(capsys):
    R = Ring(3, 32003)
    problems, checked = [], 0
    for seed in SEEDS:
        for s, d in PENCIL_CASES:
            p = PencilArrangement.random(R, s, d, seed)
            reports = [verify_sat_is_ci(p), star_power_identity(p)]
            if d == 1:
                reports.append(verify_plane_pencil(p))
            for r in reports:
                checked += 1
                problems.extend(f"seed={seed} {r.name}: {f}" for f in r.failures())
            ci = reports[0].values
            if ci.get("type") != [(s - 1) * d] * 2:
                problems.append(f"seed={seed} s={s} d={d}: CI type {ci.get('type')}")
    _record(capsys, 1, "pencil theorems", problems, f"{checked} checks over seeds 1..5")


def test_criterion_2_liaison(capsys):
    problems = []
    la = scenarios._liaison_family(20)(_ctx())
    if la["additive and saturated"] != 20:
        problems.append(f"liaison additions: {la}")
    skew = run_scenario("skew-lines-rao", seed=1)
    if not skew.ok or skew.values["Rao dims"] != [1]:
        problems.append(f"skew lines: {skew.values}")
    dec = scenarios._decomposition_family(10)(_ctx())
    if dec["decompositions verified"] != 10:
        problems.append(f"decompositions: {dec['failures']}")
    _record(capsys, 2, "liaison machinery", problems,
            "20 additions, skew-lines Rao shift, 10 decompositions")


def test_criterion_3_main_theorem(capsys):
    v = scenarios._main_family(10)(_ctx())
    problems = [f"{k}: {v[k]}/10" for k in ("hypotheses hold", "J^top ACM", "radical ACM") if v[k] != 10]
    _record(capsys, 3, "main theorem on 10 mixed arrangements", problems)


STANDARD_NUMBERS = {
    "planes-through-point": {"HP(S/J^sat)": "6t - 1", "HP(S/J^top)": "6t - 2", "lines": 6, "X^top ACM": True},
    "twc-3": {"deg Y": 12, "deg X^top": 15, "X^top ACM": True},
    "twc-4": {"deg Y": 24, "deg X^top": 30, "X^top ACM": True},
    "twc-5": {"deg X^top": 52, "X^top ACM": False},
    "three-quadrics-line": {"deg X (on the line)": 4, "X ACM": False, "X complete intersection": False},
    "four-cubics-p2": {"deg X1": 9, "generator degrees of X1": [3, 4, 4, 4]},
    "skew-lines-rao": {"Rao dims": [1]},
}


def test_criterion_4_standard_numbers(capsys):
    problems = []
    for name, want in STANDARD_NUMBERS.items():
        r = run_scenario(name, seed=1)
        if not r.ok:
            problems.append(f"{name}: verdicts failed")
        for key, value in want.items():
            if r.values.get(key) != value:
                problems.append(f"{name}: {key} = {r.values.get(key)!r}, expected {value!r}")
    _record(capsys, 4, "standard-tier numbers", problems, f"{len(STANDARD_NUMBERS)} scenarios")


EXTENDED = ["counterexa", "gen-ms", "tangent-double-line"] + [f"twc-{s}" for s in range(6, 12)]


@pytest.mark.extended
def test_criterion_5_extended_numbers(capsys):
    problems = []
    for name in EXTENDED:
        r = run_scenario(name, seed=1)
        if not r.ok:
            problems.append(f"{name}: {[v.key for v in r.verdicts if v.status != 'match']}")
    _record(capsys, 5, "extended-tier numbers", problems, f"{len(EXTENDED)} scenarios")


class _Checked:
    """Wraps intersect/quotient/saturate so every call verifies its containment identities."""

    def __init__(self):
        self.calls = 0
        self.problems = []
        self.intersect, self.quotient, self.saturate = idealops.intersect, idealops.quotient, idealops.saturate

    def _fail(self, what, I, J):
        self.problems.append(f"{what} identity failed for {I} and {J}")

    def checked_intersect(self, I, J, budget=None):
        M = self.intersect(I, J, budget)
        self.calls += 1
        if not (M.is_subset(I) and M.is_subset(J) and (I * J).is_subset(M)):
            self._fail("intersect", I, J)
        return M

    def checked_quotient(self, I, J, budget=None):
        Q = self.quotient(I, J, budget)
        self.calls += 1
        Jd = J if isinstance(J, Ideal) else Ideal([J], I.ring)
        if not (I.is_subset(Q) and (Q * Jd).is_subset(I)):
            self._fail("quotient", I, J)
        return Q

    def checked_saturate(self, I, J, method="auto", budget=None):
        S = self.saturate(I, J, method, budget)
        self.calls += 1
        if not (I.is_subset(S) and self.quotient(S, J).is_subset(S)):
            self._fail("saturate", I, J)
        return S

    def install(self, monkeypatch):
        for module in (idealops, scenarios, suites):
            for name in ("intersect", "quotient", "saturate"):
                if hasattr(module, name):
                    monkeypatch.setattr(module, name, getattr(self, f"checked_{name}"))


def test_criterion_6_engine_oracles(capsys, monkeypatch):
    count, problems = engine_sweep(200, seed=0)
    checker = _Checked()
    checker.install(monkeypatch)
    for k in range(200):
        rng = random.Random(f"identities:{k}")
        ring = Ring(rng.choice([2, 3]), 32003)
        A = Ideal(random_ideal(ring, rng, count=rng.randint(1, 4), max_degree=4), ring)
        B = Ideal(random_ideal(ring, rng, count=rng.randint(1, 4), max_degree=4), ring)
        idealops.intersect(A, B)
        idealops.quotient(A, B)
        idealops.saturate(A, B)
    for seed in (1, 2):
        if not suites.ideals_suite(_ctx(seed)).ok:
            problems.append(f"ideals suite failed for seed {seed}")
    if not run_scenario("skew-lines-rao", seed=1).ok:
        problems.append("skew-lines workload failed")
    problems += checker.problems
    _record(capsys, 6, "engine oracle suite", problems,
            f"{count} ideals against the oracle, {checker.calls} checked ideal operations")


def test_criterion_7_minors_codim(capsys):
    R = Ring(3, 32003)
    problems = []
    for seed in SEEDS:
        r = minors_codim_check(PencilArrangement.random(R, 3, 2, seed))
        problems.extend(f"seed={seed}: {f}" for f in r.failures())
        if r.notes:
            problems.append(f"seed={seed}: {r.notes}")
    _record(capsys, 7, "Jacobian minor codimensions 3 and 4", problems, "5 smooth quadric pencils")

