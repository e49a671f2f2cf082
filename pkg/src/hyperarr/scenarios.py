"""Named, seeded example computations with their expected results.

Every scenario builds its arrangement from fixed base loci and seeded general
forms, computes a dictionary of values, and compares them with the recorded
expectations.  Expectations marked ``observational`` depend on the particular
general choices; a mismatch there is reported as a warning only.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .arrangement import (ArrangementSpec, arrangement_top, HypothesisError, PencilArrangement, Report,
                          basic_double_link, check_hypotheses, default_supports, general_form,
                          hyperplane_flat_components, is_smooth_form, jacobian_ideal,
                          liaison_addition, minors_codim_check, radical_top, rao_of,
                          star_power_identity, top_part, verify_component_stability,
                          verify_liaison_decomposition, verify_plane_pencil, verify_sat_is_ci)
from .groebner import Budget, BudgetExhausted, budget_scope
from .idealops import (Ideal, ideal_equal, intersect, intersect_all, is_saturated, radical_membership,
                       saturate_irrelevant, saturate_product, unit_ideal)
from .invariants import codim, hilbert_data, is_acm, is_unmixed, minimal_betti
from .ring import Ring

TIERS = ("fast", "standard", "extended")


# ---------------------------------------------------------------------------
# base loci with fixed coordinates


def point(ring: Ring) -> Ideal:
    """The coordinate point (1:0:...:0)."""
    return Ideal(ring.gens()[1:], ring, tag="point")


def line(ring: Ring) -> Ideal:
    if ring.nvars < 4:
        raise ValueError("a line has codimension two only from P^3 on")
    return Ideal(ring.gens()[2:4], ring, tag="line")


def twisted_cubic(ring: Ring) -> Ideal:
    if ring.nvars != 4:
        raise ValueError("the twisted cubic lives in P^3")
    x0, x1, x2, x3 = ring.gens()
    return Ideal([x0 * x2 - x1 ** 2, x1 * x3 - x2 ** 2, x0 * x3 - x1 * x2], ring, tag="twisted cubic")


def double_line(ring: Ring, seed=0) -> tuple[Ideal, object]:
    """I_l^2 + (F) with F a cubic through the line, smooth along it."""
    L = line(ring)
    rng = random.Random(f"double-line:{seed}")
    for _ in range(10):
        F = general_form(L, 3, rng)
        sing = Ideal(list(jacobian_ideal(F).gens) + list(L.gens), ring)
        if codim(sing) == ring.nvars:
            return Ideal(list((L ** 2).gens) + [F], ring, tag="double line"), F
    raise RuntimeError("no cubic smooth along the line found")


LOCI: dict[str, Callable[[Ring], Ideal]] = {
    "point": point,
    "line": line,
    "twisted_cubic": twisted_cubic,
}


# ---------------------------------------------------------------------------
# scenario records


@dataclass
class Expectation:
    key: str
    expected: object
    origin: str = "reference"  # reference | derived | trivial
    observational: bool = False


@dataclass
class Context:
    seed: int
    char: int = 32003
    budget: Budget | None = None
    order: str = "grevlex"

    def ring(self, n: int = 3) -> Ring:
        return Ring(n, self.char, order=self.order)


@dataclass
class Scenario:
    name: str
    tier: str
    summary: str
    runner: Callable[[Context], dict]
    expectations: list[Expectation]
    seed: int = 1
    enabled: bool = True


@dataclass
class Verdict:
    key: str
    expected: object
    computed: object
    status: str  # match | mismatch | skipped-budget | missing
    observational: bool = False
    origin: str = "reference"

    def as_dict(self) -> dict:
        return {"key": self.key, "expected": self.expected, "computed": self.computed,
                "status": self.status, "observational": self.observational, "origin": self.origin}


@dataclass
class ScenarioReport:
    name: str
    tier: str
    seed: int
    char: int
    verdicts: list[Verdict] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    seconds: float = 0.0
    notes: list = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def ok(self) -> bool:
        return all(v.status == "match" for v in self.verdicts if not v.observational)

    @property
    def warnings(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.observational and v.status != "match"]

    def as_dict(self) -> dict:
        return {"name": self.name, "tier": self.tier, "seed": self.seed, "field": self.char,
                "ok": self.ok, "budget_exhausted": self.budget_exhausted,
                "seconds": round(self.seconds, 3), "verdicts": [v.as_dict() for v in self.verdicts],
                "values": self.values, "notes": list(self.notes)}

    def text(self) -> str:
        status = "PASS" if self.ok else ("BUDGET" if self.budget_exhausted else "FAIL")
        lines = [f"{self.name} [{self.tier}] seed={self.seed} field=GF({self.char}): {status}"
                 f" ({self.seconds:.1f}s)"]
        for v in self.verdicts:
            mark = {"match": "ok", "mismatch": "!!", "skipped-budget": "--", "missing": "??"}[v.status]
            if v.observational and v.status != "match":
                mark = "~~"
            lines.append(f"  [{mark}] {v.key}: expected {v.expected}, got {v.computed}")
        judged = {v.key for v in self.verdicts}
        for key, value in self.values.items():
            if key in judged:
                continue
            if isinstance(value, str) and "\n" in value:
                lines.append(f"  {key}:")
                lines.extend("    " + row for row in value.splitlines())
            else:
                lines.append(f"  {key}: {value}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# shared computations


def _hp(I: Ideal) -> str:
    return hilbert_data(I).poly_string()


def _jacobian_summary(spec: ArrangementSpec, hints=(), seed=0) -> tuple[dict, Ideal, list]:
    J = jacobian_ideal(spec)
    Jsat = saturate_irrelevant(J)
    top, pieces = top_part(J, default_supports(spec, hints), seed)
    values = {
        "HP(S/J)": _hp(J),
        "J saturated": is_saturated(J),
        "HP(S/J^sat)": _hp(Jsat),
        "J^sat unmixed": is_unmixed(Jsat),
        "HP(S/J^top)": _hp(top),
        "deg X^top": hilbert_data(top).degree,
        "X^top ACM": is_acm(top),
    }
    return values, top, pieces


def _piece_on(pieces, support: Ideal):
    return next((q for q in pieces if ideal_equal(q.support, support)), None)


def _random_coordinates(I: Ideal, rng: random.Random) -> Ideal:
    """I after a random linear change of coordinates."""
    ring = I.ring
    from .linalg import backend
    kern = backend(ring.char)
    while True:
        images = [ring.random_form(1, rng) for _ in range(ring.nvars)]
        M = kern.asarray([[f.terms.get(tuple(int(i == j) for j in range(ring.nvars)), 0)
                           for i in range(ring.nvars)] for f in images])
        if kern.rank(M) == ring.nvars:
            return Ideal([g.subs_linear(images) for g in I.gens], ring)


def _random_curve(ring: Ring, rng: random.Random, kind: str) -> Ideal:
    if kind == "ci":
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        return Ideal([ring.random_form(a, rng), ring.random_form(b, rng)], ring)
    if kind == "twisted_cubic":
        return _random_coordinates(twisted_cubic(ring), rng)
    if kind == "skew_lines":
        x0, x1, x2, x3 = ring.gens()
        return _random_coordinates(intersect(Ideal([x0, x1], ring), Ideal([x2, x3], ring)), rng)
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# runners


def _plane_pencil(e: int):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        p = PencilArrangement.random(R, e, 1, ctx.seed, base=line(R))
        r = verify_plane_pencil(p)
        return {"Jac = (H1,H2)": r.checks["Jac = (H1,H2)"], "J saturated": r.checks["Jac saturated"],
                "CI type": r.values["type"], "degree": r.values["degree (s-1)^2"]}
    return run


def _star_config(s: int, d: int):
    def run(ctx: Context) -> dict:
        p = PencilArrangement.random(ctx.ring(), s, d, ctx.seed)
        r = star_power_identity(p)
        return {"power identity": r.checks["(F,P)^(s-1) = <G/G_i>"],
                "degree": r.values["degree C(s,2) d^2"], "ACM": r.checks["ACM"]}
    return run


def _pencil_ci(s: int, d: int):
    def run(ctx: Context) -> dict:
        p = PencilArrangement.random(ctx.ring(), s, d, ctx.seed)
        r = verify_sat_is_ci(p)
        if "Jac(G)^sat = (H1,H2)" not in r.checks:
            raise HypothesisError("; ".join(r.failures()))
        return {"Jac^sat = (H1,H2)": r.checks["Jac(G)^sat = (H1,H2)"],
                "Jac inside (H1,H2)": r.checks["Jac(G) inside (H1,H2)"],
                "CI type": r.values["type"], "degree": r.values["degree"]}
    return run


def _quadric_cone_plane(ctx: Context) -> dict:
    R = ctx.ring()
    x0, x1, x2, x3 = R.gens()
    cone = x0 * x1 - x2 ** 2
    rng = random.Random(f"cone:{ctx.seed}")
    vertex = Ideal([x0, x1, x2], R)
    plane = R.random_form(1, rng)
    spec = ArrangementSpec([cone, plane], R)
    J = jacobian_ideal(spec)
    top, _ = top_part(J, default_supports(spec), ctx.seed)
    conic = Ideal([cone, plane], R)
    rest = saturate_product(saturate_irrelevant(J), [general_form(conic, 1, rng)])
    out = {
        "top = (cone, plane)": ideal_equal(top, conic),
        "top is a smooth conic": is_smooth_form(plane) and codim(Ideal(
            list(conic.gens) + list(jacobian_ideal(cone).gens), R)) == 4,
        "top ACM": is_acm(top),
        "extra point off the conic": (not rest.is_unit() and codim(rest) == 3
                                      and all(radical_membership(v, rest) for v in vertex.gens)),
    }
    through = general_form(vertex, 1, rng)
    spec2 = ArrangementSpec([cone, through], R)
    J2 = jacobian_ideal(spec2)
    top2, _ = top_part(J2, default_supports(spec2), ctx.seed)
    out["through vertex: J^sat has an embedded point"] = not is_unmixed(saturate_irrelevant(J2))
    out["through vertex: top = (cone, plane)"] = ideal_equal(top2, Ideal([cone, through], R))
    return out


def _counterexa(ctx: Context) -> dict:
    R = ctx.ring()
    rng = random.Random(f"counterexa:{ctx.seed}")
    F, G = R.random_form(2, rng), R.random_form(3, rng)
    X = Ideal([F, G], R, tag="X")
    Hs = [general_form(X, 4, rng) for _ in range(3)]
    spec = ArrangementSpec([F, G] + Hs, R, ["F", "G", "H1", "H2", "H3"])
    values, top, pieces = _jacobian_summary(spec, [X], ctx.seed)
    q = _piece_on(pieces, X)
    values["deg piece on X"] = q.degree if q else 0
    values["piece on X ACM"] = is_acm(q.primary) if q else None
    hyp = check_hypotheses(spec)
    values["equal-degree condition violated"] = not hyp.checks[
        "factors sharing a codim-2 locus have equal degree"]
    return values


def _tangent_double_line(ctx: Context) -> dict:
    R = ctx.ring()
    ID, _ = double_line(R, ctx.seed)
    L = line(R)
    rng = random.Random(f"tangent:{ctx.seed}")
    G1, G2 = general_form(ID, 4, rng), general_form(ID, 5, rng)
    spec = ArrangementSpec([G1, G2], R, ["G1", "G2"])
    values, top, pieces = _jacobian_summary(spec, [L], ctx.seed)
    q = _piece_on(pieces, L)
    values["deg Y (on the line)"] = q.degree if q else 0
    values["deg E"] = sum(p.degree for p in pieces if p is not q)
    values["Y contains D"] = bool(q) and q.primary.is_subset(ID)
    hyp = check_hypotheses(spec)
    values["smooth-CI condition violated"] = not hyp.checks["pairs meet in smooth complete intersections"]
    return values


def _three_quadrics_line(ctx: Context) -> dict:
    R = ctx.ring()
    L = line(R)
    rng = random.Random(f"tql:{ctx.seed}")
    spec = ArrangementSpec([general_form(L, 2, rng) for _ in range(3)], R)
    values, top, pieces = _jacobian_summary(spec, [L], ctx.seed)
    q = _piece_on(pieces, L)
    cubics = [p for p in pieces if p is not q]
    values["support degrees"] = sorted(p.support_degree for p in pieces)
    values["deg X (on the line)"] = q.degree if q else 0
    values["X ACM"] = is_acm(q.primary) if q else None
    values["X complete intersection"] = len(q.primary.minimal_generators()) == 2 if q else None
    values["union of cubics ACM"] = is_acm(intersect_all([p.primary for p in cubics])) if cubics else None
    return values


def _twc(s: int):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        C = twisted_cubic(R)
        rng = random.Random(f"twc:{ctx.seed}:{s}")
        spec = ArrangementSpec([general_form(C, 2, rng) for _ in range(s)], R)
        values, top, pieces = _jacobian_summary(spec, [C], ctx.seed)
        q = _piece_on(pieces, C)
        values["deg Y"] = q.degree if q else 0
        values["lines"] = sum(1 for p in pieces if p is not q and p.support_degree == 1)
        return values
    return run


def _four_cubics(ctx: Context) -> dict:
    R = ctx.ring(2)
    P = point(R)
    rng = random.Random(f"four-cubics:{ctx.seed}")
    spec = ArrangementSpec([general_form(P, 3, rng) for _ in range(4)], R)
    J = jacobian_ideal(spec)
    _, pieces = top_part(J, default_supports(spec, [P]), ctx.seed)
    q = _piece_on(pieces, P)
    return {"deg X1": q.degree, "generator degrees of X1": q.primary.generator_degrees()}


def _planes_through_point(ctx: Context) -> dict:
    R = ctx.ring()
    P = point(R)
    rng = random.Random(f"ptp:{ctx.seed}")
    spec = ArrangementSpec([general_form(P, 1, rng) for _ in range(4)], R)
    r = hyperplane_flat_components(spec, ctx.seed)
    J = jacobian_ideal(spec)
    return {"HP(S/J^sat)": r.values["HP(J^sat)"], "HP(S/J^top)": r.values["HP(J^top)"],
            "J saturated": is_saturated(J), "lines": len(r.values["flats"]),
            "planes per line": r.values["flats"],
            "deg X^top": r.values["degree"], "X^top ACM": r.checks["J^top ACM"],
            "flat pieces": r.ok}


def _gen_ms(ctx: Context) -> dict:
    R = ctx.ring()
    rng = random.Random(f"gen-ms:{ctx.seed}")
    X, Y, Z, W = (R.random_form(2, rng) for _ in range(4))
    factors = [X, Y, Z, W, X + Y, Y + Z, Z + W, W + X, W + X + Y + Z]
    spec = ArrangementSpec(factors, R)
    values, top, pieces = _jacobian_summary(spec, (), ctx.seed)
    b = minimal_betti(top)
    values["Betti totals"] = b.totals()
    values["Betti rows"] = {str(k): v for k, v in b.rows().items()}
    values["Betti diagram"] = b.format()
    M = rao_of(top)
    values["Rao dims"] = M.sequence()
    values["Rao support"] = list(M.support())
    rad = radical_top(spec, pieces=pieces)
    rb = minimal_betti(rad)
    values["HP(S/rad)"] = _hp(rad)
    values["radical Betti totals"] = rb.totals()
    values["radical Betti diagram"] = rb.format()
    values["radical ACM"] = is_acm(rad)
    return values


def _skew_lines(ctx: Context) -> dict:
    R = ctx.ring()
    x0, x1, x2, x3 = R.gens()
    I = intersect(Ideal([x0, x1], R), Ideal([x2, x3], R))
    rng = random.Random(f"skew:{ctx.seed}")
    M = rao_of(I)
    F1 = general_form(I, 2, rng)
    F2 = R.random_form(1, rng)
    Z = basic_double_link(I, F1, F2, check_rao=True)
    return {"Rao dims": M.sequence(), "Rao support": list(M.support()), "ACM": is_acm(I),
            "BDL Rao support": list(rao_of(Z).support())}


def _liaison_family(count: int):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        passed, acm_rule = 0, 0
        kinds = ["ci", "twisted_cubic", "skew_lines"]
        for k in range(count):
            rng = random.Random(f"la:{ctx.seed}:{k}")
            I1 = _random_curve(R, rng, kinds[k % 3])
            I2 = _random_curve(R, rng, kinds[(k + 1) % 3])
            F1 = general_form(I1, 3, rng)
            F2 = general_form(I2, 3, rng)
            Z = liaison_addition(I1, I2, F1, F2)
            passed += 1
            acm_rule += is_acm(Z) == (is_acm(I1) and is_acm(I2))
        return {"additive and saturated": passed, "ACM iff both inputs ACM": acm_rule}
    return run


def _bdl_family(count: int):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        passed = 0
        for k in range(count):
            rng = random.Random(f"bdl:{ctx.seed}:{k}")
            I1 = _random_curve(R, rng, "skew_lines")
            F1 = general_form(I1, rng.choice([2, 3]), rng)
            F2 = R.random_form(rng.choice([1, 2]), rng)
            basic_double_link(I1, F1, F2, check_rao=True)
            passed += 1
        return {"Rao shifted by deg F2": passed}
    return run


# ---------------------------------------------------------------------------
# theorem families


def _mixed_arrangement(ring: Ring, seed: int) -> tuple[ArrangementSpec, int]:
    """A pencil-type block plus general factors; returns (spec, split index)."""
    rng = random.Random(f"mixed:{seed}")
    kind = seed % 3
    if kind == 0:
        p = PencilArrangement.random(ring, 3, 2, rng)
        rest = [ring.random_form(2, rng), ring.random_form(1, rng)]
        block = p.spec()
    elif kind == 1:
        p = PencilArrangement.random(ring, 3, 1, rng, base=_random_coordinates(line(ring), rng))
        rest = [ring.random_form(2, rng), ring.random_form(2, rng)]
        block = p.spec()
    else:
        p1 = PencilArrangement.random(ring, 3, 1, rng, base=_random_coordinates(line(ring), rng))
        p2 = PencilArrangement.random(ring, 2, 1, rng, base=_random_coordinates(line(ring), rng))
        block = p1.spec() + p2.spec()
        rest = [ring.random_form(1, rng)]
    return block + ArrangementSpec(rest, ring), len(block)


def _main_family(count: int):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        acm = rad_acm = hyp = 0
        for k in range(count):
            spec, split = _mixed_arrangement(R, ctx.seed * 1000 + k)
            h = check_hypotheses(spec)
            hyp += h.ok
            top, pieces = arrangement_top(spec, seed=ctx.seed)
            acm += is_acm(top)
            rad_acm += is_acm(radical_top(spec, pieces=pieces))
        return {"hypotheses hold": hyp, "J^top ACM": acm, "radical ACM": rad_acm}
    return run


def _decomposition_family(count: int, rao: bool = False):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        passed, failures = 0, []
        for k in range(count):
            rng = random.Random(f"decomp:{ctx.seed}:{k}")
            if k % 2 == 0:
                specF = PencilArrangement.random(R, 2 + k % 3, 1, rng,
                                                 base=_random_coordinates(line(R), rng)).spec()
            else:
                specF = ArrangementSpec([R.random_form(2, rng) for _ in range(2)], R)
            if k % 4 == 3:
                specG = ArrangementSpec([R.random_form(rng.choice([1, 2]), rng)], R)
            else:
                specG = PencilArrangement.random(R, 2, 1, rng, base=_random_coordinates(line(R), rng)).spec()
            r = verify_liaison_decomposition(specF, specG, seed=ctx.seed, rao=rao)
            passed += r.ok
            failures.extend(f"instance {k}: {f}" for f in r.failures())
        return {"decompositions verified": passed, "failures": failures}
    return run


def _pencil_family(kind: str):
    cases = [(s, 1) for s in range(2, 7)] + [(s, 2) for s in range(2, 5)] + [(s, 3) for s in range(2, 4)]

    def run(ctx: Context) -> dict:
        R = ctx.ring()
        passed, failures = 0, []
        for s, d in cases:
            p = PencilArrangement.random(R, s, d, ctx.seed)
            r = verify_sat_is_ci(p) if kind == "sat-is-ci" else star_power_identity(p)
            passed += r.ok
            failures.extend(f"s={s} d={d}: {f}" for f in r.failures())
        return {"cases verified": passed, "failures": failures}
    return run, len(cases)


def _stability_family(count: int):
    def run(ctx: Context) -> dict:
        R = ctx.ring()
        passed = 0
        for k in range(count):
            rng = random.Random(f"stab:{ctx.seed}:{k}")
            L = _random_coordinates(line(R), rng)
            p = PencilArrangement.random(R, 3, 1, rng, base=L)
            r = verify_component_stability(p.spec(), R.random_form(rng.choice([1, 2]), rng), L, ctx.seed)
            passed += r.ok
        return {"pieces unchanged": passed}
    return run


# ---------------------------------------------------------------------------
# registry


def _e(key, value, origin="reference", observational=False) -> Expectation:
    return Expectation(key, value, origin, observational)


_TWC = {3: (12, 15), 4: (24, 30), 5: (42, 52), 6: (63, 78), 7: (87, 108), 8: (117, 145),
        9: (150, 186), 10: (189, 234), 11: (231, 286)}
_TWC_SATURATED = {4, 5}
_TWC_UNMIXED = {3, 5, 6, 8, 10}


def _build_registry() -> dict[str, Scenario]:
    out: dict[str, Scenario] = {}

    def add(name, tier, summary, runner, expectations, enabled=True):
        out[name] = Scenario(name, tier, summary, runner, expectations, enabled=enabled)

    for e in range(2, 7):
        add(f"plane-pencil-{e}", "fast", f"{e} planes through a line", _plane_pencil(e), [
            _e("Jac = (H1,H2)", True), _e("J saturated", True),
            _e("CI type", [e - 1, e - 1], "derived"), _e("degree", (e - 1) ** 2)])
    pencil_cases = [(s, 1) for s in range(2, 7)] + [(s, 2) for s in range(2, 5)] + [(s, 3) for s in range(2, 4)]
    for s, d in pencil_cases:
        add(f"star-config-{s}-{d}", "fast", f"{s} members of a pencil of degree {d}: power identity",
            _star_config(s, d), [_e("power identity", True), _e("degree", comb(s, 2) * d * d),
                                 _e("ACM", True)])
        add(f"pencil-ci-{s}-{d}", "fast", f"{s} members of a pencil of degree {d}: saturation is a CI",
            _pencil_ci(s, d), [_e("Jac^sat = (H1,H2)", True), _e("Jac inside (H1,H2)", True),
                               _e("CI type", [(s - 1) * d] * 2),
                               _e("degree", ((s - 1) * d) ** 2, "derived")])
    add("skew-lines-rao", "fast", "two skew lines and a basic double link", _skew_lines, [
        _e("Rao dims", [1], "trivial"), _e("Rao support", [0, 0], "trivial"), _e("ACM", False, "trivial"),
        _e("BDL Rao support", [1, 1], "derived")])
    add("liaison-addition-random", "fast", "liaison addition on random curve pairs", _liaison_family(20), [
        _e("additive and saturated", 20, "trivial"), _e("ACM iff both inputs ACM", 20, "trivial")])
    add("bdl-random", "fast", "basic double links of skew lines", _bdl_family(8), [
        _e("Rao shifted by deg F2", 8, "trivial")])
    add("quadric-cone-plane", "fast", "quadric cone and a plane, general or through the vertex",
        _quadric_cone_plane, [
            _e("top = (cone, plane)", True), _e("top is a smooth conic", True), _e("top ACM", True),
            _e("extra point off the conic", True),
            _e("through vertex: J^sat has an embedded point", True),
            _e("through vertex: top = (cone, plane)", True)])
    add("planes-through-point", "standard", "four general planes through a point", _planes_through_point, [
        _e("HP(S/J^sat)", "6t - 1"), _e("HP(S/J^top)", "6t - 2"), _e("lines", 6), _e("deg X^top", 6), _e("X^top ACM", True), _e("flat pieces", True)])
    add("three-quadrics-line", "standard", "three general quadrics through a line", _three_quadrics_line, [
        _e("J saturated", False), _e("J^sat unmixed", True), _e("X^top ACM", False),
        _e("support degrees", [1, 3, 3, 3]), _e("deg X (on the line)", 4), _e("X ACM", False),
        _e("X complete intersection", False)])
    add("four-cubics-p2", "standard", "four general plane cubics through a point", _four_cubics, [
        _e("deg X1", 9), _e("generator degrees of X1", [3, 4, 4, 4])])
    for s, (y, top) in _TWC.items():
        exps = [_e("deg Y", y), _e("deg X^top", top), _e("X^top ACM", s in (3, 4)),
                _e("lines", comb(s, 2), "derived"),
                _e("J saturated", s in _TWC_SATURATED, observational=True),
                _e("J^sat unmixed", s in _TWC_UNMIXED, observational=True)]
        add(f"twc-{s}", "standard" if s <= 6 else "extended",
            f"{s} general quadrics through a twisted cubic", _twc(s), exps)
    add("counterexa", "extended", "quadric, cubic and three quartics through their intersection",
        _counterexa, [
            _e("HP(S/J^sat)", "138t - 759"), _e("HP(S/J^top)", "138t - 1217"), _e("deg X^top", 138),
            _e("X^top ACM", False), _e("deg piece on X", 84), _e("piece on X ACM", False),
            _e("J saturated", False), _e("equal-degree condition violated", True)])
    add("tangent-double-line", "extended", "quartic and quintic through a double line",
        _tangent_double_line, [
            _e("deg X^top", 21), _e("deg Y (on the line)", 3), _e("deg E", 18), _e("X^top ACM", False),
            _e("smooth-CI condition violated", True)])
    add("gen-ms", "extended", "nine-factor arrangement of quadrics", _gen_ms, [
        _e("HP(S/J)", "168t - 1728"), _e("J saturated", False), _e("J^sat unmixed", True),
        _e("Betti totals", [1, 4, 4, 1]),
        _e("Betti rows", {"0": [1, 0, 0, 0], "15": [0, 4, 0, 0], "20": [0, 0, 4, 0], "21": [0, 0, 0, 1]}),
        _e("Rao dims", [1, 4, 6, 4, 1]), _e("HP(S/rad)", "96t - 672"),
        _e("radical Betti totals", [1, 12, 15, 4]), _e("radical ACM", False, "derived")])
    add("kummer", "extended", "Kummer surface configuration (not available)", _kummer, [], enabled=False)

    for kind in ("sat-is-ci", "star-power"):
        run, n = _pencil_family(kind)
        add(f"theorem-{kind}", "fast", f"{kind} over every pencil case", run, [
            _e("cases verified", n, "trivial"), _e("failures", [], "trivial")])
    add("theorem-liaison-decomposition", "standard", "decomposition formulas on seeded pairs",
        _decomposition_family(4), [_e("decompositions verified", 4, "trivial"), _e("failures", [], "trivial")])
    add("theorem-component-stability", "standard", "pieces on a pencil line survive a new factor",
        _stability_family(3), [_e("pieces unchanged", 3, "trivial")])
    add("theorem-main", "standard", "ten seeded mixed arrangements satisfying the hypotheses",
        _main_family(10), [_e("hypotheses hold", 10, "trivial"), _e("J^top ACM", 10, "trivial"),
                           _e("radical ACM", 10, "trivial")])
    return out


def _kummer(ctx: Context) -> dict:
    raise NotImplementedError("the Kummer configuration is not implemented")


_REGISTRY: dict[str, Scenario] | None = None


def registry() -> dict[str, Scenario]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build_registry()
    return _REGISTRY


def scenarios_for_tier(tier: str, include_disabled: bool = False) -> list[Scenario]:
    """Scenarios at or below the given tier."""
    rank = TIERS.index(tier)
    return [s for s in registry().values()
            if TIERS.index(s.tier) <= rank and (s.enabled or include_disabled)]


# ---------------------------------------------------------------------------
# running


def _same(a, b) -> bool:
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(_same(a[k], b[k]) for k in a)
    return a == b


def _plain_value(v):
    if isinstance(v, (list, tuple)):
        return [_plain_value(a) for a in v]
    if isinstance(v, dict):
        return {str(k): _plain_value(a) for k, a in v.items()}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def judge(scenario_name: str, tier: str, expectations, values: dict, ctx: Context, seconds: float,
          exhausted: bool = False, notes=()) -> ScenarioReport:
    report = ScenarioReport(scenario_name, tier, ctx.seed, ctx.char, seconds=seconds,
                            budget_exhausted=exhausted, notes=list(notes))
    report.values = {k: _plain_value(v) for k, v in values.items()}
    for e in expectations:
        if exhausted and e.key not in values:
            status, got = "skipped-budget", None
        elif e.key not in values:
            status, got = "missing", None
        else:
            got = report.values[e.key]
            status = "match" if _same(got, e.expected) else "mismatch"
        report.verdicts.append(Verdict(e.key, e.expected, got, status, e.observational, e.origin))
    return report


def run_scenario(name: str, seed: int | None = None, char: int = 32003, budget: Budget | None = None,
                 order: str = "grevlex", retries: int = 1) -> ScenarioReport:
    """Run a registered scenario; one re-seed is allowed if a general choice was special."""
    scen = registry().get(name)
    if scen is None:
        raise KeyError(f"unknown scenario {name!r}")
    if not scen.enabled:
        raise NotImplementedError(f"scenario {name!r} is disabled")
    seed = scen.seed if seed is None else seed
    notes = []
    for attempt in range(retries + 1):
        ctx = Context(seed + attempt * 7919, char, budget, order)
        start = time.monotonic()
        try:
            with budget_scope(_absolute(budget)):
                values = scen.runner(ctx)
            return judge(name, scen.tier, scen.expectations, values, ctx, time.monotonic() - start, notes=notes)
        except HypothesisError as exc:
            notes.append(f"seed {ctx.seed}: general choice was special ({exc}); re-seeding")
        except BudgetExhausted as exc:
            return judge(name, scen.tier, scen.expectations, {}, ctx, time.monotonic() - start,
                         exhausted=True, notes=notes + [f"budget exhausted: {exc}"])
    return judge(name, scen.tier, scen.expectations, {}, ctx, 0.0, notes=notes)


def _absolute(budget: Budget | None) -> Budget | None:
    """Turn a relative time limit into a deadline shared by every computation."""
    if budget is None or budget.seconds is None:
        return budget
    return Budget(budget.max_degree, budget.max_pairs, None, time.monotonic() + budget.seconds)


# ---------------------------------------------------------------------------
# scenario files


class ScenarioFileError(ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)
        self.line, self.column = line, column


FILE_FIELDS = {"ring", "seed", "loci", "factors", "tasks", "expect", "tier", "hints"}
FILE_TASKS = ("jacobian", "saturation", "top", "radical", "hilbert", "betti", "acm", "rao", "hypotheses")


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def load_scenario_file(text: str) -> dict:
    """Parse and validate a scenario file (JSON)."""
    import json
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ScenarioFileError("a scenario file holds one JSON object", 1, 1)
    for key in data:
        if key not in FILE_FIELDS:
            raise ScenarioFileError(f"unknown field {key!r}", *_locate(text, f'"{key}"'))
    if "factors" not in data:
        raise ScenarioFileError("missing field 'factors'")
    for task in data.get("tasks", []):
        if task not in FILE_TASKS:
            raise ScenarioFileError(f"unknown task {task!r}", *_locate(text, f'"{task}"'))
    if data.get("tier", "fast") not in TIERS:
        raise ScenarioFileError(f"unknown tier {data['tier']!r}", *_locate(text, '"tier"'))
    return data


def _file_ring(spec, char: int, order) -> Ring:
    n = spec.get("n", 3) if isinstance(spec, dict) else int(str(spec).lstrip("Pp") or 3)
    if isinstance(spec, dict):
        char = spec.get("char", char)
        order = spec.get("order", order)
    return Ring(n, char, order=order or "grevlex")


def _file_locus(name: str, value, ring: Ring, seed: int, text: str) -> Ideal:
    from .ring import ParseError, parse_poly
    if isinstance(value, str):
        if value == "double_line":
            return double_line(ring, seed)[0]
        if value not in LOCI:
            raise ScenarioFileError(f"unknown locus {value!r}", *_locate(text, f'"{value}"'))
        return LOCI[value](ring)
    try:
        return Ideal([parse_poly(g, ring) for g in value], ring, tag=name)
    except ParseError as exc:
        raise ScenarioFileError(f"locus {name!r}: {exc}", *_locate(text, f'"{name}"')) from None


def _file_factors(data: dict, ring: Ring, loci: dict, seed: int, text: str) -> list:
    from .ring import ParseError, parse_poly
    out = []
    for k, item in enumerate(data["factors"]):
        if isinstance(item, str):
            try:
                out.append(parse_poly(item, ring))
            except ParseError as exc:
                raise ScenarioFileError(f"factor {k}: {exc}", *_locate(text, item)) from None
        elif isinstance(item, dict) and "general" in item:
            base = item["general"]
            if base not in loci:
                raise ScenarioFileError(f"factor {k}: unknown locus {base!r}", *_locate(text, f'"{base}"'))
            out.append(general_form(loci[base], int(item["degree"]), random.Random(f"file:{seed}:{k}")))
        elif isinstance(item, dict) and "random" in item:
            out.append(ring.random_form(int(item["random"]), random.Random(f"file:{seed}:{k}")))
        else:
            raise ScenarioFileError(f"factor {k}: expected a polynomial string, "
                                    "{'general': locus, 'degree': d} or {'random': d}")
    return out


def run_file(text: str, char: int = 32003, seed: int | None = None, order=None,
             budget: Budget | None = None, name: str = "file") -> ScenarioReport:
    """Run the tasks of a scenario file and compare with its ``expect`` block."""
    data = load_scenario_file(text)
    seed = data.get("seed", 1) if seed is None else seed
    ring = _file_ring(data.get("ring", 3), char, order)
    loci = {k: _file_locus(k, v, ring, seed, text) for k, v in data.get("loci", {}).items()}
    factors = _file_factors(data, ring, loci, seed, text)
    try:
        spec = ArrangementSpec(factors, ring)
    except ValueError as exc:
        raise ScenarioFileError(f"factors: {exc}") from None
    hints = []
    for h in data.get("hints", []):
        if h not in loci:
            raise ScenarioFileError(f"hint {h!r} is not a declared locus", *_locate(text, f'"{h}"'))
        hints.append(loci[h])
    tasks = data.get("tasks") or ["top"]
    ctx = Context(seed, ring.char, budget)
    expectations = [Expectation(k, v) for k, v in data.get("expect", {}).items()]
    start = time.monotonic()
    values: dict = {}
    try:
        with budget_scope(_absolute(budget)):
            _file_tasks(spec, hints, tasks, seed, values)
    except BudgetExhausted as exc:
        return judge(name, data.get("tier", "fast"), expectations, values, ctx, time.monotonic() - start,
                     exhausted=True, notes=[f"budget exhausted: {exc}"])
    return judge(name, data.get("tier", "fast"), expectations, values, ctx, time.monotonic() - start)


def _file_tasks(spec: ArrangementSpec, hints: list, tasks: list, seed: int, values: dict):
    J = jacobian_ideal(spec)
    need_top = {"top", "radical", "acm", "rao", "betti"} & set(tasks)
    if "jacobian" in tasks:
        values["J generators"] = [str(g) for g in J.gens]
        values["HP(S/J)"] = _hp(J)
    if "saturation" in tasks:
        Jsat = saturate_irrelevant(J)
        values["J saturated"] = is_saturated(J)
        values["HP(S/J^sat)"] = _hp(Jsat)
        values["J^sat unmixed"] = is_unmixed(Jsat)
    if "hilbert" in tasks:
        values["Hilbert series of S/J"] = hilbert_data(J).series_string()
    if "hypotheses" in tasks:
        values["hypotheses"] = check_hypotheses(spec).checks
    if not need_top:
        return
    top, pieces = top_part(J, default_supports(spec, hints), seed)
    if top.is_unit():
        values["verdict"] = "no codim-2 singular locus"
        return
    values["HP(S/J^top)"] = _hp(top)
    values["deg X^top"] = hilbert_data(top).degree
    values["pieces"] = [q.as_dict() for q in pieces]
    if len(spec) == 2:
        values["top = (f, g)"] = ideal_equal(top, Ideal(spec.factors, spec.ring))
    if "acm" in tasks:
        values["X^top ACM"] = is_acm(top)
    if "betti" in tasks:
        b = minimal_betti(top)
        values["Betti totals"] = b.totals()
        values["Betti diagram"] = b.format()
    if "rao" in tasks and spec.ring.nvars == 4:
        values["Rao dims"] = rao_of(top).sequence()
    if "radical" in tasks:
        rad = radical_top(spec, pieces=pieces)
        values["HP(S/rad)"] = _hp(rad)
        values["radical ACM"] = is_acm(rad)
