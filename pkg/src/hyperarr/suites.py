"""Self-check suites for the engine, the ideal operations and the invariants.

Each suite returns a ScenarioReport so the command line treats them exactly
like the registered examples.
"""

from __future__ import annotations

import random
import time

from .idealops import (Ideal, ideal_equal, intersect, quotient, saturate, saturate_irrelevant,
                       saturate_iterate)
from .invariants import hilbert_data, minimal_betti, minimal_resolution
from .oracle import engine_sweep, random_ideal
from .ring import Ring
from .scenarios import Context, Expectation, ScenarioReport, judge


def _report(name: str, ctx: Context, values: dict, expectations: list[Expectation], start: float):
    return judge(name, "fast", expectations, values, ctx, time.monotonic() - start)


def engine_suite(ctx: Context, count: int = 200) -> ScenarioReport:
    start = time.monotonic()
    checked, problems = engine_sweep(count, ctx.seed)
    return _report("engine", ctx, {"cases checked": checked, "problems": problems},
                   [Expectation("problems", [], "trivial")], start)


def _pair(ring: Ring, rng: random.Random) -> tuple[Ideal, Ideal]:
    return (Ideal(random_ideal(ring, rng, max_degree=2), ring),
            Ideal(random_ideal(ring, rng, max_degree=2), ring))


def ideals_suite(ctx: Context, count: int = 25) -> ScenarioReport:
    """Containments that hold for all ideals, plus two saturation routes."""
    start = time.monotonic()
    problems = []
    for k in range(count):
        rng = random.Random(f"ideals:{ctx.seed}:{k}")
        ring = Ring(rng.choice([2, 3]), ctx.char, order=ctx.order)
        I, J = _pair(ring, rng)
        meet = intersect(I, J)
        if not (meet.is_subset(I) and meet.is_subset(J) and (I * J).is_subset(meet)):
            problems.append(f"case {k}: IJ <= I cap J <= I, J fails")
        Q = quotient(I, J)
        if not (Q * J).is_subset(I) or not I.is_subset(Q):
            problems.append(f"case {k}: (I:J) J <= I or I <= I:J fails")
        if not ideal_equal(saturate(I, J), saturate_iterate(I, J)):
            problems.append(f"case {k}: saturation routes disagree")
        sat = saturate_irrelevant(I)
        if not ideal_equal(sat, saturate_iterate(I, Ideal(ring.gens(), ring))):
            problems.append(f"case {k}: irrelevant saturation routes disagree")
    return _report("ideals", ctx, {"cases": count, "problems": problems},
                   [Expectation("problems", [], "trivial")], start)


def invariants_suite(ctx: Context, count: int = 25) -> ScenarioReport:
    """Betti numbers against the Hilbert function and the minimized resolution."""
    start = time.monotonic()
    problems = []
    for k in range(count):
        rng = random.Random(f"invariants:{ctx.seed}:{k}")
        ring = Ring(rng.choice([2, 3]), ctx.char, order=ctx.order)
        I = Ideal(random_ideal(ring, rng, max_degree=3), ring)
        h = hilbert_data(I)
        b = minimal_betti(I)
        top = max(h.regularity_index, 0) + ring.nvars + 4
        if any(b.hilbert_function(t, ring.nvars) != h.function(t) for t in range(top)):
            problems.append(f"case {k}: Betti table does not give the Hilbert function")
        degs, _ = minimal_resolution(I)
        counted = {}
        for i, ds in enumerate(degs):
            for d in ds:
                counted[(i, d)] = counted.get((i, d), 0) + 1
        if counted != {key: v for key, v in b.entries.items() if v}:
            problems.append(f"case {k}: Tor ranks and minimized resolution disagree")
    return _report("invariants", ctx, {"cases": count, "problems": problems},
                   [Expectation("problems", [], "trivial")], start)


SUITES = {"engine": engine_suite, "ideals": ideals_suite, "invariants": invariants_suite}
