"""The ``arr`` command line: examples, scenario files and verification suites."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .groebner import Budget
from .ring import is_prime
from .scenarios import (TIERS, Context, ScenarioFileError, ScenarioReport, registry, run_file,
                        run_scenario, scenarios_for_tier)
from .suites import SUITES

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4

PAPER_SUITES = {f"paper-{t}": t for t in TIERS}
THEOREM_FAMILIES = ("theorem-sat-is-ci", "theorem-star-power", "theorem-liaison-decomposition",
                    "theorem-component-stability", "theorem-main")


class UsageError(Exception):
    pass


def _char(text: str) -> int:
    p = int(text)
    if p != 0 and not is_prime(p):
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or prime, got {p}")
    return p


def _positive(kind):
    def parse(text: str):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"budget must be positive, got {text}")
        return v
    return parse


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--char", type=_char, default=32003, help="field characteristic, 0 or a prime")
    p.add_argument("--seed", type=int, default=None, help="seed for the general choices")
    p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    p.add_argument("--budget-seconds", type=_positive(float), default=None)
    p.add_argument("--budget-degree", type=_positive(int), default=None)
    p.add_argument("--tier", choices=TIERS, default=None, help="highest tier allowed to run")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--strict", action="store_true",
                   help="budget exhaustion and observational mismatches also fail")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="arr", description="Jacobian ideals of hypersurface arrangements",
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    ex = sub.add_parser("example", parents=[common], help="run one registered scenario")
    ex.add_argument("name")
    run = sub.add_parser("run", parents=[common], help="run a JSON scenario file")
    run.add_argument("file")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=list(SUITES) + ["theorems"] + list(PAPER_SUITES))
    ver.add_argument("--seeds", type=_positive(int), default=1, help="number of seeds to sweep")
    ls = sub.add_parser("list", parents=[common], help="list registered scenarios")
    ls.add_argument("--all", action="store_true", help="include disabled scenarios")
    return parser


def _budget(args) -> Budget | None:
    if args.budget_seconds is None and args.budget_degree is None:
        return None
    return Budget(max_degree=args.budget_degree, seconds=args.budget_seconds)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ARR_THREADS", "1")))
    except ValueError:
        return 1


# one job = (kind, name, seed, char, order, budget); module-level so it pickles
def _job(task) -> ScenarioReport:
    kind, name, seed, char, order, budget = task
    if kind == "suite":
        return SUITES[name](Context(seed if seed is not None else 1, char, budget, order))
    return run_scenario(name, seed=seed, char=char, budget=budget, order=order)


def _run_jobs(tasks: list) -> list[ScenarioReport]:
    n = min(_threads(), len(tasks))
    if n <= 1:
        return [_job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_job, tasks))


def _exit_code(reports: list[ScenarioReport], strict: bool) -> int:
    if any(r.budget_exhausted for r in reports):
        if strict:
            return EXIT_BUDGET
    if any(not r.ok and not r.budget_exhausted for r in reports):
        return EXIT_MISMATCH
    if strict and any(r.warnings for r in reports):
        return EXIT_MISMATCH
    return EXIT_PASS


def _emit(reports: list[ScenarioReport], code: int, fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"exit": code, "reports": [r.as_dict() for r in reports]}, out, indent=2, default=str)
        out.write("\n")
        return
    for r in reports:
        out.write(r.text() + "\n")
        if not r.ok:
            out.write(f"  reproduce: {_reproduce(r)}\n")
    if len(reports) > 1:
        passed = sum(r.ok for r in reports)
        out.write(f"{passed}/{len(reports)} passed\n")


def _reproduce(r: ScenarioReport) -> str:
    if r.name in SUITES:
        return f"arr verify {r.name} --seed {r.seed} --char {r.char}"
    return f"arr example {r.name} --seed {r.seed} --char {r.char} --tier {r.tier}"


def _tasks_for(args) -> list:
    budget = _budget(args)
    task = lambda kind, name, seed: (kind, name, seed, args.char, args.order, budget)  # noqa: E731
    if args.command == "example":
        scen = registry().get(args.name)
        if scen is None:
            raise UsageError(f"unknown scenario {args.name!r}; see 'arr list'")
        if not scen.enabled:
            raise UsageError(f"scenario {args.name!r} is disabled")
        allowed = args.tier or "standard"
        if TIERS.index(scen.tier) > TIERS.index(allowed):
            article = "an" if scen.tier[0] in "aeiou" else "a"
            raise UsageError(f"{args.name} is {article} {scen.tier}-tier scenario; pass --tier {scen.tier}")
        return [task("scenario", args.name, args.seed)]
    seeds = [(args.seed or 1) + k for k in range(args.seeds)]
    if args.suite in SUITES:
        return [task("suite", args.suite, s) for s in seeds]
    if args.suite == "theorems":
        return [task("scenario", name, s) for s in seeds for name in THEOREM_FAMILIES]
    tier = PAPER_SUITES[args.suite]
    if args.tier is not None and TIERS.index(tier) > TIERS.index(args.tier):
        raise UsageError(f"{args.suite} needs --tier {tier} or no tier filter")
    names = [s.name for s in scenarios_for_tier(tier)
             if s.tier == tier and not s.name.startswith("theorem-")]
    return [task("scenario", name, s) for s in seeds for name in names]


def _list(args, out) -> int:
    tier = args.tier or "extended"
    rows = scenarios_for_tier(tier, include_disabled=args.all)
    if args.format == "json":
        json.dump([{"name": s.name, "tier": s.tier, "enabled": s.enabled, "summary": s.summary} for s in rows],
                  out, indent=2)
        out.write("\n")
    else:
        for s in rows:
            flag = "" if s.enabled else " (disabled)"
            out.write(f"{s.name:34} {s.tier:9} {s.summary}{flag}\n")
    return EXIT_PASS


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "list":
            return _list(args, out)
        if args.command == "run":
            try:
                with open(args.file) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
            reports = [run_file(text, args.char, args.seed, args.order, _budget(args), name=args.file)]
        else:
            reports = _run_jobs(_tasks_for(args))
    except (UsageError, ScenarioFileError) as exc:
        print(f"arr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # anything else is a bug or a failed internal assertion
        print(f"arr: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    code = _exit_code(reports, args.strict)
    _emit(reports, code, args.format, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
