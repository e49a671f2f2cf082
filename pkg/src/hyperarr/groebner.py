"""Degree-by-degree Groebner bases for homogeneous ideals and graded modules.

The engine follows the F4 pattern.  All critical pairs of the lowest pending
degree are collected, every monomial of the resulting rows that is divisible by
a known lead term gets a reducer row (the symbolic preprocessing closure), and
one dense linear algebra step over the field eliminates them:

    [A B]   reducer rows, A unit upper triangular on the lead columns
    [C D]   pair halves and new inputs

The rows ``D - C A^-1 B`` put into reduced echelon form are the new basis
elements of that degree.  Because every lead-divisible monomial became a pivot,
the output is a reduced Groebner basis without any interreduction pass.  Pairs
are pruned with the Gebauer-Moeller criteria.
"""

from __future__ import annotations

import contextlib
import contextvars
import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import backend
from .modules import Elt, FreeModule, build_elt, elt_to_vec, make_multiple, vec_to_elts
from .ring import Poly, Ring

log = logging.getLogger("hyperarr.groebner")


class BudgetExhausted(RuntimeError):
    """A Groebner computation hit its degree, pair or time limit."""

    def __init__(self, message: str, stats: "Stats"):
        super().__init__(message)
        self.stats = stats


@dataclass
class Budget:
    """Limits for one basis computation; ``deadline`` is an absolute monotonic time."""

    max_degree: int | None = None
    max_pairs: int | None = None
    seconds: float | None = None
    deadline: float | None = None

    def check(self, stats: "Stats", degree: int, start: float):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted("wall-clock budget exhausted", stats)
        if self.max_degree is not None and degree > self.max_degree:
            raise BudgetExhausted(f"degree {degree} exceeds budget {self.max_degree}", stats)
        if self.max_pairs is not None and stats.pairs_reduced > self.max_pairs:
            raise BudgetExhausted(f"more than {self.max_pairs} pairs", stats)
        if self.seconds is not None and time.monotonic() - start > self.seconds:
            raise BudgetExhausted(f"time budget of {self.seconds}s exhausted", stats)


_ambient: contextvars.ContextVar = contextvars.ContextVar("hyperarr_budget", default=None)


@contextlib.contextmanager
def budget_scope(budget: Budget | None):
    """Apply ``budget`` to every basis computation started without an explicit one."""
    token = _ambient.set(budget)
    try:
        yield budget
    finally:
        _ambient.reset(token)


@dataclass
class Stats:
    pairs_created: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    max_degree: int = 0
    largest_matrix: tuple = (0, 0)
    seconds: float = 0.0
    per_degree: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "pairs_created": self.pairs_created,
            "pairs_reduced": self.pairs_reduced,
            "zero_reductions": self.zero_reductions,
            "max_degree": self.max_degree,
            "largest_matrix": list(self.largest_matrix),
            "seconds": round(self.seconds, 3),
        }


_BIG = np.iinfo(np.int64).max


class Basis:
    """Growing list of monic elements with lead data cached as arrays."""

    def __init__(self, module: FreeModule):
        self.module = module
        self.elts: list[Elt] = []
        self._lc: list[int] = []
        self._le: list[np.ndarray] = []
        self._arrays = None

    def __len__(self):
        return len(self.elts)

    def add(self, elt: Elt) -> int:
        self.elts.append(elt)
        self._lc.append(int(elt.comp[0]))
        self._le.append(elt.exps[0].copy())
        self._arrays = None
        return len(self.elts) - 1

    def arrays(self):
        if self._arrays is None:
            nv = self.module.nvars
            lc = np.array(self._lc, dtype=np.int64)
            le = np.array(self._le, dtype=np.int64).reshape(len(self._le), nv)
            cost = np.array([len(e) for e in self.elts], dtype=np.int64)
            self._arrays = (lc, le, cost)
        return self._arrays

    def divisors(self, comps: np.ndarray, exps: np.ndarray, chunk: int = 1024) -> np.ndarray:
        """Index of the cheapest element whose lead divides each term, or -1."""
        out = np.full(comps.size, -1, dtype=np.int64)
        if not self.elts or comps.size == 0:
            return out
        lc, le, cost = self.arrays()
        for s in range(0, comps.size, chunk):
            c = comps[s:s + chunk]
            e = exps[s:s + chunk]
            ok = (lc[None, :] == c[:, None]) & np.all(le[None, :, :] <= e[:, None, :], axis=2)
            masked = np.where(ok, cost[None, :], _BIG)
            j = masked.argmin(axis=1)
            out[s:s + chunk] = np.where(ok.any(axis=1), j, -1)
        return out


@dataclass
class _Step:
    D: np.ndarray
    codes: np.ndarray  # non-pivot column codes, biggest first
    X: np.ndarray | None
    reducers: list


def _linear_step(basis: Basis, rows: Sequence[Elt], tags: Sequence | None = None,
                 want_x: bool = False, stats: Stats | None = None) -> _Step:
    """Eliminate every lead-divisible monomial from ``rows`` (all of one degree)."""
    module = basis.module
    ring = module.ring
    kern = backend(ring.char)
    row_codes = [r.codes(module) for r in rows]
    known = np.unique(np.concatenate(row_codes)) if row_codes else np.zeros(0, np.int64)
    reducers: list[tuple[int, np.ndarray, Elt]] = []
    red_tags = set()
    todo = known
    while todo.size:
        comps, exps = module.decode(todo)
        idx = basis.divisors(comps, exps)
        sel = np.flatnonzero(idx >= 0)
        if sel.size == 0:
            break
        _, le, _ = basis.arrays()
        new_codes = []
        for k in sel.tolist():
            g = int(idx[k])
            mult = exps[k] - le[g]
            e = make_multiple(basis.elts[g], mult, ring)
            reducers.append((g, mult, e))
            red_tags.add((g, int(todo[k])))
            new_codes.append(e.codes(module))
        fresh = np.unique(np.concatenate(new_codes))
        todo = np.setdiff1d(fresh, known, assume_unique=True)
        known = np.union1d(known, todo)

    # drop input rows that duplicate a chosen reducer
    if tags is not None:
        keep = [i for i, t in enumerate(tags) if t is None or t not in red_tags]
        rows = [rows[i] for i in keep]
        row_codes = [row_codes[i] for i in keep]

    comps, exps = module.decode(known)
    order = module.sort_perm(comps, exps)
    colpos = np.empty(known.size, dtype=np.int64)
    colpos[order] = np.arange(known.size)

    nA = len(reducers)
    lead_cols = np.array([colpos[np.searchsorted(known, e.codes(module)[0])] for _, _, e in reducers],
                         dtype=np.int64)
    perm = np.argsort(lead_cols, kind="stable")
    reducers = [reducers[i] for i in perm]
    lead_cols = lead_cols[perm]
    is_piv = np.zeros(known.size, dtype=bool)
    is_piv[lead_cols] = True
    pidx = np.full(known.size, -1, dtype=np.int64)
    pidx[lead_cols] = np.arange(nA)
    non = np.flatnonzero(~is_piv)
    nidx = np.full(known.size, -1, dtype=np.int64)
    nidx[non] = np.arange(non.size)

    def fill(elts, codes_list):
        P = kern.zeros((len(elts), nA))
        Q = kern.zeros((len(elts), non.size))
        if not elts:
            return P, Q
        rid = np.concatenate([np.full(len(e), i, dtype=np.int64) for i, e in enumerate(elts)])
        cols = colpos[np.searchsorted(known, np.concatenate(codes_list))]
        coef = np.concatenate([e.coef for e in elts])
        m = is_piv[cols]
        P[rid[m], pidx[cols[m]]] = coef[m]
        Q[rid[~m], nidx[cols[~m]]] = coef[~m]
        return P, Q

    A, B = fill([r[2] for r in reducers], [r[2].codes(module) for r in reducers])
    CA, CB = fill(rows, row_codes)
    if stats is not None:
        shape = (nA + len(rows), known.size)
        if shape[0] * shape[1] > stats.largest_matrix[0] * stats.largest_matrix[1]:
            stats.largest_matrix = shape
    if nA:
        X = kern.solve_upper_unit(A, CA)
        D = kern.sub_mod(CB, kern.matmul(X, B))
    else:
        X = kern.zeros((len(rows), 0))
        D = CB
    return _Step(D, known[order][~is_piv] if known.size else known, X if want_x else None,
                 [(g, m) for g, m, _ in reducers])


def _row_to_elt(module: FreeModule, row: np.ndarray, codes: np.ndarray, deg: int) -> Elt | None:
    nz = np.flatnonzero(row)
    if nz.size == 0:
        return None
    comp, exps = module.decode(codes[nz])
    return Elt(comp, exps, row[nz].copy(), deg)


class _Pairs:
    """Pending critical pairs bucketed by degree, stored as arrays."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.buckets: dict[int, list[tuple]] = {}

    def add(self, deg: int, I, J, L):
        if len(I):
            self.buckets.setdefault(deg, []).append((np.asarray(I), np.asarray(J), np.asarray(L)))

    def _merged(self, deg):
        parts = self.buckets[deg]
        if len(parts) > 1:
            parts = [tuple(np.concatenate([p[k] for p in parts]) for k in range(3))]
            self.buckets[deg] = parts
        return parts[0]

    def min_degree(self):
        return min(self.buckets) if self.buckets else None

    def pop(self, deg):
        out = self._merged(deg)
        del self.buckets[deg]
        return out

    def count(self):
        return sum(len(p[0]) for ps in self.buckets.values() for p in ps)

    def prune(self, h_exp: np.ndarray, h_comp: int, basis: Basis):
        """Drop pairs (a, b) made redundant by the new element h (chain criterion)."""
        lc, le, _ = basis.arrays()
        for deg in list(self.buckets):
            I, J, L = self._merged(deg)
            if not len(I):
                continue
            div = (lc[I] == h_comp) & np.all(L >= h_exp, axis=1)
            if not div.any():
                continue
            la = np.maximum(le[I], h_exp)
            lb = np.maximum(le[J], h_exp)
            drop = div & np.any(la != L, axis=1) & np.any(lb != L, axis=1)
            if drop.any():
                keep = ~drop
                self.buckets[deg] = [(I[keep], J[keep], L[keep])]


def _new_pairs(basis: Basis, h: int, product_criterion: bool):
    lc, le, _ = basis.arrays()
    hc, he = lc[h], le[h]
    gs = np.flatnonzero(lc[:h] == hc)
    if gs.size == 0:
        return gs, np.zeros((0, le.shape[1]), dtype=np.int64)
    L = np.maximum(le[gs], he)
    coprime = ~np.any(np.minimum(le[gs], he) > 0, axis=1) if product_criterion else np.zeros(gs.size, bool)
    # chain criterion among the new pairs: drop if another lcm properly divides
    divides = np.all(L[:, None, :] <= L[None, :, :], axis=2)
    equal = np.all(L[:, None, :] == L[None, :, :], axis=2)
    proper = divides & ~equal
    dominated = proper.any(axis=0)
    keep = []
    seen: dict[tuple, int] = {}
    groups: dict[tuple, list[int]] = {}
    for k in range(gs.size):
        if dominated[k]:
            continue
        groups.setdefault(tuple(L[k].tolist()), []).append(k)
    for key, ks in groups.items():
        if any(coprime[k] for k in ks):
            continue
        keep.append(ks[0])
        seen[key] = ks[0]
    keep = np.array(sorted(keep), dtype=np.int64)
    return gs[keep], L[keep]


class GroebnerBasis:
    """Reduced Groebner basis of a graded submodule (an ideal when rank is 1).

    ``complete`` is False when the computation was truncated; the basis is then
    only valid through degree ``valid_through``.
    """

    def __init__(self, module: FreeModule, basis: Basis, complete: bool, valid_through, stats: Stats):
        self.module = module
        self._basis = basis
        self.complete = complete
        self.valid_through = valid_through
        self.stats = stats

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def elts(self) -> list[Elt]:
        return self._basis.elts

    def __len__(self):
        return len(self._basis)

    def vectors(self) -> list[list[Poly]]:
        return [elt_to_vec(self.module, e) for e in self.elts]

    def polys(self) -> list[Poly]:
        if self.module.rank != 1:
            raise ValueError("polys() is for ideals; use vectors()")
        return [v[0] for v in self.vectors()]

    def leads(self) -> list[tuple[int, tuple]]:
        return [e.lead() for e in self.elts]

    def lead_monomials(self, comp: int = 0) -> list[tuple]:
        return [e for c, e in self.leads() if c == comp]

    def degrees(self) -> list[int]:
        return [e.deg for e in self.elts]

    def reduce_elts(self, elts: Sequence[Elt | None], lift: bool = False):
        return reduce_elts(self._basis, elts, lift)

    def normal_form(self, f) -> Poly | list[Poly]:
        """Fully reduced normal form of a polynomial (or vector)."""
        vec = [f] if isinstance(f, Poly) else list(f)
        parts = vec_to_elts(self.module, vec)
        rems, _ = reduce_elts(self._basis, parts)
        total = [self.ring.zero() for _ in range(self.module.rank)]
        for r in rems:
            if r is not None:
                total = [a + b for a, b in zip(total, elt_to_vec(self.module, r))]
        return total[0] if isinstance(f, Poly) else total

    def contains(self, f) -> bool:
        nf = self.normal_form(f)
        return nf.is_zero() if isinstance(nf, Poly) else all(c.is_zero() for c in nf)


def reduce_elts(basis: Basis, elts: Sequence[Elt | None], lift: bool = False):
    """Normal forms of homogeneous elements, optionally with quotients.

    Returns ``(remainders, lifts)``; ``lifts[k]`` lists ``(index, multiplier,
    coefficient)`` with ``elts[k] = sum coef * x^mult * g_index + remainder``.
    """
    module = basis.module
    rems: list[Elt | None] = [None] * len(elts)
    lifts: list[list] = [[] for _ in elts]
    by_deg: dict[int, list[int]] = {}
    for k, e in enumerate(elts):
        if e is not None and len(e):
            by_deg.setdefault(e.deg, []).append(k)
    for d, ks in sorted(by_deg.items()):
        step = _linear_step(basis, [elts[k] for k in ks], want_x=lift)
        for r, k in enumerate(ks):
            rems[k] = _row_to_elt(module, step.D[r], step.codes, d)
            if lift:
                nz = np.flatnonzero(step.X[r])
                lifts[k] = [(step.reducers[j][0], step.reducers[j][1], step.X[r, j]) for j in nz.tolist()]
    return rems, lifts


def groebner_elts(module: FreeModule, gens: Sequence[Elt], budget: Budget | None = None,
                  truncate: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by homogeneous elements."""
    start = time.monotonic()
    budget = budget or _ambient.get() or Budget()
    stats = Stats()
    basis = Basis(module)
    pairs = _Pairs(module.nvars)
    inputs: dict[int, list[Elt]] = {}
    for g in gens:
        if g is not None and len(g):
            inputs.setdefault(g.deg, []).append(g)
    product_ok = module.rank == 1
    w = module.ring._w
    kern = backend(module.ring.char)
    complete = True
    while inputs or pairs.buckets:
        cands = [d for d in (min(inputs) if inputs else None, pairs.min_degree()) if d is not None]
        d = min(cands)
        if truncate is not None and d > truncate:
            complete = False
            break
        budget.check(stats, d, start)
        t0 = time.monotonic()
        rows: list[Elt] = []
        tags: list = []
        npairs = 0
        if d in pairs.buckets:
            I, J, L = pairs.pop(d)
            npairs = len(I)
            stats.pairs_reduced += npairs
            lc, le, _ = basis.arrays()
            seen = set()
            for a, b, lcm in zip(I.tolist(), J.tolist(), L):
                for g in (a, b):
                    mult = lcm - le[g]
                    tag = (g, int(module.encode(np.array([lc[g]]), lcm[None, :])[0]))
                    if tag in seen:
                        continue
                    seen.add(tag)
                    rows.append(make_multiple(basis.elts[g], mult, module.ring))
                    tags.append(tag)
        for f in inputs.pop(d, []):
            rows.append(f)
            tags.append(None)
        step = _linear_step(basis, rows, tags, stats=stats)
        R, _ = kern.rref(step.D)
        new = [_row_to_elt(module, R[i], step.codes, d) for i in range(R.shape[0])]
        stats.zero_reductions += max(0, npairs - len(new))
        for h in new:
            hi = basis.add(h)
            pairs.prune(h.exps[0], int(h.comp[0]), basis)
            gs, L = _new_pairs(basis, hi, product_ok)
            if gs.size:
                degs = L @ w + module._deg[int(h.comp[0])]
                for dd in np.unique(degs).tolist():
                    m = degs == dd
                    pairs.add(int(dd), gs[m], np.full(int(m.sum()), hi), L[m])
                stats.pairs_created += int(gs.size)
        stats.max_degree = d
        stats.per_degree[d] = (len(rows), len(new), round(time.monotonic() - t0, 3))
        log.debug("degree %d: %d rows, %d new, %d pending", d, len(rows), len(new), pairs.count())
    stats.seconds = time.monotonic() - start
    return GroebnerBasis(module, basis, complete, truncate if not complete else None, stats)


def groebner(gens: Sequence, ring: Ring | None = None, module: FreeModule | None = None,
             budget: Budget | None = None, truncate: int | None = None) -> GroebnerBasis:
    """Groebner basis of homogeneous polynomials (or vectors when ``module`` is given)."""
    gens = list(gens)
    if module is None:
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an empty generator list")
            ring = gens[0].ring
        module = FreeModule(ring, 1)
    elts = []
    for g in gens:
        parts = vec_to_elts(module, g)
        if len(parts) > 1:
            raise ValueError("generators must be homogeneous")
        elts.extend(parts)
    return groebner_elts(module, elts, budget, truncate)
