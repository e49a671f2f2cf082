"""Slow, independent checks for Groebner bases.

Nothing here touches the matrix engine: polynomials are plain dicts, division
is the textbook algorithm and ranks come from a separate, plain row reduction.
"""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from .ring import Poly, Ring


def _lead(f: dict, ring: Ring):
    return max(f, key=ring.key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(f: Poly, G: list[Poly]) -> dict:
    """Remainder of f on division by G (full reduction, any term order of the ring)."""
    ring, F = f.ring, f.ring.field
    p = dict(f.terms)
    rest: dict = {}
    leads = [(_lead(g.terms, ring), g) for g in G if g]
    while p:
        m = _lead(p, ring)
        c = p[m]
        for lm, g in leads:
            if _divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                k = F.mul(c, F.inv(g.terms[lm]))
                for e, v in g.terms.items():
                    t = tuple(a + b for a, b in zip(e, q))
                    w = F.sub(p.get(t, F.zero), F.mul(k, v))
                    if w:
                        p[t] = w
                    else:
                        p.pop(t, None)
                break
        else:
            rest[m] = c
            del p[m]
    return rest


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ring, F = f.ring, f.ring.field
    a, b = _lead(f.terms, ring), _lead(g.terms, ring)
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    fa = f.mul_monomial([x - y for x, y in zip(lcm, a)], F.inv(f.terms[a]))
    gb = g.mul_monomial([x - y for x, y in zip(lcm, b)], F.inv(g.terms[b]))
    return fa - gb


def buchberger_criterion(G: list[Poly]) -> bool:
    """Every S-polynomial reduces to zero."""
    return all(not normal_form(s_polynomial(f, g), G) for f, g in combinations([g for g in G if g], 2))


def _rank(rows: list[dict], F) -> int:
    """Rank of sparse rows {column: value}."""
    if F.char and rows:
        return _rank_mod_p(rows, F.char)
    pivots: dict = {}
    for r in rows:
        r = dict(r)
        while r:
            col = max(r)
            if col not in pivots:
                inv = F.inv(r[col])
                pivots[col] = {k: F.mul(v, inv) for k, v in r.items()}
                break
            piv, c = pivots[col], r[col]
            for k, v in piv.items():
                w = F.sub(r.get(k, F.zero), F.mul(c, v))
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
    return len(pivots)


def _rank_mod_p(rows: list[dict], p: int) -> int:
    """Dense Gaussian elimination over GF(p), one pivot column at a time."""
    ncols = 1 + max((c for r in rows for c in r), default=-1)
    M = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            M[i, c] = v % p
    rank = 0
    for col in range(ncols):
        nz = np.flatnonzero(M[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = M[rank] * pow(int(M[rank, col]), -1, p) % p
        below = np.flatnonzero(M[rank + 1:, col]) + rank + 1
        if below.size:
            M[below] = (M[below] - np.outer(M[below, col], M[rank])) % p
        rank += 1
        if rank == len(rows):
            break
    return rank


def _macaulay_rows(gens: list[Poly], ring: Ring, t: int) -> list[dict]:
    cols = {m: i for i, m in enumerate(ring.monomials_of_degree(t))}
    rows = []
    for g in gens:
        if not g or g.degree > t:
            continue
        for m in ring.monomials_of_degree(t - g.degree):
            rows.append({cols[tuple(a + b for a, b in zip(e, m))]: v for e, v in g.terms.items()})
    return rows


def macaulay_dims(gens: list[Poly], ring: Ring, top: int) -> list[int]:
    """dim_K I_t for t = 0..top from the spanning set {m * g}."""
    return [_rank(_macaulay_rows(gens, ring, t), ring.field) for t in range(top + 1)]


def in_ideal_by_degree(gens: list[Poly], fs: list[Poly], ring: Ring) -> bool:
    """Whether every f lies in (gens), by comparing Macaulay ranks degree by degree."""
    for t in sorted({f.degree for f in fs if f}):
        rows = _macaulay_rows(gens, ring, t)
        extra = _macaulay_rows([f for f in fs if f and f.degree == t], ring, t)
        if _rank(rows + extra, ring.field) != _rank(rows, ring.field):
            return False
    return True


def lead_term_dims(G: list[Poly], ring: Ring, top: int) -> list[int]:
    """Number of degree-t monomials divisible by a lead monomial of G."""
    leads = [_lead(g.terms, ring) for g in G if g]
    return [sum(1 for m in ring.monomials_of_degree(t) if any(_divides(l, m) for l in leads))
            for t in range(top + 1)]


def check_basis(gens: list[Poly], G: list[Poly], top: int) -> list[str]:
    """Problems found when comparing a claimed basis G of (gens) with the oracles."""
    ring = gens[0].ring
    problems = []
    if not buchberger_criterion(G):
        problems.append("an S-polynomial does not reduce to zero")
    if any(normal_form(g, G) for g in gens):
        problems.append("a generator does not reduce to zero")
    if not in_ideal_by_degree(gens, G, ring):
        problems.append("a basis element is not in the ideal")
    if macaulay_dims(gens, ring, top) != lead_term_dims(G, ring, top):
        problems.append("lead term counts disagree with Macaulay matrix ranks")
    return problems


def random_ideal(ring: Ring, rng: random.Random, count: int | None = None, max_degree: int = 3) -> list[Poly]:
    """A few random homogeneous forms, some of them sparse."""
    count = count or rng.randint(1, 4)
    out = []
    for _ in range(count):
        d = rng.randint(1, max_degree)
        f = ring.random_form(d, rng)
        if rng.random() < 0.5:
            keep = rng.sample(sorted(f.terms), k=max(1, len(f.terms) // 3))
            f = Poly(ring, {e: f.terms[e] for e in keep})
        if f:
            out.append(f)
    return out or [ring.var(0)]


def engine_sweep(count: int, seed: int = 0, char: int = 32003, top: int = 6, max_generators: int = 4,
                 max_degree: int = 4, orders=("grevlex",)) -> tuple[int, list[str]]:
    """Compare the engine with the oracles on ``count`` random ideals in 3 or 4 variables.

    Returns (number checked, problem lines).  Ideals have up to
    ``max_generators`` forms of degree at most ``max_degree``; dimensions are
    compared for t <= top.
    """
    from .groebner import groebner
    problems = []
    for k in range(count):
        rng = random.Random(f"sweep:{seed}:{k}")
        ring = Ring(rng.choice([2, 3]), char, order=rng.choice(orders))
        gens = random_ideal(ring, rng, count=rng.randint(1, max_generators), max_degree=max_degree)
        G = groebner(gens, ring).polys()
        problems.extend(f"seed={seed} case={k} {ring}: {p}" for p in check_basis(gens, G, top))
    return count, problems
