"""Ideal calculus for homogeneous ideals.

Intersections and colon ideals are computed inside a rank two free module with
a position-over-term order: the first coordinate carries the relation and the
second records the coefficient, so the elements whose first coordinate
vanishes are exactly what survives the elimination.  Saturation by a single
form uses one Groebner basis (the last-variable trick for grevlex) instead of
iterating colons; the iterated version is kept as ``method="iterate"``.
"""

from __future__ import annotations

import itertools
import random
import threading
from typing import Iterable, Sequence

from .groebner import Budget, BudgetExhausted, GroebnerBasis, groebner
from .hilbert import HilbertData, monomial_numerator
from .linalg import backend
from .modules import FreeModule
from .ring import MonomialOrder, Poly, Ring, RingMismatch


class Ideal:
    """Homogeneous ideal given by generators, with cached Groebner bases."""

    def __init__(self, gens: Iterable[Poly | str], ring: Ring | None = None, tag: str = ""):
        gens = list(gens)
        if ring is None:
            if not gens or not isinstance(gens[0], Poly):
                raise ValueError("need a ring for an empty or textual generator list")
            ring = gens[0].ring
        polys = []
        for g in gens:
            g = ring(g)
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            if g:
                polys.append(g)
        self.ring = ring
        self.gens = tuple(polys)
        self.tag = tag
        self._gb: dict = {}
        self.memo: dict = {}  # derived data (resolutions) keyed by name
        self._lock = threading.Lock()

    def __repr__(self):
        body = ", ".join(str(g) for g in self.gens[:4])
        more = ", ..." if len(self.gens) > 4 else ""
        label = f" {self.tag}" if self.tag else ""
        return f"Ideal{label}({body}{more})"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    # Groebner bases
    def gb(self, order=None, budget: Budget | None = None) -> GroebnerBasis:
        order = MonomialOrder.parse(order) if order is not None else self.ring.order
        with self._lock:
            hit = self._gb.get(order)
        if hit is not None:
            return hit
        ring = self.ring if order == self.ring.order else self.ring.with_order(order)
        G = groebner(self.gens, ring=ring, budget=budget)
        with self._lock:
            self._gb.setdefault(order, G)
            return self._gb[order]

    def set_gb(self, G: GroebnerBasis):
        with self._lock:
            self._gb.setdefault(G.ring.order, G)

    def hilbert(self, budget: Budget | None = None) -> HilbertData:
        if self.ring.weights != (1,) * self.ring.nvars:
            raise ValueError("Hilbert data needs the standard grading")
        G = self.gb(budget=budget)
        return HilbertData(monomial_numerator(G.lead_monomials(), self.ring.weights), self.ring.nvars)

    # membership
    def contains(self, f, budget: Budget | None = None) -> bool:
        f = self.ring(f)
        if not f:
            return True
        return self.gb(budget=budget).contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(e.deg == 0 for e in self.gb().elts)

    # constructions without Groebner bases
    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return power(self, k)

    def minimal_generators(self) -> list[Poly]:
        """A minimal homogeneous generating set taken from the given generators."""
        kept: list[Poly] = []
        by_deg: dict[int, list[Poly]] = {}
        for g in self.gens:
            by_deg.setdefault(g.degree, []).append(g)
        kern = backend(self.ring.char)
        for d in sorted(by_deg):
            G = groebner(kept, ring=self.ring, truncate=d) if kept else None
            nfs = [G.normal_form(g) if G else g for g in by_deg[d]]
            cols = sorted({e for f in nfs for e in f.terms})
            index = {e: i for i, e in enumerate(cols)}
            rows: list = []
            rank = 0
            for g, f in zip(by_deg[d], nfs):
                if not f:
                    continue
                row = [0] * len(cols)
                for e, c in f.terms.items():
                    row[index[e]] = c
                trial = rows + [row]
                r = kern.rank(kern.asarray(trial))
                if r > rank:
                    rows, rank = trial, r
                    kept.append(g)
        return kept

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree for g in self.minimal_generators())


def _check(*ideals: Ideal):
    r = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != r:
            raise RingMismatch(f"{I.ring} vs {r}")
    return r


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check(I, J)
    return Ideal(I.gens + J.gens, I.ring)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check(I, J)
    return Ideal([f * g for f in I.gens for g in J.gens], I.ring)


def power(I: Ideal, k: int) -> Ideal:
    if k < 1:
        raise ValueError("power needs k >= 1")
    out = I
    for _ in range(k - 1):
        prods = {f * g for f in out.gens for g in I.gens}
        out = Ideal(sorted(prods, key=str), I.ring)
    return out


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal([ring.one()], ring)


def irrelevant(ring: Ring) -> Ideal:
    return Ideal(ring.gens(), ring, tag="m")


# ---------------------------------------------------------------------------
# intersections and colons


def _second_coordinate(ring: Ring, rows: Sequence[list[Poly]], degrees, budget) -> list[Poly]:
    module = FreeModule(ring, 2, degrees, "pot")
    G = groebner(rows, module=module, budget=budget)
    return [v[1] for v, e in zip(G.vectors(), G.elts) if int(e.comp[0]) == 1]


def intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """I cap J: second coordinates of the syzygy-type module with first coordinate zero."""
    ring = _check(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    z = ring.zero()
    rows = [[f, f] for f in I.gens] + [[g, z] for g in J.gens]
    return Ideal(_second_coordinate(ring, rows, (0, 0), budget), ring)


def intersect_all(ideals: Sequence[Ideal], budget: Budget | None = None) -> Ideal:
    if not ideals:
        raise ValueError("empty intersection")
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J, budget)
    return out


def quotient_by(I: Ideal, g: Poly, budget: Budget | None = None) -> Ideal:
    """I : g computed as (I cap (g)) / g."""
    ring = I.ring
    g = ring(g)
    if not g:
        return unit_ideal(ring)
    if I.is_zero():
        return Ideal([], ring)
    meet = intersect(I, Ideal([g], ring), budget)
    return Ideal([h.divide_exact(g) for h in meet.gens], ring)


def quotient(I: Ideal, J: Ideal | Poly, budget: Budget | None = None) -> Ideal:
    """Colon ideal I : J as the intersection of I : g over the generators g of J."""
    if isinstance(J, Poly):
        return quotient_by(I, J, budget)
    _check(I, J)
    if J.is_zero():
        return unit_ideal(I.ring)
    return intersect_all([quotient_by(I, g, budget) for g in J.gens], budget)


# ---------------------------------------------------------------------------
# saturation


class SaturationDiverged(BudgetExhausted):
    pass


def _drop_last_variable(G: GroebnerBasis, ring: Ring) -> list[Poly]:
    """Divide each basis element by its largest power of the last variable.

    The result is again a Groebner basis, so elements whose lead is a
    multiple of another lead are redundant and dropped.
    """
    out = []
    last = ring.nvars - 1
    for g in G.polys():
        k = min(e[last] for e in g.terms)
        if k:
            g = Poly(ring, {e[:last] + (e[last] - k,): c for e, c in g.terms.items()})
        out.append(Poly(ring, g.terms))
    leads = [g.lead()[0] for g in out]
    keep = []
    for i, a in enumerate(leads):
        if any(j != i and all(x <= y for x, y in zip(b, a)) and (b != a or j < i)
               for j, b in enumerate(leads)):
            continue
        keep.append(out[i])
    return keep


def _saturate_linear(I: Ideal, ell: Poly, budget) -> Ideal:
    """I : ell^oo for a linear form with nonzero last coefficient."""
    ring = I.ring
    n = ring.nvars - 1
    last = tuple(int(i == n) for i in range(ring.nvars))
    a = ell.terms.get(last)
    if not a:
        raise ValueError("linear form needs a nonzero last coefficient")
    F = ring.field
    xs = ring.gens()
    # psi: x_n -> (x_n - sum_{i<n} c_i x_i) / a sends ell to x_n
    ainv = F.inv(a)
    img = xs[n]
    for i in range(n):
        c = ell.terms.get(tuple(int(j == i) for j in range(ring.nvars)))
        if c:
            img = img - xs[i].scale(c)
    img = img.scale(ainv)
    psi = xs[:n] + [img]
    inv = xs[:n] + [ell]
    grev = ring.with_order("grevlex")
    moved = Ideal([g.subs_linear(psi, grev) for g in I.gens], grev)
    G = moved.gb(budget=budget)
    gens = [Poly(ring, h.subs_linear(inv, grev).terms) for h in _drop_last_variable(G, grev)]
    return Ideal(gens, ring)


def _saturate_form(I: Ideal, h: Poly, budget) -> Ideal:
    """I : h^oo with one extra variable y of weight deg h placed last."""
    ring = I.ring
    h = ring(h)
    if h.degree == 0:
        return unit_ideal(ring) if h else I
    if h.degree == 1 and h.terms.get(tuple(int(j == ring.nvars - 1) for j in range(ring.nvars))):
        return _saturate_linear(I, h, budget)
    big = ring.extend(["t0"], [h.degree], front=False).with_order("grevlex")
    emb = list(range(ring.nvars))
    y = big.var(ring.nvars)
    gens = [g.to_ring(big, emb) for g in I.gens] + [y - h.to_ring(big, emb)]
    G = groebner(gens, ring=big, budget=budget)
    subs = [big.var(i) for i in range(ring.nvars)] + [h.to_ring(big, emb)]
    out = []
    for g in _drop_last_variable(G, big):
        out.append(g.subs_linear(subs, big) if g.terms else g)
    back = []
    for g in out:
        back.append(Poly(ring, {e[:ring.nvars]: c for e, c in g.terms.items()}))
    return Ideal(back, ring)


def saturate_iterate(I: Ideal, J: Ideal | Poly, max_iter: int = 50, budget: Budget | None = None) -> Ideal:
    """I : J^oo by iterating colons until two consecutive ideals are equal."""
    cur = I
    for _ in range(max_iter):
        nxt = quotient(cur, J, budget)
        if nxt.is_subset(cur):
            return cur
        cur = nxt
    raise SaturationDiverged(f"saturation did not stabilize in {max_iter} steps", None)


def saturate(I: Ideal, J: Ideal | Poly, method: str = "auto", budget: Budget | None = None) -> Ideal:
    """Saturation I : J^oo."""
    if method == "iterate":
        return saturate_iterate(I, J, budget=budget)
    if method != "auto":
        raise ValueError(f"unknown saturation method {method!r}")
    if isinstance(J, Poly):
        return _saturate_form(I, J, budget)
    if _is_irrelevant(J):
        return saturate_irrelevant(I, budget=budget)
    parts = [_saturate_form(I, g, budget) for g in J.gens]
    return intersect_all(parts, budget) if parts else unit_ideal(I.ring)


def saturate_product(I: Ideal, forms: Sequence[Poly], budget: Budget | None = None) -> Ideal:
    """I : (f_1 ... f_k)^oo one factor at a time."""
    out = I
    for f in forms:
        out = _saturate_form(out, f, budget)
    return out


def _is_irrelevant(J: Ideal) -> bool:
    ring = J.ring
    lead = sorted(J.gb().lead_monomials())
    units = sorted(tuple(int(i == j) for j in range(ring.nvars)) for i in range(ring.nvars))
    return lead == units


def generic_linear_form(ring: Ring, rng: random.Random) -> Poly:
    F = ring.field
    coeffs = [F.random(rng) for _ in range(ring.nvars - 1)] + [F.random(rng, nonzero=True)]
    return Poly(ring, {tuple(int(i == j) for j in range(ring.nvars)): c
                       for i, c in enumerate(coeffs) if c})


def saturate_irrelevant(I: Ideal, seed: int = 0, attempts: int = 5, budget: Budget | None = None) -> Ideal:
    """I^sat = I : m^oo via a generic linear form, certified by Hilbert polynomials.

    I : ell^oo always contains I^sat and is saturated, so equal Hilbert
    polynomials force equality; otherwise ell was special and is redrawn.
    """
    ring = I.ring
    if I.is_zero():
        return I
    if I.is_unit():
        return unit_ideal(ring)
    if ("sat", seed) in I.memo:
        return I.memo[("sat", seed)]
    target = I.hilbert(budget).polynomial
    rng = random.Random(f"sat:{seed}")
    for _ in range(attempts):
        ell = generic_linear_form(ring, rng)
        S = _saturate_linear(I, ell, budget)
        if S.hilbert(budget).polynomial == target:
            S.tag = f"{I.tag}^sat" if I.tag else ""
            S.memo["saturated"] = True
            I.memo[("sat", seed)] = S
            return S
    raise RuntimeError("no certifying linear form found for the saturation")


def is_saturated(I: Ideal, budget: Budget | None = None) -> bool:
    if I.is_zero() or I.is_unit():
        return True
    if "saturated" not in I.memo:
        I.memo["saturated"] = saturate_irrelevant(I, budget=budget).is_subset(I)
    return I.memo["saturated"]


# ---------------------------------------------------------------------------
# elimination, membership, equality


def eliminate(I: Ideal, k: int, budget: Budget | None = None) -> Ideal:
    """I cap K[x_k, ..., x_n] from a basis under the order eliminating x_0..x_{k-1}."""
    if k == 0:
        return I
    ring = I.ring
    G = I.gb(order=MonomialOrder("elim", k), budget=budget)
    keep = [Poly(ring, g.terms) for g in G.polys() if all(not any(e[:k]) for e in g.terms)]
    return Ideal(keep, ring)


def membership(f, I: Ideal) -> bool:
    return I.contains(f)


def radical_membership(f, I: Ideal, budget: Budget | None = None) -> bool:
    """f in sqrt(I), tested as the unit ideal test I : f^oo == (1)."""
    f = I.ring(f)
    if not f:
        return True
    if f.degree == 0:
        return I.is_unit()
    if I.contains(f):
        return True
    return _saturate_form(I, f, budget).is_unit()


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _check(I, J)
    return I.is_subset(J) and J.is_subset(I)


# ---------------------------------------------------------------------------
# minors


def determinant(M: Sequence[Sequence[Poly]]) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0].ring.zero()


def minors(rows: Sequence[Sequence[Poly]], size: int = 2) -> Ideal:
    """Ideal of all size x size minors."""
    if not rows or size < 1 or size > len(rows) or size > len(rows[0]):
        raise ValueError("minor size exceeds the matrix dimensions")
    ring = rows[0][0].ring
    out = []
    for rs in itertools.combinations(range(len(rows)), size):
        for cs in itertools.combinations(range(len(rows[0])), size):
            d = determinant([[rows[r][c] for c in cs] for r in rs])
            if d:
                out.append(d)
    return Ideal(out, ring)


def jacobian_matrix(forms: Sequence[Poly]) -> list[list[Poly]]:
    from .ring import partial_derivative
    return [[partial_derivative(f, i) for i in range(f.ring.nvars)] for f in forms]

