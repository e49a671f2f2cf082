"""Numerical invariants: Hilbert data, Betti tables, ACM and Rao module checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import Budget, groebner
from .hilbert import HilbertData, module_numerator
from .idealops import Ideal, intersect_all, is_saturated, jacobian_matrix, minors
from .modules import FreeModule
from .resolution import betti_from_resolution, minimize, schreyer_resolution
from .ring import Poly


class NotSaturated(ValueError):
    """The invariant is defined for saturated ideals only."""


class NotRegularSequence(ValueError):
    pass


def hilbert_data(I: Ideal, budget: Budget | None = None) -> HilbertData:
    """Hilbert series data of S/I, with the polynomial cross-checked by differences."""
    h = I.hilbert(budget)
    if h.dim:
        t0 = h.regularity_index
        fitted = fit_polynomial([h.function(t) for t in range(t0, t0 + h.dim)], t0)
        if fitted != h.polynomial:
            raise ArithmeticError("Hilbert polynomial disagrees with the function values")
    return h


def fit_polynomial(values: list[int], start: int) -> list[Fraction]:
    """Polynomial of degree < len(values) through (start + k, values[k]) (Newton form)."""
    n = len(values)
    diffs = [Fraction(v) for v in values]
    coeffs = []
    for k in range(n):
        coeffs.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    # sum_k coeffs[k] * C(t - start, k)
    out = [Fraction(0)] * max(n, 1)
    basis = [Fraction(1)]
    for k in range(n):
        for d, v in enumerate(basis):
            out[d] += coeffs[k] * v
        # basis *= (t - start - k) / (k + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, v in enumerate(basis):
            nxt[d] += v * Fraction(-start - k, k + 1)
            nxt[d + 1] += v / (k + 1)
        basis = nxt
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass
class BettiTable:
    """Graded Betti numbers ``entries[(i, j)] = beta_{i,j}`` of S/I."""

    entries: dict = field(default_factory=dict)

    @property
    def projective_dimension(self) -> int:
        return max((i for (i, _), b in self.entries.items() if b), default=0)

    def totals(self) -> list[int]:
        out = [0] * (self.projective_dimension + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        return out

    def row(self, r: int) -> list[int]:
        return [self.entries.get((i, i + r), 0) for i in range(self.projective_dimension + 1)]

    def rows(self) -> dict[int, list[int]]:
        """Nonzero rows keyed by j - i."""
        keys = sorted({j - i for (i, j), b in self.entries.items() if b})
        return {r: self.row(r) for r in keys}

    def hilbert_function(self, t: int, nvars: int) -> int:
        from math import comb
        total = 0
        for (i, j), b in self.entries.items():
            if t - j >= 0:
                total += (-1) ** i * b * comb(t - j + nvars - 1, nvars - 1)
        return total

    def format(self) -> str:
        """Betti diagram in the CoCoA layout (rows j - i, columns i, '-' for zero)."""
        ncols = self.projective_dimension + 1
        header = " " * 5 + "".join(f"{i:>5}" for i in range(ncols))
        rule = "-" * len(header)
        rows = self.rows()
        last = max(rows) if rows else 0
        lines = [header, rule]
        shown = self._visible_rows(rows, last)
        for r in shown:
            if r is None:
                lines.append("   ...")
                continue
            cells = "".join(f"{(v if v else '-'):>5}" for v in self.row(r))
            lines.append(f"{r:>3}:{cells}")
        lines.append(rule)
        lines.append("Tot:" + "".join(f"{v:>5}" for v in self.totals()))
        return "\n".join(lines)

    @staticmethod
    def _visible_rows(rows: dict, last: int) -> list:
        """All rows up to the last nonzero one, eliding interior zero runs of length >= 3."""
        out: list = []
        r = 0
        while r <= last:
            if r in rows:
                out.append(r)
                r += 1
                continue
            run_end = r
            while run_end + 1 <= last and run_end + 1 not in rows:
                run_end += 1
            if run_end - r + 1 >= 3:
                out.extend([r, None, run_end])
            else:
                out.extend(range(r, run_end + 1))
            r = run_end + 1
        return out

    def as_dict(self) -> dict:
        return {
            "totals": self.totals(),
            "rows": {str(k): v for k, v in self.rows().items()},
            "projective_dimension": self.projective_dimension,
        }


def resolution(I: Ideal, budget: Budget | None = None):
    """Schreyer resolution of S/I built on the reduced Groebner basis of I."""
    return _memo(I, "res", lambda: schreyer_resolution(I.gb(budget=budget).elts, I.ring, budget))


def _memo(I: Ideal, key: str, make):
    if key not in I.memo:
        I.memo[key] = make()
    return I.memo[key]


def minimal_betti(I: Ideal, budget: Budget | None = None) -> BettiTable:
    return _memo(I, "betti", lambda: BettiTable(betti_from_resolution(resolution(I, budget))))


def minimal_resolution(I: Ideal, budget: Budget | None = None):
    """(degrees, matrices) of a minimal free resolution of S/I."""
    return _memo(I, "minres", lambda: minimize(resolution(I, budget)))


def is_acm(I: Ideal, check_saturated: bool = True, budget: Budget | None = None) -> bool:
    """Whether S/I is Cohen-Macaulay: projective dimension equals codimension."""
    if check_saturated and not is_saturated(I, budget):
        raise NotSaturated("is_acm needs a saturated ideal; saturate it first")
    if I.is_unit():
        return True
    pd = minimal_betti(I, budget).projective_dimension
    return pd == hilbert_data(I, budget).codim


@dataclass
class RaoModule:
    """Dimensions of the finite length module, ``dims[t] = dim M_t``."""

    dims: dict

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def support(self) -> tuple[int, int] | None:
        ts = [t for t, v in self.dims.items() if v]
        return (min(ts), max(ts)) if ts else None

    def sequence(self) -> list[int]:
        s = self.support()
        if s is None:
            return []
        return [self.dims.get(t, 0) for t in range(s[0], s[1] + 1)]

    def shifted(self, d: int) -> "RaoModule":
        """M(-d): the same module with every degree raised by d."""
        return RaoModule({t + d: v for t, v in self.dims.items()})


def _top_ext_presentation(I: Ideal, budget: Budget | None = None):
    """(pd, degrees of F_pd, relations) presenting Ext^pd(S/I, S) = coker of d_pd transposed."""
    ring = I.ring
    degs, mats = minimal_resolution(I, budget)
    top = len(degs) - 1
    a, b = degs[top], degs[top - 1]
    vecs = [[mats[top].get((j, k), ring.zero()) for k in range(len(a))] for j in range(len(b))]
    return top, a, [v for v in vecs if any(v)]


def _top_ext(I: Ideal, budget: Budget | None = None):
    """(pd, HilbertData of Ext^pd(S/I, S))."""
    ring = I.ring
    top, a, vecs = _top_ext_presentation(I, budget)
    module = FreeModule(ring, len(a), [-x for x in a], "top")
    G = groebner(vecs, module=module, budget=budget)
    leads: dict[int, list] = {}
    for c, e in G.leads():
        leads.setdefault(c, []).append(e)
    return top, HilbertData(module_numerator(leads, module.degrees, ring.weights), ring.nvars)


def top_ext_annihilator(I: Ideal, budget: Budget | None = None) -> Ideal:
    """Annihilator of Ext^pd(S/I, S) as the intersection of the colons (M : e_i)."""
    ring = I.ring
    top, a, vecs = _top_ext_presentation(I, budget)
    r = len(a)
    z, one = ring.zero(), ring.one()
    parts = []
    for i in range(r):
        # (v, 0) for the relations and (e_i, 1); the last (smallest) coordinate of
        # the elements with no other coordinates is M : e_i
        module = FreeModule(ring, r + 1, [-x for x in a] + [-a[i]], "pot")
        rows = [v + [z] for v in vecs] + [[one if k == i else z for k in range(r)] + [one]]
        G = groebner(rows, module=module, budget=budget)
        parts.append(Ideal([vec[r] for vec, e in zip(G.vectors(), G.elts) if int(e.comp[0]) == r], ring))
    return intersect_all(parts, budget)


def rao_module(I: Ideal, check_saturated: bool = True, budget: Budget | None = None) -> RaoModule:
    """Hartshorne-Rao module of a curve from the dual of the last minimal differential.

    With F_3 the last module of a minimal resolution of S/I, the cokernel of
    the transpose F_2^v -> F_3^v is Ext^3(S/I, S), and local duality gives
    dim M_t = dim Ext^3(S/I, S)_{-t-n-1}.
    """
    ring = I.ring
    h = hilbert_data(I, budget)
    if h.dim != 2:
        raise ValueError(f"Rao modules are for curves; S/I has Krull dimension {h.dim}")
    if check_saturated and not is_saturated(I, budget):
        raise NotSaturated("rao_module needs a saturated ideal; saturate it first")
    top, ext = _top_ext(I, budget)
    if top < ring.nvars - 1:
        return RaoModule({})
    if ext.dim != 0:
        raise ArithmeticError("deficiency module is not of finite length")
    shift = ring.nvars
    return RaoModule({-d - shift: v for d, v in sorted(ext.reduced.items()) if v})


def is_unmixed(I: Ideal, budget: Budget | None = None) -> bool:
    """No associated primes beyond the minimal codimension (saturated ideals only).

    A prime of codimension i is associated iff Ext^i(S/I, S) has the maximal
    dimension nvars - i.  Only the last Ext is computed, which decides the
    question whenever pd <= codim + 1 (always true for curves in P^3).
    """
    if I.is_unit():
        return True
    if not is_saturated(I, budget):
        return False
    c = hilbert_data(I, budget).codim
    pd = minimal_betti(I, budget).projective_dimension
    if pd == c:
        return True
    if pd > c + 1:
        raise NotImplementedError("unmixedness test needs pd <= codim + 1")
    _, ext = _top_ext(I, budget)
    return ext.dim < I.ring.nvars - pd


def codim(I: Ideal, budget: Budget | None = None) -> int:
    return I.hilbert(budget).codim


def codim_check(I: Ideal, expected: int, budget: Budget | None = None) -> bool:
    return codim(I, budget) == expected


def is_smooth_ci(F: Poly, P: Poly, budget: Budget | None = None) -> bool:
    """Jacobian criterion on the complete intersection V(F, P)."""
    ring = F.ring
    CI = Ideal([F, P], ring)
    if codim(CI, budget) != 2:
        raise NotRegularSequence("F, P do not form a regular sequence")
    sing = Ideal(list(CI.gens) + list(minors(jacobian_matrix([F, P]), 2).gens), ring)
    return codim(sing, budget) == ring.nvars
