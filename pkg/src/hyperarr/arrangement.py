"""Jacobian ideals of hypersurface arrangements and the structure checks built on them.

An arrangement is a list of distinct forms ``f_1, ..., f_s``; its Jacobian
ideal is generated by the partials of the product.  The top-dimensional part
of that ideal is extracted one expected support at a time (see
:func:`top_part`), never by a general primary decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .groebner import Budget
from .idealops import (Ideal, ideal_equal, intersect_all, is_saturated, jacobian_matrix, minors,
                       quotient, saturate_irrelevant, saturate_product, unit_ideal)
from .invariants import (NotRegularSequence, codim, hilbert_data, is_acm, is_smooth_ci,
                         is_unmixed, rao_module, top_ext_annihilator)
from .ring import Poly, Ring, euler_check, partial_derivative, product


class HypothesisError(ValueError):
    """A precondition of a structure statement does not hold for the input."""


class UncoveredComponent(RuntimeError):
    """The support list misses a codimension-two component of the ideal."""

    def __init__(self, msg, residue: Ideal | None = None):
        super().__init__(msg)
        self.residue = residue


@dataclass
class Report:
    """Named boolean checks plus the values they were computed from."""

    name: str
    checks: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def check(self, label: str, cond: bool, value=None) -> bool:
        self.checks[label] = bool(cond)
        if value is not None:
            self.values[label] = value
        return bool(cond)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": dict(self.checks),
                "values": {k: _plain(v) for k, v in self.values.items()}, "notes": list(self.notes)}

    def __str__(self):
        lines = [f"{self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for k, v in self.checks.items():
            extra = f"  ({_plain(self.values[k])})" if k in self.values else ""
            lines.append(f"  [{'ok' if v else '!!'}] {k}{extra}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _plain(v):
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(a) for a in v]
    if isinstance(v, dict):
        return {str(k): _plain(a) for k, a in v.items()}
    return v


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# ---------------------------------------------------------------------------
# general forms and arrangements


def general_form(base: Ideal, d: int, seed=0) -> Poly:
    """Seeded random element of the degree-d part of ``base``.

    Every generator of degree <= d is multiplied by a random form of the
    complementary degree, so the result is a random point of [base]_d.
    """
    ring = base.ring
    gens = [g for g in base.gens if g.degree <= d]
    if not gens:
        raise ValueError(f"the ideal has no elements of degree {d}")
    rng = _rng(seed if isinstance(seed, random.Random) else f"form:{seed}:{d}")
    for _ in range(20):
        out = ring.zero()
        for g in gens:
            out = out + ring.random_form(d - g.degree, rng) * g
        if out:
            return out
    raise ValueError(f"the degree {d} part of the ideal is zero")


def _proportional(f: Poly, g: Poly) -> bool:
    return f.degree == g.degree and set(f.terms) == set(g.terms) and f.monic() == g.monic()


class ArrangementSpec:
    """Distinct homogeneous forms f_1..f_s; the arrangement is V(f_1 ... f_s).

    A factor may be given as a Poly or as ``(base_ideal, degree, seed)``,
    which is resolved with :func:`general_form`.
    """

    def __init__(self, factors: Sequence, ring: Ring | None = None, labels: Sequence[str] | None = None):
        resolved = []
        for f in factors:
            if isinstance(f, tuple):
                base, d, seed = f
                f = general_form(base, d, seed)
            elif isinstance(f, str):
                if ring is None:
                    raise ValueError("string factors need a ring")
                f = ring(f)
            resolved.append(f)
        if not resolved:
            raise ValueError("an arrangement needs at least one factor")
        self.ring = ring or resolved[0].ring
        for f in resolved:
            if f.ring != self.ring:
                raise ValueError("factors live in different rings")
            if not f or f.degree < 1 or not f.is_homogeneous():
                raise ValueError(f"factor {f} is not a homogeneous form of positive degree")
        for i, j in combinations(range(len(resolved)), 2):
            if _proportional(resolved[i], resolved[j]):
                raise ValueError(f"factors {i + 1} and {j + 1} define the same hypersurface")
        self.factors = resolved
        self.labels = list(labels) if labels else [f"f{i + 1}" for i in range(len(resolved))]

    def __len__(self):
        return len(self.factors)

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.factors]

    def product(self) -> Poly:
        return product(self.factors, self.ring)

    def sub(self, idx: Sequence[int]) -> "ArrangementSpec":
        return ArrangementSpec([self.factors[i] for i in idx], self.ring, [self.labels[i] for i in idx])

    def __add__(self, other: "ArrangementSpec") -> "ArrangementSpec":
        return ArrangementSpec(self.factors + other.factors, self.ring, self.labels + other.labels)

    def __repr__(self):
        return f"ArrangementSpec(s={len(self)}, degrees={self.degrees})"


def jacobian_ideal(spec: ArrangementSpec | Poly) -> Ideal:
    """The ideal of partials of the product of the factors."""
    f = spec if isinstance(spec, Poly) else spec.product()
    if not euler_check(f):
        raise ArithmeticError("Euler relation failed for the product")
    ring = f.ring
    return Ideal([partial_derivative(f, i) for i in range(ring.nvars)], ring, tag="Jac(f)")


def is_smooth_form(f: Poly, budget: Budget | None = None) -> bool:
    """V(f) is smooth when its partials cut out only the irrelevant ideal."""
    if f.degree == 1:
        return True
    return codim(jacobian_ideal(f), budget) == f.ring.nvars


# ---------------------------------------------------------------------------
# pencils


class PencilArrangement:
    """Members G_i = a_i F + b_i P of the pencil spanned by a regular sequence (F, P)."""

    def __init__(self, F: Poly, P: Poly, members: Sequence[tuple]):
        if F.degree != P.degree:
            raise ValueError("the pencil base needs two forms of the same degree")
        self.F, self.P = F, P
        self.ring = F.ring
        K = self.ring.field
        self.members = [(K(a), K(b)) for a, b in members]
        for (a, b), (c, d) in combinations(self.members, 2):
            if K.sub(K.mul(a, d), K.mul(b, c)) == 0:
                raise ValueError(f"members ({a}:{b}) and ({c}:{d}) coincide")
        if any(a == 0 and b == 0 for a, b in self.members):
            raise ValueError("(0:0) is not a pencil member")
        if codim(Ideal([F, P], self.ring)) != 2:
            raise NotRegularSequence("the pencil base is not a regular sequence")

    @classmethod
    def random(cls, ring: Ring, s: int, d: int, seed=0, base: Ideal | None = None) -> "PencilArrangement":
        """s general members of the pencil of two general degree-d forms (of ``base``)."""
        rng = _rng(f"pencil:{seed}:{s}:{d}")
        base = base if base is not None else unit_ideal(ring)
        F = general_form(base, d, rng)
        P = general_form(base, d, rng)
        K = ring.field
        members: list[tuple] = []
        while len(members) < s:
            a, b = K.random(rng), K.random(rng)
            if (a or b) and all(K.sub(K.mul(a, y), K.mul(b, x)) for x, y in members):
                members.append((a, b))
        return cls(F, P, members)

    @property
    def s(self) -> int:
        return len(self.members)

    @property
    def d(self) -> int:
        return self.F.degree

    def forms(self) -> list[Poly]:
        return [self.F.scale(a) + self.P.scale(b) for a, b in self.members]

    def spec(self) -> ArrangementSpec:
        return ArrangementSpec(self.forms(), self.ring, [f"G{i + 1}" for i in range(self.s)])

    def base_ideal(self) -> Ideal:
        return Ideal([self.F, self.P], self.ring, tag="(F,P)")


def pencil_h_forms(p: PencilArrangement) -> tuple[Poly, Poly]:
    """H_1 = sum a_i G/G_i and H_2 = sum b_i G/G_i, checked to be a regular sequence."""
    if p.s < 2:
        raise ValueError("need at least two members")
    Gs = p.forms()
    ring = p.ring
    H1, H2 = ring.zero(), ring.zero()
    for k, (a, b) in enumerate(p.members):
        cofactor = product([g for j, g in enumerate(Gs) if j != k], ring)
        H1 = H1 + cofactor.scale(a)
        H2 = H2 + cofactor.scale(b)
    expected = (p.s - 1) * p.d
    if not H1 or not H2 or H1.degree != expected or H2.degree != expected:
        raise ArithmeticError("H forms have the wrong degree")
    if codim(Ideal([H1, H2], ring)) != 2:
        raise ArithmeticError("H_1, H_2 do not form a regular sequence")
    return H1, H2


def _pencil_preconditions(p: PencilArrangement, report: Report, budget=None) -> bool:
    ok = report.check("base is a smooth complete intersection", is_smooth_ci(p.F, p.P, budget))
    ok &= report.check("members are smooth", all(is_smooth_form(g, budget) for g in p.forms()))
    ok &= report.check("at least two members", p.s >= 2)
    return ok


def verify_sat_is_ci(p: PencilArrangement, budget: Budget | None = None) -> Report:
    """Jac(G)^sat = (H_1, H_2), a complete intersection of type ((s-1)d, (s-1)d)."""
    report = Report(f"sat-is-ci s={p.s} d={p.d}")
    if not _pencil_preconditions(p, report, budget):
        report.notes.append("hypotheses fail; equality not tested")
        return report
    J = jacobian_ideal(p.spec())
    H1, H2 = pencil_h_forms(p)
    CI = Ideal([H1, H2], p.ring, tag="(H1,H2)")
    report.check("Jac(G) inside (H1,H2)", J.is_subset(CI))
    Jsat = saturate_irrelevant(J, budget=budget)
    report.check("Jac(G)^sat = (H1,H2)", ideal_equal(Jsat, CI))
    report.values["type"] = [H1.degree, H2.degree]
    report.values["degree"] = hilbert_data(CI, budget).degree
    report.values["saturated"] = is_saturated(J, budget)
    return report


def verify_plane_pencil(p: PencilArrangement, budget: Budget | None = None) -> Report:
    """Planes through a codim-2 linear space: Jac is already the saturated CI."""
    report = Report(f"plane-pencil s={p.s}")
    if p.d != 1:
        raise ValueError("plane pencils have linear base forms")
    J = jacobian_ideal(p.spec())
    H1, H2 = pencil_h_forms(p)
    CI = Ideal([H1, H2], p.ring)
    report.check("Jac = (H1,H2)", ideal_equal(J, CI))
    report.check("Jac saturated", is_saturated(J, budget))
    h = hilbert_data(J, budget)
    report.check("degree (s-1)^2", h.degree == (p.s - 1) ** 2, h.degree)
    report.check("not reduced", p.s <= 2 or h.degree > 1)
    report.values["type"] = [H1.degree, H2.degree]
    return report


def star_power_identity(p: PencilArrangement, budget: Budget | None = None) -> Report:
    """(F, P)^(s-1) = (G/G_1, ..., G/G_s), ACM of degree C(s,2) d^2."""
    report = Report(f"star-power s={p.s} d={p.d}")
    report.check("base is a smooth complete intersection", is_smooth_ci(p.F, p.P, budget))
    ring = p.ring
    Gs = p.forms()
    star = Ideal([product([g for j, g in enumerate(Gs) if j != k], ring) for k in range(p.s)], ring)
    pw = p.base_ideal() ** (p.s - 1)
    report.check("(F,P)^(s-1) = <G/G_i>", ideal_equal(star, pw))
    deg = hilbert_data(star, budget).degree
    report.check("degree C(s,2) d^2", deg == comb(p.s, 2) * p.d ** 2, deg)
    report.check("ACM", is_acm(star, budget=budget))
    return report


def minors_codim_check(p: PencilArrangement, budget: Budget | None = None) -> Report:
    """2-minors of the Jacobian of (F, P) have codim n; with the H column, codim n + 1."""
    report = Report(f"minors s={p.s} d={p.d}")
    if not _pencil_preconditions(p, report, budget):
        report.notes.append("hypotheses fail; codimensions not tested")
        return report
    n = p.ring.nvars - 1
    rows = jacobian_matrix([p.F, p.P])
    M = minors(rows, 2)
    if M.is_unit():
        # linear base: the Jacobian is a constant matrix of rank 2
        report.notes.append("Jacobian minors generate the unit ideal (linear base)")
        report.check("codim of Jacobian minors is n", True, "unit")
    else:
        a = codim(M, budget)
        report.check("codim of Jacobian minors is n", a == n, a)
    H1, H2 = pencil_h_forms(p)
    aug = [rows[0] + [H2], rows[1] + [-H1]]
    b = codim(minors(aug, 2), budget)
    report.check("codim of augmented minors is n+1", b == n + 1, b)
    return report


# ---------------------------------------------------------------------------
# liaison constructions


def hilbert_additivity(Z: Ideal, V: Ideal, V1: Ideal, V2: Ideal, d1: int, d2: int, budget=None) -> bool:
    """h_Z(t) = h_V(t) + h_V1(t - d2) + h_V2(t - d1) for every t.

    V1 is multiplied by F2, so its Hilbert function moves by d2 = deg F2 (and
    V2 by d1); this is the shift that also governs the Rao modules.
    """
    hz, hv, h1, h2 = (hilbert_data(I, budget) for I in (Z, V, V1, V2))
    # past the largest regularity index every side is a polynomial of degree < nvars
    top = max(hz.regularity_index, hv.regularity_index,
              h1.regularity_index + d2, h2.regularity_index + d1) + Z.ring.nvars + 1
    return all(hz.function(t) == hv.function(t) + h1.function(t - d2) + h2.function(t - d1)
               for t in range(0, top + 1))


def _regular_pair(F1: Poly, F2: Poly) -> bool:
    return codim(Ideal([F1, F2], F1.ring)) == 2


def liaison_addition(I1: Ideal, I2: Ideal, F1: Poly, F2: Poly, budget: Budget | None = None) -> Ideal:
    """F2 I1 + F1 I2, checked to be saturated with additive Hilbert function."""
    if not I1.contains(F1) or not I2.contains(F2):
        raise HypothesisError("need F1 in I1 and F2 in I2")
    if not _regular_pair(F1, F2):
        raise HypothesisError("F1, F2 do not form a regular sequence")
    ring = I1.ring
    gens = [F2 * g for g in I1.gens] + [F1 * g for g in I2.gens]
    I = Ideal(gens, ring, tag="F2*I1 + F1*I2")
    if not is_saturated(I, budget):
        raise ArithmeticError("liaison addition produced a non-saturated ideal")
    V = Ideal([F1, F2], ring)
    if not hilbert_additivity(I, V, I1, I2, F1.degree, F2.degree, budget):
        raise ArithmeticError("Hilbert function of the liaison addition is not additive")
    return I


def basic_double_link(I1: Ideal, F1: Poly, F2: Poly, budget: Budget | None = None,
                      check_rao: bool = False) -> Ideal:
    """F2 I1 + (F1): liaison addition with the empty scheme as second input."""
    I = liaison_addition(I1, unit_ideal(I1.ring), F1, F2, budget)
    I.tag = "F2*I1 + (F1)"
    if check_rao and rao_of(I, budget).dims != rao_of(I1, budget).shifted(F2.degree).dims:
        raise ArithmeticError("Rao module did not shift by deg F2")
    return I


def rao_of(I: Ideal, budget: Budget | None = None):
    """Rao module, with the unit ideal (empty curve) giving zero."""
    from .invariants import RaoModule
    if I.is_unit():
        return RaoModule({})
    return rao_module(I, budget=budget)


# ---------------------------------------------------------------------------
# top-dimensional part


@dataclass
class PrimaryPiece:
    """The part of J^sat living on one expected support."""

    support: Ideal
    primary: Ideal
    degree: int
    support_degree: int

    @property
    def multiplicity(self):
        from fractions import Fraction
        return Fraction(self.degree, self.support_degree)

    def as_dict(self) -> dict:
        return {"support": str(self.support), "degree": self.degree,
                "support_degree": self.support_degree, "multiplicity": str(self.multiplicity)}


def _separator(q: Ideal, avoid: Ideal | Sequence[Ideal], rng: random.Random, tries: int = 6) -> Poly:
    """A form in q lying in none of the ``avoid`` ideals, of the smallest degree that works."""
    avoid = [avoid] if isinstance(avoid, Ideal) else list(avoid)
    degs = [g.degree for g in q.gens]
    # past the top generator degree a general form of q avoids any prime not containing q
    for d in range(min(degs), max(min(degs) + 3, max(degs) + 1)):
        for _ in range(tries):
            h = general_form(q, d, rng)
            if not any(p.contains(h) for p in avoid):
                return h
    raise UncoveredComponent(f"support {q} seems to contain another support")


def extract_component(Jsat: Ideal, support: Ideal, others: Sequence[Ideal], seed=0,
                      budget: Budget | None = None) -> Ideal:
    """Jsat : h^oo with h vanishing on every other support but not on ``support``."""
    rng = _rng(f"sep:{seed}")
    seps = [_separator(q, support, rng) for q in others]
    seps.sort(key=lambda h: h.degree)
    return saturate_product(Jsat, seps, budget)


def _extract_all(Jsat: Ideal, supports: Sequence[Ideal], rng: random.Random, budget=None) -> dict:
    """Piece of Jsat on every support, halving the support list recursively."""
    def rec(I: Ideal, idx: list[int]) -> dict:
        if I.is_unit():
            return {}
        if len(idx) == 1:
            return {idx[0]: I}
        half = len(idx) // 2
        out = {}
        for keep, drop in ((idx[:half], idx[half:]), (idx[half:], idx[:half])):
            seps = sorted((_separator(supports[q], [supports[k] for k in keep], rng) for q in drop),
                          key=lambda h: h.degree)
            out.update(rec(saturate_product(I, seps, budget), keep))
        return out

    return rec(Jsat, list(range(len(supports))))


def _strip_embedded(Q: Ideal, p: Ideal, rng: random.Random, budget=None, rounds: int = 4) -> Ideal:
    """Remove embedded points of a piece that no separator could see.

    They sit where the top Ext module of S/Q is supported, so saturating by
    a random element of its annihilator (chosen outside p) removes them.
    """
    for _ in range(rounds):
        if is_unmixed(Q, budget):
            return Q
        A = top_ext_annihilator(Q, budget)
        Q = saturate_product(Q, [_separator(A, p, rng)], budget)
    if not is_unmixed(Q, budget):
        raise ArithmeticError("could not strip the embedded components of a piece")
    return Q


def _dedupe(ideals: Sequence[Ideal]) -> list[Ideal]:
    out: list[Ideal] = []
    for I in ideals:
        h = hilbert_data(I)
        if not any(hilbert_data(J).polynomial == h.polynomial and ideal_equal(I, J) for J in out):
            out.append(I)
    return out


def top_part(J: Ideal, supports: Sequence[Ideal], seed=0, budget: Budget | None = None,
             check: bool = True) -> tuple[Ideal, list[PrimaryPiece]]:
    """J^top as the intersection of the codim-2 pieces of J^sat on the given supports.

    Raises UncoveredComponent when J^sat has a codim-2 component away from
    every support, so a short support list fails loudly instead of silently.
    """
    ring = J.ring
    Jsat = saturate_irrelevant(J, budget=budget)
    hs = hilbert_data(Jsat, budget)
    if Jsat.is_unit() or hs.codim > 2:
        return unit_ideal(ring), []
    if hs.codim < 2:
        raise ValueError("the ideal has codimension one")
    supports = _dedupe(supports)
    for p in supports:
        if codim(p, budget) != 2:
            raise ValueError(f"support {p} is not of codimension two")
    rng = _rng(f"cover:{seed}")
    killers = [general_form(p, min(g.degree for g in p.gens), rng) for p in supports]
    residue = saturate_product(Jsat, killers, budget)
    if not residue.is_unit() and codim(residue, budget) == 2:
        raise UncoveredComponent("a codim-2 component lies off every support "
                                 f"(residue degree {hilbert_data(residue).degree})", residue)
    pieces = []
    found = _extract_all(Jsat, supports, _rng(f"sep:{seed}"), budget)
    for k, p in enumerate(supports):
        Q = found.get(k)
        if Q is None or Q.is_unit():
            continue
        hq = hilbert_data(Q, budget)
        if hq.codim != 2:
            continue
        Q = _strip_embedded(Q, p, rng, budget)
        pieces.append(PrimaryPiece(p, Q, hq.degree, hilbert_data(p, budget).degree))
    top = intersect_all([q.primary for q in pieces], budget) if pieces else unit_ideal(ring)
    top.tag = f"{J.tag}^top" if J.tag else "top"
    if check:
        ht = hilbert_data(top, budget)
        if ht.degree != hs.degree or ht.codim != 2:
            raise ArithmeticError(f"pieces have total degree {ht.degree}, J^sat has {hs.degree}")
        if not Jsat.is_subset(top):
            raise ArithmeticError("J^sat is not contained in the extracted top part")
        top.memo["saturated"] = True
        if not is_unmixed(top, budget):
            raise ArithmeticError("extracted top part still has lower-dimensional components")
    return top, pieces


# ---------------------------------------------------------------------------
# supports and radicals


def _split(C: Ideal, hint: Ideal, budget=None) -> Ideal:
    """Residual of V(hint) inside V(C), with every trace of the hint removed."""
    R = quotient(C, hint, budget)
    if not R.is_unit() and R.is_subset(hint):
        from .idealops import saturate
        R = saturate(C, hint, budget=budget)
    return R


def default_supports(spec: ArrangementSpec, hints: Sequence[Ideal] = (),
                     budget: Budget | None = None) -> list[Ideal]:
    """Pairwise loci V(f_i, f_j), split along the hint ideals, plus the hints."""
    ring = spec.ring
    for H in hints:
        if codim(H, budget) != 2:
            raise ValueError(f"hint {H} is not of codimension two")
    found: list[Ideal] = list(hints)
    for i, j in combinations(range(len(spec)), 2):
        C = Ideal([spec.factors[i], spec.factors[j]], ring, tag=f"({spec.labels[i]},{spec.labels[j]})")
        if codim(C, budget) != 2:
            continue
        todo, done = [C], []
        while todo:
            X = todo.pop()
            for H in hints:
                if X.is_subset(H) and not ideal_equal(X, H):
                    R = _split(X, H, budget)
                    if not R.is_unit() and codim(R, budget) == 2:
                        todo.append(R)
                    break
            else:
                done.append(X)
        found.extend(done)
    return _dedupe(found)


def radical_top(spec: ArrangementSpec, supports: Sequence[Ideal] | None = None, seed=0,
                budget: Budget | None = None, pieces: Sequence[PrimaryPiece] | None = None) -> Ideal:
    """Intersection of the supports that carry a piece of J^top."""
    if pieces is None:
        if supports is None:
            supports = default_supports(spec, budget=budget)
        _, pieces = top_part(jacobian_ideal(spec), supports, seed, budget)
    if not pieces:
        return unit_ideal(spec.ring)
    rad = intersect_all([q.support for q in pieces], budget)
    rad.tag = "rad(top)"
    return rad


# ---------------------------------------------------------------------------
# hypotheses


def _loci(spec: ArrangementSpec, budget=None) -> list[tuple[Ideal, list[int]]]:
    """Distinct pairwise complete intersections and the factors vanishing on each."""
    out: list[tuple[Ideal, list[int]]] = []
    for i, j in combinations(range(len(spec)), 2):
        C = Ideal([spec.factors[i], spec.factors[j]], spec.ring)
        if codim(C, budget) != 2:
            continue
        if any(i in members and j in members for _, members in out):
            continue
        members = [k for k, f in enumerate(spec.factors) if C.contains(f)]
        out.append((C, members))
    return out


def check_hypotheses(spec: ArrangementSpec, split: int | None = None,
                     budget: Budget | None = None) -> Report:
    """Verdicts on the hypotheses of the ACM criterion for arrangements.

    With ``split = k`` the factors are also read as f = f_1..f_k times
    g = f_{k+1}..f_s and the liaison-addition conditions are checked.
    """
    report = Report("hypotheses")
    ring = spec.ring
    s = len(spec)
    bad_pairs = []
    for i, j in combinations(range(s), 2):
        try:
            ok = is_smooth_ci(spec.factors[i], spec.factors[j], budget)
        except NotRegularSequence:
            ok = False
        if not ok:
            bad_pairs.append((spec.labels[i], spec.labels[j]))
    report.check("pairs meet in smooth complete intersections", not bad_pairs, bad_pairs or None)
    bad_triples = []
    for i, j, k in combinations(range(s), 3):
        T = Ideal([spec.factors[i], spec.factors[j], spec.factors[k]], ring)
        if codim(T, budget) < 3 and len({spec.factors[a].degree for a in (i, j, k)}) > 1:
            bad_triples.append((spec.labels[i], spec.labels[j], spec.labels[k]))
    report.check("factors sharing a codim-2 locus have equal degree", not bad_triples, bad_triples or None)
    loci = _loci(spec, budget)
    heavy = [members for _, members in loci if len(members) >= 3]
    crowded = [spec.labels[k] for k in range(s) if sum(k in m for m in heavy) > 1]
    report.check("no factor lies on two non-reduced loci", not crowded, crowded or None)
    report.values["non-reduced loci"] = [[spec.labels[k] for k in m] for m in heavy]
    report.values["smooth factors"] = [is_smooth_form(f, budget) for f in spec.factors]
    if split is not None:
        f = product(spec.factors[:split], ring)
        g = product(spec.factors[split:], ring)
        bad = []
        for i, j in combinations(range(split), 2):
            if codim(Ideal([spec.factors[i], spec.factors[j], g], ring), budget) != 3:
                bad.append((spec.labels[i], spec.labels[j], "g"))
        for i, j in combinations(range(split, s), 2):
            if codim(Ideal([f, spec.factors[i], spec.factors[j]], ring), budget) != 3:
                bad.append(("f", spec.labels[i], spec.labels[j]))
        report.check("condition (star): pair loci of f avoid g and vice versa", not bad, bad or None)
    return report


# ---------------------------------------------------------------------------
# decomposition checks


def arrangement_top(spec: ArrangementSpec, hints: Sequence[Ideal] = (), seed=0,
                    budget: Budget | None = None) -> tuple[Ideal, list[PrimaryPiece]]:
    return top_part(jacobian_ideal(spec), default_supports(spec, hints, budget), seed, budget)


def verify_liaison_decomposition(specF: ArrangementSpec, specG: ArrangementSpec, seed=0,
                                 budget: Budget | None = None, rao: bool = False) -> Report:
    """Jac(fg)^top against Jac(f)^top, Jac(g)^top and (f, g), each side computed separately."""
    ring = specF.ring
    both = specF + specG
    report = Report(f"liaison-decomposition {len(specF)}+{len(specG)}")
    hyp = check_hypotheses(both, split=len(specF), budget=budget)
    pairs_ok = hyp.checks["pairs meet in smooth complete intersections"]
    star_ok = hyp.checks["condition (star): pair loci of f avoid g and vice versa"]
    report.check("hypotheses hold", pairs_ok and star_ok)
    if not report.ok:
        report.notes.extend(f"hypothesis failed: {k}" for k in hyp.failures())
        return report
    f, g = specF.product(), specG.product()
    top_fg, pieces_fg = arrangement_top(both, seed=seed, budget=budget)
    top_f, pieces_f = arrangement_top(specF, seed=seed, budget=budget)
    top_g, pieces_g = arrangement_top(specG, seed=seed, budget=budget)
    fg = Ideal([f, g], ring)
    report.check("(a) intersection formula", ideal_equal(top_fg, intersect_all([top_f, top_g, fg], budget)))
    added = liaison_addition(top_f, top_g, f, g, budget)
    label = "(b) basic double link formula" if top_g.is_unit() else "(b) liaison addition formula"
    report.check(label, ideal_equal(top_fg, added))
    rad_fg = radical_top(both, pieces=pieces_fg, budget=budget)
    rad_f = radical_top(specF, pieces=pieces_f, budget=budget)
    rad_g = radical_top(specG, pieces=pieces_g, budget=budget)
    report.check("(c) radical intersection formula", ideal_equal(rad_fg, intersect_all([rad_f, rad_g, fg], budget)))
    rad_added = Ideal([g * a for a in rad_f.gens] + [f * b for b in rad_g.gens], ring)
    report.check("(c) radical addition formula", ideal_equal(rad_fg, rad_added))
    report.values["degree"] = hilbert_data(top_fg, budget).degree
    if rao and ring.nvars == 4:
        m_fg, m_f, m_g = rao_of(top_fg, budget), rao_of(top_f, budget), rao_of(top_g, budget)
        want: dict = {}
        for t, v in list(m_f.shifted(g.degree).dims.items()) + list(m_g.shifted(f.degree).dims.items()):
            want[t] = want.get(t, 0) + v
        got = {t: v for t, v in m_fg.dims.items() if v}
        report.check("Rao module is the shifted sum", got == {t: v for t, v in want.items() if v}, got)
    return report


def verify_component_stability(specF: ArrangementSpec, g: Poly, support: Ideal, seed=0,
                               budget: Budget | None = None) -> Report:
    """The piece of Jac(f) on a support survives unchanged in Jac(f g)."""
    report = Report("component stability")
    ring = specF.ring
    for i, j in combinations(range(len(specF)), 2):
        if codim(Ideal([specF.factors[i], specF.factors[j], g], ring), budget) != 3:
            report.check("codim (f_i, f_j, g) = 3", False)
            return report
    report.check("codim (f_i, f_j, g) = 3", True)
    if not all(is_smooth_form(h, budget) for h in specF.factors + [g]):
        report.check("factors smooth", False)
        return report
    both = specF + ArrangementSpec([g], ring, ["g"])
    _, before = arrangement_top(specF, [support], seed, budget)
    _, after = arrangement_top(both, [support], seed, budget)
    q1 = next((q for q in before if ideal_equal(q.support, support)), None)
    q2 = next((q for q in after if ideal_equal(q.support, support)), None)
    report.check("support carries a piece", q1 is not None and q2 is not None)
    if q1 is not None and q2 is not None:
        report.check("pieces equal", ideal_equal(q1.primary, q2.primary))
        report.values["multiplicity"] = str(q1.multiplicity)
    return report


def hyperplane_flats(spec: ArrangementSpec, budget=None) -> list[tuple[Ideal, list[int]]]:
    if any(f.degree != 1 for f in spec.factors):
        raise ValueError("hyperplane arrangements have linear factors only")
    return _loci(spec, budget)


def hyperplane_flat_components(spec: ArrangementSpec, seed=0, budget: Budget | None = None) -> Report:
    """J^top is the intersection over codim-2 flats of the Jacobians of the planes through them."""
    ring = spec.ring
    report = Report(f"hyperplane flats s={len(spec)}")
    flats = hyperplane_flats(spec, budget)
    J = jacobian_ideal(spec)
    top, pieces = top_part(J, [L for L, _ in flats], seed, budget)
    local = []
    for L, members in flats:
        sub = spec.sub(members)
        JL = jacobian_ideal(sub) if len(members) > 2 else L
        local.append(JL)
        q = next(q for q in pieces if ideal_equal(q.support, L))
        e = len(members)
        ok = ideal_equal(q.primary, JL) and q.degree == (e - 1) ** 2
        report.check(f"piece on flat of {e} planes is Jac of those planes", ok)
    report.check("J^top = intersection of flat Jacobians", ideal_equal(top, intersect_all(local, budget)))
    generic = all(len(m) == 2 for _, m in flats)
    if generic:
        config = Ideal([product([h for k, h in enumerate(spec.factors) if k != i], ring)
                        for i in range(len(spec))], ring)
        report.check("generic: J^top = <f/l_i>", ideal_equal(top, config))
        report.check("generic: J^top = J radical", ideal_equal(top, radical_top(spec, pieces=pieces)))
    report.check("J^top ACM", is_acm(top, budget=budget))
    Jsat = saturate_irrelevant(J, budget=budget)
    report.values["flats"] = [len(m) for _, m in flats]
    report.values["degree"] = hilbert_data(top, budget).degree
    report.values["HP(J^sat)"] = hilbert_data(Jsat, budget).poly_string()
    report.values["HP(J^top)"] = hilbert_data(top, budget).poly_string()
    report.values["J^sat unmixed"] = ideal_equal(Jsat, top)
    return report
