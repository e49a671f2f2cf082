"""Schreyer resolutions and their minimalization.

Level k of a resolution is a list of homogeneous vectors (the columns of the
differential ``d_k``) living in the free module of level k-1.  Each level is a
Groebner basis for the Schreyer order induced by the previous one, so the next
level comes from lifting the S-pairs with :func:`reduce_elts`.  Before building
a level its generators are sorted lexicographically by lead term within each
component; this makes every syzygy lead free of one more variable, which
bounds the length by the number of variables.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .groebner import Basis, Budget, BudgetExhausted, reduce_elts
from .linalg import backend
from .modules import Elt, FreeModule, build_elt, elt_to_vec
from .ring import Poly, Ring


def combine(module: FreeModule, parts: Sequence[tuple[Elt, np.ndarray | None, object]]) -> Elt | None:
    """Sum of ``coef * x^mult * elt`` over the parts (all of one degree)."""
    ring = module.ring
    kern = backend(ring.char)
    comps, exps, coefs = [], [], []
    for elt, mult, c in parts:
        comps.append(elt.comp)
        exps.append(elt.exps + mult if mult is not None else elt.exps)
        coefs.append(kern.scal(elt.coef, c))
    comp = np.concatenate(comps)
    exp = np.vstack(exps)
    coef = np.concatenate(coefs)
    codes = module.encode(comp, exp)
    uniq, inv = np.unique(codes, return_inverse=True)
    total = kern.zeros(uniq.size)
    np.add.at(total, inv, coef)
    if ring.char:
        total %= ring.char
    nz = np.flatnonzero(total)
    if nz.size == 0:
        return None
    c, e = module.decode(uniq[nz])
    return build_elt(module, c, e, total[nz])


def _lex_sorted(elts: list[Elt]) -> list[Elt]:
    return sorted(elts, key=lambda g: (int(g.comp[0]), tuple(-int(a) for a in g.exps[0])))


def _minimal_pairs(le: np.ndarray, idx: np.ndarray):
    """For each i, the partners j > i whose quotient lcm/lead_i is minimal."""
    out = []
    for a in range(idx.size - 1):
        i = idx[a]
        js = idx[a + 1:]
        q = np.maximum(le[js], le[i]) - le[i]
        # drop quotients divisible by another (keep the first of equal ones)
        div = np.all(q[:, None, :] <= q[None, :, :], axis=2)
        eq = np.all(q[:, None, :] == q[None, :, :], axis=2)
        earlier_eq = np.triu(eq, 1)
        dominated = (div & ~eq).any(axis=0) | earlier_eq.any(axis=0)
        for b in np.flatnonzero(~dominated).tolist():
            out.append((int(i), int(js[b]), q[b]))
    return out


def syzygy_level(gens: list[Elt], prev: FreeModule, budget: Budget | None = None):
    """Schreyer syzygies of ``gens`` (a Groebner basis in ``prev``).

    Returns ``(module, syzygies)`` where ``module`` is the free module indexing
    ``gens`` with its Schreyer order.
    """
    ring = prev.ring
    Fk = FreeModule.schreyer_of(gens, prev)
    basis = Basis(prev)
    for g in gens:
        basis.add(g)
    lc, le, _ = basis.arrays()
    pairs = []
    for comp in np.unique(lc).tolist():
        idx = np.flatnonzero(lc == comp)
        pairs.extend(_minimal_pairs(le, idx))
    if budget is not None and budget.max_pairs is not None and len(pairs) > budget.max_pairs:
        raise BudgetExhausted(f"{len(pairs)} syzygy pairs exceed the budget", None)
    kern = backend(ring.char)
    one = kern.asarray([1])[0]
    minus = kern.asarray([-1])[0]
    spolys = []
    for i, j, qi in pairs:
        lcm = le[i] + qi
        qj = lcm - le[j]
        spolys.append(combine(prev, [(gens[i], qi, one), (gens[j], qj, minus)]))
    rems, lifts = reduce_elts(basis, spolys, lift=True)
    out = []
    for (i, j, qi), s, r, lift in zip(pairs, spolys, rems, lifts):
        if r is not None:
            raise ArithmeticError("S-pair did not reduce to zero; input is not a Groebner basis")
        lcm = le[i] + qi
        comps = [i, j]
        exps = [qi, lcm - le[j]]
        coefs = [one, minus]
        for g, mult, c in lift:
            comps.append(g)
            exps.append(mult)
            coefs.append((-c) % ring.char if ring.char else -c)
        out.append(build_elt(Fk, comps, exps, coefs))
    return Fk, out


class SchreyerResolution:
    """Free resolution ``0 <- S/I <- F_0 <- F_1 <- ...`` (possibly non-minimal)."""

    def __init__(self, ring: Ring, modules: list[FreeModule], columns: list[list[Elt]]):
        self.ring = ring
        self.modules = modules  # modules[k] = F_k, modules[0] = S
        self.columns = columns  # columns[k] = images of the basis of F_k (k >= 1)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def rank(self, k: int) -> int:
        return self.modules[k].rank if k < len(self.modules) else 0

    def degrees(self, k: int) -> tuple:
        return self.modules[k].degrees if k < len(self.modules) else ()

    def constant_matrix(self, k: int, deg: int):
        """Scalar part of d_k between the degree ``deg`` generators."""
        kern = backend(self.ring.char)
        cols = [c for c, d in enumerate(self.degrees(k)) if d == deg]
        rows = [r for r, d in enumerate(self.degrees(k - 1)) if d == deg]
        M = kern.zeros((len(rows), len(cols)))
        if not rows or not cols:
            return M
        rpos = {r: a for a, r in enumerate(rows)}
        for b, c in enumerate(cols):
            e = self.columns[k][c]
            const = np.flatnonzero(~e.exps.any(axis=1))
            for t in const.tolist():
                M[rpos[int(e.comp[t])], b] = e.coef[t]
        return M

    def matrix(self, k: int) -> list[list[Poly]]:
        """d_k as a list of rows of polynomials."""
        src = self.modules[k - 1]
        cols = [elt_to_vec(src, e) for e in self.columns[k]]
        return [[cols[c][r] for c in range(len(cols))] for r in range(src.rank)]


def schreyer_resolution(gb_elts: list[Elt], ring: Ring, budget: Budget | None = None,
                        max_length: int | None = None) -> SchreyerResolution:
    S = FreeModule(ring, 1)
    modules = [S]
    columns: list[list[Elt]] = [[]]
    gens = _lex_sorted(list(gb_elts))
    prev = S
    limit = max_length if max_length is not None else ring.nvars + 1
    while gens and len(modules) <= limit:
        Fk, syz = syzygy_level(gens, prev, budget)
        modules.append(Fk)
        columns.append(gens)
        prev = Fk
        gens = _lex_sorted(syz)
    if gens:
        raise RuntimeError("resolution did not terminate within the variable bound")
    return SchreyerResolution(ring, modules, columns)


def betti_from_resolution(res: SchreyerResolution) -> dict[tuple[int, int], int]:
    """Minimal Betti numbers as dimensions of Tor(S/I, K) from the scalar parts."""
    kern = backend(res.ring.char)
    out = {}
    top = res.length
    for i in range(0, top + 1):
        for d in sorted(set(res.degrees(i))):
            r = sum(1 for a in res.degrees(i) if a == d)
            rk_in = kern.rank(res.constant_matrix(i, d)) if i >= 1 else 0
            rk_out = kern.rank(res.constant_matrix(i + 1, d)) if i + 1 <= top else 0
            b = r - rk_in - rk_out
            if b:
                out[(i, d)] = b
    return out


def minimize(res: SchreyerResolution) -> tuple[list[list[int]], list[dict]]:
    """Cancel scalar entries one at a time.

    Returns ``(degrees, mats)`` with ``degrees[k]`` the degrees of the minimal
    F_k and ``mats[k]`` the sparse matrix ``{(row, col): Poly}`` of d_k.
    """
    ring = res.ring
    F = ring.field
    L = res.length
    degs = [list(res.degrees(k)) for k in range(L + 1)]
    mats: list[dict] = [{}]
    for k in range(1, L + 1):
        src = res.modules[k - 1]
        M = {}
        for c, e in enumerate(res.columns[k]):
            for r, f in enumerate(elt_to_vec(src, e)):
                if f:
                    M[(r, c)] = f
        mats.append(M)
    mats.append({})
    alive = [list(range(len(d))) for d in degs] + [[]]

    for k in range(1, L + 1):
        while True:
            unit = None
            for (r, c), f in sorted(mats[k].items(), key=lambda t: (t[0][1], t[0][0])):
                if degs[k][c] == degs[k - 1][r] and f.is_constant():
                    unit = (r, c, f.constant_coeff())
                    break
            if unit is None:
                break
            r, c, u = unit
            uinv = F.inv(u)
            M = mats[k]
            col = {i: f for (i, j), f in M.items() if j == c and i != r}
            row = {j: f for (i, j), f in M.items() if i == r and j != c}
            for i, a in col.items():
                for j, b in row.items():
                    v = M.get((i, j), ring.zero()) - (a * b).scale(uinv)
                    if v:
                        M[(i, j)] = v
                    else:
                        M.pop((i, j), None)
            mats[k] = {(i, j): f for (i, j), f in M.items() if i != r and j != c}
            mats[k + 1] = {(i, j): f for (i, j), f in mats[k + 1].items() if i != c}
            mats[k - 1] = {(i, j): f for (i, j), f in mats[k - 1].items() if j != r}
            alive[k].remove(c)
            alive[k - 1].remove(r)
    # renumber
    out_degs = [[degs[k][i] for i in alive[k]] for k in range(L + 1)]
    out_mats: list[dict] = [{}]
    for k in range(1, L + 1):
        rmap = {old: new for new, old in enumerate(alive[k - 1])}
        cmap = {old: new for new, old in enumerate(alive[k])}
        out_mats.append({(rmap[i], cmap[j]): f for (i, j), f in mats[k].items()})
    while len(out_degs) > 1 and not out_degs[-1]:
        out_degs.pop()
        out_mats.pop()
    return out_degs, out_mats
