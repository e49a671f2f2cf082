"""Graded free modules, module term orders and packed term arrays.

An ideal is treated as a submodule of the rank one free module, so the
Groebner engine only ever sees :class:`Elt` objects: homogeneous vectors
stored as parallel numpy arrays (component, exponent row, coefficient) with
terms sorted biggest first.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import backend
from .ring import MonomialOrder, Poly, Ring, descending_perm


class EncodingOverflow(OverflowError):
    """Exponents or ranks too large for packed int64 term codes."""


class FreeModule:
    """Graded free module ``S e_0 + ... + S e_{r-1}`` with ``deg e_i = degrees[i]``.

    ``order`` is ``"pot"`` (position over term, ``e_0`` biggest), ``"top"``
    (degree, then the ring order, then position) or ``"schreyer"``.  A Schreyer
    order is induced by a list of vectors in another free module: ``m e_i`` is
    compared through ``m * lead(g_i)`` and then by index (smaller index wins).
    """

    def __init__(self, ring: Ring, rank: int = 1, degrees: Sequence[int] | None = None,
                 order: str = "pot", schreyer=None):
        self.ring = ring
        self.rank = rank
        self.degrees = tuple(int(a) for a in degrees) if degrees is not None else (0,) * rank
        if len(self.degrees) != rank:
            raise ValueError("one degree per basis vector")
        if order not in ("pot", "top", "schreyer"):
            raise ValueError(f"unknown module order {order!r}")
        self.order = order
        self.base = ring.order
        self._deg = np.array(self.degrees, dtype=np.int64)
        if order == "schreyer":
            prev, lead_comp, lead_exp = schreyer
            self.prev = prev
            self.lead_comp = np.asarray(lead_comp, dtype=np.int64)
            self.lead_exp = np.asarray(lead_exp, dtype=np.int64).reshape(rank, ring.nvars)
        nv = ring.nvars
        self.bits = 63 // (nv + 1)
        if rank >= (1 << self.bits):
            raise EncodingOverflow(f"rank {rank} too large to pack")

    @classmethod
    def schreyer_of(cls, elts: Sequence["Elt"], module: "FreeModule") -> "FreeModule":
        lc = [e.comp[0] for e in elts]
        le = np.array([e.exps[0] for e in elts], dtype=np.int64).reshape(len(elts), module.ring.nvars)
        return cls(module.ring, len(elts), [e.deg for e in elts], "schreyer", (module, lc, le))

    @property
    def nvars(self):
        return self.ring.nvars

    def columns(self, comp: np.ndarray, exps: np.ndarray) -> list[np.ndarray]:
        w = self.ring._w
        if self.order == "pot":
            base = self.base.columns(exps, w)
            return base if self.rank == 1 else [-comp] + base
        if self.order == "top":
            return [exps @ w + self._deg[comp]] + self.base.columns(exps, w) + [-comp]
        return self.prev.columns(self.lead_comp[comp], exps + self.lead_exp[comp]) + [-comp]

    def term_degree(self, comp, exps):
        return exps @ self.ring._w + self._deg[comp]

    # packed codes are only used for hashing and set operations, not for order
    def encode(self, comp: np.ndarray, exps: np.ndarray) -> np.ndarray:
        b = self.bits
        if exps.size and exps.max() >= (1 << b):
            raise EncodingOverflow(f"exponent {exps.max()} exceeds {b}-bit slots")
        code = comp.astype(np.int64)
        for i in range(exps.shape[1]):
            code = (code << b) | exps[:, i]
        return code

    def decode(self, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        b = self.bits
        mask = (1 << b) - 1
        nv = self.nvars
        exps = np.empty((codes.size, nv), dtype=np.int64)
        c = codes.copy()
        for i in range(nv - 1, -1, -1):
            exps[:, i] = c & mask
            c >>= b
        return c, exps

    def sort_perm(self, comp, exps):
        return descending_perm(self.columns(comp, exps))

    def key(self, comp: int, exps) -> tuple:
        cols = self.columns(np.array([comp], dtype=np.int64), np.array([exps], dtype=np.int64))
        return tuple(int(c[0]) for c in cols)


class Elt:
    """Homogeneous module element with terms sorted biggest first."""

    __slots__ = ("comp", "exps", "coef", "deg", "code")

    def __init__(self, comp, exps, coef, deg):
        self.comp = comp
        self.exps = exps
        self.coef = coef
        self.deg = deg
        self.code = None

    def __len__(self):
        return self.comp.size

    def lead(self):
        return int(self.comp[0]), tuple(int(a) for a in self.exps[0])

    def codes(self, module: FreeModule):
        if self.code is None:
            self.code = module.encode(self.comp, self.exps)
        return self.code


def make_multiple(elt: Elt, mult: np.ndarray, ring: Ring) -> Elt:
    return Elt(elt.comp, elt.exps + mult, elt.coef, elt.deg + int(mult @ ring._w))


def build_elt(module: FreeModule, comp, exps, coef, normalize: bool = False) -> Elt | None:
    """Sort raw terms into an :class:`Elt`; combines nothing, so terms must be distinct."""
    comp = np.asarray(comp, dtype=np.int64)
    if comp.size == 0:
        return None
    exps = np.asarray(exps, dtype=np.int64).reshape(comp.size, module.nvars)
    kern = backend(module.ring.char)
    coef = np.asarray(coef, dtype=kern.dtype)
    degs = module.term_degree(comp, exps)
    if degs.min() != degs.max():
        raise ValueError("element is not homogeneous")
    perm = module.sort_perm(comp, exps)
    comp, exps, coef = comp[perm], exps[perm], coef[perm]
    if normalize:
        coef = kern.scal(coef, kern.inv(coef[0]))
    return Elt(comp, exps, coef, int(degs[0]))


def homogeneous_parts(module: FreeModule, vec: Sequence[Poly]) -> dict[int, tuple]:
    """Split a vector of polynomials into raw term lists by degree."""
    parts: dict[int, tuple[list, list, list]] = {}
    w = module.ring.weights
    for i, f in enumerate(vec):
        for e, c in f.terms.items():
            d = sum(a * b for a, b in zip(e, w)) + module.degrees[i]
            cs, es, vs = parts.setdefault(d, ([], [], []))
            cs.append(i)
            es.append(e)
            vs.append(c)
    return parts


def vec_to_elts(module: FreeModule, vec: Sequence[Poly] | Poly, normalize=False) -> list[Elt]:
    if isinstance(vec, Poly):
        vec = [vec]
    if len(vec) != module.rank:
        raise ValueError(f"vector of length {len(vec)} in rank {module.rank} module")
    out = []
    for d, (cs, es, vs) in sorted(homogeneous_parts(module, vec).items()):
        out.append(build_elt(module, cs, es, vs, normalize))
    return out


def elt_to_vec(module: FreeModule, elt: Elt | None) -> list[Poly]:
    ring = module.ring
    terms: list[dict] = [{} for _ in range(module.rank)]
    if elt is not None:
        field = ring.field
        for c, e, v in zip(elt.comp.tolist(), elt.exps.tolist(), elt.coef.tolist()):
            terms[c][tuple(e)] = field(v) if ring.char else v
    return [Poly(ring, t) for t in terms]


def elt_to_poly(module: FreeModule, elt: Elt | None) -> Poly:
    return elt_to_vec(module, elt)[0]
