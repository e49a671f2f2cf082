"""Hilbert series of monomial ideals and graded quotients.

Series are stored as Laurent polynomials ``{exponent: coefficient}`` for the
numerator over ``prod(1 - z^w_i)``.  The monomial computation uses the usual
pivot recursion ``HS(S/I) = HS(S/(I + p)) + z^deg(p) HS(S/(I : p))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np


def _add(a: dict, b: dict, shift: int = 0, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e + shift, 0) + sign * c
        if v:
            out[e + shift] = v
        else:
            out.pop(e + shift, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def minimalize(M: np.ndarray) -> np.ndarray:
    """Minimal generators of the monomial ideal spanned by the rows of ``M``."""
    if M.shape[0] <= 1:
        return M
    M = np.unique(M, axis=0)
    M = M[np.argsort(M.sum(axis=1), kind="stable")]
    keep = []
    for i in range(M.shape[0]):
        row = M[i]
        if keep and np.any(np.all(M[keep] <= row, axis=1)):
            continue
        keep.append(i)
    return M[keep]


def _numerator(M: np.ndarray, w: np.ndarray) -> dict:
    if M.shape[0] == 0:
        return {0: 1}
    support = M > 0
    usage = support.sum(axis=0)
    if usage.max() <= 1:
        out = {0: 1}
        for row in M:
            out = _mul(out, {0: 1, int(row @ w): -1})
        return out
    i = int(np.argmax(usage))
    col = M[support[:, i], i]
    e = int(np.median(col))
    e = max(e, 1)
    p = np.zeros(M.shape[1], dtype=np.int64)
    p[i] = e
    # I + (p)
    plus = M[~(M[:, i] >= e)]
    plus = minimalize(np.vstack([plus, p[None, :]]))
    # I : p
    colon = M.copy()
    colon[:, i] = np.maximum(colon[:, i] - e, 0)
    colon = minimalize(colon)
    return _add(_numerator(plus, w), _numerator(colon, w), shift=int(e * w[i]))


def monomial_numerator(gens: Sequence[Sequence[int]], weights: Sequence[int]) -> dict:
    """Numerator of HS(S/M) over prod(1 - z^w_i) for a monomial ideal M."""
    w = np.asarray(weights, dtype=np.int64)
    if len(gens) == 0:
        return {0: 1}
    M = minimalize(np.asarray(gens, dtype=np.int64).reshape(len(gens), w.size))
    if M.shape[0] and not M.any(axis=1).all():
        return {}
    return _numerator(M, w)


def _binom_poly(a: int, k: int) -> list[Fraction]:
    """Coefficients (constant first) of C(t + a, k) as a polynomial in t."""
    poly = [Fraction(1)]
    for j in range(1, k + 1):
        # multiply by (t + a - j + 1) / j
        c = Fraction(a - j + 1, j)
        new = [Fraction(0)] * (len(poly) + 1)
        for d, v in enumerate(poly):
            new[d] += v * c
            new[d + 1] += v / j
        poly = new
    return poly


@dataclass
class HilbertData:
    """Hilbert series data of a standard graded quotient in ``nvars`` variables.

    ``numerator`` is over ``(1 - z)^nvars`` and may carry negative exponents
    for shifted modules.  ``dim`` is the Krull dimension; the projective
    dimension is ``dim - 1``.
    """

    numerator: dict
    nvars: int

    def __post_init__(self):
        q = dict(self.numerator)
        k = 0
        while q and k < self.nvars and sum(q.values()) == 0:
            q = _divide_one_minus_z(q)
            k += 1
        self.reduced = q
        self.dim = self.nvars - k if q else 0
        self.zero = not q

    @property
    def codim(self) -> int:
        return self.nvars - self.dim

    @property
    def degree(self) -> int:
        return sum(self.reduced.values()) if self.reduced else 0

    def function(self, t: int) -> int:
        D = self.dim
        if D == 0:
            return self.reduced.get(t, 0)
        return sum(c * comb(t - i + D - 1, D - 1) for i, c in self.reduced.items() if t - i >= 0)

    def values(self, lo: int, hi: int) -> list[int]:
        return [self.function(t) for t in range(lo, hi + 1)]

    @property
    def polynomial(self) -> list[Fraction]:
        """Hilbert polynomial coefficients, constant term first."""
        D = self.dim
        if D == 0 or not self.reduced:
            return []
        out = [Fraction(0)] * D
        for i, c in self.reduced.items():
            for d, v in enumerate(_binom_poly(D - 1 - i, D - 1)):
                out[d] += c * v
        while out and out[-1] == 0:
            out.pop()
        return out

    def poly_at(self, t: int) -> Fraction:
        return sum((c * t ** d for d, c in enumerate(self.polynomial)), Fraction(0))

    @property
    def regularity_index(self) -> int:
        """Smallest t0 with HF(t) = HP(t) for every t >= t0."""
        if not self.reduced:
            return 0
        top = max(self.reduced) - self.dim + 1
        lo = min(self.reduced) - self.dim
        t = top
        while t - 1 >= lo and self.function(t - 1) == self.poly_at(t - 1):
            t -= 1
        return t

    def poly_string(self, var: str = "t") -> str:
        return format_univariate(self.polynomial, var)

    def series_string(self) -> str:
        terms = sorted(self.reduced.items())
        body = " + ".join(f"{c}*z^{e}" for e, c in terms) or "0"
        return f"({body}) / (1-z)^{self.dim}"


def _divide_one_minus_z(q: dict) -> dict:
    lo, hi = min(q), max(q)
    out = {}
    acc = 0
    for e in range(lo, hi):
        acc += q.get(e, 0)
        if acc:
            out[e] = acc
    return out


def format_univariate(coeffs: Sequence[Fraction], var: str = "t") -> str:
    if not coeffs:
        return "0"
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[d])
        if c == 0:
            continue
        mag = abs(c)
        cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if d == 0:
            body = cs
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if mag == 1 else f"{cs}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def module_numerator(leads_by_comp: dict[int, list], degrees: Sequence[int], weights) -> dict:
    """Numerator of HS(F/M) from the lead terms of a module Groebner basis."""
    out: dict = {}
    for c, d in enumerate(degrees):
        out = _add(out, monomial_numerator(leads_by_comp.get(c, []), weights), shift=d)
    return out
