"""Coefficient fields, monomial orders and sparse homogeneous polynomials.

Polynomials live in ``K[x0..xn]`` where ``K`` is either a prime field or the
rationals.  A :class:`Poly` is an immutable mapping from exponent tuples to
nonzero coefficients; the ambient :class:`Ring` fixes the field, the variable
names, optional positive weights and the default monomial order.
"""

from __future__ import annotations

import heapq
import random
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_PRIME = 32003
MAX_EXPONENT = 2 ** 15
RESERVED_NAMES = ("t0", "t1")


class CharacteristicCollision(ArithmeticError):
    """The field characteristic divides a coefficient the formula needs."""


class RingMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Either GF(p) (elements are ints in [0, p)) or QQ (elements are Fractions)."""

    def __init__(self, char: int = DEFAULT_PRIME):
        if char != 0 and not is_prime(char):
            raise ValueError(f"characteristic must be 0 or prime, got {char}")
        self.char = char

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __call__(self, x) -> int | Fraction:
        p = self.char
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            num = x.numerator % p
            den = x.denominator % p
            if den == 0:
                raise CharacteristicCollision(f"denominator {x.denominator} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(x) % p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return a * b % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.char) if self.char else 1 / a

    def random(self, rng: random.Random, nonzero: bool = False):
        if self.char:
            lo = 1 if nonzero else 0
            return rng.randrange(lo, self.char)
        while True:
            v = Fraction(rng.randint(-50, 50))
            if v or not nonzero:
                return v

    def to_str(self, a) -> str:
        if self.char:
            a = int(a)
            return str(a - self.char if a > self.char // 2 else a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total order on exponent vectors.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``; the last one is the block
    order eliminating the first ``block`` variables (weighted degree in that block
    first, grevlex as tie break).  Orders produce comparison keys in two forms:
    a tuple for a single monomial (:meth:`key`) and a list of integer columns for
    an exponent matrix (:meth:`columns`); in both larger means bigger.
    """

    def __init__(self, kind: str = "grevlex", block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and block < 0:
            raise ValueError("block size must be non-negative")
        self.kind = kind
        self.block = block if kind == "elim" else 0

    @classmethod
    def parse(cls, spec) -> "MonomialOrder":
        if isinstance(spec, MonomialOrder):
            return spec
        if isinstance(spec, tuple):
            return cls(*spec)
        if isinstance(spec, str) and spec.startswith("elim"):
            return cls("elim", int(spec[4:].strip("():") or 0))
        return cls(spec)

    def __repr__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.block) == (other.kind, other.block)

    def __hash__(self):
        return hash((self.kind, self.block))

    def key(self, e: Sequence[int], weights: Sequence[int]) -> tuple:
        if self.kind == "lex":
            return tuple(e)
        wdeg = sum(a * w for a, w in zip(e, weights))
        rev = tuple(-a for a in reversed(e))
        if self.kind == "grevlex":
            return (wdeg,) + rev
        head = sum(a * w for a, w in zip(e[: self.block], weights))
        return (head, wdeg) + rev

    def columns(self, E: np.ndarray, weights: np.ndarray) -> list[np.ndarray]:
        if self.kind == "lex":
            return [E[:, i] for i in range(E.shape[1])]
        wdeg = E @ weights
        rev = [-E[:, i] for i in range(E.shape[1] - 1, -1, -1)]
        if self.kind == "grevlex":
            return [wdeg] + rev
        head = E[:, : self.block] @ weights[: self.block]
        return [head, wdeg] + rev


def descending_perm(cols: Sequence[np.ndarray]) -> np.ndarray:
    """Permutation sorting rows by the key columns, biggest first."""
    return np.lexsort(tuple(-c for c in reversed(cols)))


# ---------------------------------------------------------------------------
# ring


class Ring:
    """Polynomial ring K[x0..xn] (``n + 1`` variables)."""

    def __init__(self, n: int = 3, char: int = DEFAULT_PRIME, order="grevlex",
                 names: Sequence[str] | None = None, weights: Sequence[int] | None = None,
                 allow_reserved: bool = False):
        if n < 0:
            raise ValueError("need at least one variable")
        self.n = n
        self.nvars = n + 1
        self.field = Field(char)
        self.order = MonomialOrder.parse(order)
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(self.nvars))
        if len(self.names) != self.nvars or len(set(self.names)) != self.nvars:
            raise ValueError("variable names must be distinct, one per variable")
        if not allow_reserved and any(nm in RESERVED_NAMES for nm in self.names):
            raise ValueError(f"variable names {RESERVED_NAMES} are reserved")
        self.weights = tuple(int(w) for w in weights) if weights else (1,) * self.nvars
        if len(self.weights) != self.nvars or min(self.weights) < 1:
            raise ValueError("weights must be positive, one per variable")
        self._w = np.array(self.weights, dtype=np.int64)

    @property
    def char(self) -> int:
        return self.field.char

    def signature(self):
        return (self.names, self.field.char, self.weights)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"Ring({self.field!r}[{','.join(self.names)}])"

    def with_order(self, order) -> "Ring":
        r = Ring(self.n, self.char, order, self.names, self.weights, allow_reserved=True)
        return r

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None, front: bool = True) -> "Ring":
        """Ring with extra variables added in front (or at the back)."""
        w = tuple(weights) if weights else (1,) * len(names)
        if front:
            nm, ws = tuple(names) + self.names, w + self.weights
        else:
            nm, ws = self.names + tuple(names), self.weights + w
        return Ring(len(nm) - 1, self.char, self.order, nm, ws, allow_reserved=True)

    # constructors
    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(int(a) for a in exps): c} if c else {})

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise RingMismatch(f"{x.ring} vs {self}")
            return x
        if isinstance(x, str):
            return parse_poly(x, self)
        return self.const(x)

    def wdeg(self, e: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(e, self.weights))

    def key(self, e, order=None) -> tuple:
        return (order or self.order).key(e, self.weights)

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """All exponent vectors of weighted degree d, in descending grevlex order."""
        out: list[tuple] = []

        def rec(i, rem, acc):
            if i == self.nvars - 1:
                if rem % self.weights[i] == 0:
                    out.append(tuple(acc + [rem // self.weights[i]]))
                return
            for a in range(rem // self.weights[i], -1, -1):
                rec(i + 1, rem - a * self.weights[i], acc + [a])

        if d >= 0:
            rec(0, d, [])
        out.sort(key=lambda e: self.key(e), reverse=True)
        return out

    def random_form(self, d: int, rng: random.Random) -> "Poly":
        F = self.field
        return Poly(self, {e: c for e in self.monomials_of_degree(d) if (c := F.random(rng))})

    def irrelevant(self) -> list["Poly"]:
        return self.gens()


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash", "_degs")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None
        self._degs = None

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def degrees(self) -> set[int]:
        if self._degs is None:
            if set(self.ring.weights) == {1}:
                self._degs = {sum(e) for e in self.terms}
            else:
                self._degs = {self.ring.wdeg(e) for e in self.terms}
        return self._degs

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous polynomial (max degree otherwise, -1 for zero)."""
        ds = self.degrees()
        return max(ds) if ds else -1

    def sorted_terms(self, order=None) -> list[tuple[tuple, object]]:
        k = (order and MonomialOrder.parse(order)) or self.ring.order
        w = self.ring.weights
        return sorted(self.terms.items(), key=lambda t: k.key(t[0], w), reverse=True)

    def lead(self, order=None) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        k = (order and MonomialOrder.parse(order)) or self.ring.order
        w = self.ring.weights
        e = max(self.terms, key=lambda m: k.key(m, w))
        return e, self.terms[e]

    def monic(self, order=None) -> "Poly":
        if not self.terms:
            return self
        _, c = self.lead(order)
        return self.scale(self.ring.field.inv(c))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, F.zero), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        F = self.ring.field
        p = F.char
        out: dict = {}
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        _check_exponents(out)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, m: Sequence[int], c=None) -> "Poly":
        F = self.ring.field
        terms = {tuple(a + b for a, b in zip(e, m)): v for e, v in self.terms.items()}
        if c is not None:
            c = F(c)
            terms = {e: F.mul(v, c) for e, v in terms.items()} if c else {}
        _check_exponents(terms)
        return Poly(self.ring, terms)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, i: int) -> "Poly":
        return partial_derivative(self, i)

    def subs_linear(self, images: Sequence["Poly"], target: Ring | None = None) -> "Poly":
        """Substitute ``x_i -> images[i]`` (images all live in one ring)."""
        tr = target or (images[0].ring if images else self.ring)
        moved = [i for i, g in enumerate(images)
                 if g.terms != {tuple(int(j == i) for j in range(tr.nvars)): tr.field.one}]
        if len(moved) == 1 and tr.nvars == self.ring.nvars:
            return substitute_var(Poly(tr, self.terms), moved[0], images[moved[0]])
        result = tr.zero()
        powers: list[dict[int, Poly]] = [dict() for _ in images]

        def pw(i, a):
            cache = powers[i]
            if a not in cache:
                cache[a] = images[i] ** a
            return cache[a]

        acc: dict = {}
        F = tr.field
        for e, c in self.terms.items():
            term = tr.const(c)
            for i, a in enumerate(e):
                if a:
                    term = term * pw(i, a)
            for m, v in term.terms.items():
                acc[m] = F.add(acc.get(m, F.zero), v)
        result = Poly(tr, {m: v for m, v in acc.items() if v})
        return result

    def to_ring(self, target: Ring, index_map: Sequence[int]) -> "Poly":
        """Re-embed into ``target``; variable i goes to target variable index_map[i]."""
        out = {}
        F = target.field
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, a in enumerate(e):
                if a:
                    ne[index_map[i]] = a
            out[tuple(ne)] = F(c) if F.char else c
        return Poly(target, {e: c for e, c in out.items() if c})

    def evaluate(self, point: Sequence) -> object:
        F = self.ring.field
        acc = F.zero
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v = F.mul(v, F(x) ** a if not F.char else pow(int(F(x)), a, F.char))
            acc = F.add(acc, v)
        return acc

    def divide_exact(self, other: "Poly") -> "Poly":
        """Exact division (raises if ``other`` does not divide ``self``)."""
        q, r = divmod_univariate_free(self, other)
        if r:
            raise ValueError("division is not exact")
        return q

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def _check_exponents(terms):
    for e in terms:
        for a in e:
            if a >= MAX_EXPONENT:
                raise OverflowError(f"exponent {a} exceeds {MAX_EXPONENT}")
        break


def divmod_univariate_free(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Multivariate division of f by the single polynomial g (lead term of g's order)."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    R = f.ring
    F = R.field
    ge, gc = g.lead()
    ginv = F.inv(gc)
    q: dict = {}
    rem: dict = {}
    p = dict(f.terms)
    w = R.weights
    order = R.order
    gterms = list(g.terms.items())

    def neg_key(m):
        return tuple(-k for k in order.key(m, w))

    heap = [(neg_key(m), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        if all(a >= b for a, b in zip(e, ge)):
            m = tuple(a - b for a, b in zip(e, ge))
            qc = F.mul(c, ginv)
            q[m] = F.add(q.get(m, F.zero), qc)
            for ee, cc in gterms:
                if ee == ge:
                    continue
                t = tuple(a + b for a, b in zip(ee, m))
                old = p.get(t)
                v = F.sub(old if old is not None else F.zero, F.mul(qc, cc))
                if v:
                    if old is None:
                        heapq.heappush(heap, (neg_key(t), t))
                    p[t] = v
                elif old is not None:
                    del p[t]
        else:
            rem[e] = c
    return Poly(R, {m: c for m, c in q.items() if c}), Poly(R, rem)


def _substitute_linear_dense(f: Poly, i: int, image: Poly) -> Poly:
    """x_i -> linear form, by Horner on a dense exponent grid mod p.

    Every Horner step is homogeneous, so one variable (``h``, not x_i) is
    left implicit and the grid has one axis less.
    """
    R = f.ring
    p = R.char
    N = R.nvars
    D = f.degree
    h = 0 if i != 0 else 1
    axes = [j for j in range(N) if j != h]
    ax = {j: a for a, j in enumerate(axes)}
    shape = (D + 1,) * (N - 1)
    E = np.array(list(f.terms), dtype=np.int64)
    C = np.array(list(f.terms.values()), dtype=np.int64)
    lin = [(int(np.argmax(e)), int(c)) for e, c in image.terms.items()]
    out = np.zeros(shape, dtype=np.int64)
    for k in range(int(E[:, i].max()), -1, -1):
        if out.any():
            nxt = np.zeros(shape, dtype=np.int64)
            for j, c in lin:
                if j == h:
                    nxt += c * out
                    continue
                src = [slice(None)] * (N - 1)
                dst = [slice(None)] * (N - 1)
                src[ax[j]] = slice(0, D)
                dst[ax[j]] = slice(1, D + 1)
                nxt[tuple(dst)] += c * out[tuple(src)]
            out = nxt % p
        sel = E[:, i] == k
        if sel.any():
            idx = E[sel][:, axes]
            idx[:, ax[i]] = 0
            out[tuple(idx.T)] = (out[tuple(idx.T)] + C[sel]) % p
    nz = np.nonzero(out)
    vals = out[nz].tolist()
    cols = np.zeros((len(vals), N), dtype=np.int64)
    for a, j in enumerate(axes):
        cols[:, j] = nz[a]
    cols[:, h] = D - cols.sum(axis=1)
    return Poly(R, {tuple(e): v for e, v in zip(cols.tolist(), vals)})


def substitute_var(f: Poly, i: int, image: Poly) -> Poly:
    """f with x_i replaced by ``image`` (Horner scheme in x_i)."""
    R = f.ring
    if (R.char and f and image and image.degree == 1 and image.is_homogeneous()
            and f.is_homogeneous() and set(R.weights) == {1} and f.degree <= 40):
        return _substitute_linear_dense(f, i, image)
    by_power: dict[int, dict] = {}
    for e, c in f.terms.items():
        by_power.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
    if not by_power:
        return f
    out = R.zero()
    for k in range(max(by_power), -1, -1):
        out = out * image
        if k in by_power:
            out = out + Poly(R, by_power[k])
    return out


def partial_derivative(f: Poly, i: int) -> Poly:
    R = f.ring
    if not 0 <= i < R.nvars:
        raise IndexError(f"variable index {i} out of range")
    F = R.field
    out = {}
    for e, c in f.terms.items():
        a = e[i]
        if not a:
            continue
        if F.char and a % F.char == 0:
            raise CharacteristicCollision(
                f"exponent {a} of {R.names[i]} vanishes mod {F.char}")
        ne = e[:i] + (a - 1,) + e[i + 1:]
        out[ne] = F.mul(c, F(a))
    return Poly(R, out)


def euler_check(f: Poly) -> bool:
    """``deg(f) * f == sum_i w_i x_i df/dx_i`` for homogeneous f."""
    R = f.ring
    if not f.is_homogeneous():
        raise ValueError("Euler's formula needs a homogeneous polynomial")
    if not f:
        return True
    d = f.degree
    if R.char and d % R.char == 0:
        raise CharacteristicCollision(f"degree {d} vanishes mod {R.char}")
    lhs = f.scale(d)
    rhs = R.zero()
    for i, x in enumerate(R.gens()):
        rhs = rhs + (x * partial_derivative(f, i)).scale(R.weights[i])
    return lhs == rhs


def product(polys: Iterable[Poly], ring: Ring | None = None) -> Poly:
    polys = list(polys)
    if not polys:
        if ring is None:
            raise ValueError("empty product needs a ring")
        return ring.one()
    return reduce(lambda a, b: a * b, polys)


def linear_form(ring: Ring, coeffs: Sequence) -> Poly:
    F = ring.field
    return Poly(ring, {tuple(int(i == j) for j in range(ring.nvars)): F(c)
                       for i, c in enumerate(coeffs) if F(c)})


# ---------------------------------------------------------------------------
# text syntax:  3*x0^2*x1 - x2*x3^2 + 5, rationals as a/b


class ParseError(ValueError):
    def __init__(self, msg, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.column = line, col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", text,
                             pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the polynomial text syntax; raises :class:`ParseError` with position."""
    toks = _tokenize(text)
    idx = {nm: i for i, nm in enumerate(ring.names)}
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()
            rhs = factor()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise ParseError("division only by nonzero constants", text, op[2])
                acc = acc.scale(ring.field.inv(rhs.constant_coeff()))
        return acc

    def factor():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            t = take()
            if t[0] != "num":
                raise ParseError("expected integer exponent", text, t[2])
            return base ** t[1]
        return base

    def atom():
        t = take()
        if t[0] == "num":
            return ring.const(t[1])
        if t[0] == "name":
            if t[1] not in idx:
                raise ParseError(f"unknown variable {t[1]!r}", text, t[2])
            return ring.var(idx[t[1]])
        if t[0] == "op" and t[1] == "(":
            v = expr()
            c = take()
            if c[1] != ")":
                raise ParseError("expected ')'", text, c[2])
            return v
        if t[0] == "op" and t[1] == "-":
            return -factor()
        raise ParseError("unexpected token" if t[0] != "end" else "unexpected end of input", text, t[2])

    result = expr()
    t = peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", text, t[2])
    return result


def format_poly(f: Poly) -> str:
    R = f.ring
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            (R.names[i] if a == 1 else f"{R.names[i]}^{a}") for i, a in enumerate(e) if a)
        cs = R.field.to_str(c)
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for s, b in pieces[1:]:
        out += f" {s} {b}"
    return out
