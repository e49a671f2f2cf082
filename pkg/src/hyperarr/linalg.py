"""Dense exact linear algebra over GF(p) and QQ.

GF(p) matrices are float64 arrays holding integers in ``[0, p)``.  Products go
through BLAS in chunks of the inner dimension small enough that every partial
sum stays below 2**53, so results are exact.  QQ matrices are object arrays of
Fractions and use the same algorithms with plain Python arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_EXACT = 2 ** 53
_BASE = 48


class ModP:
    def __init__(self, p: int):
        self.p = p
        self.dtype = np.float64
        self.chunk = max(1, (_EXACT - p) // ((p - 1) ** 2 + 1))
        if self.chunk < 1 or p > 2 ** 26:
            raise ValueError(f"prime {p} too large for the float64 kernel")

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.float64)

    def asarray(self, values):
        return np.asarray(values, dtype=np.float64) % self.p

    def matmul(self, A, B):
        p = self.p
        n = A.shape[1]
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.float64)
        if n == 0 or out.size == 0:
            return out
        for s in range(0, n, self.chunk):
            out += A[:, s:s + self.chunk] @ B[s:s + self.chunk]
            np.fmod(out, p, out=out)
        return out

    def sub_mod(self, A, B):
        out = A - B
        out %= self.p
        return out

    def inv(self, a):
        return float(pow(int(a), -1, self.p))

    def scal(self, row, c):
        out = row * c
        np.fmod(out, self.p, out=out)
        return out

    def to_ints(self, a):
        return [int(v) for v in a]

    def solve_upper_unit(self, A, C):
        """X with X @ A == C for unit upper triangular A."""
        n = A.shape[0]
        if n == 0 or C.shape[0] == 0:
            return np.zeros((C.shape[0], n), dtype=np.float64)
        if n <= _BASE:
            X = C.copy()
            p = self.p
            for k in range(n - 1):
                col = X[:, k:k + 1]
                row = A[k:k + 1, k + 1:]
                if col.any():
                    X[:, k + 1:] -= col * row
                    X[:, k + 1:] %= p
            return X
        h = n // 2
        X1 = self.solve_upper_unit(A[:h, :h], C[:, :h])
        rhs = self.sub_mod(C[:, h:], self.matmul(X1, A[:h, h:]))
        X2 = self.solve_upper_unit(A[h:, h:], rhs)
        return np.hstack([X1, X2])

    def rref(self, M):
        """Reduced row echelon form; returns (rows, pivot columns)."""
        M = np.array(M, dtype=np.float64, copy=True)
        p = self.p
        rows, cols = M.shape
        pivots = []
        r = 0
        c = 0
        while r < rows and c < cols:
            nz = np.flatnonzero(M[r:, c])
            if nz.size == 0:
                # skip ahead to the next column with a nonzero below row r
                sub = M[r:, c:]
                anycol = np.flatnonzero(sub.any(axis=0))
                if anycol.size == 0:
                    break
                c += int(anycol[0])
                continue
            i = r + int(nz[0])
            if i != r:
                M[[r, i]] = M[[i, r]]
            inv = self.inv(M[r, c])
            if inv != 1.0:
                M[r, c:] = self.scal(M[r, c:], inv)
            col = M[:, c].copy()
            col[r] = 0.0
            nzr = np.flatnonzero(col)
            if nzr.size:
                upd = M[nzr, c:] - np.outer(col[nzr], M[r, c:])
                upd %= p
                M[nzr, c:] = upd
            pivots.append(c)
            r += 1
            c += 1
        return M[:r], pivots

    def rank(self, M):
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])


class Rational:
    def __init__(self):
        self.p = 0
        self.dtype = object

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def asarray(self, values):
        arr = np.array(values, dtype=object)
        return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr

    def matmul(self, A, B):
        if A.shape[1] == 0:
            return self.zeros((A.shape[0], B.shape[1]))
        return A.dot(B)

    def sub_mod(self, A, B):
        return A - B

    def inv(self, a):
        return 1 / Fraction(a)

    def scal(self, row, c):
        return row * c

    def to_ints(self, a):
        return list(a)

    def solve_upper_unit(self, A, C):
        n = A.shape[0]
        X = C.copy()
        for k in range(n - 1):
            col = X[:, k:k + 1]
            if any(v != 0 for v in col[:, 0]):
                X[:, k + 1:] = X[:, k + 1:] - col * A[k:k + 1, k + 1:]
        return X

    def rref(self, M):
        M = np.array(M, dtype=object, copy=True)
        rows, cols = M.shape if M.ndim == 2 else (0, 0)
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = [i for i in range(r, rows) if M[i, c] != 0]
            if not nz:
                continue
            i = nz[0]
            if i != r:
                M[[r, i]] = M[[i, r]]
            M[r, c:] = M[r, c:] * (1 / Fraction(M[r, c]))
            for k in range(rows):
                if k != r and M[k, c] != 0:
                    M[k, c:] = M[k, c:] - M[k, c] * M[r, c:]
            pivots.append(c)
            r += 1
        return M[:r], pivots

    def rank(self, M):
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])


_CACHE: dict[int, object] = {}


def backend(p: int):
    """Linear algebra kernel for characteristic ``p`` (0 means QQ)."""
    if p not in _CACHE:
        _CACHE[p] = Rational() if p == 0 else ModP(p)
    return _CACHE[p]
