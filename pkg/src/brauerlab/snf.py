"""Exact integer linear algebra: Smith normal form, kernels, solving.

Matrices are plain lists of row lists holding Python ints, so every
operation is arbitrary precision. Pivoting always grabs a smallest
nonzero entry by absolute value, which is the standard way to keep
intermediate entries from exploding during elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(a) -> list[list[int]]:
    return [row[:] for row in a]


def transpose(a) -> list[list[int]]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mult(a, b) -> list[list[int]]:
    # Skips zero entries of `a`, which is what makes the big sparse
    # composites (inclusion followed by projection) cheap.
    if a and b:
        assert len(a[0]) == len(b), "shape mismatch"
    n = len(b[0]) if b else 0
    out = zeros(len(a), n)
    for i, arow in enumerate(a):
        orow = out[i]
        for k, v in enumerate(arow):
            if v:
                brow = b[k]
                for j, w in enumerate(brow):
                    if w:
                        orow[j] += v * w
    return out


def mat_vec(a, v: list[int]) -> list[int]:
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s)
    return out


def is_zero_matrix(a) -> bool:
    return all(not v for row in a for v in row)


def det(a) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    assert all(len(row) == n for row in a), "square matrix required"
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """U * A * V = D with U, V unimodular and D in Smith normal form."""

    U: Optional[list[list[int]]]
    D: list[list[int]]
    V: Optional[list[list[int]]]

    @property
    def divisors(self) -> list[int]:
        out = []
        ncols = len(self.D[0]) if self.D else 0
        for t in range(min(len(self.D), ncols)):
            d = self.D[t][t]
            if d:
                out.append(d)
        return out

    @property
    def rank(self) -> int:
        return len(self.divisors)


class _Worker:
    """Row/column elimination state shared by the SNF passes."""

    def __init__(self, a, want_u, want_v):
        self.A = mat_copy(a)
        self.m = len(a)
        self.n = len(a[0]) if self.m else 0
        self.U = identity(self.m) if want_u else None
        self.V = identity(self.n) if want_v else None

    def find_pivot(self, t):
        # Smallest |entry| in the trailing submatrix; bail at the first 1.
        best = None
        where = None
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                v = row[j]
                if v:
                    av = -v if v < 0 else v
                    if best is None or av < best:
                        best, where = av, (i, j)
                        if av == 1:
                            return where
        return where

    def swap_into(self, t, where):
        i0, j0 = where
        A, U, V = self.A, self.U, self.V
        if i0 != t:
            A[t], A[i0] = A[i0], A[t]
            if U is not None:
                U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            if V is not None:
                for row in V:
                    row[t], row[j0] = row[j0], row[t]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]

    def reduce_slot(self, t, where):
        """Clear row t and column t using the pivot at `where`.

        Nonzero remainders strictly shrink the pivot, so looping back to a
        fresh (smaller) pivot terminates.
        """
        A, U, V = self.A, self.U, self.V
        while True:
            self.swap_into(t, where)
            d = A[t][t]
            dirty = False
            for i in range(t + 1, self.m):
                v = A[i][t]
                if v:
                    q = v // d
                    if q:
                        rt = A[t]
                        A[i] = [x - q * y for x, y in zip(A[i], rt)]
                        if U is not None:
                            ut = U[t]
                            U[i] = [x - q * y for x, y in zip(U[i], ut)]
                    if A[i][t]:
                        dirty = True
            rt = A[t]
            for j in range(t + 1, self.n):
                v = rt[j]
                if v:
                    q = v // d
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                        if V is not None:
                            for row in V:
                                row[j] -= q * row[t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                return
            where = self.find_pivot(t)

    def offender(self, t):
        # First trailing entry not divisible by the pivot, or None.
        d = self.A[t][t]
        for i in range(t + 1, self.m):
            row = self.A[i]
            for j in range(t + 1, self.n):
                if row[j] % d:
                    return i
        return None


def smith_normal_form(a, *, want_u: bool = True, want_v: bool = True) -> SNFResult:
    w = _Worker(a, want_u, want_v)
    for t in range(min(w.m, w.n)):
        where = w.find_pivot(t)
        if where is None:
            break
        w.reduce_slot(t, where)
        # Divisibility pass: d_t must divide every later entry. A unit
        # pivot divides everything, which is the overwhelmingly common
        # case, so the quadratic scan below rarely runs.
        while w.A[t][t] not in (1, -1):
            i = w.offender(t)
            if i is None:
                break
            w.A[t] = [x + y for x, y in zip(w.A[t], w.A[i])]
            if w.U is not None:
                w.U[t] = [x + y for x, y in zip(w.U[t], w.U[i])]
            w.reduce_slot(t, (t, t))
    return SNFResult(U=w.U, D=w.A, V=w.V)


def elementary_divisors(a) -> list[int]:
    return smith_normal_form(a, want_u=False, want_v=False).divisors


def int_rank(a) -> int:
    return len(elementary_divisors(a))


def kernel_basis(a, cols: Optional[int] = None) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0}, as a list of vectors.

    The kernel of an integer matrix is automatically saturated, so this
    is also a basis of the rational kernel intersected with Z^n.  A matrix
    with no rows carries no column count, so `cols` must be given to get
    the full standard basis back.
    """
    m = len(a)
    n = len(a[0]) if m else (cols or 0)
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    res = smith_normal_form(a, want_u=False, want_v=True)
    r = res.rank
    return [[res.V[i][j] for i in range(n)] for j in range(r, n)]


class IntSolver:
    """Reusable exact solver for A x = b over the integers.

    Factors A once (SNF with both transforms); each solve is then two
    matrix-vector products plus divisibility checks.
    """

    def __init__(self, a):
        self.m = len(a)
        self.n = len(a[0]) if self.m else 0
        self._res = smith_normal_form(a)
        self._rank = self._res.rank

    @property
    def rank(self) -> int:
        return self._rank

    def solve(self, b: list[int]) -> Optional[list[int]]:
        assert len(b) == self.m, "length mismatch"
        c = mat_vec(self._res.U, b)
        y = [0] * self.n
        for t in range(self.m):
            d = self._res.D[t][t] if t < min(self.m, self.n) else 0
            if d:
                if c[t] % d:
                    return None
                y[t] = c[t] // d
            elif c[t]:
                return None
        return mat_vec(self._res.V, y)


def solve_int(a, b: list[int]) -> Optional[list[int]]:
    return IntSolver(a).solve(b)
