"""Exact integer and rational linear algebra.

Everything here runs on Python ints and fractions.Fraction; no floats ever.
Matrices are lists of row tuples/lists, vectors are tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def dot(u: Sequence, v: Sequence):
    """Exact inner product; raises on length mismatch."""
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def is_zero_vector(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def content(u: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    g = 0
    for a in u:
        g = math.gcd(g, abs(a))
    return g


def primitive_part(u: Sequence[int]) -> Vector:
    """Divide an integer vector by its content.  Zero stays zero."""
    g = content(u)
    if g == 0:
        return tuple(u)
    return tuple(a // g for a in u)


def is_primitive(u: Sequence[int]) -> bool:
    return content(u) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout_solve(v: Sequence[int], c: int) -> Optional[Vector]:
    """Integer w with <v, w> = c, or None when gcd(v) does not divide c."""
    n = len(v)
    g = 0
    coeffs = [0] * n
    # fold xgcd across the coordinates, keeping Bezout coefficients
    for i, a in enumerate(v):
        if a == 0:
            continue
        if g == 0:
            g = abs(a)
            coeffs = [0] * n
            coeffs[i] = 1 if a > 0 else -1
        else:
            g2, s, t = xgcd(g, a)
            coeffs = [s * x for x in coeffs]
            coeffs[i] += t
            g = g2
    if g == 0 or c % g != 0:
        return None
    m = c // g
    return tuple(m * x for x in coeffs)


# ---------------------------------------------------------------------------
# basic matrix helpers
# ---------------------------------------------------------------------------

def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise ValueError("incompatible shapes")
    cols = len(B[0]) if B else 0
    return [
        [sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)]
        for row in A
    ]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in A)


def transpose(A: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def rank(A: Sequence[Sequence]) -> int:
    """Rank over Q by fraction elimination."""
    rows = [[Fraction(x) for x in row] for row in A if not is_zero_vector(row)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


class EchelonBasis:
    """Incremental reduced row echelon basis over Q.

    Used wherever we grow a linear span one vector at a time (Lie closures,
    independence filters).
    """

    def __init__(self, length: int):
        self.length = length
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        if len(v) != self.length:
            raise ValueError("length mismatch")
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def add(self, vec: Sequence) -> bool:
        """Insert vec if independent of the current span; report insertion."""
        v = self.reduce(vec)
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        pv = v[pivot]
        v = [x / pv for x in v]
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            if row[pivot] != 0:
                f = row[pivot]
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(pivot)
        return True

    @property
    def dimension(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """left @ A @ right == diag(diagonal), all matrices unimodular."""

    left: Matrix
    right: Matrix
    diagonal: tuple[int, ...]
    left_inv: Matrix
    right_inv: Matrix

    def nonzero_count(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Exact Smith normal form with transformation matrices.

    The diagonal is nonnegative with each entry dividing the next.  Inverses
    of the transforms are tracked alongside, so callers can read off lattice
    bases of the row space, column space, kernel and cokernel.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[int(x) for x in row] for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("ragged matrix")
    U = identity_matrix(m)
    U_inv = identity_matrix(m)
    V = identity_matrix(n)
    V_inv = identity_matrix(n)

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        for r in U_inv:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, q):
        # row_i += q * row_j
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for r in U_inv:
            r[j] -= q * r[i]

    def row_negate(i):
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]
        for r in U_inv:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def col_add(i, j, q):
        # col_i += q * col_j
        for r in M:
            r[i] += q * r[j]
        for r in V:
            r[i] += q * r[j]
        V_inv[j] = [a - q * b for a, b in zip(V_inv[j], V_inv[i])]

    def reduce_at(t: int):
        """Clear row t and column t beyond the pivot, Euclid style."""
        while True:
            # bring the minimal nonzero entry of the block to (t, t)
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if M[i][j] != 0 and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return False
            if best != (t, t):
                if best[0] != t:
                    row_swap(t, best[0])
                if best[1] != t:
                    col_swap(t, best[1])
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // M[t][t]
                    row_add(i, t, -q)
                    if M[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // M[t][t]
                    col_add(j, t, -q)
                    if M[t][j] != 0:
                        dirty = True
            if not dirty:
                return True

    size = min(m, n)
    t = 0
    while t < size:
        if not reduce_at(t):
            break
        t += 1

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(size - 1):
            a, b = M[i][i], M[i + 1][i + 1]
            if a != 0 and b % a != 0:
                col_add(i, i + 1, 1)
                reduce_at(i)
                changed = True

    for i in range(size):
        if M[i][i] < 0:
            row_negate(i)

    diag = tuple(M[i][i] for i in range(size))
    return SmithDecomposition(left=U, right=V, diagonal=diag,
                              left_inv=U_inv, right_inv=V_inv)


# ---------------------------------------------------------------------------
# lattice-level consequences of SNF
# ---------------------------------------------------------------------------

def kernel_lattice_basis(A: Sequence[Sequence[int]],
                         ncols: Optional[int] = None) -> list[Vector]:
    """Basis of the saturated integer kernel {x : A x = 0}.

    `ncols` disambiguates the ambient dimension when A has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols if ncols is not None else 0)
    if m == 0:
        return [tuple(row) for row in identity_matrix(n)]
    snf = smith_normal_form(A)
    nonzero = snf.nonzero_count()
    cols = transpose(snf.right)
    return [tuple(cols[j]) for j in range(nonzero, n)]


def row_lattice_basis(A: Sequence[Sequence[int]]) -> list[Vector]:
    """Basis of the lattice generated by the rows of A."""
    if not A:
        return []
    snf = smith_normal_form(A)
    basis = []
    for i, d in enumerate(snf.diagonal):
        if d != 0:
            basis.append(tuple(d * x for x in snf.right_inv[i]))
    return basis


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Vector]:
    """One integer solution of A x = b, or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise ValueError("shape mismatch")
    if m == 0:
        return tuple([0] * n)
    snf = smith_normal_form(A)
    c = mat_vec(snf.left, b)
    y = [0] * n
    for i in range(m):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return mat_vec(snf.right, y)


def nullspace(A: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel {x : A x = 0} via reduced elimination."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Fraction(x) for x in row] for row in A]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * n
        vec[j] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -rows[i][j]
        basis.append(tuple(vec))
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """One rational solution of A x = b, or None when inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = rows[i][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# exact feasibility LP (phase-1 simplex, Bland's rule)
# ---------------------------------------------------------------------------

def nonnegative_solution_exists(A: Sequence[Sequence], b: Sequence) -> bool:
    """Decide whether A x = b admits x >= 0, exactly.

    Phase-1 simplex over Fractions with Bland's pivoting rule, so the
    procedure always terminates.  Sizes here are desk scale (tens of
    variables), hence no effort is spent on performance.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]]
        v = Fraction(b[i])
        if v < 0:
            r = [-x for x in r]
            v = -v
        rows.append(r)
        rhs.append(v)
    if n == 0:
        return all(v == 0 for v in rhs)

    # tableau columns: n structural + m artificial
    total = n + m
    T = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials; reduced costs under the
    # artificial basis are column sums of the structural part
    z = [sum(T[i][j] for i in range(m)) for j in range(total)] + [sum(rhs)]
    for j in range(n, total):
        z[j] = Fraction(0)

    while True:
        entering = next((j for j in range(total) if z[j] > 0), None)
        if entering is None:
            break
        pivot_row = None
        best = None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][total] / T[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pivot_row]):
                    best = ratio
                    pivot_row = i
        if pivot_row is None:
            # unbounded phase-1 objective cannot happen; defensive exit
            return False
        pv = T[pivot_row][entering]
        T[pivot_row] = [x / pv for x in T[pivot_row]]
        for i in range(m):
            if i != pivot_row and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [x - f * y for x, y in zip(T[i], T[pivot_row])]
        if z[entering] != 0:
            f = z[entering]
            z = [x - f * y for x, y in zip(z, T[pivot_row])]
        basis[pivot_row] = entering

    return z[total] == 0


def in_nonnegative_span(generators: Iterable[Sequence], target: Sequence) -> bool:
    """Is target a nonnegative rational combination of the generators?"""
    gens = [tuple(g) for g in generators]
    if not gens:
        return is_zero_vector(target)
    cols = transpose(gens)
    return nonnegative_solution_exists(cols, target)


def in_convex_hull(points: Iterable[Sequence], target: Sequence) -> bool:
    """Is target a convex combination of the points?  Exact."""
    pts = [tuple(p) + (1,) for p in points]
    return in_nonnegative_span(pts, tuple(target) + (1,))
