"""Small dense linear algebra over the package's scalar rings.

Exact rings get fraction-exact Gaussian elimination; floats get partial
pivoting with a relative singularity threshold. Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NotInvertible
from .rings import FLOAT, INTEGER, RATIONAL, Ring

PIVOT_TOL = 1e-12


def _field(ring: Ring) -> Ring:
    # integer matrices are eliminated over the rationals
    return RATIONAL if ring == INTEGER else ring


def _scale(rows, ring):
    return max((ring.magnitude(c) for r in rows for c in r), default=0.0)


def _pick_pivot(M, col, start, ring, tol):
    if ring.exact:
        for i in range(start, len(M)):
            if M[i][col] != 0:
                return i
        return None
    best, best_i = tol, None
    for i in range(start, len(M)):
        m = ring.magnitude(M[i][col])
        if m > best:
            best, best_i = m, i
    return best_i


def row_reduce(A, ring: Ring = RATIONAL):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    ring = _field(ring)
    M = [[ring.coerce(c) for c in row] for row in A]
    if not M:
        return M, []
    tol = PIVOT_TOL * _scale(M, ring) * max(len(M), len(M[0]))
    pivots = []
    r = 0
    for c in range(len(M[0])):
        if r == len(M):
            break
        p = _pick_pivot(M, c, r, ring, tol)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [ring.div(x, pv) for x in M[r]]
        for i in range(len(M)):
            if i != r and not ring.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, ring: Ring = RATIONAL) -> int:
    return len(row_reduce(A, ring)[1])


def solve(A, b, ring: Ring = RATIONAL):
    """Solve the square system A x = b, raising NotInvertible if singular."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = row_reduce(aug, ring)
    if piv[:n] != list(range(n)) or (piv and piv[-1] == n):
        raise NotInvertible("singular linear system")
    return [R[i][n] for i in range(n)]


def inverse(A, ring: Ring = RATIONAL):
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, piv = row_reduce(aug, ring)
    if piv[:n] != list(range(n)):
        raise NotInvertible("singular matrix")
    return [row[n:] for row in R]


def det(A, ring: Ring = RATIONAL):
    ring = _field(ring)
    M = [[ring.coerce(c) for c in row] for row in A]
    n = len(M)
    tol = PIVOT_TOL * _scale(M, ring) * max(n, 1)
    d = ring.one
    for c in range(n):
        p = _pick_pivot(M, c, c, ring, tol)
        if p is None:
            return ring.zero
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        pv = M[c][c]
        d = d * pv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = ring.div(M[i][c], pv)
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), start=0 * row[0]) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n, ring: Ring = RATIONAL):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def as_fraction_matrix(A):
    return [[Fraction(c) for c in row] for row in A]


__all__ = ["row_reduce", "rank", "solve", "inverse", "det", "matmul", "transpose",
           "identity", "as_fraction_matrix", "FLOAT", "RATIONAL"]
