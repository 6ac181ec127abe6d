"""Independent reference computations used by the tests.

Nothing here imports the package's algorithms; each routine recomputes a
quantity by a different route (recursion, cofactors, enumeration).
"""
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def tau_recursive(a, b, values):
    """tau(A, B) by adding generators one at a time (highest index last).

    With z the newest generator, A' = A + {z}:
      tau(A, B) = tau'(A, B)            tau(A', B) = (-1)^|B| tau'(A, B)
      tau(A, B') = tau'(A, B)           tau(A', B') = r(z) (-1)^|B| tau'(A, B)
    """
    n = len(values)
    if n == 0:
        return 1
    z = 1 << (n - 1)
    za, zb = bool(a & z), bool(b & z)
    a0, b0 = a & ~z, b & ~z
    rest = tau_recursive(a0, b0, values[:-1])
    sign = -1 if bin(b0).count("1") % 2 else 1
    if za and zb:
        return values[-1] * sign * rest
    if za:
        return sign * rest
    return rest


def tau_recursive_table(values):
    """Full tau table by the same recursion, built block-wise with numpy."""
    T = np.ones((1, 1), dtype=np.int64)
    for k, r in enumerate(values):
        size = 1 << k
        pc = np.array([bin(i).count("1") for i in range(size)])
        sgn = np.where(pc % 2 == 1, -1, 1)[None, :]  # depends on B (columns)
        top = np.hstack([T, T])
        bottom = np.hstack([T * sgn, r * T * sgn])
        T = np.vstack([top, bottom])
    return T


def perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def det_leibniz(M):
    n = len(M)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def det_cofactor(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * Fraction(M[0][j]) * det_cofactor(minor)
    return total


def inverse_adjugate(M):
    n = len(M)
    d = det_cofactor(M)
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(M) if k != j]
            inv[i][j] = (-1) ** (i + j) * det_cofactor(minor) / d
    return inv


def spanning_trees_brute(vertices, edges):
    """(n-1)-edge subsets whose edges reach every vertex from the first one."""
    n = len(vertices)
    count = 0
    for subset in combinations(edges, n - 1):
        adj = {v: [] for v in vertices}
        for u, v in subset:
            adj[u].append(v)
            adj[v].append(u)
        seen = {vertices[0]}
        stack = [vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        count += len(seen) == n
    return count


def spanning_trees_matrix(vertices, edges):
    """Determinant of the reduced Laplacian matrix (sympy)."""
    import sympy
    n = len(vertices)
    idx = {v: i for i, v in enumerate(vertices)}
    L = sympy.zeros(n, n)
    for u, v in edges:
        i, j = idx[u], idx[v]
        L[i, i] += 1
        L[j, j] += 1
        L[i, j] -= 1
        L[j, i] -= 1
    return int(L[1:, 1:].det()) if n > 1 else 1


def gram_schmidt_classical(vectors):
    out = []
    for v in vectors:
        w = [Fraction(c) for c in v]
        for u in out:
            uu = sum(c * c for c in u)
            wu = sum(a * b for a, b in zip(w, u))
            w = [a - wu / uu * b for a, b in zip(w, u)]
        out.append(w)
    return out


def lagrange_rhs(x, y):
    x1, x2, x3, x4 = x
    y1, y2, y3, y4 = y
    return ((x1 * y1 - x2 * y2 - x3 * y3 - x4 * y4) ** 2
            + (x1 * y2 + x2 * y1 + x3 * y4 - x4 * y3) ** 2
            + (x1 * y3 - x2 * y4 + x3 * y1 + x4 * y2) ** 2
            + (x1 * y4 + x2 * y3 - x3 * y2 + x4 * y1) ** 2)


PAULI = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def pauli_oracle(coeffs):
    """Matrix of a multivector of R^3 (dict mask->coeff) from Pauli products."""
    M = np.zeros((2, 2), dtype=complex)
    for mask, c in coeffs.items():
        P = np.eye(2, dtype=complex)
        for i in range(3):
            if mask >> i & 1:
                P = P @ PAULI[i]
        M += complex(c) * P
    return M


def homology_oracle(faces):
    """Betti numbers and torsion from the alternating-face boundary formula, via sympy.

    ``faces`` is the full list of nonempty simplices as sorted tuples.
    """
    import sympy
    from sympy.matrices.normalforms import invariant_factors
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for d in by_dim:
        by_dim[d].sort()
    top = max(by_dim)
    ranks, tors = {}, {}
    for d in range(1, top + 1):
        rows, cols = by_dim[d - 1], by_dim[d]
        pos = {f: i for i, f in enumerate(rows)}
        M = sympy.zeros(len(rows), len(cols))
        for j, f in enumerate(cols):
            for i in range(len(f)):
                M[pos[f[:i] + f[i + 1:]], j] = (-1) ** i
        ranks[d] = M.rank()
        inv = [int(k) for k in invariant_factors(M, domain=sympy.ZZ)] if M.rank() else []
        tors[d - 1] = [abs(k) for k in inv if abs(k) > 1]
    betti = {d: len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(top + 1)}
    return betti, {d: t for d, t in tors.items() if t}


def classification_oracle(s, t):
    """(base, N, double) for G(R^{s,t}) rebuilt from the tensor rules.

    G(R^{n+2,0}) = G(R^{0,n}) x R[2] and G(R^{0,n+2}) = G(R^{n,0}) x H,
    G(R^{s+1,t+1}) = G(R^{s,t}) x R[2], with C x H = C[2] and H x H = R[4].
    """
    def times_h(d):
        base, n, dbl = d
        return {"R": ("H", n, dbl), "C": ("C", 2 * n, dbl), "H": ("R", 4 * n, dbl)}[base]

    def pure(n, neg):
        if n == 0:
            return ("R", 1, False)
        if n == 1:
            return ("C", 1, False) if neg else ("R", 1, True)
        if not neg:
            base, m, dbl = pure(n - 2, True)
            return (base, 2 * m, dbl)
        return times_h(pure(n - 2, False))

    k = min(s, t)
    base, n, dbl = pure(s - k, False) if s >= t else pure(t - k, True)
    return (base, n * 2 ** k, dbl)
