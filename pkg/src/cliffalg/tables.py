"""Classification of real and complex geometric algebras as matrix algebras,
representation counts, Radon-Hurwitz numbers, the Pauli representation of
G(R^3) and the octonion product on G^0 + G^1 of R^{0,7}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .core import Algebra, Multivector, Signature
from .errors import CliffordError, DimensionError
from .rings import COMPLEX_RATIONAL, CPair

_BASE_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class MatrixAlgebra:
    """F^{N x N}, or F^{N x N} + F^{N x N} when ``double`` is set."""

    base: str
    N: int
    double: bool = False

    @property
    def real_dim(self) -> int:
        return _BASE_DIM[self.base] * self.N ** 2 * (2 if self.double else 1)

    @property
    def irrep_dim(self) -> int:
        """Real dimension of an irreducible representation."""
        return _BASE_DIM[self.base] * self.N

    def tensor_real_matrix(self, k: int) -> "MatrixAlgebra":
        return MatrixAlgebra(self.base, self.N * k, self.double)

    def __str__(self):
        one = self.base if self.N == 1 else f"{self.base}[{self.N}]"
        return f"{one}+{one}" if self.double else one

    def line(self, s, t) -> str:
        return f"{s},{t},{self.base},{self.N},{int(self.double)}"


def _parse_cell(text: str) -> MatrixAlgebra:
    parts = text.split("+")
    head = parts[0]
    if "[" in head:
        base, n = head[0], int(head[2:-1])
    else:
        base, n = head, 1
    return MatrixAlgebra(base, n, len(parts) == 2)


# rows t = 0..8, columns s = 0..8
_TABLE_ROWS = {
    0: "R      R+R        R[2]       C[2]       H[2]       H[2]+H[2]  H[4]       C[8]        R[16]",
    1: "C      R[2]       R[2]+R[2]  R[4]       C[4]       H[4]       H[4]+H[4]  H[8]        C[16]",
    2: "H      C[2]       R[4]       R[4]+R[4]  R[8]       C[8]       H[8]       H[8]+H[8]   H[16]",
    3: "H+H    H[2]       C[4]       R[8]       R[8]+R[8]  R[16]      C[16]      H[16]       H[16]+H[16]",
    4: "H[2]   H[2]+H[2]  H[4]       C[8]       R[16]      R[16]+R[16] R[32]     C[32]       H[32]",
    5: "C[4]   H[4]       H[4]+H[4]  H[8]       C[16]      R[32]      R[32]+R[32] R[64]      C[64]",
    6: "R[8]   C[8]       H[8]       H[8]+H[8]  H[16]      C[32]      R[64]      R[64]+R[64] R[128]",
    7: "R[8]+R[8] R[16]   C[16]      H[16]      H[16]+H[16] H[32]     C[64]      R[128]      R[128]+R[128]",
    8: "R[16]  R[16]+R[16] R[32]     C[32]      H[32]      H[32]+H[32] H[64]     C[128]      R[256]",
}

BASE_TABLE = {(s, t): _parse_cell(cell)
              for t, row in _TABLE_ROWS.items()
              for s, cell in enumerate(row.split())}


def check_table() -> List[str]:
    """Consistency problems of the embedded table (empty when all is well).

    Checks the dimension 2^{s+t} of every cell and the rule
    G(R^{s+1,t+1}) = G(R^{s,t}) tensor R[2].
    """
    problems = []
    for (s, t), d in BASE_TABLE.items():
        if d.real_dim != 2 ** (s + t):
            problems.append(f"({s},{t}): dimension {d.real_dim} != {2 ** (s + t)}")
        if s < 8 and t < 8 and BASE_TABLE[s + 1, t + 1] != d.tensor_real_matrix(2):
            problems.append(f"({s},{t}) -> ({s + 1},{t + 1}) breaks the R[2] rule")
    return problems


def classify_real(s: int, t: int) -> MatrixAlgebra:
    """G(R^{s,t}) as a matrix algebra, with 8-periodicity in either index."""
    if s < 0 or t < 0:
        raise ValueError("signature counts must be nonnegative")
    k = 0
    while s > 8:
        s, k = s - 8, k + 1
    while t > 8:
        t, k = t - 8, k + 1
    return BASE_TABLE[s, t].tensor_real_matrix(16 ** k)


def classify_complex(n: int) -> MatrixAlgebra:
    """G(C^n): C[2^k] for n = 2k, C[2^k] + C[2^k] for n = 2k + 1."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return MatrixAlgebra("C", 2 ** (n // 2), n % 2 == 1)


def even_subalgebra_signature(s: int, t: int) -> List[Tuple[int, int]]:
    """Signatures (s', t') with G+(R^{s,t}) = G(R^{s',t'}): (s, t-1) and/or (t, s-1)."""
    if s == 0 and t == 0:
        raise ValueError("the even subalgebra of R is not a Clifford algebra of lower dimension")
    out = []
    if t >= 1:
        out.append((s, t - 1))
    if s >= 1 and (t, s - 1) not in out:
        out.append((t, s - 1))
    return out


def representation_counts(s: int, t: int) -> Tuple[int, int]:
    """(nu, d): number and real dimension of inequivalent irreducible representations."""
    d = classify_real(s, t)
    return (2 if d.double else 1), d.irrep_dim


def radon_hurwitz(N: int) -> int:
    """n_N = 8a + 2^b - 1 where N + 1 = (2t+1) 2^{4a+b}, 0 <= b <= 3."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    m, v = N + 1, 0
    while m % 2 == 0:
        m, v = m // 2, v + 1
    a, b = divmod(v, 4)
    return 8 * a + 2 ** b - 1


# ----------------------------------------------------------------- Pauli representation

_I = CPair(0, 1)
PAULI = (
    ((CPair(0), CPair(1)), (CPair(1), CPair(0))),
    ((CPair(0), CPair(0, -1)), (CPair(0, 1), CPair(0))),
    ((CPair(1), CPair(0)), (CPair(0), CPair(-1))),
)


def _mat_mul(A, B):
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(2)), CPair(0)) for j in range(2))
                 for i in range(2))


def pauli_rep(x: Multivector):
    """rho(x) in C^{2x2} with rho(e_k) = sigma_k; entries are CPair."""
    if x.sig != Signature((1, 1, 1)):
        raise DimensionError("the Pauli representation needs the signature R(3,0,0)")
    out = [[CPair(0), CPair(0)], [CPair(0), CPair(0)]]
    for m, c in x.terms.items():
        M = ((CPair(1), CPair(0)), (CPair(0), CPair(1)))
        for k in range(3):
            if m >> k & 1:
                M = _mat_mul(M, PAULI[k])
        for i in range(2):
            for j in range(2):
                out[i][j] = out[i][j] + M[i][j] * c
    return out


def pauli_matrix_product(A, B):
    return [list(r) for r in _mat_mul(A, B)]


# ----------------------------------------------------------------- octonions

# index triples of the octonionic structure 3-vector
OCTONION_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def octonion_algebra(ring=None) -> Algebra:
    if ring is None:
        return Algebra.from_counts(0, 7)
    return Algebra.from_counts(0, 7, ring=ring)


def octonion_structure(alg: Algebra) -> Multivector:
    """C = e1e2e4 + e2e3e5 + e3e4e6 + e4e5e7 + e5e6e1 + e6e7e2 + e7e1e3."""
    C = alg.zero()
    for i, j, k in OCTONION_TRIPLES:
        C = C + alg.e(i) * alg.e(j) * alg.e(k)
    return C


def octonion_product(a: Multivector, b: Multivector) -> Multivector:
    """a <> b = <a b (1 - C)>_{0,1} on G^0 + G^1 of R^{0,7}."""
    alg = a.alg
    if alg.sig != Signature((-1,) * 7):
        raise DimensionError("octonions live in G(R^{0,7})")
    for x in (a, b):
        if any(g > 1 for g in x.grades()):
            raise CliffordError("octonion factors must lie in grades 0 and 1")
    return (a * b * (1 - octonion_structure(alg))).grade(0, 1)


def octonion_norm2(a: Multivector):
    """Sum of squared coefficients."""
    return sum(c * c for c in a.terms.values())


__all__ = ["MatrixAlgebra", "BASE_TABLE", "check_table", "classify_real", "classify_complex",
           "even_subalgebra_signature", "representation_counts", "radon_hurwitz", "PAULI",
           "pauli_rep", "pauli_matrix_product", "OCTONION_TRIPLES", "octonion_algebra",
           "octonion_structure", "octonion_product", "octonion_norm2"]
