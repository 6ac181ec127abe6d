"""Blades: predicates, factorization, reciprocal bases, projections, and
projective geometry in the plane (cross ratio, line intersection, Pascal,
polars with respect to a quadric).

Which subspace a blade spans depends only on the exterior structure, so
factorization works on a euclidean reinterpretation of the coefficients.
This keeps it valid for null blades in indefinite or degenerate signatures.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import _linalg
from .core import Algebra, Multivector, Signature
from .errors import DegenerateSignature, NotABlade, NotInvertible
from .morphisms import Outermorphism, is_self_adjoint
from .products import dual, left_inner, meet, outer, scalar_product, wedge
from .rings import FLOAT, RATIONAL

BLADE_RTOL = 1e-9


@dataclass(frozen=True)
class Blade:
    """An outer product of vectors, kept together with its factors."""

    factors: Tuple[Multivector, ...]

    def __post_init__(self):
        if any(f.grades() not in ((), (1,)) for f in self.factors):
            raise ValueError("blade factors must be vectors")

    @property
    def value(self) -> Multivector:
        if not self.factors:
            raise ValueError("empty factor list")
        return wedge(list(self.factors))

    @property
    def grade(self) -> int:
        return len(self.factors)

    def square(self):
        v = self.value
        return (v * v).scalar


@dataclass(frozen=True)
class ReciprocalBasis:
    basis: Tuple[Multivector, ...]
    reciprocal: Tuple[Multivector, ...]


def _euclid(x: Multivector) -> Multivector:
    alg = Algebra(Signature((1,) * x.alg.n), x.ring)
    return Multivector(alg, x.terms)


def _back(v: Multivector, alg: Algebra) -> Multivector:
    return Multivector(alg, v.terms)


def _negligible(x: Multivector, scale: float) -> bool:
    if x.ring.exact:
        return x.is_zero()
    return x.max_abs() <= BLADE_RTOL * scale


# ----------------------------------------------------------------- Gram and independence

def gram_scalar(u: Sequence[Multivector], v: Sequence[Multivector]):
    """(u1 ^ ... ^ uk) * (vk ^ ... ^ v1), which equals det[ui * vj]."""
    if len(u) != len(v):
        raise ValueError("gram_scalar needs lists of equal length")
    if not u:
        return 1
    return scalar_product(wedge(list(u)), wedge(list(reversed(v))))


def is_independent(vectors: Sequence[Multivector]) -> bool:
    """True iff the outer product of the vectors is nonzero."""
    if not vectors:
        return True
    alg = vectors[0].alg
    if alg.ring.exact:
        return not wedge(list(vectors)).is_zero()
    rows = [v.vector_coeffs() for v in vectors]
    return _linalg.rank(rows, FLOAT) == len(vectors)


# ----------------------------------------------------------------- blade tests and factoring

def is_blade(x: Multivector) -> bool:
    if not x.is_homogeneous():
        return False
    if x.is_zero():
        return True
    k = x.grades()[0]
    n = x.alg.n
    if k <= 1 or k >= n - 1:
        return True
    if k == 2:
        e = _euclid(x)
        sq = e * e
        return _negligible(sq - sq.grade(0), e.max_abs() ** 2)
    try:
        factor_blade(x)
    except NotABlade:
        return False
    return True


def _gram_schmidt_euclid(vs: List[Multivector]) -> List[Multivector]:
    out = []
    for v in vs:
        w = v
        for u in out:
            w = w - u * (scalar_product(w, u) / scalar_product(u, u))
        out.append(w)
    return out


def factor_blade(A: Multivector) -> List[Multivector]:
    """Vectors a1..ak with a1 ^ ... ^ ak = A.

    Coordinate vectors are projected onto the subspace of A (in the
    euclidean reinterpretation) and kept greedily, in index order, while
    they raise the rank. The kept vectors are orthogonalized and the last
    one is rescaled so that the outer product reproduces A.
    """
    if not A.is_homogeneous() or A.is_zero():
        raise NotABlade("not a blade: needs a nonzero homogeneous element")
    k = A.grades()[0]
    if k == 0:
        raise NotABlade("a scalar has no vector factors")
    if k == 1:
        return [A]
    alg = A.alg
    E = _euclid(A)
    norm = (E * E.reverse())
    if not _negligible(norm - norm.grade(0), E.max_abs() ** 2):
        raise NotABlade("not a blade")
    nn = norm.scalar
    Einv = E.reverse() / nn
    kept: List[Multivector] = []
    W = E.alg.one()
    for e in E.alg.gens:
        p = (left_inner(e, E) * Einv).grade(1)
        if p.is_zero():
            continue
        W2 = outer(W, p)
        if _negligible(W2, W.max_abs() * p.max_abs()):
            continue
        kept.append(p)
        W = W2
        if len(kept) == k:
            break
    if len(kept) < k:
        raise NotABlade("not a blade")
    kept = _gram_schmidt_euclid(kept)
    lam = scalar_product(wedge(kept), E.reverse()) / nn
    kept[-1] = kept[-1] / lam
    factors = [_back(v, alg) for v in kept]
    residual = wedge(factors) - A
    if not _negligible(residual, A.max_abs()):
        raise NotABlade("not a blade: residual after factorization is nonzero")
    return factors


# ----------------------------------------------------------------- reciprocal bases

def _blade_inverse(A: Multivector) -> Multivector:
    s = A * A.reverse()
    if not s.is_scalar() or s.scalar == 0 or (not A.ring.exact and abs(s.scalar) <= 1e-14 * A.max_abs() ** 2):
        raise NotInvertible("blade not invertible")
    return A.reverse() / s.scalar


def reciprocal_basis(basis: Sequence[Multivector]) -> ReciprocalBasis:
    """e^i = (-1)^(i-1) (e1 ^ .. (no e_i) .. ^ ek) E^-1 with E = e1 ^ ... ^ ek."""
    basis = list(basis)
    if not basis:
        raise ValueError("empty basis")
    alg = basis[0].alg
    E = wedge(basis)
    if E.is_zero():
        raise ValueError("basis vectors are linearly dependent")
    try:
        Einv = _blade_inverse(E)
    except NotInvertible:
        raise DegenerateSignature("basis spans a degenerate subspace") from None
    out = []
    for i in range(len(basis)):
        rest = wedge(basis[:i] + basis[i + 1:], alg)
        r = (rest * Einv).grade(1)
        out.append(-r if i % 2 else r)
    return ReciprocalBasis(tuple(basis), tuple(out))


# ----------------------------------------------------------------- projections

def _blade_value(A) -> Multivector:
    return A.value if isinstance(A, Blade) else A


def project(A, x: Multivector) -> Multivector:
    """P_A(x) = (x _| A) A^-1."""
    A = _blade_value(A)
    return left_inner(x, A) * _blade_inverse(A)


def reject(A, x: Multivector) -> Multivector:
    """R_A(x) = (x ^ A) A^-1."""
    A = _blade_value(A)
    return outer(x, A) * _blade_inverse(A)


def gram_schmidt_blades(vectors: Sequence[Multivector]) -> List[Multivector]:
    """b_k = A_{k-1}^dagger A_k with A_k = a1 ^ ... ^ ak (no normalization)."""
    vectors = list(vectors)
    if not vectors:
        return []
    alg = vectors[0].alg
    if not alg.sig.is_euclidean:
        raise ValueError("blade Gram-Schmidt needs a euclidean signature")
    prev = alg.one()
    out = []
    for a in vectors:
        cur = outer(prev, a)
        out.append((prev.reverse() * cur).grade(1))
        prev = cur
    return out


# ----------------------------------------------------------------- projective plane

class Intersection(NamedTuple):
    homogeneous: Multivector
    point: Optional[Tuple]
    at_infinity: bool


def _plane_algebra(points) -> Algebra:
    exact = all(isinstance(c, (Rational, str)) for p in points for c in _coords(p))
    return Algebra.from_counts(3, ring=RATIONAL if exact else FLOAT)


def _coords(p):
    if isinstance(p, Multivector):
        c = p.vector_coeffs()
        if len(c) != 2:
            raise ValueError("plane points must be 2-vectors")
        return c
    p = tuple(p)
    if len(p) != 2:
        raise ValueError("plane points must have two coordinates")
    return p


def embed_point(p, alg: Algebra) -> Multivector:
    """x -> x + e3."""
    x, y = _coords(p)
    return alg.vector([x, y, 1])


def _coef2(x: Multivector):
    return x[0b11]


def cross_ratio(a, b, c, d):
    """D(a,b,c,d) = (a^b)(c^d) / ((a^c)(b^d)) for vectors in a plane.

    All four outer products are multiples of the same pseudoscalar, so the
    ratio is formed from their coefficients and needs no metric.
    """
    ab, cd, ac, bd = (outer(p, q) for p, q in ((a, b), (c, d), (a, c), (b, d)))
    if ac.is_zero() or bd.is_zero():
        raise ValueError("degenerate configuration")
    num = _coef2(ab) * _coef2(cd)
    den = _coef2(ac) * _coef2(bd)
    if a.ring.exact:
        return Fraction(num) / den
    return num / den


def _bracket(X, Y, Z, alg):
    e1, e2, e3 = alg.gens
    return scalar_product(outer(outer(X, Y), Z), outer(outer(e3, e2), e1))


def project_line_intersect(a, b, c, d) -> Intersection:
    """Intersection of the line ab with the line cd in the plane.

    Uses L v M = [A,B,C] D - [A,B,D] C with [X,Y,Z] = (X^Y^Z) * (e3^e2^e1)
    on the embedded points. Parallel lines give a point at infinity.
    """
    alg = _plane_algebra([a, b, c, d])
    A, B, C, D = (embed_point(p, alg) for p in (a, b, c, d))
    h = D * _bracket(A, B, C, alg) - C * _bracket(A, B, D, alg)
    if h.is_zero():
        raise ValueError("degenerate configuration: the lines coincide")
    w = h[0b100]
    if w == 0 or (not alg.ring.exact and abs(w) <= 1e-12 * h.max_abs()):
        return Intersection(h, None, True)
    return Intersection(h, (h[0b001] / w, h[0b010] / w), False)


def pascal_check(p1, p2, p3, p4, p5, p6):
    """Pseudoscalar coefficient of the Pascal expression for a hexagon.

    ((a^b) v (d^e)) ^ ((b^c) v (e^f)) ^ ((c^d) v (f^a)); it vanishes exactly
    when the six points lie on a common conic.
    """
    pts = [p1, p2, p3, p4, p5, p6]
    alg = _plane_algebra(pts)
    a, b, c, d, e, f = (embed_point(p, alg) for p in pts)
    x = meet(outer(a, b), outer(d, e))
    y = meet(outer(b, c), outer(e, f))
    z = meet(outer(c, d), outer(f, a))
    return outer(outer(x, y), z)[0b111]


def quadric_eval(x: Multivector, T: Outermorphism):
    """f(x) = x * T(x)."""
    return scalar_product(x, T(x))


def polar(x: Multivector, T: Outermorphism) -> Multivector:
    """Pol_Q(x) = T(x)^c for the quadric of a self-adjoint T."""
    if not is_self_adjoint(T):
        raise ValueError("polar needs a self-adjoint outermorphism")
    return dual(T(x))


__all__ = ["Blade", "ReciprocalBasis", "Intersection", "gram_scalar", "is_independent", "is_blade",
           "factor_blade", "reciprocal_basis", "project", "reject", "gram_schmidt_blades",
           "embed_point", "cross_ratio", "project_line_intersect", "pascal_check", "polar",
           "quadric_eval"]
