"""Versors, rotors and orthogonal maps.

Covers the twisted adjoint action, the norm functions N_0..N_5 of the low
dimensional algebras, Cartan-Dieudonne factorization into reflections, the
correspondence between bivectors and antisymmetric maps, the orthogonal
splitting of bivectors, rotor exponentials and the linearized euclidean
group in R^{n,0,1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import _linalg
from .core import Algebra, Multivector, Signature, inverse
from .errors import CliffordError, DegenerateSignature, DimensionError, NotInvertible
from .morphisms import Outermorphism
from .products import exp, left_inner, outer, scalar_product
from .rings import FLOAT

INVERTIBLE_RTOL = 1e-10
ORTHO_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_SWEEPS = 100


class NoOrthogonalSplit(CliffordError):
    """The bivector has no decomposition into orthogonal 2-blades."""


@dataclass(frozen=True)
class Versor:
    value: Multivector
    factors: Optional[Tuple[Multivector, ...]] = None

    @classmethod
    def from_factors(cls, factors: Sequence[Multivector], alg: Algebra) -> "Versor":
        v = alg.one()
        for f in factors:
            v = v * f
        return cls(v, tuple(factors))


def _nondegenerate(alg: Algebra):
    if not alg.sig.nondegenerate:
        raise DegenerateSignature("operation needs a nondegenerate signature")


def _close(x: Multivector, y, tol: float = 1e-10) -> bool:
    if x.ring.exact:
        return x == y
    return x.isclose(y, tol)


# ----------------------------------------------------------------- twisted adjoint

def twisted_adjoint(x: Multivector, y: Multivector) -> Multivector:
    """tAd_x(y) = x^star y x^-1."""
    return x.involute() * y * inverse(x)


def reflect(u: Multivector, v: Multivector) -> Multivector:
    """tAd_u(v) = v - 2 (u*v)/u^2 u for an invertible vector u."""
    uu = scalar_product(u, u)
    if uu == 0:
        raise NotInvertible("reflection along a null vector")
    return v - u * (2 * scalar_product(u, v) / uu)


# ----------------------------------------------------------------- norm functions

_NORM_DEGREE = {0: 1, 1: 2, 2: 2, 3: 4, 4: 4, 5: 8}


def norm_function(x: Multivector):
    """N_k(x) for an algebra on k <= 5 generators; always a ring scalar.

        N_0 = x    N_1 = N_2 = x^box x    N_3 = N_4 = [x^box x] x^box x
        N_5 = [[x^dag x]_{1,4} x^dag x] [x^dag x]_{1,4} x^dag x
    """
    n = x.alg.n
    if n == 0:
        return x.scalar
    if n <= 2:
        val = x.conjugate() * x
    elif n <= 4:
        m = x.conjugate() * x
        val = m.flip_nonscalar() * m
    elif n == 5:
        m = x.reverse() * x
        w = m.flip((1, 4)) * m
        val = w.flip_nonscalar() * w
    else:
        raise DimensionError("no closed-form norm implemented")
    rest = val - val.grade(0)
    if x.ring.exact:
        scalar = rest.is_zero()
    else:
        scalar = rest.max_abs() <= 1e-9 * max(val.max_abs(), 1.0)
    if not scalar:
        raise CliffordError(f"norm function is not scalar in {x.alg}")
    return val.scalar


def _norm_cofactor(x: Multivector) -> Multivector:
    # y with y x = N(x)
    n = x.alg.n
    if n == 0:
        return x.alg.one()
    if n <= 2:
        return x.conjugate()
    if n <= 4:
        return (x.conjugate() * x).flip_nonscalar() * x.conjugate()
    m = x.reverse() * x
    w = m.flip((1, 4))
    return (w * m).flip_nonscalar() * w * x.reverse()


def inverse_closed_form(x: Multivector) -> Multivector:
    """x^-1 from the norm function: x^-1 = (cofactor of x) / N(x)."""
    N = norm_function(x)
    deg = _NORM_DEGREE[x.alg.n]
    if N == 0 or (not x.ring.exact and abs(N) <= 1e-12 * x.max_abs() ** deg):
        raise NotInvertible("not invertible")
    return _norm_cofactor(x) / N


# ----------------------------------------------------------------- group membership

def _is_vector(v: Multivector, scale: float) -> bool:
    rest = v - v.grade(1)
    if v.ring.exact:
        return rest.is_zero()
    return rest.max_abs() <= INVERTIBLE_RTOL * max(scale, 1.0)


def is_versor(x: Multivector) -> bool:
    """x invertible and x^star V x^-1 contained in V (the Lipschitz group)."""
    _nondegenerate(x.alg)
    if not (x.is_even() or x.is_odd()):
        return False
    try:
        xinv = inverse(x)
    except NotInvertible:
        return False
    xs = x.involute()
    scale = x.max_abs() * xinv.max_abs()
    return all(_is_vector(xs * e * xinv, scale) for e in x.alg.gens)


def is_rotor(x: Multivector) -> bool:
    """Even with x x^dagger = 1; above dimension 5 also a versor."""
    _nondegenerate(x.alg)
    if not x.is_even():
        return False
    if not _close(x * x.reverse(), 1):
        return False
    if x.alg.n > 5:
        return is_versor(x)
    return True


def pin_spin_class(x: Multivector) -> Optional[str]:
    """The smallest of Pin, Spin, Spin+ containing x, or None."""
    _nondegenerate(x.alg)
    if not is_versor(x):
        return None
    s = x * x.reverse()
    if _close(s, 1):
        sign = 1
    elif _close(s, -1):
        sign = -1
    else:
        return None
    if not x.is_even():
        return "Pin"
    return "Spin+" if sign == 1 else "Spin"


# ----------------------------------------------------------------- Cartan-Dieudonne

def _vec_invertible(v: Multivector) -> bool:
    vv = scalar_product(v, v)
    if v.ring.exact:
        return vv != 0
    return abs(vv) > INVERTIBLE_RTOL * v.max_abs() ** 2


def _as_outermorphism(f, alg: Optional[Algebra]) -> Outermorphism:
    if isinstance(f, Outermorphism):
        return f
    if alg is None:
        raise ValueError("a matrix needs an algebra")
    return Outermorphism(f, alg)


def is_orthogonal(f, alg: Optional[Algebra] = None) -> bool:
    F = _as_outermorphism(f, alg)
    A = F.source
    for i, ei in enumerate(A.gens):
        for j, ej in enumerate(A.gens[i:], start=i):
            lhs = scalar_product(F.image(i + 1), F.image(j + 1))
            rhs = A.sig.values[i] if i == j else 0
            if A.ring.exact:
                if lhs != rhs:
                    return False
            elif abs(lhs - rhs) > ORTHO_TOL:
                return False
    return True


def cartan_dieudonne(f, alg: Optional[Algebra] = None) -> List[Multivector]:
    """Invertible vectors u1..uk with tAd_{uk...u1} = f, k <= 2n.

    Step j compares x = S(e_j), S the reflections chosen so far, with
    y = f(e_j). The reflection along x - y (or x + y when x - y is null)
    carries x to y (or -y) and fixes the earlier images. Images that came
    out as -f(e_j) are fixed at the end by reflecting along f(e_j).
    u1 is applied first.
    """
    F = _as_outermorphism(f, alg)
    A = F.source
    if F.target != A:
        raise DimensionError("orthogonal map must act on one algebra")
    _nondegenerate(A)
    if not is_orthogonal(F):
        raise ValueError("map is not orthogonal")
    imgs = list(A.gens)
    targets = [F.image(j + 1) for j in range(A.n)]
    us: List[Multivector] = []
    flipped = []
    for j in range(A.n):
        x, y = imgs[j], targets[j]
        if _close(x, y, 1e-12):
            continue
        u = x - y
        if not _vec_invertible(u):
            u = x + y
            flipped.append(j)
        us.append(u)
        imgs = [reflect(u, v) for v in imgs]
    for j in flipped:
        us.append(targets[j])
    return us


def apply_reflections(us: Sequence[Multivector], v: Multivector) -> Multivector:
    for u in us:
        v = reflect(u, v)
    return v


# ----------------------------------------------------------------- bivectors and so(V)

def ad(B: Multivector, x: Multivector) -> Multivector:
    """ad_B(x) = Bx - xB."""
    return B * x - x * B


def so_from_bivector(B: Multivector):
    """Matrix of the map V -> V, v -> ad_B(v) (columns are images of e_j)."""
    if B.grades() not in ((), (2,)):
        raise ValueError("expected a bivector")
    cols = []
    for e in B.alg.gens:
        cols.append(ad(B, e).vector_coeffs())
    return _linalg.transpose(cols) if cols else []


def is_antisymmetric(f, alg: Optional[Algebra] = None) -> bool:
    """f(u)*v = -u*f(v) on all basis pairs."""
    F = _as_outermorphism(f, alg)
    gens = F.source.gens
    for i, ei in enumerate(gens):
        for j, ej in enumerate(gens):
            s = scalar_product(F.image(i + 1), ej) + scalar_product(ei, F.image(j + 1))
            if (s != 0) if F.source.ring.exact else abs(s) > ORTHO_TOL:
                return False
    return True


def bivector_from_so(f, alg: Optional[Algebra] = None) -> Multivector:
    """The bivector B with ad_B = f on vectors.

    B = 1/4 sum_ij (e^i * f(e^j)) e_i ^ e_j, the factor 1/4 matching the
    plain commutator ad_B(x) = Bx - xB.
    """
    F = _as_outermorphism(f, alg)
    A = F.source
    _nondegenerate(A)
    if not is_antisymmetric(F):
        raise ValueError("map is not antisymmetric with respect to the metric")
    gens = A.gens
    recip = [e / r for e, r in zip(gens, A.sig.values)]
    B = A.zero()
    for i in range(A.n):
        for j in range(A.n):
            fj = F(recip[j])
            c = scalar_product(recip[i], fj)
            if c != 0:
                B = B + outer(gens[i], gens[j]) * c
    return B / 4


def killing_form(A_: Multivector, B: Multivector):
    """tr(ad_A ad_B) on the grade-2 subspace."""
    alg = A_.alg
    total = alg.ring.zero
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            m = (1 << i) | (1 << j)
            total = total + ad(A_, ad(B, alg.blade(m)))[m]
    return total


# ----------------------------------------------------------------- bivector splitting

def jacobi_eigh(S):
    """Eigenvalues and eigenvectors (as columns) of a symmetric float matrix.

    Cyclic Jacobi rotations until the off-diagonal mass is below 1e-14 of
    the total.
    """
    n = len(S)
    a = [[float(c) for c in row] for row in S]
    V = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    total = sum(c * c for row in a for c in row) or 1.0
    for _ in range(JACOBI_SWEEPS):
        off = sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j)
        if off <= JACOBI_TOL ** 2 * total:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p][q] == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2 * a[p][q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = V[k][p], V[k][q]
                    V[k][p] = c * vkp - s * vkq
                    V[k][q] = s * vkp + c * vkq
    else:
        raise CliffordError("Jacobi iteration did not converge")
    return [a[i][i] for i in range(n)], V


def _euclid_float(B: Multivector) -> Multivector:
    alg = Algebra(Signature((1,) * B.alg.n), FLOAT)
    return Multivector(alg, B.terms)


def _split_euclidean(E: Multivector) -> List[Multivector]:
    alg = E.alg
    n = alg.n
    scale = E.max_abs()
    out = []
    gens = alg.gens
    while E.max_abs() > 1e-12 * scale and len(out) < n // 2:
        M = _linalg.transpose([left_inner(e, E).vector_coeffs() for e in gens])
        S = [[sum(M[k][i] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        vals, vecs = jacobi_eigh(S)
        top = max(range(n), key=lambda i: vals[i])
        if vals[top] <= 1e-24 * scale * scale:
            break
        u = alg.vector([vecs[i][top] for i in range(n)])
        Mu = alg.vector([sum(M[i][j] * vecs[j][top] for j in range(n)) for i in range(n)])
        v = Mu / math.sqrt(scalar_product(Mu, Mu))
        P = outer(u, v)
        gamma = scalar_product(P.reverse(), E)
        blade = P * gamma
        out.append(blade)
        E = E - blade
    return out


def split_bivector(B: Multivector, orthogonal: bool = True) -> List[Multivector]:
    """Write B as a sum of at most n/2 2-blades.

    orthogonal=True asks for mutually orthogonal, commuting planes. That
    always exists in definite signatures and is computed from the
    eigenvectors of -M^2, M the matrix of v -> v _| B. In an indefinite
    signature a split is returned only when B is itself a non-null blade.
    If v -> v _| B is not semisimple at 0, no orthogonal split exists and
    NoOrthogonalSplit is raised. Every other indefinite case raises
    NotImplementedError.

    orthogonal=False returns the signature-independent split over a basis
    that need not be orthogonal. Results are float multivectors.
    """
    if B.grades() not in ((), (2,)):
        raise ValueError("split_bivector needs a bivector")
    target = B.alg.with_ring(FLOAT)
    if B.is_zero():
        return []
    sig = B.sig
    if orthogonal and not sig.is_definite:
        T = _linalg.transpose([left_inner(e, B).vector_coeffs() for e in B.alg.gens])
        ring = B.ring
        r1 = _linalg.rank(T, ring)
        r2 = _linalg.rank(_linalg.matmul(T, T), ring)
        if r1 != r2:
            raise NoOrthogonalSplit(
                "no orthonormal split: v -> v _| B is not semisimple (null plane)")
        sq = B * B
        if sq.is_scalar() and sq.scalar != 0:
            return [B.astype(FLOAT)]
        raise NotImplementedError("orthonormal split in indefinite signatures is deferred")
    blades = _split_euclidean(_euclid_float(B))
    return [Multivector(target, b.terms) for b in blades]


def rotor_exp(B: Multivector) -> Multivector:
    """e^B for a bivector; a product of plane exponentials in definite signatures."""
    if B.grades() not in ((), (2,)):
        raise ValueError("rotor_exp needs a bivector")
    if B.sig.is_definite and B.sig.nondegenerate and B.alg.n >= 2:
        out = B.alg.with_ring(FLOAT).one()
        for b in split_bivector(B):
            out = out * exp(b)
        return out
    if not B.ring.exact:
        return exp(B)
    sq = B * B
    if sq.is_scalar() and sq.scalar == 0:
        return exp(B)
    return exp(B.astype(FLOAT))


# ----------------------------------------------------------------- euclidean group in R^{n,0,1}

def _check_euclidean_space(alg: Algebra) -> int:
    vals = alg.sig.values
    if not vals or vals[-1] != 0 or any(v != 1 for v in vals[:-1]):
        raise ValueError("the euclidean group needs the signature R(n,0,1) with the null generator last")
    return alg.n - 1


def _null(alg: Algebra) -> Multivector:
    return alg.blade(1 << (alg.n - 1))


def _space_vector(alg: Algebra, coords) -> Multivector:
    n = _check_euclidean_space(alg)
    if len(coords) != n:
        raise DimensionError(f"expected {n} coordinates")
    return alg.vector(list(coords) + [0])


def euclidean_embed(coords, alg: Algebra) -> Multivector:
    """rho(x) = 1 + e x."""
    return 1 + _null(alg) * _space_vector(alg, coords)


def euclidean_point(X: Multivector) -> list:
    """Coordinates x from rho(x) = 1 + e x."""
    alg = X.alg
    n = _check_euclidean_space(alg)
    e = 1 << n
    # e e_i = -e_i ^ e in mask order
    return [-X[(1 << i) | e] for i in range(n)]


def translation_rotor(coords, alg: Algebra) -> Multivector:
    """A = e^{-ea/2} = 1 - ea/2."""
    return 1 - _null(alg) * _space_vector(alg, coords) / 2


def _modified_involute(x: Multivector) -> Multivector:
    # grade involution with e^star = e: sign from the non-null generators only
    e = 1 << (x.alg.n - 1)
    return Multivector(x.alg, {m: (-c if ((m & ~e).bit_count() & 1) else c) for m, c in x.terms.items()})


def apply_euclidean(V: Multivector, X: Multivector) -> Multivector:
    """V^star' X V^-1, with star' the involution fixing the null generator."""
    _check_euclidean_space(V.alg)
    return _modified_involute(V) * X * inverse(V)


__all__ = ["Versor", "NoOrthogonalSplit", "twisted_adjoint", "reflect", "norm_function",
           "inverse_closed_form", "is_versor", "is_rotor", "pin_spin_class", "is_orthogonal",
           "cartan_dieudonne", "apply_reflections", "ad", "so_from_bivector", "is_antisymmetric",
           "bivector_from_so", "killing_form", "jacobi_eigh", "split_bivector", "rotor_exp",
           "euclidean_embed", "euclidean_point", "translation_rotor", "apply_euclidean"]
