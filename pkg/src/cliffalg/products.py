"""Derived products, duality, exponentials and fermionic operators.

All products are filters of the geometric product on basis blades:

    A ^ B   = (A & B == 0) AB          outer
    A _| B  = (A subset of B) AB       left inner
    A |_ B  = (A superset of B) AB     right inner
    A * B   = (A == B) AB              scalar
    A . B   = (either inclusion) AB    dot
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Optional, Sequence

from .core import DOT, LEFT, OUTER, RIGHT, SCALAR, Algebra, Multivector, product
from .errors import ConvergenceError, DegenerateSignature, DimensionError

SERIES_CAP = 200
SERIES_RTOL = 1e-15
SCALAR_SQUARE_TOL = 1e-10


def outer(x: Multivector, y: Multivector) -> Multivector:
    return product(x, y, OUTER)


def left_inner(x: Multivector, y: Multivector) -> Multivector:
    return product(x, y, LEFT)


def right_inner(x: Multivector, y: Multivector) -> Multivector:
    return product(x, y, RIGHT)


def scalar_product(x: Multivector, y: Multivector):
    """x * y = <xy>_0, returned as a ring scalar."""
    return product(x, y, SCALAR).scalar


def dot_inner(x: Multivector, y: Multivector) -> Multivector:
    return product(x, y, DOT)


def wedge(vectors: Sequence[Multivector], alg: Optional[Algebra] = None) -> Multivector:
    """Outer product of a list (the empty list gives 1)."""
    if not vectors:
        if alg is None:
            raise ValueError("empty wedge needs an algebra")
        return alg.one()
    out = vectors[0]
    for v in vectors[1:]:
        out = outer(out, v)
    return out


# ----------------------------------------------------------------- duality

def pseudoscalar_inverse(alg: Algebra) -> Multivector:
    I = alg.pseudoscalar()
    sq = (I * I).scalar
    if sq == 0:
        raise DegenerateSignature("pseudoscalar not invertible")
    return I / sq


def dual(x: Multivector) -> Multivector:
    """x^c = x I^-1."""
    return x * pseudoscalar_inverse(x.alg)


def undual(x: Multivector) -> Multivector:
    """Inverse of :func:`dual`: x I."""
    pseudoscalar_inverse(x.alg)
    return x * x.alg.pseudoscalar()


def meet(x: Multivector, y: Multivector) -> Multivector:
    """x v y defined by (x v y)^c = x^c ^ y^c, relative to I = e1...en."""
    return undual(outer(dual(x), dual(y)))


def cross3(a: Multivector, b: Multivector) -> Multivector:
    """a x b = (a ^ b)^c in euclidean 3-space."""
    if a.sig.values != (1, 1, 1):
        raise DimensionError("cross product needs the signature R(3,0,0)")
    if not (a.grades() in ((), (1,)) and b.grades() in ((), (1,))):
        raise ValueError("cross product takes vectors")
    return dual(outer(a, b))


# ----------------------------------------------------------------- exp

def _closed_form_square(x: Multivector):
    """The scalar x^2 if x squares to a scalar (within tolerance), else None."""
    sq = x * x
    s = sq.scalar
    rest = sq - sq.grade(0)
    if rest.is_zero():
        return s
    if not x.ring.exact and rest.norm2() < SCALAR_SQUARE_TOL * abs(s):
        return s
    return None


def exp(x: Multivector, terms: Optional[int] = None) -> Multivector:
    """e^x.

    When x^2 is a scalar the closed form is used: cos/sin for x^2 < 0,
    cosh/sinh for x^2 > 0 and 1 + x for x^2 = 0. Otherwise the power series
    is summed (with scaling and squaring) until a term falls below 1e-15 of
    the partial sum. ``terms`` forces a plain series with that many terms.
    Exact rings only support the nilpotent branch.
    """
    alg = x.alg
    if terms is not None:
        return _series(x, terms)
    if x.is_zero():
        return alg.one()
    s = _closed_form_square(x)
    if s is not None:
        if s == 0:
            return 1 + x
        if x.ring.exact:
            raise ValueError("exp with x^2 != 0 needs a float ring")
        s = float(s)
        if s < 0:
            r = math.sqrt(-s)
            return alg.scalar(math.cos(r)) + x * (math.sin(r) / r)
        r = math.sqrt(s)
        return alg.scalar(math.cosh(r)) + x * (math.sinh(r) / r)
    if x.ring.exact:
        raise ValueError("series exp needs a float ring")
    # scale so that the series converges quickly, then square back
    k = max(0, math.ceil(math.log2(max(x.norm2(), 1e-300))) + 1)
    y = _series(x / (2 ** k), None)
    for _ in range(k):
        y = y * y
    return y


def _series(x: Multivector, terms: Optional[int]) -> Multivector:
    alg = x.alg
    total = alg.one()
    term = alg.one()
    cap = terms if terms is not None else SERIES_CAP
    for k in range(1, cap + 1):
        term = (term * x) / k
        total = total + term
        if terms is None and term.norm2() <= SERIES_RTOL * max(total.norm2(), 1e-300):
            return total
    if terms is None:
        raise ConvergenceError("no convergence - conditioning")
    return total


# ----------------------------------------------------------------- expansion oracle

def _perm_sign(lam, n):
    # sign of (lam, complement) as a permutation of 0..n-1
    inv = sum(l - i for i, l in enumerate(lam))
    return -1 if inv % 2 else 1


def expand_inner(x: Multivector, vectors: Sequence[Multivector]) -> Multivector:
    """x _| (a1 ^ ... ^ an) by explicit subset enumeration.

    Sum over increasing m-subsets lambda of (sgn lambda)(x * A_lambda) A_lambda^c
    where sgn lambda is the sign of the permutation (lambda, complement).
    Inhomogeneous x is expanded grade by grade.
    """
    alg = x.alg
    n = len(vectors)
    out = alg.zero()
    for m in x.grades():
        if m > n:
            continue
        xm = x.grade(m)
        for lam in combinations(range(n), m):
            comp = [i for i in range(n) if i not in lam]
            a_lam = wedge([vectors[i] for i in lam], alg)
            c = scalar_product(xm, a_lam)
            if c == 0:
                continue
            a_comp = wedge([vectors[i] for i in comp], alg)
            out = out + a_comp * (c if _perm_sign(lam, n) > 0 else -c)
    return out


# ----------------------------------------------------------------- fermions

def _fermion_index(psi: Multivector, i: int) -> Multivector:
    if not 1 <= i <= psi.alg.n:
        raise IndexError(f"mode index {i} outside 1..{psi.alg.n}")
    return psi.alg.blade(1 << (i - 1))


def fermion_create(i: int, psi: Multivector) -> Multivector:
    """c_i^dagger psi = e_i ^ psi."""
    return outer(_fermion_index(psi, i), psi)


def fermion_annihilate(i: int, psi: Multivector) -> Multivector:
    """c_i psi = e_i _| psi."""
    return left_inner(_fermion_index(psi, i), psi)


def number_operator(psi: Multivector) -> Multivector:
    """n_F = sum_i c_i^dagger c_i."""
    out = psi.alg.zero()
    for i in range(1, psi.alg.n + 1):
        out = out + fermion_create(i, fermion_annihilate(i, psi))
    return out


__all__ = ["outer", "left_inner", "right_inner", "scalar_product", "dot_inner", "wedge",
           "dual", "undual", "meet", "cross3", "exp", "expand_inner", "pseudoscalar_inverse",
           "fermion_create", "fermion_annihilate", "number_operator"]
