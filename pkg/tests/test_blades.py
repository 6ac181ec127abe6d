import math
import random
from fractions import Fraction

import pytest

from cliffalg import FLOAT, Algebra, Signature
from cliffalg._linalg import rank, solve
from cliffalg.blades import (Blade, cross_ratio, factor_blade, gram_scalar, gram_schmidt_blades,
                             is_blade, is_independent, pascal_check, polar, project,
                             project_line_intersect, quadric_eval, reciprocal_basis, reject)
from cliffalg.core import pseudoscalar_square
from cliffalg.errors import DegenerateSignature, NotABlade, NotInvertible
from cliffalg.morphisms import Outermorphism, determinant
from cliffalg.products import dual, left_inner, outer, scalar_product, wedge

from conftest import rand_frac, rand_mv, rand_vector
from oracles import det_cofactor, gram_schmidt_classical


def test_gram_scalar_is_determinant(rng):
    A = Algebra(Signature((1, -1, 1, 0, -1)))
    e = A.gens
    assert gram_scalar([e[0]], [e[0] + e[1]]) == 1
    assert gram_scalar([e[0], e[2]], [e[0], e[2]]) == 1
    for k in range(1, 5):
        u = [rand_vector(A, rng) for _ in range(k)]
        v = [rand_vector(A, rng) for _ in range(k)]
        M = [[scalar_product(ui, vj) for vj in v] for ui in u]
        assert gram_scalar(u, v) == det_cofactor(M)
    u = [e[0], 2 * e[0]]
    assert gram_scalar(u, [e[0], e[1]]) == 0


def test_blade_square_formula(rng):
    A = Algebra(Signature((1, -1, 1, 0)))
    for _ in range(20):
        a, b = rand_vector(A, rng), rand_vector(A, rng)
        ab = outer(a, b)
        assert ab * ab == scalar_product(a, b) ** 2 - (a * a).scalar * (b * b).scalar
        assert Blade((a, b)).square() == (ab * ab).scalar


def test_is_independent():
    A = Algebra.from_counts(3)
    e1, e2, e3 = A.gens
    assert is_independent([e1, e2])
    assert not is_independent([e1, 2 * e1])
    L = Algebra.from_counts(1, 1)
    f1, f2 = L.gens
    npos, nneg = f1 + f2, f1 - f2
    assert is_independent([npos, nneg])
    assert outer(npos, nneg) == 2 * L.e(2, 1)
    F = Algebra.from_counts(3, ring=FLOAT)
    assert not is_independent([F.vector([1.0, 2.0, 3.0]), F.vector([2.0, 4.0, 6.0])])


def test_is_blade_examples():
    A = Algebra.from_counts(4)
    e1, e2, e3, e4 = A.gens
    assert not is_blade((e1 ^ e2) + (e3 ^ e4))
    B = (e1 ^ e2) + (e3 ^ e4)
    assert B * B == -2 + 2 * A.pseudoscalar()
    assert is_blade(e1 + 3 * e2)
    assert is_blade(A.e(1, 2, 3))
    assert not is_blade(e1 + A.e(1, 2))
    A6 = Algebra.from_counts(6)
    g = A6.gens
    assert is_blade(outer(outer(g[0] + g[1], g[2] - g[4]), g[5]))
    assert not is_blade(A6.e(1, 2, 3) + A6.e(4, 5, 6))


@pytest.mark.parametrize("values", [(1, 1, 1, 1, 1), (1, -1, 0, 1, -1), (0, 0, 0, 0), (1, -1, -1)])
def test_factor_blade_reproduces(values, rng):
    A = Algebra(Signature(values))
    for _ in range(15):
        k = rng.randint(1, A.n)
        vs = [rand_vector(A, rng) for _ in range(k)]
        B = wedge(vs)
        if B.is_zero():
            continue
        f = factor_blade(B)
        assert len(f) == k
        assert wedge(f) == B


def test_factor_blade_examples():
    A = Algebra.from_counts(4)
    e1, e2, e3, e4 = A.gens
    assert wedge(factor_blade(e1 ^ e2)) == e1 ^ e2
    assert wedge(factor_blade((e1 + e2) ^ e3)) == (e1 + e2) ^ e3
    with pytest.raises(NotABlade):
        factor_blade((e1 ^ e2) + (e3 ^ e4))
    L = Algebra.from_counts(1, 2)
    f1, f2, f3 = L.gens
    null = outer(f1 + f2, f3)
    assert wedge(factor_blade(null)) == null


def test_factor_blade_float(rng):
    A = Algebra.from_counts(5, ring=FLOAT)
    for _ in range(10):
        vs = [rand_vector(A, rng) for _ in range(3)]
        B = wedge(vs)
        assert wedge(factor_blade(B)).isclose(B, 1e-9)


def test_subspace_semantics(rng):
    A = Algebra.from_counts(5)
    for _ in range(20):
        vs = [rand_vector(A, rng) for _ in range(3)]
        B = wedge(vs)
        if rng.random() < 0.5:
            cs = [rand_frac(rng) for _ in range(3)]
            a = sum((c * v for c, v in zip(cs, vs)), A.zero())
        else:
            a = rand_vector(A, rng)
        cols = [v.vector_coeffs() for v in vs]
        in_span = rank(cols + [a.vector_coeffs()]) == rank(cols)
        assert (outer(a, B).is_zero()) == in_span


# ----------------------------------------------------------------- reciprocal bases

def test_reciprocal_examples():
    E = Algebra.from_counts(3)
    assert reciprocal_basis(E.gens).reciprocal == E.gens
    L = Algebra.from_counts(1, 1)
    f1, f2 = L.gens
    npos, nneg = f1 + f2, f1 - f2
    r = reciprocal_basis([npos, nneg]).reciprocal
    assert r == (nneg / 2, npos / 2)
    M = Algebra.from_counts(1, 3)
    r = reciprocal_basis(M.gens).reciprocal
    assert r[0] == M.gens[0]
    assert all(r[j] == -M.gens[j] for j in range(1, 4))


@pytest.mark.parametrize("values", [(1, 1, 1), (1, -1, -1, 1), (-1, -1)])
def test_reciprocal_identities(values, rng):
    A = Algebra(Signature(values))
    n = A.n
    while True:
        basis = [rand_vector(A, rng) for _ in range(n)]
        E = wedge(basis)
        if not E.is_zero():
            break
    rb = reciprocal_basis(basis)
    for i in range(n):
        for j in range(n):
            assert scalar_product(rb.reciprocal[i], basis[j]) == (1 if i == j else 0)
    back = reciprocal_basis(rb.reciprocal).reciprocal
    assert list(back) == basis
    assert sum((b * r for b, r in zip(basis, rb.reciprocal)), A.zero()) == n
    for r_ in range(n + 1):
        X = rand_mv(A, rng, 3, grades=(r_,))
        s1 = sum((b * left_inner(rv, X) for b, rv in zip(basis, rb.reciprocal)), A.zero())
        assert s1 == r_ * X
        s2 = sum((b * X * rv for b, rv in zip(basis, rb.reciprocal)), A.zero())
        assert s2 == (-1) ** r_ * (n - 2 * r_) * X


def test_reciprocal_subspace_basis(rng):
    A = Algebra.from_counts(4)
    basis = [rand_vector(A, rng) for _ in range(2)]
    rb = reciprocal_basis(basis)
    for i in range(2):
        for j in range(2):
            assert scalar_product(rb.reciprocal[i], basis[j]) == (1 if i == j else 0)


def test_reciprocal_errors():
    A = Algebra.from_counts(2)
    e1, e2 = A.gens
    with pytest.raises(ValueError):
        reciprocal_basis([e1, 2 * e1])
    D = Algebra.from_counts(1, 0, 1)
    with pytest.raises(DegenerateSignature):
        reciprocal_basis(D.gens)


# ----------------------------------------------------------------- projections

def test_projection_examples():
    A = Algebra.from_counts(3)
    e1, e2, e3 = A.gens
    B = e1 ^ e2
    v = e1 + e3
    assert project(B, v) == e1
    assert reject(B, v) == e3
    assert project(B, 2 * e1 - e2) == 2 * e1 - e2
    assert reject(B, 2 * e1 - e2) == 0
    assert project(B, A.one()) == 1
    assert project(Blade((e1, e2)), v) == e1


def test_projection_null_blade():
    L = Algebra.from_counts(1, 1)
    f1, f2 = L.gens
    with pytest.raises(NotInvertible):
        project(f1 + f2, f1)


@pytest.mark.parametrize("values", [(1, 1, 1, 1), (1, -1, 1, -1)])
def test_projection_laws(values, rng):
    A = Algebra(Signature(values))
    for _ in range(10):
        B = wedge([rand_vector(A, rng) for _ in range(2)])
        if (B * B).scalar == 0:
            continue
        v, w = rand_vector(A, rng), rand_vector(A, rng)
        assert project(B, project(B, v)) == project(B, v)
        assert project(B, v) + reject(B, v) == v
        assert scalar_product(project(B, v), w) == scalar_product(v, project(B, w))
        assert scalar_product(reject(B, v), w) == scalar_product(v, reject(B, w))
        x, y = rand_mv(A, rng, 3, grades=(1,)), rand_mv(A, rng, 3, grades=(1,))
        assert project(B, outer(x, y)) == outer(project(B, x), project(B, y))


def test_gram_schmidt_blades(rng):
    A = Algebra.from_counts(4)
    e1, e2, e3, e4 = A.gens
    b = gram_schmidt_blades([e1, e1 + e2])
    assert b[0] == e1 and b[1] == e2
    for _ in range(5):
        a = [rand_vector(A, rng) for _ in range(4)]
        b = gram_schmidt_blades(a)
        classical = gram_schmidt_classical([v.vector_coeffs() for v in a])
        for i in range(4):
            for j in range(i):
                assert scalar_product(b[i], b[j]) == 0
            ratio = None
            for x, y in zip(b[i].vector_coeffs(), classical[i]):
                if y != 0:
                    ratio = x / y
                    break
            assert ratio is not None and ratio > 0
            assert b[i] == A.vector(classical[i]) * ratio
    out = gram_schmidt_blades([e1, 2 * e1, e2])
    assert out[1] == 0 and out[2] == 0
    with pytest.raises(ValueError):
        gram_schmidt_blades(Algebra.from_counts(1, 1).gens)


# ----------------------------------------------------------------- projective plane

def test_cross_ratio_affine_line():
    A = Algebra.from_counts(2)
    e1, e2 = A.gens
    pts = [x * e1 + e2 for x in (0, 1, 2, 3)]
    assert cross_ratio(*pts) == Fraction(1, 4)
    rng = random.Random(5)
    for _ in range(20):
        X = [rand_frac(rng, -9, 9, 4) for _ in range(4)]
        if len(set(X)) < 4:
            continue
        pts = [x * e1 + e2 for x in X]
        a, b, c, d = X
        assert cross_ratio(*pts) == (a - b) * (c - d) / ((a - c) * (b - d))


def test_cross_ratio_invariance(rng):
    A = Algebra.from_counts(2)
    pts = [rand_vector(A, rng) for _ in range(4)]
    D = cross_ratio(*pts)
    assert cross_ratio(Fraction(-7, 3) * pts[0], *pts[1:]) == D
    while True:
        M = [[rand_frac(rng), rand_frac(rng)], [rand_frac(rng), rand_frac(rng)]]
        if det_cofactor(M) != 0:
            break
    T = Outermorphism(M, A)
    assert cross_ratio(*[T(p) for p in pts]) == D
    e1, e2 = A.gens
    with pytest.raises(ValueError):
        cross_ratio(e1, e2, e1, e2)


def test_line_intersection():
    r = project_line_intersect((0, 0), (1, 0), (0, 1), (0, 2))
    assert r.point == (0, 0) and not r.at_infinity
    r = project_line_intersect((0, 0), (1, 0), (0, 1), (1, 1))
    assert r.at_infinity and r.point is None


def test_line_intersection_matches_solve(rng):
    for _ in range(30):
        a, b, c, d = ([rand_frac(rng), rand_frac(rng)] for _ in range(4))
        da = [b[0] - a[0], b[1] - a[1]]
        dc = [d[0] - c[0], d[1] - c[1]]
        if da == [0, 0] or dc == [0, 0] or da[0] * dc[1] - da[1] * dc[0] == 0:
            continue
        # a + s da = c + t dc
        s, t = solve([[da[0], -dc[0]], [da[1], -dc[1]]], [c[0] - a[0], c[1] - a[1]])
        r = project_line_intersect(a, b, c, d)
        assert r.point == (a[0] + s * da[0], a[1] + s * da[1])


def test_line_intersection_matches_meet(rng):
    from cliffalg.blades import embed_point
    from cliffalg.products import meet
    A = Algebra.from_counts(3)
    for _ in range(10):
        pts = [(rand_frac(rng), rand_frac(rng)) for _ in range(4)]
        try:
            r = project_line_intersect(*pts)
        except ValueError:
            continue
        P = [embed_point(p, A) for p in pts]
        m = meet(outer(P[0], P[1]), outer(P[2], P[3]))
        assert outer(m, r.homogeneous).is_zero()


def _circle_point(t):
    t = Fraction(t)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def test_pascal_on_circle():
    ts = [0, 1, 2, Fraction(1, 3), -1, Fraction(-5, 2)]
    pts = [_circle_point(t) for t in ts]
    assert pascal_check(*pts) == 0
    assert pascal_check(*(pts[2:] + pts[:2])) == 0


def test_pascal_on_ellipse_and_generic(rng):
    pts = [(2 * x, y) for x, y in (_circle_point(t) for t in (3, 4, Fraction(1, 2), -2, 7, Fraction(-1, 7)))]
    assert pascal_check(*pts) == 0
    generic = [(0, 0), (1, 0), (0, 1), (2, 3), (-1, 5), (Fraction(7, 2), -2)]
    assert pascal_check(*generic) != 0
    fl = [(math.cos(t), math.sin(t)) for t in (0.1, 0.9, 1.7, 2.5, 3.9, 5.0)]
    assert abs(pascal_check(*fl)) < 1e-12


def _self_adjoint(rng, values):
    n = len(values)
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = rand_frac(rng, -3, 3, 2)
    # F = G^-1 S is self-adjoint for the diagonal metric G
    return [[S[i][j] * values[i] for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("values", [(1, 1, 1), (1, 1, -1), (1, -1, -1, 1)])
def test_polar_theorems(values, rng):
    A = Algebra(Signature(values))
    n = A.n
    T = Outermorphism(_self_adjoint(rng, values), A)
    dT = determinant(T)
    I2 = pseudoscalar_square(A.sig)
    for m in range(n + 1):
        tau = (-1) ** (m * n - m) * I2
        for _ in range(4):
            x = rand_mv(A, rng, 3, grades=(m,))
            assert quadric_eval(polar(x, T), T) == tau * dT * quadric_eval(x, T)
            y = rand_mv(A, rng, 3, grades=(m,))
            assert outer(x, dual(T(y))) == outer(y, dual(T(x)))


def test_polar_identity_and_errors():
    A = Algebra.from_counts(3)
    e1, e2, e3 = A.gens
    x = e1 + A.e(2, 3)
    assert polar(x, Outermorphism.identity(A)) == dual(x)
    with pytest.raises(ValueError):
        polar(x, Outermorphism([[1, 1, 0], [0, 1, 0], [0, 0, 1]], A))
