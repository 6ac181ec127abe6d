import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffalg import COMPLEX_RATIONAL, FLOAT, Algebra, CPair
from cliffalg.errors import CliffordError, DimensionError
from cliffalg.tables import (BASE_TABLE, MatrixAlgebra, check_table, classify_complex, classify_real,
                             even_subalgebra_signature, octonion_algebra, octonion_norm2,
                             octonion_product, pauli_matrix_product, pauli_rep, radon_hurwitz,
                             representation_counts)

from conftest import rand_mv
from oracles import classification_oracle, pauli_oracle

# Table of irreducible representations: n, (nu, d) for R^{n,0}, (nu, d) for R^{0,n}
REPRESENTATIONS = [
    (0, (1, 1), (1, 1)), (1, (2, 1), (1, 2)), (2, (1, 2), (1, 4)), (3, (1, 4), (2, 4)),
    (4, (1, 8), (1, 8)), (5, (2, 8), (1, 8)), (6, (1, 16), (1, 8)), (7, (1, 16), (2, 8)),
    (8, (1, 16), (1, 16)),
]
RADON_HURWITZ_ROW = [0, 1, 0, 3, 0, 1, 0, 7, 0, 1, 0, 3, 0, 1, 0, 8, 0]


@pytest.mark.parametrize("s,t,text", [(0, 1, "C"), (3, 0, "C[2]"), (1, 3, "H[2]"), (0, 0, "R"),
                                      (1, 0, "R+R"), (0, 3, "H+H"), (8, 8, "R[256]"),
                                      (4, 1, "C[4]"), (0, 7, "R[8]+R[8]")])
def test_classify_examples(s, t, text):
    assert str(classify_real(s, t)) == text


def test_table_self_check_and_oracle():
    assert check_table() == []
    assert len(BASE_TABLE) == 81
    for s in range(17):
        for t in range(17):
            d = classify_real(s, t)
            assert d.real_dim == 2 ** (s + t)
            assert (d.base, d.N, d.double) == classification_oracle(s, t)


def test_periodicity():
    for s in range(9):
        for t in range(9):
            d = classify_real(s, t)
            assert classify_real(s + 8, t) == classify_real(s, t + 8) == d.tensor_real_matrix(16)


def test_classify_complex():
    assert str(classify_complex(0)) == "C"
    assert str(classify_complex(1)) == "C+C"
    assert str(classify_complex(4)) == "C[4]"
    for n in range(12):
        assert classify_complex(n).real_dim == 2 * 2 ** n


def test_even_subalgebra():
    assert even_subalgebra_signature(3, 0) == [(0, 2)]
    assert even_subalgebra_signature(2, 0) == [(0, 1)]
    assert (3, 0) in even_subalgebra_signature(1, 3)
    with pytest.raises(ValueError):
        even_subalgebra_signature(0, 0)
    for s in range(10):
        for t in range(10):
            if s == t == 0:
                continue
            opts = even_subalgebra_signature(s, t)
            ds = {classify_real(*o) for o in opts}
            assert len(ds) == 1
            assert ds.pop().real_dim * 2 == classify_real(s, t).real_dim
            # G+(R^{s,t}) = G+(R^{t,s})
            assert {classify_real(*o) for o in even_subalgebra_signature(t, s)} == \
                {classify_real(*o) for o in opts}


def test_representation_table():
    for n, pos, neg in REPRESENTATIONS:
        assert representation_counts(n, 0) == pos
        assert representation_counts(0, n) == neg
    assert representation_counts(0, 9) == (1, 32)
    for n, pos, neg in REPRESENTATIONS:
        assert representation_counts(n + 8, 0) == (pos[0], 16 * pos[1])
        assert representation_counts(0, n + 16) == (neg[0], 256 * neg[1])


def test_two_irreps_iff_central_odd_pseudoscalar():
    # nu = 2 exactly when I is central (n odd) and I^2 = 1
    from cliffalg import Signature, pseudoscalar_square
    for s in range(9):
        for t in range(9):
            nu, _ = representation_counts(s, t)
            n = s + t
            expected = n % 2 == 1 and pseudoscalar_square(Signature.from_counts(s, t)) == 1
            assert (nu == 2) == expected


def test_radon_hurwitz_row():
    assert [radon_hurwitz(N) for N in range(17)] == RADON_HURWITZ_ROW
    assert all(radon_hurwitz(2 * k) == 0 for k in range(65))
    assert radon_hurwitz(31) == 9 and radon_hurwitz(255) == 16


# ----------------------------------------------------------------- Pauli

def _c(z):
    return complex(z)


def test_pauli_generators():
    A = Algebra.from_counts(3, ring=COMPLEX_RATIONAL)
    e1, e2, e3 = A.gens
    assert pauli_rep(e1) == [[0, 1], [1, 0]]
    assert pauli_rep(A.one()) == [[1, 0], [0, 1]]
    assert pauli_rep(e1 * e2 * e3) == [[CPair(0, 1), 0], [0, CPair(0, 1)]]
    with pytest.raises(DimensionError):
        pauli_rep(Algebra.from_counts(2).one())


def test_pauli_element_formula():
    rng = random.Random(2)
    A = Algebra.from_counts(3)
    I = A.pseudoscalar()
    for _ in range(10):
        al, be = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))
        a = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        b = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        x = al + A.vector(a) + A.vector(b) * I + be * I
        expect = [[CPair(al + a[2], be + b[2]), CPair(a[0] + b[1], b[0] - a[1])],
                  [CPair(a[0] - b[1], b[0] + a[1]), CPair(al - a[2], be - b[2])]]
        assert pauli_rep(x) == expect


def test_pauli_homomorphism_against_numpy():
    A = Algebra.from_counts(3, ring=FLOAT)
    rng = random.Random(9)
    for _ in range(50):
        x, y = rand_mv(A, rng, 6), rand_mv(A, rng, 6)
        got = np.array([[_c(z) for z in row] for row in pauli_rep(x * y)])
        prod = np.array([[_c(z) for z in row] for row in pauli_matrix_product(pauli_rep(x), pauli_rep(y))])
        assert np.abs(got - prod).max() < 1e-12
        assert np.abs(got - pauli_oracle((x * y).terms)).max() < 1e-12


# ----------------------------------------------------------------- octonions

def test_octonion_basics():
    O = octonion_algebra()
    e = O.gens
    assert octonion_product(O.one(), e[2]) == e[2] == octonion_product(e[2], O.one())
    assert octonion_product(e[0], e[0]) == -1
    assert octonion_product(e[0], e[1]) == e[3]
    assert octonion_product(e[1], e[0]) == -e[3]
    with pytest.raises(CliffordError):
        octonion_product(O.e(1, 2), e[0])


def test_octonion_non_associative():
    O = octonion_algebra()
    e = O.gens
    lhs = octonion_product(octonion_product(e[0], e[1]), e[2])
    rhs = octonion_product(e[0], octonion_product(e[1], e[2]))
    assert lhs != rhs


def test_octonion_alternative_exact():
    rng = random.Random(3)
    O = octonion_algebra()
    for _ in range(10):
        a, b = (rand_mv(O, rng, 5, grades=(0, 1)) for _ in range(2))
        assert octonion_product(octonion_product(a, a), b) == octonion_product(a, octonion_product(a, b))
        assert octonion_norm2(octonion_product(a, b)) == octonion_norm2(a) * octonion_norm2(b)


@given(st.lists(st.floats(-3, 3), min_size=16, max_size=16))
def test_octonion_norm_multiplicative(cs):
    O = octonion_algebra(FLOAT)
    a = cs[0] + O.vector(cs[1:8])
    b = cs[8] + O.vector(cs[9:16])
    na, nb = math.sqrt(octonion_norm2(a)), math.sqrt(octonion_norm2(b))
    nab = math.sqrt(octonion_norm2(octonion_product(a, b)))
    assert abs(nab - na * nb) <= 1e-10 * max(1.0, na * nb)


def test_descriptor_line():
    assert classify_real(1, 3).line(1, 3) == "1,3,H,2,0"
    assert MatrixAlgebra("R", 1, True).line(1, 0) == "1,0,R,1,1"
