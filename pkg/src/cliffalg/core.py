"""Clifford algebras Cl(X, R, r) over a finite ordered generator set.

A basis blade is a subset A of the generators, stored as a bitmask (bit i set
means e_{i+1} is present). The product of basis blades is

    AB = tau(A, B) * (A xor B)

where tau collects the reordering sign and the metric factors r(e_i) of the
generators shared by A and B. A multivector is a sparse map mask -> scalar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

import numpy as np

from . import _linalg
from .errors import AlgebraMismatch, DimensionError, NotInvertible
from .rings import FLOAT, INTEGER, RATIONAL, CPair, Ring

MAX_GENERATORS = 64
# below this dimension the reordering parities are tabulated
_TABLE_MAX_N = 10


def grade_of(mask: int) -> int:
    return mask.bit_count()


def mask_of(indices: Iterable[int]) -> int:
    """Mask for a set of 1-based generator indices."""
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> Tuple[int, ...]:
    """1-based generator indices present in ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def reorder_sign(a: int, b: int) -> int:
    """Sign of sorting the word A B into index order.

    Counts pairs (i in A, j in B) with i > j: for every bit of B, the number
    of strictly higher bits of A.
    """
    a >>= 1
    n = 0
    while a:
        n += (a & b).bit_count()
        a >>= 1
    return -1 if n & 1 else 1


def parity_table(n: int) -> np.ndarray:
    """Reordering parities for all mask pairs, shape (2^n, 2^n), values 0/1."""
    size = 1 << n
    idx = np.arange(size)
    pc = np.array([int(i).bit_count() for i in range(size)], dtype=np.int64)
    par = np.zeros((size, size), dtype=np.int8)
    for i in range(n):
        above = (pc[idx >> (i + 1)] & 1).astype(np.int8)
        bit = ((idx >> i) & 1).astype(np.int8)
        par ^= np.outer(above, bit)
    return par


# --------------------------------------------------------------------------
# signatures

@dataclass(frozen=True)
class Signature:
    """Metric values r(e_i) of the generators, in generator order."""

    values: Tuple = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vals = tuple(self.values)
        if len(vals) > MAX_GENERATORS:
            raise DimensionError(f"at most {MAX_GENERATORS} generators are supported")
        object.__setattr__(self, "values", vals)
        unit = all(isinstance(v, (int, Fraction)) and v in (1, -1, 0) for v in vals)
        neg = zero = 0
        for i, v in enumerate(vals):
            if v == 0:
                zero |= 1 << i
            elif unit and v == -1:
                neg |= 1 << i
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "neg_mask", neg)
        object.__setattr__(self, "zero_mask", zero)

    @classmethod
    def from_counts(cls, s: int, t: int = 0, u: int = 0) -> "Signature":
        """Signature with s positive, then t negative, then u null generators."""
        return cls((1,) * s + (-1,) * t + (0,) * u)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``R(s,t,u)`` / ``R(s,t)`` or ``sig[+,-,0,...]``."""
        text = text.strip()
        m = re.fullmatch(r"R\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?(?:,\s*(\d+)\s*)?\)", text)
        if m:
            s, t, u = (int(g) if g else 0 for g in m.groups())
            return cls.from_counts(s, t, u)
        m = re.fullmatch(r"sig\[(.*)\]", text)
        if m:
            table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1, "0": 0}
            items = [p.strip() for p in m.group(1).split(",") if p.strip()]
            try:
                return cls(tuple(table[p] for p in items))
            except KeyError as exc:
                raise ValueError(f"bad signature entry {exc.args[0]!r}") from None
        raise ValueError(f"cannot parse signature {text!r}")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def s(self) -> int:
        return sum(1 for v in self.values if v > 0)

    @property
    def t(self) -> int:
        return sum(1 for v in self.values if v < 0)

    @property
    def u(self) -> int:
        return sum(1 for v in self.values if v == 0)

    @property
    def counts(self) -> Tuple[int, int, int]:
        return self.s, self.t, self.u

    @property
    def nondegenerate(self) -> bool:
        return self.zero_mask == 0

    @property
    def is_euclidean(self) -> bool:
        return all(v == 1 for v in self.values)

    @property
    def is_definite(self) -> bool:
        return self.nondegenerate and (self.t == 0 or self.s == 0)

    def metric(self, m: int):
        """Product of r(e_i) over the generators in mask m."""
        if self.unit:
            if m & self.zero_mask:
                return 0
            return -1 if (m & self.neg_mask).bit_count() & 1 else 1
        p = 1
        for i in indices_of(m):
            p = p * self.values[i - 1]
        return p

    def _parity(self):
        tab = self._cache.get("parity")
        if tab is None and self.n <= _TABLE_MAX_N:
            tab = parity_table(self.n).tobytes()
            self._cache["parity"] = tab
        return tab

    def tau(self, a: int, b: int):
        """tau(A, B): reordering sign times the metric over A & B."""
        m = a & b
        met = self.metric(m) if m else 1
        if met == 0:
            return 0
        return met if reorder_sign(a, b) > 0 else -met

    def tau_table(self) -> np.ndarray:
        """tau over all mask pairs as an object/int array (small n only)."""
        if self.n > _TABLE_MAX_N:
            raise DimensionError("tau table only for n <= 10")
        size = 1 << self.n
        par = np.frombuffer(self._parity(), dtype=np.int8).reshape(size, size)
        idx = np.arange(size)
        meet = idx[:, None] & idx[None, :]
        met = np.array([self.metric(m) for m in range(size)], dtype=object if not self.unit else np.int64)
        return np.where(par == 1, -1, 1) * met[meet]

    def __str__(self):
        if self.unit and list(self.values) == sorted(self.values, key=lambda v: (-v if v else 2)):
            return f"R({self.s},{self.t},{self.u})"
        sym = {1: "+", -1: "-", 0: "0"}
        return "sig[" + ",".join(sym.get(v, str(v)) for v in self.values) + "]"


def pseudoscalar_square(sig: Signature):
    """I^2 = (-1)^(n(n-1)/2 + t) when u = 0, else 0."""
    s, t, u = sig.counts
    n = sig.n
    if u:
        return 0
    return -1 if (n * (n - 1) // 2 + t) % 2 else 1


# --------------------------------------------------------------------------
# algebras and multivectors

@dataclass(frozen=True)
class Algebra:
    """Cl(X, R, r): a signature together with a coefficient ring."""

    sig: Signature
    ring: Ring = RATIONAL

    @classmethod
    def from_counts(cls, s, t=0, u=0, ring: Ring = RATIONAL) -> "Algebra":
        return cls(Signature.from_counts(s, t, u), ring)

    @property
    def n(self) -> int:
        return self.sig.n

    def with_ring(self, ring: Ring) -> "Algebra":
        return Algebra(self.sig, ring)

    def with_signature(self, sig: Signature) -> "Algebra":
        return Algebra(sig, self.ring)

    # element constructors
    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def scalar(self, c) -> "Multivector":
        return Multivector(self, {0: c})

    def one(self) -> "Multivector":
        return self.scalar(1)

    def blade(self, mask: int, coeff=1) -> "Multivector":
        return Multivector(self, {mask: coeff})

    def e(self, *indices: int) -> "Multivector":
        """Geometric product e_i e_j ... of generators (1-based)."""
        x = self.one()
        for i in indices:
            if not 1 <= i <= self.n:
                raise IndexError(f"generator e{i} outside 1..{self.n}")
            x = x * self.blade(1 << (i - 1))
        return x

    @property
    def gens(self) -> Tuple["Multivector", ...]:
        return tuple(self.blade(1 << i) for i in range(self.n))

    def vector(self, coeffs: Sequence) -> "Multivector":
        if len(coeffs) != self.n:
            raise DimensionError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return Multivector(self, {1 << i: c for i, c in enumerate(coeffs)})

    def from_terms(self, terms: Mapping[int, object]) -> "Multivector":
        return Multivector(self, dict(terms))

    def pseudoscalar(self) -> "Multivector":
        return self.blade((1 << self.n) - 1)

    def __str__(self):
        return f"Cl({self.sig}, {self.ring.name})"


class Multivector:
    """An immutable element of an :class:`Algebra`.

    Operators: ``+ - *`` (geometric), ``^`` (outer), ``<<`` (left inner,
    x << y is x contracted onto y), ``>>`` (right inner), ``/`` by scalars.
    """

    __slots__ = ("alg", "_terms")

    def __init__(self, alg: Algebra, terms: Mapping[int, object] = None):
        ring = alg.ring
        clean = {}
        if terms:
            vals = {m: ring.coerce(c) for m, c in terms.items()}
            scale = max((ring.magnitude(c) for c in vals.values()), default=0.0)
            top = (1 << alg.n) - 1
            for m, c in vals.items():
                if m & ~top:
                    raise DimensionError(f"mask {m:#x} outside the {alg.n} generators")
                if not ring.is_zero(c, scale):
                    clean[m] = c
        self.alg = alg
        self._terms = clean

    @classmethod
    def _raw(cls, alg, acc, scale=0.0):
        # acc already holds ring elements; drop (near) zeros
        ring = alg.ring
        obj = cls.__new__(cls)
        obj.alg = alg
        if ring.exact:
            obj._terms = {m: c for m, c in acc.items() if c != 0}
        else:
            if not scale:
                scale = max((ring.magnitude(c) for c in acc.values()), default=0.0)
            obj._terms = {m: c for m, c in acc.items() if not ring.is_zero(c, scale)}
        return obj

    # ---- access
    @property
    def terms(self) -> Dict[int, object]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, object]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (grade_of(kv[0]), kv[0])))

    def __getitem__(self, mask: int):
        return self._terms.get(mask, self.alg.ring.zero)

    def coeff(self, *indices: int):
        return self[mask_of(indices)]

    @property
    def scalar(self):
        return self[0]

    @property
    def ring(self) -> Ring:
        return self.alg.ring

    @property
    def sig(self) -> Signature:
        return self.alg.sig

    def max_abs(self) -> float:
        return max((self.ring.magnitude(c) for c in self._terms.values()), default=0.0)

    def norm2(self) -> float:
        """Euclidean norm of the coefficient vector (not a metric norm)."""
        return sum(self.ring.magnitude(c) ** 2 for c in self._terms.values()) ** 0.5

    def grades(self) -> Tuple[int, ...]:
        return tuple(sorted({grade_of(m) for m in self._terms}))

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def is_even(self) -> bool:
        return all(grade_of(m) % 2 == 0 for m in self._terms)

    def is_odd(self) -> bool:
        return all(grade_of(m) % 2 == 1 for m in self._terms)

    def vector_coeffs(self) -> list:
        return [self[1 << i] for i in range(self.alg.n)]

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # ---- comparison
    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.alg == other.alg and self._terms == other._terms
        if isinstance(other, (int, float, Fraction, CPair)):
            return self._terms == ({0: self.ring.coerce(other)} if other != 0 else {})
        return NotImplemented

    __hash__ = None

    def isclose(self, other, tol: float = 1e-10) -> bool:
        """Coefficient-wise closeness relative to the larger operand."""
        if not isinstance(other, Multivector):
            other = self.alg.scalar(other)
        self._check(other)
        diff = self - other
        scale = max(self.max_abs(), other.max_abs(), 1.0)
        return diff.max_abs() <= tol * scale

    # ---- linear structure
    def _check(self, other: "Multivector"):
        if self.alg != other.alg:
            raise AlgebraMismatch(f"cannot combine elements of {self.alg} and {other.alg}")

    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return Multivector._raw(self.alg, acc, max(self.max_abs(), other.max_abs()))

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.alg, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Multivector":
        c = self.ring.coerce(c)
        return Multivector._raw(self.alg, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return product(self, other, GEOMETRIC)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            if not other.is_scalar():
                raise TypeError("division only by scalars; use inverse()")
            other = other.scalar
        ring = self.ring
        d = ring.coerce(other)
        if d == 0:
            raise ZeroDivisionError("division of a multivector by zero")
        return Multivector._raw(self.alg, {m: ring.div(c, d) for m, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return inverse(self) ** (-k)
        out = self.alg.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __xor__(self, other):
        return product(self, self._lift(other), OUTER)

    def __rxor__(self, other):
        return product(self._lift(other), self, OUTER)

    def __lshift__(self, other):
        return product(self, self._lift(other), LEFT)

    def __rshift__(self, other):
        return product(self, self._lift(other), RIGHT)

    # ---- grades and involutions
    def grade(self, *ks: int) -> "Multivector":
        """Projection onto the listed grades, <x>_{k1,k2,...}."""
        keep = set(ks)
        return Multivector._raw(self.alg, {m: c for m, c in self._terms.items() if grade_of(m) in keep})

    def _signed(self, sign_of_grade) -> "Multivector":
        return Multivector._raw(
            self.alg, {m: (c if sign_of_grade(grade_of(m)) > 0 else -c) for m, c in self._terms.items()})

    def involute(self) -> "Multivector":
        """Grade involution x^star: (-1)^k on grade k."""
        return self._signed(lambda k: -1 if k % 2 else 1)

    def reverse(self) -> "Multivector":
        """Reversion x^dagger: (-1)^(k(k-1)/2) on grade k."""
        return self._signed(lambda k: -1 if (k * (k - 1) // 2) % 2 else 1)

    def conjugate(self) -> "Multivector":
        """Clifford conjugate x^box = (x^star)^dagger."""
        return self._signed(lambda k: -1 if (k * (k + 1) // 2) % 2 else 1)

    def flip(self, grades: Iterable[int]) -> "Multivector":
        """[x]_{i1,...,ik}: negate the listed grades."""
        gs = set(grades)
        return self._signed(lambda k: -1 if k in gs else 1)

    def flip_nonscalar(self) -> "Multivector":
        """[x]: negate every grade except 0."""
        return self._signed(lambda k: -1 if k else 1)

    def astype(self, ring: Ring) -> "Multivector":
        return Multivector(self.alg.with_ring(ring), self._terms)

    def inv(self) -> "Multivector":
        return inverse(self)

    # ---- text
    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector({format_multivector(self)!r}, {self.alg})"


# product modes
GEOMETRIC, OUTER, LEFT, RIGHT, SCALAR, DOT = range(6)


def _keep(mode, a, b):
    if mode == GEOMETRIC:
        return True
    if mode == OUTER:
        return not a & b
    if mode == LEFT:
        return not a & ~b
    if mode == RIGHT:
        return not b & ~a
    if mode == SCALAR:
        return a == b
    return not a & ~b or not b & ~a


def product(x: Multivector, y: Multivector, mode: int = GEOMETRIC) -> Multivector:
    """Bilinear product of two multivectors, filtered on basis blades.

    The filters are the derived products: outer keeps A & B = 0, left inner
    A subset of B, right inner A superset of B, scalar A = B and dot either
    inclusion.
    """
    x._check(y)
    alg = x.alg
    sig = alg.sig
    acc: Dict[int, object] = {}
    par = sig._parity()
    size = 1 << sig.n
    metric = sig.metric
    for a, ca in x._terms.items():
        row = a * size
        for b, cb in y._terms.items():
            if mode and not _keep(mode, a, b):
                continue
            m = a & b
            if m:
                met = metric(m)
                if met == 0:
                    continue
            else:
                met = 1
            if par is not None:
                neg = par[row + b]
            else:
                neg = reorder_sign(a, b) < 0
            c = ca * cb
            if met != 1:
                c = met * c
            if neg:
                c = -c
            k = a ^ b
            acc[k] = acc[k] + c if k in acc else c
    scale = 0.0 if alg.ring.exact else x.max_abs() * y.max_abs()
    return Multivector._raw(alg, acc, scale)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    return product(x, y, GEOMETRIC)


def grade_project(x: Multivector, k: int) -> Multivector:
    if k < 0:
        raise ValueError("grade must be non-negative")
    return x.grade(k)


def involution(x: Multivector, kind) -> Multivector:
    """kind: 'grade' | 'reverse' | 'conjugate' | a collection of grades."""
    if kind == "grade":
        return x.involute()
    if kind == "reverse":
        return x.reverse()
    if kind == "conjugate":
        return x.conjugate()
    if isinstance(kind, str):
        raise ValueError(f"unknown involution {kind!r}")
    return x.flip(kind)


def pseudoscalar(alg: Algebra) -> Multivector:
    return alg.pseudoscalar()


# --------------------------------------------------------------------------
# inverses

def left_mult_matrix(x: Multivector):
    """Matrix of y -> x y on the 2^n basis blades (columns indexed by mask)."""
    alg = x.alg
    size = 1 << alg.n
    cols = []
    for b in range(size):
        col = [alg.ring.zero] * size
        for m, c in product(x, alg.blade(b)).terms.items():
            col[m] = c
        cols.append(col)
    return _linalg.transpose(cols)


def inverse(x: Multivector) -> Multivector:
    """Two-sided inverse of x.

    Versors and blades satisfy x x^dagger = scalar, which gives the inverse
    directly; anything else is solved as the linear system x y = 1.
    """
    if x.is_zero():
        raise NotInvertible("zero has no inverse")
    ring = x.ring
    if ring == INTEGER:
        raise NotInvertible("inverse needs a field; convert to the rationals first")
    xr = x.reverse()
    s = x * xr
    if s.is_scalar() and s.scalar != 0:
        # x x^dagger = s gives a right inverse, hence the inverse
        return xr / s.scalar
    if x.alg.n > 12:
        raise NotInvertible("general inverse limited to n <= 12")
    size = 1 << x.alg.n
    M = left_mult_matrix(x)
    rhs = [ring.one] + [ring.zero] * (size - 1)
    sol = _linalg.solve(M, rhs, ring)
    y = Multivector(x.alg, {m: c for m, c in enumerate(sol)})
    if not ring.exact and not (x * y).isclose(x.alg.one(), 1e-8):
        raise NotInvertible("element is numerically singular")
    return y


# --------------------------------------------------------------------------
# quadratic forms

def diagonalize_quadratic_form(Q) -> Tuple[list, Signature]:
    """Orthogonal basis for the symmetric bilinear form with matrix Q.

    Follows the inductive construction: pick a vector e with q(e) != 0
    (using e_i + e_j when every basis vector is isotropic), then replace each
    remaining x by x - (beta(x,e)/q(e)) e. Works over the rationals.

    Returns (P, sig) where the columns of P are the new basis vectors and
    P^T Q P = diag(sig.values).
    """
    Q = [[Fraction(c) for c in row] for row in Q]
    n = len(Q)
    if any(len(r) != n for r in Q):
        raise ValueError("quadratic form matrix must be square")
    if any(Q[i][j] != Q[j][i] for i in range(n) for j in range(n)):
        raise ValueError("quadratic form matrix must be symmetric")

    def beta(u, v):
        return sum(u[i] * Q[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j])

    pending = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    basis, diag = [], []
    while pending:
        k = next((i for i, v in enumerate(pending) if beta(v, v) != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(len(pending)) for j in range(i + 1, len(pending))
                         if beta(pending[i], pending[j]) != 0), None)
            if pair is None:
                basis.extend(pending)
                diag.extend([Fraction(0)] * len(pending))
                break
            i, j = pair
            pending[i] = [a + b for a, b in zip(pending[i], pending[j])]
            k = i
        e = pending.pop(k)
        qe = beta(e, e)
        pending = [[a - beta(x, e) / qe * b for a, b in zip(x, e)] for x in pending]
        basis.append(e)
        diag.append(qe)
    P = _linalg.transpose(basis)
    return P, Signature(tuple(diag))


# --------------------------------------------------------------------------
# text form

def format_multivector(x: Multivector, gen_prefix: str = "e") -> str:
    """Canonical text, terms ordered by (grade, mask), e.g. ``3 - 2*e1*e2``."""
    if x.is_zero():
        return "0"
    ring = x.ring
    parts = []
    for m, c in x.items():
        neg = False
        if not isinstance(c, CPair) and c < 0:
            neg, c = True, -c
        word = "*".join(f"{gen_prefix}{i}" for i in indices_of(m))
        cs = ring.fmt(c)
        if isinstance(c, CPair):
            cs = f"({cs})" if not cs.startswith("(") else cs
        if not word:
            body = cs
        elif c == 1:
            body = word
        else:
            body = f"{cs}*{word}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


__all__ = [
    "Algebra", "Multivector", "Signature", "product", "geometric_product", "grade_project",
    "involution", "pseudoscalar", "pseudoscalar_square", "inverse", "diagonalize_quadratic_form",
    "reorder_sign", "parity_table", "grade_of", "mask_of", "indices_of", "format_multivector",
    "left_mult_matrix", "GEOMETRIC", "OUTER", "LEFT", "RIGHT", "SCALAR", "DOT",
    "FLOAT", "INTEGER", "RATIONAL",
]
