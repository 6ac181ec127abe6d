"""Outermorphisms and the maps built from them.

An outermorphism is stored by the matrix of its action on vectors (column j
is f(e_j) in the target basis). Its action on a basis blade e_A is the
outer product of the images of the generators in A, computed on demand.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence

from . import _linalg
from .core import Algebra, Multivector, Signature, indices_of
from .errors import AlgebraMismatch, DegenerateSignature, DimensionError, NotInvertible
from .products import outer, pseudoscalar_inverse


class LinearMap:
    """A linear map between algebras given by a function on multivectors."""

    def __init__(self, fn: Callable[[Multivector], Multivector], source: Algebra,
                 target: Optional[Algebra] = None, name: str = "map"):
        self.fn = fn
        self.source = source
        self.target = target if target is not None else source
        self.name = name

    def __call__(self, x: Multivector) -> Multivector:
        if x.alg != self.source:
            raise AlgebraMismatch(f"{self.name} acts on {self.source}, got {x.alg}")
        return self.fn(x)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target != self.source:
            raise AlgebraMismatch("composition of incompatible maps")
        return LinearMap(lambda x: self(other(x)), other.source, self.target,
                         f"{self.name}.{other.name}")

    def __matmul__(self, other):
        return self.compose(other)


class Outermorphism(LinearMap):
    """The outermorphism extension f_wedge of a linear map of vectors."""

    def __init__(self, matrix: Sequence[Sequence], source: Algebra, target: Optional[Algebra] = None):
        target = target if target is not None else source
        ring = source.ring
        if target.ring != ring:
            raise AlgebraMismatch("source and target rings differ")
        M = [[ring.coerce(c) for c in row] for row in matrix]
        if len(M) != target.n or any(len(r) != source.n for r in M):
            raise DimensionError(
                f"matrix must be {target.n}x{source.n} for {source} -> {target}")
        self.matrix = M
        self._cols = [target.vector([M[i][j] for i in range(target.n)]) for j in range(source.n)]
        super().__init__(self._apply, source, target, "outermorphism")

    @classmethod
    def identity(cls, alg: Algebra) -> "Outermorphism":
        return cls(_linalg.identity(alg.n, alg.ring), alg)

    @classmethod
    def from_function(cls, fn: Callable[[Multivector], Multivector], source: Algebra,
                      target: Optional[Algebra] = None) -> "Outermorphism":
        """Outermorphism agreeing with ``fn`` on the generators of ``source``."""
        target = target if target is not None else source
        cols = []
        for e in source.gens:
            v = fn(e)
            if v.alg != target:
                raise AlgebraMismatch("function leaves the target algebra")
            if any(g != 1 for g in v.grades()):
                raise ValueError("function does not map vectors to vectors")
            cols.append(v.vector_coeffs())
        return cls(_linalg.transpose(cols) if cols else [[] for _ in range(target.n)], source, target)

    def image(self, j: int) -> Multivector:
        """f(e_j), 1-based."""
        return self._cols[j - 1]

    def _blade(self, mask: int) -> Multivector:
        out = self.target.one()
        for i in indices_of(mask):
            out = outer(out, self._cols[i - 1])
            if out.is_zero():
                break
        return out

    def _apply(self, x: Multivector) -> Multivector:
        out = self.target.zero()
        for m, c in x.terms.items():
            out = out + self._blade(m) * c
        return out

    def compose(self, other):
        """self after other; outermorphisms compose to outermorphisms."""
        if isinstance(other, Outermorphism):
            if other.target != self.source:
                raise AlgebraMismatch("composition of incompatible maps")
            if self.source.n == 0:
                # empty inner dimension: the list form cannot carry the column count
                zero = self.source.ring.zero
                M = [[zero] * other.source.n for _ in range(self.target.n)]
            else:
                M = _linalg.matmul(self.matrix, other.matrix)
            return Outermorphism(M, other.source, self.target)
        return super().compose(other)

    def __eq__(self, other):
        return (isinstance(other, Outermorphism) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"Outermorphism({self.matrix!r}, {self.source} -> {self.target})"


def _check_square(F: Outermorphism):
    if F.source != F.target:
        raise DimensionError("operation needs a map of an algebra to itself")


def _metric_diag(sig: Signature):
    if not sig.nondegenerate:
        raise DegenerateSignature("operation needs a nondegenerate signature")
    return sig.values


def adjoint(F: Outermorphism) -> Outermorphism:
    """F* with F*(x) * y = x * F(y): the matrix G_s^-1 F^T G_t."""
    ring = F.source.ring
    gs = _metric_diag(F.source.sig)
    gt = _metric_diag(F.target.sig)
    M = [[ring.div(ring.coerce(F.matrix[j][i]) * gt[j], gs[i]) for j in range(F.target.n)]
         for i in range(F.source.n)]
    return Outermorphism(M, F.target, F.source)


def determinant(F: Outermorphism):
    """det f from f_wedge(I) = (det f) I; valid in any signature."""
    _check_square(F)
    alg = F.source
    return F(alg.pseudoscalar())[(1 << alg.n) - 1]


def dual_map(F: LinearMap) -> LinearMap:
    """F^c(x) = F(x I) I^-1."""
    if F.source != F.target:
        raise DimensionError("dual map needs a map of an algebra to itself")
    alg = F.source
    Iinv = pseudoscalar_inverse(alg)
    I = alg.pseudoscalar()
    return LinearMap(lambda x: F(x * I) * Iinv, alg, alg, f"{F.name}^c")


def adjugate(F: Outermorphism) -> LinearMap:
    """F^adj = (F*)^c."""
    _check_square(F)
    return dual_map(adjoint(F))


def inverse(F: Outermorphism) -> Outermorphism:
    """f_wedge^-1 = (det f)^-1 f_wedge^{*c}, returned as an outermorphism."""
    _check_square(F)
    d = determinant(F)
    if d == 0 or (not F.source.ring.exact and abs(d) < 1e-12):
        raise NotInvertible("singular")
    adj = adjugate(F)
    return Outermorphism.from_function(lambda v: adj(v) / d, F.source)


def is_self_adjoint(F: Outermorphism, tol: float = 1e-10) -> bool:
    A = adjoint(F)
    if F.source.ring.exact:
        return A == F
    return all(abs(a - b) <= tol for ra, rb in zip(A.matrix, F.matrix) for a, b in zip(ra, rb))


# ----------------------------------------------------------------- mother algebra

def mother_algebra(alg: Algebra) -> Algebra:
    """R^{n,n}: generators 1..n square to +1, n+1..2n to -1."""
    n = alg.n
    if 2 * n > 64:
        raise DimensionError("mother algebra needs 2n <= 64 generators")
    return Algebra(Signature.from_counts(n, n), alg.ring)


def mother_embed(x: Multivector) -> Multivector:
    """Embed Cl(R^{s,t,u}) into Cl(R^{n,n}).

    Generator k maps to f+_k if it squares to 1, to f-_k if it squares to -1
    and to the null vector f+_k - f-_k if it squares to 0. The images are
    mutually orthogonal, so the outermorphism extension is multiplicative.
    """
    alg = x.alg
    sig = alg.sig
    if not sig.unit:
        raise ValueError("mother algebra embedding needs metric values in {+1, -1, 0}")
    target = mother_algebra(alg)
    n = alg.n
    M = [[0] * n for _ in range(2 * n)]
    for k, r in enumerate(sig.values):
        if r == 1:
            M[k][k] = 1
        elif r == -1:
            M[n + k][k] = 1
        else:
            M[k][k] = 1
            M[n + k][k] = -1
    return Outermorphism(M, alg, target)(x)


__all__ = ["LinearMap", "Outermorphism", "adjoint", "determinant", "dual_map", "adjugate",
           "inverse", "is_self_adjoint", "mother_algebra", "mother_embed"]
