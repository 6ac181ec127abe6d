"""Scalar rings for multivector coefficients.

A ring object does not wrap its elements. Elements are plain Python numbers
(``float``, ``int``, ``Fraction``) or :class:`CPair` for the complex case, and
the ring only knows how to coerce, test for zero, divide and format them.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

# relative pruning tolerance for float coefficients
FLOAT_TOL = 1e-12


class CPair:
    """A complex number stored as a pair (re, im) over some real ring.

    Used to realize complex scalars over exact rationals, which Python's
    builtin ``complex`` cannot do.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re
        self.im = im

    def _lift(self, other):
        if isinstance(other, CPair):
            return other
        if isinstance(other, complex):
            return CPair(other.real, other.imag)
        return CPair(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return CPair(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return CPair(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return CPair(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (CPair, complex)):
            o = self._lift(other)
            return CPair(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        return CPair(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by complex zero")
        num = self * o.conjugate()
        return CPair(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def conjugate(self):
        return CPair(self.re, -self.im)

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, (CPair, complex, int, float, Fraction)):
            o = self._lift(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CPair({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


class Ring:
    name = "ring"
    exact = True

    def coerce(self, v):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def magnitude(self, c) -> float:
        return abs(float(c))

    def is_zero(self, c, scale: float = 0.0) -> bool:
        return c == 0

    def div(self, a, b):
        raise NotImplementedError

    def fmt(self, c) -> str:
        return str(c)

    def __repr__(self):
        return f"<ring {self.name}>"

    # rings are singletons per parameters, compare by name
    def __eq__(self, other):
        return isinstance(other, Ring) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


class FloatRing(Ring):
    name = "float"
    exact = False

    def coerce(self, v):
        if isinstance(v, CPair):
            if v.im != 0:
                raise TypeError("complex value in a real ring")
            v = v.re
        return float(v)

    def is_zero(self, c, scale=0.0):
        return abs(c) <= FLOAT_TOL * scale

    def div(self, a, b):
        return a / b

    def fmt(self, c):
        return repr(float(c))


class IntegerRing(Ring):
    name = "integer"

    def coerce(self, v):
        if isinstance(v, bool):
            return int(v)
        if isinstance(v, int):
            return v
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, float) and v.is_integer():
            return int(v)
        raise TypeError(f"{v!r} is not an integer")

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b} in the integers")
        return q


class RationalRing(Ring):
    name = "rational"

    def coerce(self, v):
        if isinstance(v, CPair):
            if v.im != 0:
                raise TypeError("complex value in a real ring")
            v = v.re
        if isinstance(v, (Rational, str)):
            return Fraction(v)
        if isinstance(v, float):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} to a rational")

    def div(self, a, b):
        return Fraction(a) / b

    def fmt(self, c):
        return str(c)


class ComplexPairRing(Ring):
    """Complex numbers as pairs over a real base ring (float or rational)."""

    def __init__(self, base: Ring):
        self.base = base
        self.exact = base.exact
        self.name = f"complex[{base.name}]"

    def coerce(self, v):
        b = self.base
        if isinstance(v, CPair):
            return CPair(b.coerce(v.re), b.coerce(v.im))
        if isinstance(v, complex):
            return CPair(b.coerce(v.real), b.coerce(v.imag))
        return CPair(b.coerce(v), b.coerce(0))

    def magnitude(self, c):
        return abs(c)

    def is_zero(self, c, scale=0.0):
        if self.exact:
            return c.re == 0 and c.im == 0
        return abs(c) <= FLOAT_TOL * scale

    def div(self, a, b):
        return self.coerce(a) / b

    def fmt(self, c):
        return str(c)


FLOAT = FloatRing()
INTEGER = IntegerRing()
RATIONAL = RationalRing()
COMPLEX_FLOAT = ComplexPairRing(FLOAT)
COMPLEX_RATIONAL = ComplexPairRing(RATIONAL)
