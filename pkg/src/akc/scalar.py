"""Exact Gaussian rationals, the coefficient field Q(i) of every form and matrix.

A value is stored as ``(a + b i) / d`` with integers ``a, b`` and ``d > 0`` and
``gcd(a, b, d) == 1``.  That triple is unique for each number, so structural
equality is numerical equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["GaussianRational", "ZERO", "ONE", "I", "as_scalar"]


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __new__(cls, re=0, im=0):
        if isinstance(re, GaussianRational) and im == 0:
            return re
        re = _as_fraction(re)
        im = _as_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return _make(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @classmethod
    def from_parts(cls, a: int, b: int, d: int = 1) -> "GaussianRational":
        """Build ``(a + b i) / d`` from integers, normalising signs and common factors."""
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        return _make(a, b, d)

    # -- accessors -----------------------------------------------------------------
    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def parts(self) -> tuple[int, int, int]:
        """The canonical integer triple ``(a, b, d)``."""
        return self._a, self._b, self._d

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        if self._b == 0:
            return self
        return _raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """``|z|^2`` as a rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return _make(self._a + o._a, self._b + o._b, self._d)
        return _make(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return _make(self._a - o._a, self._b - o._b, self._d)
        return _make(self._a * o._d - o._a * self._d, self._b * o._d - o._b * self._d, self._d * o._d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        if b1 == 0 and b2 == 0:
            return _make(a1 * a2, 0, self._d * o._d)
        return _make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverse()

    def _inverse(self):
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return _make(d * a, -d * b, n)

    def __neg__(self):
        return _raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self._inverse()) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ----------------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, complex):
                return self == GaussianRational(Fraction(other.real), Fraction(other.imag))
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    # -- rendering -----------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re, im = self.real, self.imag
        if im == 0:
            return _frac_str(re)
        im_txt = "i" if im == 1 else "-i" if im == -1 else _frac_str(im) + "i"
        if re == 0:
            return im_txt
        sign = "" if im_txt.startswith("-") else "+"
        return f"{_frac_str(re)}{sign}{im_txt}"


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _raw(a, b, d):
    z = object.__new__(GaussianRational)
    z._a = a
    z._b = b
    z._d = d
    return z


def _make(a, b, d):
    if a == 0 and b == 0:
        return ZERO
    g = gcd(a, b, d) if b else gcd(a, d)
    if g != 1:
        a //= g
        b //= g
        d //= g
    return _raw(a, b, d)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact scalar from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return _raw(x, 0, 1) if x else ZERO
    if isinstance(x, Fraction):
        return _make(x.numerator, 0, x.denominator)
    if isinstance(x, Rational):
        return _make(x.numerator, 0, x.denominator)
    return None


def as_scalar(x) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational; floats are rejected on purpose."""
    z = _coerce(x)
    if z is None:
        if isinstance(x, str):
            return GaussianRational(Fraction(x))
        raise TypeError(f"not an exact scalar: {x!r}")
    return z


ZERO = _raw(0, 0, 1)
ONE = _raw(1, 0, 1)
I = _raw(0, 1, 1)
