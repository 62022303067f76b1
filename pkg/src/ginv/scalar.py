"""Scalar fields: exact Gaussian rationals and complex floats.

Exact scalars are stored in the cheapest faithful form. A purely real value is
a ``gmpy2.mpq``; a value with nonzero imaginary part is a
:class:`GaussianRational` whose parts are ``mpq``. Arithmetic on
:class:`GaussianRational` normalizes back to ``mpq`` whenever the imaginary part
cancels, so real matrices never pay for complex bookkeeping.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "Scalar",
    "ExactScalar",
    "to_exact",
    "conj",
    "abs2",
    "is_real",
    "real_part",
    "imag_part",
    "parse_rational",
    "format_rational",
    "to_complex",
]

_MPQ = type(mpq(0))


class GaussianRational:
    """Complex number with arbitrary-precision rational parts.

    Instances are immutable. Construct through :func:`to_exact` or
    :meth:`make`, which return a plain ``mpq`` when the imaginary part is zero.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: object, im: object = 0) -> None:
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @staticmethod
    def make(re, im):
        """Return ``re + i*im`` as ``mpq`` if real, else as a GaussianRational."""
        if im == 0:
            return mpq(re)
        return GaussianRational(re, im)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational.make(self.re + other.re, self.im + other.im)
        if isinstance(other, (_MPQ, int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational.make(self.re - other.re, self.im - other.im)
        if isinstance(other, (_MPQ, int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (_MPQ, int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational.make(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (_MPQ, int, Fraction)):
            if other == 0:
                return mpq(0)
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            d = other.re * other.re + other.im * other.im
            return GaussianRational.make(
                (self.re * other.re + self.im * other.im) / d,
                (self.im * other.re - self.re * other.im) / d,
            )
        if isinstance(other, (_MPQ, int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (_MPQ, int, Fraction)):
            d = self.re * self.re + self.im * self.im
            return GaussianRational.make(other * self.re / d, -other * self.im / d)
        return NotImplemented

    def __pow__(self, p: int):
        if not isinstance(p, int):
            return NotImplemented
        if p < 0:
            return 1 / (self ** (-p))
        result = mpq(1)
        base = self
        while p:
            if p & 1:
                result = base * result
            base = base * base
            p >>= 1
        return result

    # comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (_MPQ, int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


ExactScalar = Union[_MPQ, GaussianRational]
Scalar = Union[_MPQ, GaussianRational, complex]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str):
    """Parse ``"p/q"``, ``"p"`` or a decimal string like ``"0.25"`` into ``mpq``."""
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m:
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(int(num), int(den) if den else 1)
    try:
        return mpq(Fraction(text.strip()))
    except ValueError:
        raise ValueError(f"malformed rational string {text!r}") from None


def format_rational(q) -> str:
    """Inverse of :func:`parse_rational`: ``"p/q"`` or ``"p"`` for integers."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_exact(value) -> ExactScalar:
    """Coerce ints, fractions, rational strings and Gaussian rationals to an exact scalar.

    Python ``complex`` and ``float`` values are converted through their exact
    binary expansion, so ``0.1`` does not become ``1/10``.
    """
    if isinstance(value, (GaussianRational, _MPQ)):
        return value
    if isinstance(value, bool):
        return mpq(int(value))
    if isinstance(value, (int, Rational)):
        return mpq(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        return mpq(Fraction(value))
    if isinstance(value, complex):
        return GaussianRational.make(mpq(Fraction(value.real)), mpq(Fraction(value.imag)))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def conj(x):
    if isinstance(x, (GaussianRational, complex)):
        return x.conjugate()
    return x


def abs2(x):
    """Squared modulus; exact for exact scalars."""
    if isinstance(x, GaussianRational):
        return x.re * x.re + x.im * x.im
    if isinstance(x, complex):
        return x.real * x.real + x.imag * x.imag
    return x * x


def is_real(x) -> bool:
    if isinstance(x, GaussianRational):
        return False
    if isinstance(x, complex):
        return x.imag == 0
    return True


def real_part(x):
    if isinstance(x, (GaussianRational,)):
        return x.re
    if isinstance(x, complex):
        return x.real
    return x


def imag_part(x):
    if isinstance(x, GaussianRational):
        return x.im
    if isinstance(x, complex):
        return x.imag
    return mpq(0) if isinstance(x, _MPQ) else 0.0


def to_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return complex(x)
    return complex(float(x)) if isinstance(x, _MPQ) else complex(x)
