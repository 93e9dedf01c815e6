"""Exact Gaussian rationals ``a + b*i`` with ``a, b`` in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union["GaussianRational", Fraction, int]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """An element of Q(i).

    Both parts are :class:`fractions.Fraction`, hence always reduced with a
    positive denominator.  Instances are immutable and hashable; a value with
    zero imaginary part hashes and compares like the corresponding Fraction.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"`` or ``"p/q+r/si"`` as produced by :meth:`__str__`."""
        text = text.strip().replace(" ", "")
        if not text.endswith("i"):
            return cls(Fraction(text))
        body = text[:-1]
        # split at the last sign that is not the leading one
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-":
                return cls(Fraction(body[:pos]), _imag_part(body[pos:]))
        return cls(0, _imag_part(body))

    # -- structure -----------------------------------------------------
    def conj(self) -> "GaussianRational":
        if not self.im:
            return self
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __float__(self) -> float:
        if self.im:
            raise TypeError("value has a nonzero imaginary part")
        return float(self.re)

    def to_quad(self) -> list[int]:
        """``[re_num, re_den, im_num, im_den]`` serialization."""
        return [self.re.numerator, self.re.denominator,
                self.im.numerator, self.im.denominator]

    @classmethod
    def from_quad(cls, quad) -> "GaussianRational":
        a, b, c, d = quad
        return cls(Fraction(a, b), Fraction(c, d))

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not o.im:
            return GaussianRational(self.re / o.re, self.im / o.re)
        d = o.abs2()
        num = self * o.conj()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = f"{self.im}i"
        if not self.re:
            return im
        sign = "" if self.im < 0 else "+"
        return f"{self.re}{sign}{im}"


def _imag_part(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def frac_str(x) -> str:
    """Rational as ``"p/q"``, always with an explicit denominator."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def exact_str(x) -> str:
    """``"p/q"`` or ``"p/q+r/si"``; anything non-numeric falls back to ``str``."""
    try:
        x = GaussianRational.coerce(x)
    except TypeError:
        return str(x)
    if not x.im:
        return frac_str(x.re)
    sign = "-" if x.im < 0 else "+"
    return f"{frac_str(x.re)}{sign}{frac_str(abs(x.im))}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
