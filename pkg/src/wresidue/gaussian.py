"""Exact arithmetic over the Gaussian rationals Q(i).

Every coefficient in the engine lives here: a pair of `fractions.Fraction`
values for the real and imaginary parts.  All operations are exact; floats
only appear through the explicit `to_complex` escape hatch used by the
numeric oracles.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

_FracLike = Union[int, Fraction]


class GRat:
    """A Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re: _FracLike = 0, im: _FracLike = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(value: "GRat | int | Fraction") -> "GRat":
        if isinstance(value, GRat):
            return value
        return GRat(value)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = GRat.of(other)
        return GRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __sub__(self, other):
        other = GRat.of(other)
        return GRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GRat.of(other) - self

    def __mul__(self, other):
        other = GRat.of(other)
        return GRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GRat":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GRat.of(other).inverse()

    def __rtruediv__(self, other):
        return GRat.of(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GRat":
        return GRat(self.re, -self.im)

    # -- comparisons / hash ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GRat(other)
        if not isinstance(other, GRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- conversions -------------------------------------------------------

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{imag}"

    def __repr__(self):
        return f"GRat({self.re!r}, {self.im!r})"


ZERO = GRat(0)
ONE = GRat(1)
I = GRat(0, 1)
