"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals."""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


def rational_arith(a, b, op: str) -> Fraction:
    """Apply ``op`` in ``+ - * /`` to two rationals.

    Division by zero raises ``ZeroDivisionError``.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


class GaussianRational:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x, 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = GaussianRational.coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return self * other.conj() * GaussianRational(1 / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0


I = GaussianRational(0, 1)


def gaussian_arith(a, b, op: str) -> GaussianRational:
    a, b = GaussianRational.coerce(a), GaussianRational.coerce(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def to_complex_f64(z) -> complex:
    """Round each part of ``z`` to the nearest double.

    Raises ``OverflowError`` when a part is outside the double range.
    """
    z = GaussianRational.coerce(z)
    try:
        re, im = float(z.re), float(z.im)
    except OverflowError as exc:
        raise OverflowError(f"{z} is not representable as a complex double") from exc
    if not (math.isfinite(re) and math.isfinite(im)):
        raise OverflowError(f"{z} is not representable as a complex double")
    return complex(re, im)
