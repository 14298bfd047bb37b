"""Exact Weyl algebra generated by q^, p^ with [q^, p^] = i (hbar = 1).

Elements are kept in normal order, all q^ to the left of all p^:
``{(m, n): c}`` stands for sum c * q^m p^n.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .scalars import GaussianRational

_I = GaussianRational(0, 1)
_MINUS_I = GaussianRational(0, -1)


def _ipow(base: GaussianRational, k: int) -> GaussianRational:
    out = GaussianRational(1)
    for _ in range(k):
        out = out * base
    return out


class WeylElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (m, n), c in (terms or {}).items():
            if m < 0 or n < 0:
                raise ValueError("exponents must be non-negative")
            c = GaussianRational.coerce(c)
            if c:
                clean[(m, n)] = clean.get((m, n), GaussianRational(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def scalar(cls, c) -> WeylElement:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, m: int, n: int, c=1) -> WeylElement:
        return cls({(m, n): c})

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == WeylElement.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((m + n for m, n in self.terms), default=0)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, GaussianRational(0)) + v
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, c) -> WeylElement:
        c = GaussianRational.coerce(c)
        return WeylElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        return self.scale(GaussianRational(1) / GaussianRational.coerce(other))

    def __repr__(self):
        return f"WeylElement({self.terms!r})"

    def __str__(self):
        return format_weyl(self)

    def adjoint(self) -> WeylElement:
        """Formal adjoint: reverse factor order and conjugate coefficients."""
        out = WeylElement()
        for (m, n), c in self.terms.items():
            out = out + reorder_pq(n, m).scale(c.conj())
        return out

    def anti_normal_terms(self) -> dict:
        """Coefficients in anti-normal order: ``{(n, m): c}`` for c p^n q^m."""
        out = {}
        for (m, n), c in self.terms.items():
            for k in range(min(m, n) + 1):
                coeff = c * _ipow(_I, k) * (comb(m, k) * comb(n, k) * factorial(k))
                key = (n - k, m - k)
                out[key] = out.get(key, GaussianRational(0)) + coeff
        return {k: v for k, v in out.items() if v}


def _coerce(x) -> WeylElement:
    if isinstance(x, WeylElement):
        return x
    return WeylElement.scalar(x)


def reorder_pq(n: int, m: int) -> WeylElement:
    """Normal-ordered form of p^n q^m."""
    return WeylElement({
        (m - k, n - k): _ipow(_MINUS_I, k) * (comb(n, k) * comb(m, k) * factorial(k))
        for k in range(min(m, n) + 1)
    })


def weyl_mul(x: WeylElement, y: WeylElement) -> WeylElement:
    """(q^a p^b)(q^c p^d) = q^a (p^b q^c) p^d, reordered with p q = q p - i."""
    out = {}
    for (a, b), cx in x.terms.items():
        for (c, d), cy in y.terms.items():
            cxy = cx * cy
            for k in range(min(b, c) + 1):
                coeff = cxy * _ipow(_MINUS_I, k) * (comb(b, k) * comb(c, k) * factorial(k))
                key = (a + c - k, b + d - k)
                out[key] = out.get(key, GaussianRational(0)) + coeff
    return WeylElement(out)


def commutator(x: WeylElement, y: WeylElement) -> WeylElement:
    return weyl_mul(x, y) - weyl_mul(y, x)


Q_HAT = WeylElement.monomial(1, 0)
P_HAT = WeylElement.monomial(0, 1)
ONE = WeylElement.scalar(1)


def _format_coeff(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    return f"({c})"


def format_weyl(w: WeylElement) -> str:
    if not w.terms:
        return "0"
    parts = []
    for (m, n) in sorted(w.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
        c = w.terms[(m, n)]
        mono = "*".join(
            f"{v}^{d}" if d > 1 else v for v, d in (("Q", m), ("P", n)) if d
        )
        cs = _format_coeff(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
