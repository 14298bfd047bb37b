"""Poisson algebra Q of homogeneous quadratic polynomials on a phase plane.

``QuadPoly(cqq, cpp, cqp)`` is ``cqq*q^2 + cpp*p^2 + cqp*q*p``.  Hamiltonian
field matrices are in the column convention of the basis (e_q, e_p): the
first column is the image of e_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .endf import Endo2, HspElement, hsp_product, trace_inner
from .quaternion import Vector3, cross


@dataclass(frozen=True)
class QuadPoly:
    cqq: Fraction = Fraction(0)
    cpp: Fraction = Fraction(0)
    cqp: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("cqq", "cpp", "cqp"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def coeffs(self):
        return (self.cqq, self.cpp, self.cqp)

    def __add__(self, o):
        return QuadPoly(self.cqq + o.cqq, self.cpp + o.cpp, self.cqp + o.cqp)

    def __sub__(self, o):
        return QuadPoly(self.cqq - o.cqq, self.cpp - o.cpp, self.cqp - o.cqp)

    def __neg__(self):
        return QuadPoly(-self.cqq, -self.cpp, -self.cqp)

    def scale(self, k) -> QuadPoly:
        k = Fraction(k)
        return QuadPoly(k * self.cqq, k * self.cpp, k * self.cqp)

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self):
        return self.cqq == 0 and self.cpp == 0 and self.cqp == 0

    def __call__(self, q, p) -> Fraction:
        return self.cqq * q * q + self.cpp * p * p + self.cqp * q * p

    def grad(self, q, p):
        """(df/dq, df/dp) at the point (q, p)."""
        return (2 * self.cqq * q + self.cqp * p, 2 * self.cpp * p + self.cqp * q)

    def __str__(self):
        return format_poly({(2, 0): self.cqq, (1, 1): self.cqp, (0, 2): self.cpp})


def format_poly(terms: dict) -> str:
    """Render ``{(deg_q, deg_p): coeff}`` in DSL syntax, highest degree first."""
    order = sorted(terms, key=lambda k: (-(k[0] + k[1]), -k[0]))
    parts = []
    for key in order:
        c = Fraction(terms[key])
        if c == 0:
            continue
        mono = "*".join(
            f"{v}^{d}" if d > 1 else v for v, d in (("q", key[0]), ("p", key[1])) if d
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        elif mag.denominator == 1:
            body = f"{mag}*{mono}"
        elif mag.numerator == 1:
            body = f"{mono}/{mag.denominator}"
        else:
            body = f"{mag.numerator}*{mono}/{mag.denominator}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


Q2_HALF = QuadPoly(Fraction(1, 2), 0, 0)
P2_HALF = QuadPoly(0, Fraction(1, 2), 0)
QP = QuadPoly(0, 0, 1)
GENERATORS = {"q^2/2": Q2_HALF, "p^2/2": P2_HALF, "q*p": QP}


@dataclass(frozen=True)
class LinearHamField:
    """Principal part a_f of a Hamiltonian field, a traceless matrix."""

    matrix: Endo2

    def __post_init__(self):
        if self.matrix.trace() != 0:
            raise ValueError(f"Hamiltonian field {self.matrix} is not traceless")

    def __call__(self, q, p):
        m = self.matrix
        return (m.a * q + m.b * p, m.c * q + m.d * p)


def ham(f: QuadPoly) -> LinearHamField:
    """a_f(h) = df/dp(h) e_q - df/dq(h) e_p."""
    return LinearHamField(Endo2(f.cqp, 2 * f.cpp, -2 * f.cqq, -f.cqp))


def ham_inverse(x) -> QuadPoly:
    m = x.matrix if isinstance(x, LinearHamField) else x
    if m.trace() != 0:
        raise ValueError(f"{m} is not traceless")
    out = QuadPoly(-m.c / 2, m.b / 2, m.a)
    assert ham(out).matrix == m
    return out


def pbracket(f: QuadPoly, g: QuadPoly) -> QuadPoly:
    """{f, g} = df/dq dg/dp - df/dp dg/dq, closed form on the monomial basis."""
    a1, a2, a3 = f.coeffs()
    b1, b2, b3 = g.coeffs()
    return QuadPoly(2 * (a1 * b3 - a3 * b1),
                    2 * (a3 * b2 - a2 * b3),
                    4 * (a1 * b2 - a2 * b1))


@dataclass(frozen=True)
class LinearPoly:
    """Linear function ``cq*q + cp*p``; covers the coordinate functions."""

    cq: Fraction = Fraction(0)
    cp: Fraction = Fraction(0)

    def grad(self, q=0, p=0):
        return (Fraction(self.cq), Fraction(self.cp))

    def __call__(self, q, p):
        return self.cq * q + self.cp * p


F_Q = LinearPoly(1, 0)
F_P = LinearPoly(0, 1)


def hamfield_vector(f, q=0, p=0) -> Vector3:
    """a_f(h) as a vector of E = span{e_q, e_p, j} at h = q e_q + p e_p."""
    fq, fp = f.grad(Fraction(q), Fraction(p))
    return Vector3(fp, -fq, 0)


def hamfield_cross(f, g, q=0, p=0) -> Fraction:
    """The coefficient ``c`` in a_f(h) x a_g(h) = c j.

    ``c`` equals {f, g}(h).  Linear ``f``, ``g`` have constant fields, so the
    point is irrelevant for them.
    """
    v = cross(hamfield_vector(f, q, p), hamfield_vector(g, q, p))
    assert v.x == 0 and v.y == 0
    return v.z


def poly_bracket_at(f, g, q, p) -> Fraction:
    """{f, g}(h) evaluated pointwise from the gradients."""
    fq, fp = f.grad(Fraction(q), Fraction(p))
    gq, gp = g.grad(Fraction(q), Fraction(p))
    return fq * gp - fp * gq


@dataclass(frozen=True)
class PoissonCliffordElement:
    """``scalar * e + quad`` in H_Q = Q + R e."""

    scalar: Fraction = Fraction(0)
    quad: QuadPoly = QuadPoly()

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))

    def __add__(self, o):
        return PoissonCliffordElement(self.scalar + o.scalar, self.quad + o.quad)

    def __mul__(self, o):
        return pclifford_mul(self, o)

    def __str__(self):
        parts = []
        if self.scalar:
            parts.append(f"{self.scalar}*e")
        if not self.quad.is_zero():
            parts.append(f"({self.quad})")
        return " + ".join(parts) or "0"


def ham_hq(x: PoissonCliffordElement) -> HspElement:
    """Extension of ham to H_Q with e -> id."""
    return HspElement(x.scalar, ham(x.quad).matrix)


def ham_hq_inverse(x: HspElement) -> PoissonCliffordElement:
    return PoissonCliffordElement(x.scalar, ham_inverse(x.vec))


def pclifford_mul(x: PoissonCliffordElement, y: PoissonCliffordElement) -> PoissonCliffordElement:
    """Product of H_sp(F) pulled back through ham."""
    return ham_hq_inverse(hsp_product(ham_hq(x), ham_hq(y)))


def q_inner(f: QuadPoly, g: QuadPoly) -> Fraction:
    """Scalar product on Q pulled back from the trace form on sp(F)."""
    return trace_inner(ham(f).matrix, ham(g).matrix)
