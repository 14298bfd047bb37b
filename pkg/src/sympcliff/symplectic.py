"""Two-dimensional symplectic spaces and their direct sums.

Matrices here follow the row convention: entry ``[i][k]`` of an operator is
the ``e_k`` component of its image of ``e_i``.  With it a bilinear form's
Gram matrix ``W[i][j] = w(e_i, e_j)`` and an operator ``S`` satisfy
``w(S e_i, e_j) = (S W)[i][j]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .endf import Endo2
from .quaternion import (DEFAULT_J, Quaternion, Vector3, cross, dot,
                         omega_on_tangent)


def _as_endo(m) -> Endo2:
    return m if isinstance(m, Endo2) else Endo2.from_rows(m)


def rational_sqrt(x) -> Fraction:
    """Exact square root of a non-negative rational, or ``ValueError``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"{x} is negative")
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise ValueError(f"sqrt({x}) is irrational; exact normalization impossible")
    return Fraction(n, d)


@dataclass(frozen=True)
class SymplecticForm2:
    matrix: Endo2

    def __post_init__(self):
        m = _as_endo(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.a != 0 or m.d != 0 or m.b != -m.c:
            raise ValueError(f"{m} is not skew-symmetric")
        if m.det() == 0:
            raise ValueError("symplectic form is degenerate")

    @classmethod
    def canonical(cls, scale=1) -> SymplecticForm2:
        return cls(Endo2(0, scale, -scale, 0))

    def __call__(self, v, w) -> Fraction:
        m = self.matrix
        return (v[0] * (m.a * w[0] + m.b * w[1])
                + v[1] * (m.c * w[0] + m.d * w[1]))


def _check_positive(g: Endo2, what="scalar product"):
    if g.b != g.c:
        raise ValueError(f"{what} {g} is not symmetric")
    if not (g.a > 0 and g.det() > 0):
        raise ValueError(f"{what} {g} is not positive definite")


def _inverse(m: Endo2) -> Endo2:
    d = m.det()
    return Endo2(m.d / d, -m.b / d, -m.c / d, m.a / d)


def j_from_form(omega: SymplecticForm2, scalar_product=None):
    """Solve w(v, w) = <S v, w> for S and normalize it to J with J^2 = -id.

    Returns ``(J, kappa)`` with ``S = kappa * J``.  The scale is
    ``kappa = |w(e1, e2)| / sqrt(det G)``, positive so that ``-J W`` is again
    positive definite.  Gram matrices with irrational ``sqrt(det G)`` are
    rejected.
    """
    if not isinstance(omega, SymplecticForm2):
        omega = SymplecticForm2(omega)
    g = Endo2(1, 0, 0, 1) if scalar_product is None else _as_endo(scalar_product)
    _check_positive(g)
    s = omega.matrix @ _inverse(g)
    kappa = abs(omega.matrix.b) / rational_sqrt(g.det())
    jm = s.scale(1 / kappa)
    assert jm @ jm == Endo2(-1, 0, 0, -1)
    return jm, kappa


def is_symplectic(omega: SymplecticForm2, m: Endo2) -> bool:
    w = omega.matrix
    return m @ w @ m.transpose() == w


def scalar_from_form(omega: SymplecticForm2, jm) -> Endo2:
    """Gram matrix of the scalar product -<v, w> := w(J v, w)."""
    if not isinstance(omega, SymplecticForm2):
        omega = SymplecticForm2(omega)
    jm = _as_endo(jm)
    if jm @ jm != Endo2(-1, 0, 0, -1):
        raise ValueError(f"J = {jm} does not satisfy J^2 = -id")
    if not is_symplectic(omega, jm):
        raise ValueError(f"J = {jm} does not preserve omega")
    g = -(jm @ omega.matrix)
    _check_positive(g, "induced form")
    return g


def gram_schmidt(gram) -> list:
    """Orthonormal basis for ``gram`` in coordinates, over Q.

    Raises ``ValueError`` if a norm is irrational.
    """
    g = _as_endo(gram)
    _check_positive(g)

    def ip(u, v):
        return (u[0] * (g.a * v[0] + g.b * v[1])
                + u[1] * (g.c * v[0] + g.d * v[1]))

    out = []
    for v in ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))):
        for u in out:
            c = ip(v, u)
            v = (v[0] - c * u[0], v[1] - c * u[1])
        n = rational_sqrt(ip(v, v))
        out.append((v[0] / n, v[1] / n))
    return out


@dataclass(frozen=True)
class PhasePlane:
    j: Quaternion
    e_q: Vector3
    e_p: Vector3

    def omega(self, v, w) -> Fraction:
        return omega_on_tangent(self.j, v, w)

    def coords(self, v: Vector3):
        return (dot(v, self.e_q), dot(v, self.e_p))


def make_phase_plane(j=DEFAULT_J, e_q=Vector3(1, 0, 0)) -> PhasePlane:
    if not isinstance(j, Quaternion):
        j = Quaternion.pure(j)
    if not isinstance(e_q, Vector3):
        e_q = Vector3(*e_q)
    if not j.is_pure() or j.norm2() != 1:
        raise ValueError(f"j = {j} is not a pure unit quaternion")
    if dot(e_q, e_q) != 1:
        raise ValueError(f"e_q = {e_q} is not a unit vector")
    if dot(e_q, j.vec) != 0:
        raise ValueError(f"e_q = {e_q} is not orthogonal to j")
    plane = PhasePlane(j, e_q, cross(j.vec, e_q))
    assert plane.omega(plane.e_q, plane.e_p) == 1
    return plane


@dataclass(frozen=True)
class SymplecticSpace2n:
    n: int
    planes: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.n < 1 or len(self.planes) != self.n:
            raise ValueError("need n >= 1 planes")
        if not self.labels:
            labels = tuple((f"q{s}", f"p{s}") for s in range(1, self.n + 1))
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return 2 * self.n

    def basis_labels(self):
        return [name for pair in self.labels for name in pair]

    def omega(self, i: int, k: int) -> Fraction:
        """w(e_i, e_k) for basis indices 0..2n-1 ordered q1, p1, q2, p2, ..."""
        si, sk = divmod(i, 2), divmod(k, 2)
        if si[0] != sk[0]:
            return Fraction(0)
        plane = self.planes[si[0]]
        vecs = (plane.e_q, plane.e_p)
        return plane.omega(vecs[si[1]], vecs[sk[1]])

    def form_matrix(self):
        return [[self.omega(i, k) for k in range(self.dim)] for i in range(self.dim)]

    def to_dict(self):
        return {
            "n": self.n,
            "dimension": self.dim,
            "planes": [
                {"index": s + 1, "q": q, "p": p, "omega_qp": str(self.omega(2 * s, 2 * s + 1))}
                for s, (q, p) in enumerate(self.labels)
            ],
        }


def symplectic_space(n: int) -> SymplecticSpace2n:
    if n < 1:
        raise ValueError("n must be positive")
    plane = make_phase_plane()
    return SymplecticSpace2n(n, (plane,) * n)


def particle_phase_space(m: int) -> SymplecticSpace2n:
    """Phase space of ``m`` particles in R^3 regrouped into 3m planes (q_s, p_s)."""
    if m < 1:
        raise ValueError("need at least one particle")
    return symplectic_space(3 * m)
