"""End F for a phase plane F: the matrices id, J, A, B, the splitting
End F = R id + R J + Sigma, the trace scalar product and H_sp(F)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Endo2:
    """2x2 rational matrix ``[[a, b], [c, d]]`` acting on column vectors."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows) -> Endo2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __add__(self, o):
        return Endo2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return Endo2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self):
        return Endo2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k) -> Endo2:
        k = Fraction(k)
        return Endo2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __mul__(self, o):
        if isinstance(o, Endo2):
            return self @ o
        if isinstance(o, (int, Fraction)):
            return self.scale(o)
        return NotImplemented

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def __truediv__(self, k):
        k = Fraction(k)
        if k == 0:
            raise ZeroDivisionError("matrix division by zero")
        return self.scale(1 / k)

    def __matmul__(self, o):
        return Endo2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                     self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def apply(self, v):
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def trace(self) -> Fraction:
        return self.a + self.d

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def transpose(self) -> Endo2:
        return Endo2(self.a, self.c, self.b, self.d)

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


ID = Endo2(1, 0, 0, 1)
J = Endo2(0, 1, -1, 0)
A = Endo2(1, 0, 0, -1)
B = Endo2(0, 1, 1, 0)
ZERO = Endo2(0, 0, 0, 0)
BASIS = {"id": ID, "J": J, "A": A, "B": B}

# Composition table of the basis; row is the left factor.
TABLE = {
    ("J", "J"): (-1, "id"), ("J", "A"): (-1, "B"), ("J", "B"): (1, "A"),
    ("A", "J"): (1, "B"), ("A", "A"): (1, "id"), ("A", "B"): (1, "J"),
    ("B", "J"): (-1, "A"), ("B", "A"): (-1, "J"), ("B", "B"): (1, "id"),
}


def commutator(x: Endo2, y: Endo2) -> Endo2:
    return x @ y - y @ x


def as_signed_basis(m: Endo2):
    """Return ``(sign, name)`` if ``m`` is plus or minus a basis matrix."""
    for name, base in BASIS.items():
        if m == base:
            return (1, name)
        if m == -base:
            return (-1, name)
    raise ValueError(f"{m} is not a signed basis element")


def endf_table(x: str, y: str):
    """Signed basis element for the composition ``x o y``."""
    return as_signed_basis(BASIS[x] @ BASIS[y])


def trace_inner(x: Endo2, y: Endo2) -> Fraction:
    """<X, Y> = tr(X Y~) / 2 with the adjoint taken as the transpose."""
    return (x @ y.transpose()).trace() / 2


@dataclass(frozen=True)
class SpDecomposition:
    trace_part: Fraction
    j_part: Fraction
    sigma_part: tuple

    def reconstruct(self) -> Endo2:
        a, c = self.sigma_part
        return (ID.scale(self.trace_part) + J.scale(self.j_part)
                + A.scale(a) + B.scale(c))

    def sp_part(self) -> Endo2:
        a, c = self.sigma_part
        return J.scale(self.j_part) + A.scale(a) + B.scale(c)


def decompose_endf(m: Endo2) -> SpDecomposition:
    out = SpDecomposition(trace_inner(m, ID), trace_inner(m, J),
                          (trace_inner(m, A), trace_inner(m, B)))
    assert out.reconstruct() == m
    return out


def in_sp(m: Endo2) -> bool:
    return m.trace() == 0


def in_sigma(m: Endo2) -> bool:
    return m.trace() == 0 and m.b == m.c


def omega_sigma(x: Endo2, y: Endo2) -> Fraction:
    """omega_Sigma(X, Y) = < [X, Y] / 2, J >."""
    for name, m in (("X", x), ("Y", y)):
        if not in_sigma(m):
            raise ValueError(f"{name} = {m} is not in Sigma")
    return trace_inner(commutator(x, y).scale(Fraction(1, 2)), J)


def sp_cross(x: Endo2, y: Endo2) -> Endo2:
    """Cross product on sp(F) for the metric <,> and orientation (A, B, J).

    Equals [X, Y]/2 on Sigma; in general it is [X~, Y~]/2.
    """
    return commutator(x.transpose(), y.transpose()).scale(Fraction(1, 2))


@dataclass(frozen=True)
class HspElement:
    """``scalar * id + vec`` with ``vec`` traceless."""

    scalar: Fraction
    vec: Endo2

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        if not in_sp(self.vec):
            raise ValueError(f"{self.vec} is not traceless")

    @classmethod
    def from_matrix(cls, m: Endo2) -> HspElement:
        d = decompose_endf(m)
        return cls(d.trace_part, d.sp_part())

    def matrix(self) -> Endo2:
        return ID.scale(self.scalar) + self.vec

    def __mul__(self, other):
        return hsp_product(self, other)


def hsp_product(x: HspElement, y: HspElement) -> HspElement:
    l1, u1 = x.scalar, x.vec
    l2, u2 = y.scalar, y.vec
    return HspElement(l1 * l2 - trace_inner(u1, u2),
                      u2.scale(l1) + u1.scale(l2) + sp_cross(u1, u2))


def hf_to_hsp(q) -> HspElement:
    """e -> id, i -> J, j -> A, k -> B."""
    w, x, y, z = q.components()
    return HspElement(w, J.scale(x) + A.scale(y) + B.scale(z))


def hf_to_hsp_graded(q) -> HspElement:
    """e -> id, e_q -> A, e_p -> B, j -> J for the default plane.

    Sends the tangent plane onto Sigma and span{e, j} onto span{id, J}.
    """
    w, x, y, z = q.components()
    return HspElement(w, A.scale(x) + B.scale(y) + J.scale(z))


def table_rows():
    names = ["J", "A", "B"]
    rows = [["id"] + names]
    for x in names:
        row = [x]
        for y in names:
            s, n = endf_table(x, y)
            row.append(n if s > 0 else "-" + n)
        rows.append(row)
    return rows
