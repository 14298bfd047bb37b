"""The quaternion skew-field H_F = R*e + E with its dot/cross structure.

Vectors are expressed in the orthonormal basis {e1, e2, j} of E, oriented so
that cross(e1, e2) = j.  Everything is exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Vector3:
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other):
        return Vector3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Vector3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Vector3(-self.x, -self.y, -self.z)

    def __mul__(self, k):
        k = Fraction(k)
        return Vector3(k * self.x, k * self.y, k * self.z)

    __rmul__ = __mul__

    def is_zero(self):
        return self.x == 0 and self.y == 0 and self.z == 0

    def __repr__(self):
        return f"Vector3({self.x}, {self.y}, {self.z})"


def dot(u: Vector3, v: Vector3) -> Fraction:
    return u.x * v.x + u.y * v.y + u.z * v.z


def cross(u: Vector3, v: Vector3) -> Vector3:
    return Vector3(u.y * v.z - u.z * v.y,
                   u.z * v.x - u.x * v.z,
                   u.x * v.y - u.y * v.x)


E1 = Vector3(1, 0, 0)
E2 = Vector3(0, 1, 0)
EJ = Vector3(0, 0, 1)


@dataclass(frozen=True)
class Quaternion:
    """``scalar * e + vec`` with ``vec`` in E."""

    scalar: Fraction = Fraction(0)
    vec: Vector3 = Vector3()

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        if not isinstance(self.vec, Vector3):
            object.__setattr__(self, "vec", Vector3(*self.vec))

    @classmethod
    def from_components(cls, w, x, y, z) -> Quaternion:
        return cls(w, Vector3(x, y, z))

    @classmethod
    def pure(cls, v) -> Quaternion:
        return cls(0, v if isinstance(v, Vector3) else Vector3(*v))

    def components(self):
        return (self.scalar, self.vec.x, self.vec.y, self.vec.z)

    def is_pure(self) -> bool:
        return self.scalar == 0

    def norm2(self) -> Fraction:
        return self.scalar * self.scalar + dot(self.vec, self.vec)

    def is_unit(self) -> bool:
        return self.norm2() == 1

    def conj(self) -> Quaternion:
        return Quaternion(self.scalar, -self.vec)

    def inverse(self) -> Quaternion:
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        c = self.conj()
        return Quaternion(c.scalar / n, c.vec * (1 / n))

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.scalar + other.scalar, self.vec + other.vec)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.scalar - other.scalar, self.vec - other.vec)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.scalar, -self.vec)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.scalar * other, self.vec * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.scalar * other, self.vec * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other.inverse())
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("quaternion division by zero")
        return self * (1 / other)

    def __str__(self):
        parts = []
        for coeff, name in zip(self.components(), "eijk"):
            if coeff == 0:
                continue
            if coeff == 1:
                term = name
            elif coeff == -1:
                term = "-" + name
            else:
                term = f"{coeff}*{name}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _coerce(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    return Quaternion(Fraction(x), Vector3())


E = Quaternion(1)
I = Quaternion.pure(E1)
J = Quaternion.pure(E2)
K = Quaternion.pure(EJ)
DEFAULT_J = K


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """(l1 e + u1)(l2 e + u2) = (l1 l2 - <u1,u2>) e + l1 u2 + l2 u1 + u1 x u2."""
    l1, u1 = a.scalar, a.vec
    l2, u2 = b.scalar, b.vec
    return Quaternion(l1 * l2 - dot(u1, u2), u2 * l1 + u1 * l2 + cross(u1, u2))


def _as_vec(v) -> Vector3:
    if isinstance(v, Quaternion):
        if not v.is_pure():
            raise ValueError(f"{v} is not a pure quaternion")
        return v.vec
    if isinstance(v, Vector3):
        return v
    return Vector3(*v)


def _check_complex_structure(j) -> Vector3:
    jv = _as_vec(j)
    if dot(jv, jv) != 1:
        raise ValueError(f"j = {jv} is not a unit vector")
    return jv


def _check_tangent(jv: Vector3, v: Vector3, what="v"):
    if dot(jv, v) != 0:
        raise ValueError(f"{what} = {v} is not orthogonal to j = {jv}")


def apply_j(j, v) -> Quaternion:
    """J(v) = j x v = j * v for v in the tangent plane at j."""
    jv = _check_complex_structure(j)
    vv = _as_vec(v)
    _check_tangent(jv, vv)
    out = qmul(Quaternion.pure(jv), Quaternion.pure(vv))
    assert out.scalar == 0 and out.vec == cross(jv, vv)
    return out


def omega_on_tangent(j, v, w) -> Fraction:
    """Symplectic form on the tangent plane at ``j``: <j v, w> = <j, v w>."""
    jv = _check_complex_structure(j)
    vv, wv = _as_vec(v), _as_vec(w)
    _check_tangent(jv, vv, "v")
    _check_tangent(jv, wv, "w")
    jq = Quaternion.pure(jv)
    first = dot(qmul(jq, Quaternion.pure(vv)).vec, wv)
    second = dot(jv, qmul(Quaternion.pure(vv), Quaternion.pure(wv)).vec)
    if first != second:
        raise ArithmeticError(f"omega expressions disagree: {first} != {second}")
    return first


def conjugate_pure(g: Quaternion, a: Quaternion) -> Quaternion:
    """SU(2) action g a g^-1 on the sphere of complex structures."""
    if not g.is_unit():
        raise ValueError(f"g = {g} is not a unit quaternion")
    if not a.is_pure():
        raise ValueError(f"a = {a} is not pure")
    out = qmul(qmul(g, a), g.conj())
    assert out.is_pure() and out.norm2() == a.norm2()
    return out
