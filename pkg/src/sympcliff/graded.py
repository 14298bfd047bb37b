"""Graded tensor products of copies of H_F for a 2n-dimensional phase space.

Each slot carries one of the symbols ``e``, ``eq``, ``ep``, ``j``.  The
even part of a slot is span{e, j}, the odd part is the phase plane
span{eq, ep}.  Products follow the Koszul sign rule

    (a1 x ... x an)(b1 x ... x bn) = (-1)^s (a1 b1) x ... x (an bn),
    s = sum over r < t of |a_t| |b_r|.
"""

from __future__ import annotations

from fractions import Fraction

from .endf import A, B, J as J_MAT
from .poisson import PoissonCliffordElement, QuadPoly, ham_inverse
from .quaternion import Quaternion, Vector3, qmul

SYMBOLS = ("e", "eq", "ep", "j")
PARITY = {"e": 0, "j": 0, "eq": 1, "ep": 1}
_AS_QUATERNION = {
    "e": Quaternion(1),
    "eq": Quaternion.pure(Vector3(1, 0, 0)),
    "ep": Quaternion.pure(Vector3(0, 1, 0)),
    "j": Quaternion.pure(Vector3(0, 0, 1)),
}


def _slot_table():
    by_value = {}
    for name, q in _AS_QUATERNION.items():
        by_value[q] = (1, name)
        by_value[-q] = (-1, name)
    return {(x, y): by_value[qmul(_AS_QUATERNION[x], _AS_QUATERNION[y])]
            for x in SYMBOLS for y in SYMBOLS}


SLOT_PRODUCT = _slot_table()


def koszul_sign(a: tuple, b: tuple) -> int:
    s = 0
    odd_b = 0
    for r in range(len(a)):
        # |a_r| against every odd b_t with t < r
        if PARITY[a[r]]:
            s += odd_b
        odd_b += PARITY[b[r]]
    return -1 if s % 2 else 1


def basis_product(a: tuple, b: tuple):
    sign = koszul_sign(a, b)
    out = []
    for x, y in zip(a, b):
        s, name = SLOT_PRODUCT[(x, y)]
        sign *= s
        out.append(name)
    return sign, tuple(out)


class GradedTensorElement:
    """Sparse element of the 4^n-dimensional graded tensor product."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("need at least one factor")
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != n or any(k not in PARITY for k in key):
                raise ValueError(f"bad basis key {key!r} for n={n}")
            c = Fraction(c)
            if c:
                clean[key] = clean.get(key, 0) + c
        self.n = n
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def unit(cls, n: int) -> GradedTensorElement:
        return cls(n, {("e",) * n: 1})

    @classmethod
    def basis(cls, key, coeff=1) -> GradedTensorElement:
        key = tuple(key)
        return cls(len(key), {key: coeff})

    def __eq__(self, other):
        if isinstance(other, GradedTensorElement):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"GradedTensorElement({self.n}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*({' x '.join(k)})" for k, c in sorted(self.terms.items()))

    def _check(self, other):
        if not isinstance(other, GradedTensorElement):
            raise TypeError("expected a GradedTensorElement")
        if other.n != self.n:
            raise ValueError(f"factor counts differ: {self.n} != {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GradedTensorElement(self.n, out)

    def __neg__(self):
        return GradedTensorElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> GradedTensorElement:
        k = Fraction(k)
        return GradedTensorElement(self.n, {key: k * v for key, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return graded_mul(self, other)

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def support_slots(self):
        """Slots where some term has a non-unit symbol."""
        return {s for key in self.terms for s, x in enumerate(key) if x != "e"}


def graded_mul(x: GradedTensorElement, y: GradedTensorElement) -> GradedTensorElement:
    x._check(y)
    out = {}
    for ka, ca in x.terms.items():
        for kb, cb in y.terms.items():
            sign, key = basis_product(ka, kb)
            out[key] = out.get(key, 0) + sign * ca * cb
    return GradedTensorElement(x.n, out)


def embed_generator(s: int, v: str, n: int) -> GradedTensorElement:
    """e x ... x v x ... x e with ``v`` in slot ``s`` (1-based)."""
    if not 1 <= s <= n:
        raise ValueError(f"slot {s} out of range 1..{n}")
    if v not in ("eq", "ep"):
        raise ValueError(f"generator must be 'eq' or 'ep', got {v!r}")
    key = ["e"] * n
    key[s - 1] = v
    return GradedTensorElement.basis(key)


def generators(n: int):
    return [embed_generator(s, v, n) for s in range(1, n + 1) for v in ("eq", "ep")]


def _is_generator(x: GradedTensorElement) -> bool:
    if len(x.terms) != 1:
        return False
    (key, c), = x.terms.items()
    odd = [k for k in key if k != "e"]
    return c == 1 and len(odd) == 1 and odd[0] in ("eq", "ep")


def clifford_relation_check(u: GradedTensorElement, v: GradedTensorElement) -> Fraction:
    """Coefficient ``c`` with uv + vu = c * unit; for generators c = -2<u, v>."""
    for name, x in (("u", u), ("v", v)):
        if not _is_generator(x):
            raise ValueError(f"{name} is not an embedded generator")
    anti = graded_mul(u, v) + graded_mul(v, u)
    unit = ("e",) * u.n
    if set(anti.terms) - {unit}:
        raise ArithmeticError(f"uv + vu = {anti} is not a multiple of the unit")
    return anti.terms.get(unit, Fraction(0))


# Per-slot isomorphism H_F -> H_sp(F) -> H_Q: e -> e, eq -> A, ep -> B, j -> J.
SLOT_TO_HQ = {
    "e": PoissonCliffordElement(1, QuadPoly()),
    "eq": PoissonCliffordElement(0, ham_inverse(A)),
    "ep": PoissonCliffordElement(0, ham_inverse(B)),
    "j": PoissonCliffordElement(0, ham_inverse(J_MAT)),
}


def to_poisson_clifford(x: GradedTensorElement):
    """Relabel every slot through the per-slot isomorphism onto H_Q_s.

    Returns ``{tuple of PoissonCliffordElement: coeff}``.
    """
    return {tuple(SLOT_TO_HQ[k] for k in key): c for key, c in x.terms.items()}


def _var(symbol: str, s: int):
    return ("q" if symbol == "eq" else "p", s)


def _monomial(u, v):
    return tuple(sorted((u, v)))


def tensor_to_quadratic(x: GradedTensorElement) -> dict:
    """Linear surjection onto quadratic forms in q_1..q_n, p_1..p_n.

    A basis tensor with generators in two distinct slots s < r maps to the
    product of the matching coordinates.  A tensor with a single non-unit
    slot maps through that slot's ham^-1.  Everything else maps to 0.
    Result: ``{((var, slot), (var, slot)): coeff}``.
    """
    out = {}

    def add(mono, c):
        out[mono] = out.get(mono, 0) + c

    for key, c in x.terms.items():
        active = [(s + 1, k) for s, k in enumerate(key) if k != "e"]
        if len(active) == 2 and all(k in ("eq", "ep") for _, k in active):
            (s, a), (r, b) = active
            add(_monomial(_var(a, s), _var(b, r)), c)
        elif len(active) == 1:
            s, k = active[0]
            quad = SLOT_TO_HQ[k].quad
            add(_monomial(("q", s), ("q", s)), c * quad.cqq)
            add(_monomial(("p", s), ("p", s)), c * quad.cpp)
            add(_monomial(("q", s), ("p", s)), c * quad.cqp)
    return {k: v for k, v in out.items() if v}
