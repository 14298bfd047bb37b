"""Directed one-simplex processes on three poles and their quaternion group.

A process [Pa Pb] with a < b is stored with sign +1; [Pb Pa] = -[Pa Pb].
Repeated-pole simplexes [Pa Pa] are the two-sided unity ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .quaternion import E, I, J, K, Quaternion


class Kind(Enum):
    UNIT = "e"
    P01 = "[P0P1]"
    P02 = "[P0P2]"
    P12 = "[P1P2]"


_POLES = {Kind.P01: (0, 1), Kind.P02: (0, 2), Kind.P12: (1, 2)}
_BY_POLES = {v: k for k, v in _POLES.items()}


@dataclass(frozen=True)
class Pole:
    index: int

    def __post_init__(self):
        if self.index not in (0, 1, 2):
            raise ValueError(f"pole index must be 0, 1 or 2, got {self.index}")


@dataclass(frozen=True)
class SignedProcess:
    sign: int
    kind: Kind

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def simplex(cls, a: int, b: int) -> SignedProcess:
        """The directed simplex [Pa Pb] in canonical form."""
        Pole(a), Pole(b)
        if a == b:
            return cls(1, Kind.UNIT)
        if a < b:
            return cls(1, _BY_POLES[(a, b)])
        return cls(-1, _BY_POLES[(b, a)])

    def __neg__(self):
        return SignedProcess(-self.sign, self.kind)

    def __mul__(self, other):
        return compose(self, other)

    def __str__(self):
        return ("" if self.sign > 0 else "-") + self.kind.value


UNIT = SignedProcess(1, Kind.UNIT)
P01 = SignedProcess(1, Kind.P01)
P02 = SignedProcess(1, Kind.P02)
P12 = SignedProcess(1, Kind.P12)
GENERATORS = (P01, P02, P12)
ALL = tuple(SignedProcess(s, k) for k in Kind for s in (1, -1))

# Composition table; row is the left factor.
TABLE = {
    (Kind.P01, Kind.P01): -UNIT, (Kind.P01, Kind.P02): -P12, (Kind.P01, Kind.P12): P02,
    (Kind.P02, Kind.P01): P12, (Kind.P02, Kind.P02): -UNIT, (Kind.P02, Kind.P12): -P01,
    (Kind.P12, Kind.P01): -P02, (Kind.P12, Kind.P02): P01, (Kind.P12, Kind.P12): -UNIT,
}


def _compose_kinds(x: Kind, y: Kind) -> SignedProcess:
    """Derive the product of two generators from [P1P2].[P2P3] = [P1P3].

    Both factors are reoriented so they share the middle pole.  A simplex
    composed with itself squares to -e.
    """
    if x == y:
        return -UNIT
    a, b = _POLES[x]
    c, d = _POLES[y]
    shared = ({a, b} & {c, d}).pop()
    sign = 1
    # left factor must end at the shared pole, right factor start there
    if b != shared:
        a, b = b, a
        sign = -sign
    if c != shared:
        c, d = d, c
        sign = -sign
    out = SignedProcess.simplex(a, d)
    return out if sign > 0 else -out


def compose(a: SignedProcess, b: SignedProcess) -> SignedProcess:
    sign = a.sign * b.sign
    if a.kind is Kind.UNIT:
        out = SignedProcess(1, b.kind)
    elif b.kind is Kind.UNIT:
        out = SignedProcess(1, a.kind)
    else:
        out = _compose_kinds(a.kind, b.kind)
    return out if sign > 0 else -out


def compose_from_table(a: SignedProcess, b: SignedProcess) -> SignedProcess:
    sign = a.sign * b.sign
    if a.kind is Kind.UNIT:
        out = SignedProcess(1, b.kind)
    elif b.kind is Kind.UNIT:
        out = SignedProcess(1, a.kind)
    else:
        out = TABLE[(a.kind, b.kind)]
    return out if sign > 0 else -out


# The table realizes ij = -k for the literal labels.  Flipping the
# sign of [P0P2] lands it in the right-handed H_F (cross(e1, e2) = j).
_UNITS = {Kind.UNIT: E, Kind.P01: I, Kind.P02: -J, Kind.P12: K}


def to_quaternion_unit(p: SignedProcess) -> Quaternion:
    q = _UNITS[p.kind]
    return q if p.sign > 0 else -q


def table_rows():
    """Rows of the composition table as strings, header first."""
    header = ["1"] + [g.kind.value for g in GENERATORS]
    rows = [header]
    for x in GENERATORS:
        rows.append([x.kind.value] + [str(compose(x, y)) for y in GENERATORS])
    return rows
