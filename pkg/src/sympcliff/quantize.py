"""Quantization Q = -i dU_Mp o ham, exactly and on a Fock truncation.

dU_Mp is realized on sp(F) by Weyl-symmetric ordering, so for
f = a q^2 + b p^2 + c qp

    Q(f) = -i (a q^2 + b p^2 + c (q p + p q) / 2).

Q(f) is anti-Hermitian; ``hermitian_part(f) = i Q(f)`` is the observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .jacobi import jacobi_eigvalsh
from .poisson import QuadPoly, pbracket
from .scalars import GaussianRational, to_complex_f64
from .weyl import ONE, WeylElement, commutator, reorder_pq

MINUS_I = GaussianRational(0, -1)
MAX_TENSOR_DIM = 4096


def symmetric_form(f: QuadPoly) -> WeylElement:
    """Weyl-symmetric operator of ``f`` in normal order."""
    # (q p + p q) / 2 = q p - i/2
    sym_qp = WeylElement({(1, 1): 1}) + reorder_pq(1, 1)
    return (WeylElement({(2, 0): f.cqq, (0, 2): f.cpp})
            + sym_qp.scale(GaussianRational(f.cqp / 2)))


def weyl_quantize(f: QuadPoly) -> WeylElement:
    return symmetric_form(f).scale(MINUS_I)


def quantize_identity() -> WeylElement:
    """Q(e) with dU_Mp(id_F) taken as the identity operator."""
    return ONE.scale(MINUS_I)


def hermitian_part(f: QuadPoly) -> WeylElement:
    """i Q(f), a formally Hermitian element."""
    return weyl_quantize(f).scale(GaussianRational(0, 1))


@dataclass(frozen=True)
class CommutatorWitness:
    equal: bool
    lhs: WeylElement
    rhs: WeylElement
    difference: WeylElement

    def __bool__(self):
        return self.equal


def verify_poisson_commutator(f: QuadPoly, g: QuadPoly) -> CommutatorWitness:
    """Compare Q({f, g}) with [Q(f), Q(g)] exactly."""
    lhs = weyl_quantize(pbracket(f, g))
    rhs = commutator(weyl_quantize(f), weyl_quantize(g))
    diff = lhs - rhs
    return CommutatorWitness(diff.is_zero(), lhs, rhs, diff)


@lru_cache(maxsize=32)
def ladder_matrices(n: int):
    """Truncated (a, q, p) on number states |0>..|n-1>."""
    a = np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)
    ad = a.conj().T
    q = (a + ad) / np.sqrt(2.0)
    p = 1j * (ad - a) / np.sqrt(2.0)
    for m in (a, q, p):
        m.setflags(write=False)
    return a, q, p


def _power(m: np.ndarray, k: int, cache: dict) -> np.ndarray:
    key = (id(m), k)
    if key not in cache:
        cache[key] = np.linalg.matrix_power(m, k)
    return cache[key]


def fock_realize(w: WeylElement, n: int) -> np.ndarray:
    """Matrix of ``w`` on the first ``n`` oscillator levels.

    Truncated q, p are substituted both in normal and in anti-normal order
    and the two matrices are averaged.  The average is Hermitian whenever
    ``w`` is formally Hermitian, and it agrees with either ordering away
    from the truncation corner.
    """
    if n < 3:
        raise ValueError("Fock dimension must be at least 3")
    _, q, p = ladder_matrices(n)
    cache = {}
    normal = np.zeros((n, n), dtype=complex)
    for (i, j), c in w.terms.items():
        normal += to_complex_f64(c) * (_power(q, i, cache) @ _power(p, j, cache))
    anti = np.zeros((n, n), dtype=complex)
    for (j, i), c in w.anti_normal_terms().items():
        anti += to_complex_f64(c) * (_power(p, j, cache) @ _power(q, i, cache))
    out = (normal + anti) / 2
    if not np.all(np.isfinite(out)):
        raise ArithmeticError("non-finite Fock matrix entries")
    return out


def quantize_matrix(f: QuadPoly, n: int) -> np.ndarray:
    return fock_realize(weyl_quantize(f), n)


def hermitian_matrix(f: QuadPoly, n: int) -> np.ndarray:
    return fock_realize(hermitian_part(f), n)


def spectrum(f: QuadPoly, n: int) -> list:
    """Sorted eigenvalues of i Q_N(f)."""
    return [float(x) for x in jacobi_eigvalsh(hermitian_matrix(f, n))]


def tensor_quantize(fs, n: int) -> np.ndarray:
    """Kronecker product of per-slot quantizations.

    A ``None`` entry stands for the identity on that slot.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one slot")
    if n ** len(fs) > MAX_TENSOR_DIM:
        raise ValueError(f"{n}^{len(fs)} exceeds the {MAX_TENSOR_DIM}-dimensional cap")
    out = np.ones((1, 1), dtype=complex)
    for f in fs:
        m = np.eye(n, dtype=complex) if f is None else quantize_matrix(f, n)
        out = np.kron(out, m)
    return out
