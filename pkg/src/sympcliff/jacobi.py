"""Cyclic Jacobi eigenvalue iteration for dense Hermitian matrices."""

from __future__ import annotations

import numpy as np


class JacobiConvergenceError(RuntimeError):
    pass


def off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(matrix, tol: float = 1e-12, max_sweeps: int = 60, hermitian_tol: float = 1e-10):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Each rotation first removes the phase of a_pq and then applies a real
    Givens rotation that zeroes it.  Iterates until the off-diagonal
    Frobenius norm drops below ``tol * max(1, ||A||_F)``.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.conj().T, atol=hermitian_tol, rtol=0):
        raise ValueError("matrix is not Hermitian")
    a = (a + a.conj().T) / 2
    v = np.eye(n, dtype=complex)
    tol = tol * max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        if off_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                phase = g / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                v[:, idx] = v[:, idx] @ u
    else:
        if off_norm(a) >= tol:
            raise JacobiConvergenceError(
                f"off-diagonal norm {off_norm(a):.3e} after {max_sweeps} sweeps")
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def jacobi_eigvalsh(matrix, **kwargs) -> np.ndarray:
    return jacobi_eigh(matrix, **kwargs)[0]
