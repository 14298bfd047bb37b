import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from sympcliff import poisson, quantize
from sympcliff.poisson import P2_HALF, Q2_HALF, QP, QuadPoly
from sympcliff.scalars import GaussianRational as G
from sympcliff.weyl import ONE, P_HAT, Q_HAT, WeylElement, commutator

from conftest import quads

GENS = list(poisson.GENERATORS.values())
MINUS_I = G(0, -1)


def test_quantize_examples():
    assert quantize.weyl_quantize(Q2_HALF) == (Q_HAT * Q_HAT).scale(G(0, Fraction(-1, 2)))
    assert quantize.weyl_quantize(QP) == (Q_HAT * P_HAT).scale(MINUS_I) - ONE.scale(Fraction(1, 2))
    assert quantize.weyl_quantize(QuadPoly()).is_zero()


def test_identity_convention():
    assert quantize.quantize_identity() == ONE.scale(MINUS_I)


def test_commutator_examples():
    assert quantize.verify_poisson_commutator(Q2_HALF, P2_HALF)
    w = quantize.verify_poisson_commutator(QP, QP)
    assert w and w.lhs.is_zero() and w.rhs.is_zero()
    w = quantize.verify_poisson_commutator(QP, Q2_HALF)
    assert w and w.rhs == quantize.weyl_quantize(QuadPoly(-1, 0, 0))


def test_all_generator_pairs():
    for f, g in itertools.product(GENS, repeat=2):
        assert quantize.verify_poisson_commutator(f, g)


@settings(max_examples=500)
@given(quads, quads)
def test_poisson_commutator_random(f, g):
    assert quantize.verify_poisson_commutator(f, g)


@settings(max_examples=300)
@given(quads)
def test_anti_hermitian(f):
    w = quantize.weyl_quantize(f)
    assert (w + w.adjoint()).is_zero()
    h = quantize.hermitian_part(f)
    assert h == h.adjoint()


def test_fock_examples():
    m = quantize.fock_realize(Q_HAT, 3)
    assert m[0, 1] == pytest.approx(1 / math.sqrt(2))
    assert m[1, 2] == pytest.approx(1.0)
    assert np.allclose(m, m.T)
    q8, p8 = quantize.fock_realize(Q_HAT, 8), quantize.fock_realize(P_HAT, 8)
    assert np.allclose(quantize.fock_realize(commutator(Q_HAT, P_HAT), 8), 1j * np.eye(8))
    ccr = q8 @ p8 - p8 @ q8
    assert np.allclose(ccr[:6, :6], 1j * np.eye(6), atol=1e-10)
    assert not np.allclose(ccr, 1j * np.eye(8))
    assert not quantize.fock_realize(WeylElement({}), 5).any()


def test_fock_dim_bounds():
    with pytest.raises(ValueError):
        quantize.fock_realize(Q_HAT, 2)


@pytest.mark.parametrize("f,g", list(itertools.product(GENS, repeat=2)))
def test_truncated_commutator_block(f, g):
    n = 32
    qf, qg = quantize.quantize_matrix(f, n), quantize.quantize_matrix(g, n)
    diff = qf @ qg - qg @ qf - quantize.quantize_matrix(poisson.pbracket(f, g), n)
    assert np.max(np.abs(diff[:30, :30])) <= 1e-9


@settings(max_examples=40)
@given(quads)
def test_hermitian_realization(f):
    for n in (8, 64):
        m = quantize.hermitian_matrix(f, n)
        assert np.max(np.abs(m - m.conj().T)) <= 1e-12


def test_spectrum_examples():
    h = Q2_HALF + P2_HALF
    assert quantize.spectrum(h, 8) == pytest.approx([0.5, 1.5, 2.5, 3.5, 3.5, 4.5, 5.5, 6.5], abs=1e-10)
    s = np.array(quantize.spectrum(QP, 8))
    assert np.allclose(s, -s[::-1], atol=1e-8)
    assert quantize.spectrum(QuadPoly(), 8) == [0.0] * 8


@pytest.mark.parametrize("n", [8, 16, 32])
def test_ladder(n):
    got = quantize.spectrum(Q2_HALF + P2_HALF, n)
    want = sorted([k + 0.5 for k in range(n - 1)] + [(n - 1) / 2])
    assert np.max(np.abs(np.array(got) - want)) <= 1e-10


@settings(max_examples=20)
@given(quads)
def test_spectrum_matches_numpy(f):
    got = quantize.spectrum(f, 16)
    assert np.allclose(got, np.linalg.eigvalsh(quantize.hermitian_matrix(f, 16)), atol=1e-9)


def test_tensor_examples():
    f = QP + Q2_HALF
    assert np.array_equal(quantize.tensor_quantize([f], 5), quantize.quantize_matrix(f, 5))
    h = Q2_HALF + P2_HALF
    x = quantize.tensor_quantize([h, None], 4)
    ev = np.sort(np.linalg.eigvalsh(1j * x))
    single = quantize.spectrum(h, 4)
    assert np.allclose(ev, np.repeat(single, 4))
    y = quantize.tensor_quantize([None, QP], 4)
    assert np.max(np.abs(x @ y - y @ x)) <= 1e-12


def test_tensor_dimension_cap():
    with pytest.raises(ValueError):
        quantize.tensor_quantize([QP] * 3, 32)
