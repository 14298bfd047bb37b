from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sympcliff.endf import Endo2
from sympcliff.quaternion import Vector3
from sympcliff.symplectic import (SymplecticForm2, gram_schmidt, is_symplectic, j_from_form,
                                  make_phase_plane, particle_phase_space, scalar_from_form,
                                  symplectic_space)

from conftest import rationals

CANON = SymplecticForm2(Endo2(0, 1, -1, 0))
JM = Endo2(0, 1, -1, 0)
IDM = Endo2(1, 0, 0, 1)
nonzero = rationals.filter(bool)


def form(w):
    return SymplecticForm2(Endo2(0, w, -w, 0))


def test_j_from_form_examples():
    assert j_from_form(CANON, IDM) == (JM, 1)
    jm, kappa = j_from_form(form(3), IDM)
    assert jm == JM and kappa == 3
    assert jm @ jm == Endo2(-1, 0, 0, -1)


def test_scalar_from_form_examples():
    assert scalar_from_form(CANON, JM) == IDM
    assert scalar_from_form(CANON, j_from_form(CANON, IDM)[0]) == IDM
    assert scalar_from_form(form(2), JM) == Endo2(2, 0, 0, 2)


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        SymplecticForm2(Endo2(0, 1, 1, 0))
    with pytest.raises(ValueError):
        SymplecticForm2(Endo2(0, 0, 0, 0))
    with pytest.raises(ValueError):
        j_from_form(CANON, Endo2(1, 0, 0, -1))
    with pytest.raises(ValueError):
        j_from_form(CANON, Endo2(1, 0, 0, 2))  # sqrt(2) is irrational
    with pytest.raises(ValueError):
        scalar_from_form(CANON, Endo2(1, 0, 0, 1))
    with pytest.raises(ValueError):
        scalar_from_form(CANON, -JM)  # negative definite


@st.composite
def admissible(draw):
    w = draw(nonzero)
    a, b = draw(rationals), draw(nonzero)
    jm = Endo2(a, b, -(1 + a * a) / b, -a)
    if (-(jm @ form(w).matrix)).a < 0:
        jm = -jm
    return form(w), jm


@st.composite
def square_grams(draw):
    m = Endo2(*(draw(rationals) for _ in range(4)))
    if m.det() == 0:
        m = m + Endo2(1, 0, 0, 1).scale(1 + abs(m.trace()))
    if m.det() == 0:
        m = Endo2(1, 0, 0, 1)
    return m.transpose() @ m


@settings(max_examples=500)
@given(admissible())
def test_roundtrip_from_j(pair):
    omega, jm = pair
    g = scalar_from_form(omega, jm)
    assert j_from_form(omega, g) == (jm, 1)


@settings(max_examples=500)
@given(nonzero, square_grams())
def test_roundtrip_from_scalar_product(w, g):
    jm, kappa = j_from_form(form(w), g)
    assert kappa > 0
    assert jm @ jm == Endo2(-1, 0, 0, -1)
    assert is_symplectic(form(w), jm)
    assert scalar_from_form(form(w), jm) == g.scale(kappa)


def test_make_phase_plane_examples():
    assert make_phase_plane(Vector3(0, 0, 1), Vector3(1, 0, 0)).e_p == Vector3(0, 1, 0)
    assert make_phase_plane(Vector3(1, 0, 0), Vector3(0, 1, 0)).e_p == Vector3(0, 0, 1)
    assert make_phase_plane(Vector3(0, 0, 1), Vector3(0, 1, 0)).e_p == Vector3(-1, 0, 0)


def test_particle_phase_space():
    s1 = particle_phase_space(1)
    assert s1.n == 3
    assert s1.labels == (("q1", "p1"), ("q2", "p2"), ("q3", "p3"))
    assert particle_phase_space(2).n == 6
    assert all(s1.omega(2 * k, 2 * k + 1) == 1 for k in range(3))
    with pytest.raises(ValueError):
        particle_phase_space(0)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_block_diagonal(n):
    s = symplectic_space(n)
    for i in range(2 * n):
        for k in range(2 * n):
            if i // 2 != k // 2:
                assert s.omega(i, k) == 0
            assert s.omega(i, k) == -s.omega(k, i)


def test_gram_schmidt():
    basis = gram_schmidt(Endo2(4, 0, 0, 9))
    assert basis == [(Fraction(1, 2), 0), (0, Fraction(1, 3))]
