import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sympcliff import graded
from sympcliff.graded import (GradedTensorElement as T, clifford_relation_check, embed_generator,
                              generators, koszul_sign)
from sympcliff.quaternion import E, I, J, K

from conftest import rationals


def elements(n):
    keys = st.tuples(*[st.sampled_from(graded.SYMBOLS)] * n)
    return st.dictionaries(keys, rationals, max_size=5).map(lambda d: T(n, d))


def test_examples_n2():
    assert T.basis(("eq", "e")) * T.basis(("e", "eq")) == T.basis(("eq", "eq"))
    assert T.basis(("e", "eq")) * T.basis(("eq", "e")) == T.basis(("eq", "eq"), -1)


def test_single_factor_is_quaternion_product():
    # eq, ep, j play the roles of i, j, k through the grading-preserving relabel
    names = {"e": E, "eq": I, "ep": J, "j": K}
    for x, y in itertools.product(names, repeat=2):
        sign, z = graded.SLOT_PRODUCT[(x, y)]
        assert names[x] * names[y] == sign * names[z]


def test_embed_generator_examples():
    assert embed_generator(1, "eq", 2) == T.basis(("eq", "e"))
    assert embed_generator(2, "ep", 2) == T.basis(("e", "ep"))
    for u in generators(3):
        assert u * u == -T.unit(3)
    with pytest.raises(ValueError):
        embed_generator(3, "eq", 2)
    with pytest.raises(ValueError):
        embed_generator(1, "j", 2)


def test_relation_check_examples():
    q1, q2 = embed_generator(1, "eq", 2), embed_generator(2, "eq", 2)
    assert clifford_relation_check(q1, q1) == -2
    assert clifford_relation_check(q1, q2) == 0
    assert clifford_relation_check(q1, embed_generator(1, "ep", 2)) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generator_relations(n):
    gens = generators(n)
    assert len(gens) == 2 * n
    for a, u in enumerate(gens):
        for b, v in enumerate(gens):
            assert clifford_relation_check(u, v) == (-2 if a == b else 0)


def test_koszul_sign():
    assert koszul_sign(("e", "eq"), ("eq", "e")) == -1
    assert koszul_sign(("eq", "e"), ("e", "eq")) == 1
    assert koszul_sign(("j", "eq"), ("eq", "j")) == -1
    assert koszul_sign(("eq", "j"), ("j", "eq")) == 1


@settings(max_examples=200)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_associative(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    u = T.unit(x.n)
    assert u * x == x == x * u


@pytest.mark.parametrize("n", [1, 2, 3])
def test_basis_closed(n):
    keys = list(itertools.product(graded.SYMBOLS, repeat=n))
    assert len(keys) == 4 ** n
    for a in keys:
        for b in keys:
            sign, key = graded.basis_product(a, b)
            assert sign in (1, -1) and tuple(key) in keys


def test_slot_subalgebra():
    rng = random.Random(3)
    n = 3
    for _ in range(200):
        s = rng.randrange(n)

        def slot_elem():
            terms = {}
            for sym in graded.SYMBOLS:
                key = ["e"] * n
                key[s] = sym
                terms[tuple(key)] = rng.randint(-5, 5)
            return T(n, terms)
        assert (slot_elem() * slot_elem()).support_slots() <= {s}


def test_relabel_into_quadratics():
    for x, y in itertools.product(graded.SYMBOLS, repeat=2):
        sign, z = graded.SLOT_PRODUCT[(x, y)]
        want = graded.SLOT_TO_HQ[z]
        got = graded.SLOT_TO_HQ[x] * graded.SLOT_TO_HQ[y]
        assert got.scalar == sign * want.scalar and got.quad == want.quad.scale(sign)


def test_mismatched_sizes():
    with pytest.raises(ValueError):
        T.unit(2) * T.unit(3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_quadratic_surjection_has_full_rank(n):
    import numpy as np
    images = [graded.tensor_to_quadratic(T.basis(key))
              for key in itertools.product(graded.SYMBOLS, repeat=n)]
    monos = sorted({m for img in images for m in img})
    assert len(monos) == (2 * n) * (2 * n + 1) // 2
    mat = np.array([[float(img.get(m, 0)) for m in monos] for img in images])
    assert np.linalg.matrix_rank(mat) == len(monos)
