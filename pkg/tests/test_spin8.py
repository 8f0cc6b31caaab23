from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
from hypothesis import given

from conftest import rational_octonions
from octoclifford import spin8
from octoclifford.clifford import blade_index, blade_product_sign, blades
from octoclifford.octonion import Octonion, left_mul_matrix

I16 = spin8._identity(True)


def test_generators_satisfy_clifford_relations():
    gens = [spin8.generator(i) for i in range(8)]
    for i, j in combinations_with_replacement(range(8), 2):
        r = gens[i] @ gens[j] + gens[j] @ gens[i] + (2 if i == j else 0) * I16
        assert (r == 0).all()


def test_e0_action_and_mixed_product():
    a, b = Octonion.unit(2), Octonion.unit(5)
    out = spin8.apply(spin8.generator(0), spin8.SpinorPair(a, b))
    assert out.plus == b and out.minus == -a
    m = spin8.generator(0) @ spin8.generator(3)
    l3 = left_mul_matrix(Octonion.unit(3))
    assert (m[:8, :8] == l3).all() and (m[8:, 8:] == -l3).all()


def test_universality_rank():
    rows = [m.ravel() for m in spin8.blade_images(exact=True)]
    assert spin8.exact_rank(rows) == 256


def test_exact_rank_small_cases():
    assert spin8.exact_rank([[1, 2], [2, 4]]) == 1
    assert spin8.exact_rank([[0, 0]]) == 0
    assert spin8.exact_rank([[Fraction(1, 3), 1], [1, 3], [0, 1]]) == 2


def test_representation_is_multiplicative_on_blades():
    images = spin8.blade_images(exact=False)
    masks = blades(8)
    index = blade_index(8)
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, 256, size=(40, 2)):
        s = blade_product_sign(masks[a], masks[b])
        np.testing.assert_array_equal(images[a] @ images[b], s * images[index[masks[a] ^ masks[b]]])


@given(rational_octonions)
def test_vector_image_squares_to_minus_norm(q):
    m = spin8.rep_vector(q)
    assert ((m @ m) + q.norm2() * I16 == 0).all()


@given(rational_octonions, rational_octonions)
def test_split_reconstructs_and_tan_is_projection(p, q):
    s = spin8.SpinorPair(p, q)
    assert spin8.split(s).reconstruct() == s
    t = spin8.tan_projection(s)
    assert spin8.tan_projection(t) == t
    assert t.plus == t.minus


def test_vector_round_trip():
    v = list(range(16))
    assert list(spin8.SpinorPair.from_vector(v).to_vector()) == v
