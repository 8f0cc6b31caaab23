from itertools import combinations

import hypothesis.strategies as st
import pytest
from hypothesis import given

from octoclifford.clifford import (
    Multivector,
    blade_index,
    blade_product_sign,
    blades,
    embed_vector,
    geometric_product,
    indices_to_mask,
    mask_to_indices,
    star_conj,
    star_sign,
)

dims = st.integers(1, 5)


def random_mv(n, data):
    return Multivector(n, [data.draw(st.integers(-5, 5)) for _ in range(2**n)])


def test_blade_order_is_graded_lex():
    assert blades(3) == (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
    assert len(blades(8)) == 256
    assert blade_index(3)[0b110] == 6


def test_mask_round_trip():
    for mask in blades(6):
        assert indices_to_mask(mask_to_indices(mask)) == mask


def test_generators_anticommute():
    for n in (3, 8):
        for i, j in combinations(range(n), 2):
            ei, ej = Multivector.generator(n, i), Multivector.generator(n, j)
            assert ei * ej + ej * ei == Multivector.scalar(n, 0)
        e0 = Multivector.generator(n, 0)
        assert e0 * e0 == Multivector.scalar(n, -1)


def test_blade_product_sign_examples():
    # e1 e0 = -e0 e1; (e0 e1)(e0 e1) = -1
    assert blade_product_sign(0b10, 0b01) == -1
    assert blade_product_sign(0b11, 0b11) == -1
    assert blade_product_sign(0b01, 0b10) == 1


@given(st.data())
def test_associativity(data):
    n = data.draw(dims)
    a, b, c = (random_mv(n, data) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(st.data())
def test_star_is_an_antiautomorphism(data):
    n = data.draw(st.integers(1, 4))
    a, b = random_mv(n, data), random_mv(n, data)
    assert star_conj(a * b) == star_conj(b) * star_conj(a)
    assert star_conj(star_conj(a)) == a


def test_star_sign_table():
    assert [star_sign(k) for k in range(9)] == [1, -1, -1, 1, 1, -1, -1, 1, 1]


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_vector_squares_to_minus_norm(v):
    x = embed_vector(v)
    assert x * x == Multivector.scalar(4, -sum(c * c for c in v))


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        geometric_product(Multivector.scalar(2), Multivector.scalar(3))
    with pytest.raises(ValueError):
        Multivector.generator(3, 3)


def test_blade_coefficient_lookup():
    b = Multivector.blade(4, (2, 0))
    assert b.coefficient((0, 2)) == -1
