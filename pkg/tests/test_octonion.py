from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import rational_octonions
from octoclifford.octonion import (
    DIM,
    INDEX,
    SIGN,
    STRUCTURE,
    Octonion,
    associator,
    cayley_dickson_product,
    conj_arrays,
    left_mul_matrix,
    mul_arrays,
    multiplication_table,
    norm_arrays,
    oct_conj,
    oct_inner,
    oct_mul,
    right_mul_matrix,
    unit_left_mul,
)

e = [Octonion.unit(i) for i in range(DIM)]


def test_fano_cycle_rule():
    for i in range(1, 8):
        a, b, c = i, i % 7 + 1, (i + 2) % 7 + 1
        assert oct_mul(e[a], e[b]) == e[c]
        assert oct_mul(e[b], e[a]) == -e[c]


def test_named_products():
    assert oct_mul(e[1], e[2]) == e[4]
    assert oct_mul(e[3], e[3]) == -e[0]
    assert associator(e[1], e[2], e[3]) == Octonion.unit(6) * -2


def test_frozen_first_rows():
    # derived from the relabelled doubling table; frozen
    table = multiplication_table()
    assert table[1] == ["e1", "-e0", "e4", "e7", "-e2", "e6", "-e5", "-e3"]
    assert table[0] == [f"e{j}" for j in range(8)]


def test_table_is_read_only():
    with pytest.raises(ValueError):
        SIGN[1, 2] = 1
    assert STRUCTURE.shape == (8, 8, 8)


def test_table_is_a_signed_latin_square():
    for i in range(DIM):
        assert sorted(INDEX[i]) == list(range(DIM))
        assert sorted(INDEX[:, i]) == list(range(DIM))
    for i in range(1, DIM):
        assert SIGN[i, i] == -1 and INDEX[i, i] == 0


def test_raw_doubling_is_a_composition_algebra():
    x = tuple(Fraction(v) for v in (1, -2, 3, 0, 1, 1, -1, 2))
    y = tuple(Fraction(v) for v in (0, 1, 1, 2, -3, 0, 1, 1))
    z = cayley_dickson_product(x, y)
    assert sum(v * v for v in z) == sum(v * v for v in x) * sum(v * v for v in y)


@given(rational_octonions, rational_octonions)
def test_norm_multiplicative(p, q):
    assert oct_mul(p, q).norm2() == p.norm2() * q.norm2()


@given(rational_octonions, rational_octonions, rational_octonions)
def test_associator_alternating(a, b, c):
    z = Octonion.zero()
    assert associator(a, a, b) == z
    assert associator(a, b, b) == z
    assert associator(a, b, c) == -associator(b, a, c)
    assert associator(oct_conj(a), b, c) == -associator(a, b, c)


@given(rational_octonions, rational_octonions)
def test_conjugation_reverses_products(p, q):
    assert oct_conj(oct_mul(p, q)) == oct_mul(oct_conj(q), oct_conj(p))


@given(rational_octonions, rational_octonions)
def test_left_mul_lemma(p, q):
    lhs = left_mul_matrix(p) @ left_mul_matrix(oct_conj(q)) + left_mul_matrix(q) @ left_mul_matrix(oct_conj(p))
    eye = np.eye(8, dtype=int).astype(object)
    assert (lhs - 2 * oct_inner(p, q) * eye == 0).all()


@given(rational_octonions, rational_octonions)
def test_matrices_match_product(p, q):
    v = np.array(q.coeffs, dtype=object)
    assert tuple(left_mul_matrix(p) @ v) == oct_mul(p, q).coeffs
    assert tuple(right_mul_matrix(q) @ np.array(p.coeffs, dtype=object)) == oct_mul(p, q).coeffs


def test_exact_division_stays_rational():
    q = Octonion.unit(3) / 2
    assert q.coeffs[3] == Fraction(1, 2) and q.exact


def test_array_kernels_match_scalar_product():
    rng = np.random.default_rng(1)
    a, b = rng.standard_normal((2, 5, 8))
    prod = mul_arrays(a, b)
    for row in range(5):
        ref = oct_mul(Octonion.from_vector(a[row]), Octonion.from_vector(b[row]))
        np.testing.assert_allclose(prod[row], [float(v) for v in ref.coeffs], atol=1e-12)
    np.testing.assert_allclose(norm_arrays(prod), norm_arrays(a) * norm_arrays(b), rtol=1e-12)
    unit = np.zeros(8)
    unit[5] = 1
    np.testing.assert_allclose(unit_left_mul(5, b), mul_arrays(np.broadcast_to(unit, b.shape), b), atol=1e-15)
    np.testing.assert_array_equal(conj_arrays(a)[:, 0], a[:, 0])
    np.testing.assert_array_equal(conj_arrays(a)[:, 1:], -a[:, 1:])


def test_float_and_exact_mix():
    p = Octonion.from_vector([0.5] * 8)
    q = Octonion.unit(2)
    assert not oct_mul(p, q).exact
    assert abs(p) == pytest.approx(np.sqrt(2.0))
