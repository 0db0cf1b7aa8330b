import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zigzag_mds.errors import FieldError, ZeroInverseError
from zigzag_mds.field import (
    build_field,
    clmul_reduce,
    default_modulus,
    field_for_length,
    find_factor,
    inv,
    is_irreducible,
    mul,
    poly_str,
)


def test_gf8_generator_relation(gf8):
    w = gf8.element(1)
    assert gf8.pow(w, 3) == w ^ 1  # w^3 = w + 1
    assert gf8.generator == 2


def test_gf2_base_case():
    f = build_field(1, 0b11)
    assert f.order == 2
    assert f.mul(1, 1) == 1 and f.inv(1) == 1
    assert default_modulus(1) == 0b11


def test_reducible_modulus_names_factor():
    with pytest.raises(FieldError) as exc:
        build_field(3, 0b1111)
    assert exc.value.factor == 0b11
    assert "x+1" in str(exc.value)


@pytest.mark.parametrize("w", [0, 17])
def test_width_out_of_range(w):
    with pytest.raises(FieldError):
        build_field(w)


def test_modulus_degree_must_match():
    with pytest.raises(FieldError):
        build_field(4, 0b1011)


def test_hex_modulus_string():
    assert build_field(3, "0xB") == build_field(3, 0b1011)
    assert build_field(3).modulus_hex == "0xB"


def test_default_moduli_smallest_irreducible():
    # brute force: first irreducible of each degree, skipping multiples of x
    for w in range(2, 11):
        first = next(p for p in range((1 << w) + 1, 1 << (w + 1), 2) if find_factor(p) is None)
        assert default_modulus(w) == first
    assert default_modulus(8) == 0x11B
    assert poly_str(0x11B) == "x^8+x^4+x^3+x+1"


def test_mul_examples(gf8):
    w = gf8.element
    assert mul(w(1), w(2), gf8) == w(1) ^ 1
    assert mul(5, 1, gf8) == 5
    assert mul(w(5), w(5), gf8) == w(3)


def test_inv_examples(gf8):
    w = gf8.element
    assert inv(1, gf8) == 1
    assert inv(w(2), gf8) == w(5)
    assert inv(w(1), gf8) == w(6)
    with pytest.raises(ZeroInverseError):
        inv(0, gf8)
    with pytest.raises(ZeroDivisionError):
        gf8.inv_by_power(0)


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_mul_matches_shift_reduce_exhaustively(w):
    f = build_field(w)
    for a in range(f.order):
        for b in range(f.order):
            assert f.mul(a, b) == clmul_reduce(a, b, f.modulus)


@pytest.mark.parametrize("w", [8, 16])
def test_mul_matches_shift_reduce_random(w):
    f = build_field(w)
    rng = random.Random(w)
    for _ in range(10_000):
        a, b = rng.randrange(f.order), rng.randrange(f.order)
        assert f.mul(a, b) == clmul_reduce(a, b, f.modulus)


@pytest.mark.parametrize("w", range(1, 9))
def test_inverse_exhaustive_and_methods_agree(w):
    f = build_field(w)
    for a in range(1, f.order):
        x = f.inv(a)
        assert f.mul(a, x) == 1
        assert x == f.inv_by_power(a)


def test_mul_array_matches_scalar(gf8):
    a, b = np.meshgrid(np.arange(8), np.arange(8))
    got = gf8.mul_array(a, b)
    assert all(got[i, j] == gf8.mul(a[i, j], b[i, j]) for i in range(8) for j in range(8))


def test_enumeration_and_field_for_length(gf8):
    w = gf8.element
    assert gf8.enumerate() == [0] + [w(i) for i in range(7)]
    assert field_for_length(7).w == 3
    assert field_for_length(9).w == 4
    assert field_for_length(61).w == 6


def test_irreducibility_oracle():
    assert is_irreducible(0b111)
    assert not is_irreducible(0b101)  # (x+1)^2


elements16 = st.integers(0, 15)


@given(elements16, elements16, elements16)
def test_field_axioms_gf16(a, b, c):
    f = build_field(4)
    assert f.add(a, b) == f.add(b, a)
    assert f.add(a, a) == 0
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@given(st.integers(1, 0xFFFF))
def test_inverse_gf65536(a):
    f = build_field(16)
    assert f.mul(a, f.inv(a)) == 1
