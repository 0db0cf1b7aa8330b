import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zigzag_mds.code import (
    GeneratorMatrix,
    ZigzagCodeSpec,
    build_generator,
    cauchy_coefficients,
    decode_any_k,
    encode,
    encode_with_generator,
    make_spec,
    parity_column,
    translation_matrix,
)
from zigzag_mds.constructions import build_family
from zigzag_mds.errors import DecodeError, SpecError
from zigzag_mds.field import build_field
from zigzag_mds.group import parse_element


def test_code744_coefficient_rows(code744, gf8):
    w = gf8.element
    assert cauchy_coefficients(code744) == [
        [w(5), w(4), w(3), w(2)],
        [w(1), w(6), w(2), w(3)],
        [w(3), 1, w(5), w(1)],
    ]


def test_default_parameters_reproduce_small_code(code744, gf8):
    spec = make_spec([list(r) for r in code744.labels], 2, field=gf8)
    assert spec.alphas == code744.alphas and spec.betas == code744.betas


def test_gf2_single_coefficient():
    spec = make_spec([[0]], 1, field=build_field(1, 0b11), alphas=[0], betas=[1])
    assert cauchy_coefficients(spec) == [[1]]


def test_repeated_parameter_rejected(code744):
    with pytest.raises(SpecError):
        make_spec([list(r) for r in code744.labels], 2, field=code744.field,
                  alphas=[0, 1, 2], betas=[2, 3, 4, 5])


def test_translation_blocks(code744):
    gen = build_generator(code744)
    gamma = cauchy_coefficients(code744)
    anti = np.fliplr(np.eye(4, dtype=np.int32))
    swap = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert np.array_equal(gen.block(5, 0), gamma[1][0] * anti)  # A21, label 11
    assert np.array_equal(gen.block(5, 1), gamma[1][1] * swap)  # A22, label 01
    assert np.array_equal(gen.block(4, 2), gamma[0][2] * np.eye(4, dtype=np.int32))
    assert np.array_equal(gen.block(1, 1), np.eye(4, dtype=np.int32))
    assert not gen.block(1, 0).any()
    assert np.array_equal(translation_matrix(0, 2), np.eye(4, dtype=np.int32))


def test_parity_row_combines_shifted_rows(code744, gf8):
    # parity 2 row 00 draws a1[11], a2[01], a3[00], a4[00]
    g = cauchy_coefficients(code744)
    for j, row in enumerate(("11", "01", "00", "00")):
        msg = np.zeros((4, 4), dtype=np.int32)
        msg[j, parse_element(row)] = 1
        assert parity_column(code744, msg, 1)[0] == g[1][j]
    msg = np.zeros((4, 4), dtype=np.int32)
    msg[0, 3] = 1
    assert encode(code744, msg)[5, 0] == gf8.element(1)


def test_zero_message(code744):
    assert not encode(code744, np.zeros((4, 4), dtype=np.int32)).any()


def test_message_shape_checked(code744):
    with pytest.raises(SpecError):
        encode(code744, np.zeros((3, 4), dtype=np.int32))
    with pytest.raises(SpecError):
        encode(code744, np.full((4, 4), 8))


CATALOG = [("A1", 2, 0), ("A2", 2, 0), ("A2", 3, 1), ("A3", 2, 0), ("B1", None, 0), ("B2", None, 0)]


@pytest.mark.parametrize("fam", CATALOG)
def test_formula_matches_generator(fam):
    spec = build_family(fam[0], s=fam[1], drop=fam[2])
    rng = np.random.default_rng(7)
    msg = rng.integers(0, spec.field.order, (spec.k, spec.M, 5))
    assert np.array_equal(encode(spec, msg), encode_with_generator(spec, msg))


def _small_catalog(code744):
    return [code744, build_family("B1"), build_family("B2"), build_family("A1", s=2)]


def test_decode_every_subset_small_catalog(code744):
    rng = np.random.default_rng(3)
    for spec in _small_catalog(code744):
        gen = build_generator(spec)
        msg = rng.integers(0, spec.field.order, (spec.k, spec.M, 3))
        cw = encode(spec, msg)
        for nodes in itertools.combinations(range(spec.n), spec.k):
            got = decode_any_k(spec, {v: cw[v] for v in nodes}, gen)
            assert np.array_equal(got, msg), nodes


@pytest.mark.parametrize("nodes", [(1, 2, 3, 4), (4, 5, 6, 3)])
def test_decode_example_sets(code744, nodes):
    rng = np.random.default_rng(11)
    gen = build_generator(code744)
    for _ in range(100):
        msg = rng.integers(0, 8, (4, 4))
        cw = encode(code744, msg)
        assert np.array_equal(decode_any_k(code744, {v: cw[v] for v in nodes}, gen), msg)


def test_decode_systematic_copy(code744):
    msg = np.arange(16).reshape(4, 4) % 8
    cw = encode(code744, msg)
    assert np.array_equal(decode_any_k(code744, {v: cw[v] for v in range(4)}), msg)


def test_decode_argument_errors(code744):
    cw = encode(code744, np.zeros((4, 4), dtype=np.int32))
    with pytest.raises(SpecError):
        decode_any_k(code744, {v: cw[v] for v in range(3)})
    with pytest.raises(SpecError):
        decode_any_k(code744, {0: cw[0], 1: cw[1], 2: cw[2], 9: cw[0]})


def test_singular_selection_names_nodes(code744):
    gen = build_generator(code744)
    gt = gen.gt.copy()
    M = code744.M
    gt[6 * M : 7 * M] = gt[5 * M : 6 * M]  # p3 duplicates p2
    bad = GeneratorMatrix(gen.n, gen.k, gen.M, gt)
    cw = np.zeros((7, 4), dtype=np.int32)
    with pytest.raises(DecodeError) as exc:
        decode_any_k(code744, {v: cw[v] for v in (2, 3, 5, 6)}, bad)
    assert exc.value.nodes == (2, 3, 5, 6)
    assert "p2" in str(exc.value) and "p3" in str(exc.value)


def test_update_locality(code744):
    rng = np.random.default_rng(5)
    msg = rng.integers(0, 8, (4, 4))
    base = encode(code744, msg)
    for j in range(4):
        for g in range(4):
            m2 = msg.copy()
            m2[j, g] ^= 1 + rng.integers(0, 7)
            diff = encode(code744, m2) != base
            assert diff[4:].sum(axis=1).tolist() == [1, 1, 1]


def test_json_round_trip(code744):
    doc = json.loads(code744.to_json())
    assert doc["labels"][1] == ["11", "01", "00", "00"]
    assert doc["field"] == {"w": 3, "modulus_hex": "0xB"}
    again = ZigzagCodeSpec.from_json(code744.to_json())
    assert again == code744
    assert again.to_json() == code744.to_json()
    assert again.digest() == code744.digest()


def test_json_with_hints_and_family():
    spec = build_family("A3", s=3, drop=2)
    again = ZigzagCodeSpec.from_json(spec.to_json())
    assert again == spec and again.family == spec.family
    assert ZigzagCodeSpec.from_dict({"family": "A3", "s": 3, "drop": 2}) == spec


def test_malformed_documents(code744):
    doc = code744.to_dict()
    del doc["alphas"]
    with pytest.raises(SpecError):
        ZigzagCodeSpec.from_dict(doc)
    doc = code744.to_dict()
    doc["labels"][0] = doc["labels"][0][:3]
    with pytest.raises(SpecError):
        ZigzagCodeSpec.from_dict(doc)


def test_field_too_small():
    with pytest.raises(SpecError):
        make_spec([[0] * 7, [0] * 7], 1, field=build_field(3))


@st.composite
def random_specs(draw):
    m = draw(st.integers(1, 2))
    k = draw(st.integers(1, 3))
    p = draw(st.integers(1, 3))
    labels = [[draw(st.integers(0, (1 << m) - 1)) for _ in range(k)] for _ in range(p)]
    w = draw(st.integers(3, 4))
    f = build_field(w)
    params = draw(st.permutations(range(f.order)))[: p + k]
    return make_spec(labels, m, field=f, alphas=params[:p], betas=params[p:])


@settings(max_examples=40, deadline=None)
@given(random_specs(), st.integers(0, 2**32 - 1))
def test_any_labels_any_k_nodes_decode(spec, seed):
    # distinct Cauchy parameters give MDS codes for every label choice
    rng = np.random.default_rng(seed)
    msg = rng.integers(0, spec.field.order, (spec.k, spec.M))
    cw = encode(spec, msg)
    gen = build_generator(spec)
    for nodes in itertools.combinations(range(spec.n), spec.k):
        assert np.array_equal(decode_any_k(spec, {v: cw[v] for v in nodes}, gen), msg)
