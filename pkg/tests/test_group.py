import itertools

import pytest
from hypothesis import given, strategies as st

from zigzag_mds.constructions import A2_ORDERING, A3_ORDERING
from zigzag_mds.errors import SpecError
from zigzag_mds.group import (
    Ordering,
    Subgroup,
    all_ones,
    all_subgroups,
    format_element,
    min_coset_cost,
    parse_element,
    position_runs,
    skip_cost,
    t1_witnesses,
    unit_vector,
)

P = parse_element


def test_element_round_trip():
    assert P("0110") == 6
    assert format_element(6, 4) == "0110"
    assert unit_vector(1, 3) == P("100")
    assert unit_vector(3, 3) == P("001")
    assert all_ones(4) == 15


def test_subgroup_is_index_two():
    for m in range(1, 6):
        for h in all_subgroups(m):
            mem = h.members()
            assert len(mem) == 1 << (m - 1)
            assert 0 in mem
            assert mem | h.complement() == frozenset(range(1 << m))
            assert all((a ^ b) in mem for a in mem for b in mem)


def test_subgroup_constructors():
    m = 3
    assert Subgroup.coordinate_zero(1, m).members() == {g for g in range(8) if not g & 4}
    eq13 = Subgroup.coordinates_equal(1, 3, m)
    assert eq13.members() == {g for g in range(8) if (g >> 2) & 1 == g & 1}
    with pytest.raises(SpecError):
        Subgroup(3, 0)


def test_skip_cost_examples():
    lex = Ordering.lexicographic(2)
    assert skip_cost({0, 1}, lex) == 0
    assert skip_cost({P("00"), P("10")}, lex) == 1
    tau = Ordering.from_bitstrings(A3_ORDERING)
    assert skip_cost(Subgroup.coordinates_equal(1, 2, 4).members(), tau) == 3
    with pytest.raises(ValueError):
        skip_cost(set(), lex)


def test_min_coset_cost_examples():
    tau = Ordering.from_bitstrings(A2_ORDERING)
    h2 = Subgroup.coordinates_equal(1, 3, 3)
    assert min_coset_cost(h2, tau) == (1, h2.complement())
    h1 = Subgroup.coordinate_zero(1, 2)
    assert min_coset_cost(h1, Ordering.lexicographic(2)) == (0, h1.members())
    h4 = Subgroup.coordinate_zero(1, 4)
    assert min_coset_cost(h4, Ordering.from_bitstrings(A3_ORDERING)) == (3, h4.members())


def test_min_coset_tie_prefers_subgroup():
    h = Subgroup.from_bits("11")
    tau = Ordering.from_bitstrings("00,01,11,10")
    assert skip_cost(h.members(), tau) == skip_cost(h.complement(), tau)
    assert min_coset_cost(h, tau)[1] == h.members()


def test_position_runs():
    tau = Ordering.lexicographic(3)
    assert position_runs({0, 1, 4, 5}, tau) == [(0, 2), (4, 2)]
    assert position_runs({7}, tau) == [(7, 1)]


def test_t1_witnesses_m2():
    hs = [Subgroup.coordinate_zero(1, 2), Subgroup.coordinates_equal(1, 2, 2)]
    assert t1_witnesses(hs) == [all_ones(2), unit_vector(2, 2)]


def test_t1_witnesses_a2_triple():
    hs = [Subgroup.from_bits(b) for b in ("100", "101", "110")]
    assert t1_witnesses(hs) == [P("111"), P("001"), P("010")]


def test_t1_smallest_not_always_all_ones():
    # for m >= 3 a smaller witness than the all-ones vector separates the A(i) pair
    hs = [Subgroup.coordinate_zero(1, 3), Subgroup.coordinates_equal(1, 2, 3)]
    assert t1_witnesses(hs) == [P("110"), P("010")]


def test_t1_infeasible_three_subgroups_m2():
    assert t1_witnesses(all_subgroups(2)) is None


def test_ordering_validation_and_format():
    tau = Ordering.from_bitstrings(A2_ORDERING)
    assert str(tau) == A2_ORDERING
    assert tau.position[P("110")] == 5
    with pytest.raises(SpecError):
        Ordering(2, (0, 1, 1, 3))


@st.composite
def ordering_and_rows(draw):
    m = draw(st.integers(1, 4))
    seq = draw(st.permutations(range(1 << m)))
    rows = draw(st.sets(st.integers(0, (1 << m) - 1), min_size=1))
    return Ordering(m, tuple(seq)), rows


@given(ordering_and_rows())
def test_skip_cost_reversal_invariant(data):
    tau, rows = data
    assert skip_cost(rows, tau) == skip_cost(rows, tau.reversed())
    runs = position_runs(rows, tau)
    assert sum(n for _, n in runs) == len(rows)
    gaps = sum(runs[i + 1][0] - runs[i][0] - runs[i][1] for i in range(len(runs) - 1))
    assert gaps == skip_cost(rows, tau)


@given(st.integers(2, 4).flatmap(lambda m: st.tuples(st.just(m), st.permutations(range(1 << m)))))
def test_min_coset_cost_bounds(data):
    m, seq = data
    tau = Ordering(m, tuple(seq))
    for h in all_subgroups(m):
        c, coset = min_coset_cost(h, tau)
        assert 0 <= c <= (1 << (m - 1)) - 1
        assert len(coset) == 1 << (m - 1)
        assert c == min(skip_cost(h.members(), tau), skip_cost(h.complement(), tau))


def test_witness_membership_predicate_all_pairs_m3():
    for pair in itertools.combinations(all_subgroups(3), 2):
        wit = t1_witnesses(pair)
        assert wit is not None
        for i, w in enumerate(wit):
            assert w not in pair[i] and w in pair[1 - i]
