import itertools
import math

import pytest

from zigzag_mds import kernels
from zigzag_mds.constructions import A2_ORDERING
from zigzag_mds.errors import SearchError
from zigzag_mds.group import Ordering
from zigzag_mds.search import evaluate_ordering, result_fragment, search_orderings


def brute_c(perm, check):
    """Independent c-value: cheaper of the two cosets by skipped positions."""
    def skip(inside):
        pos = [i for i, g in enumerate(perm) if (bin(g & check).count("1") % 2 == 0) == inside]
        return pos[-1] - pos[0] + 1 - len(pos)
    return min(skip(True), skip(False))


def brute_certificate(m, t):
    M = 1 << m
    checks = range(1, M)
    values = []
    for perm in itertools.permutations(range(M)):
        c = {a: brute_c(perm, a) for a in checks}
        for combo in itertools.combinations(checks, t):
            values.append(max(c[a] for a in combo))
    best = min(values)
    return best, len(values), values.count(best)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_certificate_matches_brute_force_m2(t):
    res = search_orderings(2, t)
    best, total, at_opt = brute_certificate(2, t)
    assert res.max_c == best
    assert res.certificate["tuples_examined"] == total
    assert res.certificate["tuples_at_optimum"] == at_opt


def test_m2_t2_zero():
    res = search_orderings(2, 2)
    assert res.max_c == 0
    assert res.certificate["statement"] == "max-c = 0 is attained"


def test_m2_t3_one():
    assert search_orderings(2, 3).max_c == 1


def test_m3_t3_optimum_is_one():
    res = search_orderings(3, 3)
    assert res.max_c == 1
    assert res.ordering == Ordering.from_bitstrings(A2_ORDERING)
    assert [h.bits for h in res.subgroups] == ["100", "101", "110"]
    assert res.c_values == (0, 1, 1)
    cert = res.certificate
    assert cert["orderings_examined"] == math.factorial(8)
    assert cert["tuples_examined"] == math.factorial(8) * 35 == 1_411_200
    assert cert["tuples_at_optimum"] == 56_448
    assert cert["tuples_below_optimum"] == 0
    assert sum(cert["orderings_by_value"].values()) == math.factorial(8)
    assert cert["statement"] == "no tuple achieves max-c = 0"


def test_reevaluation_reproduces_value():
    res = search_orderings(3, 3)
    value, subs, cvals = evaluate_ordering(res.ordering, 3)
    assert value == res.max_c and subs == res.subgroups
    assert all(brute_c(res.ordering.sequence, h.check) == c for h, c in zip(subs, cvals))


@pytest.mark.parametrize("m,t", [(2, 2), (3, 1), (3, 3), (3, 7)])
def test_pruned_agrees(m, t):
    full = search_orderings(m, t)
    pruned = search_orderings(m, t, prune=True)
    assert (pruned.max_c, pruned.ordering) == (full.max_c, full.ordering)
    assert pruned.certificate["orderings_examined"] < full.certificate["orderings_examined"]


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_backends_and_workers_agree(backend):
    ref = search_orderings(3, 4, backend="python").to_dict()
    assert search_orderings(3, 4, backend=backend, workers=3, batch_size=1000).to_dict() == ref


def test_randomized_reproducible():
    a = search_orderings(4, 5, mode="randomized", budget=3000, seed=7)
    b = search_orderings(4, 5, mode="randomized", budget=3000, seed=7)
    assert a.to_dict() == b.to_dict()
    assert a.certificate["seed"] == 7 and a.certificate["orderings_examined"] == 3000
    assert max(a.c_values) == a.max_c


def test_randomized_never_beats_exhaustive():
    exact = search_orderings(3, 3).max_c
    for seed in range(3):
        assert search_orderings(3, 3, mode="randomized", budget=500, seed=seed).max_c >= exact


@pytest.mark.parametrize("kwargs", [
    dict(m=2, t=0), dict(m=2, t=4), dict(m=0, t=1), dict(m=4, t=2),
    dict(m=3, t=2, mode="randomized"), dict(m=3, t=2, mode="randomized", budget=0),
    dict(m=2, t=1, mode="annealing"),
])
def test_search_errors(kwargs):
    with pytest.raises(SearchError):
        search_orderings(**kwargs)


def test_fragment():
    frag = result_fragment(search_orderings(2, 2))
    assert frag["m"] == 2 and len(frag["subgroups"]) == 2
    assert Ordering.from_bitstrings(frag["ordering"]).m == 2
