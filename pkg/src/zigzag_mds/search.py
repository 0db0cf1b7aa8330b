"""Search for orderings that keep ``max_i c(H_i; tau)`` small over ``t`` subgroups.

For a fixed ordering the best ``t``-tuple is read off the sorted c-values of
all ``2^m - 1`` index-two subgroups: the optimum is the ``t``-th smallest one.
Exhaustive mode walks every permutation in lexicographic order and counts how
many (ordering, tuple) candidates it covered.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import SearchError
from .group import Ordering, Subgroup, format_element

EXHAUSTIVE_MAX_M = 3


@dataclass(frozen=True)
class SearchResult:
    m: int
    t: int
    mode: str
    ordering: Ordering
    subgroups: tuple[Subgroup, ...]
    c_values: tuple[int, ...]
    max_c: int
    certificate: dict

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "t": self.t,
            "mode": self.mode,
            "ordering": self.ordering.to_bitstrings(),
            "subgroups": [h.bits for h in self.subgroups],
            "c": list(self.c_values),
            "max_c": self.max_c,
            "certificate": self.certificate,
        }


def evaluate_ordering(tau: Ordering, t: int, backend=None) -> tuple[int, tuple[Subgroup, ...], tuple[int, ...]]:
    """Best ``t`` subgroups for one ordering: ``(max_c, subgroups, their c-values)``."""
    m = tau.m
    checks = list(range(1, 1 << m))
    costs = kernels.coset_costs(np.array([tau.sequence]), m, checks, backend)[0]
    value = int(np.sort(costs)[t - 1])
    chosen = [a for a, c in zip(checks, costs) if c <= value][:t]
    return value, tuple(Subgroup(m, a) for a in chosen), tuple(int(costs[a - 1]) for a in chosen)


def _canonical_mask(perms: np.ndarray) -> np.ndarray:
    """True where ``tau`` is not larger than its reversed-and-retranslated partner."""
    partner = perms[:, ::-1] ^ perms[:, -1:]
    diff = perms != partner
    first = np.argmax(diff, axis=1)
    rows = np.arange(len(perms))
    same = ~diff.any(axis=1)
    return same | (perms[rows, first] < partner[rows, first])


def _exhaustive_batches(M: int, prune: bool, size: int):
    if prune:
        it = ((0,) + rest for rest in itertools.permutations(range(1, M)))
    else:
        it = itertools.permutations(range(M))
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        perms = np.array(chunk, dtype=np.int32)
        if prune:
            perms = perms[_canonical_mask(perms)]
        yield perms


def _random_batches(M: int, budget: int, seed: int, prune: bool, size: int):
    rng = np.random.default_rng(seed)
    left = budget
    while left > 0:
        b = min(size, left)
        perms = np.argsort(rng.random((b, M)), axis=1).astype(np.int32)
        if prune:
            perms ^= perms[:, :1]
        left -= b
        yield perms


def search_orderings(m: int, t: int, mode: str = "exhaustive", budget: int | None = None,
                     seed: int = 0, prune: bool = False, workers: int | None = None,
                     backend=None, batch_size: int = 4096) -> SearchResult:
    """Minimize ``max_i c(H_i; tau)`` over orderings and ``t`` distinct subgroups.

    Ties go to the lexicographically smallest ordering, then to the smallest
    subgroup check vectors.  ``prune`` restricts to orderings starting at the
    zero element and to one of each reversal pair; translations and reversal
    leave every c-value unchanged.
    """
    if m < 1:
        raise SearchError("m must be >= 1")
    n_sub = (1 << m) - 1
    if not 1 <= t <= n_sub:
        raise SearchError(f"Z_2^{m} has {n_sub} index-two subgroups; cannot pick t={t}")
    M = 1 << m
    if mode == "exhaustive":
        if m > EXHAUSTIVE_MAX_M:
            raise SearchError(f"exhaustive search is limited to m <= {EXHAUSTIVE_MAX_M}")
        batches = _exhaustive_batches(M, prune, batch_size)
    elif mode == "randomized":
        if budget is None or budget < 1:
            raise SearchError("randomized search needs a positive budget")
        batches = _random_batches(M, budget, seed, prune, batch_size)
    else:
        raise SearchError(f"unknown search mode {mode!r}")

    checks = list(range(1, M))
    members = kernels.membership_table(m, checks)
    impl = kernels.get_backend(backend)

    def evaluate(perms):
        costs = impl.coset_costs(perms, members)
        return perms, costs

    best_value = None
    best_perm = None
    orderings = 0
    histogram: dict[int, int] = {}
    per_ordering_values = []
    pool = ThreadPoolExecutor(workers) if workers and workers > 1 else None
    try:
        results = pool.map(evaluate, batches) if pool else map(evaluate, batches)
        for perms, costs in results:
            if len(perms) == 0:
                continue
            srt = np.sort(costs, axis=1)
            values = srt[:, t - 1]
            orderings += len(perms)
            for v, cnt in zip(*np.unique(values, return_counts=True)):
                histogram[int(v)] = histogram.get(int(v), 0) + int(cnt)
            per_ordering_values.append(srt.astype(np.int16))
            i = int(np.argmin(values))  # first index: batches are in order
            v = int(values[i])
            if best_value is None or v < best_value:
                best_value, best_perm = v, perms[i].copy()
            elif v == best_value and mode == "randomized":
                cand = perms[values == v]
                first = cand[np.lexsort(cand.T[::-1])[0]]
                if tuple(first) < tuple(best_perm):
                    best_perm = first.copy()
    finally:
        if pool:
            pool.shutdown()

    tau = Ordering(m, tuple(int(g) for g in best_perm))
    value, subgroups, cvals = evaluate_ordering(tau, t, backend)
    assert value == best_value

    at_optimum = 0
    below = 0
    for srt in per_ordering_values:
        le = (srt <= best_value).sum(axis=1)
        lt = (srt < best_value).sum(axis=1)
        at_optimum += sum(math.comb(int(a), t) - math.comb(int(b), t) for a, b in zip(le, lt))
        below += sum(math.comb(int(b), t) for b in lt)
    certificate = {
        "orderings_examined": orderings,
        "tuples_per_ordering": math.comb(n_sub, t),
        "tuples_examined": orderings * math.comb(n_sub, t),
        "tuples_at_optimum": at_optimum,
        "tuples_below_optimum": below,
        "orderings_by_value": {str(k): histogram[k] for k in sorted(histogram)},
        "pruned": prune,
    }
    if mode == "exhaustive":
        certificate["statement"] = (
            f"no tuple achieves max-c = {best_value - 1}" if best_value > 0
            else "max-c = 0 is attained"
        )
    else:
        certificate["seed"] = seed
        certificate["statement"] = "sampled orderings only; no optimality claim"
    return SearchResult(m, t, mode, tau, subgroups, cvals, best_value, certificate)


def result_fragment(result: SearchResult) -> dict:
    """Ordering and subgroup check vectors in code-spec field names."""
    return {
        "m": result.m,
        "ordering": result.ordering.to_bitstrings(),
        "subgroups": [format_element(h.check, result.m) for h in result.subgroups],
    }
