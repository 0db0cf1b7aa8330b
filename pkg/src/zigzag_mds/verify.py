"""Executable checks: exhaustive MDS verification and the determinant identities.

``det_generic`` works over any object exposing ``add``, ``sub``, ``mul`` and
``inv`` on ints (``0`` and ``1`` being the field's zero and one), so the same
oracle runs over GF(2^w) and over test stand-ins of other characteristic.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .code import ZigzagCodeSpec, build_generator, cauchy_matrix, translation_matrix
from .errors import SpecError
from .field import FieldSpec


def det_generic(matrix, field) -> int:
    """Determinant by Gaussian elimination using only the field's operations."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = field.sub(0, det)
        pivot = a[c][c]
        det = field.mul(det, pivot)
        inv_p = field.inv(pivot)
        for r in range(c + 1, n):
            if a[r][c] == 0:
                continue
            factor = field.mul(a[r][c], inv_p)
            row_c, row_r = a[c], a[r]
            for j in range(c, n):
                if row_c[j]:
                    row_r[j] = field.sub(row_r[j], field.mul(factor, row_c[j]))
    return det


def _power(field, a: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = field.mul(out, a)
    return out


@dataclass(frozen=True)
class MDSReport:
    params: tuple[int, int, int]
    passed: bool
    subsets_checked: int
    total_subsets: int
    failing: tuple[int, ...] | None
    failing_rank: int | None
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "check": "mds",
            "params": list(self.params),
            "status": "pass" if self.passed else "fail",
            "subsets_checked": self.subsets_checked,
            "total_subsets": self.total_subsets,
            "failing_nodes": list(self.failing) if self.failing is not None else None,
            "failing_rank": self.failing_rank,
            "seconds": round(self.elapsed, 4),
        }


def mds_check(spec: ZigzagCodeSpec, *, workers: int | None = None, backend=None,
              gen=None) -> MDSReport:
    """Rank of every ``kM x kM`` submatrix of ``G^T`` over ``k``-subsets of nodes.

    Subsets are visited in lexicographic order and the first deficient one is
    reported, independent of ``workers``.  ``gen`` overrides the generator
    built from ``spec``.
    """
    start = time.perf_counter()
    gen = gen or build_generator(spec)
    full = spec.k * spec.M
    subsets = itertools.combinations(range(spec.n), spec.k)
    total = math.comb(spec.n, spec.k)

    def rank_of(nodes):
        return kernels.rank(gen.rows_for(nodes), spec.field, backend)

    checked = 0
    batch = max(1, (workers or 1) * 8)
    pool = ThreadPoolExecutor(workers) if workers and workers > 1 else None
    try:
        while True:
            chunk = list(itertools.islice(subsets, batch))
            if not chunk:
                break
            ranks = list(pool.map(rank_of, chunk)) if pool else map(rank_of, chunk)
            for nodes, r in zip(chunk, ranks):
                checked += 1
                if r < full:
                    return MDSReport(spec.params, False, checked, total, nodes, r,
                                     time.perf_counter() - start)
    finally:
        if pool:
            pool.shutdown()
    return MDSReport(spec.params, True, checked, total, None, None, time.perf_counter() - start)


def block_matrix(coeffs, labels, m: int) -> np.ndarray:
    """``[coeffs[i][j] * P_{labels[i][j]}]`` as an ``(rM x cM)`` int array."""
    M = 1 << m
    rows, cols = len(coeffs), len(coeffs[0])
    out = np.zeros((rows * M, cols * M), dtype=np.int64)
    g = np.arange(M)
    for i in range(rows):
        for j in range(cols):
            out[i * M + g, j * M + (g ^ labels[i][j])] = coeffs[i][j]
    return out


def cauchy_ratio(alphas, betas, f: FieldSpec) -> int:
    num = 1
    n = len(alphas)
    for i in range(n):
        for j in range(i + 1, n):
            num = f.mul(num, f.mul(alphas[i] ^ alphas[j], betas[j] ^ betas[i]))
    den = 1
    for a in alphas:
        for b in betas:
            den = f.mul(den, a ^ b)
    return f.div(num, den)


def cauchy_block_det(alphas, betas, perm_labels, f: FieldSpec, m: int) -> tuple[int, int, bool]:
    """Determinant of the block Cauchy-permutation matrix vs. ``ratio^M``."""
    n = len(alphas)
    if len(betas) != n or len(perm_labels) != n or any(len(r) != n for r in perm_labels):
        raise SpecError("need N alphas, N betas and an N x N label grid")
    gamma = cauchy_matrix(alphas, betas, f)
    direct = det_generic(block_matrix(gamma, perm_labels, m), f)
    formula = f.pow(cauchy_ratio(alphas, betas, f), 1 << m)
    return direct, formula, direct == formula


@dataclass(frozen=True)
class PermAlgebraReport:
    m: int
    compositions: int
    recursions: int
    commutations: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "check": "perm_algebra",
            "m": self.m,
            "status": "pass" if self.passed else "fail",
            "compositions": self.compositions,
            "recursions": self.recursions,
            "commutations": self.commutations,
            "failures": list(self.failures),
        }


def perm_algebra_check(m: int) -> PermAlgebraReport:
    """Composition law, pairwise commutation and the 2x2 block recursion on Z_2^m."""
    if m < 1:
        raise SpecError("m must be >= 1")
    M = 1 << m
    half = M >> 1
    P = [translation_matrix(u, m) for u in range(M)]
    sub = [translation_matrix(u, m - 1) for u in range(half)]
    failures = []
    comps = comms = recs = 0
    for u1 in range(M):
        for u2 in range(M):
            prod = P[u1] @ P[u2]
            comps += 1
            if not np.array_equal(prod, P[u1 ^ u2]):
                failures.append(f"compose {u1:0{m}b},{u2:0{m}b}")
            comms += 1
            if not np.array_equal(prod, P[u2] @ P[u1]):
                failures.append(f"commute {u1:0{m}b},{u2:0{m}b}")
    zero = np.zeros((half, half), dtype=P[0].dtype)
    for u in range(M):
        rest = sub[u & (half - 1)]
        if u & half:
            expect = np.block([[zero, rest], [rest, zero]])
        else:
            expect = np.block([[rest, zero], [zero, rest]])
        recs += 1
        if not np.array_equal(P[u], expect):
            failures.append(f"recursion {u:0{m}b}")
    return PermAlgebraReport(m, comps, recs, comms, tuple(failures))


def perm_sum_det(coeffs: Mapping[int, int], field, m: int) -> tuple[int, int, bool]:
    """``det(sum_u a_u P_u)`` against ``(sum_u a_u)^(2^m)``.

    Entry ``(g, h)`` of the sum is ``a_{g+h}``; absent keys count as zero.
    """
    M = 1 << m
    if any(not 0 <= u < M for u in coeffs):
        raise SpecError(f"coefficient keys must be elements of Z_2^{m}")
    mat = [[coeffs.get(g ^ h, 0) for h in range(M)] for g in range(M)]
    direct = det_generic(mat, field)
    total = 0
    for a in coeffs.values():
        total = field.add(total, a)
    closed = _power(field, total, M)
    return direct, closed, direct == closed
