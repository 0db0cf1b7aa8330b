"""Single systematic-node repair from two parities and half of every helper.

A repair of systematic node ``j`` uses parities ``s`` and ``t`` (labels ``u`` and
``v``) and an index-two subgroup ``H``:

* case 1: ``u_j + v_j`` is outside ``H`` and ``u_i + v_i`` is inside ``H`` for every
  other ``i``.  All helpers read the same coset ``C`` of ``H`` (systematic
  helper ``i`` shifted by ``u_i``).
* case 2: the reverse membership pattern.  Parity ``t`` reads the other coset.

Every helper reads exactly ``M/2`` rows, so the rebuilding ratio is 1/2.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .code import ZigzagCodeSpec, _scale_table, cauchy_coefficients
from .errors import PlanError
from .group import Subgroup, all_subgroups, format_element, position_runs, skip_cost


class Case(enum.Enum):
    CASE_1 = "case1"
    CASE_2 = "case2"
    INAPPLICABLE = "inapplicable"


def check_recovery(labels_s, labels_t, failed: int, h: Subgroup) -> Case:
    sums = [u ^ v for u, v in zip(labels_s, labels_t)]
    if not 0 <= failed < len(sums):
        raise IndexError(f"failed node {failed} outside label range")
    j_in = sums[failed] in h
    rest_in = [x in h for i, x in enumerate(sums) if i != failed]
    if not j_in and all(rest_in):
        return Case.CASE_1
    if j_in and not any(rest_in):
        return Case.CASE_2
    return Case.INAPPLICABLE


@dataclass(frozen=True)
class ReadPlan:
    failed: int
    helpers: tuple[tuple[int, tuple[int, ...]], ...]
    parity_pair: tuple[int, int]
    subgroup: Subgroup
    case: Case
    coset_is_subgroup: bool

    @property
    def coset(self) -> frozenset[int]:
        h = self.subgroup
        return h.members() if self.coset_is_subgroup else h.complement()

    def rows(self, node: int) -> tuple[int, ...]:
        for v, rows in self.helpers:
            if v == node:
                return rows
        raise KeyError(node)

    def to_dict(self, spec: ZigzagCodeSpec, metrics: "RepairMetrics | None" = None) -> dict:
        m = spec.m
        doc = {
            "failed": self.failed,
            "failed_name": spec.node_name(self.failed),
            "case": self.case.value,
            "parity_pair": list(self.parity_pair),
            "subgroup": self.subgroup.bits,
            "coset": "subgroup" if self.coset_is_subgroup else "complement",
            "helpers": [
                {
                    "node": v,
                    "name": spec.node_name(v),
                    "rows": [format_element(g, m) for g in rows],
                    "skip": skip_cost(rows, spec.ordering),
                }
                for v, rows in self.helpers
            ],
        }
        if metrics is not None:
            doc["metrics"] = metrics.to_dict()
        return doc


def _helper_rows(spec, failed, s, t, case, coset):
    u = spec.labels[s]
    tau = spec.ordering
    complement = frozenset(range(spec.M)) - coset
    helpers = []
    for i in range(spec.k):
        if i != failed:
            helpers.append((i, tuple(tau.sort(g ^ u[i] for g in coset))))
    helpers.append((spec.k + s, tuple(tau.sort(coset))))
    t_rows = coset if case is Case.CASE_1 else complement
    helpers.append((spec.k + t, tuple(tau.sort(t_rows))))
    return tuple(helpers)


def build_read_plan(spec: ZigzagCodeSpec, failed: int, parity_pair, h: Subgroup) -> ReadPlan:
    """Plan for ``failed`` through ``parity_pair`` and ``h``.

    Of the two cosets of ``h`` the one giving the smaller total skip cost is
    read (``h`` itself on ties).
    """
    s, t = parity_pair
    if not 0 <= failed < spec.k:
        raise PlanError(f"only systematic nodes are planned, got node {failed}")
    if s == t or not (0 <= s < spec.p and 0 <= t < spec.p):
        raise PlanError(f"bad parity pair {parity_pair}")
    if h.m != spec.m:
        raise PlanError("subgroup is over a different group")
    case = check_recovery(spec.labels[s], spec.labels[t], failed, h)
    if case is Case.INAPPLICABLE:
        raise PlanError(
            f"parities ({s},{t}) with {h} cannot repair {spec.node_name(failed)}"
        )
    best = None
    for inside in (True, False):
        coset = h.members() if inside else h.complement()
        helpers = _helper_rows(spec, failed, s, t, case, coset)
        total = sum(skip_cost(rows, spec.ordering) for _, rows in helpers)
        if best is None or total < best[0]:
            best = (total, inside, helpers)
    _, inside, helpers = best
    return ReadPlan(failed, helpers, (s, t), h, case, inside)


def plan_repair(spec: ZigzagCodeSpec, failed: int) -> ReadPlan:
    """Repair plan for a systematic node.

    Uses the spec's repair hint when present; otherwise scans ordered parity
    pairs and subgroups in index order and keeps the first plan of minimum
    total skip cost.
    """
    if not 0 <= failed < spec.k:
        raise PlanError(
            f"{spec.node_name(failed) if 0 <= failed < spec.n else failed} is not a "
            "systematic node; parity nodes are rebuilt by full decoding"
        )
    hint = spec.hint_for(failed)
    if hint is not None:
        return build_read_plan(spec, failed, (hint.s, hint.t), Subgroup(spec.m, hint.check))
    best = None
    for s in range(spec.p):
        for t in range(spec.p):
            if s == t:
                continue
            for h in all_subgroups(spec.m):
                if check_recovery(spec.labels[s], spec.labels[t], failed, h) is Case.INAPPLICABLE:
                    continue
                plan = build_read_plan(spec, failed, (s, t), h)
                total = sum(skip_cost(rows, spec.ordering) for _, rows in plan.helpers)
                if best is None or total < best[0]:
                    best = (total, plan)
    if best is None:
        raise PlanError(f"no parity pair and subgroup can repair {spec.node_name(failed)}")
    return best[1]


def repair_from_reads(spec: ZigzagCodeSpec, plan: ReadPlan,
                      reads: Mapping[int, Mapping[int, np.ndarray]]) -> np.ndarray:
    """Rebuild the failed column from ``reads[node][row]`` (only planned symbols)."""
    j = plan.failed
    s, t = plan.parity_pair
    for node, rows in plan.helpers:
        missing = set(rows) - set(reads.get(node, {}))
        if missing:
            raise PlanError(f"helper {spec.node_name(node)} is missing planned rows")
    gamma = cauchy_coefficients(spec)
    f = spec.field
    sample = np.asarray(next(iter(reads[spec.k + s].values())))
    out = np.full((spec.M,) + sample.shape, -1, dtype=np.int32)

    def known(node, row):
        try:
            return np.asarray(reads[node][row], dtype=np.int32)
        except KeyError:
            raise PlanError(
                f"plan does not cover symbol {format_element(row, spec.m)} of "
                f"{spec.node_name(node)}"
            ) from None

    def solve(parity, rows):
        label = spec.labels[parity]
        coeffs = gamma[parity]
        undo = _scale_table(f, f.inv(coeffs[j]))
        for g in rows:
            acc = known(spec.k + parity, g).copy()
            for z in range(spec.k):
                if z != j:
                    acc ^= _scale_table(f, coeffs[z])[known(z, g ^ label[z])]
            out[g ^ label[j]] = undo[acc]

    coset = plan.coset
    solve(s, coset)
    solve(t, coset if plan.case is Case.CASE_1 else frozenset(range(spec.M)) - coset)
    if (out < 0).any():
        raise PlanError("plan does not determine every symbol of the failed node")
    return out


def execute_repair(codeword, plan: ReadPlan, spec: ZigzagCodeSpec) -> np.ndarray:
    """Recovered column of ``plan.failed``, touching only the planned rows."""
    codeword = np.asarray(codeword)
    if codeword.shape[:2] != (spec.n, spec.M):
        raise PlanError(f"codeword shape {codeword.shape} does not match {spec.params}")
    reads = {node: {g: codeword[node, g] for g in rows} for node, rows in plan.helpers}
    return repair_from_reads(spec, plan, reads)


@dataclass(frozen=True)
class RepairMetrics:
    per_helper_skip: tuple[int, ...]
    per_helper_reads: tuple[int, ...]
    total_skip: int
    rebuilding_ratio: Fraction
    rfr_def: Fraction
    rfr_per_helper: Fraction

    def to_dict(self) -> dict:
        return {
            "per_helper_skip": list(self.per_helper_skip),
            "per_helper_reads": list(self.per_helper_reads),
            "total_skip": self.total_skip,
            "rebuilding_ratio": str(self.rebuilding_ratio),
            "rfr_def": str(self.rfr_def),
            "rfr_per_helper": str(self.rfr_per_helper),
        }


def compute_metrics(plan: ReadPlan, spec: ZigzagCodeSpec) -> RepairMetrics:
    M = spec.M
    skips = tuple(skip_cost(rows, spec.ordering) for _, rows in plan.helpers)
    reads = tuple(len(rows) for _, rows in plan.helpers)
    return RepairMetrics(
        per_helper_skip=skips,
        per_helper_reads=reads,
        total_skip=sum(skips),
        rebuilding_ratio=Fraction(max(reads), M),
        rfr_def=Fraction(sum(r + c for r, c in zip(reads, skips)), spec.n * M),
        rfr_per_helper=max(Fraction(r + c, M) for r, c in zip(reads, skips)),
    )


def read_runs(plan: ReadPlan, spec: ZigzagCodeSpec) -> dict[int, list[tuple[int, int]]]:
    """Per helper, the maximal runs of consecutive layout positions it reads."""
    return {node: position_runs(rows, spec.ordering) for node, rows in plan.helpers}


@dataclass(frozen=True)
class CodeRepairSummary:
    """Worst case over all single systematic-node repairs."""

    per_node_total_skip: tuple[int, ...]
    max_total_skip: int
    sigma: int
    skip_bound: int
    rebuilding_ratio: Fraction
    rfr_per_helper: Fraction
    rfr_def: Fraction


def summarize_repairs(spec: ZigzagCodeSpec) -> CodeRepairSummary:
    metrics = [compute_metrics(plan_repair(spec, j), spec) for j in range(spec.k)]
    sigma = max(max(mt.per_helper_skip) for mt in metrics)
    totals = tuple(mt.total_skip for mt in metrics)
    return CodeRepairSummary(
        per_node_total_skip=totals,
        max_total_skip=max(totals),
        sigma=sigma,
        skip_bound=sigma * (spec.k + 1),
        rebuilding_ratio=max(mt.rebuilding_ratio for mt in metrics),
        rfr_per_helper=max(mt.rfr_per_helper for mt in metrics),
        rfr_def=max(mt.rfr_def for mt in metrics),
    )
