"""Zigzag MDS array codes over Z_2^m with Cauchy coefficients and low skip cost."""
from .code import (
    ZigzagCodeSpec,
    build_generator,
    cauchy_coefficients,
    decode_any_k,
    encode,
    load_spec,
    make_spec,
)
from .constructions import build_family, construct_A, construct_B, construct_generic, shorten
from .errors import (
    DecodeError,
    FieldError,
    PlanError,
    SearchError,
    SpecError,
    ZeroInverseError,
    ZigzagError,
)
from .field import FieldSpec, build_field
from .group import Ordering, Subgroup, min_coset_cost, skip_cost, t1_witnesses
from .kernels import BACKEND
from .repair import (
    Case,
    ReadPlan,
    RepairMetrics,
    build_read_plan,
    check_recovery,
    compute_metrics,
    execute_repair,
    plan_repair,
)
from .search import search_orderings
from .verify import cauchy_block_det, mds_check, perm_algebra_check, perm_sum_det

__version__ = "0.1.0"
