"""Zigzag code specifications, Cauchy coefficients, encoding and decoding.

Nodes are numbered from 0: nodes ``0..k-1`` are systematic, node ``k + i``
holds parity ``i`` (``0 <= i < p``).  Parity ``i`` stores, in row ``g``,

    sum_j  gamma[i][j] * a_j[g ^ labels[i][j]]

with ``gamma[i][j] = 1 / (alphas[i] + betas[j])``.  Codewords and messages are
node-major arrays: ``codeword[node, row]`` (an optional trailing axis carries
independent stripes).
"""
from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import asdict, dataclass
from dataclasses import field as dc_field
from typing import Mapping, NamedTuple

import numpy as np

from . import kernels
from .errors import DecodeError, SpecError
from .field import FieldSpec, build_field, field_for_length
from .group import Ordering, Subgroup, format_element, parse_element


class RepairHint(NamedTuple):
    """Parity pair and subgroup to use when repairing ``failed``."""

    failed: int
    s: int
    t: int
    check: int


@dataclass(frozen=True)
class FamilyParams:
    """Where a spec came from in the construction catalog."""

    tag: str
    s: int | None = None
    t: int | None = None
    m: int | None = None
    drop: int = 0


@dataclass(frozen=True)
class ZigzagCodeSpec:
    n: int
    k: int
    m: int
    labels: tuple[tuple[int, ...], ...]
    field: FieldSpec
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    ordering: Ordering
    repair_hints: tuple[RepairHint, ...] = ()
    family: FamilyParams | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(tuple(int(u) for u in s) for s in self.labels))
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        object.__setattr__(self, "betas", tuple(int(b) for b in self.betas))
        object.__setattr__(
            self, "repair_hints", tuple(sorted(RepairHint(*map(int, h)) for h in self.repair_hints))
        )
        self._validate()

    def _validate(self):
        n, k, p, M = self.n, self.k, self.p, self.M
        if k < 1 or p < 1:
            raise SpecError(f"need k >= 1 and n > k, got n={n}, k={k}")
        if self.m < 1:
            raise SpecError("group dimension m must be >= 1")
        if len(self.labels) != p:
            raise SpecError(f"expected {p} permutation labels, got {len(self.labels)}")
        for i, s in enumerate(self.labels):
            if len(s) != k:
                raise SpecError(f"label {i} has length {len(s)}, expected {k}")
            if any(not 0 <= u < M for u in s):
                raise SpecError(f"label {i} has an element outside Z_2^{self.m}")
        if len(self.alphas) != p or len(self.betas) != k:
            raise SpecError(f"need {p} alphas and {k} betas")
        params = self.alphas + self.betas
        for v in params:
            self.field.check(v)
        if len(set(params)) != len(params):
            seen = set()
            dup = next(v for v in params if v in seen or seen.add(v))
            raise SpecError(f"Cauchy parameters must be distinct; {dup} repeats")
        if self.ordering.m != self.m:
            raise SpecError("ordering is over a different group")
        for h in self.repair_hints:
            if not 0 <= h.failed < k or not (0 <= h.s < p and 0 <= h.t < p) or h.s == h.t:
                raise SpecError(f"bad repair hint {h}")
            Subgroup(self.m, h.check)

    @property
    def p(self) -> int:
        return self.n - self.k

    @property
    def M(self) -> int:
        return 1 << self.m

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.M)

    def hint_for(self, failed: int) -> RepairHint | None:
        return next((h for h in self.repair_hints if h.failed == failed), None)

    def node_name(self, node: int) -> str:
        return f"a{node + 1}" if node < self.k else f"p{node - self.k + 1}"

    # serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        fmt = lambda g: format_element(g, self.m)  # noqa: E731
        doc = {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "field": {"w": self.field.w, "modulus_hex": self.field.modulus_hex},
            "labels": [[fmt(u) for u in s] for s in self.labels],
            "alphas": list(self.alphas),
            "betas": list(self.betas),
            "ordering": self.ordering.to_bitstrings(),
        }
        if self.repair_hints:
            doc["repair"] = [
                {"failed": h.failed, "parity_pair": [h.s, h.t], "subgroup": fmt(h.check)}
                for h in self.repair_hints
            ]
        if self.family is not None:
            doc["family"] = {k: v for k, v in asdict(self.family).items() if v is not None}
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ZigzagCodeSpec":
        if "labels" not in doc:
            from .constructions import spec_from_family_doc

            return spec_from_family_doc(doc)
        try:
            m = int(doc["m"])
            f = build_field(int(doc["field"]["w"]), doc["field"].get("modulus_hex"))
            hints = [
                (h["failed"], h["parity_pair"][0], h["parity_pair"][1], parse_element(h["subgroup"]))
                for h in doc.get("repair", ())
            ]
            fam = doc.get("family")
            return cls(
                n=int(doc["n"]),
                k=int(doc["k"]),
                m=m,
                labels=[[parse_element(u) for u in s] for s in doc["labels"]],
                field=f,
                alphas=doc["alphas"],
                betas=doc["betas"],
                ordering=Ordering.from_bitstrings(doc["ordering"]),
                repair_hints=hints,
                family=FamilyParams(**fam) if isinstance(fam, dict) else None,
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise SpecError(f"malformed code-spec document: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ZigzagCodeSpec":
        return cls.from_dict(json.loads(text))


def load_spec(path) -> ZigzagCodeSpec:
    with open(path) as fh:
        return ZigzagCodeSpec.from_json(fh.read())


def default_parameters(f: FieldSpec, p: int, k: int) -> tuple[list[int], list[int]]:
    """First ``p`` elements of the field enumeration as alphas, next ``k`` as betas."""
    elems = f.enumerate()
    if p + k > len(elems):
        raise SpecError(f"GF(2^{f.w}) is too small for {p + k} distinct parameters")
    return elems[:p], elems[p : p + k]


def make_spec(labels, m, *, field=None, alphas=None, betas=None, ordering=None,
              repair_hints=(), family=None) -> ZigzagCodeSpec:
    """Spec from labels with default field, parameters and ordering."""
    labels = [list(s) for s in labels]
    p, k = len(labels), len(labels[0])
    if field is None:
        field = field_for_length(p + k)
    if alphas is None or betas is None:
        da, db = default_parameters(field, p, k)
        alphas = da if alphas is None else alphas
        betas = db if betas is None else betas
    return ZigzagCodeSpec(
        n=p + k,
        k=k,
        m=m,
        labels=labels,
        field=field,
        alphas=alphas,
        betas=betas,
        ordering=ordering or Ordering.lexicographic(m),
        repair_hints=repair_hints,
        family=family,
    )


def cauchy_matrix(alphas, betas, f: FieldSpec) -> list[list[int]]:
    params = list(alphas) + list(betas)
    if len(set(params)) != len(params):
        raise SpecError("Cauchy parameters must be pairwise distinct")
    return [[f.inv(a ^ b) for b in betas] for a in alphas]


def cauchy_coefficients(spec: ZigzagCodeSpec) -> list[list[int]]:
    """``gamma[i][j] = (alpha_i + beta_j)^-1`` (p x k)."""
    return cauchy_matrix(spec.alphas, spec.betas, spec.field)


def translation_matrix(u: int, m: int) -> np.ndarray:
    """Permutation matrix with ``P[g, h] = 1`` iff ``h = g + u``."""
    M = 1 << m
    P = np.zeros((M, M), dtype=np.int32)
    g = np.arange(M)
    P[g, g ^ u] = 1
    return P


@dataclass(frozen=True)
class GeneratorMatrix:
    """Transposed generator ``G^T`` of shape (n*M, k*M).

    Block (node, j) maps message column j into node ``node``: identity/zero for
    systematic nodes, ``gamma[i][j] * A_ij`` for parity ``i``.
    """

    n: int
    k: int
    M: int
    gt: np.ndarray

    @property
    def g(self) -> np.ndarray:
        return self.gt.T

    def block(self, node: int, j: int) -> np.ndarray:
        M = self.M
        return self.gt[node * M : (node + 1) * M, j * M : (j + 1) * M]

    def rows_for(self, nodes) -> np.ndarray:
        M = self.M
        return np.concatenate([self.gt[v * M : (v + 1) * M] for v in nodes], axis=0)


def build_generator(spec: ZigzagCodeSpec) -> GeneratorMatrix:
    n, k, M = spec.n, spec.k, spec.M
    gt = np.zeros((n * M, k * M), dtype=np.int32)
    gt[: k * M, : k * M] = np.eye(k * M, dtype=np.int32)
    gamma = cauchy_coefficients(spec)
    g = np.arange(M)
    for i, label in enumerate(spec.labels):
        base = (k + i) * M
        for j, u in enumerate(label):
            gt[base + g, j * M + (g ^ u)] = gamma[i][j]
    return GeneratorMatrix(n, k, M, gt)


@functools.lru_cache(maxsize=4096)
def _scale_table(f: FieldSpec, c: int) -> np.ndarray:
    return f.mul_array(c, np.arange(f.order)).astype(np.int32)


def _check_message(spec, message):
    message = np.asarray(message)
    if message.shape[:2] != (spec.k, spec.M):
        raise SpecError(f"message must have shape ({spec.k}, {spec.M}, ...), got {message.shape}")
    if message.size and (message.min() < 0 or message.max() >= spec.field.order):
        raise SpecError("message symbols must be field elements")
    return message.astype(np.int32, copy=False)


def parity_column(spec: ZigzagCodeSpec, message, i: int, gamma=None) -> np.ndarray:
    """Contents of parity ``i`` for a (k, M, ...) message."""
    message = _check_message(spec, message)
    gamma = gamma or cauchy_coefficients(spec)
    rows = np.arange(spec.M)
    out = np.zeros(message.shape[1:], dtype=np.int32)
    for j, u in enumerate(spec.labels[i]):
        out ^= _scale_table(spec.field, gamma[i][j])[message[j][rows ^ u]]
    return out


def encode(spec: ZigzagCodeSpec, message) -> np.ndarray:
    """Systematic encoding; returns the (n, M, ...) codeword."""
    message = _check_message(spec, message)
    gamma = cauchy_coefficients(spec)
    out = np.empty((spec.n,) + message.shape[1:], dtype=np.int32)
    out[: spec.k] = message
    for i in range(spec.p):
        out[spec.k + i] = parity_column(spec, message, i, gamma)
    return out


def encode_with_generator(spec: ZigzagCodeSpec, message, gen: GeneratorMatrix | None = None):
    """Same as :func:`encode` but through the materialized ``G^T``."""
    message = _check_message(spec, message)
    gen = gen or build_generator(spec)
    flat = message.reshape(spec.k * spec.M, -1)
    out = kernels.matmul(gen.gt, flat, spec.field)
    return out.reshape((spec.n, spec.M) + message.shape[2:])


def decode_any_k(spec: ZigzagCodeSpec, surviving: Mapping[int, np.ndarray],
                 gen: GeneratorMatrix | None = None) -> np.ndarray:
    """Message (k, M, ...) from exactly ``k`` node columns ``{node: column}``."""
    nodes = sorted(int(v) for v in surviving)
    if len(nodes) != spec.k or len(set(nodes)) != spec.k:
        raise SpecError(f"need exactly k={spec.k} distinct nodes, got {nodes}")
    if not all(0 <= v < spec.n for v in nodes):
        raise SpecError(f"node index out of range in {nodes}")
    cols = [np.asarray(surviving[v], dtype=np.int32) for v in nodes]
    trailing = cols[0].shape[1:]
    if nodes == list(range(spec.k)):
        return np.stack(cols)
    gen = gen or build_generator(spec)
    inv = kernels.inverse(gen.rows_for(nodes), spec.field)
    if inv is None:
        names = ",".join(spec.node_name(v) for v in nodes)
        raise DecodeError(f"nodes {{{names}}} do not determine the message", nodes)
    y = np.concatenate(cols, axis=0).reshape(spec.k * spec.M, -1)
    return kernels.matmul(inv, y, spec.field).reshape((spec.k, spec.M) + trailing)
