"""Files striped over node directories.

Each stripe carries ``floor(k*M*w/8)`` payload bytes, read as a bit stream and
cut into ``w``-bit symbols that fill the message column by column.  Node
``v`` keeps ``node_XX/shard.bin``: for every stripe, its ``M`` symbols in
layout (``tau``) order, one byte each for ``w <= 8`` and two big-endian bytes
for ``w <= 16``.  A repair plan's contiguous row runs are therefore contiguous
byte ranges on disk.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .code import ZigzagCodeSpec, decode_any_k, encode
from .errors import DecodeError, PlanError, SpecError
from .repair import compute_metrics, plan_repair, read_runs, repair_from_reads

MANIFEST = "manifest.json"
SHARD = "shard.bin"
FORMAT = "zigzag-mds-stripes/1"


def atomic_write(path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass(frozen=True)
class StripeLayout:
    spec: ZigzagCodeSpec

    def __post_init__(self):
        if self.spec.field.w > 16:
            raise SpecError("shard files support symbols of at most 16 bits")

    @property
    def symbol_bytes(self) -> int:
        return 1 if self.spec.field.w <= 8 else 2

    @property
    def payload_bytes(self) -> int:
        s = self.spec
        return s.k * s.M * s.field.w // 8

    @property
    def shard_stripe_bytes(self) -> int:
        return self.spec.M * self.symbol_bytes

    def node_dir(self, root, node: int) -> Path:
        width = max(2, len(str(self.spec.n - 1)))
        return Path(root) / f"node_{node:0{width}d}"

    def shard_path(self, root, node: int) -> Path:
        return self.node_dir(root, node) / SHARD

    # payload <-> symbols ---------------------------------------------
    def to_message(self, data: bytes) -> np.ndarray:
        """(k, M, stripes) symbols for ``data`` (length a multiple of the payload size)."""
        s, P, w = self.spec, self.payload_bytes, self.spec.field.w
        stripes = len(data) // P
        if stripes * P != len(data):
            raise ValueError("data is not a whole number of stripes")
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8).reshape(stripes, P), axis=1)
        full = np.zeros((stripes, s.k * s.M * w), dtype=np.uint8)
        full[:, : bits.shape[1]] = bits
        weights = 1 << np.arange(w - 1, -1, -1)
        sym = (full.reshape(stripes, s.k * s.M, w).astype(np.int32) * weights).sum(axis=2)
        return sym.reshape(stripes, s.k, s.M).transpose(1, 2, 0)

    def from_message(self, message) -> bytes:
        s, P, w = self.spec, self.payload_bytes, self.spec.field.w
        message = np.asarray(message)
        stripes = message.shape[2]
        sym = message.transpose(2, 0, 1).reshape(stripes, s.k * s.M)
        bits = (sym[:, :, None] >> np.arange(w - 1, -1, -1)) & 1
        bits = bits.reshape(stripes, s.k * s.M * w)[:, : P * 8].astype(np.uint8)
        return np.packbits(bits, axis=1).tobytes()

    # column <-> shard bytes ------------------------------------------
    def column_to_bytes(self, column) -> bytes:
        """(M, stripes) column to shard bytes in layout order."""
        ordered = np.asarray(column)[list(self.spec.ordering.sequence)].T
        dtype = ">u1" if self.symbol_bytes == 1 else ">u2"
        return ordered.astype(dtype).tobytes()

    def bytes_to_column(self, raw: bytes) -> np.ndarray:
        dtype = ">u1" if self.symbol_bytes == 1 else ">u2"
        pos = np.frombuffer(raw, dtype=dtype).astype(np.int32).reshape(-1, self.spec.M)
        column = np.empty((self.spec.M, pos.shape[0]), dtype=np.int32)
        column[list(self.spec.ordering.sequence)] = pos.T
        return column


def encode_bytes(spec: ZigzagCodeSpec, data: bytes) -> tuple[dict, list[bytes]]:
    """Manifest and per-node shard contents for ``data``."""
    layout = StripeLayout(spec)
    P = layout.payload_bytes
    if P == 0:
        raise SpecError("stripe carries no whole byte of payload")
    stripes = -(-len(data) // P)
    padding = stripes * P - len(data)
    message = layout.to_message(data + bytes(padding))
    codeword = encode(spec, message)
    shards = [layout.column_to_bytes(codeword[v]) for v in range(spec.n)]
    manifest = {
        "format": FORMAT,
        "spec": spec.to_dict(),
        "spec_sha256": spec.digest(),
        "stripes": stripes,
        "original_length": len(data),
        "padding": padding,
        "payload_bytes_per_stripe": P,
        "symbol_bytes": layout.symbol_bytes,
        "shard_file": SHARD,
        "nodes": [layout.node_dir("", v).name for v in range(spec.n)],
    }
    return manifest, shards


def encode_file(spec: ZigzagCodeSpec, input_path, out_dir) -> dict:
    data = Path(input_path).read_bytes()
    manifest, shards = encode_bytes(spec, data)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    layout = StripeLayout(spec)
    for v, raw in enumerate(shards):
        layout.node_dir(out, v).mkdir(exist_ok=True)
        atomic_write(layout.shard_path(out, v), raw)
    atomic_write(out / MANIFEST, (json.dumps(manifest, indent=2) + "\n").encode())
    return manifest


def load_manifest(out_dir) -> tuple[dict, ZigzagCodeSpec, StripeLayout]:
    with open(Path(out_dir) / MANIFEST) as fh:
        manifest = json.load(fh)
    if manifest.get("format") != FORMAT:
        raise SpecError(f"unsupported manifest format {manifest.get('format')!r}")
    spec = ZigzagCodeSpec.from_dict(manifest["spec"])
    if spec.digest() != manifest["spec_sha256"]:
        raise SpecError("embedded spec does not match its recorded hash")
    return manifest, spec, StripeLayout(spec)


def available_nodes(out_dir, manifest, layout) -> list[int]:
    size = manifest["stripes"] * layout.shard_stripe_bytes
    out = []
    for v in range(layout.spec.n):
        p = layout.shard_path(out_dir, v)
        if p.is_file() and p.stat().st_size == size:
            out.append(v)
    return out


def _decode_message(out_dir, manifest, spec, layout):
    have = available_nodes(out_dir, manifest, layout)
    if len(have) < spec.k:
        raise DecodeError(
            f"only {len(have)} intact shards, need {spec.k}", tuple(have)
        )
    use = have[: spec.k]
    cols = {v: layout.bytes_to_column(layout.shard_path(out_dir, v).read_bytes()) for v in use}
    return decode_any_k(spec, cols)


def decode_dir(out_dir, output_path=None) -> bytes:
    """Original bytes from any ``k`` intact shards."""
    manifest, spec, layout = load_manifest(out_dir)
    message = _decode_message(out_dir, manifest, spec, layout)
    data = layout.from_message(message)[: manifest["original_length"]]
    if output_path is not None:
        atomic_write(output_path, data)
    return data


def _read_ranges(path, runs, stripes, layout):
    """Symbols at the given position runs of every stripe, keyed by position."""
    sb, per = layout.symbol_bytes, layout.shard_stripe_bytes
    dtype = ">u1" if sb == 1 else ">u2"
    blocks = {start: bytearray() for start, _ in runs}
    nbytes = 0
    with open(path, "rb") as fh:
        for st in range(stripes):
            for start, length in runs:
                fh.seek(st * per + start * sb)
                raw = fh.read(length * sb)
                if len(raw) != length * sb:
                    raise OSError(f"short read from {path}")
                blocks[start] += raw
                nbytes += len(raw)
    got = {}
    for start, length in runs:
        vals = np.frombuffer(bytes(blocks[start]), dtype=dtype).astype(np.int32)
        vals = vals.reshape(stripes, length)
        for off in range(length):
            got[start + off] = vals[:, off]
    return got, nbytes, stripes * len(runs)


def repair_dir(out_dir, failed: int) -> dict:
    """Rebuild one shard in place and report what was read."""
    manifest, spec, layout = load_manifest(out_dir)
    stripes = manifest["stripes"]
    if not 0 <= failed < spec.n:
        raise SpecError(f"node {failed} outside 0..{spec.n - 1}")
    target = layout.shard_path(out_dir, failed)
    if failed >= spec.k:
        message = _decode_message(out_dir, manifest, spec, layout)
        column = encode(spec, message)[failed]
        layout.node_dir(out_dir, failed).mkdir(exist_ok=True)
        atomic_write(target, layout.column_to_bytes(column))
        return {
            "failed": failed,
            "failed_name": spec.node_name(failed),
            "mode": "decode",
            "notice": "parity shard rebuilt by full decode and re-encode",
            "stripes": stripes,
        }
    plan = plan_repair(spec, failed)
    have = set(available_nodes(out_dir, manifest, layout))
    missing = [spec.node_name(v) for v, _ in plan.helpers if v not in have]
    if missing:
        raise PlanError(f"repair helpers unavailable: {', '.join(missing)}")
    runs = read_runs(plan, spec)
    seq = spec.ordering.sequence
    reads = {}
    helpers = []
    for node, rows in plan.helpers:
        by_pos, nbytes, nranges = _read_ranges(layout.shard_path(out_dir, node), runs[node], stripes, layout)
        reads[node] = {seq[p]: vals for p, vals in by_pos.items()}
        helpers.append({
            "node": node,
            "name": spec.node_name(node),
            "rows": len(rows),
            "ranges_per_stripe": len(runs[node]),
            "byte_ranges": nranges,
            "bytes_read": nbytes,
        })
    column = repair_from_reads(spec, plan, reads)
    layout.node_dir(out_dir, failed).mkdir(exist_ok=True)
    atomic_write(target, layout.column_to_bytes(column))
    metrics = compute_metrics(plan, spec)
    return {
        "failed": failed,
        "failed_name": spec.node_name(failed),
        "mode": "plan",
        "stripes": stripes,
        "plan": plan.to_dict(spec),
        "metrics": metrics.to_dict(),
        "helpers": helpers,
        "bytes_read": sum(h["bytes_read"] for h in helpers),
    }
