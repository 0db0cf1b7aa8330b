"""``zigzag-mds`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from . import stripe
from .code import ZigzagCodeSpec, load_spec
from .constructions import build_family
from .errors import DecodeError, ZigzagError
from .field import build_field
from .repair import summarize_repairs
from .search import search_orderings
from .verify import mds_check, perm_algebra_check

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# RS comparison rows: (family entry, reference RS (N, k)).
RS_COMPARISON = (
    ("A3:2", (10, 8)),
    ("A2:2", (9, 6)),
    ("A3:2", (11, 8)),
    ("A3:5:3", (20, 17)),
    ("A3:3:2", (14, 10)),
    ("A2:3:1", (12, 8)),
    ("A3:4:1", (18, 15)),
    ("A1:5", (30, 10)),
    ("A1:10", (40, 20)),
    ("A1:20", (80, 40)),
)


class UsageError(ZigzagError):
    pass


def parse_entry(entry: str) -> ZigzagCodeSpec:
    """``FAMILY[:s[:drop]]`` such as ``A2:2`` or ``A3:5:3`` or ``B1``."""
    parts = entry.split(":")
    try:
        s = int(parts[1]) if len(parts) > 1 else None
        drop = int(parts[2]) if len(parts) > 2 else 0
    except ValueError:
        raise UsageError(f"bad family entry {entry!r}") from None
    if len(parts) > 3:
        raise UsageError(f"bad family entry {entry!r}")
    return build_family(parts[0], s=s, drop=drop)


def resolve_spec(args) -> ZigzagCodeSpec:
    field = None
    if args.field_w is not None:
        field = build_field(args.field_w, args.modulus)
    elif args.modulus is not None:
        raise UsageError("--modulus needs --field-w")
    if args.spec:
        if args.family:
            raise UsageError("give either --spec or --family, not both")
        spec = load_spec(args.spec)
        if field is not None:
            spec = replace(spec, field=field)
        return spec
    if not args.family:
        raise UsageError("need --spec PATH or --family NAME")
    return build_family(args.family, s=args.s, drop=args.drop, m=args.m, field=field)


def _emit(doc, out=None):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        stripe.atomic_write(out, text.encode())
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    return str(x) if isinstance(x, Fraction) else f"{x}"


def cmd_report(entries=None) -> list[dict]:
    """Repair metrics for catalog codes next to the RS reference constants."""
    rows = []
    items = [(e, None) for e in entries] if entries else list(RS_COMPARISON)
    for entry, rs in items:
        spec = parse_entry(entry)
        summary = summarize_repairs(spec)
        rows.append({
            "family": entry,
            "rs": list(rs) if rs else None,
            "rs_rebuilding_ratio": 1,
            "rs_rfr": 1,
            "params": list(spec.params),
            "skip_bound": summary.skip_bound,
            "max_total_skip": summary.max_total_skip,
            "rebuilding_ratio": summary.rebuilding_ratio,
            "rfr_per_helper": summary.rfr_per_helper,
            "rfr_def": summary.rfr_def,
        })
    return rows


def format_report(rows) -> str:
    head = ("family", "RS (N,k)", "RS ratio", "RS RFR", "zigzag (N,k,M)", "skip cost",
            "rebuilding ratio", "RFR (per helper)", "RFR (definition)")
    lines = [head]
    for r in rows:
        lines.append((
            r["family"],
            "({},{})".format(*r["rs"]) if r["rs"] else "-",
            str(r["rs_rebuilding_ratio"]),
            str(r["rs_rfr"]),
            "({},{},{})".format(*r["params"]),
            str(r["skip_bound"]),
            _fmt(r["rebuilding_ratio"]),
            _fmt(r["rfr_per_helper"]),
            _fmt(r["rfr_def"]),
        ))
    widths = [max(len(row[i]) for row in lines) for i in range(len(head))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in lines)


def _jsonable(rows):
    return [{k: (str(v) if isinstance(v, Fraction) else v) for k, v in r.items()} for r in rows]


# subcommands -----------------------------------------------------------

def _build(args):
    _emit(resolve_spec(args).to_dict(), args.out)
    return EXIT_OK


def _encode(args):
    if not args.out:
        raise UsageError("encode needs --out DIR")
    manifest = stripe.encode_file(resolve_spec(args), args.input, args.out)
    print(f"encoded {manifest['original_length']} bytes into {manifest['stripes']} stripes "
          f"over {len(manifest['nodes'])} nodes in {args.out}")
    return EXIT_OK


def _decode(args):
    data = stripe.decode_dir(args.dir, args.out)
    if args.out is None:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def _repair(args):
    if args.failed is None:
        raise UsageError("repair needs --failed INT")
    report = stripe.repair_dir(args.dir, args.failed)
    if args.json:
        _emit(report)
        return EXIT_OK
    if report["mode"] == "decode":
        print(f"notice: {report['notice']} ({report['failed_name']})")
        return EXIT_OK
    m = report["metrics"]
    plan = report["plan"]
    print(f"repaired {report['failed_name']} from parities "
          f"p{plan['parity_pair'][0] + 1},p{plan['parity_pair'][1] + 1} "
          f"with subgroup {plan['subgroup']} ({plan['case']}), {report['stripes']} stripes")
    for h, hp in zip(report["helpers"], plan["helpers"]):
        print(f"  {h['name']:>4}: rows {','.join(hp['rows'])}  skip {hp['skip']}  "
              f"ranges/stripe {h['ranges_per_stripe']}  bytes {h['bytes_read']}")
    print(f"Skip cost {m['total_skip']}  rebuilding ratio {m['rebuilding_ratio']}  "
          f"repair fragmentation ratio {m['rfr_per_helper']} (per helper), {m['rfr_def']} (definition)")
    return EXIT_OK


def _verify(args):
    spec = resolve_spec(args)
    report = mds_check(spec, workers=args.workers)
    docs = [report.to_dict()]
    ok = report.passed
    if args.perm_algebra:
        pa = perm_algebra_check(spec.m)
        docs.append(pa.to_dict())
        ok = ok and pa.passed
    _emit(docs, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def _search(args):
    mode = "exhaustive" if args.exhaustive else "randomized"
    result = search_orderings(args.m, args.t, mode=mode, budget=args.budget, seed=args.seed,
                              prune=args.prune, workers=args.workers)
    _emit(result.to_dict(), args.out)
    return EXIT_OK


def _report(args):
    rows = cmd_report(args.families or None)
    if args.json:
        _emit(_jsonable(rows), args.out)
    else:
        text = format_report(rows) + "\n"
        if args.out:
            stripe.atomic_write(args.out, text.encode())
        else:
            sys.stdout.write(text)
    return EXIT_OK


def _spec_args(p):
    p.add_argument("--spec", metavar="PATH", help="code-spec JSON file")
    p.add_argument("--family", metavar="NAME", help="catalog family: A1 A2 A3 B1 B2")
    p.add_argument("--s", type=int, help="number of blocks (A families)")
    p.add_argument("--drop", type=int, default=0, help="systematic columns removed by shortening")
    p.add_argument("--m", type=int, help="group dimension (A1 only)")
    p.add_argument("--field-w", type=int, help="field width w for GF(2^w)")
    p.add_argument("--modulus", metavar="HEX", help="field modulus, e.g. 0x13")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zigzag-mds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a code-spec file")
    _spec_args(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_build)

    p = sub.add_parser("encode", help="stripe a file over node directories")
    _spec_args(p)
    p.add_argument("input")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=_encode)

    p = sub.add_parser("decode", help="rebuild the original file from any k shards")
    p.add_argument("dir")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_decode)

    p = sub.add_parser("repair", help="rebuild one shard")
    p.add_argument("dir")
    p.add_argument("--failed", type=int, metavar="INT", help="0-based node index")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_repair)

    p = sub.add_parser("verify", help="exhaustive MDS check")
    _spec_args(p)
    p.add_argument("--perm-algebra", action="store_true", help="also check translation matrices")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_verify)

    p = sub.add_parser("search", help="search orderings for small max c")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--budget", type=int, help="orderings to sample (randomized)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prune", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_search)

    p = sub.add_parser("report", help="repair metrics table")
    p.add_argument("families", nargs="*", metavar="FAMILY[:s[:drop]]")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, DecodeError) as exc:
        print(f"zigzag-mds: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ZigzagError, json.JSONDecodeError) as exc:
        print(f"zigzag-mds: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
