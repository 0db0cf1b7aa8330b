"""Explicit code families built from an ordering and a list of subgroups.

The generic builder takes ``s`` blocks of ``t`` systematic nodes and
``s + 1`` parities.  Parity 0 has the all-zero label; parity ``b`` carries the
witnesses ``h_1..h_t`` on block ``b`` and zero elsewhere.  Node ``i`` of block
``b`` is repaired from parities ``(0, b)`` with subgroup ``H_i``.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .code import FamilyParams, RepairHint, ZigzagCodeSpec, make_spec
from .errors import SpecError
from .field import FieldSpec, build_field, field_for_length
from .group import (
    Ordering,
    Subgroup,
    all_ones,
    min_coset_cost,
    parse_element,
    t1_witnesses,
    unit_vector,
)

A3_ORDERING = (
    "1000,1010,1100,1110,0101,0011,1111,1011,0100,0000,0001,0010,1101,0110,0111,1001"
)
A2_ORDERING = "000,001,010,011,100,110,101,111"
B1_ORDERING = "001,010,011,000,100,101,110,111"
B2_ORDERING = (
    "1000,1101,1110,1111,1100,1011,0000,0001,0010,0011,0100,0101,0110,1001,1010,0111"
)

FAMILIES = ("A1", "A2", "A3", "B1", "B2")


def _check_witnesses(subgroups, witnesses):
    for i, (hi, w) in enumerate(zip(subgroups, witnesses)):
        if w in hi or any(w not in hj for j, hj in enumerate(subgroups) if j != i):
            raise SpecError(f"witness {w:0{hi.m}b} does not separate subgroup {i + 1}")


def c_vector(tau: Ordering, subgroups) -> tuple[int, ...]:
    return tuple(min_coset_cost(h, tau)[0] for h in subgroups)


def construct_generic(tau: Ordering, subgroups: Sequence[Subgroup], s: int, *,
                      field: FieldSpec | None = None, witnesses=None,
                      family: FamilyParams | None = None) -> ZigzagCodeSpec:
    """``(s*t + s + 1, s*t, 2^m)`` code with skip cost at most ``max c * (k+1)``."""
    subgroups = list(subgroups)
    t = len(subgroups)
    if s < 1 or t < 1:
        raise SpecError("need s >= 1 and at least one subgroup")
    m = tau.m
    if any(h.m != m for h in subgroups):
        raise SpecError("subgroups and ordering live in different groups")
    if witnesses is None:
        witnesses = t1_witnesses(subgroups)
        if witnesses is None:
            raise SpecError("no element separates every subgroup from the others")
    else:
        witnesses = list(witnesses)
        if len(witnesses) != t:
            raise SpecError(f"need {t} witnesses, got {len(witnesses)}")
        _check_witnesses(subgroups, witnesses)
    k = s * t
    labels = [[0] * k]
    for b in range(s):
        row = [0] * k
        row[b * t : (b + 1) * t] = witnesses
        labels.append(row)
    hints = [
        RepairHint(b * t + i, 0, b + 1, subgroups[i].check)
        for b in range(s)
        for i in range(t)
    ]
    n = k + s + 1
    field = field or field_for_length(n)
    family = family or FamilyParams("generic", s=s, t=t, m=m)
    return make_spec(labels, m, field=field, ordering=tau, repair_hints=hints, family=family)


def construct_A(variant: int, s: int, *, m: int = 2, field: FieldSpec | None = None) -> ZigzagCodeSpec:
    """Construction A(i) (any ``m >= 2``), A(ii) (``m = 3``) or A(iii) (``m = 4``)."""
    if variant == 1:
        if m < 2:
            raise SpecError("A1 needs m >= 2")
        tau = Ordering.lexicographic(m)
        hs = [Subgroup.coordinate_zero(1, m), Subgroup.coordinates_equal(1, 2, m)]
        wit = [all_ones(m), unit_vector(2, m)]
    elif variant == 2:
        m = 3
        tau = Ordering.from_bitstrings(A2_ORDERING)
        hs = [
            Subgroup.coordinate_zero(1, 3),
            Subgroup.coordinates_equal(1, 3, 3),
            Subgroup.coordinates_equal(1, 2, 3),
        ]
        wit = [parse_element(x) for x in ("111", "001", "010")]
    elif variant == 3:
        m = 4
        tau = Ordering.from_bitstrings(A3_ORDERING)
        hs = [
            Subgroup.coordinates_equal(1, 2, 4),
            Subgroup.coordinates_equal(1, 3, 4),
            Subgroup.coordinates_equal(1, 4, 4),
            Subgroup.coordinate_zero(1, 4),
        ]
        wit = [parse_element(x) for x in ("0100", "0010", "0001", "1111")]
    else:
        raise SpecError(f"unknown A variant {variant}")
    fam = FamilyParams(f"A{variant}", s=s, t=len(hs), m=m)
    return construct_generic(tau, hs, s, field=field, witnesses=wit, family=fam)


def construct_B(variant: int, *, field: FieldSpec | None = None) -> ZigzagCodeSpec:
    """The two-parity codes (6,4,8) and (7,5,16); node ``i`` repairs with ``H_i``."""
    if variant == 1:
        tau = Ordering.from_bitstrings(B1_ORDERING)
        s2 = ["000", "100", "110", "101"]
        checks = ["100", "111", "010", "001"]
    elif variant == 2:
        tau = Ordering.from_bitstrings(B2_ORDERING)
        s2 = ["0000", "0100", "0010", "0001", "1111"]
        checks = ["0111", "1100", "1010", "1001", "1000"]
    else:
        raise SpecError(f"unknown B variant {variant}")
    k = len(s2)
    labels = [[0] * k, [parse_element(x) for x in s2]]
    hints = [RepairHint(i, 0, 1, parse_element(c)) for i, c in enumerate(checks)]
    field = field or field_for_length(k + 2)
    fam = FamilyParams(f"B{variant}", m=tau.m)
    return make_spec(labels, tau.m, field=field, ordering=tau, repair_hints=hints, family=fam)


def shorten(spec: ZigzagCodeSpec, drop: int) -> ZigzagCodeSpec:
    """Remove the last ``drop`` systematic columns; parities, field and ordering stay."""
    if drop == 0:
        return spec
    fam = spec.family
    limit = (fam.t - 1) if fam is not None and fam.t else spec.k - 1
    if not 0 <= drop <= limit:
        raise SpecError(f"can drop between 0 and {limit} systematic columns, got {drop}")
    k = spec.k - drop
    new_fam = None
    if fam is not None:
        new_fam = FamilyParams(fam.tag, s=fam.s, t=fam.t, m=fam.m, drop=fam.drop + drop)
    return ZigzagCodeSpec(
        n=spec.n - drop,
        k=k,
        m=spec.m,
        labels=[label[:k] for label in spec.labels],
        field=spec.field,
        alphas=spec.alphas,
        betas=spec.betas[:k],
        ordering=spec.ordering,
        repair_hints=[h for h in spec.repair_hints if h.failed < k],
        family=new_fam,
    )


def build_family(name: str, s: int | None = None, drop: int = 0, m: int | None = None,
                 field: FieldSpec | None = None) -> ZigzagCodeSpec:
    """Catalog lookup: ``A1``/``A2``/``A3`` need ``s``; ``B1``/``B2`` are fixed."""
    tag = name.upper()
    if tag not in FAMILIES:
        raise SpecError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    if tag.startswith("A"):
        if s is None or s < 1:
            raise SpecError(f"family {tag} needs s >= 1")
        variant = int(tag[1])
        if variant != 1 and m not in (None, variant + 1):
            raise SpecError(f"family {tag} is defined only for m={variant + 1}")
        spec = construct_A(variant, s, m=m or 2, field=field)
    else:
        if s not in (None, 1) or m is not None:
            raise SpecError(f"family {tag} has fixed parameters")
        spec = construct_B(int(tag[1]), field=field)
    return shorten(spec, drop)


def spec_from_family_doc(doc: Mapping) -> ZigzagCodeSpec:
    """Spec from ``{"family": "A2", "s": 2, "drop": 0, "field": {...}}``."""
    try:
        name = doc["family"]
        fdoc = doc.get("field")
        field = build_field(int(fdoc["w"]), fdoc.get("modulus_hex")) if fdoc else None
        return build_family(
            str(name),
            s=doc.get("s"),
            drop=int(doc.get("drop", 0)),
            m=doc.get("m"),
            field=field,
        )
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed family document: {exc!r}") from exc
