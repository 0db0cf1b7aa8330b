"""The row-index group Z_2^m, its index-two subgroups and row orderings.

A group element is an ``int`` in ``[0, 2^m)``.  The bit string ``x1 x2 ... xm``
is read most-significant-bit first, so ``"01"`` is the integer 1 and the
lexicographic order on bit strings is the natural integer order.  The group
operation is exclusive-or.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .errors import SpecError


def parse_element(bits: str) -> int:
    if not bits or set(bits) - {"0", "1"}:
        raise SpecError(f"not a bit string: {bits!r}")
    return int(bits, 2)


def format_element(g: int, m: int) -> str:
    return format(g, f"0{m}b")


def unit_vector(i: int, m: int) -> int:
    """``e_i`` (1-based coordinate), e.g. ``unit_vector(2, 2) == 0b01``."""
    return 1 << (m - i)


def all_ones(m: int) -> int:
    return (1 << m) - 1


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True, order=True)
class Subgroup:
    """Index-two subgroup ``{g : check . g = 0 (mod 2)}`` of Z_2^m."""

    m: int
    check: int

    def __post_init__(self):
        if self.m < 1:
            raise SpecError("group dimension must be >= 1")
        if not 0 < self.check < 1 << self.m:
            raise SpecError(f"check vector must be a nonzero {self.m}-bit vector")

    @classmethod
    def from_bits(cls, bits: str) -> "Subgroup":
        return cls(len(bits), parse_element(bits))

    @classmethod
    def coordinate_zero(cls, i: int, m: int) -> "Subgroup":
        """``{x_i = 0}``."""
        return cls(m, unit_vector(i, m))

    @classmethod
    def coordinates_equal(cls, i: int, j: int, m: int) -> "Subgroup":
        """``{x_i = x_j}``."""
        return cls(m, unit_vector(i, m) | unit_vector(j, m))

    def __contains__(self, g: int) -> bool:
        return not _parity(self.check & g)

    def members(self) -> frozenset[int]:
        return _members(self.m, self.check, True)

    def complement(self) -> frozenset[int]:
        return _members(self.m, self.check, False)

    def coset_of(self, g: int) -> frozenset[int]:
        return self.members() if g in self else self.complement()

    @property
    def bits(self) -> str:
        return format_element(self.check, self.m)

    def __str__(self):
        return f"H[{self.bits}]"


@functools.lru_cache(maxsize=None)
def _members(m, check, inside):
    return frozenset(g for g in range(1 << m) if (not _parity(check & g)) == inside)


def all_subgroups(m: int) -> list[Subgroup]:
    return [Subgroup(m, a) for a in range(1, 1 << m)]


@dataclass(frozen=True)
class Ordering:
    """A row ordering: ``sequence[i]`` is the element stored at position ``i``.

    Positions are 0-based here; skip costs only depend on differences.
    """

    m: int
    sequence: tuple[int, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seq = tuple(int(g) for g in self.sequence)
        if sorted(seq) != list(range(1 << self.m)):
            raise SpecError(f"ordering is not a permutation of Z_2^{self.m}")
        pos = [0] * len(seq)
        for i, g in enumerate(seq):
            pos[g] = i
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def lexicographic(cls, m: int) -> "Ordering":
        return cls(m, tuple(range(1 << m)))

    @classmethod
    def from_bitstrings(cls, items) -> "Ordering":
        if isinstance(items, str):
            items = [s.strip() for s in items.split(",")]
        items = list(items)
        m = len(items[0])
        return cls(m, tuple(parse_element(s) for s in items))

    def to_bitstrings(self) -> list[str]:
        return [format_element(g, self.m) for g in self.sequence]

    def __str__(self):
        return ",".join(self.to_bitstrings())

    def __len__(self):
        return len(self.sequence)

    def reversed(self) -> "Ordering":
        return Ordering(self.m, self.sequence[::-1])

    def sort(self, rows) -> list[int]:
        """``rows`` arranged by position."""
        return sorted(rows, key=self.position.__getitem__)


def skip_cost(read_rows, tau: Ordering) -> int:
    """Rows skipped between the first and last read position under ``tau``."""
    positions = sorted(tau.position[g] for g in set(read_rows))
    if not positions:
        raise ValueError("skip cost of an empty read set is undefined")
    return positions[-1] - positions[0] - (len(positions) - 1)


def position_runs(read_rows, tau: Ordering) -> list[tuple[int, int]]:
    """Maximal runs of consecutive positions as ``(start, length)`` pairs."""
    positions = sorted(tau.position[g] for g in set(read_rows))
    runs = []
    for p in positions:
        if runs and runs[-1][0] + runs[-1][1] == p:
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((p, 1))
    return runs


def min_coset_cost(h: Subgroup, tau: Ordering) -> tuple[int, frozenset[int]]:
    """``(c, coset)``: the cheaper of ``h`` and its complement; ties keep ``h``."""
    if h.m != tau.m:
        raise SpecError("subgroup and ordering live in different groups")
    inside = skip_cost(h.members(), tau)
    outside = skip_cost(h.complement(), tau)
    if outside < inside:
        return outside, h.complement()
    return inside, h.members()


def t1_witnesses(subgroups) -> list[int] | None:
    """One ``h_i`` per subgroup with ``h_i`` in every other subgroup but not in its own.

    Each witness is the smallest valid element; returns None when some
    subgroup has none.
    """
    subgroups = list(subgroups)
    if not subgroups:
        raise ValueError("need at least one subgroup")
    m = subgroups[0].m
    if any(h.m != m for h in subgroups):
        raise SpecError("subgroups live in different groups")
    witnesses = []
    for i, hi in enumerate(subgroups):
        others = [hj for j, hj in enumerate(subgroups) if j != i]
        found = next(
            (g for g in range(1 << m) if g not in hi and all(g in hj for hj in others)),
            None,
        )
        if found is None:
            return None
        witnesses.append(found)
    return witnesses
