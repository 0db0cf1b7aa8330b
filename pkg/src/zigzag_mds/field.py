"""Arithmetic in the binary extension fields GF(2^w), 1 <= w <= 16.

Elements are plain ``int`` values whose bits are the coefficients of a
polynomial over GF(2) (bit ``i`` is the coefficient of ``x**i``).  Addition is
exclusive-or.  Multiplication goes through log/antilog tables built from the
smallest primitive element; :func:`clmul_reduce` is the table-free reference.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import FieldError, ZeroInverseError

MAX_WIDTH = 16


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of ``a`` divided by ``b`` as GF(2) polynomials."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def poly_str(p: int) -> str:
    """Human-readable form, e.g. ``0xB -> 'x^3+x+1'``."""
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


def find_factor(p: int) -> int | None:
    """Smallest nontrivial factor of ``p`` by trial division, or None."""
    d = poly_degree(p)
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return q
    return None


def is_irreducible(p: int) -> bool:
    return poly_degree(p) >= 1 and find_factor(p) is None


def clmul_reduce(a: int, b: int, modulus: int) -> int:
    """Shift-and-reduce product; the reference the tables are checked against."""
    w = poly_degree(modulus)
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> w & 1:
            a ^= modulus
    return result


@functools.lru_cache(maxsize=None)
def default_modulus(w: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree ``w``.

    Polynomials divisible by ``x`` are skipped, which only matters for w=1
    (it selects x+1 rather than x).
    """
    _check_width(w)
    for p in range((1 << w) | 1, 1 << (w + 1), 2):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _check_width(w):
    if not isinstance(w, (int, np.integer)) or not 1 <= w <= MAX_WIDTH:
        raise FieldError(f"field width must be in [1, {MAX_WIDTH}], got {w!r}")


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^w) defined by an irreducible ``modulus`` of degree ``w``.

    Construct through :func:`build_field`, which caches instances.
    """

    w: int
    modulus: int
    generator: int = field(init=False, compare=False)
    exp: np.ndarray = field(init=False, repr=False, compare=False)
    log: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_width(self.w)
        if poly_degree(self.modulus) != self.w:
            raise FieldError(
                f"modulus {poly_str(self.modulus)} has degree "
                f"{poly_degree(self.modulus)}, expected {self.w}"
            )
        factor = find_factor(self.modulus)
        if factor is not None:
            raise FieldError(
                f"modulus {poly_str(self.modulus)} is reducible: "
                f"divisible by {poly_str(factor)}",
                factor=factor,
            )
        q = 1 << self.w
        gen, powers = _primitive_powers(self.w, self.modulus)
        exp = np.zeros(2 * (q - 1), dtype=np.uint16)
        exp[: q - 1] = powers
        exp[q - 1 :] = powers
        log = np.full(q, -1, dtype=np.int32)
        log[powers] = np.arange(q - 1, dtype=np.int32)
        exp.setflags(write=False)
        log.setflags(write=False)
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "log", log)

    @property
    def order(self) -> int:
        return 1 << self.w

    @property
    def modulus_hex(self) -> str:
        return f"0x{self.modulus:X}"

    @property
    def symbol_bytes(self) -> int:
        return (self.w + 7) // 8

    def __str__(self):
        return f"GF(2^{self.w}) mod {poly_str(self.modulus)}"

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise FieldError(f"{a!r} is not an element of GF(2^{self.w})")
        return a

    # scalar arithmetic ------------------------------------------------
    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        """Inverse via the extended Euclidean algorithm."""
        if a == 0:
            raise ZeroInverseError("zero has no multiplicative inverse")
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1 != 1:
            q = 0
            r = r0
            dr = poly_degree(r1)
            while r and poly_degree(r) >= dr:
                shift = poly_degree(r) - dr
                q ^= 1 << shift
                r ^= r1 << shift
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ _clmul(q, s1)
        return poly_mod(s1, self.modulus)

    def inv_by_power(self, a: int) -> int:
        """Inverse as ``a ** (2^w - 2)``."""
        if a == 0:
            raise ZeroInverseError("zero has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def element(self, power: int) -> int:
        """``generator ** power``."""
        return int(self.exp[power % (self.order - 1)])

    def enumerate(self) -> list[int]:
        """Fixed element order: 0 followed by generator**0, generator**1, ..."""
        return [0] + [int(v) for v in self.exp[: self.order - 1]]

    # vectorized arithmetic -------------------------------------------
    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log[a]
        lb = self.log[b]
        out = self.exp[np.maximum(la, 0) + np.maximum(lb, 0)].astype(np.int64)
        return np.where((la < 0) | (lb < 0), 0, out)


def _clmul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _primitive_powers(w, modulus):
    q = 1 << w
    if q == 2:
        return 1, np.array([1], dtype=np.uint16)
    for g in range(2, q):
        powers = [1]
        x = g
        while x != 1:
            powers.append(x)
            x = clmul_reduce(x, g, modulus)
        if len(powers) == q - 1:
            return g, np.array(powers, dtype=np.uint16)
    raise AssertionError("multiplicative group of a finite field is cyclic")


@functools.lru_cache(maxsize=None)
def _build_field(w, modulus):
    return FieldSpec(w, modulus)


def build_field(w: int, modulus: int | str | None = None) -> FieldSpec:
    """Validated GF(2^w); ``modulus`` may be an int or a hex string like "0xB"."""
    _check_width(w)
    if modulus is None:
        modulus = default_modulus(w)
    elif isinstance(modulus, str):
        modulus = int(modulus, 16)
    return _build_field(int(w), int(modulus))


def field_for_length(n: int) -> FieldSpec:
    """Smallest default field with at least ``n`` elements."""
    w = max(1, (n - 1).bit_length())
    return build_field(w)


def mul(a: int, b: int, f: FieldSpec) -> int:
    return f.mul(a, b)


def inv(a: int, f: FieldSpec) -> int:
    return f.inv(a)
