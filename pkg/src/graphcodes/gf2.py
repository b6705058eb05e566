"""Linear algebra over GF(2) on int bitsets, and arithmetic in GF(2^s).

Bit k of an int is coordinate k. Field elements are ints with bit i the
coefficient of x^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import DomainError, IntegrityError, ResourceError

SUBSPACE_AMBIENT_CAP = 12


@dataclass(frozen=True)
class BitVec:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DomainError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise DomainError("bits set beyond vector length")

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise DomainError("length mismatch")
        return BitVec(self.length, self.bits ^ other.bits)

    def __getitem__(self, k: int) -> int:
        return self.bits >> k & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_hex(self) -> str:
        return to_hex(self.bits, self.length)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitVec":
        return cls(length, from_hex(text, length))


def to_hex(bits: int, length: int) -> str:
    """LSB-first hex: digit k holds bits 4k..4k+3, bit 4k as that digit's low bit."""
    ndigits = (length + 3) // 4
    return "".join("0123456789abcdef"[bits >> (4 * k) & 0xF] for k in range(ndigits))


def from_hex(text: str, length: int) -> int:
    if len(text) != (length + 3) // 4:
        raise DomainError(f"hex string of {len(text)} digits does not encode {length} bits")
    bits = 0
    for k, ch in enumerate(text):
        if ch not in "0123456789abcdef":
            raise DomainError(f"invalid hex digit {ch!r}")
        bits |= int(ch, 16) << (4 * k)
    if bits >> length:
        raise DomainError("hex string sets bits beyond vector length")
    return bits


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; each row is an int with bit c = column c."""

    cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        limit = 1 << self.cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise DomainError("row has bits beyond column count")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row_vecs(self) -> list[BitVec]:
        return [BitVec(self.cols, r) for r in self.rows]

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product; bit i of the result is row i dotted with ``v``."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & v).bit_count() & 1) << i
        return out

    def columns(self) -> list[int]:
        """Column c as an int with bit i = entry (i, c)."""
        cols = [0] * self.cols
        for i, r in enumerate(self.rows):
            x = r
            while x:
                low = x & -x
                cols[low.bit_length() - 1] |= 1 << i
                x ^= low
        return cols

    def to_dense(self) -> list[list[int]]:
        return [[r >> c & 1 for c in range(self.cols)] for r in self.rows]


def rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns), pivots ascending."""
    work = [r for r in rows]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        idx = next((k for k, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        p = work.pop(idx)
        work = [r ^ p if r & bit else r for r in work]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
        pivots.append(col)
    return out, pivots


def rank(m: BitMatrix | Sequence[int]) -> int:
    rows = m.rows if isinstance(m, BitMatrix) else m
    # xor basis keyed on the leading bit
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def kernel_basis(m: BitMatrix) -> list[BitVec]:
    """Basis of {v : m v = 0}, one vector per non-pivot column."""
    red, pivots = rref(m.rows, m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(red, pivots):
            if row >> f & 1:
                v |= 1 << p
        basis.append(BitVec(m.cols, v))
    return basis


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(dim_ambient: int, dim_sub: int) -> Iterator[BitMatrix]:
    """Every ``dim_sub``-dimensional subspace of GF(2)^dim_ambient, once, as an RREF basis.

    Pivot profiles come in lexicographic order; within a profile the free
    entries count up in binary.
    """
    if not 0 <= dim_sub <= dim_ambient:
        raise DomainError(f"need 0 <= dim_sub <= dim_ambient, got ({dim_ambient}, {dim_sub})")
    if dim_ambient > SUBSPACE_AMBIENT_CAP:
        raise ResourceError(f"ambient dimension {dim_ambient} exceeds cap {SUBSPACE_AMBIENT_CAP}")
    for pivots in combinations(range(dim_ambient), dim_sub):
        pivot_set = set(pivots)
        free = [
            [c for c in range(p + 1, dim_ambient) if c not in pivot_set]
            for p in pivots
        ]
        slots = [(i, c) for i, cs in enumerate(free) for c in cs]
        for assignment in product((0, 1), repeat=len(slots)):
            rows = [1 << p for p in pivots]
            for (i, c), bit in zip(slots, assignment):
                if bit:
                    rows[i] |= 1 << c
            yield BitMatrix(dim_ambient, tuple(rows))


# Primitive polynomials, bit i = coefficient of x^i.
PRIMITIVE_POLYNOMIALS: dict[int, int] = {
    2: 0b111,                 # x^2+x+1
    3: 0b1011,                # x^3+x+1
    4: 0b10011,               # x^4+x+1
    5: 0b100101,              # x^5+x^2+1
    6: 0b1000011,             # x^6+x+1
    7: 0b10000011,            # x^7+x+1
    8: 0b100011101,           # x^8+x^4+x^3+x^2+1
    9: 0x211,                 # x^9+x^4+1
    10: 0x409,                # x^10+x^3+1
    11: 0x805,                # x^11+x^2+1
    12: 0x1053,               # x^12+x^6+x^4+x+1
    13: 0x201B,               # x^13+x^4+x^3+x+1
    14: 0x4443,               # x^14+x^10+x^6+x+1
    15: 0x8003,               # x^15+x+1
    16: 0x1100B,              # x^16+x^12+x^3+x+1
}


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _mulmod(a: int, b: int, s: int, modulus: int) -> int:
    result = 0
    top = 1 << s
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return result


def _powmod(a: int, e: int, s: int, modulus: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = _mulmod(result, a, s, modulus)
        a = _mulmod(a, a, s, modulus)
        e >>= 1
    return result


def is_primitive(modulus: int, s: int) -> bool:
    """Whether x has multiplicative order exactly 2^s - 1 modulo ``modulus``."""
    if modulus.bit_length() != s + 1 or not modulus & 1:
        return False
    order = (1 << s) - 1
    x = 0b10 if s > 1 else 1
    if _powmod(x, order, s, modulus) != 1:
        return False
    return all(_powmod(x, order // p, s, modulus) != 1 for p in _prime_factors(order))


@dataclass(frozen=True)
class FieldSpec:
    s: int
    modulus: int

    def __post_init__(self) -> None:
        if not 2 <= self.s <= 16:
            raise DomainError(f"extension degree must be in 2..16, got {self.s}")
        if not is_primitive(self.modulus, self.s):
            raise IntegrityError(f"modulus {self.modulus:#x} is not primitive of degree {self.s}")

    @classmethod
    def standard(cls, s: int) -> "FieldSpec":
        if s not in PRIMITIVE_POLYNOMIALS:
            raise DomainError(f"no tabulated primitive polynomial for s={s}")
        return cls(s, PRIMITIVE_POLYNOMIALS[s])

    @property
    def order(self) -> int:
        return (1 << self.s) - 1


def gf2m_mul(a: int, b: int, f: FieldSpec) -> int:
    return _mulmod(a, b, f.s, f.modulus)


def gf2m_pow(a: int, e: int, f: FieldSpec) -> int:
    if e < 0:
        raise DomainError("negative exponent")
    return _powmod(a, e, f.s, f.modulus)


def _validate_table() -> None:
    for s, poly in PRIMITIVE_POLYNOMIALS.items():
        if not is_primitive(poly, s):
            raise IntegrityError(f"tabulated polynomial for s={s} is not primitive")


_validate_table()
