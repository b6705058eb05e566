import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from graphcodes.errors import DomainError, IntegrityError, ResourceError
from graphcodes.gf2 import (
    PRIMITIVE_POLYNOMIALS,
    BitMatrix,
    BitVec,
    FieldSpec,
    enumerate_subspaces,
    from_hex,
    gaussian_binomial,
    gf2m_mul,
    gf2m_pow,
    is_primitive,
    kernel_basis,
    rank,
    to_hex,
)

import oracles


def bits(text):
    """'110' -> coordinates 0 and 1 set."""
    return sum(1 << k for k, ch in enumerate(text) if ch == "1")


def test_field_examples():
    f4 = FieldSpec.standard(4)
    assert f4.modulus == 0b10011
    x = 0b10
    assert gf2m_mul(x, 1, f4) == x
    assert gf2m_mul(0, 0b1011, f4) == 0
    assert oracles.poly_mulmod(0b1000, 0b10, 0b10011) == 0b0011
    assert gf2m_mul(0b1000, x, f4) == 0b0011
    f3 = FieldSpec.standard(3)
    assert oracles.poly_mulmod(oracles.poly_mulmod(x, x, 0b1011), x, 0b1011) == 0b011
    assert gf2m_pow(x, 3, f3) == 0b011
    for s in range(2, 9):
        f = FieldSpec.standard(s)
        assert gf2m_pow(x, f.order, f) == 1
        assert gf2m_pow(0b101 % (1 << s), 1, f) == 0b101 % (1 << s)
        assert gf2m_pow(0b11, 0, f) == 1


def test_standard_table_is_primitive_and_matches_named_polys():
    assert PRIMITIVE_POLYNOMIALS[3] == 0b1011
    assert PRIMITIVE_POLYNOMIALS[8] == (1 << 8) | (1 << 4) | (1 << 3) | (1 << 2) | 1
    for s, poly in PRIMITIVE_POLYNOMIALS.items():
        assert is_primitive(poly, s)
    # x^4+x^3+x^2+x+1 is irreducible but x has order 5
    assert not is_primitive(0b11111, 4)
    with pytest.raises(IntegrityError):
        FieldSpec(4, 0b11111)
    with pytest.raises(DomainError):
        FieldSpec.standard(17)


def test_primitivity_by_brute_force_order():
    for s in range(2, 9):
        poly = PRIMITIVE_POLYNOMIALS[s]
        seen, e = set(), 1
        for _ in range((1 << s) - 1):
            seen.add(e)
            e = oracles.poly_mulmod(e, 0b10, poly)
        assert len(seen) == (1 << s) - 1


@settings(max_examples=300)
@given(st.integers(2, 8), st.data())
def test_field_axioms(s, data):
    f = FieldSpec.standard(s)
    el = st.integers(0, (1 << s) - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert gf2m_mul(a, b, f) == gf2m_mul(b, a, f)
    assert gf2m_mul(gf2m_mul(a, b, f), c, f) == gf2m_mul(a, gf2m_mul(b, c, f), f)
    assert gf2m_mul(a, b ^ c, f) == gf2m_mul(a, b, f) ^ gf2m_mul(a, c, f)
    assert gf2m_mul(a, b, f) == oracles.poly_mulmod(a, b, f.modulus)
    if a:
        assert gf2m_mul(a, gf2m_pow(a, (1 << s) - 2, f), f) == 1


def test_rank_and_kernel_examples():
    eye = BitMatrix(3, (0b001, 0b010, 0b100))
    assert rank(eye) == 3 and kernel_basis(eye) == []
    zero = BitMatrix(5, (0, 0))
    assert rank(zero) == 0 and len(kernel_basis(zero)) == 5
    m = BitMatrix(3, (bits("110"), bits("011")))
    brute = [v for v in range(8) if v and m.mul_vec(v) == 0]
    assert brute == [bits("111")]
    assert rank(m) == 2
    assert [v.bits for v in kernel_basis(m)] == [bits("111")]


@settings(max_examples=200)
@given(st.integers(1, 10), st.integers(0, 8), st.data())
def test_rank_nullity(cols, nrows, data):
    rows = tuple(data.draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=nrows, max_size=nrows)))
    m = BitMatrix(cols, rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == cols
    for v in ker:
        assert m.mul_vec(v.bits) == 0
    assert rank([v.bits for v in ker]) == len(ker)
    # brute-force kernel size
    if cols <= 8:
        assert sum(1 for v in range(1 << cols) if m.mul_vec(v) == 0) == 1 << len(ker)


def test_subspace_counts_examples():
    assert sum(1 for _ in enumerate_subspaces(3, 1)) == 7
    assert sum(1 for _ in enumerate_subspaces(4, 2)) == 35
    assert sum(1 for _ in enumerate_subspaces(6, 0)) == 1
    # dedup over all ordered pairs of independent vectors
    spans = {oracles.subspace_span([a, b]) for a in range(1, 16) for b in range(1, 16) if a != b}
    assert len(spans) == 35


def _product_formula(n, k):
    num = den = 1
    for i in range(k):
        num *= (2**n - 2**i)
        den *= (2**k - 2**i)
    return num // den


@pytest.mark.parametrize("n", range(0, 7))
def test_subspaces_unique_and_counted(n):
    for k in range(n + 1):
        spans = [oracles.subspace_span(b.rows) for b in enumerate_subspaces(n, k)]
        assert len(spans) == len(set(spans)) == _product_formula(n, k) == gaussian_binomial(n, k)
        for s in spans:
            assert len(s) == 1 << k


def test_subspaces_are_rref_and_profile_ordered():
    last_profile = None
    for b in enumerate_subspaces(5, 2):
        pivots = [r & -r for r in b.rows]
        profile = tuple(p.bit_length() - 1 for p in pivots)
        assert list(profile) == sorted(profile)
        for r, p in zip(b.rows, pivots):
            # no other row carries this pivot column
            assert sum(1 for q in b.rows if q & p) == 1
        if last_profile is not None:
            assert profile >= last_profile
        last_profile = profile


def test_subspace_caps():
    with pytest.raises(ResourceError):
        next(enumerate_subspaces(13, 1))
    with pytest.raises(DomainError):
        next(enumerate_subspaces(3, 4))


def test_hex_layout_lsb_first():
    # bit k lives in digit k // 4 at position k % 4
    assert to_hex(0b1, 8) == "10"
    assert to_hex(1 << 4, 8) == "01"
    assert to_hex(0b1000, 5) == "80"
    rnd = random.Random(0)
    for length in range(0, 70):
        v = rnd.getrandbits(length) if length else 0
        assert from_hex(to_hex(v, length), length) == v
        assert BitVec.from_hex(BitVec(length, v).to_hex(), length) == BitVec(length, v)
    with pytest.raises(DomainError):
        from_hex("f", 3)
    with pytest.raises(DomainError):
        from_hex("1", 8)


def test_bitvec_tail_invariant():
    with pytest.raises(DomainError):
        BitVec(3, 0b1000)
    with pytest.raises(DomainError):
        BitMatrix(2, (0b100,))
