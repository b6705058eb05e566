import random
from itertools import combinations

import pytest

from graphcodes.constructions import (
    ExplicitGraphCode,
    LinearGraphCode,
    clique_linear_code,
    even_parity_code,
    small_clique_code,
    star_code,
)
from graphcodes.errors import DomainError, ResourceError
from graphcodes.families import (
    AllCliques,
    CliquesUpTo,
    Explicit,
    IsoCopiesOf,
    Matching,
    Star,
    classify_membership,
    copy_masks,
)
from graphcodes.gf2 import BitMatrix
from graphcodes.graph import LabeledGraph, edge_pairs, num_edges
from graphcodes.verification import (
    Sampled,
    _clique_scan_dfs,
    _clique_scan_table,
    coloring_from_code,
    syndrome,
    verify_code,
    verify_odd_cover,
)

TRI = LabeledGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


def expand(code: LinearGraphCode) -> ExplicitGraphCode:
    members = tuple(LabeledGraph(code.n, g) for g in range(1 << code.num_edges) if code.syndrome_mask(g) == 0)
    return ExplicitGraphCode(code.n, members)


def pairwise_violations(code: ExplicitGraphCode, fam) -> int:
    """Every unordered member pair, judged by the membership recogniser."""
    return sum(1 for g, h in combinations(code.members, 2) if classify_membership(g ^ h, fam))


def test_explicit_star_pair_is_reported():
    n = 3
    k12 = LabeledGraph.from_edges(n, [(0, 1), (0, 2)])
    code = ExplicitGraphCode(n, (LabeledGraph.empty(n), k12))
    rep = verify_code(code, Star(2))
    assert not rep.passed and rep.violation_count == 1
    (v,) = rep.violations
    assert v.copy == k12
    assert set(v.pair) == {LabeledGraph.empty(n), k12}


def test_star_code_n8_checks_every_copy():
    rep = verify_code(star_code(8, 1), Star(2))
    assert rep.copies_checked == 168 and rep.passed and rep.violations == []


def test_corrupted_parity_row_fails_with_real_copy():
    code = clique_linear_code(7)
    rows = list(code.parity.rows)
    rows[0] ^= 1  # flip edge (0,1) in G_0
    bad = LinearGraphCode(7, BitMatrix(code.num_edges, tuple(rows)))
    rep = verify_code(bad, AllCliques())
    assert not rep.passed
    for v in rep.violations:
        assert classify_membership(v.copy, AllCliques())
        assert bad.syndrome_mask(v.copy.mask) == 0
        g, h = v.pair
        assert bad.contains(g) and bad.contains(h) and g ^ h == v.copy


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("fam", [Star(2), Matching(2), AllCliques(), IsoCopiesOf(TRI)], ids=str)
def test_linear_and_expanded_paths_agree(n, fam):
    codes = [clique_linear_code(n), even_parity_code(n), star_code(n, 1)]
    rnd = random.Random(n)
    N = num_edges(n)
    codes += [LinearGraphCode(n, BitMatrix(N, tuple(rnd.getrandbits(N) for _ in range(2)))) for _ in range(4)]
    for code in codes:
        lin = verify_code(code, fam)
        exp = expand(code)
        pw = verify_code(exp, fam)
        assert lin.passed == pw.passed == (pairwise_violations(exp, fam) == 0)
        assert pw.violation_count == pairwise_violations(exp, fam)


def test_explicit_path_against_pairwise_oracle():
    rnd = random.Random(5)
    n = 5
    N = num_edges(n)
    for _ in range(30):
        members = tuple(LabeledGraph(n, m) for m in sorted(set(rnd.getrandbits(N) for _ in range(25))))
        code = ExplicitGraphCode(n, members)
        for fam in (Star(2), Matching(2), CliquesUpTo(4)):
            assert verify_code(code, fam).violation_count == pairwise_violations(code, fam)


def test_sampled_mode_is_reproducible():
    code = clique_linear_code(12)
    rows = list(code.parity.rows)
    rows[1] = 0
    bad = LinearGraphCode(12, BitMatrix(code.num_edges, tuple(rows)))
    a = verify_code(bad, Star(2), Sampled(seed=3, count=5000))
    b = verify_code(bad, Star(2), Sampled(seed=3, count=5000))
    assert a == b and a.copies_checked == 5000


def test_workers_do_not_change_result():
    code = star_code(9, 1)
    rows = list(code.parity.rows)
    rows[0] = 0
    bad = LinearGraphCode(9, BitMatrix(code.num_edges, tuple(rows)))
    one = verify_code(bad, Star(2), workers=1)
    two = verify_code(bad, Star(2), workers=2)
    assert one == two and not one.passed


@pytest.mark.parametrize("n", range(2, 13))
def test_clique_linear_coloring_is_odd_cover(n):
    assert verify_odd_cover(coloring_from_code(clique_linear_code(n)), AllCliques(), n).passed


def test_odd_cover_examples():
    n = 5
    mono = {e: "red" for e in edge_pairs(n)}
    rep = verify_odd_cover(mono, Star(2), n)
    assert not rep.passed and rep.violation_count == Star(2).count(n)
    by_min = {(i, j): min(i, j) for i, j in edge_pairs(6)}
    assert verify_odd_cover(by_min, Matching(2), 6).passed
    # min colouring fails on stars: centre 3 with leaves 4, 5 is monochromatic
    rep = verify_odd_cover(by_min, Star(2), 6)
    assert LabeledGraph.from_edges(6, [(3, 4), (3, 5)]) in [v.copy for v in rep.violations]


def test_odd_cover_rejects_partial():
    partial = {(0, 1): 0, (0, 2): 1}
    with pytest.raises(DomainError):
        verify_odd_cover(partial, Star(2), 3)
    with pytest.raises(DomainError):
        verify_odd_cover([0, 1], Star(2), 3)


def test_odd_cover_matches_brute_force():
    rnd = random.Random(2)
    n = 5
    for _ in range(40):
        colors = [rnd.randrange(3) for _ in range(num_edges(n))]
        for fam in (Star(2), Matching(2), AllCliques()):
            expected = 0
            for s in copy_masks(fam, n):
                counts = {}
                for e in range(num_edges(n)):
                    if s >> e & 1:
                        counts[colors[e]] = counts.get(colors[e], 0) + 1
                if all(c % 2 == 0 for c in counts.values()):
                    expected += 1
            assert verify_odd_cover(colors, fam, n).violation_count == expected


def test_syndrome_of_triangle():
    code = clique_linear_code(5)
    syn = syndrome(TRI.relabel([0, 1, 2], 5), code)
    assert syn.bits & 1 == 1
    with pytest.raises(DomainError):
        syndrome(TRI, code)


@pytest.mark.parametrize("n,limit", [(8, 8), (10, 4), (12, 3), (13, 13)])
def test_clique_table_and_dfs_agree(n, limit):
    rnd = random.Random(n)
    cols = [rnd.getrandbits(5) for _ in range(num_edges(n))]
    checked, bad = _clique_scan_dfs(cols, n, limit)
    assert _clique_scan_table(cols, n, 5, limit) == (checked, sorted(bad))


def test_wide_columns_in_table_scan():
    # columns wider than one machine word
    rnd = random.Random(9)
    n = 9
    cols = [rnd.getrandbits(100) for _ in range(num_edges(n))]
    cols[0] = cols[1] ^ cols[8]  # clique {0,1,2} cancels
    checked, bad = _clique_scan_table(cols, n, 100, n)
    assert 0b111 in bad
    c2, b2 = _clique_scan_dfs(cols, n, n)
    assert (checked, sorted(bad)) == (c2, sorted(b2))


def test_family_vertex_count_mismatch():
    with pytest.raises(DomainError):
        verify_code(star_code(5, 1), Explicit((TRI,)))


def test_clique_scan_cap():
    with pytest.raises(ResourceError):
        verify_code(even_parity_code(70), AllCliques())


@pytest.mark.parametrize("n", [10, 14])
def test_small_clique_exhaustive(n):
    assert verify_code(small_clique_code(n, 1), CliquesUpTo(7)).passed
