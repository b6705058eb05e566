"""Checking that a code is an H-code, and that an edge colouring is an odd cover."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import DomainError, ResourceError
from .families import (
    AllCliques,
    CliquesUpTo,
    ForbiddenFamily,
    copy_masks,
    sample_copy_masks,
)
from .constructions import ExplicitGraphCode, LinearGraphCode
from .gf2 import BitVec
from .graph import LabeledGraph, _edge_index_table, clique_mask, iter_bits, num_edges

MAX_STORED_VIOLATIONS = 100
DEFAULT_SAMPLES = 100_000
MAX_CLIQUE_SCAN_VERTICES = 64
# 2^32 subsets is far past desk scale for the table scan
MAX_CLIQUE_TABLE_BITS = 32
_WORD = (1 << 64) - 1


@dataclass(frozen=True)
class Sampled:
    seed: int = 0
    count: int = DEFAULT_SAMPLES


EXHAUSTIVE = "exhaustive"
Mode = Union[str, Sampled]


@dataclass(frozen=True)
class Violation:
    copy: LabeledGraph
    pair: tuple[LabeledGraph, LabeledGraph] | None = None
    syndrome: BitVec | None = None


@dataclass
class VerificationReport:
    family: str
    mode: Mode
    copies_checked: int
    violation_count: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


def syndrome(g: LabeledGraph, code: LinearGraphCode) -> BitVec:
    if g.n != code.n:
        raise DomainError(f"graph on {g.n} vertices, code on {code.n}")
    return BitVec(code.parity.nrows, code.syndrome_mask(g.mask))


# --- clique scans -----------------------------------------------------------

def _words(x: int, width: int) -> np.ndarray:
    return np.array([(x >> (64 * w)) & _WORD for w in range(width)], dtype=np.uint64)


def clique_syndrome_blocks(
    edge_columns: Sequence[int], n: int, nbits: int, low_bits: int = 20
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Syndromes of the cliques on every vertex subset of {0..n-1}.

    Yields ``(base, syn, size)`` per block: row x of ``syn`` (uint64 words) is
    the XOR of ``edge_columns`` over the clique on subset ``base | x`` and
    ``size[x]`` its vertex count. Blocks cover subsets in increasing order of
    their indicator integer. Adding vertex v to a subset y of lower vertices
    changes the syndrome by a term linear in y, so each block is filled by
    doubling in O(2^low_bits) vector operations.
    """
    width = max(1, -(-nbits // 64))
    L = min(n, low_bits)
    table = _edge_index_table(n)

    def col(i: int, j: int) -> int:
        return edge_columns[table[i][j]]

    syn = np.zeros((1 << L, width), dtype=np.uint64)
    size = np.zeros(1 << L, dtype=np.int64)
    for v in range(L):
        half = 1 << v
        lin = np.zeros((half, width), dtype=np.uint64)
        for u in range(v):
            lin[1 << u: 2 << u] = lin[: 1 << u] ^ _words(col(u, v), width)
        syn[half: 2 * half] = syn[:half] ^ lin
        size[half: 2 * half] = size[:half] + 1

    for h in range(1 << (n - L)):
        high = [L + k for k in iter_bits(h)]
        if not high:
            yield 0, syn, size
            continue
        syn_h = 0
        for a, u in enumerate(high):
            for w in high[a + 1:]:
                syn_h ^= col(u, w)
        cross = np.zeros((1 << L, width), dtype=np.uint64)
        for u in range(L):
            c = 0
            for w in high:
                c ^= col(u, w)
            cross[1 << u: 2 << u] = cross[: 1 << u] ^ _words(c, width)
        yield h << L, syn ^ cross ^ _words(syn_h, width), size + len(high)


def _clique_scan_table(edge_columns, n, nbits, limit) -> tuple[int, list[int]]:
    if n > MAX_CLIQUE_TABLE_BITS:
        raise ResourceError(f"exhaustive clique scan over 2^{n} subsets exceeds desk scale; use sampling")
    checked, bad = 0, []
    for base, syn, size in clique_syndrome_blocks(edge_columns, n, nbits):
        in_range = (size >= 2) & (size <= limit)
        checked += int(np.count_nonzero(in_range))
        hits = np.flatnonzero(in_range & ~syn.any(axis=1))
        bad.extend(base | int(x) for x in hits)
    return checked, bad


def _clique_scan_dfs(edge_columns, n, limit) -> tuple[int, list[int]]:
    """Grow vertex sets in increasing order, carrying each later vertex's cross term."""
    table = _edge_index_table(n)
    cols = [[edge_columns[table[i][j]] if i != j else 0 for j in range(n)] for i in range(n)]
    checked = 0
    bad: list[int] = []

    def grow(last: int, subset: int, syn: int, acc: list[int], size: int) -> None:
        nonlocal checked
        for w in range(last + 1, n):
            s2 = syn ^ acc[w]
            sub2 = subset | (1 << w)
            if size + 1 >= 2:
                checked += 1
                if s2 == 0:
                    bad.append(sub2)
            if size + 1 < limit:
                row = cols[w]
                grow(w, sub2, s2, [acc[x] ^ row[x] for x in range(n)], size + 1)

    grow(-1, 0, 0, [0] * n, 0)
    return checked, bad


def _clique_violations(edge_columns, n, nbits, limit) -> tuple[int, list[int]]:
    """Violating vertex subsets (as indicator ints) among cliques on 2..limit vertices."""
    if n > MAX_CLIQUE_SCAN_VERTICES:
        raise ResourceError(f"clique scans are capped at n={MAX_CLIQUE_SCAN_VERTICES}")
    bounded = sum(comb(n, s) for s in range(2, limit + 1))
    if n <= MAX_CLIQUE_TABLE_BITS and bounded * 16 >= (1 << n):
        return _clique_scan_table(edge_columns, n, nbits, limit)
    if bounded > 10**9:
        raise ResourceError(f"{bounded} cliques exceed the exhaustive budget; use sampling")
    return _clique_scan_dfs(edge_columns, n, limit)


# --- generic copy scans -----------------------------------------------------

def _zero_syndrome_chunk(edge_columns: Sequence[int], masks: Sequence[int]) -> list[int]:
    bad = []
    for mask in masks:
        acc = 0
        x = mask
        while x:
            low = x & -x
            acc ^= edge_columns[low.bit_length() - 1]
            x ^= low
        if acc == 0:
            bad.append(mask)
    return bad


def _explicit_chunk(members: frozenset[int], masks: Sequence[int]) -> list[tuple[int, int, int]]:
    bad = []
    ordered = sorted(members)
    for g in ordered:
        for s in masks:
            h = g ^ s
            if g < h and h in members:
                bad.append((s, g, h))
    return bad


def _chunks(seq: Sequence, k: int) -> list[Sequence]:
    step = -(-len(seq) // k) if seq else 1
    return [seq[i: i + step] for i in range(0, len(seq), step)] or [seq]


def _run_chunks(func, shared, masks: Sequence[int], workers: int) -> list:
    if workers <= 1 or len(masks) < 2:
        return func(shared, masks)
    parts = _chunks(masks, workers)
    out: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for res in pool.map(func, [shared] * len(parts), parts):
            out.extend(res)
    return out


def _copies_for_mode(fam: ForbiddenFamily, n: int, mode: Mode) -> list[int]:
    if mode == EXHAUSTIVE:
        return copy_masks(fam, n)
    if isinstance(mode, Sampled):
        return sample_copy_masks(fam, n, mode.count, mode.seed)
    raise DomainError(f"unknown verification mode {mode!r}")


def _column_violations(
    edge_columns: Sequence[int], nbits: int, n: int, fam: ForbiddenFamily, mode: Mode, workers: int
) -> tuple[int, list[int]]:
    """(copies checked, sorted edge masks of copies whose column XOR vanishes)."""
    if mode == EXHAUSTIVE and isinstance(fam, (AllCliques, CliquesUpTo)):
        checked, subsets = _clique_violations(edge_columns, n, nbits, fam.limit(n))
        return checked, sorted(clique_mask(iter_bits(x), n) for x in subsets)
    masks = _copies_for_mode(fam, n, mode)
    bad = _run_chunks(_zero_syndrome_chunk, tuple(edge_columns), masks, workers)
    if isinstance(mode, Sampled):
        # a copy drawn twice is one violation
        bad = sorted(set(bad))
    return len(masks), sorted(bad)


def _check_family_n(fam: ForbiddenFamily, n: int) -> None:
    target = getattr(fam, "n", None)
    if target is not None and target != n:
        raise DomainError(f"family is on n={target}, code on n={n}")


def verify_code(
    code: LinearGraphCode | ExplicitGraphCode,
    fam: ForbiddenFamily,
    mode: Mode = EXHAUSTIVE,
    workers: int = 1,
) -> VerificationReport:
    """Whether no two members of ``code`` differ by a copy from ``fam``.

    A linear code fails exactly when some copy is itself a codeword; an
    explicit code is scanned copy by copy against a member lookup set.
    """
    n = code.n
    _check_family_n(fam, n)
    if isinstance(code, LinearGraphCode):
        checked, bad = _column_violations(code.edge_columns, code.parity.nrows, n, fam, mode, workers)
        empty = LabeledGraph.empty(n)
        violations = [
            Violation(LabeledGraph(n, s), (empty, LabeledGraph(n, s)), BitVec(code.parity.nrows, 0))
            for s in bad[:MAX_STORED_VIOLATIONS]
        ]
        return VerificationReport(fam.descriptor(), mode, checked, len(bad), violations)

    masks = _copies_for_mode(fam, n, mode)
    members = frozenset(g.mask for g in code.members)
    hits = _run_chunks(_explicit_chunk, members, masks, workers)
    hits = sorted(set(hits))
    violations = [
        Violation(LabeledGraph(n, s), (LabeledGraph(n, g), LabeledGraph(n, h)))
        for s, g, h in hits[:MAX_STORED_VIOLATIONS]
    ]
    return VerificationReport(fam.descriptor(), mode, len(masks), len(hits), violations)


def verify_odd_cover(
    coloring: Mapping[tuple[int, int], object] | Sequence[object],
    fam: ForbiddenFamily,
    n: int,
    mode: Mode = EXHAUSTIVE,
    workers: int = 1,
) -> VerificationReport:
    """Whether every copy from ``fam`` meets some colour class in an odd number of edges.

    ``coloring`` maps each edge (i, j), i < j, to a hashable colour, or is a
    sequence indexed by edge_index.
    """
    _check_family_n(fam, n)
    N = num_edges(n)
    if isinstance(coloring, Mapping):
        table = _edge_index_table(n)
        colors: list[object] = [None] * N
        for (i, j), c in coloring.items():
            i, j = min(i, j), max(i, j)
            if not 0 <= i < j < n:
                raise DomainError(f"coloured edge ({i}, {j}) not in K_{n}")
            colors[table[i][j]] = c
        missing = [k for k, c in enumerate(colors) if c is None]
        if missing:
            raise DomainError(f"coloring is partial: {len(missing)} edges uncoloured")
    else:
        colors = list(coloring)
        if len(colors) != N or any(c is None for c in colors):
            raise DomainError(f"coloring must assign a colour to all {N} edges")

    # colour class k <-> unit vector e_k; a copy is uncovered iff all classes meet it evenly
    ids: dict[object, int] = {}
    for c in colors:
        ids.setdefault(c, len(ids))
    edge_columns = [1 << ids[c] for c in colors]
    checked, bad = _column_violations(edge_columns, len(ids), n, fam, mode, workers)
    violations = [Violation(LabeledGraph(n, s)) for s in bad[:MAX_STORED_VIOLATIONS]]
    return VerificationReport(fam.descriptor(), mode, checked, len(bad), violations)


def coloring_from_code(code: LinearGraphCode) -> list[int]:
    """Colour each edge by its parity-check column."""
    return list(code.edge_columns)
