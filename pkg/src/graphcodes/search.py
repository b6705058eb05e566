"""Exact desk-scale searches.

* max_code_exact: independence number of the Cayley graph C(n, H) on all
  2^C(n,2) graphs, adjacency = symmetric difference in H.
* min_codim_exact: smallest co-dimension of a linear code avoiding H.
* even_clique_witness: nonempty even vertex set whose clique meets every
  given graph in an even number of edges.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constructions import ExplicitGraphCode, LinearGraphCode
from .errors import DomainError, ResourceError
from .families import ForbiddenFamily, copy_masks
from .gf2 import SUBSPACE_AMBIENT_CAP, BitMatrix, enumerate_subspaces
from .graph import LabeledGraph, clique_mask, iter_bits, num_edges
from .verification import clique_syndrome_blocks

MAX_CAYLEY_EDGES = 15  # n <= 6
DEFAULT_TIME_LIMIT = 60.0
MAX_WITNESS_VERTICES = 30

PROVEN = "proven"
TIME_LIMITED = "time_limited_lower_bound"


@dataclass
class ExactResult:
    value: int
    witness: ExplicitGraphCode | LinearGraphCode
    status: str
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class CliqueWitness:
    subset: tuple[int, ...]
    intersections: tuple[int, ...]  # |E(K_A) & E(G_s)| per input graph

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(c & 1 for c in self.intersections)


def cayley_adjacency(n: int, fam: ForbiddenFamily) -> list[int]:
    """Neighbourhood bitmasks of C(n, fam); vertex v is the graph with edge mask v."""
    N = num_edges(n)
    if N > MAX_CAYLEY_EDGES:
        raise ResourceError(f"Cayley graph on 2^{N} vertices exceeds cap 2^{MAX_CAYLEY_EDGES}")
    conn = copy_masks(fam, n)
    adj = []
    for v in range(1 << N):
        nb = 0
        for c in conn:
            nb |= 1 << (v ^ c)
        adj.append(nb)
    return adj


def _clique_cover_size(p: int, adj: Sequence[int]) -> int:
    """Greedy clique cover of the vertex set ``p``; bounds its independence number."""
    count = 0
    while p:
        low = p & -p
        p ^= low
        cand = p & adj[low.bit_length() - 1]
        while cand:
            u = cand & -cand
            p ^= u
            cand &= adj[u.bit_length() - 1]
        count += 1
    return count


def max_independent_set(
    adj: Sequence[int],
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    anchor: int | None = None,
) -> tuple[int, int, bool]:
    """Maximum independent set by branch and bound.

    Returns ``(set bitmask, nodes explored, proven)``. Branches on the lowest
    undecided vertex, taking it first, and only accepts strict improvements,
    so the returned set is the lexicographically first maximum one. With
    ``anchor`` set, only sets containing that vertex are searched.
    """
    nv = len(adj)
    all_v = (1 << nv) - 1
    if anchor is None:
        chosen0, cand0, size0 = 0, all_v, 0
    else:
        chosen0, cand0, size0 = 1 << anchor, all_v & ~adj[anchor] & ~(1 << anchor), 1

    # greedy first leaf of the search order
    best, best_size = chosen0, size0
    p = cand0
    while p:
        low = p & -p
        best |= low
        best_size += 1
        p &= ~adj[low.bit_length() - 1] & ~low

    deadline = None if time_limit is None else time.monotonic() + time_limit
    nodes = 0
    stack = [(cand0, chosen0, size0)]
    while stack:
        p, chosen, size = stack.pop()
        nodes += 1
        if deadline is not None and not nodes & 1023 and time.monotonic() > deadline:
            return best, nodes, False
        if not p:
            if size > best_size:
                best, best_size = chosen, size
            continue
        if size + p.bit_count() <= best_size:
            continue
        if size + _clique_cover_size(p, adj) <= best_size:
            continue
        low = p & -p
        v = low.bit_length() - 1
        stack.append((p ^ low, chosen, size))
        stack.append((p & ~adj[v] & ~low, chosen | low, size + 1))
    return best, nodes, True


def max_code_exact(
    n: int, fam: ForbiddenFamily, time_limit: float | None = DEFAULT_TIME_LIMIT
) -> ExactResult:
    """D_H(n): the largest H-code on n vertices.

    The Cayley graph is vertex transitive, so the search is anchored at the
    empty graph. Past ``time_limit`` the best code found so far is returned
    with status ``time_limited_lower_bound``.
    """
    start = time.monotonic()
    adj = cayley_adjacency(n, fam)
    best, nodes, proven = max_independent_set(adj, time_limit, anchor=0)
    members = tuple(LabeledGraph(n, v) for v in iter_bits(best))
    return ExactResult(
        value=len(members),
        witness=ExplicitGraphCode(n, members),
        status=PROVEN if proven else TIME_LIMITED,
        nodes=nodes,
        elapsed=time.monotonic() - start,
    )


def min_codim_exact(n: int, fam: ForbiddenFamily) -> ExactResult:
    """Least co-dimension r of a linear code on n vertices containing no copy from ``fam``.

    A code avoids copy c iff some parity-check row has odd inner product with
    c, so r is the least dimension of a row space hitting every copy. Row
    spaces are tried by increasing dimension in RREF order; the first hit is
    returned as the witness parity matrix.
    """
    start = time.monotonic()
    N = num_edges(n)
    if N > SUBSPACE_AMBIENT_CAP:
        raise ResourceError(f"C({n},2) = {N} exceeds the subspace enumeration cap {SUBSPACE_AMBIENT_CAP}")
    copies = copy_masks(fam, n)
    full = (1 << len(copies)) - 1
    # hit[w]: copies with odd inner product against row w
    words = np.arange(1 << N, dtype=np.int64)
    hit = [0] * (1 << N)
    for k, c in enumerate(copies):
        odd = np.flatnonzero(np.bitwise_count(words & c) & 1)
        bit = 1 << k
        for w in odd.tolist():
            hit[w] |= bit
    examined = 0
    for r in range(N + 1):
        for basis in enumerate_subspaces(N, r):
            examined += 1
            covered = 0
            for row in basis.rows:
                covered |= hit[row]
            if covered == full:
                code = LinearGraphCode(n, basis, {"construction": "min-codim-exact", "n": n,
                                                  "family": fam.descriptor()})
                return ExactResult(r, code, PROVEN, examined, time.monotonic() - start)
    raise AssertionError("the zero code avoids every nonempty copy")


def even_clique_witness(graphs: Sequence[LabeledGraph], n: int) -> CliqueWitness | None:
    """First nonempty even vertex set A whose clique meets every graph evenly.

    Sets are scanned by increasing indicator integer. Existence is guaranteed
    when there are at most n/2 - 1 graphs: the quadratic system plus the
    linear equation sum x_i = 0 has total degree n - 1 < n variables and the
    trivial solution, hence another one. Returns None when no set exists.
    """
    if n % 2:
        raise DomainError(f"n must be even, got {n}")
    if n > MAX_WITNESS_VERTICES:
        raise ResourceError(f"witness scan is capped at n={MAX_WITNESS_VERTICES}")
    if any(g.n != n for g in graphs):
        raise DomainError(f"all graphs must be on {n} vertices")
    N = num_edges(n)
    edge_columns = [0] * N
    for s, g in enumerate(graphs):
        for e in iter_bits(g.mask):
            edge_columns[e] |= 1 << s
    for base, syn, size in clique_syndrome_blocks(edge_columns, n, len(graphs), low_bits=min(n, 16)):
        ok = (size % 2 == 0) & (size > 0) & ~syn.any(axis=1)
        hits = np.flatnonzero(ok)
        if len(hits):
            x = base | int(hits[0])
            subset = tuple(iter_bits(x))
            km = clique_mask(subset, n)
            return CliqueWitness(subset, tuple((g.mask & km).bit_count() for g in graphs))
    return None
