"""Labeled graphs on {0..n-1} stored as edge-indexed bitmasks.

Edge {i, j} with i < j lives at bit ``edge_index(i, j, n)``; the order is
row-major lexicographic in (i, j) and file formats depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


def edge_index(i: int, j: int, n: int) -> int:
    """Position of edge {i, j} (i < j) in the lexicographic edge order of K_n."""
    if not 0 <= i < j < n:
        raise DomainError(f"edge ({i}, {j}) invalid for n={n}: need 0 <= i < j < n")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def edge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Inverse of edge_index: ``edge_pairs(n)[k] == (i, j)``."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def _edge_index_table(n: int) -> tuple[tuple[int, ...], ...]:
    table = [[-1] * n for _ in range(n)]
    for k, (i, j) in enumerate(edge_pairs(n)):
        table[i][j] = table[j][i] = k
    return tuple(tuple(row) for row in table)


def clique_mask(vertices: Iterable[int], n: int) -> int:
    """Edge mask of the complete graph on ``vertices``."""
    vs = sorted(set(vertices))
    table = _edge_index_table(n)
    mask = 0
    for a, u in enumerate(vs):
        row = table[u]
        for v in vs[a + 1:]:
            mask |= 1 << row[v]
    return mask


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True, order=True)
class LabeledGraph:
    """Graph on vertex set {0..n-1}; bit k of ``mask`` is edge ``edge_pairs(n)[k]``."""

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"vertex count must be >= 1, got {self.n}")
        if self.mask < 0 or self.mask >> num_edges(self.n):
            raise DomainError(f"edge mask has bits beyond C({self.n},2)")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "LabeledGraph":
        mask = 0
        for e in edges:
            i, j = sorted(e)
            mask |= 1 << edge_index(i, j, n)
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "LabeledGraph":
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> "LabeledGraph":
        return cls(n, (1 << num_edges(n)) - 1)

    @classmethod
    def clique(cls, n: int, vertices: Iterable[int]) -> "LabeledGraph":
        return cls(n, clique_mask(vertices, n))

    @property
    def num_edges(self) -> int:
        return self.mask.bit_count()

    def edges(self) -> list[tuple[int, int]]:
        pairs = edge_pairs(self.n)
        return [pairs[k] for k in iter_bits(self.mask)]

    def has_edge(self, i: int, j: int) -> bool:
        i, j = min(i, j), max(i, j)
        return bool(self.mask >> edge_index(i, j, self.n) & 1)

    def adjacency(self) -> list[int]:
        """Neighbourhood bitmask per vertex."""
        adj = [0] * self.n
        for i, j in self.edges():
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency()]

    def support(self) -> list[int]:
        """Non-isolated vertices, ascending."""
        seen = 0
        for i, j in self.edges():
            seen |= (1 << i) | (1 << j)
        return list(iter_bits(seen))

    def relabel(self, mapping: Sequence[int] | dict[int, int], n: int | None = None) -> "LabeledGraph":
        """Image of the graph under vertex map ``v -> mapping[v]`` inside K_n."""
        target = self.n if n is None else n
        return LabeledGraph.from_edges(target, ((mapping[i], mapping[j]) for i, j in self.edges()))

    def __xor__(self, other: "LabeledGraph") -> "LabeledGraph":
        return symmetric_difference(self, other)

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n}, edges={self.edges()})"


def symmetric_difference(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    if g1.n != g2.n:
        raise DomainError(f"vertex counts differ: {g1.n} vs {g2.n}")
    return LabeledGraph(g1.n, g1.mask ^ g2.mask)


def _restricted_adjacency(g: LabeledGraph) -> list[int]:
    """Adjacency of the non-isolated part, vertices renumbered 0..k-1."""
    support = g.support()
    pos = {v: a for a, v in enumerate(support)}
    adj = [0] * len(support)
    for i, j in g.edges():
        adj[pos[i]] |= 1 << pos[j]
        adj[pos[j]] |= 1 << pos[i]
    return adj


def is_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    """Isomorphism of the non-isolated restrictions of ``g`` and ``h``.

    Backtracking over vertex maps, pruned by degree and by adjacency to the
    already-mapped vertices. Fine for the small patterns this package forbids.
    """
    if g.num_edges != h.num_edges:
        return False
    ag, ah = _restricted_adjacency(g), _restricted_adjacency(h)
    if len(ag) != len(ah):
        return False
    dg = [a.bit_count() for a in ag]
    dh = [a.bit_count() for a in ah]
    if sorted(dg) != sorted(dh):
        return False

    k = len(ag)
    # high degree first, then stay connected to what is already placed
    order: list[int] = []
    placed = 0
    remaining = set(range(k))
    while remaining:
        v = max(remaining, key=lambda u: ((ag[u] & placed).bit_count(), dg[u], -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    image = [-1] * k
    used = 0

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == k:
            return True
        v = order[depth]
        for w in range(k):
            if used >> w & 1 or dh[w] != dg[v]:
                continue
            ok = True
            for u in order[:depth]:
                if (ag[v] >> u & 1) != (ah[w] >> image[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if extend(depth + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    return extend(0)
