"""Explicit graph-code constructions and clique certificates for upper bounds.

Every linear construction follows the same recipe: colour the edges of K_n,
give colour c the c-th column of a column set with no small zero sums, and
take the parity-check rows these columns spell out. A graph's syndrome is
then the XOR of its edges' columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .bch import build_columns
from .errors import DomainError, IntegrityError
from .gf2 import BitMatrix, rank
from .graph import LabeledGraph, edge_index, edge_pairs, is_isomorphic, num_edges


@dataclass(frozen=True)
class LinearGraphCode:
    """The kernel of ``parity`` (columns indexed by the edges of K_n)."""

    n: int
    parity: BitMatrix
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.parity.cols != num_edges(self.n):
            raise DomainError(f"parity has {self.parity.cols} columns, K_{self.n} has {num_edges(self.n)} edges")

    @property
    def num_edges(self) -> int:
        return self.parity.cols

    @cached_property
    def codim(self) -> int:
        return rank(self.parity)

    @property
    def dimension(self) -> int:
        return self.num_edges - self.codim

    @property
    def size(self) -> int:
        return 1 << self.dimension

    @property
    def rate(self) -> Fraction:
        """Fraction of all graphs on n vertices that are codewords."""
        return Fraction(1, 1 << self.codim)

    @cached_property
    def edge_columns(self) -> tuple[int, ...]:
        """Syndrome contribution of each edge (bit i = parity row i)."""
        return tuple(self.parity.columns())

    def syndrome_mask(self, mask: int) -> int:
        return self.parity.mul_vec(mask)

    def contains(self, g: LabeledGraph) -> bool:
        return g.n == self.n and self.syndrome_mask(g.mask) == 0


@dataclass(frozen=True)
class ExplicitGraphCode:
    n: int
    members: tuple[LabeledGraph, ...]

    def __post_init__(self) -> None:
        if any(g.n != self.n for g in self.members):
            raise DomainError("all members must share the code's vertex count")
        if len(set(self.members)) != len(self.members):
            raise DomainError("code members must be distinct")

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def rate(self) -> Fraction:
        return Fraction(len(self.members), 1 << num_edges(self.n))


@dataclass(frozen=True)
class CliqueCertificate:
    """m copies of H' pairwise differing by a copy of H: a clique of size m in C(n, H)."""

    hprime: LabeledGraph
    indep: tuple[int, ...]
    n: int
    copies: tuple[LabeledGraph, ...]
    doubled: LabeledGraph  # H itself, on 2a+b vertices

    @property
    def m(self) -> int:
        return len(self.copies)

    @property
    def a(self) -> int:
        return self.hprime.n - len(self.indep)

    @property
    def b(self) -> int:
        return len(self.indep)

    @property
    def bound(self) -> Fraction:
        """Upper bound 1/m on the fraction of graphs in an H-code."""
        return Fraction(1, self.m)

    @property
    def vertex_bound(self) -> Fraction:
        return Fraction(self.doubled.n, self.n)


def _min_degree_field(count: int, t: int) -> int:
    """Least s >= 2 with 2^s - 1 >= count and 2t - 1 < 2^s - 1."""
    s = 2
    while (1 << s) - 1 < max(count, 2 * t):
        s += 1
    return s


def code_from_coloring(
    n: int,
    color: Callable[[int, int], int],
    columns: Sequence[int],
    width: int,
    provenance: dict,
) -> LinearGraphCode:
    """Parity rows whose column at edge {i,j} is ``columns[color(i, j)]``."""
    rows = [0] * width
    for e, (i, j) in enumerate(edge_pairs(n)):
        col = columns[color(i, j)]
        for r in range(width):
            if col >> r & 1:
                rows[r] |= 1 << e
    return LinearGraphCode(n, BitMatrix(num_edges(n), tuple(rows)), provenance)


def star_code(n: int, k: int) -> LinearGraphCode:
    """Linear code with no two members differing by a copy of K_{1,2k}.

    Round-robin colouring (i+j) mod m, m the least odd number >= n, is proper,
    so a star's 2k edges hit 2k distinct BCH columns of strength k.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if n < 2 * k + 1:
        raise DomainError(f"star_code needs n >= 2k+1, got n={n}, k={k}")
    m = n if n % 2 else n + 1
    s = _min_degree_field(m, k)
    cs = build_columns(s, k)
    return code_from_coloring(
        n, lambda i, j: (i + j) % m, cs.columns, cs.width,
        {"construction": "star", "n": n, "k": k, "s": s, "colors": m, "coloring": "(i+j) mod m"},
    )


def matching_code(n: int, k: int) -> LinearGraphCode:
    """Linear code with no two members differing by a copy of M_{2k}.

    Colour {i,j} by min(i,j); each colour class is a star and meets a
    matching in at most one edge.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if n < 4 * k:
        raise DomainError(f"matching_code needs n >= 4k, got n={n}, k={k}")
    s = _min_degree_field(n - 1, k)
    cs = build_columns(s, k)
    return code_from_coloring(
        n, lambda i, j: min(i, j), cs.columns, cs.width,
        {"construction": "matching", "n": n, "k": k, "s": s, "colors": n - 1, "coloring": "min(i,j)"},
    )


def small_clique_code(n: int, r: int) -> LinearGraphCode:
    """Linear code avoiding every clique on 2..4r+3 vertices.

    With colour min(i,j), a clique on u_1 < ... < u_m gives colour u_l
    multiplicity m - l, so between 1 and floor(m/2) <= 2r+1 colours are odd;
    the parity-augmented columns have no zero sum of that many.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    if n < 2:
        raise DomainError("small_clique_code needs n >= 2")
    s = _min_degree_field(n - 1, r)
    cs = build_columns(s, r, parity_augmented=True)
    return code_from_coloring(
        n, lambda i, j: min(i, j), cs.columns, cs.width,
        {"construction": "small-clique", "n": n, "r": r, "s": s, "max_clique": 4 * r + 3,
         "coloring": "min(i,j)", "augmented": True},
    )


def block_triangle_graphs(n: int) -> list[LabeledGraph]:
    """For odd n: G_i = all triangles on base {2i, 2i+1} with apex j > 2i+1."""
    if n < 3 or n % 2 == 0:
        raise DomainError(f"block-triangle graphs need odd n >= 3, got {n}")
    graphs = []
    for i in range((n - 1) // 2):
        a, b = 2 * i, 2 * i + 1
        edges = [(a, b)]
        for j in range(b + 1, n):
            edges += [(a, j), (b, j)]
        graphs.append(LabeledGraph.from_edges(n, edges))
    return graphs


def clique_linear_code(n: int) -> LinearGraphCode:
    """Co-dimension floor(n/2) linear code containing no clique.

    Even n reuses the n+1 construction restricted to the first n vertices.
    """
    if n < 2:
        raise DomainError("clique_linear_code needs n >= 2")
    big = n if n % 2 else n + 1
    graphs = block_triangle_graphs(big)
    rows = []
    for g in graphs:
        row = 0
        for i, j in g.edges():
            if j < n:
                row |= 1 << edge_index(i, j, n)
        rows.append(row)
    return LinearGraphCode(
        n, BitMatrix(num_edges(n), tuple(rows)),
        {"construction": "clique-linear", "n": n, "built_on": big, "blocks": len(rows)},
    )


def even_parity_code(n: int) -> LinearGraphCode:
    """All graphs with an even number of edges."""
    if n < 1:
        raise DomainError("n must be >= 1")
    N = num_edges(n)
    return LinearGraphCode(n, BitMatrix(N, ((1 << N) - 1,)), {"construction": "even-parity", "n": n})


def _place(hprime: LabeledGraph, indep: Sequence[int], n: int, offset: int) -> LabeledGraph:
    private = [v for v in range(hprime.n) if v not in set(indep)]
    b = len(indep)
    mapping = {v: offset + k for k, v in enumerate(private)}
    mapping.update({v: n - b + k for k, v in enumerate(sorted(indep))})
    return hprime.relabel(mapping, n)


def doubled_clique_certificate(hprime: LabeledGraph, indep: Iterable[int], n: int) -> CliqueCertificate:
    """Copies of H' sharing ``indep`` on the top b vertices, private parts on disjoint blocks.

    Any two copies differ by H = two copies of H' glued along ``indep``, so
    the copies form a clique of size m = floor((n-b)/a) in C(n, H). The
    result is self-checked by testing every pairwise difference against H.
    """
    indep = tuple(sorted(set(indep)))
    v = hprime.n
    if any(not 0 <= x < v for x in indep):
        raise DomainError("independent set must be vertices of H'")
    adj = hprime.adjacency()
    for x in indep:
        if any(adj[x] >> y & 1 for y in indep):
            raise DomainError(f"vertices {indep} are not independent in H'")
    if hprime.mask == 0:
        raise DomainError("H' must have at least one edge")
    b = len(indep)
    a = v - b
    if n < v:
        raise DomainError(f"need n >= |V(H')| = {v}, got {n}")
    m = (n - b) // a
    copies = tuple(_place(hprime, indep, n, i * a) for i in range(m))
    h_n = 2 * a + b
    doubled = _place(hprime, indep, h_n, 0) ^ _place(hprime, indep, h_n, a)
    for x in range(m):
        for y in range(x + 1, m):
            if not is_isomorphic(copies[x] ^ copies[y], doubled):
                raise IntegrityError(f"copies {x} and {y} do not differ by a copy of H")
    return CliqueCertificate(hprime, indep, n, copies, doubled)
