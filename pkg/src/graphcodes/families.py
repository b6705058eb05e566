"""Forbidden families of graphs and enumeration of their copies inside K_n."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Iterator

from .errors import DomainError
from .graph import LabeledGraph, clique_mask, edge_index, is_isomorphic, num_edges


class ForbiddenFamily:
    """A set of nonempty graphs; two code members may not differ by one of them."""

    def descriptor(self) -> str:
        raise NotImplementedError

    def min_support(self) -> int:
        raise NotImplementedError

    def contains(self, g: LabeledGraph) -> bool:
        raise NotImplementedError

    def _masks(self, n: int) -> Iterator[int]:
        raise NotImplementedError

    def _sample_mask(self, n: int, rnd: random.Random) -> int:
        raise NotImplementedError

    def count(self, n: int) -> int:
        return len(copy_masks(self, n))

    def __str__(self) -> str:
        return self.descriptor()


@dataclass(frozen=True)
class Star(ForbiddenFamily):
    """K_{1,t}: t edges sharing one centre."""

    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise DomainError("star needs t >= 1 edges")

    def descriptor(self) -> str:
        return f"star:{self.t}"

    def min_support(self) -> int:
        return self.t + 1

    def contains(self, g: LabeledGraph) -> bool:
        if g.num_edges != self.t:
            return False
        return self.t in g.degrees()

    def _masks(self, n: int) -> Iterator[int]:
        for c in range(n):
            others = [v for v in range(n) if v != c]
            for leaves in combinations(others, self.t):
                if self.t == 1 and leaves[0] < c:
                    continue  # K_{1,1} is an edge; count it once
                mask = 0
                for v in leaves:
                    mask |= 1 << edge_index(min(c, v), max(c, v), n)
                yield mask

    def count(self, n: int) -> int:
        if n < self.t + 1:
            return 0
        if self.t == 1:
            return num_edges(n)
        return n * comb(n - 1, self.t)

    def _sample_mask(self, n: int, rnd: random.Random) -> int:
        c = rnd.randrange(n)
        leaves = rnd.sample([v for v in range(n) if v != c], self.t)
        mask = 0
        for v in leaves:
            mask |= 1 << edge_index(min(c, v), max(c, v), n)
        return mask


def _double_factorial_odd(m: int) -> int:
    result = 1
    for k in range(m, 0, -2):
        result *= k
    return result


@dataclass(frozen=True)
class Matching(ForbiddenFamily):
    """M_t: t pairwise disjoint edges."""

    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise DomainError("matching needs t >= 1 edges")

    def descriptor(self) -> str:
        return f"matching:{self.t}"

    def min_support(self) -> int:
        return 2 * self.t

    def contains(self, g: LabeledGraph) -> bool:
        return g.num_edges == self.t and len(g.support()) == 2 * self.t

    def _masks(self, n: int) -> Iterator[int]:
        def pairings(vs: tuple[int, ...]) -> Iterator[int]:
            if not vs:
                yield 0
                return
            a = vs[0]
            for idx in range(1, len(vs)):
                b = vs[idx]
                bit = 1 << edge_index(a, b, n)
                for rest in pairings(vs[1:idx] + vs[idx + 1:]):
                    yield bit | rest

        for vs in combinations(range(n), 2 * self.t):
            yield from pairings(vs)

    def count(self, n: int) -> int:
        if n < 2 * self.t:
            return 0
        return comb(n, 2 * self.t) * _double_factorial_odd(2 * self.t - 1)

    def _sample_mask(self, n: int, rnd: random.Random) -> int:
        vs = rnd.sample(range(n), 2 * self.t)
        mask = 0
        for a, b in zip(vs[::2], vs[1::2]):
            mask |= 1 << edge_index(min(a, b), max(a, b), n)
        return mask


class _CliqueFamily(ForbiddenFamily):
    def limit(self, n: int) -> int:
        raise NotImplementedError

    def min_support(self) -> int:
        return 2

    def contains(self, g: LabeledGraph) -> bool:
        if g.mask == 0:
            return False
        s = len(g.support())
        return g.num_edges == s * (s - 1) // 2 and s <= self.limit(g.n)

    def _masks(self, n: int) -> Iterator[int]:
        for s in range(2, self.limit(n) + 1):
            for vs in combinations(range(n), s):
                yield clique_mask(vs, n)

    def count(self, n: int) -> int:
        return sum(comb(n, s) for s in range(2, self.limit(n) + 1))

    def _sample_mask(self, n: int, rnd: random.Random) -> int:
        x = rnd.randrange(self.count(n))
        for s in range(2, self.limit(n) + 1):
            c = comb(n, s)
            if x < c:
                return clique_mask(rnd.sample(range(n), s), n)
            x -= c
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class AllCliques(_CliqueFamily):
    """Every complete graph on at least two vertices."""

    def descriptor(self) -> str:
        return "cliques"

    def limit(self, n: int) -> int:
        return n


@dataclass(frozen=True)
class CliquesUpTo(_CliqueFamily):
    """Complete graphs on 2..r vertices."""

    r: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise DomainError("cliques<=r needs r >= 2")

    def descriptor(self) -> str:
        return f"cliques<={self.r}"

    def limit(self, n: int) -> int:
        return min(self.r, n)


@dataclass(frozen=True)
class IsoCopiesOf(ForbiddenFamily):
    """All labeled copies of a fixed pattern graph (isolated vertices ignored)."""

    pattern: LabeledGraph

    def __post_init__(self) -> None:
        if self.pattern.mask == 0:
            raise DomainError("pattern graph must have at least one edge")

    def descriptor(self) -> str:
        return f"iso:{self.pattern.n}:{self.pattern.edges()}".replace(" ", "")

    def min_support(self) -> int:
        return len(self.pattern.support())

    def contains(self, g: LabeledGraph) -> bool:
        return is_isomorphic(g, self.pattern)

    def _masks(self, n: int) -> Iterator[int]:
        support = self.pattern.support()
        k = len(support)
        if k > n:
            return
        pos = {v: a for a, v in enumerate(support)}
        edges = [(pos[i], pos[j]) for i, j in self.pattern.edges()]
        seen: set[int] = set()
        for image in permutations(range(n), k):
            mask = 0
            for a, b in edges:
                u, v = image[a], image[b]
                mask |= 1 << edge_index(min(u, v), max(u, v), n)
            if mask not in seen:
                seen.add(mask)
                yield mask

    def _sample_mask(self, n: int, rnd: random.Random) -> int:
        support = self.pattern.support()
        image = dict(zip(support, rnd.sample(range(n), len(support))))
        return self.pattern.relabel(image, n).mask


@dataclass(frozen=True)
class Explicit(ForbiddenFamily):
    """A literal list of forbidden graphs, all on the same vertex count."""

    graphs: tuple[LabeledGraph, ...]

    def __post_init__(self) -> None:
        if not self.graphs:
            raise DomainError("explicit family must list at least one graph")
        if len({g.n for g in self.graphs}) != 1:
            raise DomainError("explicit family graphs must share one vertex count")
        if any(g.mask == 0 for g in self.graphs):
            raise DomainError("the empty graph cannot be forbidden")

    @property
    def n(self) -> int:
        return self.graphs[0].n

    def descriptor(self) -> str:
        return f"explicit:{len(set(self.graphs))}@n={self.n}"

    def min_support(self) -> int:
        return self.n

    def _check_n(self, n: int) -> None:
        if n != self.n:
            raise DomainError(f"explicit family is on n={self.n}, not n={n}")

    def contains(self, g: LabeledGraph) -> bool:
        self._check_n(g.n)
        return g in set(self.graphs)

    def _masks(self, n: int) -> Iterator[int]:
        self._check_n(n)
        return iter({g.mask for g in self.graphs})

    def _sample_mask(self, n: int, rnd: random.Random) -> int:
        self._check_n(n)
        return rnd.choice(copy_masks(self, n))


def classify_membership(g: LabeledGraph, fam: ForbiddenFamily) -> bool:
    """True iff ``g`` (ignoring isolated vertices) is a member of ``fam``."""
    return fam.contains(g)


def copy_masks(fam: ForbiddenFamily, n: int) -> list[int]:
    """Edge masks of every copy of ``fam`` in K_n, ascending and duplicate-free."""
    return sorted(set(fam._masks(n)))


def enumerate_copies(fam: ForbiddenFamily, n: int) -> Iterator[LabeledGraph]:
    """Each labeled copy of a member of ``fam`` in K_n, once, by ascending edge mask."""
    for mask in copy_masks(fam, n):
        yield LabeledGraph(n, mask)


def sample_copy_masks(fam: ForbiddenFamily, n: int, count: int, seed: int = 0) -> list[int]:
    """``count`` copies drawn uniformly (with replacement) from the copy set."""
    rnd = random.Random(seed)
    if isinstance(fam, Explicit):
        pool = copy_masks(fam, n)
        return [rnd.choice(pool) for _ in range(count)]
    if n < fam.min_support():
        return []
    return [fam._sample_mask(n, rnd) for _ in range(count)]
