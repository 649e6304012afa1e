"""Immutable simple undirected graphs on vertices ``0..n-1``."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from kpfree.errors import InputError


class Graph:
    """Simple undirected graph with sorted adjacency lists and bitmasks.

    Built once from an edge iterable; there are no mutators. Two graphs are
    equal iff they have the same ``n`` and the same edge set.
    """

    __slots__ = ("n", "m", "adj", "masks", "_degrees")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        masks = []
        for s in nbrs:
            mask = 0
            for u in s:
                mask |= 1 << u
            masks.append(mask)
        self.masks: tuple[int, ...] = tuple(masks)
        self._degrees = tuple(len(a) for a in self.adj)
        self.m = sum(self._degrees) // 2

    @classmethod
    def from_masks(cls, masks: list[int]) -> "Graph":
        n = len(masks)
        edges = []
        for u, mask in enumerate(masks):
            m = mask >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    edges.append((u, v))
                m >>= 1
                v += 1
        return cls(n, edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __len__(self) -> int:
        return self.n

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self._degrees, default=0)

    def mask_of(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            if not 0 <= v < self.n:
                raise InputError(f"vertex {v} out of range for n={self.n}")
            mask |= 1 << v
        return mask

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph.from_masks([(full ^ m) & ~(1 << v) for v, m in enumerate(self.masks)])

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                low = frontier & -frontier
                v = low.bit_length() - 1
                frontier ^= low
                new = self.masks[v] & ~comp
                comp |= new
                frontier |= new
            seen |= comp
            comps.append(mask_to_list(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


def mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    min_degree: int
    clique_number: Optional[int] = None
    independence_number: Optional[int] = None
    chromatic_number: Optional[int] = None


def induced_subgraph(g: Graph, w: Iterable[int]) -> tuple[Graph, list[int]]:
    """``g[w]`` relabelled to ``0..|w|-1`` in increasing order of original id.

    Returns the subgraph and the index map (new id -> original id).
    """
    index = sorted(set(w))
    for v in index:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(index)}
    edges = [(pos[u], pos[v]) for u in index for v in g.adj[u] if u < v and v in pos]
    return Graph(len(index), edges), index


def degree_stats(g: Graph) -> GraphStats:
    return GraphStats(n=g.n, m=g.m, max_degree=g.max_degree, min_degree=g.min_degree)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    mask = g.mask_of(s)
    m = mask
    while m:
        low = m & -m
        if g.masks[low.bit_length() - 1] & mask:
            return False
        m ^= low
    return True
