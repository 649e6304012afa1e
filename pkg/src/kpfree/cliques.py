"""Exact clique enumeration and counting.

Counting and K_t-freeness go through the bitset kernels (ordered DFS over
neighbourhood masks); maximal cliques come from Bron-Kerbosch with pivoting.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from kpfree import kernels
from kpfree.errors import InputError
from kpfree.graph import Graph, mask_to_list

WITNESS_CAP = 1024


@dataclass(frozen=True, order=True)
class Clique:
    vertices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        mask = 0
        for v in self.vertices:
            mask |= 1 << v
        return mask

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class CliqueReport:
    order_queried: int
    count: int
    witnesses: list[Clique] = field(default_factory=list)


def _adj(g: Graph) -> list[int]:
    return list(g.masks)


def _as_mask(g: Graph, s: Iterable[int] | int | None) -> int:
    if s is None:
        return g.full_mask
    if isinstance(s, int):
        return s
    return g.mask_of(s)


def iter_maximal_cliques(g: Graph, within: int | None = None) -> Iterator[int]:
    """Bron-Kerbosch with Tomita pivoting; yields maximal cliques as masks."""
    masks = g.masks
    p0 = g.full_mask if within is None else within
    pc = kernels.popcount

    def bk(r: int, p: int, x: int) -> Iterator[int]:
        if not p and not x:
            yield r
            return
        px = p | x
        pivot_nbrs = 0
        best = -1
        m = px
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            c = pc(p & masks[u])
            if c > best:
                best, pivot_nbrs = c, masks[u]
        cand = p & ~pivot_nbrs
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            yield from bk(r | low, p & masks[v], x & masks[v])
            p ^= low
            x |= low

    if g.n == 0 or not p0:
        return
    yield from bk(0, p0, 0)


def max_clique(g: Graph, within: int | None = None) -> Clique:
    """A maximum clique; ties go to the lexicographically smallest vertex set."""
    if g.n == 0:
        raise InputError("max_clique needs at least one vertex")
    best: tuple[int, ...] = ()
    for mask in iter_maximal_cliques(g, within):
        cand = tuple(mask_to_list(mask))
        if len(cand) > len(best) or (len(cand) == len(best) and cand < best):
            best = cand
    return Clique(best)


def clique_number(g: Graph, within: int | None = None) -> int:
    if g.n == 0 or within == 0:
        return 0
    best = 0
    for mask in iter_maximal_cliques(g, within):
        c = kernels.popcount(mask)
        if c > best:
            best = c
    return best


def maximum_cliques(g: Graph, within: int | None = None) -> list[Clique]:
    """All cliques of order omega (inside ``within``), sorted."""
    w = clique_number(g, within)
    if w == 0:
        return []
    mask = g.full_mask if within is None else within
    return [Clique(tuple(mask_to_list(c))) for c in kernels.list_cliques(_adj(g), mask, w)]


def count_cliques(
    g: Graph, t: int, within: Iterable[int] | int | None = None, cap: int = WITNESS_CAP
) -> CliqueReport:
    """Exact number of t-cliques, with up to ``cap`` witnesses."""
    if t < 1:
        raise InputError(f"clique order must be >= 1, got {t}")
    mask = _as_mask(g, within)
    count = kernels.count_cliques(_adj(g), mask, t)
    witnesses = []
    if count and cap:
        witnesses = [
            Clique(tuple(mask_to_list(c)))
            for c in kernels.list_cliques(_adj(g), mask, t, cap)
        ]
    return CliqueReport(order_queried=t, count=count, witnesses=witnesses)


def num_cliques(g: Graph, t: int, within: Iterable[int] | int | None = None) -> int:
    return kernels.count_cliques(_adj(g), _as_mask(g, within), t)


def has_clique(g: Graph, t: int, within: Iterable[int] | int | None = None) -> bool:
    return kernels.has_clique(_adj(g), _as_mask(g, within), t)


def is_kp_free(g: Graph, s: Iterable[int] | int | None, p: int) -> bool:
    """True iff ``g[s]`` contains no p-clique."""
    if p < 2:
        raise InputError(f"p must be >= 2, got {p}")
    return not kernels.has_clique(_adj(g), _as_mask(g, s), p)


def cliques_through_vertex(
    g: Graph, v: int, t: int, within: Iterable[int] | int | None = None
) -> list[Clique]:
    """All t-cliques of ``g[within ∪ {v}]`` containing ``v``."""
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for n={g.n}")
    if t < 1:
        raise InputError(f"clique order must be >= 1, got {t}")
    cand = _as_mask(g, within) & g.masks[v]
    out = []
    for c in kernels.list_cliques(_adj(g), cand, t - 1):
        out.append(Clique(tuple(sorted(mask_to_list(c) + [v]))))
    return out


def count_through_vertex(g: Graph, v: int, t: int, within: int | None = None) -> int:
    cand = (g.full_mask if within is None else within) & g.masks[v]
    return kernels.count_cliques(_adj(g), cand, t - 1)
