"""Independent sets meeting every maximum clique.

Existence is guaranteed when ``omega >= 2 (Delta + 1) / 3`` for connected
graphs other than ``C_{2t+1} ⊠ K_{omega/2}``; the set itself is found by exact
backtracking here rather than by a constructive argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from kpfree.cliques import clique_number, maximum_cliques
from kpfree.errors import InputError
from kpfree.generators import complete, cycle, strong_product
from kpfree.graph import Graph, induced_subgraph, mask_to_list
from kpfree.kernels import popcount


@dataclass(frozen=True)
class Exceptional:
    """Witness that a graph is ``C_L ⊠ K_m`` with ``L`` odd and ``L >= 5``.

    ``blobs[i]`` lists the ``m`` vertices mapped to cycle position ``i``.
    """

    cycle_length: int
    clique_size: int
    blobs: tuple[tuple[int, ...], ...]

    def odd_cycles(self) -> list[list[int]]:
        """Split into ``m`` vertex-disjoint induced copies of ``C_L``."""
        return [sorted(b[j] for b in self.blobs) for j in range(self.clique_size)]


def hitting_hypothesis(g: Graph, omega: int | None = None) -> bool:
    if omega is None:
        omega = clique_number(g)
    return 3 * omega >= 2 * (g.max_degree + 1)


def detect_odd_cycle_product(g: Graph) -> Exceptional | None:
    """Recognise ``C_L ⊠ K_m`` (L odd, L >= 5) exactly.

    In such a graph the classes of vertices with equal closed neighbourhoods
    are the ``m``-blobs and their quotient is ``C_L``; conversely that
    structure forces the product. The mapping found is re-checked edge by edge
    against the generated product, so a returned witness is an isomorphism.
    """
    n = g.n
    if n < 5:
        return None
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(g.masks[v] | 1 << v, []).append(v)
    blobs = list(classes.values())
    m = len(blobs[0])
    length = len(blobs)
    if any(len(b) != m for b in blobs) or length < 5 or length % 2 == 0:
        return None
    blob_of = {}
    for i, b in enumerate(blobs):
        for v in b:
            blob_of[v] = i
    quotient = [set() for _ in blobs]
    for u, v in g.edges():
        if blob_of[u] != blob_of[v]:
            quotient[blob_of[u]].add(blob_of[v])
            quotient[blob_of[v]].add(blob_of[u])
    if any(len(nb) != 2 for nb in quotient):
        return None
    order = [0]
    prev, cur = -1, 0
    while True:
        nxt = min(x for x in quotient[cur] if x != prev) if prev >= 0 else min(quotient[cur])
        if nxt == 0:
            break
        order.append(nxt)
        prev, cur = cur, nxt
        if len(order) > length:
            return None
    if len(order) != length:
        return None
    ordered = tuple(tuple(blobs[i]) for i in order)
    # explicit isomorphism check: position (i, j) -> ordered[i][j]
    target = strong_product(cycle(length), complete(m))
    label = [0] * n
    for i, blob in enumerate(ordered):
        for j, v in enumerate(blob):
            label[i * m + j] = v
    if target.m != g.m or any(not g.has_edge(label[a], label[b]) for a, b in target.edges()):
        return None
    return Exceptional(cycle_length=length, clique_size=m, blobs=ordered)


def greedy_mis(g: Graph, within: int | None = None, start: int = 0) -> int:
    """Maximal independent set of ``g[within]``, lowest id first, seeded by ``start``."""
    within = g.full_mask if within is None else within
    chosen = start
    blocked = start
    m = start
    while m:
        low = m & -m
        blocked |= g.masks[low.bit_length() - 1]
        m ^= low
    free = within & ~blocked
    while free:
        low = free & -free
        v = low.bit_length() - 1
        chosen |= low
        free &= ~(low | g.masks[v])
    return chosen


def hitting_mis(g: Graph) -> list[int] | Exceptional | None:
    """Maximal independent set meeting every maximum clique of connected ``g``.

    Returns the set (sorted), an :class:`Exceptional` witness when ``g`` is an
    odd-cycle strong product (no such set exists there), or ``None`` when the
    exhaustive search finds nothing.
    """
    if g.n == 0:
        return []
    if not g.is_connected():
        raise InputError("hitting_mis needs a connected graph; split by component first")
    ex = detect_odd_cycle_product(g)
    if ex is not None:
        return ex
    cliques = [c.mask for c in maximum_cliques(g)]
    closed = [g.masks[v] | 1 << v for v in range(g.n)]

    def search(chosen: int, blocked: int) -> int | None:
        pick, pick_avail, best = None, 0, None
        for c in cliques:
            if c & chosen:
                continue
            avail = c & ~blocked
            if not avail:
                return None
            cnt = popcount(avail)
            if best is None or cnt < best:
                pick, pick_avail, best = c, avail, cnt
        if pick is None:
            return chosen
        m = pick_avail
        while m:
            low = m & -m
            m ^= low
            found = search(chosen | low, blocked | closed[low.bit_length() - 1])
            if found is not None:
                return found
        return None

    core = search(0, 0)
    if core is None:
        return None
    return mask_to_list(greedy_mis(g, start=core))


def hits_all_maximum_cliques(g: Graph, s: list[int]) -> bool:
    mask = g.mask_of(s)
    return all(c.mask & mask for c in maximum_cliques(g))


def hitting_mis_within(g: Graph, within: int) -> tuple[list[int] | Exceptional | None, list[int]]:
    """:func:`hitting_mis` on ``g[within]`` (connected), mapped back to ``g`` ids.

    Returns the result and the index map used.
    """
    sub, index = induced_subgraph(g, mask_to_list(within))
    res = hitting_mis(sub)
    if isinstance(res, list):
        return [index[v] for v in res], index
    if isinstance(res, Exceptional):
        blobs = tuple(tuple(index[v] for v in b) for b in res.blobs)
        return Exceptional(res.cycle_length, res.clique_size, blobs), index
    return None, index
