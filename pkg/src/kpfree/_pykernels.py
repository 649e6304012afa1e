"""Pure-Python bitset kernels.

Reference implementation of the hot loops. Graphs are passed as a list of
neighbourhood bitmasks (``adj[v]`` has bit ``u`` set iff ``uv`` is an edge);
vertex subsets are integer bitmasks. ``_ckernels`` mirrors this API exactly.
"""

from __future__ import annotations

BACKEND = "python"
MAX_N = None  # no width limit


class NodeLimitExceeded(Exception):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def count_cliques(adj: list[int], mask: int, t: int) -> int:
    """Number of t-cliques inside ``mask``."""
    if t <= 0:
        return 1
    if t == 1:
        return popcount(mask)
    total = 0
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        cand = m & adj[v]
        if t == 2:
            total += popcount(cand)
        elif popcount(cand) >= t - 1:
            total += count_cliques(adj, cand, t - 1)
    return total


def has_clique(adj: list[int], mask: int, t: int) -> bool:
    """True iff ``mask`` contains a t-clique."""
    if t <= 0:
        return True
    if t == 1:
        return mask != 0
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        cand = m & adj[v]
        if t == 2:
            if cand:
                return True
        elif popcount(cand) >= t - 1 and has_clique(adj, cand, t - 1):
            return True
    return False


def list_cliques(adj: list[int], mask: int, t: int, cap: int = -1) -> list[int]:
    """Up to ``cap`` t-cliques inside ``mask`` as bitmasks, in lexicographic order."""
    out: list[int] = []
    if t <= 0:
        return [0]

    def rec(cand: int, acc: int, need: int) -> bool:
        if need == 0:
            out.append(acc)
            return cap >= 0 and len(out) >= cap
        m = cand
        while m:
            if popcount(m) < need:
                return False
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if rec(m & adj[v], acc | low, need - 1):
                return True
        return False

    rec(mask, 0, t)
    return out


def search_partition(
    adj: list[int], order: list[int], parts: list[int], node_limit: int = 0
) -> tuple[list[int] | None, int]:
    """Depth-first search for an assignment of ``order`` into classes.

    Class ``c`` may not contain a ``parts[c]``-clique. Returns the class of
    every vertex (``-1`` for vertices not in ``order``) or ``None`` when no
    assignment exists, together with the number of nodes visited.
    """
    n = len(adj)
    k = len(parts)
    classes = [0] * k
    assign = [-1] * n
    nodes = 0
    depth = len(order)

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == depth:
            return True
        v = order[i]
        bit = 1 << v
        nv = adj[v]
        for c in range(k):
            nodes += 1
            if node_limit and nodes > node_limit:
                raise NodeLimitExceeded(nodes)
            if has_clique(adj, classes[c] & nv, parts[c] - 1):
                continue
            classes[c] |= bit
            assign[v] = c
            if rec(i + 1):
                return True
            classes[c] ^= bit
            assign[v] = -1
        return False

    found = rec(0)
    return (assign if found else None), nodes


def _clique_cover_bound(adj: list[int], rest: int, cap: int) -> int:
    # greedy clique cover; each clique contributes at most cap vertices
    bound = 0
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique = low
        cand = rest & adj[v]
        while cand:
            lowc = cand & -cand
            u = lowc.bit_length() - 1
            clique |= lowc
            cand &= adj[u]
        size = popcount(clique)
        bound += size if size < cap else cap
        rest &= ~clique
    return bound


def max_kpfree(
    adj: list[int], p: int, collect: int = 1, node_limit: int = 0
) -> tuple[int, list[int], int, int]:
    """Exact maximum K_p-free subset by branch and bound.

    Returns ``(size, optima, count, nodes)``: ``optima`` holds up to
    ``collect`` optimal sets (bitmasks, in search order), ``count`` is the
    exact number of optimal sets.
    """
    n = len(adj)
    best = -1
    optima: list[int] = []
    count = 0
    nodes = 0

    def rec(i: int, chosen: int, size: int, rest: int) -> None:
        nonlocal best, count, nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise NodeLimitExceeded(nodes)
        if size + _clique_cover_bound(adj, rest, p - 1) < best:
            return
        if i == n:
            if size > best:
                best = size
                count = 0
                optima.clear()
            count += 1
            if len(optima) < collect:
                optima.append(chosen)
            return
        bit = 1 << i
        rest ^= bit
        if not has_clique(adj, chosen & adj[i], p - 1):
            rec(i + 1, chosen | bit, size + 1, rest)
        rec(i + 1, chosen, size, rest)

    rec(0, 0, 0, (1 << n) - 1)
    return best, optima, count, nodes
