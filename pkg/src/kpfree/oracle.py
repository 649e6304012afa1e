"""Brute-force ground truth for partitions, K_p-free sets and colourings.

Everything here is exact and refuses work beyond its :class:`SearchBudget`
rather than degrading to a heuristic.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from kpfree import kernels
from kpfree.cliques import clique_number, is_kp_free, num_cliques
from kpfree.errors import BudgetExceeded, CertificationError, InputError
from kpfree.graph import Graph, mask_to_list


@dataclass(frozen=True)
class SearchBudget:
    """Vertex caps per algorithm plus an optional search-node cap.

    A wall-clock cap would make refusals depend on machine speed, so the
    secondary cap counts search nodes instead.
    """

    max_n_two: int = 22  # 2-class partition search
    max_assignments: int = 3**13  # k^n cap for k >= 3 classes
    max_n_bnb: int = 26  # branch and bound (max K_p-free set, chromatic number)
    node_limit: int = 0  # 0 = unlimited

    def check_partition(self, n: int, k: int) -> None:
        if k == 2 and n > self.max_n_two:
            raise BudgetExceeded(f"2-class search limited to n <= {self.max_n_two}, got n={n}")
        if k >= 3 and k**n > self.max_assignments:
            raise BudgetExceeded(
                f"{k}-class search limited to k^n <= {self.max_assignments}, got {k}^{n}"
            )

    def check_bnb(self, n: int) -> None:
        if n > self.max_n_bnb:
            raise BudgetExceeded(f"branch and bound limited to n <= {self.max_n_bnb}, got n={n}")


DEFAULT_BUDGET = SearchBudget()


@dataclass
class PartitionSearch:
    """Outcome of :func:`exists_partition`.

    ``classes`` is a certified witness when ``exists``; otherwise the
    refutation certificate is the search parameters (``parts``, ``order``)
    and ``nodes``, reproducible by re-running.
    """

    exists: bool
    parts: list[int]
    classes: list[list[int]] | None
    nodes: int
    order: list[int]
    space: int

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "parts": self.parts,
            "classes": self.classes,
            "nodes": self.nodes,
            "order": self.order,
            "space": self.space,
        }


def search_order(g: Graph, vertices: Iterable[int] | None = None) -> list[int]:
    vs = range(g.n) if vertices is None else vertices
    return sorted(vs, key=lambda v: (-g.degree(v), v))


def _run_partition_search(g, parts, order, node_limit):
    try:
        return kernels.search_partition(list(g.masks), order, parts, node_limit)
    except kernels.NodeLimitExceeded as exc:
        raise BudgetExceeded(f"partition search exceeded {node_limit} nodes") from exc


def exists_partition(
    g: Graph, parts: Sequence[int], budget: SearchBudget = DEFAULT_BUDGET
) -> PartitionSearch:
    """Decide whether V(g) splits into classes with class i K_{parts[i]}-free.

    Vertices are assigned in descending-degree order; a branch dies as soon as
    some class contains its forbidden clique.
    """
    parts = [int(p) for p in parts]
    if not parts or any(p < 2 for p in parts):
        raise InputError(f"parts must be a nonempty list of integers >= 2, got {parts}")
    k = len(parts)
    budget.check_partition(g.n, k)
    order = search_order(g)
    assign, nodes = _run_partition_search(g, parts, order, budget.node_limit)
    classes = None
    if assign is not None:
        classes = [[v for v in range(g.n) if assign[v] == c] for c in range(k)]
        for cls, p in zip(classes, parts):
            if not is_kp_free(g, cls, p):
                raise CertificationError("partition search returned an invalid witness")
    return PartitionSearch(
        exists=assign is not None, parts=parts, classes=classes,
        nodes=nodes, order=order, space=k**g.n,
    )


def find_partition_unbounded(g: Graph, parts: Sequence[int], node_limit: int = 0):
    """Partition search with only a node cap; used by internal fallbacks."""
    order = search_order(g)
    assign, nodes = _run_partition_search(g, list(parts), order, node_limit)
    if assign is None:
        return None, nodes
    return [[v for v in range(g.n) if assign[v] == c] for c in range(len(parts))], nodes


@dataclass
class MaxKpFree:
    size: int
    witness: list[int]
    count: int
    optima: list[int] = field(default_factory=list)  # bitmasks, search order
    nodes: int = 0


def exact_max_kpfree(
    g: Graph, p: int, budget: SearchBudget = DEFAULT_BUDGET, collect: int = 1
) -> MaxKpFree:
    """Largest K_p-free vertex set, one witness, and the number of optima.

    Branch and bound over vertices in id order; the bound takes at most p-1
    vertices from each clique of a greedy clique cover of the undecided part.
    """
    if p < 2:
        raise InputError(f"p must be >= 2, got {p}")
    budget.check_bnb(g.n)
    if g.n == 0:
        return MaxKpFree(size=0, witness=[], count=1, optima=[0])
    try:
        size, optima, count, nodes = kernels.max_kpfree(
            list(g.masks), p, max(collect, 1), budget.node_limit
        )
    except kernels.NodeLimitExceeded as exc:
        raise BudgetExceeded(f"max K_{p}-free search exceeded {budget.node_limit} nodes") from exc
    return MaxKpFree(size=size, witness=mask_to_list(optima[0]), count=count,
                     optima=optima, nodes=nodes)


def independence_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> MaxKpFree:
    return exact_max_kpfree(g, 2, budget)


@dataclass
class Coloring:
    chromatic_number: int
    colors: list[int]

    def classes(self) -> list[list[int]]:
        return [[v for v, c in enumerate(self.colors) if c == i]
                for i in range(self.chromatic_number)]


def _dsatur_greedy(g: Graph) -> list[int]:
    colors = [-1] * g.n
    classes: list[int] = []
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colors[u] < 0),
            key=lambda u: (sum(1 for cm in classes if cm & g.masks[u]), g.degree(u), -u),
        )
        for c, cm in enumerate(classes):
            if not cm & g.masks[v]:
                break
        else:
            c = len(classes)
            classes.append(0)
        classes[c] |= 1 << v
        colors[v] = c
    return colors


def exact_chromatic(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> Coloring:
    """Chromatic number by DSATUR-ordered branch and bound, seeded by greedy DSATUR."""
    budget.check_bnb(g.n)
    if g.n == 0:
        return Coloring(0, [])
    best = _dsatur_greedy(g)
    best_k = max(best) + 1
    lower = clique_number(g)
    if best_k == lower:
        return Coloring(best_k, best)

    masks = g.masks
    colors = [-1] * g.n
    classes: list[int] = []
    nodes = 0

    def pick() -> int:
        bv, bkey = -1, None
        for u in range(g.n):
            if colors[u] >= 0:
                continue
            key = (sum(1 for cm in classes if cm & masks[u]), g.degree(u), -u)
            if bkey is None or key > bkey:
                bv, bkey = u, key
        return bv

    def rec(done: int) -> None:
        nonlocal best, best_k, nodes
        nodes += 1
        if budget.node_limit and nodes > budget.node_limit:
            raise BudgetExceeded(f"chromatic search exceeded {budget.node_limit} nodes")
        if done == g.n:
            best_k = len(classes)
            best = colors[:]
            return
        v = pick()
        bit = 1 << v
        for c in range(len(classes)):
            if classes[c] & masks[v]:
                continue
            classes[c] |= bit
            colors[v] = c
            rec(done + 1)
            classes[c] ^= bit
            colors[v] = -1
            if best_k == lower:
                return
        if len(classes) + 1 < best_k:
            classes.append(bit)
            colors[v] = len(classes) - 1
            rec(done + 1)
            classes.pop()
            colors[v] = -1

    rec(0)
    return Coloring(best_k, best)


def min_kp1_filter(g: Graph, candidates: Sequence[Iterable[int]], p: int) -> list[list[int]]:
    """Candidates with the fewest K_{p-1} copies, in their original order."""
    cands = [sorted(c) for c in candidates]
    if not cands:
        raise InputError("min_kp1_filter needs at least one candidate")
    if len({len(c) for c in cands}) != 1:
        raise InputError("candidates must all have the same size")
    counts = []
    for c in cands:
        if not is_kp_free(g, c, p):
            raise InputError(f"candidate {c} contains a K_{p}")
        counts.append(num_cliques(g, p - 1, c))
    low = min(counts)
    return [c for c, k in zip(cands, counts) if k == low]
