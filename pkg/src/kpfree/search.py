"""Counterexample sweeps: which graphs of maximum degree Delta admit no K_{p_i}-free partition?

Exhaustive mode grows graphs one vertex at a time under the hereditary
bounds ``Delta <= delta`` and ``omega <= omega_max`` and keeps one
representative per isomorphism class, using the canonical form below.
Random mode samples seeded G(n, p) graphs instead.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from kpfree.cliques import clique_number, has_clique
from kpfree.errors import BudgetExceeded, InputError
from kpfree.generators import gen_named, FamilySpec, random_gnp
from kpfree.graph import Graph
from kpfree.io import format_edge_list
from kpfree.kernels import popcount
from kpfree.oracle import DEFAULT_BUDGET, SearchBudget, exists_partition

log = logging.getLogger(__name__)

NAMED = {
    "h1": FamilySpec("h1_figure"),
    "c5xk2": FamilySpec("strong_product", {"t": 2, "m": 2}),
    "c7xk2": FamilySpec("strong_product", {"t": 3, "m": 2}),
    "h0": FamilySpec("h0_pendant"),
}


def _refine(masks: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; split order depends only on isomorphism-invariant keys."""
    while True:
        cell_masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            cell_masks.append(m)
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple(popcount(masks[v] & cm) for cm in cell_masks)
                groups.setdefault(key, []).append(v)
            if len(groups) > 1:
                split = True
            out.extend(groups[k] for k in sorted(groups))
        cells = out
        if not split:
            return cells


def canonical_form(g: Graph) -> tuple[int, int]:
    """``(n, code)``, equal for two graphs exactly when they are isomorphic.

    Individualization-refinement: refine the vertex partition, branch on
    each vertex of the first non-singleton cell, and take the smallest
    adjacency code over all discrete leaves.
    """
    n = g.n
    masks = g.masks
    best = -1

    def code(order: list[int]) -> int:
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        c = 0
        for u, v in g.edges():
            a, b = sorted((pos[u], pos[v]))
            c |= 1 << (a * n + b)
        return c

    def rec(cells: list[list[int]]) -> None:
        nonlocal best
        cells = _refine(masks, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            c = code([c[0] for c in cells])
            if best < 0 or c < best:
                best = c
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            rec(cells[:target] + [[v], rest] + cells[target + 1:])

    if n:
        rec([list(range(n))])
    return n, max(best, 0)


def extend_graph(g: Graph, nbrs: int) -> Graph:
    """``g`` plus a new vertex ``g.n`` adjacent to the vertex mask ``nbrs``."""
    masks = list(g.masks) + [nbrs]
    v = g.n
    m = nbrs
    while m:
        low = m & -m
        masks[low.bit_length() - 1] |= 1 << v
        m ^= low
    return Graph.from_masks(masks)


def enumerate_graphs(
    n_max: int, max_degree: int, omega_max: int | None = None
) -> Iterator[tuple[int, list[Graph]]]:
    """Yield ``(n, graphs)`` for n = 1..n_max: every graph with Delta <= max_degree
    and omega <= omega_max, one per isomorphism class, sorted by canonical code.
    """
    if n_max < 1 or max_degree < 0:
        raise InputError("need n_max >= 1 and max_degree >= 0")
    limit = omega_max if omega_max is not None else max_degree + 1
    level = [Graph(1, [])]
    yield 1, level
    for n in range(2, n_max + 1):
        seen: dict[tuple[int, int], Graph] = {}
        for g in level:
            free = [v for v in range(g.n) if g.degree(v) < max_degree]
            for size in range(min(max_degree, len(free)) + 1):
                for nb in combinations(free, size):
                    mask = 0
                    for v in nb:
                        mask |= 1 << v
                    # omega stays <= limit iff the new vertex's neighbourhood has no K_limit
                    if has_clique(g, limit, mask):
                        continue
                    h = extend_graph(g, mask)
                    seen.setdefault(canonical_form(h), h)
        level = [seen[k] for k in sorted(seen)]
        yield n, level


@dataclass
class SweepItem:
    graph_id: str
    n: int
    m: int
    omega: int
    exists: bool | None
    nodes: int = 0
    skipped: str | None = None
    witness: list[list[int]] | None = None
    order: list[int] = field(default_factory=list)
    edge_list: str | None = None

    def to_json(self) -> dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class SweepReport:
    delta: int
    spec: list[int]
    mode: str
    seed: int
    candidates: int
    checked: int
    skipped: int
    refutations: list[SweepItem]
    items: list[SweepItem]

    def to_json(self, include_items: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "delta": self.delta,
            "spec": self.spec,
            "mode": self.mode,
            "seed": self.seed,
            "candidates": self.candidates,
            "checked": self.checked,
            "skipped": self.skipped,
            "refutations": [r.to_json() for r in self.refutations],
        }
        if include_items:
            out["items"] = [i.to_json() for i in self.items]
        return out


def _check(args: tuple[str, Graph, tuple[int, ...], SearchBudget]) -> SweepItem:
    gid, g, spec, budget = args
    omega = clique_number(g)
    item = SweepItem(graph_id=gid, n=g.n, m=g.m, omega=omega, exists=None)
    try:
        res = exists_partition(g, spec, budget)
    except BudgetExceeded as exc:
        item.skipped = str(exc)
        log.warning("graph %s skipped: %s", gid, exc)
        return item
    item.exists = res.exists
    item.nodes = res.nodes
    item.order = res.order
    if res.exists:
        item.witness = res.classes
    else:
        item.edge_list = format_edge_list(g)
    return item


def _candidates_exhaustive(n_min, n_max, delta, omega_max) -> Iterator[tuple[str, Graph]]:
    for n, graphs in enumerate_graphs(n_max, delta, omega_max):
        if n < n_min:
            continue
        idx = 0
        for g in graphs:
            if g.max_degree == delta and g.is_connected():
                yield f"n{n:02d}-{idx:06d}", g
                idx += 1


def _candidates_random(n_min, n_max, delta, omega_max, seed, samples, density):
    rng = random.Random(seed)
    found = 0
    attempts = 0
    while found < samples and attempts < 200 * samples:
        attempts += 1
        n = rng.randint(n_min, n_max)
        p = density if density is not None else min(1.0, (delta - 0.5) / max(n - 1, 1))
        g = random_gnp(n, p, rng.getrandbits(63))
        if g.max_degree != delta or not g.is_connected():
            continue
        if omega_max is not None and clique_number(g) > omega_max:
            continue
        yield f"r{found:06d}", g
        found += 1


def sweep(
    delta: int,
    spec: Iterable[int],
    n_max: int,
    n_min: int = 1,
    mode: str = "exhaustive",
    seed: int = 0,
    samples: int = 100,
    density: float | None = None,
    omega_max: int | None = None,
    named: Iterable[str] = (),
    jobs: int = 1,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> SweepReport:
    """Run ``exists_partition(g, spec)`` over connected graphs with Delta = ``delta``.

    ``omega_max`` defaults to ``delta - 1``. ``named`` adds generator families
    such as ``h1`` or ``c5xk2`` to the candidates regardless of size.
    Results are ordered by graph id, so ``jobs`` never changes the output.
    """
    spec = tuple(int(p) for p in spec)
    if omega_max is None:
        omega_max = delta - 1
    if mode == "exhaustive":
        cands = list(_candidates_exhaustive(n_min, n_max, delta, omega_max))
    elif mode == "random":
        cands = list(_candidates_random(n_min, n_max, delta, omega_max, seed, samples, density))
    else:
        raise InputError(f"mode must be exhaustive or random, got {mode!r}")
    for name in named:
        if name not in NAMED:
            raise InputError(f"unknown named graph {name!r}; expected one of {', '.join(NAMED)}")
        cands.append((f"named-{name}", gen_named(NAMED[name])))
    work = [(gid, g, spec, budget) for gid, g in cands]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            items = list(pool.map(_check, work, chunksize=16))
    else:
        items = [_check(w) for w in work]
    items.sort(key=lambda it: it.graph_id)
    return SweepReport(
        delta=delta, spec=list(spec), mode=mode, seed=seed, candidates=len(items),
        checked=sum(it.exists is not None for it in items),
        skipped=sum(it.skipped is not None for it in items),
        refutations=[it for it in items if it.exists is False],
        items=items,
    )
