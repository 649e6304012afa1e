"""Named graphs and seeded random corpora."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from kpfree.cliques import clique_number
from kpfree.errors import InputError
from kpfree.graph import Graph

log = logging.getLogger(__name__)

# Recorded in corpus metadata so a corpus can be regenerated elsewhere.
RNG_ALGORITHM = "python-random-mt19937/v1"

# Figure edges with labels y1..y8 (1-based).
H1_EDGES = (
    (1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (1, 6),
    (1, 8), (4, 6), (4, 7), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8),
)


def complete(n: int) -> Graph:
    if n < 0:
        raise InputError("complete graph needs n >= 0")
    return Graph(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise InputError("path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def empty(n: int) -> Graph:
    return Graph(n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


def strong_product(g1: Graph, g2: Graph) -> Graph:
    """``g1 ⊠ g2``; vertex ``(a, b)`` gets id ``a * g2.n + b`` (row-major)."""
    if g1.n == 0 or g2.n == 0:
        raise InputError("strong product factors must be nonempty")
    n2 = g2.n
    closed1 = [set(g1.adj[a]) | {a} for a in range(g1.n)]
    closed2 = [set(g2.adj[b]) | {b} for b in range(n2)]
    edges = []
    for a in range(g1.n):
        for b in range(n2):
            u = a * n2 + b
            for a2 in closed1[a]:
                for b2 in closed2[b]:
                    v = a2 * n2 + b2
                    if u < v:
                        edges.append((u, v))
    return Graph(g1.n * n2, edges)


def h1_figure() -> Graph:
    """The 8-vertex 4-regular graph with no (K_3-free, independent) split."""
    return Graph(8, ((u - 1, v - 1) for u, v in H1_EDGES))


def h0_pendant() -> Graph:
    """K_8 on vertices 0..7; core vertex i gets pendants 8+2i and 9+2i."""
    edges = list(combinations(range(8), 2))
    for i in range(8):
        edges.append((i, 8 + 2 * i))
        edges.append((i, 9 + 2 * i))
    return Graph(24, edges)


def h0_pendant_set() -> list[int]:
    return list(range(8, 24))


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p) driven by ``random.Random(seed)``.

    Pairs are visited in lexicographic order with one draw each, so the output
    is a pure function of ``(n, p, seed)``.
    """
    if n < 0:
        raise InputError("n must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def planted_cliques(n: int, clique_size: int, n_cliques: int, p: float, seed: int) -> Graph:
    """G(n, p) plus ``n_cliques`` random ``clique_size``-cliques."""
    if clique_size > n:
        raise InputError("clique larger than the graph")
    rng = random.Random(seed)
    edges = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    for _ in range(n_cliques):
        members = sorted(rng.sample(range(n), clique_size))
        edges.update(combinations(members, 2))
    return Graph(n, sorted(edges))


def bounded_planted(
    n: int, clique_size: int, n_cliques: int, max_degree: int, p: float, seed: int
) -> Graph:
    """Random ``clique_size``-cliques and then G(n, p) edges, never exceeding ``max_degree``.

    Up to ``5 * n_cliques`` clique placements are tried; one is kept only if
    no vertex would go over the degree cap.
    """
    if clique_size > n:
        raise InputError("clique larger than the graph")
    rng = random.Random(seed)
    nbrs = [0] * n
    deg = [0] * n

    def join(u: int, v: int) -> None:
        nbrs[u] |= 1 << v
        nbrs[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1

    for _ in range(5 * n_cliques):
        members = rng.sample(range(n), clique_size)
        new = [(u, v) for u, v in combinations(members, 2) if not nbrs[u] >> v & 1]
        extra = [0] * n
        for u, v in new:
            extra[u] += 1
            extra[v] += 1
        if all(deg[x] + extra[x] <= max_degree for x in members):
            for u, v in new:
                join(u, v)
    for u, v in combinations(range(n), 2):
        if not nbrs[u] >> v & 1 and deg[u] < max_degree and deg[v] < max_degree and rng.random() < p:
            join(u, v)
    return Graph.from_masks(nbrs)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)


_FAMILIES = ("complete", "cycle", "path", "strong_product", "h1_figure", "h0_pendant",
             "random", "planted", "bounded_planted")


def gen_named(spec: FamilySpec) -> Graph:
    prm = spec.params
    try:
        if spec.family == "complete":
            return complete(int(prm["n"]))
        if spec.family == "cycle":
            return cycle(int(prm["n"]))
        if spec.family == "path":
            return path(int(prm["n"]))
        if spec.family == "h1_figure":
            return h1_figure()
        if spec.family == "h0_pendant":
            return h0_pendant()
        if spec.family == "strong_product":
            # odd cycle C_{2t+1} times K_m by default, or any two named factors
            if "t" in prm:
                return strong_product(cycle(2 * int(prm["t"]) + 1), complete(int(prm.get("m", 2))))
            return strong_product(gen_named(prm["left"]), gen_named(prm["right"]))
        if spec.family == "random":
            return random_gnp(int(prm["n"]), float(prm["p"]), int(prm.get("seed", 0)))
        if spec.family == "planted":
            return planted_cliques(
                int(prm["n"]), int(prm["size"]), int(prm.get("count", 1)),
                float(prm.get("p", 0.1)), int(prm.get("seed", 0)),
            )
        if spec.family == "bounded_planted":
            return bounded_planted(
                int(prm["n"]), int(prm["size"]), int(prm.get("count", 1)),
                int(prm["max_degree"]), float(prm.get("p", 0.1)), int(prm.get("seed", 0)),
            )
    except KeyError as exc:
        raise InputError(f"family {spec.family!r} needs parameter {exc.args[0]!r}") from None
    raise InputError(f"unknown family {spec.family!r}; expected one of {', '.join(_FAMILIES)}")


@dataclass
class Corpus:
    graphs: list[Graph]
    seeds: list[int]
    attempts: int
    shortfall: bool
    rng: str = RNG_ALGORITHM


def derive_seeds(master: int, count: int) -> list[int]:
    """Independent per-item seeds from one master seed."""
    rng = random.Random(master)
    return [rng.getrandbits(63) for _ in range(count)]


def gen_corpus(
    count: int,
    seed: int,
    n_range: tuple[int, int] = (10, 20),
    p_range: tuple[float, float] = (0.2, 0.6),
    delta_range: tuple[int, int] | None = None,
    accept: Callable[[Graph, int], bool] | None = None,
    connected: bool = True,
    max_attempts: int | None = None,
    builder: Callable[[random.Random, int], Graph] | None = None,
) -> Corpus:
    """Seeded G(n, p) corpus filtered by degree range and ``accept(g, omega)``.

    Every emitted graph is checked against the filter with the clique engine.
    Stops after ``max_attempts`` draws (default ``200 * count``) and reports a
    shortfall instead of raising.
    """
    if max_attempts is None:
        max_attempts = 200 * max(count, 1)
    master = random.Random(seed)
    graphs: list[Graph] = []
    seeds: list[int] = []
    attempts = 0
    while len(graphs) < count and attempts < max_attempts:
        attempts += 1
        item_seed = master.getrandbits(63)
        rng = random.Random(item_seed)
        n = rng.randint(*n_range)
        if builder is not None:
            g = builder(rng, n)
        else:
            g = random_gnp(n, rng.uniform(*p_range), rng.getrandbits(63))
        if connected and not g.is_connected():
            continue
        if delta_range is not None and not delta_range[0] <= g.max_degree <= delta_range[1]:
            continue
        if accept is not None and not accept(g, clique_number(g)):
            continue
        graphs.append(g)
        seeds.append(item_seed)
    shortfall = len(graphs) < count
    if shortfall:
        log.warning("corpus shortfall: %d of %d graphs after %d attempts",
                    len(graphs), count, attempts)
    return Corpus(graphs=graphs, seeds=seeds, attempts=attempts, shortfall=shortfall)
