"""K_{p_i}-free k-partitions when sum(p_i) = Delta - 1 + k, p_1 >= 4, omega <= Delta - 1.

The two-class core works on a vertex mask ``W`` of the host graph under a
degree *bound* ``D`` (``Delta(g[W]) <= D``, ``omega(g[W]) <= D - 1``,
``p + q = D + 1``). Padding with a disjoint gadget of maximum degree ``D``
shows the statement for ``Delta <= D`` follows from the one for
``Delta = D``, and the bound form is what the recursion actually needs:
removing an independent set lowers the maximum degree by *at least* one.
"""

from __future__ import annotations

import logging
from typing import Any

from kpfree.cliques import clique_number, has_clique
from kpfree.errors import BudgetExceeded, InputError
from kpfree.graph import Graph, induced_subgraph, mask_to_list
from kpfree.oracle import find_partition_unbounded
from kpfree.partition.hitting import (
    Exceptional,
    detect_odd_cycle_product,
    greedy_mis,
    hitting_mis_within,
)
from kpfree.partition.model import Partition, PartitionSpec, certify, check_theorem1_hypotheses

log = logging.getLogger(__name__)

FALLBACK_NODE_LIMIT = 50_000_000


class BranchFailure(Exception):
    """The constructive argument does not cover the current sub-case."""


def _components_within(g: Graph, within: int) -> list[int]:
    comps = []
    rest = within
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = g.masks[b.bit_length() - 1] & within & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def max_degree_within(g: Graph, within: int) -> int:
    return max((bin(g.masks[v] & within).count("1") for v in mask_to_list(within)), default=0)


def _peel(g: Graph, within: int, target: int, trace: list[dict[str, Any]]) -> int:
    """Maximal independent set of ``g[within]`` meeting every ``target``-clique.

    Components whose clique number is ``target`` get a hitting set; the others
    get a greedy maximal independent set.
    """
    chosen = 0
    for comp in _components_within(g, within):
        if clique_number(g, comp) == target:
            res, _ = hitting_mis_within(g, comp)
            if isinstance(res, Exceptional):
                raise BranchFailure(
                    f"component is C_{res.cycle_length} ⊠ K_{res.clique_size}; no hitting set"
                )
            if res is None:
                raise BranchFailure("no independent set hits every maximum clique")
            for v in res:
                chosen |= 1 << v
            trace.append({"op": "hitting_mis", "target": target, "size": len(res)})
        else:
            chosen |= greedy_mis(g, comp)
    return chosen


def split_two(
    g: Graph, within: int, p: int, q: int, bound: int, trace: list[dict[str, Any]]
) -> tuple[int, int]:
    """``g[within]`` -> (K_p-free mask, K_q-free mask). Raises :class:`BranchFailure`."""
    omega = clique_number(g, within)
    step: dict[str, Any] = {"op": "split", "D": bound, "p": p, "q": q, "omega": omega}
    trace.append(step)
    if omega < p:
        step["case"] = "already K_p-free"
        return within, 0
    if q == 2:
        # p = D - 1 >= omega: an independent set through every p-clique finishes it
        step["case"] = "q=2"
        indep = _peel(g, within, p, trace)
        return within & ~indep, indep
    if bound < 6:
        raise BranchFailure(f"no constructive case for D={bound}, (p, q)=({p}, {q})")
    step["case"] = "peel"
    if omega == bound - 1:
        indep = _peel(g, within, bound - 1, trace)
    else:
        indep = greedy_mis(g, within)
    rest = within & ~indep
    if (p, q) == (4, 3):
        comps = _components_within(g, rest)
        if len(comps) == 1:
            sub, index = induced_subgraph(g, mask_to_list(rest))
            res = detect_odd_cycle_product(sub)
            if res is not None and res.clique_size == 2:
                # rest is C_{2t+1} ⊠ K_2: one odd cycle joins the independent set
                step["case"] = "odd-cycle split"
                cyc_a, cyc_b = res.odd_cycles()
                return indep | _mask(index[v] for v in cyc_a), _mask(index[v] for v in cyc_b)
    v1, v2 = split_two(g, rest, p, q - 1, bound - 1, trace)
    return v1, v2 | indep


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def grow_kq_free(g: Graph, cls: int, pool: int, q: int) -> int:
    """Add vertices of ``pool`` (lowest id first) to ``cls`` while it stays K_q-free."""
    for v in mask_to_list(pool):
        if not has_clique(g, q - 1, cls & g.masks[v]):
            cls |= 1 << v
    return cls


def reduce_k(g: Graph, within: int, parts: tuple[int, ...], trace: list[dict[str, Any]]) -> list[int]:
    """Peel classes k, k-1, ..., 2 with two-class splits; returns class masks."""
    k = len(parts)
    classes = [0] * k
    cur = within
    for j in range(k, 1, -1):
        q = parts[j - 1]
        p = sum(parts[: j - 1]) - (j - 2)
        d = p + q - 1
        trace.append({"op": "reduce", "class": j, "p": p, "q": q, "D": d})
        v1, v2 = split_two(g, cur, p, q, d, trace)
        v2 = grow_kq_free(g, v2, v1, q)
        classes[j - 1] = v2
        cur &= ~v2
    classes[0] = cur
    return classes


def _fallback(g: Graph, parts: tuple[int, ...], reason: str) -> list[list[int]]:
    log.info("constructive branch failed (%s); exact search on n=%d", reason, g.n)
    classes, _ = find_partition_unbounded(g, parts, FALLBACK_NODE_LIMIT)
    if classes is None:
        raise BudgetExceeded(f"exact fallback found no partition for {list(parts)}")
    return classes


def _finish(g: Graph, parts, masks_or_lists, trace, fallback: str | None) -> Partition:
    classes = [mask_to_list(c) if isinstance(c, int) else sorted(c) for c in masks_or_lists]
    certify(g, classes, parts)
    meta = {"fallback_reason": fallback} if fallback else {}
    return Partition(parts=tuple(parts), classes=classes, certified=True,
                     fallback_used=fallback is not None, trace=trace, meta=meta)


def partition_two(g: Graph, p: int, q: int) -> Partition:
    """Split V(g) into a K_p-free and a K_q-free class.

    Requires Delta >= 6, omega <= Delta - 1, p >= 4, q >= 2, p + q = Delta + 1.
    """
    if p < 4 or q < 2:
        raise InputError(f"need p >= 4 and q >= 2, got ({p}, {q})")
    if p + q != g.max_degree + 1:
        raise InputError(f"need p + q = Delta + 1 = {g.max_degree + 1}, got {p + q}")
    return _run(g, (p, q))


def partition_k(g: Graph, spec: PartitionSpec) -> Partition:
    """K_{p_i}-free partition for ``spec`` (k classes); output is certified."""
    spec.check_valid_for(g)
    if spec.k == 1:
        check_theorem1_hypotheses(g, spec)
        return _finish(g, spec.parts, [g.full_mask], [], None)
    if spec.parts[0] < 4:
        raise InputError(f"need p_1 >= 4, got {spec.parts[0]}")
    return _run(g, spec.parts)


def _run(g: Graph, parts: tuple[int, ...]) -> Partition:
    if g.max_degree < 6:
        raise InputError(f"need Delta >= 6, got {g.max_degree}")
    omega = clique_number(g)
    if omega > g.max_degree - 1:
        raise InputError(f"omega = {omega} exceeds Delta - 1 = {g.max_degree - 1}")
    trace: list[dict[str, Any]] = []
    try:
        classes = reduce_k(g, g.full_mask, parts, trace)
    except BranchFailure as exc:
        trace.append({"op": "fallback", "reason": str(exc)})
        return _finish(g, parts, _fallback(g, parts, str(exc)), trace, str(exc))
    return _finish(g, parts, classes, trace, None)
