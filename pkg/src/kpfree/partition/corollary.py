"""k-partitions whose first class is a maximum K_{p_1}-free set.

The first class comes from the exchange procedure with ``q = sum(p_2..p_k) - (k - 2)``;
its K_q-free complement is then split into the remaining ``k - 1`` classes
with the two-class reduction, whose degree bound there is ``q``.
"""

from __future__ import annotations

import logging
from typing import Any

from kpfree.cliques import clique_number, num_cliques
from kpfree.errors import BudgetExceeded, InputError
from kpfree.graph import Graph, induced_subgraph, mask_to_list
from kpfree.oracle import DEFAULT_BUDGET, SearchBudget, find_partition_unbounded
from kpfree.partition.exchange import kpfree_family, max_kpfree_partition
from kpfree.partition.model import Partition, PartitionSpec, certify
from kpfree.partition.theorem1 import FALLBACK_NODE_LIMIT, BranchFailure, reduce_k

log = logging.getLogger(__name__)


def _exact_tail(g: Graph, rest: int, tail: tuple[int, ...]) -> list[list[int]] | None:
    sub, index = induced_subgraph(g, mask_to_list(rest))
    classes, _ = find_partition_unbounded(sub, tail, FALLBACK_NODE_LIMIT)
    if classes is None:
        return None
    return [[index[v] for v in c] for c in classes]


def partition_k_with_max_first(
    g: Graph, spec: PartitionSpec, seed: str = "min-kq", budget: SearchBudget = DEFAULT_BUDGET
) -> Partition:
    """Certified partition for ``spec`` (k >= 3) with class 1 a maximum K_{p_1}-free set.

    Requires Delta >= 9, omega = p_1 and p_1 >= p_2 >= 4.
    """
    spec.check_valid_for(g)
    parts = spec.parts
    if spec.k < 3:
        raise InputError("k = 2 is the plain exchange case; use max_kpfree_partition")
    if g.max_degree < 9:
        raise InputError(f"need Delta >= 9, got {g.max_degree}")
    if parts[1] < 4:
        raise InputError(f"need p_2 >= 4, got {parts[1]}")
    omega = clique_number(g)
    if omega != parts[0]:
        raise InputError(f"need omega = p_1 = {parts[0]}, got omega = {omega}")
    tail = parts[1:]
    q = sum(tail) - (len(tail) - 1)

    first = max_kpfree_partition(g, parts[0], q, seed=seed, budget=budget)
    v1 = g.mask_of(first.classes[0])
    trace: list[dict[str, Any]] = [{"op": "max_first", "size": len(first.classes[0]), "q": q}]
    fallback = first.meta.get("fallback_reason")
    try:
        tail_classes: list = reduce_k(g, g.full_mask & ~v1, tail, trace)
    except BranchFailure as exc:
        fallback = str(exc)
        trace.append({"op": "fallback", "reason": fallback})
        log.info("tail reduction failed (%s); exact search", exc)
        tail_classes = _exact_tail(g, g.full_mask & ~v1, tail)
        if tail_classes is None:
            # another maximum set may leave a splittable complement
            _, family = kpfree_family(g, parts[0], budget)
            for s in family:
                comp = g.full_mask & ~s
                if num_cliques(g, q, comp):
                    continue
                tail_classes = _exact_tail(g, comp, tail)
                if tail_classes is not None:
                    v1 = s
                    break
            else:
                raise BudgetExceeded(f"no maximum K_{parts[0]}-free set has a splittable complement")
    classes = [mask_to_list(v1)] + [
        mask_to_list(c) if isinstance(c, int) else sorted(c) for c in tail_classes
    ]
    certify(g, classes, parts)
    meta = dict(first.meta)
    meta["class1_size"] = len(classes[0])
    if fallback:
        meta["fallback_reason"] = fallback
    return Partition(parts=parts, classes=classes, certified=True,
                     fallback_used=fallback is not None, trace=first.trace + trace, meta=meta)
