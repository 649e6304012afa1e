"""Maximum K_p-free set whose complement is K_q-free (omega = p, p + q = Delta + 1).

The set ``S`` starts as a maximum K_p-free set with the fewest K_{p-1}
copies. While ``g[S̄]`` still has a K_q, vertices are exchanged one for one:
``v`` enters ``S`` and some ``y`` that lies in every K_p through ``v`` in
``g[S ∪ {v}]`` (the set ``A_v``) leaves. The next entering vertex comes from
``B_y``, the part of the complement shared by every K_q through ``y``, so
the K_q copies through ``y`` die with it. Size, K_p-freeness and the K_{p-1}
count never change; every swap that leaves ``y`` outside all K_q copies
strictly lowers the K_q count of the complement and restarts the chain.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from kpfree import kernels
from kpfree.cliques import (
    clique_number,
    count_through_vertex,
    has_clique,
    num_cliques,
)
from kpfree.errors import (
    BudgetExceeded,
    ContractViolation,
    InputError,
    InternalContradiction,
)
from kpfree.graph import Graph, mask_to_list
from kpfree.oracle import DEFAULT_BUDGET, SearchBudget, exact_max_kpfree
from kpfree.partition.model import Partition, certify

log = logging.getLogger(__name__)

EXACT_THRESHOLD = 20
FAMILY_LIMIT = 500_000
SEED_MODES = ("min-kq", "first", "max-kq")


@dataclass
class SwapRecord:
    step: int
    v: int
    y: int
    a_v: list[int]
    b_prev: list[int] | None  # B_{y_{i-1}} that v was drawn from; None opens a chain
    kq_through_y: int  # K_q copies through y in the new complement
    kq_minus_v: int  # K_q copies in complement minus v, before the swap
    kq_count: int  # K_q copies in the complement after the swap
    kp1_count: int
    c3_intersection: int | None = None

    def to_json(self) -> dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class ExchangeState:
    """Live state of one exchange run. Confined to a single worker."""

    g: Graph
    p: int
    q: int
    s_mask: int
    kp1_count: int = 0
    kq_count: int = 0
    step: int = 0
    history: list[SwapRecord] = field(default_factory=list)
    iteration_cap: int = 0
    chains: int = 0

    def __post_init__(self):
        self.refresh()
        if not self.iteration_cap:
            self.iteration_cap = self.g.n * self.q

    @classmethod
    def from_set(cls, g: Graph, s, p: int, q: int, **kw) -> "ExchangeState":
        return cls(g=g, p=p, q=q, s_mask=g.mask_of(s), **kw)

    @property
    def comp_mask(self) -> int:
        return self.g.full_mask & ~self.s_mask

    @property
    def s(self) -> list[int]:
        return mask_to_list(self.s_mask)

    @property
    def complement(self) -> list[int]:
        return mask_to_list(self.comp_mask)

    def refresh(self) -> None:
        self.kp1_count = num_cliques(self.g, self.p - 1, self.s_mask)
        self.kq_count = num_cliques(self.g, self.q, self.comp_mask)


def _intersect_cliques(g: Graph, v: int, t: int, within: int) -> tuple[int, int]:
    """(number of t-cliques through v in g[within ∪ {v}], their common vertex mask)."""
    cands = kernels.list_cliques(list(g.masks), within & g.masks[v], t - 1)
    common = -1
    for c in cands:
        common &= c
    if not cands:
        return 0, 0
    return len(cands), common | 1 << v


def build_A(state: ExchangeState, v: int) -> list[int]:
    """Vertices lying in every K_p through ``v`` in ``g[S ∪ {v}]`` (includes ``v``)."""
    g, p = state.g, state.p
    if state.s_mask >> v & 1:
        raise InputError(f"vertex {v} is already in S")
    if kernels.popcount(g.masks[v] & state.s_mask) < p - 1:
        raise ContractViolation(f"vertex {v} has fewer than p-1 neighbours in S; S is not maximal")
    count, common = _intersect_cliques(g, v, p, state.s_mask)
    if count == 0:
        raise ContractViolation(f"no K_{p} through {v} in S ∪ {{v}}; S is not maximal")
    if kernels.popcount(common) < p - 1:
        raise ContractViolation(
            f"K_{p} copies through {v} share only {kernels.popcount(common)} vertices; "
            f"that forces deg({v}) > Delta"
        )
    return mask_to_list(common)


def _is_kq1_component(g: Graph, y: int, q: int, within: int) -> bool:
    closed = (g.masks[y] & within) | 1 << y
    if kernels.popcount(closed) != q + 1:
        return False
    for u in mask_to_list(closed):
        if (g.masks[u] & within) | 1 << u != closed:
            return False
    return True


def build_B(state: ExchangeState, y: int) -> list[int]:
    """Candidates for the next vertex to enter S, after ``y`` left it.

    ``y`` in one or two K_q copies of ``g[S̄]``: the vertices common to all of
    them. ``y`` in a K_{q+1} component of ``g[S̄]``: ``N[y] ∩ S̄``.
    """
    g, q = state.g, state.q
    comp = state.comp_mask
    if not comp >> y & 1:
        raise InputError(f"vertex {y} is not in the complement")
    count, common = _intersect_cliques(g, y, q, comp)
    if count == 0:
        raise ContractViolation(f"vertex {y} lies in no K_{q} of the complement")
    if count in (1, 2) and count != q:
        out = common
    elif count == q and _is_kq1_component(g, y, q, comp):
        out = (g.masks[y] & comp) | 1 << y
    else:
        raise ContractViolation(
            f"vertex {y} lies in {count} copies of K_{q} without a K_{q + 1} component"
        )
    size = kernels.popcount(out)
    if not q - 1 <= size <= q + 1:
        raise ContractViolation(f"|B_{y}| = {size} outside [q-1, q+1]")
    return mask_to_list(out)


def exchange_step(state: ExchangeState, v: int, y: int) -> None:
    """``S <- (S ∪ {v}) \\ {y}``."""
    state.s_mask = (state.s_mask | 1 << v) & ~(1 << y)
    state.step += 1


class _Stalled(Exception):
    pass


def _check_invariants(state: ExchangeState, size0: int, kp1_0: int, strict: bool) -> None:
    g, p = state.g, state.p
    if kernels.popcount(state.s_mask) != size0:
        raise InternalContradiction("exchange changed |S|")
    if has_clique(g, p, state.s_mask):
        raise InternalContradiction(f"exchange created a K_{p} inside S")
    if state.kp1_count > kp1_0 or (strict and state.kp1_count != kp1_0):
        raise InternalContradiction(
            f"K_{p - 1} count of S moved from {kp1_0} to {state.kp1_count}"
        )


def _first_kq(g: Graph, v: int, q: int, within: int) -> int:
    c = kernels.list_cliques(list(g.masks), within & g.masks[v], q - 1, 1)
    return c[0] | 1 << v


def _kq_copies_through(g: Graph, y: int, q: int, within: int) -> list[int]:
    return [c | 1 << y for c in kernels.list_cliques(list(g.masks), within & g.masks[y], q - 1)]


def _augment(state: ExchangeState) -> bool:
    """Add every complement vertex that keeps S K_p-free; True if S grew."""
    g, p = state.g, state.p
    grew = False
    for u in state.complement:
        if not has_clique(g, p - 1, state.s_mask & g.masks[u]):
            state.s_mask |= 1 << u
            grew = True
    if grew:
        state.refresh()
    return grew


def _check_f1(g: Graph, y: int, q: int, comp: int, through: int) -> None:
    if through in (1, 2) and through != q:
        return
    if through == q and _is_kq1_component(g, y, q, comp):
        return
    raise InternalContradiction(
        f"y={y} lies in {through} copies of K_{q} outside a K_{q + 1} component of the complement"
    )


def run_exchange(state: ExchangeState, strict: bool = True) -> ExchangeState:
    """Drive ``state`` until the complement is K_q-free.

    ``strict`` means S is a maximum K_p-free set with the fewest K_{p-1}
    copies, so the K_{p-1} count must stay constant. Otherwise S is only
    maximal; it is re-maximalised after each swap and may grow. Raises
    :class:`_Stalled` when a chain hits the iteration cap or has no
    admissible move; any broken invariant raises
    :class:`InternalContradiction`.
    """
    g, p, q = state.g, state.p, state.q
    if not strict:
        _augment(state)
    size0 = kernels.popcount(state.s_mask)
    kp1_0 = state.kp1_count
    best_kq = state.kq_count
    while state.kq_count:
        state.chains += 1
        comp = state.comp_mask
        # v_0: complement vertex in the most K_q copies, lowest id on ties
        v = max(mask_to_list(comp), key=lambda u: (count_through_vertex(g, u, q, comp), -u))
        k0 = _first_kq(g, v, q, comp)
        b_prev = None
        used_y = 0
        prev_minus_v = None
        chain_steps = 0
        while True:
            if chain_steps >= state.iteration_cap:
                raise _Stalled(f"chain exceeded {state.iteration_cap} swaps")
            comp = state.comp_mask
            kq_minus_v = num_cliques(g, q, comp & ~(1 << v))
            if prev_minus_v is not None and kq_minus_v > prev_minus_v:
                raise InternalContradiction("K_q count of the complement minus v_i increased")
            prev_minus_v = kq_minus_v
            a_v = build_A(state, v)
            options = []
            for y in a_v:
                if y == v:
                    continue
                new_s = (state.s_mask | 1 << v) & ~(1 << y)
                if num_cliques(g, p - 1, new_s) > state.kp1_count:
                    continue
                new_comp = g.full_mask & ~new_s
                copies = _kq_copies_through(g, y, q, new_comp)
                disjoint = all(not (c & k0) for c in copies)
                # prefer a y outside every K_q, then one whose K_q copies avoid K_q^0
                options.append(((len(copies) > 0, not disjoint, y), y, len(copies)))
            if not options:
                raise _Stalled(f"no y in A_{v} keeps the K_{p - 1} count")
            _, y, through = min(options)
            exchange_step(state, v, y)
            chain_steps += 1
            state.refresh()
            _check_invariants(state, size0, kp1_0, strict)
            new_comp = state.comp_mask
            rec = SwapRecord(
                step=state.step, v=v, y=y, a_v=a_v, b_prev=b_prev,
                kq_through_y=through, kq_minus_v=kq_minus_v,
                kq_count=state.kq_count, kp1_count=state.kp1_count,
            )
            if b_prev is None:
                # first swap of a chain: copies through y meet K_q^0 - v_0 in 0 or >= q-2 vertices
                rest0 = k0 & ~(1 << v)
                inter = max(
                    (kernels.popcount(c & rest0) for c in _kq_copies_through(g, y, q, new_comp)),
                    default=0,
                )
                rec.c3_intersection = inter
                if 0 < inter < q - 2:
                    raise InternalContradiction(f"K_q copies through y={y} meet K_q^0 in {inter}")
            state.history.append(rec)
            if not strict and _augment(state):
                size0 = kernels.popcount(state.s_mask)
                kp1_0 = state.kp1_count
                best_kq = state.kq_count
                break
            if state.kq_count < best_kq:
                best_kq = state.kq_count
                break
            if through == 0:
                raise InternalContradiction("y left every K_q yet the count did not drop")
            _check_f1(g, y, q, new_comp, through)
            b = build_B(state, y)
            used_y |= 1 << y
            nxt = [u for u in b if not used_y >> u & 1]
            if not nxt:
                raise _Stalled(f"B_{y} has no unused vertex")
            b_prev = b
            v = nxt[0]
    return state


def _greedy_seed(g: Graph, p: int) -> int:
    """Maximal K_p-free set: low-degree vertices first, then 1-out/2-in repairs."""
    s = 0
    for v in sorted(range(g.n), key=lambda u: (g.degree(u), u)):
        if not has_clique(g, p - 1, s & g.masks[v]):
            s |= 1 << v
    improved = True
    while improved:
        improved = False
        for out in mask_to_list(s):
            base = s & ~(1 << out)
            outside = mask_to_list(g.full_mask & ~s & ~(1 << out))
            addable = [u for u in outside if not has_clique(g, p - 1, base & g.masks[u])]
            for i, a in enumerate(addable):
                s2 = base | 1 << a
                for b in addable[i + 1:]:
                    if not has_clique(g, p - 1, s2 & g.masks[b]):
                        s = s2 | 1 << b
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
    return s


def kpfree_family(g: Graph, p: int, budget: SearchBudget = DEFAULT_BUDGET) -> tuple[int, list[int]]:
    """Maximum K_p-free sets with the fewest K_{p-1} copies: (size, masks)."""
    res = exact_max_kpfree(g, p, budget, collect=FAMILY_LIMIT)
    if res.count > len(res.optima):
        raise BudgetExceeded(f"{res.count} maximum K_{p}-free sets exceed the family limit")
    counts = [num_cliques(g, p - 1, s) for s in res.optima]
    low = min(counts)
    return res.size, [s for s, c in zip(res.optima, counts) if c == low]


def _seed_from_family(g: Graph, family: list[int], q: int, mode: str) -> int:
    if mode == "first":
        return family[0]
    kq = [num_cliques(g, q, g.full_mask & ~s) for s in family]
    pick = min if mode == "min-kq" else max
    target = pick(kq)
    return family[kq.index(target)]


def max_kpfree_partition(
    g: Graph,
    p: int,
    q: int,
    seed: str = "min-kq",
    budget: SearchBudget = DEFAULT_BUDGET,
    exact_threshold: int = EXACT_THRESHOLD,
    iteration_cap: int | None = None,
) -> Partition:
    """Class 1 a maximum K_p-free set, class 2 K_q-free.

    ``seed`` picks the starting member of the minimum-K_{p-1} family:
    ``min-kq`` (fewest K_q in the complement), ``first`` or ``max-kq``; the
    latter two exist to exercise the exchange chain. Above
    ``exact_threshold`` vertices the start is greedy and class 1 is flagged
    best-effort (``meta["maximum_certified"] = False``).
    """
    if seed not in SEED_MODES:
        raise InputError(f"seed must be one of {SEED_MODES}, got {seed!r}")
    if p < 3 or q < 3:
        raise InputError(f"need p >= 3 and q >= 3, got ({p}, {q})")
    delta = g.max_degree
    if delta < 5:
        raise InputError(f"need Delta >= 5, got {delta}")
    if p + q != delta + 1:
        raise InputError(f"need p + q = Delta + 1 = {delta + 1}, got {p + q}")
    if not g.is_connected():
        raise InputError("max_kpfree_partition needs a connected graph")
    omega = clique_number(g)
    if omega != p:
        raise InputError(f"need omega = p = {p}, got omega = {omega}")

    exact = g.n <= exact_threshold
    family: list[int] = []
    if exact:
        size, family = kpfree_family(g, p, budget)
        s0 = _seed_from_family(g, family, q, seed)
    else:
        s0 = _greedy_seed(g, p)
        size = kernels.popcount(s0)
    state = ExchangeState(g=g, p=p, q=q, s_mask=s0, iteration_cap=iteration_cap or g.n * q)
    meta: dict[str, Any] = {"maximum_certified": exact, "seed": seed, "seed_set": mask_to_list(s0),
                            "start_kq": state.kq_count, "start_kp1": state.kp1_count}
    fallback = None
    try:
        run_exchange(state, strict=exact)
        s_final = state.s_mask
    except _Stalled as exc:
        fallback = str(exc)
        log.info("exchange stalled (%s); exact search over the family", exc)
        if not family:
            budget.check_bnb(g.n)
            size, family = kpfree_family(g, p, budget)
        s_final = _seed_from_family(g, family, q, "min-kq")
        if num_cliques(g, q, g.full_mask & ~s_final):
            raise InternalContradiction(
                "every minimum-K_{p-1} maximum K_p-free set leaves a K_q; omega must exceed p"
            ) from exc
    meta["chains"] = state.chains
    meta["swaps"] = len(state.history)
    if fallback:
        meta["fallback_reason"] = fallback
    classes = [mask_to_list(s_final), mask_to_list(g.full_mask & ~s_final)]
    certify(g, classes, (p, q))
    if exact and len(classes[0]) != size:
        raise InternalContradiction("class 1 lost maximality")
    meta["class1_size"] = len(classes[0])
    return Partition(
        parts=(p, q), classes=classes, certified=True, fallback_used=fallback is not None,
        trace=[r.to_json() for r in state.history], meta=meta,
    )
