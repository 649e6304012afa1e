import pytest

from checks import replay
from corpora import exchange_corpus, trace_corpus
from kpfree.cliques import clique_number, is_kp_free
from kpfree.errors import ContractViolation, InputError, InternalContradiction
from kpfree.generators import complete, cycle, strong_product
from kpfree.graph import Graph
from kpfree.oracle import exact_max_kpfree
from kpfree.partition import exchange
from kpfree.partition.exchange import (
    SEED_MODES,
    ExchangeState,
    build_A,
    build_B,
    max_kpfree_partition,
)


def state(g, s, p=3, q=3):
    return ExchangeState.from_set(g, s, p, q)


class TestBuildA:
    def test_unique_clique(self):
        g = complete(3)
        assert build_A(state(g, [1, 2]), 0) == [0, 1, 2]

    def test_two_cliques_sharing_p_minus_1(self):
        # triangles {0,1,2} and {0,1,3} through v=0
        g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
        assert build_A(state(g, [1, 2, 3]), 0) == [0, 1]

    def test_cliques_meeting_only_at_v(self):
        g = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)])
        with pytest.raises(ContractViolation, match="share only"):
            build_A(state(g, [1, 2, 3, 4]), 0)

    def test_no_clique_through_v(self):
        g = Graph(3, [(0, 1), (0, 2)])
        with pytest.raises(ContractViolation, match="not maximal"):
            build_A(state(g, [1, 2]), 0)

    def test_too_few_neighbours(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(ContractViolation):
            build_A(state(g, [1, 2]), 0)

    def test_v_in_s(self):
        with pytest.raises(InputError):
            build_A(state(complete(3), [1, 2]), 1)


class TestBuildB:
    def test_single_copy(self):
        g = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
        assert build_B(state(g, [3, 4]), 0) == [0, 1, 2]

    def test_clique_component(self):
        g = Graph(6, [(u, v) for u in range(4) for v in range(u + 1, 4)] + [(4, 5)])
        assert build_B(state(g, [4, 5]), 0) == [0, 1, 2, 3]

    def test_three_copies_without_component(self):
        g = Graph(6, [(u, v) for u in range(4) for v in range(u + 1, 4)] + [(1, 4), (4, 5)])
        with pytest.raises(ContractViolation, match="3 copies"):
            build_B(state(g, [5]), 0)

    def test_no_copy(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(ContractViolation):
            build_B(state(g, [2]), 0)

    def test_y_in_s(self):
        with pytest.raises(InputError):
            build_B(state(complete(3), [1]), 1)


def pq(g):
    w = clique_number(g)
    return w, g.max_degree + 1 - w


@pytest.mark.parametrize("mode", SEED_MODES)
def test_corpus_slice_matches_oracle(mode):
    for g in exchange_corpus()[::7]:
        p, q = pq(g)
        part = max_kpfree_partition(g, p, q, seed=mode)
        assert len(part.classes[0]) == exact_max_kpfree(g, p).size
        assert is_kp_free(g, part.classes[1], q)
        replay(g, p, q, part)


def test_trace_corpus_really_swaps():
    total = 0
    for g in trace_corpus():
        p, q = pq(g)
        part = max_kpfree_partition(g, p, q, seed="max-kq")
        assert part.meta["start_kq"] > 0 and part.meta["swaps"] > 0
        assert not part.fallback_used
        replay(g, p, q, part)
        total += part.meta["swaps"]
    assert total >= len(trace_corpus())


def test_min_kq_seed_never_needs_swaps():
    for g in exchange_corpus()[::5]:
        p, q = pq(g)
        part = max_kpfree_partition(g, p, q)
        assert part.meta["start_kq"] == 0 and part.meta["swaps"] == 0


def test_broken_swap_aborts(monkeypatch):
    g = trace_corpus()[0]
    p, q = pq(g)

    def bad_step(st, v, y):
        st.s_mask |= 1 << v  # forgets to drop y
        st.step += 1

    monkeypatch.setattr(exchange, "exchange_step", bad_step)
    with pytest.raises(InternalContradiction) as exc:
        max_kpfree_partition(g, p, q, seed="max-kq")
    assert exc.value.exit_code == 4


def test_iteration_cap_falls_back_to_family():
    g = trace_corpus()[0]
    p, q = pq(g)

    def stall(st, strict=True):
        raise exchange._Stalled("forced")

    part_ok = max_kpfree_partition(g, p, q, seed="max-kq")
    orig = exchange.run_exchange
    try:
        exchange.run_exchange = stall
        part = max_kpfree_partition(g, p, q, seed="max-kq")
    finally:
        exchange.run_exchange = orig
    assert part.fallback_used and part.meta["fallback_reason"] == "forced"
    assert len(part.classes[0]) == len(part_ok.classes[0])
    assert is_kp_free(g, part.classes[1], q)


def test_greedy_start_beyond_threshold():
    for g in exchange_corpus()[:10]:
        p, q = pq(g)
        part = max_kpfree_partition(g, p, q, exact_threshold=0)
        assert part.meta["maximum_certified"] is False
        assert is_kp_free(g, part.classes[0], p) and is_kp_free(g, part.classes[1], q)
        assert len(part.classes[0]) <= exact_max_kpfree(g, p).size


def test_clique_with_pendants():
    # K_3 whose vertex 0 carries three leaves: Delta = 5, omega = 3
    g = Graph(6, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (0, 5)])
    part = max_kpfree_partition(g, 3, 3)
    assert len(part.classes[0]) == 5 == exact_max_kpfree(g, 3).size


@pytest.mark.parametrize(
    "g, p, q, match",
    [
        (Graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
               + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]), 3, 3, "Delta >= 5"),
        (strong_product(cycle(7), complete(2)), 3, 3, "omega"),
        (strong_product(cycle(7), complete(2)), 4, 3, "p \\+ q"),
        (Graph(12, complete(6).edges() + [(u + 6, v + 6) for u, v in complete(6).edges()]),
         3, 3, "connected"),
    ],
)
def test_preconditions(g, p, q, match):
    with pytest.raises(InputError, match=match):
        max_kpfree_partition(g, p, q)


def test_bad_seed_mode():
    g = trace_corpus()[0]
    with pytest.raises(InputError):
        max_kpfree_partition(g, *pq(g), seed="best")


CHAIN_EDGES = [
    (0, 1), (0, 2), (0, 4), (0, 7), (0, 8), (1, 4), (1, 5), (1, 8), (1, 9), (2, 3), (2, 4),
    (2, 6), (2, 7), (3, 5), (3, 6), (3, 7), (3, 8), (4, 6), (4, 9), (5, 6), (5, 7), (5, 9),
    (6, 9), (7, 8), (8, 9),
]


def test_two_step_chain_through_b():
    # a maximal (not maximum) start where the first swap leaves y in one triangle
    g = Graph(10, CHAIN_EDGES)
    st = ExchangeState.from_set(g, [2, 6, 7, 8, 9], 3, 3)
    assert st.kq_count == 1
    exchange.run_exchange(st, strict=False)
    assert [(r.v, r.y) for r in st.history] == [(0, 7), (3, 2)]
    first, second = st.history
    assert first.kq_through_y == 1 and first.kq_count == 1 and first.c3_intersection == 0
    assert second.b_prev == [3, 5, 7] and second.kq_count == 0
    assert st.kq_count == 0 and is_kp_free(g, st.s, 3)


@pytest.mark.parametrize("g", exchange_corpus()[::9])
def test_random_maximal_seeds_never_contradict(g):
    import random

    p, q = pq(g)
    for seed in range(4):
        order = list(range(g.n))
        random.Random(seed).shuffle(order)
        s = 0
        for v in order:
            if not is_kp_free(g, [u for u in range(g.n) if s >> u & 1] + [v], p):
                continue
            s |= 1 << v
        st = ExchangeState(g=g, p=p, q=q, s_mask=s)
        size0, kp1_0 = len(st.s), st.kp1_count
        try:
            exchange.run_exchange(st, strict=False)
        except exchange._Stalled:
            continue
        assert st.kq_count == 0
        assert is_kp_free(g, st.s, p) and len(st.s) >= size0
        if len(st.s) == size0:
            assert st.kp1_count <= kp1_0
