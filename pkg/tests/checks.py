"""Independent re-checks of partitioner output, shared by several test modules."""

from kpfree.cliques import count_through_vertex, is_kp_free, num_cliques


def check_partition(g, classes, parts):
    assert sorted(v for c in classes for v in c) == list(range(g.n))
    for cls, p in zip(classes, parts):
        assert is_kp_free(g, cls, p)


def replay(g, p, q, part):
    """Re-run the recorded swaps and re-check every per-step claim from scratch."""
    s = set(part.meta["seed_set"])
    size = len(s)
    kp1 = num_cliques(g, p - 1, s)
    prev_minus_v = None
    for rec in part.trace:
        v, y = rec["v"], rec["y"]
        assert v not in s and y in s
        assert v in rec["a_v"] and y in rec["a_v"]
        if rec["b_prev"] is None:
            prev_minus_v = None
        else:
            assert v in rec["b_prev"]
        comp = set(range(g.n)) - s
        minus_v = num_cliques(g, q, comp - {v})
        assert minus_v == rec["kq_minus_v"]
        if prev_minus_v is not None:
            assert minus_v <= prev_minus_v
        prev_minus_v = minus_v
        s = (s - {y}) | {v}
        comp = set(range(g.n)) - s
        assert len(s) == size
        assert is_kp_free(g, s, p)
        assert num_cliques(g, p - 1, s) == kp1
        through = count_through_vertex(g, y, q, g.mask_of(comp))
        assert through == rec["kq_through_y"]
        assert through in {0, 1, 2, q}
        assert num_cliques(g, q, comp) == rec["kq_count"]
        if rec["c3_intersection"] is not None:
            assert rec["c3_intersection"] == 0 or rec["c3_intersection"] >= q - 2
    if not part.fallback_used:
        assert s == set(part.classes[0])
