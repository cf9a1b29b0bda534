from __future__ import annotations

import pytest

from spanlab import (
    Graph,
    build_hybrid,
    closest_pair_path,
    hybrid_params,
    path_is_valid,
    path_suffix,
    random_graph,
    size_bound,
)
from conftest import random_tree
from oracles import floyd_warshall

INF = float("inf")


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "k,t,t_prime,ell",
    [(2, 1, 0, 15), (3, 1, 1, 15), (5, 2, 2, 46)],
)
def test_hybrid_params_values(k, t, t_prime, ell):
    p = hybrid_params(k)
    assert (p.t, p.t_prime, p.suffix_len) == (t, t_prime, ell)


def test_hybrid_params_invariants():
    for k in range(2, 11):
        p = hybrid_params(k)
        assert p.t == k // 2
        assert p.t_prime == k - 1 - p.t
        assert p.t_prime <= p.t
        assert p.suffix_len == 7 * p.t + 8 * p.t * p.t
        assert p.suffix_len >= 2 * k - 1


def test_hybrid_params_rejects_small_k():
    with pytest.raises(ValueError):
        hybrid_params(1)


# ---------------------------------------------------------------------------
# path_suffix
# ---------------------------------------------------------------------------


def test_suffix_zero_is_empty():
    assert path_suffix([0, 1, 2], 0, anchor=2) == set()


def test_suffix_covers_whole_path():
    assert path_suffix([0, 1, 2], 9, anchor=2) == {(0, 1), (1, 2)}


def test_suffix_by_definition():
    assert path_suffix([0, 1, 2, 3], 2, anchor=3) == {(2, 3), (1, 2)}
    assert path_suffix([0, 1, 2, 3], 2, anchor=0) == {(0, 1), (1, 2)}


def test_suffix_rejects_interior_anchor():
    with pytest.raises(ValueError):
        path_suffix([0, 1, 2, 3], 2, anchor=1)


# ---------------------------------------------------------------------------
# closest_pair_path
# ---------------------------------------------------------------------------


def test_closest_pair_adjacent_clusters():
    # two triangles joined by edges (2,3) and (1,4): min-id closest pair is (1,4)
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3), (1, 4)])
    p = closest_pair_path(g, {0, 1, 2}, {3, 4, 5})
    assert p == [1, 4]


def test_closest_pair_equal_sets(cycle5):
    assert closest_pair_path(cycle5, {1, 3}, {1, 3}) == [1]


def test_closest_pair_path_graph_ends():
    g = Graph(5, [(i, i + 1) for i in range(4)])
    assert closest_pair_path(g, {0}, {4}) == [0, 1, 2, 3, 4]


def test_closest_pair_disconnected():
    g = Graph(4, [(0, 1), (2, 3)])
    assert closest_pair_path(g, {0, 1}, {2, 3}) is None


def test_closest_pair_matches_brute_force():
    for seed in (2, 6):
        g = random_graph(40, 0.08, seed)
        dist = floyd_warshall(g)
        c1, c2 = {1, 7, 13, 22}, {5, 9, 30, 38}
        best = min(
            (
                (dist[u1][u2], u1, u2)
                for u1 in sorted(c1)
                for u2 in sorted(c2)
                if dist[u1][u2] < INF
            ),
            default=None,
        )
        p = closest_pair_path(g, c1, c2)
        if best is None:
            assert p is None
        else:
            d, u1, u2 = best
            assert p[0] == u1 and p[-1] == u2
            assert len(p) - 1 == d
            assert path_is_valid(g, p)


# ---------------------------------------------------------------------------
# build_hybrid
# ---------------------------------------------------------------------------


def _two_regime_violations(g, edges, k):
    """Independent check of the stretch contract via the cubic oracle."""
    dg = floyd_warshall(g)
    dh = floyd_warshall(Graph(g.n, edges))
    bad = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if dg[u][v] == INF:
                continue
            limit = (2 * k - 1) * dg[u][v] if g.has_edge(u, v) else k * dg[u][v]
            if dh[u][v] > limit:
                bad += 1
    return bad


def test_trees_are_rebuilt_entirely():
    graphs = [
        Graph(6, [(i, i + 1) for i in range(5)]),
        Graph(7, [(0, i) for i in range(1, 7)]),
        random_tree(30, 3),
    ]
    for g in graphs:
        for k in (2, 3):
            sp = build_hybrid(g, k, seed=1)
            assert sp.edges == g.edges


def test_petersen_no_violations_any_seed(petersen):
    for seed in (1, 2, 3, 4, 5):
        sp = build_hybrid(petersen, 2, seed)
        assert _two_regime_violations(petersen, sp.edges, 2) == 0


def test_medium_random_graph_no_violations_and_size():
    g = random_graph(256, 0.05, 2)
    k = 3
    sp = build_hybrid(g, k, seed=2)
    from spanlab import hybrid_spec, verify_spanner

    rep = verify_spanner(g, sp, None, hybrid_spec(k))
    assert rep.ok
    assert sp.size <= 100 * size_bound("hybrid", g.n, k=k)


def test_deterministic_per_seed():
    g = random_graph(80, 0.1, 3)
    assert build_hybrid(g, 2, 5).edges == build_hybrid(g, 2, 5).edges


def test_suffix_both_is_a_superset():
    g = random_graph(80, 0.1, 3)
    base = build_hybrid(g, 2, 5)
    both = build_hybrid(g, 2, 5, suffix_both=True)
    assert base.edges <= both.edges


def test_meta_counts_consistent():
    g = random_graph(64, 0.1, 1)
    sp = build_hybrid(g, 2, 1)
    phases = sp.meta["phase_edges"]
    assert sp.size <= sum(phases.values())
    assert sp.size >= max(phases.values())
    assert sp.meta["size"] == sp.size
    assert sp.edges <= g.edges


def test_center_pairs_exact_within_budget():
    g = random_graph(96, 0.09, 4)
    sp = build_hybrid(g, 2, 4)
    ell = sp.meta["suffix_len"]
    t = sp.meta["t"]
    dg = floyd_warshall(g)
    dh = floyd_warshall(Graph(g.n, sp.edges))
    for zi in sp.meta["centers_low"]:
        for zj in sp.meta["centers_high"]:
            d = dg[zi][zj]
            if d == INF:
                continue
            if d <= ell:
                assert dh[zi][zj] == d
            else:
                assert dh[zi][zj] <= 2 * t * (d + 1) - ell
