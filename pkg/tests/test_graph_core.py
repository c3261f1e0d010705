"""Core graph kernels checked against slow, obviously-correct oracles."""

from __future__ import annotations

import numpy as np
import pytest

from shortcutforge.graph_core import (
    MAX_VERTICES,
    Digraph,
    WeightedDigraph,
    apsp,
    bounded_reachability,
    condense,
    dump_edge_list,
    hop_limited_dist,
    is_acyclic,
    lift_shortcuts,
    load_edge_list,
    scc_star_edges,
    transitive_closure,
    unit_weights,
    weighted_closure,
)


def closure_oracle(g: Digraph) -> np.ndarray:
    """Reflexive-transitive closure by per-vertex DFS over adjacency lists."""
    adj = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
    out = np.zeros((g.n, g.n), dtype=bool)
    for s in range(g.n):
        stack = [s]
        seen = {s}
        while stack:
            u = stack.pop()
            out[s, u] = True
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return out


def bellman_ford_oracle(g: WeightedDigraph) -> np.ndarray:
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for _ in range(max(0, g.n - 1)):
        for u, v, w in g.edges:
            dist[:, v] = np.minimum(dist[:, v], dist[:, u] + w)
    return dist


def hop_dp_oracle(g: WeightedDigraph, beta: int) -> np.ndarray:
    """dist with at most beta edges, by the textbook per-round relaxation."""
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for _ in range(beta):
        nxt = dist.copy()
        for u, v, w in g.edges:
            nxt[:, v] = np.minimum(nxt[:, v], dist[:, u] + w)
        dist = nxt
    return dist


def random_digraph(n: int, p: float, rng: np.random.Generator) -> Digraph:
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    return Digraph(n, ((int(u), int(v)) for u, v in np.argwhere(mask)))


def random_weighted(n: int, p: float, w_max: int, rng: np.random.Generator) -> WeightedDigraph:
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    pairs = np.argwhere(mask)
    weights = rng.integers(1, w_max + 1, size=len(pairs))
    return WeightedDigraph(
        n, ((int(u), int(v), int(w)) for (u, v), w in zip(pairs, weights))
    )


class TestClosure:
    def test_against_dfs_oracle(self):
        rng = np.random.default_rng(101)
        for _ in range(50):
            g = random_digraph(32, float(rng.uniform(0.02, 0.3)), rng)
            got = transitive_closure(g).bits
            assert np.array_equal(got, closure_oracle(g))

    def test_empty_and_single(self):
        assert transitive_closure(Digraph(1, [])).bits.tolist() == [[True]]
        g = Digraph(2, [(0, 1)])
        assert transitive_closure(g).has(0, 1)
        assert not transitive_closure(g).has(1, 0)

    def test_idempotent(self):
        rng = np.random.default_rng(7)
        g = random_digraph(24, 0.1, rng)
        bits = transitive_closure(g).bits
        pairs = [(int(u), int(v)) for u, v in np.argwhere(bits) if u != v]
        again = transitive_closure(Digraph(g.n, pairs)).bits
        assert np.array_equal(bits, again)

    def test_bounded_reachability_matches_bfs_levels(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            g = random_digraph(20, 0.12, rng)
            hops = hop_limited_dist(unit_weights(g), g.n).dist
            for r in (1, 2, 3, 7):
                got = bounded_reachability(g, r).bits
                want = hops <= r
                assert np.array_equal(got, want), f"radius {r}"

    def test_bounded_reachability_monotone_in_radius(self):
        g = random_digraph(25, 0.08, np.random.default_rng(3))
        prev = bounded_reachability(g, 1).bits
        for r in (2, 4, 9):
            cur = bounded_reachability(g, r).bits
            assert (prev <= cur).all()
            prev = cur


class TestCondense:
    def test_dag_is_fixed_point(self):
        rng = np.random.default_rng(5)
        order = rng.permutation(18)
        edges = [
            (int(order[i]), int(order[j]))
            for i in range(18)
            for j in range(i + 1, 18)
            if rng.random() < 0.2
        ]
        g = Digraph(18, edges)
        cond = condense(g)
        assert cond.dag.n == g.n
        assert all(len(m) == 1 for m in cond.representatives)
        # dag ids are topological: every edge goes low -> high
        assert all(a < b for a, b in cond.dag.edges)

    def test_components_match_closure_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            g = random_digraph(20, 0.12, rng)
            reach = closure_oracle(g)
            same = reach & reach.T
            cond = condense(g)
            for u in range(g.n):
                for v in range(g.n):
                    assert (cond.component_of[u] == cond.component_of[v]) == bool(
                        same[u, v]
                    )

    def test_two_cycles_and_bridge(self):
        # 0-1-2 cycle -> 3 -> 4-5-6 cycle
        g = Digraph(
            7,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)],
        )
        cond = condense(g)
        assert cond.dag.n == 3
        stars = scc_star_edges(g, cond)
        assert len(stars) <= 2 * (g.n - cond.dag.n)
        assert is_acyclic(cond.dag)


class TestLift:
    def test_lifted_set_bounds_and_diameter(self):
        g = Digraph(
            7,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)],
        )
        cond = condense(g)
        h_plus = frozenset({(0, 1)}) if (0, 1) in set(cond.dag.edges) else frozenset()
        lifted = lift_shortcuts(g, cond, h_plus)
        assert len(lifted) <= len(h_plus) + 2 * (g.n - cond.dag.n)
        union = Digraph(g.n, set(g.edges) | set(lifted))
        base = transitive_closure(g).bits
        assert np.array_equal(transitive_closure(union).bits, base)

    def test_rejects_non_closure_pairs(self):
        g = Digraph(4, [(0, 1), (2, 3)])
        cond = condense(g)
        with pytest.raises(ValueError):
            lift_shortcuts(g, cond, frozenset({(1, 0)}))


class TestDistances:
    def test_apsp_against_bellman_ford(self):
        rng = np.random.default_rng(41)
        for _ in range(15):
            g = random_weighted(40, 0.1, 10, rng)
            assert np.array_equal(apsp(g).dist, bellman_ford_oracle(g))

    def test_hop_limited_against_dp(self):
        rng = np.random.default_rng(43)
        for _ in range(12):
            g = random_weighted(16, 0.2, 9, rng)
            for beta in (1, 2, 3, 5):
                got = hop_limited_dist(g, beta).dist
                assert np.array_equal(got, hop_dp_oracle(g, beta)), f"beta={beta}"

    def test_hop_limit_converges_to_apsp(self):
        g = random_weighted(30, 0.15, 7, np.random.default_rng(47))
        assert np.array_equal(hop_limited_dist(g, g.n).dist, apsp(g).dist)

    def test_weighted_closure_weights_are_distances(self):
        g = random_weighted(20, 0.15, 6, np.random.default_rng(53))
        wc = weighted_closure(g)
        dist = apsp(g).dist
        for u, v, w in wc.edges:
            assert w == dist[u, v]


class TestEdgeListIO:
    def test_roundtrip_unweighted(self):
        g = random_digraph(12, 0.25, np.random.default_rng(61))
        text = dump_edge_list(g, comments=["roundtrip check"])
        report = load_edge_list(text)
        assert report.graph.edges == g.edges
        assert report.id_map is None

    def test_roundtrip_weighted(self):
        g = random_weighted(10, 0.3, 8, np.random.default_rng(67))
        report = load_edge_list(dump_edge_list(g))
        assert report.graph.edges == g.edges

    def test_reindexes_sparse_ids(self):
        report = load_edge_list("3 2\n10 20\n20 30\n")
        assert report.id_map == {10: 0, 20: 1, 30: 2}
        assert report.graph.edges == frozenset({(0, 1), (1, 2)})

    def test_drops_self_loops_and_duplicates(self):
        report = load_edge_list("3 4\n0 1\n0 1\n1 1\n1 2\n")
        assert report.dropped_duplicates == 1
        assert report.dropped_self_loops == 1
        assert report.graph.m == 2

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("", "empty"),
            ("2\n", "header"),
            ("2 1\n0 x\n", "line 2"),
            ("2 2\n0 1\n", "m=2"),
            ("2 1 5\n0 1 9\n", "weight"),
        ],
    )
    def test_errors_carry_line_context(self, text, fragment):
        with pytest.raises(ValueError, match=fragment):
            load_edge_list(text)

    def test_vertex_cap(self):
        with pytest.raises(ValueError):
            Digraph(MAX_VERTICES + 1, [])
