from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loosehc.connect import (
    BipartiteHypergraph,
    ConnectRequest,
    build_aux_connection_hypergraph,
    connect_pairs,
    find_saturating_matching,
    haxell_check,
)
from loosehc.hgraph import Hypergraph3, complete, validate_loose_path

A2 = ("a1", "a2")


def bip(A, B, edges, ell):
    return BipartiteHypergraph(tuple(A), tuple(B), tuple(frozenset(e) for e in edges), ell)


class TestHaxell:
    def test_perfect_matching_passes(self):
        H = bip(A2, ("b1", "b2"), [("a1", "b1"), ("a2", "b2")], 2)
        assert haxell_check(H)
        m = find_saturating_matching(H)
        assert m and len(m.edges) == 2

    def test_shared_neighbour_violates(self):
        H = bip(A2, ("b1", "b2"), [("a1", "b1"), ("a2", "b1")], 2)
        res = haxell_check(H)
        assert res.status == "violation"
        assert set(res.A_prime) == set(A2) and res.B_prime == ("b1",)
        assert find_saturating_matching(H).status == "none"

    def test_three_uniform_single_vertex(self):
        H = bip(("a",), ("b1", "b2", "b3", "b4"), [("a", "b1", "b2"), ("a", "b3", "b4")], 3)
        assert haxell_check(H)

    def test_isolated_a_vertex_violates(self):
        H = bip(("a",), ("b",), [], 2)
        assert haxell_check(H).status == "violation"

    def test_budget(self):
        A = [f"a{i}" for i in range(5)]
        B = [f"b{i}" for i in range(15)]
        H = bip(A, B, [(a, b, c) for a in A for b, c in combinations(B, 2)], 3)
        assert haxell_check(H, budget=3).status == "unchecked"
        assert find_saturating_matching(H, budget=1).status == "timeout"

    def test_validation(self):
        with pytest.raises(ValueError):
            bip(("a",), ("a",), [], 2)
        with pytest.raises(ValueError):
            bip(("a", "c"), ("b",), [("a", "c")], 2)
        with pytest.raises(ValueError):
            bip(("a",), ("b", "c"), [("a", "b", "c")], 2)

    @given(st.integers(2, 3), st.integers(1, 4), st.integers(1, 9), st.data())
    def test_pass_implies_matching(self, ell, na, nb, data):
        A = [f"a{i}" for i in range(na)]
        B = [f"b{i}" for i in range(nb)]
        pool = [(a, *c) for a in A for c in combinations(B, ell - 1)]
        edges = data.draw(st.lists(st.sampled_from(pool), max_size=12, unique=True)) if pool else []
        H = bip(A, B, edges, ell)
        if haxell_check(H):
            assert find_saturating_matching(H)

    @given(st.integers(1, 4), st.integers(1, 6), st.data())
    def test_matching_matches_networkx(self, na, nb, data):
        import networkx as nx

        A = [f"a{i}" for i in range(na)]
        B = [f"b{i}" for i in range(nb)]
        edges = data.draw(st.lists(st.sampled_from([(a, b) for a in A for b in B]), unique=True))
        H = bip(A, B, edges, 2)
        g = nx.Graph(edges)
        g.add_nodes_from(A + B)
        M = nx.bipartite.maximum_matching(g, top_nodes=A)
        assert bool(find_saturating_matching(H)) == (len(M) // 2 == na)
        res = find_saturating_matching(H)
        if res:
            used = [v for e in res.edges for v in e]
            assert len(used) == len(set(used))


class TestConnect:
    def test_single_direct(self):
        G = Hypergraph3(3, [(0, 1, 2)])
        res = connect_pairs(G, ConnectRequest(((0, 2),), {1}))
        assert res and res.paths[0].vertices == (0, 1, 2)

    def test_two_pairs_in_complete(self):
        G = complete(9)
        req = ConnectRequest(((0, 1), (2, 3)), set(range(4, 9)))
        res = connect_pairs(G, req)
        assert res
        a, b = (set(p.vertices[1:-1]) for p in res.paths)
        assert not a & b and a | b <= req.reservoir

    def test_empty_graph_disproved(self):
        res = connect_pairs(Hypergraph3(6), ConnectRequest(((0, 1),), {2, 3, 4, 5}))
        assert res.status == "disproved" and res.failed_pair == 0

    def test_longer_path_when_direct_missing(self):
        G = Hypergraph3(5, [(0, 2, 3), (3, 4, 1)])
        res = connect_pairs(G, ConnectRequest(((0, 1),), {2, 3, 4}))
        assert res and res.paths[0].vertices == (0, 2, 3, 4, 1)
        assert not connect_pairs(G, ConnectRequest(((0, 1),), {2, 3, 4}, max_len=1))

    def test_deterministic(self):
        G = complete(10)
        req = ConnectRequest(((0, 1), (1, 2), (3, 4)), set(range(5, 10)))
        assert connect_pairs(G, req).paths == connect_pairs(G, req).paths

    def test_request_validation(self):
        with pytest.raises(ValueError):
            ConnectRequest(((0, 0),), {1})
        with pytest.raises(ValueError):
            ConnectRequest(((0, 1),), {1, 2})
        with pytest.raises(ValueError):
            ConnectRequest(((0, 1), (0, 2), (0, 3)), {4})
        with pytest.raises(ValueError):
            ConnectRequest(((0, 1),), {2}, max_len=5)
        with pytest.raises(ValueError):
            ConnectRequest(((0, 1), (2, 3)), {4, 5, 6}, epsilon=0.5)

    def test_structured_lengths(self):
        G = complete(12)
        parts = (frozenset({2, 3}), frozenset({4, 5, 6}), frozenset({7, 8}))
        res = connect_pairs(G, ConnectRequest(((0, 1),), set(range(2, 9)), structured=parts))
        assert res and res.paths[0].length == 4
        v = res.paths[0].vertices
        assert set(v[1:3]) <= parts[0] and set(v[3:6]) <= parts[1] and set(v[6:8]) <= parts[2]

    @given(st.integers(0, 10 ** 6), st.floats(0.1, 0.9))
    def test_solutions_are_valid(self, seed, p):
        from loosehc.models import ModelParams, sample_h3np

        G = sample_h3np(ModelParams(11, p, seed))
        req = ConnectRequest(((0, 1), (2, 3)), set(range(4, 11)), max_len=2)
        res = connect_pairs(G, req)
        if res:
            inner = [v for q in res.paths for v in q.vertices[1:-1]]
            assert len(inner) == len(set(inner)) and set(inner) <= req.reservoir
            for (x, y), q in zip(req.pairs, res.paths):
                assert q.start == x and q.end == y and validate_loose_path(G, q)
        else:
            assert res.status == "disproved"
            # exhaustive cross-check: no disjoint pair of short paths exists
            from loosehc.oracle import enumerate_loose_paths

            P1 = [q for q in enumerate_loose_paths(G, 0, 1, 2).paths if set(q.vertices[1:-1]) <= req.reservoir]
            P2 = [q for q in enumerate_loose_paths(G, 2, 3, 2).paths if set(q.vertices[1:-1]) <= req.reservoir]
            assert not any(set(a.vertices[1:-1]).isdisjoint(b.vertices[1:-1]) for a in P1 for b in P2)


class TestAux:
    def test_k7_single_pair(self):
        aux = build_aux_connection_hypergraph(complete(7), ConnectRequest(((0, 1),), {2, 3, 4}))
        assert len(aux.edges) == 3 and aux.ell == 2

    def test_empty_graph(self):
        aux = build_aux_connection_hypergraph(Hypergraph3(10), ConnectRequest(((0, 1),), set(range(2, 10))), d=1)
        assert aux.edges == ()

    def test_d2_definition(self):
        G = Hypergraph3(6, [(0, 2, 1), (0, 3, 4), (1, 5, 0)])
        aux = build_aux_connection_hypergraph(G, ConnectRequest(((0, 1),), {2, 3, 4, 5}))
        assert {w for e in aux.edges for w in e if not isinstance(w, tuple)} == {2, 5}

    def test_d1_edges_contain_a_path(self):
        G = complete(9)
        aux = build_aux_connection_hypergraph(G, ConnectRequest(((0, 1),), set(range(2, 9))), d=1)
        assert aux.ell == 8 and len(aux.edges) == 1  # only one 7-set of the 7 reservoir vertices
