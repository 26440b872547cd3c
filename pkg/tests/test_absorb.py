import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loosehc.absorb import (
    AbsorbError,
    AbsorberParams,
    AssemblyError,
    ContractionSpec,
    TemplateGraph,
    absorb,
    assemble_absorber,
    build_gadget_template,
    build_template,
    certify_contraction,
    contract,
    count_a2_embeddings,
    expansion_families,
    find_gadget_embedding,
    m3_density,
    verify_absorber,
    verify_template,
)
from loosehc.absorb.assembly import gadgets_sound
from loosehc.absorb.contraction import unfold_contracted_backbone
from loosehc.absorb.embed import check_gadget, count_a2_brute, embed_template
from loosehc.absorb.gadgets import full_abstract_a1, is_linear
from loosehc.absorb.template import perfect_matching
from loosehc.hgraph import Hypergraph3, complete, validate_loose_path
from loosehc.models import ModelParams, extremal_codegree, sample_h3np
from loosehc.oracle import enumerate_loose_paths


# helpers ---------------------------------------------------------------------
def random_linear(rng: np.random.Generator, v: int, e: int) -> Hypergraph3:
    edges: list[frozenset] = []
    for _ in range(200):
        if len(edges) == e:
            break
        t = frozenset(int(x) for x in rng.choice(v, 3, replace=False))
        if all(len(t & f) <= 1 for f in edges):
            edges.append(t)
    return Hypergraph3(v, [tuple(sorted(t)) for t in edges])


def naive_m3(H: Hypergraph3) -> Fraction:
    if H.n < 4:
        return Fraction(0)
    best = None
    for k in range(4, H.n + 1):
        for S in itertools.combinations(range(H.n), k):
            s = set(S)
            e = sum(1 for f in H.edges if s.issuperset(f))
            r = Fraction(e - 1, k - 3)
            best = r if best is None else max(best, r)
    return best


def template_graph(kind):
    tpl = build_gadget_template(kind)
    H, idx = tpl.as_hypergraph()
    return tpl, H, idx


# gadgets ---------------------------------------------------------------------
class TestGadgets:
    def test_a2_shape_and_routes(self):
        tpl, H, idx = template_graph("A2")
        assert len(tpl.vertices) == 9 and len(tpl.edges) == 5 and is_linear(tpl.edges)
        cov = [idx[v] for v in tpl.covering_path]
        skip = [idx[v] for v in tpl.noncovering_path]
        assert validate_loose_path(H, cov) and validate_loose_path(H, skip)
        assert cov[0] == skip[0] == idx["v1"] and cov[-1] == skip[-1] == idx["v7"]
        assert set(cov) - set(skip) == {idx["x"], idx["y"]} and set(skip) <= set(cov)

    def test_a2_routes_are_enumerated_paths(self):
        tpl, H, idx = template_graph("A2")
        found = {p.vertices for p in enumerate_loose_paths(H, idx["v1"], idx["v7"], 4).paths}
        assert tuple(idx[v] for v in tpl.covering_path) in found
        assert tuple(idx[v] for v in tpl.noncovering_path) in found

    def test_contracted_backbone_shape(self):
        tpl = build_gadget_template("contracted_backbone")
        assert len(tpl.vertices) == 25 and len(tpl.edges) == 15

    def test_full_a1_routes(self):
        H, idx, cover, skip = full_abstract_a1()
        assert validate_loose_path(H, cover) and validate_loose_path(H, skip)
        assert set(cover) - set(skip) == {idx["x"], idx["y"]}
        assert len(cover) == H.n

    def test_json_roundtrip_and_bad_kind(self):
        tpl = build_gadget_template("A2")
        assert json.loads(tpl.to_json())["kind"] == "A2"
        with pytest.raises(ValueError):
            build_gadget_template("A3")

    def test_nonlinear_rejected(self):
        from loosehc.absorb import GadgetTemplate

        with pytest.raises(ValueError):
            GadgetTemplate("bad", ("a", "b", "c", "d"), (("a", "b", "c"), ("a", "b", "d")))


# m3 density -------------------------------------------------------------------
class TestDensity:
    @pytest.mark.parametrize("kind", ["A2", "contracted_backbone"])
    def test_gadgets_two_thirds(self, kind):
        _, H, _ = template_graph(kind)
        res = m3_density(H)
        assert res.value == Fraction(2, 3) and str(res) == "2/3"

    def test_a2_attained_by_whole(self):
        _, H, _ = template_graph("A2")
        assert len(m3_density(H).edges) == 5

    def test_single_edge_with_isolated_vertex(self):
        assert m3_density(Hypergraph3(4, [(0, 1, 2)])).value == 0

    def test_tiny_and_too_large(self):
        assert m3_density(Hypergraph3(3, [(0, 1, 2)])).value == 0
        with pytest.raises(ValueError):
            m3_density(complete(7))

    @settings(max_examples=100)
    @given(st.integers(4, 10), st.integers(0, 8), st.integers(0, 10 ** 6))
    def test_matches_vertex_subset_bruteforce(self, v, e, seed):
        H = random_linear(np.random.default_rng(seed), v, e)
        assert m3_density(H).value == naive_m3(H)

    @given(st.integers(0, 10 ** 6))
    def test_gluing_at_one_vertex(self, seed):
        rng = np.random.default_rng(seed)
        H1 = random_linear(rng, 6, 4)
        H2 = random_linear(rng, 6, 4)
        # identify vertex 0 of both copies
        shift = {0: 0, **{i: i + 5 for i in range(1, 6)}}
        H = Hypergraph3(11, list(H1.edges) + [tuple(shift[x] for x in f) for f in H2.edges])
        bound = max(m3_density(H1).value, m3_density(H2).value, Fraction(1, 2))
        assert m3_density(H).value <= bound


# contraction --------------------------------------------------------------------
def naive_contract_edges(G, spec):
    kept = sorted(spec.U1 | spec.U2)
    names = [("vertex", v) for v in kept] + [("tuple", i) for i in range(len(spec.F))]
    idx = {p: i for i, p in enumerate(names)}
    out = set()
    for a, b, c in itertools.combinations(kept, 3):
        if G.has_edge(a, b, c):
            out.add(frozenset(idx[("vertex", x)] for x in (a, b, c)))
    for i, w in enumerate(spec.F):
        for side, anchor in ((spec.U1, w[1]), (spec.U2, w[3])):
            for u, v in itertools.combinations(sorted(side), 2):
                if G.has_edge(anchor, u, v):
                    out.add(frozenset({idx[("tuple", i)], idx[("vertex", u)], idx[("vertex", v)]}))
    return out


def random_spec(rng, n):
    perm = [int(v) for v in rng.permutation(n)]
    k = int(rng.integers(0, n // 8 + 1))
    F = [tuple(perm[4 * i : 4 * i + 4]) for i in range(k)]
    rest = perm[4 * k :]
    cut = int(rng.integers(0, len(rest) + 1))
    return ContractionSpec(frozenset(rest[:cut]), frozenset(rest[cut:]), tuple(F))


class TestContraction:
    def test_empty_family_is_induced(self):
        G = sample_h3np(ModelParams(12, 0.3, 1))
        spec = ContractionSpec(frozenset(range(5)), frozenset(range(5, 9)), ())
        res = contract(G, spec)
        assert res.graph.num_edges == G.induced(range(9)).num_edges

    def test_side_rule(self):
        # tuple (4,5,6,7); w2=5 with U1 pair {0,1}; w4=7 with U1 pair {2,3} must not count
        G = Hypergraph3(10, [(5, 0, 1), (7, 2, 3), (7, 8, 9)])
        spec = ContractionSpec(frozenset({0, 1, 2, 3}), frozenset({8, 9}), ((4, 5, 6, 7),))
        res = contract(G, spec)
        w = res.tuple_vertex(0)
        assert res.graph.has_edge(w, res.vertex_of(0), res.vertex_of(1))
        assert not res.graph.has_edge(w, res.vertex_of(2), res.vertex_of(3))
        assert res.graph.has_edge(w, res.vertex_of(8), res.vertex_of(9))

    def test_degree_transfer(self):
        G = sample_h3np(ModelParams(14, 0.5, 2))
        U1 = frozenset(range(6))
        spec = ContractionSpec(U1, frozenset(range(6, 10)), ((10, 11, 12, 13),))
        res = contract(G, spec)
        w = res.tuple_vertex(0)
        inside = {res.vertex_of(u) for u in U1}
        deg_w = sum(1 for e in res.graph.incident(w) if set(e) - {w} <= inside)
        assert deg_w == sum(1 for u, v in itertools.combinations(sorted(U1), 2) if G.has_edge(11, u, v))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            ContractionSpec(frozenset({1}), frozenset({1}), ())
        with pytest.raises(ValueError):
            ContractionSpec(frozenset({1}), frozenset({2}), ((1, 3, 4, 5),))
        with pytest.raises(ValueError):
            ContractionSpec(frozenset(), frozenset(), ((3, 3, 4, 5),))
        with pytest.raises(ValueError):
            contract(complete(5), ContractionSpec(frozenset({9}), frozenset(), ()))

    @settings(max_examples=100)
    @given(st.integers(8, 30), st.floats(0.05, 0.4), st.integers(0, 10 ** 6))
    def test_exact_against_definition(self, n, p, seed):
        G = sample_h3np(ModelParams(n, p, seed))
        spec = random_spec(np.random.default_rng(seed), n)
        res = contract(G, spec)
        assert certify_contraction(G, spec, res) == []
        assert {frozenset(e) for e in res.graph.edges} == naive_contract_edges(G, spec)

    def test_unfold_planted_backbone(self):
        tpl = build_gadget_template("backbone1")
        lab = list(tpl.vertices)
        idx = {v: i for i, v in enumerate(lab)}
        noise = sample_h3np(ModelParams(len(lab), 0.02, 5))
        G = Hypergraph3(len(lab), [tuple(idx[v] for v in e) for e in tpl.edges]).with_edges(noise.edges)
        U1 = frozenset(idx[v] for v in ("a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"))
        U2 = frozenset(idx[f"{s}{i}"] for s in "xy" for i in range(7, 11)) | frozenset(idx[f"v{i}"] for i in range(1, 8))
        F = tuple(tuple(idx[f"{s}{i}"] for i in (1, 2, 5, 6)) for s in "xy")
        spec = ContractionSpec(U1, U2, F)
        res = contract(G, spec)
        assert certify_contraction(G, spec, res) == []
        ctpl = build_gadget_template("contracted_backbone")
        found, _ = embed_template(res.graph, ctpl, {"x'": res.tuple_vertex(0), "y'": res.tuple_vertex(1)})
        assert found
        via = {0: (idx["x3"], idx["x4"]), 1: (idx["y3"], idx["y4"])}
        out = unfold_contracted_backbone(G, spec, res, found.mapping, idx["x"], idx["y"], via)
        assert all(G.has_edge(*(out[v] for v in e)) for e in tpl.edges)

    def test_expansion_families(self):
        K = complete(20)
        G = K.without_edges([e for e in K.incident(0) if set(e) not in ({0, 1, 2}, {0, 3, 4})])
        fam = expansion_families(G, 0, range(20))
        assert fam.pairs == [(1, 2), (3, 4)]
        used = [v for p in fam.pairs for v in p] + [v for t in fam.tuples for v in t]
        assert len(used) == len(set(used)) and 0 not in used
        for (u, v), t in zip(fam.via, fam.tuples):
            assert G.has_edge(u, t[0], t[1]) and G.has_edge(v, t[2], t[3])
        assert fam.pairs and fam.tuples


# templates ---------------------------------------------------------------------
class TestTemplates:
    def test_path_on_four(self):
        T = TemplateGraph(4, ((0, 1), (1, 2), (2, 3)), (0, 3))
        rep = verify_template(T)
        assert rep and rep.checked == 1

    def test_adversarial_failure(self):
        T = TemplateGraph(7, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)), (0, 3, 6))
        rep = verify_template(T)
        assert not rep and rep.failures and rep.skipped_parity == 1

    def test_exact_small(self):
        T = build_template(4, "exact_small")
        assert T.num_vertices == 8 and verify_template(T)

    @pytest.mark.parametrize("m,v,e", [(1, 2, 1), (2, 2, 1), (3, 4, 2), (4, 4, 2), (5, 5, 5), (6, 7, 7)])
    def test_compact_sizes(self, m, v, e):
        T = build_template(m, "compact")
        assert (T.num_vertices, len(T.edges)) == (v, e) and verify_template(T)

    def test_random_bounded(self):
        T = build_template(8, "random_bounded_degree", seed=1)
        assert verify_template(T) and verify_template(T, "sampled", 200, seed=2)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            build_template(0)
        with pytest.raises(ValueError):
            build_template(13, "exact_small")
        with pytest.raises(ValueError):
            TemplateGraph(3, ((0, 0),), (0,))

    def test_perfect_matching_helper(self):
        T = build_template(3, "exact_small")
        M = perfect_matching(T, [0, 1])
        assert M is not None and len(M) == 2
        assert perfect_matching(T, [0]) is None


# embedding ----------------------------------------------------------------------
class TestEmbedding:
    def test_k9_count(self):
        assert count_a2_embeddings(complete(9), 0, 1) == 5040

    def test_empty_and_limits(self):
        assert count_a2_embeddings(Hypergraph3(9), 0, 1) == 0
        with pytest.raises(ValueError):
            count_a2_embeddings(complete(17), 0, 1)
        with pytest.raises(ValueError):
            count_a2_embeddings(complete(9), 2, 2)
        res, emb = find_gadget_embedding(Hypergraph3(12), "A2", 0, 1)
        assert res.status == "exhausted" and emb is None

    @pytest.mark.parametrize("xy", [(5, 7), (0, 5)])
    def test_bruteforce_on_extremal(self, xy):
        G = extremal_codegree(12)
        assert count_a2_embeddings(G, *xy) == count_a2_brute(G, *xy)

    def test_bruteforce_on_random(self):
        G = sample_h3np(ModelParams(11, 0.5, 4))
        assert count_a2_embeddings(G, 0, 1) == count_a2_brute(G, 0, 1)

    def test_isolating_a_vertex(self):
        G = sample_h3np(ModelParams(11, 0.6, 9))
        w = 10
        cut = G.without_edges(G.incident(w))
        sub = G.induced(range(10))
        assert count_a2_embeddings(G, 0, 1) >= count_a2_embeddings(cut, 0, 1) >= count_a2_embeddings(sub, 0, 1)

    def test_a2_found_in_complete(self):
        G = complete(11)
        res, emb = find_gadget_embedding(G, "A2", 3, 8, forbidden={0})
        assert res and check_gadget(G, emb, 3, 8) and 0 not in emb.vertices

    def test_a1_found(self):
        G = complete(60)
        res, emb = find_gadget_embedding(G, "A1", 0, 1, rng=np.random.default_rng(0))
        assert res and check_gadget(G, emb, 0, 1)
        assert len(emb.covering) == 41 and len(emb.noncovering) == 39

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            find_gadget_embedding(complete(9), "A7", 0, 1)
        with pytest.raises(ValueError):
            find_gadget_embedding(complete(9), "A2", 0, 1, forbidden={0})


# assembly ---------------------------------------------------------------------
def small_absorber(n=30, R=(0, 1, 2, 3), seed=0):
    G = complete(n)
    params = AbsorberParams(join="exact", join_lengths=(1,), seed=seed)
    return G, assemble_absorber(G, list(R), (), params)


class TestAssembly:
    def test_complete_exhaustive(self):
        G, asm = small_absorber()
        assert gadgets_sound(G, asm)
        assert len(asm.vertices) == asm.order
        rep = verify_absorber(asm, G)
        assert rep and rep.checked > 0

    def test_connect_mode(self):
        G = complete(72)
        params = AbsorberParams(seed=1)
        asm = assemble_absorber(G, list(range(6)), list(range(60, 72)), params)
        assert verify_absorber(asm, G)

    def test_empty_reservoir_degenerate(self):
        G = complete(10)
        asm = assemble_absorber(G, [], list(range(5, 10)))
        path = absorb(asm, [])
        assert validate_loose_path(G, path) and set(path) == asm.vertices
        assert verify_absorber(asm, G)

    def test_empty_graph_fails_at_gadgets(self):
        with pytest.raises(AssemblyError) as exc:
            assemble_absorber(Hypergraph3(40), [0, 1, 2, 3], (), AbsorberParams(join="exact", join_lengths=(1,)))
        assert exc.value.stage == "gadget"

    def test_capacity(self):
        with pytest.raises(AssemblyError) as exc:
            assemble_absorber(complete(40), list(range(6)), (), AbsorberParams(join="exact"))
        assert exc.value.stage == "capacity"

    def test_absorb_preconditions(self):
        _, asm = small_absorber()
        with pytest.raises((AbsorbError, ValueError)):
            absorb(asm, asm.R)
        with pytest.raises((AbsorbError, ValueError)):
            absorb(asm, [99])

    def test_mutation_detected(self):
        G, asm = small_absorber()
        g = asm.gadgets[0]
        v1, v2, v3 = (g.mapping[k] for k in ("v1", "v2", "v3"))
        broken = G.without_edges([(v1, v2, v3)])
        rep = verify_absorber(asm, broken)
        assert not rep and rep.failures
        assert not gadgets_sound(broken, asm)

    def test_json(self):
        _, asm = small_absorber()
        d = json.loads(asm.to_json())
        assert sorted(d["R"]) == sorted(asm.R)

    def test_sampled_mode(self):
        G, asm = small_absorber(seed=3)
        rep = verify_absorber(asm, G, "sampled", trials=20, seed=1)
        assert rep and rep.checked == 20
