import pytest

from loosehc.hgraph import Hypergraph3, complete, validate_loose_cycle
from loosehc.models import AdversaryStrategy, ModelParams, adversary_prune, extremal_codegree, sample_h3np
from loosehc.oracle import has_loose_hc
from loosehc.pipeline import (
    PipelineConfig,
    choose_plan,
    compact_template,
    find_loose_hc_pipeline,
    max_cover_paths,
    plan_absorber,
)


def pruned(n, p, seed):
    H = sample_h3np(ModelParams(n, p, seed))
    return adversary_prune(H, AdversaryStrategy("random_thinning", d=2, target_fraction=0.45, p=p), seed).graph


class TestPlanning:
    def test_cover_path_budget(self):
        assert [max_cover_paths(m) for m in (1, 3, 5, 7, 9)] == [-1, 0, 1, 2, 3]

    @pytest.mark.parametrize("n", [40, 60, 100, 120])
    def test_plan_parity(self, n):
        plan = choose_plan(n)
        assert plan is not None
        T = plan.template
        assert plan.absorber_order <= n
        assert (n - plan.absorber_order - plan.k_parity) % 2 == 0
        if plan.k_max == 0:
            assert plan.absorber_order == n
        assert len(plan.join_lengths) == max(len(T.edges) - 1, 0)

    def test_n40_plan(self):
        plan = choose_plan(40)
        assert plan.m == 5 and plan.absorber_order == 40 and plan.k_max == 0

    def test_no_plan_when_too_small(self):
        assert choose_plan(12) is None and choose_plan(14) is None
        assert plan_absorber(10, compact_template(5)) is None


class TestPipeline:
    def test_n40_complete(self):
        G = complete(40)
        res = find_loose_hc_pipeline(G, PipelineConfig(seed=1))
        assert res and validate_loose_cycle(G, res.cycle)
        assert sorted(res.cycle.vertices) == list(range(40))

    def test_n40_pruned(self):
        for s in range(3):
            G = pruned(40, 0.8, s)
            res = find_loose_hc_pipeline(G, PipelineConfig(seed=s))
            assert res and validate_loose_cycle(G, res.cycle)

    def test_real_cover_paths(self):
        # auto planning picks an absorber small enough that cover paths are patched through R
        G = sample_h3np(ModelParams(100, 0.5, 0))
        res = find_loose_hc_pipeline(G, PipelineConfig(seed=0))
        assert res.plan.k_max >= 1
        assert res and validate_loose_cycle(G, res.cycle)

    def test_k12_fails_at_plan(self):
        res = find_loose_hc_pipeline(complete(12))
        assert not res and res.failure_stages == {"plan": 1}

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            find_loose_hc_pipeline(complete(41))

    def test_sparse_failure_is_reported(self):
        res = find_loose_hc_pipeline(Hypergraph3(40), PipelineConfig(retries=2))
        assert not res and sum(res.failure_stages.values()) == 2
        assert res.to_dict()["status"] == "failed"

    @pytest.mark.parametrize("seed", range(4))
    def test_never_contradicts_oracle_n14(self, seed):
        for G in (sample_h3np(ModelParams(14, 0.6, seed)), extremal_codegree(14)):
            res = find_loose_hc_pipeline(G, PipelineConfig(seed=seed, retries=2))
            if res:
                assert validate_loose_cycle(G, res.cycle) and has_loose_hc(G)

    def test_deterministic(self):
        G = pruned(40, 0.8, 7)
        a = find_loose_hc_pipeline(G, PipelineConfig(seed=7))
        b = find_loose_hc_pipeline(G, PipelineConfig(seed=7))
        assert a.cycle == b.cycle
