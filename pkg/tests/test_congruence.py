import math
import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from congruence_profiler.congruence import (
    aggregate,
    congruence_score,
    mask_delays,
    mean_score,
    profile,
    rank_architectures,
)
from congruence_profiler.errors import TargetNotBelowBaselineError
from congruence_profiler.fabric import SyntheticProfile, generate_synthetic, implement
from congruence_profiler.model import (
    INTERCONNECT,
    LOGIC,
    Category,
    DelayClass,
    NodeRole,
    ProfileConfig,
    TimingEdge,
    TimingGraph,
    TimingNode,
)
from congruence_profiler.sta import critical_path

from oracles import chain, eq1, longest_constrained_path, random_dag

DSP, BRAM = DelayClass.hblock("dsp"), DelayClass.hblock("bram")
finite = st.floats(-1e6, 1e6, allow_nan=False)


class TestMask:
    def test_interconnect_only(self):
        g = mask_delays(chain([2, 3], [INTERCONNECT, LOGIC]), [Category.INTERCONNECT])
        assert [e.delay for e in g.edges] == [0, 3]

    def test_all_categories(self):
        g = chain([2, 3, 4], [INTERCONNECT, LOGIC, DSP])
        assert all(e.delay == 0 for e in mask_delays(g, list(Category)).edges)

    def test_single_kind(self):
        g = chain([5, 6, 7, 8], [DSP, BRAM, DSP, LOGIC])
        masked = mask_delays(g, [DSP])
        zeroed = [e.dclass for e, m in zip(g.edges, masked.edges) if m.delay != e.delay]
        assert zeroed == [DSP, DSP]
        assert [e.delay for e in masked.edges if e.dclass == BRAM] == [6]

    def test_epsilon(self):
        g = mask_delays(chain([2, 3], [INTERCONNECT, LOGIC]), [LOGIC], epsilon_ps=0.5)
        assert [e.delay for e in g.edges] == [2, 0.5]

    def test_unused_selector_noted(self):
        g = mask_delays(chain([2], [LOGIC]), [Category.HBLOCK])
        assert any("hblock" in n for n in g.notes)

    def test_negative_epsilon(self):
        with pytest.raises(ValueError):
            mask_delays(chain([1]), [LOGIC], epsilon_ps=-1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(list(Category)))
    def test_structure_preserved(self, seed, cat):
        g = random_dag(random.Random(seed))
        m = mask_delays(g, [cat])
        assert m.nodes == g.nodes
        assert [(e.src, e.dst, e.dclass) for e in m.edges] == [(e.src, e.dst, e.dclass) for e in g.edges]
        assert all(me.delay == (0 if me.dclass.category is cat else e.delay) for e, me in zip(g.edges, m.edges))


class TestScore:
    def test_boundaries(self):
        assert congruence_score(5000, 200, 5000) == 0
        assert congruence_score(200, 200, 5000) == 1

    def test_hand_value(self):
        # 1 - 2800/4800
        assert congruence_score(3000, 200, 5000) == pytest.approx(0.41667, abs=5e-6)

    def test_target_not_below(self):
        with pytest.raises(TargetNotBelowBaselineError):
            congruence_score(100, 500, 500)

    def test_clamp(self):
        assert congruence_score(100, 200, 5000) > 1
        assert congruence_score(100, 200, 5000, clamp=True) == 1
        assert congruence_score(6000, 200, 5000, clamp=True) == 0

    @given(finite, st.floats(0, 1e5), st.floats(1e-3, 1e5))
    def test_matches_exact_rational(self, alpha, beta, gap):
        gamma = beta + gap
        assume(gamma > beta)
        assert congruence_score(alpha, beta, gamma) == pytest.approx(float(eq1(alpha, beta, gamma)),
                                                                     rel=1e-9, abs=1e-9)

    @given(st.floats(0, 1e5), st.floats(1, 1e5), st.floats(0, 1e5), st.floats(1e-3, 1e5))
    def test_strictly_decreasing(self, beta, gap, a, da):
        gamma = beta + gap
        assume(gamma > beta)
        assume(congruence_score(a, beta, gamma) != congruence_score(a + da, beta, gamma))
        assert congruence_score(a, beta, gamma) > congruence_score(a + da, beta, gamma)


class TestAggregate:
    def test_examples(self):
        assert aggregate([0.3, 0.4, 0.0]) == 0.5
        assert aggregate([0, 0, 0]) == 0
        assert aggregate([1, 1, 1], normalize=True) == 1.0

    def test_non_finite(self):
        with pytest.raises(ValueError):
            aggregate([math.nan, 0, 0])

    # tiny magnitudes would underflow when squared in the reference formula
    @given(st.lists(st.floats(-10, 10).filter(lambda x: x == 0 or abs(x) > 1e-100), min_size=1, max_size=8),
           st.randoms())
    def test_permutation_invariant(self, comps, rnd):
        shuffled = list(comps)
        rnd.shuffle(shuffled)
        assert aggregate(shuffled) == aggregate(comps)
        assert aggregate(comps) == pytest.approx(math.sqrt(sum(c * c for c in comps)), rel=1e-12, abs=1e-300)


class TestMeanAndRank:
    def test_mean(self):
        assert mean_score([0.5, 0.7]) == pytest.approx(0.6)
        assert mean_score([0.3]) == 0.3
        with pytest.raises(ValueError):
            mean_score([])

    def test_rank(self):
        assert rank_architectures({"baseline": 1.175, "denser": 1.170, "densest": 1.160}) == \
            ["densest", "denser", "baseline"]
        assert rank_architectures({"only": 2.0}) == ["only"]
        assert rank_architectures({"b": 1.0, "a": 1.0}) == ["a", "b"]

    @given(st.dictionaries(st.text(min_size=1, max_size=5), st.floats(0, 10), min_size=1, max_size=6),
           st.floats(0.01, 100))
    def test_scale_invariant(self, results, k):
        scaled = {a: v * k for a, v in results.items()}
        # scaling can merge values that differ only in the last ulp; compare where order is strict
        base = rank_architectures(results)
        assume(len(set(scaled.values())) == len(set(results.values())))
        assert rank_architectures(scaled) == base


class TestProfile:
    def test_pure_interconnect_path(self):
        g = chain([100, 200, 300], [INTERCONNECT] * 3)
        s = profile(g, ProfileConfig(beta_ps=0))
        assert s.ics == 1
        assert s.lbcs < 1 and s.hrcs < 1
        assert s.alphas_ps == {"ics": 0, "hrcs": 600, "lbcs": 600}

    def test_side_path_limits_score(self):
        g = chain([100, 200, 300], [INTERCONNECT] * 3)
        nodes = g.nodes + (TimingNode("L0", NodeRole.PRIMARY_INPUT), TimingNode("L1", NodeRole.PRIMARY_OUTPUT))
        g = TimingGraph(nodes, g.edges + (TimingEdge("L0", "L1", 50, LOGIC),))
        s = profile(g, ProfileConfig(beta_ps=0))
        assert s.ics == pytest.approx(float(eq1(50, 0, 600)))

    def test_no_hblocks_warns(self, logic_design):
        s = profile(logic_design)
        assert s.hrcs == 0
        assert s.alphas_ps["hrcs"] == s.gamma_ps
        assert any("class unused" in w for w in s.warnings)

    def test_matches_manual_masking(self, hblock_design):
        g = hblock_design.timing_graph
        s = profile(hblock_design, ProfileConfig(per_kind_hrcs=True))
        gamma = longest_constrained_path(g)
        assert s.gamma_ps == gamma
        for name, sel in (("ics", Category.INTERCONNECT), ("hrcs", Category.HBLOCK), ("lbcs", Category.LOGIC)):
            masked = g.with_edges(e.with_delay(0) if e.dclass.category is sel else e for e in g.edges)
            alpha = longest_constrained_path(masked)
            assert s.alphas_ps[name] == alpha
            assert getattr(s, name) == pytest.approx(float(eq1(alpha, 200, gamma)), abs=1e-12)
        assert set(s.per_kind) == {"dsp", "bram"}
        assert s.aggregate_raw ** 2 == pytest.approx(s.ics ** 2 + s.hrcs ** 2 + s.lbcs ** 2, rel=1e-9)
        assert s.aggregate_normalized == pytest.approx(s.aggregate_raw / math.sqrt(3))

    def test_clamp_keeps_raw(self, logic_design):
        gamma = critical_path(logic_design.timing_graph).delay_ps
        s = profile(logic_design, ProfileConfig(beta_ps=gamma - 1, clamp_scores=True))
        assert all(0 <= v <= 1 for v in s.components())
        assert s.raw_scores and max(s.raw_scores.values()) > 1

    def test_routing_bound_seed_7(self, baseline):
        design = implement(generate_synthetic(SyntheticProfile.preset("routing-bound", 7)), baseline)
        s = profile(design)
        assert s.ics > max(s.hrcs, s.lbcs)

    def test_reuses_design(self, hblock_design):
        before = hblock_design.placement_hash()
        profile(hblock_design)
        assert hblock_design.placement_hash() == before
