import math

import numpy as np
import pytest

from attralign.attr_rich import (
    align_attr_rich,
    anchor_candidates,
    anchor_match_counts,
    build_anchors,
    common_attribute_count,
    common_count_matrix,
    threshold_x,
    threshold_y,
)
from attralign.graph import AttributedGraph
from attralign.model import ModelParams
from attralign.oracle import oracle_align_attr_rich, oracle_common_count
from attralign.results import AnchorConflict, AnchorSet, FailureKind

from helpers import random_pair, unique_signature_graph


def hand_instance():
    """Anchors (1,1), (2,2); user 3 adjacent to both anchors; user 4 isolated."""
    uu = [(1, 3), (2, 3)]
    ua = [(1, 5), (2, 6)]
    g = AttributedGraph(4, 2, uu, ua)
    return g, g


class TestCommonCount:
    def test_no_attribute_edges(self):
        g = AttributedGraph(3, 2, (), ())
        h = AttributedGraph(3, 2, (), [(1, 4)])
        for j in range(1, 4):
            assert common_attribute_count(g, h, 1, j) == 0

    def test_direct_intersection(self):
        n = 4
        g1 = AttributedGraph(n, 3, (), [(1, n + 1), (1, n + 2)])
        g2 = AttributedGraph(n, 3, (), [(2, n + 2), (2, n + 3)])
        assert common_attribute_count(g1, g2, 1, 2) == 1

    def test_complete_bipartite(self):
        n, m = 3, 4
        full = [(u, a) for u in range(1, n + 1) for a in range(n + 1, n + m + 1)]
        g = AttributedGraph(n, m, (), full)
        assert common_attribute_count(g, g, 1, 3) == m

    @pytest.mark.parametrize("seed", range(25))
    def test_matrix_matches_oracle(self, seed):
        pair = random_pair(seed, n=5 + seed % 20, m=3 + seed % 25, q=0.3)
        mine = common_count_matrix(pair.g1, pair.g2_anon).toarray()
        assert np.array_equal(mine, oracle_common_count(pair.g1, pair.g2_anon))

    def test_symmetry_under_argument_swap(self):
        pair = random_pair(77, n=12, m=9)
        a = common_count_matrix(pair.g1, pair.g2_anon).toarray()
        b = common_count_matrix(pair.g2_anon, pair.g1).toarray()
        assert np.array_equal(a, b.T)


class TestThresholdX:
    def test_hand_value(self):
        params = ModelParams(n=1000, m=1000, p=0.1, q=0.01, s_u=1.0, s_a=0.9)
        assert threshold_x(params) == pytest.approx(4.5, rel=1e-12)

    def test_max_branch_boundary(self):
        # choose q so that m*q*s_a^2 equals 3 ln n exactly: Delta_x = 1
        n, m = 1000, 100
        q = 3 * math.log(n) / m
        params = ModelParams(n=n, m=m, p=0.1, q=q, s_u=1.0, s_a=1.0)
        assert threshold_x(params) == pytest.approx(params.attr_signal / math.log(1 / q), rel=1e-12)

    def test_linear_in_m_when_delta_capped(self):
        # signal far above 3 ln n keeps Delta_x at 1, so x is linear in m
        a = ModelParams(n=100, m=2000, p=0.1, q=0.1, s_u=1.0, s_a=1.0)
        b = ModelParams(n=100, m=4000, p=0.1, q=0.1, s_u=1.0, s_a=1.0)
        assert threshold_x(b) == pytest.approx(2 * threshold_x(a), rel=1e-12)

    def test_degenerate_q_rejected(self):
        for q in (0.0, 1.0):
            with pytest.raises(ValueError):
                threshold_x(ModelParams(n=10, m=5, p=0.1, q=q, s_u=1.0, s_a=1.0))

    def test_delta_override(self):
        params = ModelParams(n=100, m=50, p=0.1, q=0.1, s_u=1.0, s_a=1.0)
        assert threshold_x(params, delta_x=4.0) == pytest.approx(
            4.0 / math.log(10) * params.attr_signal
        )


class TestThresholdY:
    def test_hand_value(self):
        params = ModelParams(n=100, m=10, p=0.01, q=0.1, s_u=0.9, s_a=1.0)
        assert threshold_y(params) == pytest.approx(0.0035177853034163396, rel=1e-12)

    def test_log_cancellation(self):
        p = math.exp(-2)
        params = ModelParams(n=100, m=10, p=p, q=0.1, s_u=0.8, s_a=1.0)
        assert threshold_y(params) == pytest.approx(p * 0.64, rel=1e-12)

    def test_decreasing_in_log_inverse_p_at_fixed_signal(self):
        # p * s_u^2 pinned at 0.005 for both parameter points
        lo = ModelParams(n=100, m=10, p=0.01, q=0.1, s_u=math.sqrt(0.5), s_a=1.0)
        hi = ModelParams(n=100, m=10, p=0.1, q=0.1, s_u=math.sqrt(0.05), s_a=1.0)
        assert threshold_y(hi) > threshold_y(lo)

    def test_degenerate_p_rejected(self):
        for p in (0.0, 1.0):
            with pytest.raises(ValueError):
                threshold_y(ModelParams(n=10, m=5, p=p, q=0.1, s_u=1.0, s_a=1.0))

    def test_small_delta_rejected(self):
        params = ModelParams(n=10, m=5, p=0.1, q=0.1, s_u=1.0, s_a=1.0)
        with pytest.raises(ValueError):
            threshold_y(params, delta_y=1.5)


class TestBuildAnchors:
    def test_unreachable_threshold(self):
        pair = random_pair(5, n=10, m=6)
        anchors = build_anchors(pair.g1, pair.g2_anon, x=6)
        assert isinstance(anchors, AnchorSet) and len(anchors) == 0

    def test_unique_signatures_full_diagonal(self):
        g = unique_signature_graph(7)
        anchors = build_anchors(g, g, 0.5)
        assert list(anchors) == [(i, i) for i in range(1, 8)]

    def test_shared_second_coordinate_conflicts(self):
        # users 1 and 2 both share attribute 4 with user 1 on the other side
        g1 = AttributedGraph(2, 1, (), [(1, 3), (2, 3)])
        g2 = AttributedGraph(2, 1, (), [(1, 3)])
        out = build_anchors(g1, g2, 0.5)
        assert isinstance(out, AnchorConflict)

    def test_negative_threshold_rejected(self):
        g = unique_signature_graph(3)
        with pytest.raises(ValueError):
            build_anchors(g, g, -0.5)

    @pytest.mark.parametrize("seed", range(10))
    def test_lowering_x_grows_candidates(self, seed):
        pair = random_pair(seed, n=8, m=8, q=0.4)
        hi = set(anchor_candidates(pair.g1, pair.g2_anon, 2.5))
        lo = set(anchor_candidates(pair.g1, pair.g2_anon, 0.5))
        assert hi <= lo


class TestAlign:
    def test_all_anchored_skips_step_two(self):
        g = unique_signature_graph(6)
        result = align_attr_rich(g, g, x=0.5, y=0.9)
        assert result.ok
        assert dict(result.pi_hat.items()) == {i: i for i in range(1, 7)}
        assert len(result.anchors) == 6

    def test_hand_instance_counts_and_failure(self):
        g1, g2 = hand_instance()
        anchors = build_anchors(g1, g2, 0.5)
        assert list(anchors) == [(1, 1), (2, 2)]
        u1, u2, w = anchor_match_counts(g1, g2, anchors)
        assert u1 == [3, 4] and u2 == [3, 4]
        assert w.tolist() == [[2, 0], [0, 0]]
        # y|S| = 1.8 < 2: vertex 3 matches itself, vertex 4 has no candidate
        result = align_attr_rich(g1, g2, x=0.5, y=0.9)
        assert result.failure is FailureKind.NON_UNIQUE_MATCH
        assert "vertex 4" in result.context

    def test_anchor_conflict_propagates(self):
        g1 = AttributedGraph(2, 1, (), [(1, 3), (2, 3)])
        g2 = AttributedGraph(2, 1, (), [(1, 3)])
        result = align_attr_rich(g1, g2, 0.5, 0.5)
        assert result.failure is FailureKind.ANCHOR_CONFLICT

    def test_empty_anchor_set_degenerate_path(self):
        # no pair clears x, so step 2 sees threshold 0 and no counts above it
        g = AttributedGraph(3, 1, [(1, 2)], ())
        result = align_attr_rich(g, g, x=0.5, y=0.5)
        assert result.failure is FailureKind.NON_UNIQUE_MATCH
        assert result.n_anchors == 0

    @pytest.mark.parametrize("seed", range(40))
    def test_noiseless_recovery_matches_truth(self, seed):
        pair = random_pair(seed, n=4 + seed % 5, m=6, q=0.5, s_u=1.0, s_a=1.0)
        result = align_attr_rich(pair.g1, pair.g2_anon, x=1.5, y=0.4)
        if result.ok:
            assert result.pi_hat == pair.ground_truth

    @pytest.mark.parametrize("seed", range(30))
    def test_w_bounded_by_anchor_count(self, seed):
        pair = random_pair(seed, n=10, m=10, q=0.4)
        anchors = build_anchors(pair.g1, pair.g2_anon, 1.0)
        if isinstance(anchors, AnchorConflict):
            return
        _, _, w = anchor_match_counts(pair.g1, pair.g2_anon, anchors)
        if w.size:
            assert w.max() <= len(anchors)

    def test_success_agrees_with_anchors(self):
        g = unique_signature_graph(5)
        extra = AttributedGraph(5, 5, [(1, 2)], g.attr_edges())
        result = align_attr_rich(extra, extra, x=0.5, y=0.9)
        assert result.ok
        for i, j in result.anchors:
            assert result.pi_hat(i) == j


class TestNaiveEquivalence:
    @pytest.mark.parametrize("seed", range(200))
    def test_full_pipeline_matches_reference(self, seed):
        pair = random_pair(
            seed,
            n=3 + seed % 14,
            m=seed % 17,
            p=0.35,
            q=0.45,
            s_u=0.85,
            s_a=0.85,
        )
        x = 0.5 + (seed % 4)
        y = 0.25 * (seed % 3)
        mine = align_attr_rich(pair.g1, pair.g2_anon, x, y)
        ref_pi, ref_kind, ref_anchors = oracle_align_attr_rich(pair.g1, pair.g2_anon, x, y)
        if mine.ok:
            assert ref_kind is None
            assert dict(mine.pi_hat.items()) == ref_pi
        else:
            assert mine.failure.value == ref_kind
        if mine.anchors is not None and ref_kind != "anchor_conflict":
            assert set(mine.anchors) == ref_anchors
