import math

import numpy as np
import pytest

from aspaths import (
    DegreeSequence,
    InadmissibleSequence,
    InfeasibleConfig,
    McmcConfig,
    RngSeed,
    TargetUnreachable,
    mcmc_degree_sequence,
    sample_chung_lu,
    sample_erdos_renyi,
)
from aspaths.randgraph import _chung_lu_pairs_sparse, _gnp_pairs_sparse


def edge_sets(g):
    return g.edge_set()


class TestRngSeed:
    def test_spawn_paths_are_independent(self):
        a = RngSeed(1).spawn(2, 3).generator().random(4)
        b = RngSeed(1).spawn(2, 4).generator().random(4)
        assert not np.allclose(a, b)

    def test_same_stream_reproduces(self):
        a = RngSeed(9).spawn(1).generator().random(8)
        b = RngSeed(9).spawn(1).generator().random(8)
        assert np.array_equal(a, b)


class TestChungLu:
    def test_zero_sequence_gives_empty_graph(self):
        g = sample_chung_lu(DegreeSequence([0.0] * 5), RngSeed(3))
        assert g.m == 0

    def test_inadmissible_rejected(self):
        with pytest.raises(InadmissibleSequence):
            sample_chung_lu(DegreeSequence([10.0, 1.0, 1.0]), RngSeed(3))

    def test_deterministic(self):
        seq = DegreeSequence([3.0] * 40)
        g1 = sample_chung_lu(seq, RngSeed(11))
        g2 = sample_chung_lu(seq, RngSeed(11))
        assert edge_sets(g1) == edge_sets(g2)
        g3 = sample_chung_lu(seq, RngSeed(12))
        assert edge_sets(g1) != edge_sets(g3)

    def test_edge_probability_confidence_interval(self):
        # fixed pair (0, 1) over many realizations, 4-sigma binomial band
        n, reps = 12, 20_000
        seq = DegreeSequence([1.0, 2.0, 3.0, 2.0, 1.5, 2.5] + [1.0] * (n - 6))
        p01 = seq.edge_probability(0, 1)
        hits = 0
        for k in range(reps):
            g = sample_chung_lu(seq, RngSeed(500).spawn(k))
            hits += any(v == 1 for v, _ in g.out_neighbors[0])
        se = math.sqrt(p01 * (1 - p01) / reps)
        assert abs(hits / reps - p01) <= 4 * se

    def test_mean_degree_confidence_interval(self):
        # fixed node, n=800 uniform d=8, 1000 realizations, 3-sigma band
        n, d, reps = 800, 8.0, 1000
        seq = DegreeSequence([d] * n)
        total = 0
        for k in range(reps):
            g = sample_chung_lu(seq, RngSeed(321).spawn(k))
            total += g.degree(0)
        per_real_var = d * (1 - d / n)  # ~binomial; self-loop term negligible
        band = 3 * math.sqrt(per_real_var) / math.sqrt(reps)
        # the loop contributes p_ii = d^2/S = d/n extra expected degree
        expected = d * (n - 1) / n + d / n
        assert abs(total / reps - expected) <= band + 0.05

    def test_self_loops_possible(self):
        seq = DegreeSequence([3.0] * 9)  # p_loop = 1/3
        g = sample_chung_lu(seq, RngSeed(77))
        found_loop = any(
            any(v == u for v, _ in g.out_neighbors[u]) for u in range(g.n)
        )
        assert found_loop

    def test_sparse_sampler_distribution_matches_dense(self):
        # same expected edge count from both regimes
        d = np.full(300, 4.0)
        seq = DegreeSequence(d)
        expected_edges = float(np.sum(np.triu(np.outer(d, d) / seq.S, k=1)))
        counts = []
        for k in range(60):
            rng = RngSeed(42).spawn(k).generator()
            counts.append(len(_chung_lu_pairs_sparse(d, seq.S, rng)))
        se = math.sqrt(expected_edges / 60)  # ~Poisson scale
        assert abs(np.mean(counts) - expected_edges) <= 4 * se

    def test_sparse_path_used_above_limit(self):
        seq = DegreeSequence([2.0] * 2100)
        g = sample_chung_lu(seq, RngSeed(5))
        assert g.n == 2100
        # sanity: edge count near n * d / 2
        assert abs(g.m / 2 - 2100) < 300
        for u, v in edge_sets(g):
            assert u <= v


class TestErdosRenyi:
    def test_avg_zero_is_empty(self):
        assert sample_erdos_renyi(50, 0.0, RngSeed(1)).m == 0

    def test_avg_n_minus_one_is_complete(self):
        g = sample_erdos_renyi(12, 11.0, RngSeed(1))
        assert g.m == 12 * 11

    def test_out_of_range_rejected(self):
        with pytest.raises(InfeasibleConfig):
            sample_erdos_renyi(10, 12.0, RngSeed(1))
        with pytest.raises(InfeasibleConfig):
            sample_erdos_renyi(10, -1.0, RngSeed(1))

    def test_edge_count_confidence_interval(self):
        n, avg, reps = 200, 6.0, 200
        p = avg / (n - 1)
        pairs = n * (n - 1) / 2
        counts = [
            sample_erdos_renyi(n, avg, RngSeed(900).spawn(k)).m / 2
            for k in range(reps)
        ]
        se = math.sqrt(pairs * p * (1 - p) / reps)
        assert abs(np.mean(counts) - pairs * p) <= 4 * se

    def test_sparse_regime_matches_mean(self):
        n, avg = 5000, 3.0
        g = sample_erdos_renyi(n, avg, RngSeed(8))
        assert abs(g.m / 2 - n * avg / 2) < 4 * math.sqrt(n * avg / 2)
        assert all(u < v for u, v in edge_sets(g))  # no self-loops

    def test_deterministic(self):
        a = sample_erdos_renyi(100, 4.0, RngSeed(31))
        b = sample_erdos_renyi(100, 4.0, RngSeed(31))
        assert edge_sets(a) == edge_sets(b)


class TestMcmcSequence:
    def test_uniform_target_returns_immediately(self):
        cfg = McmcConfig(n=100, target_avg=8.0, target_ratio=8.0, hub_count=0)
        seq = mcmc_degree_sequence(cfg, RngSeed(1))
        assert np.allclose(seq.d, 8.0)

    def test_hubs_pinned_to_sqrt_s(self):
        cfg = McmcConfig(n=800, target_avg=8.0, target_ratio=12.0, hub_count=4)
        seq = mcmc_degree_sequence(cfg, RngSeed(2))
        assert np.sum(np.isclose(seq.d, 80.0)) >= 4

    def test_postconditions(self):
        for target in (10.0, 12.0, 16.0):
            cfg = McmcConfig(n=400, target_avg=8.0, target_ratio=target,
                             hub_count=2, tolerance=0.02)
            seq = mcmc_degree_sequence(cfg, RngSeed(7))
            S = 400 * 8.0
            assert math.isclose(seq.S, S, rel_tol=1e-9)
            assert abs(seq.S2 / seq.S - target) <= 0.02 * target
            assert np.all(seq.d >= cfg.d_min - 1e-12)
            assert seq.admissible

    def test_target_below_minimum_unreachable(self):
        cfg = McmcConfig(n=100, target_avg=8.0, target_ratio=4.0, hub_count=0)
        with pytest.raises(TargetUnreachable):
            mcmc_degree_sequence(cfg, RngSeed(1))

    def test_target_above_maximum_unreachable(self):
        cfg = McmcConfig(n=100, target_avg=8.0, target_ratio=100.0, hub_count=0)
        with pytest.raises(TargetUnreachable):
            mcmc_degree_sequence(cfg, RngSeed(1))

    def test_infeasible_configs(self):
        with pytest.raises(InfeasibleConfig):
            McmcConfig(n=100, target_avg=8.0, target_ratio=8.0, tolerance=0.0)
        with pytest.raises(InfeasibleConfig):
            McmcConfig(n=4, target_avg=1.0, target_ratio=2.0, hub_count=3)
        with pytest.raises(InfeasibleConfig):
            mcmc_degree_sequence(
                McmcConfig(n=100, target_avg=8.0, target_ratio=9.0,
                           hub_count=0, d_min=20.0),
                RngSeed(1),
            )

    def test_deterministic(self):
        cfg = McmcConfig(n=300, target_avg=8.0, target_ratio=13.0, hub_count=3)
        a = mcmc_degree_sequence(cfg, RngSeed(4))
        b = mcmc_degree_sequence(cfg, RngSeed(4))
        assert np.array_equal(a.d, b.d)


def test_gnp_sparse_no_diagonal_wraparound():
    # dense p forces many consecutive hits, stressing the row-wrap logic
    rng = RngSeed(123).generator()
    pairs = _gnp_pairs_sparse(30, 0.9, rng)
    assert all(u < v for u, v in pairs)
    assert len(pairs) == len(set(pairs))
