import io
import json
import math
import random

import pytest

from aspaths import (
    DegreeSequence,
    GuardViolation,
    PreconditionViolated,
    classify_edges,
    expected_nbp_upper,
    expected_sp_exact,
    expected_sp_lower,
    load_degree_sequence,
    path_probability,
    save_degree_sequence,
)
from corpus import corpus_graphs
from walkgen import random_nbp_walk_on, random_walk_on

UNIFORM800 = DegreeSequence([8.0] * 800)


def count_identity_holds(nodes, directed=False):
    cls = classify_edges(nodes, directed=directed)
    if cls.tags[0] != "new" or cls.tags[-1] != "new":
        return None
    r = len(nodes) - 1
    expected = r - 1 - sum((i + 1) * qi for i, qi in cls.q.items())
    return len(cls.N) == expected


def direct_edge_product(nodes, seq):
    """Independent oracle: product of p_uv over the walk's distinct edges."""
    edges = set()
    for a, b in zip(nodes, nodes[1:]):
        edges.add((a, b) if a <= b else (b, a))
    prod = 1.0
    for a, b in edges:
        prod *= seq.edge_probability(a, b)
    return prod


class TestDegreeSequence:
    def test_aggregates(self):
        seq = DegreeSequence([2.0, 3.0, 4.0, 1.0])
        assert seq.S == 10.0
        assert seq.S2 == 30.0
        assert seq.d_max == 4.0
        assert seq.p_max == 1.6
        assert not seq.admissible  # 4^2 > 10

    def test_admissible_flag(self):
        assert DegreeSequence([2.0, 3.0, 3.0, 1.0]).admissible
        assert not DegreeSequence([10.0, 1.0, 1.0]).admissible

    def test_validation(self):
        with pytest.raises(ValueError):
            DegreeSequence([])
        with pytest.raises(ValueError):
            DegreeSequence([-1.0, 2.0])

    def test_round_trip_text_and_json(self):
        seq = DegreeSequence([1.5, 2.0, 3.25])
        buf = io.StringIO()
        save_degree_sequence(seq, buf)
        again = load_degree_sequence(io.StringIO(buf.getvalue()))
        assert list(again.d) == list(seq.d)
        from_json = load_degree_sequence(io.StringIO(json.dumps([1.5, 2.0, 3.25])))
        assert list(from_json.d) == list(seq.d)


class TestClassifyEdges:
    def test_all_new_chain(self):
        cls = classify_edges((1, 2, 3, 4, 5, 6, 7))
        assert cls.tags == ["new"] * 6
        assert cls.N == [2, 3, 4, 5, 6]
        assert cls.R1 == [] and cls.R2 == []
        assert cls.new_edge_blocks == [(0, 5)]
        assert cls.q == {}

    def test_single_repeat_first_node_unseen(self):
        # (1,2,3,2,4): edge (3,2) repeats (2,3); its first node 3 is new
        cls = classify_edges((1, 2, 3, 2, 4))
        assert cls.tags == ["new", "new", "repeating", "new"]
        assert cls.R2 == [(3, 2)] and cls.R1 == []
        assert cls.N == [2]
        assert cls.q == {1: 1}
        assert count_identity_holds((1, 2, 3, 2, 4))

    def test_single_repeat_first_node_seen(self):
        # (1,2,3,1,2,4): edge (1,2) repeats; node 1 appeared at position 0
        cls = classify_edges((1, 2, 3, 1, 2, 4))
        assert cls.R1 == [(1, 2)] and cls.R2 == []
        assert cls.N == [2, 3]
        assert cls.q == {1: 1}
        assert count_identity_holds((1, 2, 3, 1, 2, 4))

    def test_directed_identity_differs(self):
        # directed: (3,2) is not a repeat of (2,3)
        cls = classify_edges((1, 2, 3, 2, 4), directed=True)
        assert cls.tags == ["new"] * 4

    def test_longer_repeating_block(self):
        # (3,1,2,3,1,5): edges (3,1),(1,2),(2,3),(3,1),(1,5); block = [(3,1)]
        cls = classify_edges((3, 1, 2, 3, 1, 5))
        assert cls.tags == ["new", "new", "new", "repeating", "new"]
        assert cls.R2 == [] and cls.R1 == [(3, 1)]
        assert count_identity_holds((3, 1, 2, 3, 1, 5))

    def test_rejects_trivial_walk(self):
        with pytest.raises(ValueError):
            classify_edges((5,))

    def test_count_identity_random_walks(self):
        rng = random.Random(4242)
        graphs = [g for g, _, _ in corpus_graphs(25)]
        checked = 0
        while checked < 3000:
            g = rng.choice(graphs)
            walk = random_walk_on(g, rng, rng.randint(2, 9))
            if walk is None:
                continue
            holds = count_identity_holds(walk, directed=g.directed)
            if holds is None:
                continue
            assert holds, walk
            checked += 1

    def test_r2_empty_for_nonbacktracking_walks(self):
        rng = random.Random(777)
        graphs = [g for g, _, _ in corpus_graphs(25) if not g.directed]
        checked = 0
        while checked < 3000:
            g = rng.choice(graphs)
            walk = random_nbp_walk_on(g, rng, rng.randint(2, 9))
            if walk is None:
                continue
            assert classify_edges(walk).R2 == [], walk
            checked += 1

    def test_repeating_block_member_location(self):
        # every non-first node of a repeating block either starts the walk,
        # sits in the new-edge interior, or already led an earlier block
        rng = random.Random(99)
        graphs = [g for g, _, _ in corpus_graphs(25) if not g.directed]
        checked = 0
        while checked < 2000:
            g = rng.choice(graphs)
            walk = random_walk_on(g, rng, rng.randint(3, 9))
            if walk is None:
                continue
            cls = classify_edges(walk)
            if not cls.repeating_edge_blocks:
                continue
            interior = set(cls.N)
            for (i, j) in cls.repeating_edge_blocks:
                block_first_positions = [
                    bi for bi, _ in cls.repeating_edge_blocks if bi < i
                ]
                earlier_leads = {walk[bi] for bi in block_first_positions}
                for pos in range(i + 1, j + 2):
                    x = walk[pos]
                    assert (
                        x == walk[0]
                        or x in interior
                        or x in earlier_leads
                        or x == walk[i]  # lead of this very block seen earlier
                    ), (walk, pos)
            checked += 1


class TestPathProbability:
    def test_uniform_chain(self):
        seq = DegreeSequence([3.0] * 8)
        p = path_probability((1, 2, 3, 4, 5, 6, 7), seq)
        assert p == pytest.approx((9.0 / 24.0) ** 6, rel=1e-12)

    def test_general_chain(self):
        seq = DegreeSequence([2.0, 3.0, 4.0, 1.0, 2.0, 5.0, 3.0])
        S = seq.S
        expected = (seq[0] * seq[6] / S) * math.prod(seq[i] ** 2 / S for i in range(1, 6))
        assert path_probability((0, 1, 2, 3, 4, 5, 6), seq) == pytest.approx(expected, rel=1e-12)

    def test_walk_with_repeated_edge(self):
        seq = DegreeSequence([2.0, 3.0, 4.0, 1.0])
        S = 10.0
        expected = (2 * 1 / S) * (9 / S) * (16 / S) * (2 * 3 / S)
        p = path_probability((0, 1, 2, 0, 1, 3), seq)
        assert p == pytest.approx(expected, rel=1e-12)
        assert p == pytest.approx(direct_edge_product((0, 1, 2, 0, 1, 3), seq), rel=1e-12)

    def test_matches_distinct_edge_product_on_random_walks(self):
        rng = random.Random(31)
        seq = DegreeSequence([1.0, 2.0, 3.0, 2.5, 1.5, 2.0])
        checked = 0
        while checked < 2000:
            walk = [rng.randrange(6)]
            for _ in range(rng.randint(1, 8)):
                nxt = rng.randrange(6)
                walk.append(nxt)
            cls = classify_edges(walk)
            if cls.tags[0] != "new" or cls.tags[-1] != "new":
                continue
            assert path_probability(walk, seq) == pytest.approx(
                direct_edge_product(walk, seq), rel=1e-9
            ), walk
            checked += 1

    def test_probability_in_unit_interval(self):
        rng = random.Random(13)
        seq = DegreeSequence([1.0, 2.0, 3.0, 2.5, 1.5, 2.0])
        for _ in range(500):
            walk = [rng.randrange(6)]
            for _ in range(rng.randint(1, 10)):
                walk.append(rng.randrange(6))
            cls = classify_edges(walk)
            if cls.tags[0] != "new" or cls.tags[-1] != "new":
                continue
            assert 0.0 <= path_probability(walk, seq) <= 1.0

    def test_simple_path_is_plain_product(self):
        seq = DegreeSequence([2.0, 3.0, 4.0, 1.0, 2.0])
        p = path_probability((0, 2, 4, 1), seq)
        assert p == pytest.approx(direct_edge_product((0, 2, 4, 1), seq), rel=1e-12)

    def test_repeating_last_edge_rejected(self):
        seq = DegreeSequence([2.0] * 4)
        with pytest.raises(PreconditionViolated):
            path_probability((0, 1, 2, 1, 2), seq)

    def test_zero_degree_gives_zero(self):
        seq = DegreeSequence([0.0, 2.0, 3.0])
        assert path_probability((0, 1, 2), seq) == 0.0

    def test_long_walk_survives_underflow(self):
        seq = DegreeSequence([2.0] * 60)
        walk = tuple(range(60)) + tuple(range(58, 0, -2))
        p = path_probability(walk, seq)
        assert p > 0.0


class TestExpectedCounts:
    def test_lower_bound_r1(self):
        seq = DegreeSequence([2.0, 3.0, 4.0, 1.0])
        lower = expected_sp_lower(seq, 0, 1, 1)
        p_st = seq.edge_probability(0, 1)
        assert lower == pytest.approx(p_st * (1 - seq.p_max * seq.S / seq.S2), rel=1e-12)
        assert lower <= p_st

    def test_lower_bound_frozen_uniform800(self):
        assert expected_sp_lower(UNIFORM800, 0, 1, 3) == pytest.approx(0.63520, abs=1e-10)

    def test_lower_bound_goes_negative_for_large_r(self):
        seq = DegreeSequence([2.0] * 10)
        assert expected_sp_lower(seq, 0, 1, 50) < 0

    def test_upper_bound_frozen_uniform800(self):
        assert expected_nbp_upper(UNIFORM800, 0, 1, 3) == pytest.approx(
            0.7480722535602805, rel=1e-12
        )

    def test_upper_bound_preconditions(self):
        with pytest.raises(PreconditionViolated):
            expected_nbp_upper(UNIFORM800, 0, 1, 4)  # 2r = 8 = S2/S
        with pytest.raises(PreconditionViolated):
            expected_nbp_upper(DegreeSequence([0.5] * 8), 0, 1, 1)  # S2 <= S

    def test_upper_bound_small_pmax_limit(self):
        # uniform d: p_max = d/n -> 0, so the exp correction tends to 1
        base = None
        prev_gap = None
        for n in (100, 1000, 10_000):
            seq = DegreeSequence([8.0] * n)
            ratio = seq.S2 / seq.S
            base = seq.edge_probability(0, 1) * ratio**2 / (1 - 1 / ratio)
            gap = expected_nbp_upper(seq, 0, 1, 3) / base - 1.0
            assert gap > 0
            if prev_gap is not None:
                assert gap < prev_gap
            prev_gap = gap
        assert prev_gap < 2e-3  # 2.25 * p_max with p_max = 8e-4 at n = 1e4

    def test_exact_r1_is_edge_probability(self):
        seq = DegreeSequence([2.0, 3.0, 4.0, 1.0])
        assert expected_sp_exact(seq, 0, 3, 1) == pytest.approx(
            seq.edge_probability(0, 3), rel=1e-12
        )

    def test_exact_uniform_n5_r2(self):
        seq = DegreeSequence([2.0] * 5)
        x = 4.0 / 10.0
        assert expected_sp_exact(seq, 0, 4, 2) == pytest.approx(x * 3 * x, rel=1e-12)

    def test_exact_zero_when_no_interior(self):
        seq = DegreeSequence([2.0] * 3)
        assert expected_sp_exact(seq, 0, 1, 5) == 0.0

    def test_exact_guard(self):
        seq = DegreeSequence([1.0] * 50)
        with pytest.raises(GuardViolation):
            expected_sp_exact(seq, 0, 1, 8, max_tuples=1000)

    def test_bound_ordering_sweep(self):
        rng = random.Random(5)
        sequences = [
            DegreeSequence([6.0] * 8),
            DegreeSequence([7.0] * 10),
            DegreeSequence([5.0, 5.0, 5.0, 5.0, 4.0, 4.0, 3.0, 3.0]),
            DegreeSequence([rng.uniform(2.0, 6.0) for _ in range(9)]),
        ]
        checked_lower = checked_upper = 0
        for seq in sequences:
            if not seq.admissible:
                continue
            ratio = seq.S2 / seq.S
            for r in (1, 2, 3):
                exact = expected_sp_exact(seq, 0, 1, r)
                lower = expected_sp_lower(seq, 0, 1, r)
                if lower > 0:
                    assert lower <= exact * (1 + 1e-9) + 1e-15
                    checked_lower += 1
                if seq.S2 > seq.S and 2 * r < ratio:
                    upper = expected_nbp_upper(seq, 0, 1, r)
                    assert exact <= upper * (1 + 1e-9)
                    checked_upper += 1
        assert checked_lower >= 6 and checked_upper >= 4
