"""Desk-scale experiment drivers.

Two studies are provided:

* ``ratio_experiment`` -- generate constrained expected-degree sequences,
  realize one Chung-Lu graph per sequence, and measure, for random node
  pairs and several length slacks, the ratio between the number of
  bounded-length walks and the number of simple paths among them.

* ``edge_deletion_experiment`` -- for random node pairs of a given graph,
  collect the simple almost-shortest paths once, then repeatedly delete
  each edge independently with probability ``p`` and record the fraction
  of the collection that survives.

Both are deterministic functions of their configuration: every
(sequence, pair, p, trial) unit draws from an RNG stream derived from the
config seed and the unit's identity, so results are identical no matter
how many worker processes run the units.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .errors import BudgetError, EmptyCollection, InfeasibleConfig, InsufficientPairs
from .graph import FROM_SOURCE, Graph, shortest_distances
from .paths import (
    DEFAULT_PATH_NODE_BUDGET,
    DEFAULT_TREE_NODE_BUDGET,
    Path,
    PathQuery,
    filter_simple,
    is_simple,
    pathfind,
)
from .randgraph import McmcConfig, RngSeed, mcmc_degree_sequence, sample_chung_lu

SCHEMA_VERSION = 1

# Stream-id namespaces so distinct experiment parts never share a generator.
_RATIO_UNIT = 1
_DELETION_PAIRS = 2
_DELETION_TRIALS = 3


@dataclass(frozen=True)
class SummaryStats:
    """Five-number summary plus mean, as used for box plots."""

    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float
    count: int


def summarize(samples: Iterable[float]) -> SummaryStats:
    """Summary statistics with quartiles by linear interpolation."""
    data = np.asarray(list(samples), dtype=float)
    if data.size == 0:
        raise EmptyCollection("cannot summarize an empty sample list")
    q1, med, q3 = np.percentile(data, [25, 50, 75], method="linear")
    return SummaryStats(
        min=float(data.min()),
        q1=float(q1),
        median=float(med),
        q3=float(q3),
        max=float(data.max()),
        mean=float(data.mean()),
        count=int(data.size),
    )


def surviving_fraction(paths: List[Path], deleted: set, directed: bool = False) -> float:
    """Fraction of paths none of whose edges are in ``deleted``.

    Edge identities are unordered pairs for undirected graphs, ordered
    pairs otherwise; ``deleted`` must use the same convention.
    """
    if not paths:
        raise EmptyCollection("surviving_fraction needs at least one path")
    if not deleted:
        return 1.0
    alive = sum(1 for p in paths if not any(e in deleted for e in p.edges(directed)))
    return alive / len(paths)


# ---------------------------------------------------------------------------
# Ratio experiment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioConfig:
    """Configuration for the walks-vs-simple-paths ratio study."""

    n: int = 800
    avg_degree: float = 8.0
    ratio_targets: tuple = (12.0,)
    sequences_per_target: int = 10
    pairs_per_graph: int = 10
    min_pair_degree: int = 5
    offsets: tuple = (2, 3, 4)
    seed: int = 0
    hub_count: int = 4
    mcmc_tolerance: float = 0.02
    mcmc_max_iters: int = 200_000
    d_min: float = 1.0
    max_paths: int = DEFAULT_PATH_NODE_BUDGET
    max_tree_nodes: int = DEFAULT_TREE_NODE_BUDGET

    def __post_init__(self):
        if any(o <= 0 for o in self.offsets):
            raise InfeasibleConfig("offsets must be positive")
        if self.min_pair_degree < 1:
            raise InfeasibleConfig("min_pair_degree must be >= 1")
        if self.sequences_per_target < 1 or self.pairs_per_graph < 1:
            raise InfeasibleConfig("need at least one sequence and one pair")


@dataclass(frozen=True)
class RatioSample:
    """One (sequence, pair, offset) measurement.

    ``ratio`` is ``None`` when the pair had no simple path at that bound;
    such rows are kept out of the summary statistics rather than divided.
    """

    ratio_target: float
    offset: int
    sequence_id: int
    pair_id: int
    n_walks: int
    n_simple: int
    ratio: Optional[float]


@dataclass
class RatioReport:
    config: RatioConfig
    samples: List[RatioSample] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)

    def ratios_for(self, ratio_target: float, offset: int) -> List[float]:
        return [
            s.ratio
            for s in self.samples
            if s.ratio_target == ratio_target and s.offset == offset and s.ratio is not None
        ]

    def stats(self) -> dict:
        """Per (ratio_target, offset) summary of the defined ratios."""
        out = {}
        for target in self.config.ratio_targets:
            for offset in self.config.offsets:
                vals = self.ratios_for(target, offset)
                if vals:
                    out[(target, offset)] = summarize(vals)
        return out


def _sample_pairs(graph: Graph, count: int, degree_floor: int, rng, dist_cache: dict):
    """Draw distinct node pairs with degree >= floor and finite distance.

    Source-distance maps are cached so the caller can reuse them.
    """
    eligible = [v for v in range(graph.n) if graph.degree(v) >= degree_floor]
    if len(eligible) < 2:
        raise InsufficientPairs(
            f"only {len(eligible)} nodes have degree >= {degree_floor}"
        )
    pairs = []
    taken = set()
    attempts = 0
    max_attempts = 200 * count
    while len(pairs) < count and attempts < max_attempts:
        attempts += 1
        ks = rng.integers(0, len(eligible), size=2)
        s, t = int(eligible[ks[0]]), int(eligible[ks[1]])
        if s == t or (s, t) in taken:
            continue
        if s not in dist_cache:
            dist_cache[s] = shortest_distances(graph, s, FROM_SOURCE)
        if dist_cache[s][t] == np.inf:
            continue
        taken.add((s, t))
        pairs.append((s, t))
    if len(pairs) < count:
        raise InsufficientPairs(
            f"found {len(pairs)} of {count} usable pairs after {attempts} attempts"
        )
    return pairs


def _ratio_unit(cfg: RatioConfig, target_index: int, sequence_id: int):
    """Run one (ratio target, sequence) unit; returns (samples, skipped)."""
    target = cfg.ratio_targets[target_index]
    unit_seed = RngSeed(cfg.seed).spawn(_RATIO_UNIT, target_index, sequence_id)
    mcmc_cfg = McmcConfig(
        n=cfg.n,
        target_avg=cfg.avg_degree,
        target_ratio=target,
        hub_count=cfg.hub_count,
        tolerance=cfg.mcmc_tolerance,
        max_iters=cfg.mcmc_max_iters,
        d_min=cfg.d_min,
    )
    seq = mcmc_degree_sequence(mcmc_cfg, unit_seed.spawn(0))
    graph = sample_chung_lu(seq, unit_seed.spawn(1))
    dist_cache: dict = {}
    pairs = _sample_pairs(
        graph, cfg.pairs_per_graph, cfg.min_pair_degree,
        unit_seed.spawn(2).generator(), dist_cache,
    )

    samples, skipped = [], []
    max_offset = max(cfg.offsets)
    for pair_id, (s, t) in enumerate(pairs):
        dist = dist_cache[s]
        d_st = dist[t]
        try:
            walks = pathfind(
                graph,
                PathQuery(s, t, d_st + max_offset,
                          max_paths=cfg.max_paths, max_tree_nodes=cfg.max_tree_nodes),
                dist_from_source=dist,
            )
        except BudgetError as exc:
            skipped.append({
                "ratio_target": target, "sequence_id": sequence_id,
                "pair_id": pair_id, "source": s, "target_node": t,
                "error": type(exc).__name__, "detail": str(exc),
            })
            continue
        simple_flags = [is_simple(p) for p in walks]
        for offset in cfg.offsets:
            bound = d_st + offset
            n_walks = n_simple = 0
            for p, flag in zip(walks, simple_flags):
                if p.length <= bound + 1e-9:
                    n_walks += 1
                    if flag:
                        n_simple += 1
            ratio = n_walks / n_simple if n_simple else None
            samples.append(RatioSample(
                ratio_target=target, offset=offset, sequence_id=sequence_id,
                pair_id=pair_id, n_walks=n_walks, n_simple=n_simple, ratio=ratio,
            ))
    return samples, skipped


def ratio_experiment(cfg: RatioConfig, jobs: int = 1) -> RatioReport:
    """Run the full ratio study.

    Per ratio target, ``sequences_per_target`` degree sequences are
    generated; each gets one Chung-Lu realization and ``pairs_per_graph``
    random pairs.  For every offset the bound is ``d(s, t) + offset`` and
    the recorded ratio is (number of walks) / (number of simple paths).
    Pair-level budget overruns are recorded in ``report.skipped`` and do
    not abort the run.
    """
    units = [
        (cfg, ti, si)
        for ti in range(len(cfg.ratio_targets))
        for si in range(cfg.sequences_per_target)
    ]
    results = _run_units(_ratio_unit, units, jobs)
    report = RatioReport(config=cfg)
    for samples, skipped in results:
        report.samples.extend(samples)
        report.skipped.extend(skipped)
    return report


# ---------------------------------------------------------------------------
# Edge-deletion experiment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeletionConfig:
    """Configuration for the path-survival-under-deletion study."""

    p_values: tuple = (0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10)
    trials_per_p: int = 20
    pair_count: int = 20
    pair_degree_floor: int = 10
    slack: float = 3.0
    path_budget: int = DEFAULT_PATH_NODE_BUDGET
    seed: int = 0
    simple_only: bool = True
    max_tree_nodes: int = DEFAULT_TREE_NODE_BUDGET
    median_pair_count: int = 5

    def __post_init__(self):
        if any(not 0.0 <= p <= 1.0 for p in self.p_values):
            raise InfeasibleConfig("deletion probabilities must lie in [0, 1]")
        if self.trials_per_p < 1 or self.pair_count < 1:
            raise InfeasibleConfig("need at least one trial and one pair")
        if self.slack < 0:
            raise InfeasibleConfig("slack must be >= 0")


@dataclass(frozen=True)
class DeletionRow:
    p: float
    pair_id: int
    trial: int
    fraction: float


@dataclass
class DeletionReport:
    config: DeletionConfig
    pairs: List[Tuple[int, int]] = field(default_factory=list)
    path_counts: List[int] = field(default_factory=list)
    rows: List[DeletionRow] = field(default_factory=list)
    skipped_pairs: List[dict] = field(default_factory=list)

    def fractions_for(self, p: float) -> List[float]:
        return [r.fraction for r in self.rows if r.p == p]

    def stats(self) -> dict:
        """Per-p summary pooling all pairs and trials."""
        return {p: summarize(self.fractions_for(p)) for p in self.config.p_values}

    def median_curves(self) -> dict:
        """Per-pair median fraction vs p, for the first few pairs."""
        keep = range(min(self.config.median_pair_count, len(self.pairs)))
        curves = {}
        for pair_id in keep:
            curve = []
            for p in self.config.p_values:
                vals = [r.fraction for r in self.rows
                        if r.pair_id == pair_id and r.p == p]
                curve.append((p, float(np.median(vals))))
            curves[pair_id] = curve
        return curves


def _deletion_candidates(graph: Graph, cfg: DeletionConfig):
    """Deterministic stream of candidate pairs for the deletion study."""
    rng = RngSeed(cfg.seed).spawn(_DELETION_PAIRS).generator()
    dist_cache: dict = {}
    # Oversample: candidates that blow the path budget are replaced by later ones.
    want = 3 * cfg.pair_count
    try:
        return _sample_pairs(graph, want, cfg.pair_degree_floor, rng, dist_cache)
    except InsufficientPairs:
        # Fall back to however many exist; the caller decides if that is enough.
        pairs = []
        eligible = [v for v in range(graph.n) if graph.degree(v) >= cfg.pair_degree_floor]
        for s in eligible:
            dist = shortest_distances(graph, s, FROM_SOURCE)
            for t in eligible:
                if s != t and dist[t] < np.inf:
                    pairs.append((s, t))
        order = rng.permutation(len(pairs))
        return [pairs[k] for k in order[:want]]


def _deletion_pair_unit(graph: Graph, cfg: DeletionConfig, s: int, t: int):
    """Collect one pair's path set and run all (p, trial) deletions.

    Returns ``(rows_without_pair_id, n_paths)`` or an error record when the
    enumeration exceeds its budget.
    """
    dist = shortest_distances(graph, s, FROM_SOURCE)
    query = PathQuery(
        s, t, dist[t] + cfg.slack,
        max_paths=cfg.path_budget, max_tree_nodes=cfg.max_tree_nodes,
    )
    try:
        walks = pathfind(graph, query, dist_from_source=dist)
    except BudgetError as exc:
        return {"source": s, "target_node": t,
                "error": type(exc).__name__, "detail": str(exc)}
    paths = filter_simple(walks) if cfg.simple_only else walks
    edge_pool = sorted({e for p in paths for e in p.edges(graph.directed)})
    rows = []
    for p_idx, p in enumerate(cfg.p_values):
        rng = RngSeed(cfg.seed).spawn(_DELETION_TRIALS, s, t, p_idx).generator()
        for trial in range(cfg.trials_per_p):
            draws = rng.random(len(edge_pool))
            deleted = {edge_pool[k] for k in np.nonzero(draws < p)[0]}
            frac = surviving_fraction(paths, deleted, directed=graph.directed)
            rows.append((p, trial, frac))
    return rows, len(paths)


def edge_deletion_experiment(graph: Graph, cfg: DeletionConfig, jobs: int = 1) -> DeletionReport:
    """Run the survival study on an existing graph.

    Pairs are sampled with both endpoint degrees >= ``pair_degree_floor``;
    each pair's almost-shortest collection (bound ``d(s,t) + slack``,
    simple paths only unless configured otherwise) is computed once, then
    every (p, trial) draws an independent deleted-edge set.  Pairs whose
    enumeration exceeds the path budget are recorded and replaced by later
    candidates.
    """
    report = DeletionReport(config=cfg)
    candidates = _deletion_candidates(graph, cfg)
    cursor = 0
    while len(report.pairs) < cfg.pair_count and cursor < len(candidates):
        batch = candidates[cursor : cursor + (cfg.pair_count - len(report.pairs))]
        cursor += len(batch)
        results = _run_units(
            _deletion_pair_unit, [(graph, cfg, s, t) for s, t in batch], jobs
        )
        for (s, t), res in zip(batch, results):
            if isinstance(res, dict):
                report.skipped_pairs.append(res)
                continue
            rows, n_paths = res
            pair_id = len(report.pairs)
            report.pairs.append((s, t))
            report.path_counts.append(n_paths)
            report.rows.extend(
                DeletionRow(p=p, pair_id=pair_id, trial=trial, fraction=frac)
                for p, trial, frac in rows
            )
    if len(report.pairs) < cfg.pair_count:
        raise InsufficientPairs(
            f"only {len(report.pairs)} of {cfg.pair_count} pairs usable "
            f"({len(report.skipped_pairs)} exceeded budgets)"
        )
    return report


def _run_units(fn, arglist, jobs):
    if jobs is None or jobs <= 1 or len(arglist) <= 1:
        return [fn(*args) for args in arglist]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *args) for args in arglist]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# Report serialization
# ---------------------------------------------------------------------------


def _fmt(x) -> str:
    return "" if x is None else repr(x)


def write_ratio_samples_csv(report: RatioReport, fh) -> None:
    fh.write("ratio_target,offset,sequence_id,pair_id,n_walks,n_simple,ratio\n")
    for s in report.samples:
        fh.write(
            f"{s.ratio_target!r},{s.offset},{s.sequence_id},{s.pair_id},"
            f"{s.n_walks},{s.n_simple},{_fmt(s.ratio)}\n"
        )


def write_ratio_stats_csv(report: RatioReport, fh) -> None:
    fh.write("ratio_target,offset,min,q1,median,q3,max,mean,count\n")
    for (target, offset), st in sorted(report.stats().items()):
        fh.write(
            f"{target!r},{offset},{st.min!r},{st.q1!r},{st.median!r},"
            f"{st.q3!r},{st.max!r},{st.mean!r},{st.count}\n"
        )


def ratio_report_json(report: RatioReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "ratio",
        "samples": [
            {
                "ratio_target": s.ratio_target,
                "offset": s.offset,
                "sequence_id": s.sequence_id,
                "pair_id": s.pair_id,
                "n_walks": s.n_walks,
                "n_simple": s.n_simple,
                "ratio": s.ratio,
            }
            for s in report.samples
        ],
        "skipped": report.skipped,
        "stats": [
            {"ratio_target": target, "offset": offset, **st.__dict__}
            for (target, offset), st in sorted(report.stats().items())
        ],
    }


def write_deletion_samples_csv(report: DeletionReport, fh) -> None:
    fh.write("p,pair_id,trial,fraction\n")
    for r in report.rows:
        fh.write(f"{r.p!r},{r.pair_id},{r.trial},{r.fraction!r}\n")


def write_deletion_stats_csv(report: DeletionReport, fh) -> None:
    fh.write("p,min,q1,median,q3,max,mean,count\n")
    for p in report.config.p_values:
        st = summarize(report.fractions_for(p))
        fh.write(
            f"{p!r},{st.min!r},{st.q1!r},{st.median!r},{st.q3!r},"
            f"{st.max!r},{st.mean!r},{st.count}\n"
        )


def write_deletion_medians_csv(report: DeletionReport, fh) -> None:
    fh.write("pair_id,p,median\n")
    for pair_id, curve in report.median_curves().items():
        for p, med in curve:
            fh.write(f"{pair_id},{p!r},{med!r}\n")


def deletion_report_json(report: DeletionReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "deletion",
        "pairs": [list(pair) for pair in report.pairs],
        "path_counts": report.path_counts,
        "rows": [
            {"p": r.p, "pair_id": r.pair_id, "trial": r.trial, "fraction": r.fraction}
            for r in report.rows
        ],
        "skipped_pairs": report.skipped_pairs,
        "stats": [
            {"p": p, **summarize(report.fractions_for(p)).__dict__}
            for p in report.config.p_values
        ],
        "median_curves": {
            str(pair_id): [[p, med] for p, med in curve]
            for pair_id, curve in report.median_curves().items()
        },
    }
