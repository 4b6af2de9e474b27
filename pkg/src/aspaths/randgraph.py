"""Samplers for Chung-Lu and Erdős–Rényi graphs, plus a constrained
generator of expected-degree sequences.

Reproducibility: every sampler takes an :class:`RngSeed`, a 64-bit seed plus
a tuple of stream ids.  The generator algorithm is fixed (NumPy ``PCG64``
keyed by ``SeedSequence(seed, spawn_key=stream)``), so identical seeds give
bit-identical samples; experiment units derive disjoint streams with
:meth:`RngSeed.spawn`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .counting import DegreeSequence
from .errors import InadmissibleSequence, InfeasibleConfig, TargetUnreachable
from .graph import Graph, _from_adjacency

#: Below this node count the samplers draw one Bernoulli per pair (O(n^2),
#: vectorized); above it they use a geometric skipping method with the same
#: distribution but O(n + m) draws.
DENSE_LIMIT = 2000


@dataclass(frozen=True)
class RngSeed:
    """A seed plus a stream path, giving independent per-unit generators."""

    seed: int
    stream: tuple = ()

    def spawn(self, *ids: int) -> "RngSeed":
        """Child seed for an experiment sub-unit."""
        return RngSeed(self.seed, self.stream + tuple(ids))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        return np.random.Generator(np.random.PCG64(ss))


def _as_seed(seed: Union[int, RngSeed]) -> RngSeed:
    return seed if isinstance(seed, RngSeed) else RngSeed(int(seed))


def _graph_from_pairs(n, pair_arrays, loops):
    out = [[] for _ in range(n)]
    for i, j in pair_arrays:
        out[i].append((j, 1.0))
        out[j].append((i, 1.0))
    for i in loops:
        out[i].append((i, 1.0))
    return _from_adjacency(n, False, out)


def sample_chung_lu(seq: DegreeSequence, seed: Union[int, RngSeed]) -> Graph:
    """Sample an undirected graph with independent edges.

    Pair ``{i, j}`` (``i != j``) is an edge with probability
    ``d_i d_j / S``; node ``i`` gets a self-loop with probability
    ``min(1, d_i^2 / S)``.  All weights are 1.

    Raises:
        InadmissibleSequence: ``max(d)^2 > S``.
    """
    if not seq.admissible:
        raise InadmissibleSequence(
            f"d_max^2 = {seq.d_max ** 2:.6g} exceeds S = {seq.S:.6g}"
        )
    rng = _as_seed(seed).generator()
    n = seq.n
    d = seq.d
    if seq.S == 0:
        return _from_adjacency(n, False, [[] for _ in range(n)])

    if n <= DENSE_LIMIT:
        iu, ju = np.triu_indices(n, k=1)
        probs = d[iu] * d[ju] / seq.S
        hit = rng.random(len(iu)) < probs
        pairs = list(zip(iu[hit].tolist(), ju[hit].tolist()))
    else:
        pairs = _chung_lu_pairs_sparse(d, seq.S, rng)
    loop_hit = rng.random(n) < np.minimum(1.0, d * d / seq.S)
    loops = np.nonzero(loop_hit)[0].tolist()
    return _graph_from_pairs(n, pairs, loops)


def _chung_lu_pairs_sparse(d, S, rng):
    """Geometric-skipping pair sampler; identical distribution to the dense
    per-pair draws.  Nodes are visited in descending-degree order so the
    running probability bound only decreases along each row."""
    n = len(d)
    order = np.argsort(-d, kind="stable")
    dd = d[order]
    pairs = []
    for i in range(n - 1):
        di = dd[i]
        if di <= 0:
            break
        j = i + 1
        p = min(di * dd[j] / S, 1.0)
        while j < n and p > 0:
            if p < 1.0:
                j += int(math.log(1.0 - rng.random()) / math.log(1.0 - p))
            if j < n:
                q = min(di * dd[j] / S, 1.0)
                if rng.random() < q / p:
                    a, b = int(order[i]), int(order[j])
                    pairs.append((a, b) if a < b else (b, a))
                p = q
                j += 1
    return pairs


def sample_erdos_renyi(n: int, avg_degree: float, seed: Union[int, RngSeed]) -> Graph:
    """Sample G(n, p) with ``p = avg_degree / (n - 1)``, no self-loops, unit weights."""
    if n < 1:
        raise InfeasibleConfig("n must be >= 1")
    if n == 1:
        if avg_degree != 0:
            raise InfeasibleConfig("a 1-node graph must have avg_degree 0")
        return _from_adjacency(1, False, [[]])
    if not 0 <= avg_degree <= n - 1:
        raise InfeasibleConfig(f"avg_degree must lie in [0, n-1], got {avg_degree}")
    p = avg_degree / (n - 1)
    rng = _as_seed(seed).generator()
    if p == 0:
        pairs = []
    elif n <= DENSE_LIMIT or p >= 1.0:
        iu, ju = np.triu_indices(n, k=1)
        hit = rng.random(len(iu)) < p if p < 1.0 else np.ones(len(iu), bool)
        pairs = list(zip(iu[hit].tolist(), ju[hit].tolist()))
    else:
        pairs = _gnp_pairs_sparse(n, p, rng)
    return _graph_from_pairs(n, pairs, [])


def _gnp_pairs_sparse(n, p, rng):
    """Skip-sampling over the upper triangle in row-major order."""
    pairs = []
    lq = math.log(1.0 - p)
    i, j = 0, 0
    while i < n - 1:
        j += 1 + int(math.log(1.0 - rng.random()) / lq)
        while j >= n and i < n - 1:
            j = i + 2 + (j - n)  # overflow wraps to row i+1, whose columns start at i+2
            i += 1
        if i < n - 1 and j < n:
            pairs.append((i, j))
    return pairs


@dataclass(frozen=True)
class McmcConfig:
    """Constraints for a generated expected-degree sequence.

    ``target_ratio`` is the wanted second-moment ratio ``S2 / S``;
    ``hub_count`` entries are pinned to ``sqrt(S)``; the remaining entries
    stay in ``[d_min, sqrt(S)]`` and always sum (with the hubs) to exactly
    ``n * target_avg``.  The search stops once
    ``|S2/S - target_ratio| <= tolerance * target_ratio``.
    """

    n: int
    target_avg: float
    target_ratio: float
    hub_count: int = 0
    tolerance: float = 0.02
    max_iters: int = 200_000
    d_min: float = 1.0

    def __post_init__(self):
        if self.n < 2 or self.target_avg <= 0:
            raise InfeasibleConfig("need n >= 2 and target_avg > 0")
        if self.tolerance <= 0:
            raise InfeasibleConfig("tolerance must be > 0")
        if not 0 <= self.hub_count < self.n:
            raise InfeasibleConfig("hub_count must lie in [0, n)")
        S = self.n * self.target_avg
        if self.hub_count * math.sqrt(S) > S:
            raise InfeasibleConfig("pinned hubs would exceed the total degree mass")
        if self.d_min <= 0:
            raise InfeasibleConfig("d_min must be > 0")


def _mcmc_bounds(cfg: McmcConfig):
    """Feasible [min, max] of S2/S with hubs pinned and d in [d_min, sqrt(S)]."""
    S = cfg.n * cfg.target_avg
    root = math.sqrt(S)
    h = cfg.hub_count
    free = cfg.n - h
    mass = S - h * root
    if mass < free * cfg.d_min - 1e-9:
        raise InfeasibleConfig(
            "non-hub mass too small: every free entry must be at least d_min"
        )
    uniform = mass / free
    if uniform > root + 1e-9:
        raise InfeasibleConfig("non-hub mass too large to respect d <= sqrt(S)")
    s2_min = h * S + free * uniform**2
    # Maximal spread: lift as many free entries as possible to sqrt(S),
    # leave the rest at d_min, one entry in between.
    lifted = int((mass - free * cfg.d_min) // (root - cfg.d_min)) if root > cfg.d_min else 0
    lifted = min(lifted, free)
    rem = mass - lifted * root - (free - lifted) * cfg.d_min
    s2_max = h * S + lifted * root**2 + (free - lifted) * cfg.d_min**2
    if lifted < free:
        s2_max += rem * (2 * cfg.d_min + rem)  # move one entry from d_min up by rem
    return s2_min / S, s2_max / S


def mcmc_degree_sequence(cfg: McmcConfig, seed: Union[int, RngSeed]) -> DegreeSequence:
    """Search for a degree sequence hitting the requested moment ratio.

    Start from the flattest feasible sequence (hubs pinned to ``sqrt(S)``,
    everything else uniform) and repeatedly move random mass between two
    free entries, keeping a move only if it brings ``S2/S`` strictly closer
    to the target.  Every accepted state keeps the exact total and the
    admissibility cap, so only the stop criterion needs checking.

    Raises:
        TargetUnreachable: the target ratio lies outside the feasible range,
            or ``max_iters`` moves were not enough.
        InfeasibleConfig: contradictory constraints.
    """
    lo, hi = _mcmc_bounds(cfg)
    target = cfg.target_ratio
    tol = cfg.tolerance * target
    if hi < target - tol or lo > target + tol:
        raise TargetUnreachable(
            f"S2/S target {target:.6g} outside feasible range [{lo:.6g}, {hi:.6g}]"
        )

    S = cfg.n * cfg.target_avg
    root = math.sqrt(S)
    h = cfg.hub_count
    free = cfg.n - h
    d = np.empty(cfg.n)
    d[:h] = root
    d[h:] = (S - h * root) / free

    S2 = float((d * d).sum())
    err = abs(S2 / S - target)
    if err <= tol:
        return DegreeSequence(d)

    rng = _as_seed(seed).generator()
    for _ in range(cfg.max_iters):
        i, j = rng.integers(h, cfg.n, size=2)
        if i == j:
            continue
        headroom = d[i] - cfg.d_min
        if headroom <= 0:
            continue
        delta = rng.uniform(0.0, headroom)
        new_j = d[j] + delta
        if new_j > root:
            continue
        new_i = d[i] - delta
        s2_new = S2 + (new_i * new_i + new_j * new_j) - (d[i] * d[i] + d[j] * d[j])
        err_new = abs(s2_new / S - target)
        if err_new < err:
            d[i], d[j] = new_i, new_j
            S2, err = s2_new, err_new
            if err <= tol:
                return DegreeSequence(d)
    raise TargetUnreachable(
        f"did not reach S2/S = {target:.6g} within {cfg.max_iters} moves "
        f"(closest {S2 / S:.6g})"
    )
