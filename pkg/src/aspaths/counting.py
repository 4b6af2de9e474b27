"""Path-existence probabilities and expected path counts under the
independent-edge (Chung-Lu) random graph model.

The model: an undirected graph on ``n`` nodes with expected degrees
``d[0..n-1]``; each pair ``{i, j}`` is an independent edge with probability
``d[i] d[j] / S`` where ``S = sum(d)`` (self-loop at ``i`` with probability
``d[i]^2 / S``).  Admissibility requires ``max(d)^2 <= S`` so probabilities
stay in [0, 1].

A walk exists iff all of its *distinct* edges exist.  ``classify_edges``
decomposes a walk into new-edge and repeating-edge blocks; from that
decomposition ``path_probability`` evaluates the existence probability as a
product of degree factors, one per distinct edge.  ``expected_sp_lower`` and
``expected_nbp_upper`` are closed-form bounds on the expected number of
simple / nonbacktracking paths of a given length, and ``expected_sp_exact``
is the brute-force expectation used to sanity-check both.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import GuardViolation, PreconditionViolated
from .paths import Path

NEW = "new"
REPEATING = "repeating"


class DegreeSequence:
    """Expected degrees with the cached aggregates every formula needs.

    Attributes:
        d: the degrees as a float array.
        S: sum of degrees.
        S2: sum of squared degrees.
        d_max: largest degree.
        p_max: ``d_max^2 / S``, the largest pairwise edge probability.
    """

    def __init__(self, degrees: Sequence[float]):
        d = np.asarray(degrees, dtype=float)
        if d.ndim != 1 or len(d) == 0:
            raise ValueError("degree sequence must be a nonempty 1-d array")
        if np.any(d < 0) or not np.all(np.isfinite(d)):
            raise ValueError("degrees must be finite and nonnegative")
        self.d = d
        self.S = float(d.sum())
        self.S2 = float((d * d).sum())
        self.d_max = float(d.max())
        self.p_max = self.d_max**2 / self.S if self.S > 0 else 0.0

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def admissible(self) -> bool:
        """Model admissibility: ``d_max^2 <= S``."""
        return self.d_max**2 <= self.S * (1 + 1e-12)

    def edge_probability(self, i: int, j: int) -> float:
        """``d_i d_j / S`` (``d_i^2 / S`` for the self-loop ``i == j``)."""
        return float(self.d[i] * self.d[j] / self.S)

    def __len__(self) -> int:
        return len(self.d)

    def __getitem__(self, i: int) -> float:
        return float(self.d[i])


def load_degree_sequence(source) -> DegreeSequence:
    """Read a degree sequence from one-value-per-line text or a JSON array."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        return DegreeSequence(json.loads(text))
    values = [float(line.split("#", 1)[0]) for line in text.splitlines()
              if line.split("#", 1)[0].strip()]
    return DegreeSequence(values)


def save_degree_sequence(seq: DegreeSequence, fh) -> None:
    for v in seq.d:
        fh.write(f"{float(v)!r}\n")


@dataclass
class EdgeClassification:
    """Decomposition of one walk into new and repeating edges.

    ``tags[k]`` labels the k-th edge; blocks are maximal runs of
    equally-tagged edges, given as inclusive edge-index ranges.  ``N`` lists
    interior nodes whose two incident edges are both new.  ``R1`` / ``R2``
    hold the (first, last) node pair of each repeating block, split by
    whether the block's first node occurred anywhere earlier in the walk.
    ``q[i]`` counts repeating blocks of i edges.
    """

    tags: list
    new_edge_blocks: list
    repeating_edge_blocks: list
    N: list
    R1: list
    R2: list
    q: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "tags": list(self.tags),
            "N": list(self.N),
            "R1": [list(p) for p in self.R1],
            "R2": [list(p) for p in self.R2],
            "q": {str(k): v for k, v in sorted(self.q.items())},
        }


def _node_sequence(path: Union[Path, Sequence[int]]) -> tuple:
    nodes = path.nodes if isinstance(path, Path) else tuple(path)
    if len(nodes) < 2:
        raise ValueError("walk must have at least one edge")
    return nodes


def classify_edges(path: Union[Path, Sequence[int]], directed: bool = False) -> EdgeClassification:
    """Tag each edge of a walk as new or repeating and build the block lists.

    In undirected mode ``(u, v)`` and ``(v, u)`` are the same edge for
    repetition purposes.  A block's first node "appeared earlier" iff that
    node occurs at any strictly earlier position of the walk.
    """
    nodes = _node_sequence(path)
    r = len(nodes) - 1

    seen = set()
    tags = []
    for k in range(r):
        u, v = nodes[k], nodes[k + 1]
        key = (u, v) if directed or u <= v else (v, u)
        tags.append(REPEATING if key in seen else NEW)
        seen.add(key)

    new_blocks, rep_blocks = [], []
    k = 0
    while k < r:
        j = k
        while j + 1 < r and tags[j + 1] == tags[k]:
            j += 1
        (new_blocks if tags[k] == NEW else rep_blocks).append((k, j))
        k = j + 1

    N = [nodes[m] for m in range(1, r) if tags[m - 1] == NEW and tags[m] == NEW]

    R1, R2, q = [], [], {}
    for (i, j) in rep_blocks:
        first, last = nodes[i], nodes[j + 1]
        pair = (first, last)
        if first in nodes[:i]:
            R1.append(pair)
        else:
            R2.append(pair)
        length = j - i + 1
        q[length] = q.get(length, 0) + 1

    return EdgeClassification(
        tags=tags,
        new_edge_blocks=new_blocks,
        repeating_edge_blocks=rep_blocks,
        N=N,
        R1=R1,
        R2=R2,
        q=q,
    )


def path_probability(path: Union[Path, Sequence[int]], seq: DegreeSequence) -> float:
    """Probability that every edge of the walk exists in the model.

    Valid only for walks whose first and last edges are new; computed from
    the block decomposition as

        (d_first * d_last / S)
        * prod over N of d^2 / S
        * prod over R1 and R2 pairs of d_a * d_b / S

    which equals the product of per-edge probabilities over the walk's
    distinct edges.  Evaluated in log space so long walks do not underflow.
    """
    nodes = _node_sequence(path)
    cls = classify_edges(nodes, directed=False)
    if cls.tags[0] != NEW or cls.tags[-1] != NEW:
        raise PreconditionViolated("first and last edges of the walk must be new edges")

    d, S = seq.d, seq.S
    factors = [d[nodes[0]] * d[nodes[-1]]]
    factors.extend(d[i] * d[i] for i in cls.N)
    factors.extend(d[a] * d[b] for a, b in cls.R1)
    factors.extend(d[a] * d[b] for a, b in cls.R2)
    if any(f == 0.0 for f in factors):
        return 0.0
    log_p = sum(math.log(f) - math.log(S) for f in factors)
    return math.exp(log_p)


def expected_sp_lower(seq: DegreeSequence, s: int, t: int, r: int) -> float:
    """Closed-form lower bound on the expected number of simple paths of
    length ``r`` between ``s`` and ``t``:

        p_st * (S2/S)^(r-1) * (1 - r(r+1)/2 * p_max * S/S2)

    The value can go negative for large ``r``; it is returned as-is, since a
    negative lower bound is merely vacuous (callers may flag it).
    """
    if r < 1:
        raise ValueError("path length r must be >= 1")
    if s == t:
        raise ValueError("s and t must differ")
    p_st = seq.edge_probability(s, t)
    ratio = seq.S2 / seq.S
    return p_st * ratio ** (r - 1) * (1.0 - r * (r + 1) / 2.0 * seq.p_max / ratio)


def expected_nbp_upper(seq: DegreeSequence, s: int, t: int, r: int) -> float:
    """Closed-form upper bound on the expected number of nonbacktracking
    paths of length ``r`` between ``s`` and ``t``:

        p_st * (S2/S)^(r-1) / (1 - S/S2)
             * exp((2r * S/S2)^2 * p_max / (1 - 2r * S/S2))

    Requires ``S2 > S`` and ``2r < S2/S``.
    """
    if r < 1:
        raise ValueError("path length r must be >= 1")
    if s == t:
        raise ValueError("s and t must differ")
    if seq.S2 <= seq.S:
        raise PreconditionViolated("requires S2 > S")
    ratio = seq.S2 / seq.S
    if 2 * r >= ratio:
        raise PreconditionViolated(f"requires 2r < S2/S (2r={2 * r}, S2/S={ratio:.6g})")
    x = 2 * r / ratio
    p_st = seq.edge_probability(s, t)
    return p_st * ratio ** (r - 1) / (1.0 - 1.0 / ratio) * math.exp(x * x * seq.p_max / (1.0 - x))


def expected_sp_exact(
    seq: DegreeSequence,
    s: int,
    t: int,
    r: int,
    max_tuples: int = 10_000_000,
) -> float:
    """Exact expected number of simple paths of length ``r``: the sum, over
    all tuples ``(s, b1, .., b_{r-1}, t)`` of distinct nodes, of the product
    of edge probabilities.

    Brute-force enumeration over interior tuples; guarded to small
    instances (``n <= 12`` or at most ``max_tuples`` tuples).
    """
    if r < 1:
        raise ValueError("path length r must be >= 1")
    if s == t:
        raise ValueError("s and t must differ")
    n = seq.n
    interior = [i for i in range(n) if i != s and i != t]
    k = r - 1
    if k > len(interior):
        return 0.0
    count = 1
    for i in range(k):
        count *= len(interior) - i
    if n > 12 and count > max_tuples:
        raise GuardViolation(
            f"{count} interior tuples exceeds the {max_tuples} guard for n={n}"
        )
    p_st = seq.edge_probability(s, t)
    if k == 0:
        return p_st
    x = (seq.d * seq.d) / seq.S
    total = 0.0
    for combo in itertools.permutations(interior, k):
        prod = 1.0
        for b in combo:
            prod *= x[b]
        total += prod
    return p_st * total
