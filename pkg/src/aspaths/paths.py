"""Bounded-length path enumeration via a backward path tree.

``pathfind`` returns every walk from source to target whose total weight is
at most a bound ``D``.  It grows a tree rooted at the target: each tree node
carries the graph node it stands for and the length of the partial walk from
that point to the target.  An in-neighbor ``n`` of the frontier node ``l``
is admitted iff

    dist(source, n) + weight(n, l) <= D - l.trackdistance

i.e. iff some walk through that arc can still finish within the bound.
Because in-neighbor lists are pre-sorted by that key, the scan of a
neighbor list stops at the first violation.  Tree nodes that stand for the
source are collected, and each one's chain of parents spells out one output
path.

``brute_force_walks`` is the independent oracle: a depth-first exhaustive
enumeration pruned only on accumulated length, with optional
nonbacktracking / simple filters applied during extension.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .errors import (
    DegenerateQuery,
    GuardViolation,
    PathBudgetExceeded,
    TreeBudgetExceeded,
)
from .graph import EPSILON, FROM_SOURCE, DistanceMap, Graph, SortedAdjacency
from .graph import shortest_distances, sorted_in_neighbors

DEFAULT_PATH_NODE_BUDGET = 100_000_000
DEFAULT_TREE_NODE_BUDGET = 100_000_000

WALK = "walk"
NONBACKTRACKING = "nonbacktracking"
SIMPLE = "simple"


@dataclass(frozen=True)
class Path:
    """A walk materialized as its node sequence plus total weight."""

    nodes: tuple
    length: float

    def edges(self, directed: bool = False) -> list:
        """Canonical edge identities along the walk (sorted pairs if undirected)."""
        out = []
        seq = self.nodes
        for a, b in zip(seq, seq[1:]):
            out.append((a, b) if directed or a <= b else (b, a))
        return out

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class PathQuery:
    """Inputs for one enumeration run.

    ``max_paths`` budgets the *aggregate node count* over all output paths
    (a proxy for output memory); ``max_tree_nodes`` budgets the search tree.
    Hitting either limit raises and discards partial results.
    """

    source: int
    target: int
    bound: float
    max_paths: int = DEFAULT_PATH_NODE_BUDGET
    max_tree_nodes: int = DEFAULT_TREE_NODE_BUDGET

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError(f"bound must be >= 0, got {self.bound}")
        if self.max_paths <= 0 or self.max_tree_nodes <= 0:
            raise ValueError("budgets must be positive")


# Search-tree nodes are plain tuples (parent, id, trackdistance, depth):
# ``parent`` references the parent tuple (None for the root), ``id`` is the
# graph node this tree node stands for, and ``trackdistance`` is the length,
# in the graph, of the partial walk from here to the root's graph node.
# Tuples keep the hot allocation path cheap; trees routinely reach millions
# of nodes.
_PARENT, _ID, _TRACK, _DEPTH = range(4)


def pathfind(
    graph: Graph,
    query: PathQuery,
    epsilon: float = EPSILON,
    dist_from_source: Optional[DistanceMap] = None,
    adjacency: Optional[SortedAdjacency] = None,
    stats: Optional[dict] = None,
) -> List[Path]:
    """Enumerate every walk from source to target with length <= bound.

    Output order is the tree construction order (breadth-first, neighbor
    ties broken by ascending node id), so results are deterministic.
    ``dist_from_source`` / ``adjacency`` may be supplied to reuse
    preprocessing across queries with the same source.  When ``stats`` is a
    dict it receives ``tree_nodes``, ``leaves`` and ``path_nodes`` counters.

    Raises:
        DegenerateQuery: ``source == target``.
        PathBudgetExceeded / TreeBudgetExceeded: budget overruns.
    """
    source, target, bound = query.source, query.target, query.bound
    if source == target:
        raise DegenerateQuery("source and target must differ")
    if dist_from_source is None:
        dist_from_source = shortest_distances(graph, source, FROM_SOURCE)
    if adjacency is None:
        adjacency = sorted_in_neighbors(graph, dist_from_source)
    if adjacency.source != source:
        raise ValueError("adjacency was sorted for a different source")

    nbrs = adjacency.neighbors
    max_tree = query.max_tree_nodes
    max_path_nodes = query.max_paths

    root = (None, target, 0.0, 0)
    tree = [root]  # doubles as the FIFO queue: nodes are never removed
    tree_append = tree.append
    tree_len = 1
    path_start = []
    start_append = path_start.append
    path_nodes = 0
    qi = 0
    while qi < tree_len:
        l = tree[qi]
        qi += 1
        track = l[2]
        limit = bound - track + epsilon
        depth = l[3] + 1
        for key, n, w in nbrs[l[1]]:
            if key > limit:
                break
            z = (l, n, w + track, depth)
            tree_append(z)
            tree_len += 1
            if tree_len > max_tree:
                raise TreeBudgetExceeded(tree_len, max_tree)
            if n == source:
                start_append(z)
                path_nodes += depth + 1
                if path_nodes > max_path_nodes:
                    raise PathBudgetExceeded(len(path_start), path_nodes, max_path_nodes)

    paths = []
    for v in path_start:
        chain = []
        node = v
        while node is not None:
            chain.append(node[_ID])
            node = node[_PARENT]
        paths.append(Path(nodes=tuple(chain), length=v[_TRACK]))

    if stats is not None:
        has_child = {id(node[_PARENT]) for node in tree[1:]}
        leaves = [node for node in tree if id(node) not in has_child]
        stats["tree_nodes"] = tree_len
        stats["leaves"] = len(leaves)
        stats["leaf_ids"] = sorted({node[_ID] for node in leaves})
        stats["path_nodes"] = path_nodes
    return paths


def brute_force_walks(
    graph: Graph,
    source: int,
    target: int,
    bound: float,
    mode: str = WALK,
    epsilon: float = EPSILON,
    max_nodes_guard: int = 64,
    force: bool = False,
) -> List[Path]:
    """Exhaustively enumerate bounded-length walks by depth-first search.

    The only pruning is on accumulated length, which keeps this routine an
    oracle independent of the path-tree machinery.  ``mode`` restricts
    extensions: ``"nonbacktracking"`` forbids immediate edge reversal
    (``x[i] == x[i+2]``), ``"simple"`` forbids any node revisit.

    Intended for small instances; guarded at ``n <= 64`` unless ``force``.
    """
    if mode not in (WALK, NONBACKTRACKING, SIMPLE):
        raise ValueError(f"unknown mode {mode!r}")
    if graph.n > max_nodes_guard and not force:
        raise GuardViolation(
            f"brute force limited to {max_nodes_guard} nodes (got {graph.n}); "
            "pass force=True to override"
        )
    if source == target:
        raise DegenerateQuery("source and target must differ")

    out = graph.out_neighbors
    sorted_out = [sorted(nbrs) for nbrs in out]
    results: List[Path] = []
    walk = [source]
    visited = {source} if mode == SIMPLE else None

    def extend(acc: float) -> None:
        cur = walk[-1]
        if cur == target:
            results.append(Path(nodes=tuple(walk), length=acc))
        for v, w in sorted_out[cur]:
            nd = acc + w
            if nd > bound + epsilon:
                continue
            if mode == NONBACKTRACKING and len(walk) >= 2 and v == walk[-2]:
                continue
            if mode == SIMPLE and v in visited:
                continue
            walk.append(v)
            if visited is not None:
                visited.add(v)
            extend(nd)
            walk.pop()
            if visited is not None:
                visited.discard(v)

    # Depth can reach bound/min_weight; give the recursion room.
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 10_000))
    try:
        extend(0.0)
    finally:
        sys.setrecursionlimit(old_limit)
    return results


def is_simple(path: Path) -> bool:
    """True iff no node repeats."""
    return len(set(path.nodes)) == len(path.nodes)


def is_nonbacktracking(path: Path) -> bool:
    """True iff the walk never reverses an edge immediately (x[i] != x[i+2])."""
    seq = path.nodes
    return all(seq[i] != seq[i + 2] for i in range(len(seq) - 2))


def filter_simple(paths: Iterable[Path]) -> List[Path]:
    """Stable subsequence of the input keeping only simple paths."""
    return [p for p in paths if is_simple(p)]


def format_path_line(path: Path, labels=None, with_length: bool = False) -> str:
    """Render one path as comma-separated labels, optionally ``:length``-suffixed."""
    names = [labels[v] if labels is not None else str(v) for v in path.nodes]
    line = ",".join(names)
    if with_length:
        line += f":{path.length!r}"
    return line


def paths_to_json(paths: Iterable[Path], labels=None) -> list:
    """JSON-ready representation: a list of ``{"nodes": [...], "length": x}``."""
    out = []
    for p in paths:
        names = [labels[v] if labels is not None else str(v) for v in p.nodes]
        out.append({"nodes": names, "length": p.length})
    return out
