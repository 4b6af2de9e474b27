"""Nonbacktracking path machinery.

For a fixed target ``t``, ``d_nbp(a -> b)`` denotes the length of the
shortest nonbacktracking walk that starts with the arc ``(a, b)`` and ends
at ``t``.  Most arcs are easy: if ``b``'s next hop toward ``t`` is not
``a``, the arc followed by the shortest-path tree branch from ``b`` is
already nonbacktracking, so the value is ``w(a,b) + dist(b)``.  The
remaining arcs are exactly the reversals of shortest-path-tree edges, and
for those

    d_nbp(a -> b) = w(a,b) + min over neighbors n of b, n != a, of
        d_nbp(b -> n)            if n's next hop is b
        w(b,n) + dist(n)         otherwise

Each tree-reversal value depends only on values one level deeper in the
tree, so a single pass from the leaves upward resolves everything in
O(m + n).

``nbp_pathfind`` then enumerates all nonbacktracking walks of length <= D
by growing walks forward from the source, admitting an extension exactly
when it is not an immediate reversal and its ``d_nbp`` still fits in the
remaining budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

from .errors import DegenerateQuery, PathBudgetExceeded, TreeBudgetExceeded
from .graph import EPSILON, TO_TARGET, DistanceMap, Graph, shortest_distances
from .paths import _ID, _PARENT, _TRACK, Path, PathQuery

INF = math.inf


@dataclass
class ShortestPathTree:
    """A deterministic shortest-path tree oriented toward ``target``.

    ``next_hop[b]`` is the parent of ``b`` on its shortest route to the
    target (``None`` for the target itself and for unreachable nodes);
    among equally good parents the lowest node id wins.
    """

    target: int
    next_hop: list
    dist: DistanceMap

    def tree_arcs(self) -> set:
        """The arc set ``{(b, next_hop(b))}``."""
        return {(b, p) for b, p in enumerate(self.next_hop) if p is not None}


@dataclass
class NbpDistanceMap:
    """Per-arc shortest nonbacktracking-walk lengths to a fixed target."""

    target: int
    values: dict

    def __getitem__(self, arc) -> float:
        return self.values[arc]


def build_shortest_path_tree(graph: Graph, target: int, epsilon: float = EPSILON) -> ShortestPathTree:
    """Build the lowest-id-tie-broken shortest path tree toward ``target``."""
    dist = shortest_distances(graph, target, TO_TARGET)
    d = dist.dist
    next_hop: list = [None] * graph.n
    for b in range(graph.n):
        if b == target or d[b] == INF:
            continue
        best = None
        for a, w in graph.out_neighbors[b]:
            if w + d[a] <= d[b] + epsilon and (best is None or a < best):
                best = a
        next_hop[b] = best
    return ShortestPathTree(target=target, next_hop=next_hop, dist=dist)


def nbp_distances(graph: Graph, tree: ShortestPathTree, epsilon: float = EPSILON) -> NbpDistanceMap:
    """Compute ``d_nbp`` for every arc of the graph in one bottom-up pass.

    The minimum over an empty (or all-infinite) continuation set is
    ``inf``: no nonbacktracking walk with that first arc reaches the target.
    """
    d = tree.dist.dist
    next_hop = tree.next_hop
    target = tree.target

    weights = graph.arc_weights()

    # Children lists and a leaves-upward ordering of the tree.
    children = [[] for _ in range(graph.n)]
    for b, p in enumerate(next_hop):
        if p is not None:
            children[p].append(b)
    order = [target]
    qi = 0
    while qi < len(order):
        order.extend(children[order[qi]])
        qi += 1

    # Values for arcs that reverse a tree edge, deepest children first.
    reverse_tree: dict = {}
    for b in reversed(order):
        a = next_hop[b]
        if a is None:
            continue
        w_ab = weights.get((a, b))
        if w_ab is None:
            continue  # the reverse arc does not exist in a directed graph
        best = INF
        for n, w_bn in graph.out_neighbors[b]:
            if n == a:
                continue
            if next_hop[n] == b:
                cand = reverse_tree[(b, n)]
            else:
                cand = w_bn + d[n]
            if cand < best:
                best = cand
        reverse_tree[(a, b)] = w_ab + best

    values = {}
    for a in range(graph.n):
        for b, w in graph.out_neighbors[a]:
            if next_hop[b] == a:
                values[(a, b)] = reverse_tree[(a, b)]
            else:
                values[(a, b)] = w + d[b]
    return NbpDistanceMap(target=target, values=values)


def nbp_pathfind(
    graph: Graph,
    query: PathQuery,
    epsilon: float = EPSILON,
    nbp_map: Optional[NbpDistanceMap] = None,
    stats: Optional[dict] = None,
) -> List[Path]:
    """Enumerate every nonbacktracking walk from source to target within the bound.

    Walks grow forward from the source; an extension of ``(x0..xm)`` by a
    neighbor ``y`` is admitted iff ``y != x[m-1]`` and
    ``d_nbp(xm -> y) <= bound - length_so_far``.  Out-neighbor lists are
    pre-sorted by ``d_nbp`` so scans stop at the first too-long extension.
    Budgets and determinism rules match ``pathfind``.
    """
    source, target, bound = query.source, query.target, query.bound
    if source == target:
        raise DegenerateQuery("source and target must differ")
    if nbp_map is None:
        nbp_map = nbp_distances(graph, build_shortest_path_tree(graph, target, epsilon), epsilon)
    if nbp_map.target != target:
        raise ValueError("nbp_map was computed for a different target")
    values = nbp_map.values

    sorted_out = []
    for a in range(graph.n):
        entries = [(values[(a, n)], n, w) for n, w in graph.out_neighbors[a]]
        entries.sort(key=lambda e: (e[0], e[1]))
        sorted_out.append(entries)

    max_tree = query.max_tree_nodes
    max_path_nodes = query.max_paths
    # forward tree nodes: (parent, id, trackdistance, depth), as in pathfind
    root = (None, source, 0.0, 0)
    tree = [root]
    tree_append = tree.append
    tree_len = 1
    hits = []
    path_nodes = 0
    qi = 0
    while qi < tree_len:
        l = tree[qi]
        qi += 1
        track = l[2]
        limit = bound - track + epsilon
        parent = l[0]
        prev = parent[1] if parent is not None else -1
        depth = l[3] + 1
        for key, n, w in sorted_out[l[1]]:
            if key > limit:
                break
            if n == prev:
                continue
            z = (l, n, track + w, depth)
            tree_append(z)
            tree_len += 1
            if tree_len > max_tree:
                raise TreeBudgetExceeded(tree_len, max_tree)
            if n == target:
                hits.append(z)
                path_nodes += depth + 1
                if path_nodes > max_path_nodes:
                    raise PathBudgetExceeded(len(hits), path_nodes, max_path_nodes)

    paths = []
    for v in hits:
        chain = []
        node = v
        while node is not None:
            chain.append(node[_ID])
            node = node[_PARENT]
        chain.reverse()
        paths.append(Path(nodes=tuple(chain), length=v[_TRACK]))

    if stats is not None:
        stats["tree_nodes"] = tree_len
        stats["path_nodes"] = path_nodes
    return paths


def nbp_values_csv(nbp_map: NbpDistanceMap, labels=None) -> str:
    """Debug dump of per-arc values as ``a,b,value`` CSV lines, sorted by arc."""
    lines = ["a,b,value"]
    for (a, b) in sorted(nbp_map.values):
        v = nbp_map.values[(a, b)]
        la = labels[a] if labels is not None else str(a)
        lb = labels[b] if labels is not None else str(b)
        lines.append(f"{la},{lb},{v!r}")
    return "\n".join(lines) + "\n"
