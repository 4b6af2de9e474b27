"""Weighted graph representation and single-anchor shortest distances.

Graphs are stored as dense-id adjacency lists with both out- and in-neighbor
views, which is what backward path-tree searches need.  Undirected graphs
keep every edge as a pair of mirrored arcs (a self-loop is its own mirror and
is stored once per view).  All edge weights are strictly positive.

Node ids are integers in ``[0, n)``.  An optional label table maps external
names (AS numbers, letters in worked examples) to ids; files are read and
written in terms of labels.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import DuplicateEdge, InvalidEdge, NonPositiveWeight

#: Absolute tolerance for comparing accumulated path lengths.  With integer
#: weights it never changes a decision.
EPSILON = 1e-9

INF = math.inf

FROM_SOURCE = "from-source"
TO_TARGET = "to-target"


@dataclass
class Graph:
    """Immutable-after-construction weighted graph with dual adjacency views.

    Attributes:
        n: node count; ids are ``0 .. n-1``.
        directed: whether arcs are one-way.
        out_neighbors: per node, list of ``(head, weight)`` arcs leaving it.
        in_neighbors: per node, list of ``(tail, weight)`` arcs entering it.
        m: total arc count (an undirected edge contributes two arcs, a
            self-loop one).
        labels: optional external names, index-aligned with node ids.
    """

    n: int
    directed: bool
    out_neighbors: list
    in_neighbors: list
    m: int
    labels: Optional[list] = None
    _label_to_id: Optional[dict] = field(default=None, repr=False)

    def degree(self, v: int) -> int:
        """Number of arcs leaving ``v`` (incident edges for undirected graphs)."""
        return len(self.out_neighbors[v])

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def id_of(self, label: str) -> int:
        """Dense id for an external label (labels default to ``str(id)``)."""
        if self.labels is None:
            try:
                v = int(label)
            except ValueError:
                raise KeyError(label) from None
            if not 0 <= v < self.n:
                raise KeyError(label)
            return v
        if self._label_to_id is None:
            self._label_to_id = {lab: i for i, lab in enumerate(self.labels)}
        return self._label_to_id[label]

    def arc_weights(self) -> dict:
        """Map ``(tail, head) -> weight`` over every arc."""
        w = {}
        for u, nbrs in enumerate(self.out_neighbors):
            for v, wt in nbrs:
                w[(u, v)] = wt
        return w

    def edge_set(self) -> set:
        """Canonical edge identities: ordered pairs if directed, else sorted pairs."""
        if self.directed:
            return {(u, v) for u, nbrs in enumerate(self.out_neighbors) for v, _ in nbrs}
        return {
            (u, v) if u <= v else (v, u)
            for u, nbrs in enumerate(self.out_neighbors)
            for v, _ in nbrs
        }


def build_graph(
    edge_records: Iterable,
    directed: bool = False,
    n: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
) -> Graph:
    """Build a graph from ``(u, v, weight)`` records with dense integer ids.

    Undirected records are mirrored into both arc directions.  Parallel edges
    are rejected; self-loops are allowed and stored once per adjacency view.

    Raises:
        NonPositiveWeight: some weight is <= 0.
        DuplicateEdge: a record repeats an earlier edge (or its mirror).
        InvalidEdge: a node reference is negative, non-integer, or >= ``n``.
    """
    records = []
    max_id = -1
    for rec in edge_records:
        if len(rec) == 2:
            u, v = rec
            w = 1.0
        else:
            u, v, w = rec
        if not (isinstance(u, int) and isinstance(v, int)) or u < 0 or v < 0:
            raise InvalidEdge(f"node ids must be nonnegative integers, got ({u!r}, {v!r})")
        w = float(w)
        if not w > 0.0:
            raise NonPositiveWeight(f"edge ({u}, {v}) has weight {w}; weights must be > 0")
        records.append((u, v, w))
        max_id = max(max_id, u, v)

    if n is None:
        n = max_id + 1
    elif max_id >= n:
        raise InvalidEdge(f"node id {max_id} out of range for n={n}")
    if labels is not None and len(labels) != n:
        raise InvalidEdge(f"label table has {len(labels)} entries for n={n}")

    out = [[] for _ in range(n)]
    inn = [[] for _ in range(n)]
    seen = set()
    m = 0
    for u, v, w in records:
        key = (u, v) if directed or u <= v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) appears more than once")
        seen.add(key)
        out[u].append((v, w))
        inn[v].append((u, w))
        m += 1
        if not directed and u != v:
            out[v].append((u, w))
            inn[u].append((v, w))
            m += 1
    return Graph(n=n, directed=directed, out_neighbors=out, in_neighbors=inn,
                 m=m, labels=list(labels) if labels is not None else None)


def _from_adjacency(n, directed, out, labels=None):
    """Internal constructor for samplers whose output cannot contain duplicates."""
    inn = [[] for _ in range(n)]
    m = 0
    for u, nbrs in enumerate(out):
        m += len(nbrs)
        for v, w in nbrs:
            inn[v].append((u, w))
    return Graph(n=n, directed=directed, out_neighbors=out, in_neighbors=inn,
                 m=m, labels=labels)


@dataclass
class DistanceMap:
    """Shortest distances from (or to) a single anchor node.

    ``dist[v]`` is ``math.inf`` exactly for nodes with no connecting path.
    """

    anchor: int
    direction: str
    dist: list

    def __getitem__(self, v: int) -> float:
        return self.dist[v]


def shortest_distances(graph: Graph, anchor: int, direction: str = FROM_SOURCE) -> DistanceMap:
    """Exact Dijkstra distances from ``anchor`` (or to it, via reversed arcs).

    Positive weights make the binary-heap Dijkstra exact, which the
    enumeration algorithms rely on.  Unreachable nodes get ``inf``.
    """
    if direction not in (FROM_SOURCE, TO_TARGET):
        raise ValueError(f"direction must be {FROM_SOURCE!r} or {TO_TARGET!r}")
    if not 0 <= anchor < graph.n:
        raise InvalidEdge(f"anchor {anchor} not in graph of {graph.n} nodes")
    adj = graph.out_neighbors if direction == FROM_SOURCE else graph.in_neighbors
    dist = [INF] * graph.n
    dist[anchor] = 0.0
    done = [False] * graph.n
    heap = [(0.0, anchor)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return DistanceMap(anchor=anchor, direction=direction, dist=dist)


@dataclass
class SortedAdjacency:
    """Per-node in-neighbors ordered for early-exit scanning.

    ``neighbors[x]`` is a list of ``(key, node, weight)`` triples where
    ``key = dist_from_source[node] + weight``, nondecreasing within each
    list; ties are broken by ascending node id and unreachable neighbors
    (infinite key) sort last.
    """

    source: int
    neighbors: list


def sorted_in_neighbors(graph: Graph, dist_from_source: DistanceMap) -> SortedAdjacency:
    """Sort every node's in-neighbors by source-distance-plus-arc-weight.

    This is the preprocessing step that lets the path-tree search stop
    scanning a neighbor list at the first node too far from the source.
    """
    if dist_from_source.direction != FROM_SOURCE:
        raise ValueError("sorted_in_neighbors needs a from-source distance map")
    dist = dist_from_source.dist
    neighbors = []
    for x in range(graph.n):
        entries = [(dist[u] + w, u, w) for u, w in graph.in_neighbors[x]]
        entries.sort(key=lambda e: (e[0], e[1]))
        neighbors.append(entries)
    return SortedAdjacency(source=dist_from_source.anchor, neighbors=neighbors)


def read_edge_list(source, directed: bool = False, default_weight: float = 1.0) -> Graph:
    """Parse the text edge-list format into a graph.

    One record per line: ``u v [weight]``, whitespace separated.  ``#``
    starts a comment (whole-line or trailing); blank lines are skipped.
    Node tokens are kept as string labels and mapped to dense ids in order
    of first appearance, so AS numbers round-trip unchanged.
    """
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()

    label_ids: dict = {}
    labels: list = []

    def intern(tok: str) -> int:
        if tok not in label_ids:
            label_ids[tok] = len(labels)
            labels.append(tok)
        return label_ids[tok]

    records = []
    for ln, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InvalidEdge(f"line {ln}: expected 'u v [weight]', got {raw!r}")
        u, v = intern(parts[0]), intern(parts[1])
        w = float(parts[2]) if len(parts) == 3 else default_weight
        records.append((u, v, w))
    return build_graph(records, directed=directed, n=len(labels), labels=labels)


def write_edge_list(graph: Graph, fh) -> None:
    """Write the graph in the text edge-list format (one record per edge)."""
    emitted = set()
    for u in range(graph.n):
        for v, w in graph.out_neighbors[u]:
            if not graph.directed:
                key = (u, v) if u <= v else (v, u)
                if key in emitted:
                    continue
                emitted.add(key)
            fh.write(f"{graph.label_of(u)} {graph.label_of(v)} {w!r}\n")
