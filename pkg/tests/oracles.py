"""Independent reference implementations used only by tests.

These deliberately avoid the library's algorithms: Bellman-Ford for
distances, and a Dijkstra over (previous, current) arc states for shortest
nonbacktracking walk lengths.
"""

import heapq
import math

INF = math.inf


def bellman_ford(graph, anchor, to_target=False):
    """O(n*m) relaxation; cross-checks the heap Dijkstra."""
    adj = graph.in_neighbors if to_target else graph.out_neighbors
    dist = [INF] * graph.n
    dist[anchor] = 0.0
    for _ in range(max(graph.n - 1, 1)):
        changed = False
        for u in range(graph.n):
            if dist[u] == INF:
                continue
            for v, w in adj[u]:
                if dist[u] + w < dist[v]:
                    dist[v] = dist[u] + w
                    changed = True
        if not changed:
            break
    return dist


def nbp_min_lengths(graph, target):
    """For every arc (a, b): the minimum total length of a nonbacktracking
    walk that starts with that arc and ends at ``target`` (inf if none).

    Dijkstra over arc states: state (u, v) means "at v, arrived from u";
    transitions go to (v, x) for out-neighbors x != u.  H(u, v) below is
    the remaining length needed after traversing (u, v).
    """
    weights = graph.arc_weights()
    in_nbrs = graph.in_neighbors

    H = {}
    heap = []
    for (u, v) in weights:
        if v == target:
            H[(u, v)] = 0.0
            heapq.heappush(heap, (0.0, u, v))
    done = set()
    while heap:
        h, v, x = heapq.heappop(heap)
        if (v, x) in done:
            continue
        done.add((v, x))
        w_vx = weights[(v, x)]
        for u, w_uv in in_nbrs[v]:
            if u == x:
                continue
            cand = w_vx + h
            if cand < H.get((u, v), INF):
                H[(u, v)] = cand
                heapq.heappush(heap, (cand, u, v))
    return {arc: w + H.get(arc, INF) for arc, w in weights.items()}
