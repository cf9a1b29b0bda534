"""Independent reference computations for the test suite.

Everything here deliberately avoids the library's BFS/Dijkstra code paths:
plain-Python cubic all-pairs, relaxation-to-fixpoint for weighted graphs,
and direct recounts by walking the data.
"""

from __future__ import annotations

INF = float("inf")


def floyd_warshall(g) -> list[list[float]]:
    """Cubic all-pairs hop distances; INF where disconnected."""
    n = g.n
    dist = [[INF] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0
    for u, v in g.edges:
        dist[u][v] = 1
        dist[v][u] = 1
    for mid in range(n):
        dmid = dist[mid]
        for i in range(n):
            dimid = dist[i][mid]
            if dimid == INF:
                continue
            row = dist[i]
            for j in range(n):
                alt = dimid + dmid[j]
                if alt < row[j]:
                    row[j] = alt
    return dist


def bellman_ford(emulator, root: int) -> list[float]:
    """Weighted single-source distances by relaxing to a fixpoint."""
    n = emulator.n
    dist = [INF] * n
    dist[root] = 0
    edges = [(u, v, w) for (u, v), w in emulator.weights.items()]
    for _ in range(n):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            break
    return dist


def recount_heavy(g, path, degree_threshold: int) -> int:
    """Heavy vertices on a path, recounted straight from adjacency lengths."""
    return sum(1 for v in path if len(g.adj[v]) >= degree_threshold)


def as_int_grid(dist) -> list[list[int]]:
    """INF -> -1, for comparison against the library's sentinel convention."""
    return [[-1 if d == INF else int(d) for d in row] for row in dist]
