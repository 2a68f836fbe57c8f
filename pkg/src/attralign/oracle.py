"""Brute-force reference implementations for cross-checking in tests.

Everything here recomputes quantities straight from definitions: membership
scans instead of merge intersections, Floyd-Warshall instead of BFS, full
enumeration instead of memoized kernels.  Nothing in this module is imported
by the aligners, the harness, the service, or the CLI; its only consumers are
the test suite and anyone debugging a mismatch.
"""

from __future__ import annotations

import math

import numpy as np

from .graph import AttributedGraph
from .results import AnchorSet

INF = math.inf


def _attr_sets(g: AttributedGraph) -> list[set[int]]:
    """Per-user attribute sets rebuilt from the raw edge list."""
    sets: list[set[int]] = [set() for _ in range(g.n + 1)]
    for u, a in g.attr_edges().tolist():
        sets[u].add(a)
    return sets


def _user_sets(g: AttributedGraph) -> list[set[int]]:
    sets: list[set[int]] = [set() for _ in range(g.n + 1)]
    for u, v in g.user_edges().tolist():
        sets[u].add(v)
        sets[v].add(u)
    return sets


def oracle_common_count(g1: AttributedGraph, g2: AttributedGraph) -> np.ndarray:
    """n x n matrix of common-attribute counts, by scanning every attribute."""
    if (g1.n, g1.m) != (g2.n, g2.m):
        raise ValueError("graphs must share (n, m)")
    n, m = g1.n, g1.m
    a1 = _attr_sets(g1)
    a2 = _attr_sets(g2)
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = 0
            for a in range(n + 1, n + m + 1):
                if a in a1[i] and a in a2[j]:
                    c += 1
            out[i - 1, j - 1] = c
    return out


def oracle_distances(g: AttributedGraph, removed=()) -> np.ndarray:
    """Exact all-pairs hop distances over user-user edges (Floyd-Warshall).

    Entry [i-1, j-1] is the shortest-path length, inf when disconnected.
    Vertices in `removed` take no part: their rows and columns stay inf.
    """
    n = g.n
    removed = set(removed)
    dist = np.full((n, n), INF)
    for v in range(1, n + 1):
        if v not in removed:
            dist[v - 1, v - 1] = 0.0
    for u, v in g.user_edges().tolist():
        if u not in removed and v not in removed:
            dist[u - 1, v - 1] = 1.0
            dist[v - 1, u - 1] = 1.0
    for k in range(n):
        if (k + 1) in removed:
            continue
        via = dist[:, k, None] + dist[None, k, :]
        np.minimum(dist, via, out=dist)
    return dist


def oracle_neighbors_within(g: AttributedGraph, i: int, l: int, removed=()) -> set[int]:
    """{j : d(i, j) <= l} in the graph with `removed` vertices dropped.

    The center vertex always survives: d(i, i) = 0 regardless of `removed`.
    """
    removed = set(removed) - {i}
    dist = oracle_distances(g, removed)
    row = dist[i - 1]
    return {j for j in range(1, g.n + 1) if row[j - 1] <= l}


def oracle_anchor_check(g1: AttributedGraph, g2: AttributedGraph, threshold: float):
    """All pairs with common count strictly above threshold, plus a conflict flag.

    Returns (pairs, conflict) where pairs is a set of (i, j) tuples.  Intended
    for tiny instances (everything is enumerated).
    """
    if g1.n > 10:
        raise ValueError("exhaustive anchor check is limited to n <= 10")
    counts = oracle_common_count(g1, g2)
    pairs = {
        (i, j)
        for i in range(1, g1.n + 1)
        for j in range(1, g1.n + 1)
        if counts[i - 1, j - 1] > threshold
    }
    firsts = [i for i, _ in pairs]
    seconds = [j for _, j in pairs]
    conflict = len(set(firsts)) != len(pairs) or len(set(seconds)) != len(pairs)
    return pairs, conflict


def oracle_align_attr_rich(g1: AttributedGraph, g2: AttributedGraph, x: float, y: float):
    """Definition-level rerun of the two-step attribute+neighbor aligner.

    Returns (mapping or None, failure tag or None, anchor pair set).  Tags
    mirror the production failure kinds as plain strings.
    """
    n = g1.n
    counts = oracle_common_count(g1, g2)
    anchors = {
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if counts[i - 1, j - 1] > x
    }
    firsts = [i for i, _ in anchors]
    seconds = [j for _, j in anchors]
    if len(set(firsts)) != len(anchors) or len(set(seconds)) != len(anchors):
        return None, "anchor_conflict", set()
    pi = {i: j for i, j in anchors}
    u1 = [i for i in range(1, n + 1) if i not in set(firsts)]
    u2 = [j for j in range(1, n + 1) if j not in set(seconds)]
    nbr1 = _user_sets(g1)
    nbr2 = _user_sets(g2)
    for i in u1:
        qualifying = []
        for j in u2:
            w = 0
            for k, l in anchors:
                if k in nbr1[i] | {i} and l in nbr2[j] | {j}:
                    w += 1
            if w > y * len(anchors):
                qualifying.append(j)
        if len(qualifying) != 1:
            return None, "non_unique_match", anchors
        pi[i] = qualifying[0]
    if sorted(pi.keys()) != list(range(1, n + 1)) or sorted(pi.values()) != list(range(1, n + 1)):
        return None, "not_bijection", anchors
    return pi, None, anchors


def oracle_dense_lambda(g1: AttributedGraph, g2: AttributedGraph, seeds: AnchorSet, d: int):
    """Seed counts in (d-1)-hop neighborhoods for every unseeded pair, O(n^2 |seeds|)."""
    dist1 = oracle_distances(g1)
    dist2 = oracle_distances(g2)
    j1 = [u for u in range(1, g1.n + 1) if u not in seeds.firsts()]
    j2 = [v for v in range(1, g2.n + 1) if v not in seeds.seconds()]
    lam = {}
    for u in j1:
        for v in j2:
            count = 0
            for i, j in seeds:
                if dist1[u - 1, i - 1] <= d - 1 and dist2[v - 1, j - 1] <= d - 1:
                    count += 1
            lam[(u, v)] = count
    return lam


def oracle_sparse_stats(
    g1: AttributedGraph,
    g2: AttributedGraph,
    seeds: AnchorSet,
    l: int,
    eta: float,
    n_users: int,
):
    """Exhaustive recomputation of the sparse-regime phase-1 statistics.

    Enumerates every removal pair (x, y) with a fresh distance computation.
    Returns (lam, z, t_pairs, conflict) where lam maps (u, v, i, j) to the
    minimized seed count and z maps (u, v) to the qualifying-pair count.
    """
    n = g1.n
    nbr1 = _user_sets(g1)
    nbr2 = _user_sets(g2)
    j1 = [u for u in range(1, n + 1) if u not in seeds.firsts()]
    j2 = [v for v in range(1, n + 1) if v not in seeds.seconds()]
    seed_pairs = list(seeds)

    def seeds_reached(g, u, x, center, hops):
        return oracle_neighbors_within(g, center, hops, removed={u, x})

    lam = {}
    z = {}
    for u in j1:
        for v in j2:
            count = 0
            for i in sorted(nbr1[u]):
                for j in sorted(nbr2[v]):
                    side1 = [seeds_reached(g1, u, x, i, l) for x in range(1, n + 1)]
                    side2 = [seeds_reached(g2, v, y, j, l) for y in range(1, n + 1)]
                    best = min(
                        sum(1 for k1, k2 in seed_pairs if k1 in w1 and k2 in w2)
                        for w1 in side1
                        for w2 in side2
                    )
                    lam[(u, v, i, j)] = best
                    if best >= eta * len(seed_pairs):
                        count += 1
            z[(u, v)] = count
    cutoff = math.log(n_users) / math.log(math.log(n_users)) - 1
    t_pairs = {(u, v) for (u, v), zv in z.items() if zv >= cutoff}
    t_pairs |= set(seed_pairs)
    firsts = [a for a, _ in t_pairs]
    seconds = [b for _, b in t_pairs]
    conflict = len(set(firsts)) != len(t_pairs) or len(set(seconds)) != len(t_pairs)
    return lam, z, t_pairs, conflict
