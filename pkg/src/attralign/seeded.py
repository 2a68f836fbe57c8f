"""Seeded alignment subroutines on user-only graphs.

Two regimes: the dense routine scores every unseeded pair by the number of
seed pairs inside (d-1)-hop neighborhoods and assigns by argmax; the sparse
routine first promotes pairs whose 1-hop neighbors retain enough seeds in
l-hop balls under worst-case removal of one extra vertex per side, then
sweeps up low-degree vertices through edges into the promoted set.

Removal convention: a BFS center always survives removal (d(i, i) = 0), so
minimizing over removal candidates x never empties a neighborhood by deleting
its own center.  The brute-force oracle uses the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import AttributedGraph, Permutation
from .results import (
    AlignmentResult,
    AnchorSet,
    FailureKind,
    failure,
    find_conflict,
    success,
)


def _check_user_graphs(g1: AttributedGraph, g2: AttributedGraph):
    if g1.n != g2.n:
        raise ValueError("graphs must have equal user counts")
    if g1.m or g2.m:
        raise ValueError("seeded subroutines take user-only graphs (m = 0)")


def dense_seed_counts(g1: AttributedGraph, g2: AttributedGraph, seeds: AnchorSet, d: int):
    """Seed-pair counts lambda[u, v] over (d-1)-hop neighborhoods.

    Returns (j1, j2, lam) where j1/j2 list the unseeded vertices of each
    graph and lam is a len(j1) x len(j2) integer matrix.
    """
    _check_user_graphs(g1, g2)
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    n = g1.n
    j1 = [u for u in range(1, n + 1) if u not in seeds.firsts()]
    j2 = [v for v in range(1, n + 1) if v not in seeds.seconds()]
    if not seeds or not j1:
        return j1, j2, np.zeros((len(j1), len(j2)), dtype=np.int64)
    reach1 = g1.reach_within(d - 1)
    reach2 = g2.reach_within(d - 1)
    first_idx = np.array([i - 1 for i, _ in seeds], dtype=np.int64)
    second_idx = np.array([j - 1 for _, j in seeds], dtype=np.int64)
    j1_idx = np.array(j1, dtype=np.int64) - 1
    j2_idx = np.array(j2, dtype=np.int64) - 1
    r1 = reach1[np.ix_(j1_idx, first_idx)].astype(np.int64)
    r2 = reach2[np.ix_(j2_idx, second_idx)].astype(np.int64)
    return j1, j2, r1 @ r2.T


def seeded_dense_align(
    g1: AttributedGraph, g2: AttributedGraph, seeds: AnchorSet, d: int
) -> AlignmentResult:
    """Dense-regime alignment: argmax of seed counts in (d-1)-hop balls.

    An argmax tie means the evidence does not single out a partner, so the
    run fails rather than pick arbitrarily.
    """
    j1, j2, lam = dense_seed_counts(g1, g2, seeds, d)
    n = g1.n
    pi = seeds.as_mapping()
    for row, u in enumerate(j1):
        scores = lam[row]
        best = scores.max() if len(scores) else None
        if best is None:
            break
        winners = np.nonzero(scores == best)[0]
        if len(winners) != 1:
            return failure(
                FailureKind.NON_UNIQUE_MATCH,
                f"vertex {u}: argmax tie among {len(winners)} candidates at count {int(best)}",
                anchors=seeds,
            )
        pi[u] = j2[int(winners[0])]
    if sorted(pi) != list(range(1, n + 1)) or sorted(pi.values()) != list(range(1, n + 1)):
        return failure(FailureKind.NOT_BIJECTION, "assignments collide or leave gaps", anchors=seeds)
    return success(Permutation.from_mapping(pi), anchors=seeds)


@dataclass
class SparsePhaseState:
    """Phase-1 statistics of the sparse routine, kept for inspection and dumps."""

    lam: dict[tuple[int, int, int, int], int] = field(default_factory=dict)
    z: dict[tuple[int, int], int] = field(default_factory=dict)
    t_pairs: set[tuple[int, int]] = field(default_factory=set)
    conflict: str | None = None


def _seed_membership_per_removal(
    g: AttributedGraph, u: int, center: int, l: int, seed_labels: np.ndarray
) -> np.ndarray:
    """Boolean matrix M[x-1, t]: seed t within l hops of `center` in g minus {u, x}.

    The center itself is never removed.
    """
    n = g.n
    out = np.zeros((n, len(seed_labels)), dtype=bool)
    cache: dict[frozenset, np.ndarray] = {}
    for x in range(1, n + 1):
        removal = frozenset({u, x} - {center})
        row = cache.get(removal)
        if row is None:
            within = g.user_neighbors_within(center, l, removed=removal)
            row = np.fromiter((s in within for s in seed_labels.tolist()), dtype=bool, count=len(seed_labels))
            cache[removal] = row
        out[x - 1] = row
    return out


def sparse_phase_stats(
    g1: AttributedGraph,
    g2: AttributedGraph,
    seeds: AnchorSet,
    l: int,
    eta: float,
    n_users: int,
) -> SparsePhaseState:
    """Phase 1 of the sparse routine: lambda, Z, and the promoted pair set.

    For each unseeded pair (u, v) and each pair of their neighbors (i, j),
    lambda is the seed-pair count inside l-hop balls of i and j minimized
    over one extra removed vertex per graph.  Z counts neighbor pairs whose
    lambda reaches eta * |seeds|; (u, v) is promoted when
    Z >= ln(n)/ln(ln(n)) - 1.
    """
    _check_user_graphs(g1, g2)
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if eta < 0:
        raise ValueError(f"eta must be nonnegative, got {eta}")
    if n_users < 3:
        raise ValueError("n_users must be >= 3 for the promotion cutoff")
    n = g1.n
    state = SparsePhaseState()
    j1 = [u for u in range(1, n + 1) if u not in seeds.firsts()]
    j2 = [v for v in range(1, n + 1) if v not in seeds.seconds()]
    firsts = np.array([i for i, _ in seeds], dtype=np.int64)
    seconds = np.array([j for _, j in seeds], dtype=np.int64)
    need = eta * len(seeds)
    cutoff = math.log(n_users) / math.log(math.log(n_users)) - 1

    side1: dict[tuple[int, int], np.ndarray] = {}
    side2: dict[tuple[int, int], np.ndarray] = {}
    for u in j1:
        for i in g1.user_neighbor_array(u).tolist():
            side1[(u, i)] = _seed_membership_per_removal(g1, u, i, l, firsts)
    for v in j2:
        for j in g2.user_neighbor_array(v).tolist():
            side2[(v, j)] = _seed_membership_per_removal(g2, v, j, l, seconds)

    for u in j1:
        nbrs_u = g1.user_neighbor_array(u).tolist()
        for v in j2:
            nbrs_v = g2.user_neighbor_array(v).tolist()
            zcount = 0
            for i in nbrs_u:
                m1 = side1[(u, i)].astype(np.int64)
                for j in nbrs_v:
                    m2 = side2[(v, j)].astype(np.int64)
                    # counts[x, y] = seed pairs surviving removals (x, y)
                    counts = m1 @ m2.T
                    lam = int(counts.min())
                    state.lam[(u, v, i, j)] = lam
                    if lam >= need:
                        zcount += 1
            state.z[(u, v)] = zcount
            if zcount >= cutoff:
                state.t_pairs.add((u, v))

    state.t_pairs |= set(seeds)
    state.conflict = find_conflict(sorted(state.t_pairs))
    return state


def seeded_sparse_align(
    g1: AttributedGraph,
    g2: AttributedGraph,
    seeds: AnchorSet,
    l: int,
    eta: float,
    n_users: int,
    state: SparsePhaseState | None = None,
) -> AlignmentResult:
    """Sparse-regime alignment: promote high-degree pairs, then sweep neighbors.

    A precomputed phase-1 `state` may be supplied (e.g. for diagnostics); by
    default it is computed here.
    """
    if state is None:
        state = sparse_phase_stats(g1, g2, seeds, l, eta, n_users)
    n = g1.n
    if state.conflict is not None:
        return failure(FailureKind.ANCHOR_CONFLICT, state.conflict, anchors=seeds)
    t_set = AnchorSet.from_pairs(sorted(state.t_pairs))

    pi = t_set.as_mapping()
    matched1 = t_set.firsts()
    matched2 = t_set.seconds()
    j3 = [i for i in range(1, n + 1) if i not in matched1]
    j4 = [i for i in range(1, n + 1) if i not in matched2]

    t_map = t_set.as_mapping()
    ambiguities = []
    for i1 in j3:
        targets = {t_map[j1] for j1 in g1.user_neighbor_array(i1).tolist() if j1 in t_map}
        candidates = [
            i2
            for i2 in j4
            if targets & set(g2.user_neighbor_array(i2).tolist())
        ]
        if len(candidates) == 1:
            pi[i1] = candidates[0]
        elif len(candidates) > 1:
            ambiguities.append(f"vertex {i1} reaches {len(candidates)} candidates")

    if sorted(pi) != list(range(1, n + 1)) or sorted(pi.values()) != list(range(1, n + 1)):
        detail = "; ".join(ambiguities) if ambiguities else "assignments collide or leave gaps"
        return failure(FailureKind.NOT_BIJECTION, detail, anchors=seeds)
    return success(Permutation.from_mapping(pi), anchors=seeds)
