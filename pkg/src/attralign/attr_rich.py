"""Two-step aligner for the attribute-information rich regime.

Step 1 matches anchor users whose common-attribute count clears a threshold
x; step 2 matches every remaining user by counting anchor pairs among its
user neighbors against a threshold y * |anchors|.  All comparisons are
strict: equality at a threshold never qualifies.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

from .graph import AttributedGraph
from .model import ModelParams
from .results import (
    AlignmentResult,
    AnchorConflict,
    AnchorSet,
    FailureKind,
    failure,
    find_conflict,
    success,
)
from .graph import Permutation


def common_attribute_count(g1: AttributedGraph, g2_anon: AttributedGraph, i: int, j: int) -> int:
    """Number of attributes adjacent to user i in g1 and to user j in g2_anon."""
    a1 = g1.attribute_neighbor_array(i)
    a2 = g2_anon.attribute_neighbor_array(j)
    return int(np.intersect1d(a1, a2, assume_unique=True).size)


def common_count_matrix(g1: AttributedGraph, g2_anon: AttributedGraph) -> sp.csr_matrix:
    """Sparse n x n matrix of common-attribute counts (absent entries are zero)."""
    if (g1.n, g1.m) != (g2_anon.n, g2_anon.m):
        raise ValueError("graphs must share (n, m)")
    return (g1.attr_incidence @ g2_anon.attr_incidence.T).tocsr()


def threshold_x(params: ModelParams, delta_x: float | None = None) -> float:
    """Step-1 anchor threshold.

    With signal mu = m*q*s_a^2, x = (Delta_x / ln(1/q)) * mu.  Delta_x
    defaults to its smallest admissible value max(1, 3 ln n / mu); larger
    values can be supplied for less aggressive anchoring.
    """
    if not (0.0 < params.q < 1.0):
        raise ValueError(f"q must lie strictly in (0, 1), got {params.q}")
    if params.m < 1:
        raise ValueError("threshold_x needs at least one attribute")
    mu = params.attr_signal
    if delta_x is None:
        delta_x = max(1.0, 3.0 * math.log(params.n) / mu) if mu > 0 else math.inf
    return delta_x / math.log(1.0 / params.q) * mu


def threshold_y(params: ModelParams, delta_y: float = 2.0) -> float:
    """Step-2 neighbor threshold: y = (Delta_y / ln(1/p)) * p * s_u^2, Delta_y >= 2."""
    if not (0.0 < params.p < 1.0):
        raise ValueError(f"p must lie strictly in (0, 1), got {params.p}")
    if delta_y < 2.0:
        raise ValueError(f"Delta_y must be >= 2, got {delta_y}")
    return delta_y / math.log(1.0 / params.p) * params.p * params.s_u**2


def anchor_candidates(g1: AttributedGraph, g2_anon: AttributedGraph, x: float) -> list[tuple[int, int]]:
    """All pairs (i, j) with common count strictly above x, before conflict checks."""
    if x < 0:
        raise ValueError(f"anchor threshold must be nonnegative, got {x}")
    counts = common_count_matrix(g1, g2_anon).tocoo()
    keep = counts.data > x
    pairs = sorted(zip((counts.row[keep] + 1).tolist(), (counts.col[keep] + 1).tolist()))
    return pairs


def build_anchors(g1: AttributedGraph, g2_anon: AttributedGraph, x: float):
    """Step 1: anchor pairs by common-attribute count.

    Returns an AnchorSet, or an AnchorConflict when two candidate pairs share
    a coordinate (the run is then declared failed with an empty anchor set).
    """
    pairs = anchor_candidates(g1, g2_anon, x)
    conflict = find_conflict(pairs)
    if conflict is not None:
        return AnchorConflict(context=conflict)
    return AnchorSet.from_pairs(pairs)


def anchor_match_counts(g1: AttributedGraph, g2_anon: AttributedGraph, anchors: AnchorSet):
    """Step-2 statistics: W[i, j] counts anchor pairs adjacent to both i and j.

    Returns (u1, u2, w) where u1/u2 list the unmatched users of each graph
    and w is a len(u1) x len(u2) integer matrix.
    """
    n = g1.n
    u1 = [i for i in range(1, n + 1) if i not in anchors.firsts()]
    u2 = [j for j in range(1, n + 1) if j not in anchors.seconds()]
    if not u1 or not len(anchors):
        return u1, u2, np.zeros((len(u1), len(u2)), dtype=np.int32)
    k_idx = np.array([i - 1 for i, _ in anchors], dtype=np.int64)
    l_idx = np.array([j - 1 for _, j in anchors], dtype=np.int64)
    u1_idx = np.array(u1, dtype=np.int64) - 1
    u2_idx = np.array(u2, dtype=np.int64) - 1
    left = g1.user_adjacency[np.ix_(u1_idx, k_idx)].astype(np.int32)
    right = g2_anon.user_adjacency[np.ix_(u2_idx, l_idx)].astype(np.int32)
    return u1, u2, left @ right.T


def align_attr_rich(g1: AttributedGraph, g2_anon: AttributedGraph, x: float, y: float) -> AlignmentResult:
    """Run both steps and return the recovered permutation or a typed failure."""
    if (g1.n, g1.m) != (g2_anon.n, g2_anon.m):
        raise ValueError("graphs must share (n, m)")
    n = g1.n
    anchors = build_anchors(g1, g2_anon, x)
    if isinstance(anchors, AnchorConflict):
        return failure(FailureKind.ANCHOR_CONFLICT, anchors.context)

    pi = anchors.as_mapping()
    u1, u2, w = anchor_match_counts(g1, g2_anon, anchors)

    if u1:
        cut = y * len(anchors)
        for row, i in enumerate(u1):
            qualifying = np.nonzero(w[row] > cut)[0]
            if len(qualifying) != 1:
                kind = "no" if len(qualifying) == 0 else f"{len(qualifying)}"
                return failure(
                    FailureKind.NON_UNIQUE_MATCH,
                    f"vertex {i}: {kind} qualifying candidates above {cut:g}",
                    anchors=anchors,
                )
            pi[i] = u2[int(qualifying[0])]

    if sorted(pi) != list(range(1, n + 1)) or sorted(pi.values()) != list(range(1, n + 1)):
        return failure(FailureKind.NOT_BIJECTION, "assignments collide or leave gaps", anchors=anchors)
    return success(Permutation.from_mapping(pi), anchors=anchors)
