"""Correlated attributed Erdos-Renyi graph pairs.

A base graph is sampled once, two copies are obtained by independent edge
subsampling, and one copy is anonymized by a uniformly random relabelling of
its users.  The resulting observable pair plus the hidden permutation is the
unit every alignment experiment consumes.

RNG contract: one 64-bit master seed per experiment; the stream for trial k
is Philox keyed with (master_seed XOR k).  Philox is counter-based, so trial
streams are independent and trials can run on any number of workers without
changing the sampled instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import AttributedGraph, Permutation
from .results import AnchorSet

MASK64 = (1 << 64) - 1


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Derive the RNG stream for one trial from the master seed."""
    key = (int(master_seed) ^ int(trial_index)) & MASK64
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the attributed pair model: sizes, edge and subsampling probabilities."""

    n: int
    m: int
    p: float
    q: float
    s_u: float
    s_a: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        for name in ("p", "q", "s_u", "s_a"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @property
    def attr_signal(self) -> float:
        """m * q * s_a^2, the expected common-attribute count of a true pair."""
        return self.m * self.q * self.s_a**2

    @property
    def user_signal(self) -> float:
        """n * p * s_u^2, the expected common-user-neighbor count of a true pair."""
        return self.n * self.p * self.s_u**2


@dataclass(frozen=True)
class GraphPairInstance:
    g1: AttributedGraph
    g2_anon: AttributedGraph
    ground_truth: Permutation

    def __post_init__(self):
        if (self.g1.n, self.g1.m) != (self.g2_anon.n, self.g2_anon.m):
            raise ValueError("graph pair must share (n, m)")
        if self.ground_truth.n != self.g1.n:
            raise ValueError("ground-truth permutation size mismatch")


def _sample_index_hits(total: int, prob: float, rng: np.random.Generator) -> np.ndarray:
    """Indices in [0, total) hit independently with probability prob.

    Uses geometric gap skipping, so the cost is O(number of hits) rather than
    O(total); sparse regimes stay cheap.
    """
    if total == 0 or prob <= 0.0:
        return np.empty(0, dtype=np.int64)
    if prob >= 1.0:
        return np.arange(total, dtype=np.int64)
    chunks = []
    pos = -1
    while pos < total:
        remaining = total - pos
        size = max(64, int(remaining * prob * 1.2) + 16)
        gaps = rng.geometric(prob, size=size).astype(np.int64)
        hits = np.cumsum(gaps) + pos
        chunks.append(hits)
        pos = int(hits[-1])
    idx = np.concatenate(chunks)
    return idx[idx < total]


def _uu_pairs_from_indices(idx: np.ndarray, n: int) -> np.ndarray:
    """Map indices of the upper-triangle edge space to 1-based (u, v) pairs."""
    if idx.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    row_counts = np.arange(n - 1, 0, -1, dtype=np.int64)
    offsets = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(row_counts)])
    i = np.searchsorted(offsets, idx, side="right") - 1
    j = idx - offsets[i] + i + 1
    return np.column_stack([i + 1, j + 1])


def sample_base_graph(params: ModelParams, rng: np.random.Generator) -> AttributedGraph:
    """Base graph: each user pair is an edge w.p. p, each user-attribute pair w.p. q."""
    n, m = params.n, params.m
    uu_idx = _sample_index_hits(n * (n - 1) // 2, params.p, rng)
    uu = _uu_pairs_from_indices(uu_idx, n)
    ua_idx = _sample_index_hits(n * m, params.q, rng)
    if ua_idx.size:
        ua = np.column_stack([ua_idx // m + 1, ua_idx % m + n + 1])
    else:
        ua = np.empty((0, 2), dtype=np.int64)
    return AttributedGraph(n, m, uu, ua)


def subsample(g: AttributedGraph, s_u: float, s_a: float, rng: np.random.Generator) -> AttributedGraph:
    """Keep each user-user edge w.p. s_u and each user-attribute edge w.p. s_a."""
    for name, v in (("s_u", s_u), ("s_a", s_a)):
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    uu = g.user_edges()
    ua = g.attr_edges()
    keep_u = rng.random(len(uu)) < s_u
    keep_a = rng.random(len(ua)) < s_a
    return AttributedGraph(g.n, g.m, uu[keep_u], ua[keep_a])


def generate_pair(
    params: ModelParams,
    rng: np.random.Generator,
    force_identity: bool = False,
) -> GraphPairInstance:
    """Sample (G1, G2') with its hidden ground-truth permutation.

    Draw order is fixed (base, copy 1, copy 2, permutation) so one RNG stream
    maps to exactly one instance.  `force_identity` pins the permutation to
    the identity; error statistics are unchanged by vertex symmetry, and
    tests become directly inspectable.
    """
    base = sample_base_graph(params, rng)
    g1 = subsample(base, params.s_u, params.s_a, rng)
    g2 = subsample(base, params.s_u, params.s_a, rng)
    if force_identity:
        pi = Permutation.identity(params.n)
    else:
        pi = Permutation.random(params.n, rng)
    return GraphPairInstance(g1=g1, g2_anon=g2.apply_permutation(pi), ground_truth=pi)


def seeded_params(N: int, alpha: float, p: float, s: float) -> ModelParams:
    """Parameters emulating the seeded alignment model with N vertices.

    A fraction alpha of the vertices act as seeds and are modelled as
    attributes: m = floor(N * alpha), n = N - m, q = p, s_a = s_u = s.
    Seed-seed edges are absent in this emulation.
    """
    if not (0.0 <= alpha < 1.0):
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    m = math.floor(N * alpha)
    return ModelParams(n=N - m, m=m, p=p, q=p, s_u=s, s_a=s)


def seeded_view(pair: GraphPairInstance) -> tuple[AttributedGraph, AttributedGraph, AnchorSet, Permutation]:
    """Recast an attributed pair as a seeded alignment instance.

    Attributes become ordinary vertices n+1..n+m of a combined user-only
    graph; the seed set pins each of them to itself (attribute labels are
    never permuted).  Returns (h1, h2, seeds, truth) where truth extends the
    pair's ground truth by the identity on the seed labels.
    """
    g1, g2 = pair.g1, pair.g2_anon
    n, m = g1.n, g1.m
    big = n + m

    def combine(g: AttributedGraph) -> AttributedGraph:
        edges = np.concatenate([g.user_edges(), g.attr_edges()])
        return AttributedGraph(big, 0, edges, ())

    seeds = AnchorSet.from_pairs((a, a) for a in range(n + 1, big + 1))
    table = np.concatenate([pair.ground_truth.table, np.arange(n + 1, big + 1)])
    return combine(g1), combine(g2), seeds, Permutation(table)


def dump_pair(pair: GraphPairInstance) -> dict[str, str]:
    """Text dump: g1, g2 (anonymization undone), g2_anon, and the permutation."""
    g2 = pair.g2_anon.apply_permutation(pair.ground_truth.inverse())
    return {
        "g1": pair.g1.to_text(),
        "g2": g2.to_text(),
        "g2_anon": pair.g2_anon.to_text(),
        "permutation": pair.ground_truth.to_lines(),
    }
