"""Shared construction helpers for the test suite."""

from attralign.graph import AttributedGraph
from attralign.model import ModelParams, generate_pair, trial_rng


def random_pair(seed, n, m, p=0.3, q=0.3, s_u=0.8, s_a=0.8, force_identity=False):
    params = ModelParams(n=n, m=m, p=p, q=q, s_u=s_u, s_a=s_a)
    return generate_pair(params, trial_rng(seed, 0), force_identity=force_identity)


def random_graph(seed, n, m, p=0.3, q=0.3) -> AttributedGraph:
    return random_pair(seed, n, m, p=p, q=q, s_u=1.0, s_a=1.0).g1


def unique_signature_graph(n) -> AttributedGraph:
    """Every user owns exactly one private attribute: user i <-> attribute n+i."""
    return AttributedGraph(n, n, (), [(i, n + i) for i in range(1, n + 1)])
