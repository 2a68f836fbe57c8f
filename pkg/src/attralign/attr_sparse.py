"""Aligner for the attribute-information sparse regime.

Step 1 anchors users through common-attribute counts with threshold
z = (1 + tau) * m*q*s_a^2.  Step 2 hands the user-only induced subgraphs to a
seeded subroutine: the dense one when n*p > n^(1/7), with depth derived from
writing n*p = b * n^a, and the sparse one otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .attr_rich import build_anchors
from .graph import AttributedGraph
from .model import ModelParams
from .results import AlignmentResult, AnchorConflict, FailureKind, failure
from .seeded import seeded_dense_align, seeded_sparse_align


@dataclass(frozen=True)
class DensePlan:
    d: int
    a: float
    b: float

    def __post_init__(self):
        if not (0.0 < self.a <= 1.0):
            raise ValueError(f"exponent a must lie in (0, 1], got {self.a}")
        if self.b <= 0:
            raise ValueError(f"coefficient b must be positive, got {self.b}")


@dataclass(frozen=True)
class SparsePlan:
    l: int
    eta: float

    def __post_init__(self):
        if self.l < 1:
            raise ValueError(f"l must be >= 1, got {self.l}")
        if self.eta <= 0:
            raise ValueError(f"eta must be positive, got {self.eta}")


DispatchPlan = Union[DensePlan, SparsePlan]


def b_cap(s_u: float) -> float:
    """Largest admissible coefficient b for the dense decomposition."""
    return s_u / (16.0 * (2.0 - s_u) ** 2)


def threshold_z(params: ModelParams, tau: float) -> float:
    """Step-1 anchor threshold z = (1 + tau) * m*q*s_a^2."""
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    return (1.0 + tau) * params.attr_signal


def plan_dispatch(
    n: int,
    p: float,
    s_u: float,
    l_override: int | None = None,
    eta_override: float | None = None,
    b_override: float | None = None,
) -> DispatchPlan:
    """Choose the step-2 subroutine and its parameters from (n, p, s_u).

    Dense branch: n*p = b * n^a is made exact by fixing b at its cap (the
    decomposition is otherwise non-unique); the cap maximizes a and hence
    minimizes the depth d = floor(1/a) + 1.  Sparse branch: l and eta follow
    their defining formulas unless overridden; the default eta blows up at
    desk-scale n, so finite-n experiments are expected to override it.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie strictly in (0, 1), got {p}")
    np_ = n * p
    if np_ > n ** (1.0 / 7.0):
        b = b_override if b_override is not None else b_cap(s_u)
        if b <= 0:
            raise ValueError(f"coefficient b must be positive, got {b}")
        a = math.log(np_ / b) / math.log(n)
        if not (0.0 < a <= 1.0):
            raise ValueError(
                f"n*p = {np_:g} admits no exponent a in (0, 1] with b = {b:g}; "
                f"the dense branch needs n*p <= b*n = {b * n:g}"
            )
        return DensePlan(d=math.floor(1.0 / a) + 1, a=a, b=b)
    if l_override is None and np_ <= 1.0:
        raise ValueError(f"sparse depth is undefined for n*p = {np_:g} <= 1; pass an explicit l")
    l = l_override if l_override is not None else math.floor((6.0 / 7.0) * math.log(n) / math.log(np_))
    eta = eta_override if eta_override is not None else 4.0 ** (2 * l + 2) * n ** (-2.0 / 7.0)
    return SparsePlan(l=l, eta=eta)


def align_attr_sparse(
    g1: AttributedGraph,
    g2_anon: AttributedGraph,
    params: ModelParams,
    tau: float,
    plan: DispatchPlan | None = None,
    z: float | None = None,
) -> AlignmentResult:
    """Anchor through attributes with threshold z, then run the planned subroutine."""
    if (g1.n, g1.m) != (g2_anon.n, g2_anon.m):
        raise ValueError("graphs must share (n, m)")
    if z is None:
        z = threshold_z(params, tau)
    if plan is None:
        plan = plan_dispatch(params.n, params.p, params.s_u)
    anchors = build_anchors(g1, g2_anon, z)
    if isinstance(anchors, AnchorConflict):
        return failure(FailureKind.ANCHOR_CONFLICT, anchors.context)
    h1 = g1.user_only()
    h2 = g2_anon.user_only()
    if isinstance(plan, DensePlan):
        return seeded_dense_align(h1, h2, anchors, plan.d)
    return seeded_sparse_align(h1, h2, anchors, plan.l, plan.eta, params.n)
