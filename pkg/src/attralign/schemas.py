"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .harness import Overrides, RegionClass, TrialRecord
from .model import ModelParams


class ParamsModel(BaseModel):
    n: int = Field(ge=1)
    m: int = Field(ge=0)
    p: float = Field(ge=0.0, le=1.0)
    q: float = Field(ge=0.0, le=1.0)
    s_u: float = Field(ge=0.0, le=1.0)
    s_a: float = Field(ge=0.0, le=1.0)

    def to_params(self) -> ModelParams:
        return ModelParams(n=self.n, m=self.m, p=self.p, q=self.q, s_u=self.s_u, s_a=self.s_a)


class OverridesModel(BaseModel):
    x: Optional[float] = None
    y: Optional[float] = None
    z: Optional[float] = None
    l: Optional[int] = None
    eta: Optional[float] = None
    delta_x: Optional[float] = None
    delta_y: Optional[float] = None

    def to_overrides(self) -> Overrides:
        return Overrides(**self.model_dump())


class ClassifyRequest(BaseModel):
    params: ParamsModel
    epsilon: float = Field(gt=0.0)
    tau: float = Field(gt=0.0)


class RegionModel(BaseModel):
    thm1_feasible: bool
    thm2_feasible: bool
    coord_x: float
    coord_y: float
    conditions: dict[str, bool]

    @classmethod
    def from_region(cls, region: RegionClass) -> "RegionModel":
        return cls(
            thm1_feasible=region.thm1_feasible,
            thm2_feasible=region.thm2_feasible,
            coord_x=region.coord_x,
            coord_y=region.coord_y,
            conditions=region.conditions,
        )


class GenerateRequest(BaseModel):
    params: ParamsModel
    seed: int = 0
    identity: bool = False


class GenerateResponse(BaseModel):
    n: int
    m: int
    g1: str
    g2: str
    g2_anon: str
    permutation: str


class AlignRequest(BaseModel):
    params: ParamsModel
    algo: Literal["attr_rich", "attr_sparse"]
    seed: int = 0
    epsilon: float = Field(gt=0.0)
    tau: float = Field(gt=0.0)
    overrides: OverridesModel = OverridesModel()
    identity: bool = False
    include_c_matrix: bool = False


class SeededAlignRequest(BaseModel):
    N: int = Field(ge=2)
    alpha: float = Field(ge=0.0, lt=1.0)
    p: float = Field(gt=0.0, le=1.0)
    s: float = Field(ge=0.0, le=1.0)
    d: int = Field(ge=1, default=2)
    seed: int = 0
    epsilon: float = Field(gt=0.0, default=0.1)
    tau: float = Field(gt=0.0, default=0.5)


class TrialRecordModel(BaseModel):
    n: int
    m: int
    p: float
    q: float
    s_u: float
    s_a: float
    algo: str
    epsilon: float
    tau: float
    x: Optional[float]
    y: Optional[float]
    z: Optional[float]
    l: Optional[int]
    eta: Optional[float]
    seed: int
    trial: int
    success: bool
    failure_kind: str
    anchors: int
    runtime_ms: float
    thm1_feasible: bool
    thm2_feasible: bool
    coord_x: float
    coord_y: float

    @classmethod
    def from_record(cls, rec: TrialRecord) -> "TrialRecordModel":
        return cls(
            n=rec.params.n,
            m=rec.params.m,
            p=rec.params.p,
            q=rec.params.q,
            s_u=rec.params.s_u,
            s_a=rec.params.s_a,
            algo=rec.algo,
            epsilon=rec.epsilon,
            tau=rec.tau,
            x=rec.x,
            y=rec.y,
            z=rec.z,
            l=rec.l,
            eta=rec.eta,
            seed=rec.seed,
            trial=rec.trial,
            success=rec.success,
            failure_kind=rec.failure_kind,
            anchors=rec.anchors,
            runtime_ms=rec.runtime_ms,
            thm1_feasible=rec.region.thm1_feasible,
            thm2_feasible=rec.region.thm2_feasible,
            coord_x=rec.region.coord_x,
            coord_y=rec.region.coord_y,
        )


class PlanModel(BaseModel):
    kind: Literal["dense", "sparse"]
    d: Optional[int] = None
    a: Optional[float] = None
    b: Optional[float] = None
    l: Optional[int] = None
    eta: Optional[float] = None


class AlignResponse(BaseModel):
    record: TrialRecordModel
    plan: Optional[PlanModel] = None
    c_matrix: Optional[list[list[int]]] = None


class SweepRequest(BaseModel):
    n: list[int]
    m: list[int]
    p: list[float]
    q: list[float]
    s_u: list[float]
    s_a: list[float]
    algos: list[Literal["attr_rich", "attr_sparse"]]
    trials: int = Field(ge=1)
    seed: int
    epsilon: float = Field(gt=0.0)
    tau: float = Field(gt=0.0)
    overrides: OverridesModel = OverridesModel()
    workers: int = Field(ge=1, default=1)


class SweepResponse(BaseModel):
    csv: str
    cells: int
    trials_per_cell: int
