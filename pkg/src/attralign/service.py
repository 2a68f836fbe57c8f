"""HTTP service exposing generation, alignment, classification, and sweeps.

The CLI is a thin client of this app; it mounts it in-process by default, so
the same code path serves both batch use and a deployed server.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import harness, model
from .attr_rich import common_count_matrix
from .attr_sparse import DensePlan, plan_dispatch
from .schemas import (
    AlignRequest,
    AlignResponse,
    ClassifyRequest,
    GenerateRequest,
    GenerateResponse,
    PlanModel,
    RegionModel,
    SeededAlignRequest,
    SweepRequest,
    SweepResponse,
    TrialRecordModel,
)

app = FastAPI(
    title="attralign",
    description="Attributed random-graph alignment experiments",
    version="0.1.0",
)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/classify", response_model=RegionModel)
def classify(req: ClassifyRequest):
    try:
        region = harness.classify_region(req.params.to_params(), req.epsilon, req.tau)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return RegionModel.from_region(region)


@app.post("/generate", response_model=GenerateResponse)
def generate(req: GenerateRequest):
    try:
        params = req.params.to_params()
        rng = model.trial_rng(req.seed, 0)
        pair = model.generate_pair(params, rng, force_identity=req.identity)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    dump = model.dump_pair(pair)
    return GenerateResponse(n=params.n, m=params.m, **dump)


@app.post("/align", response_model=AlignResponse)
def align(req: AlignRequest):
    try:
        params = req.params.to_params()
        record = harness.run_trial(
            params,
            req.algo,
            req.epsilon,
            req.tau,
            master_seed=req.seed,
            overrides=req.overrides.to_overrides(),
            force_identity=req.identity,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))

    plan_model = None
    if req.algo == "attr_sparse":
        plan = plan_dispatch(params.n, params.p, params.s_u, req.overrides.l, req.overrides.eta)
        if isinstance(plan, DensePlan):
            plan_model = PlanModel(kind="dense", d=plan.d, a=plan.a, b=plan.b)
        else:
            plan_model = PlanModel(kind="sparse", l=plan.l, eta=plan.eta)

    c_matrix = None
    if req.include_c_matrix:
        rng = model.trial_rng(req.seed, 0)
        pair = model.generate_pair(params, rng, force_identity=req.identity)
        c_matrix = common_count_matrix(pair.g1, pair.g2_anon).toarray().tolist()

    return AlignResponse(record=TrialRecordModel.from_record(record), plan=plan_model, c_matrix=c_matrix)


@app.post("/align/seeded", response_model=AlignResponse)
def align_seeded(req: SeededAlignRequest):
    try:
        record = harness.run_seeded_dense_trial(
            req.N, req.alpha, req.p, req.s, req.d, req.epsilon, req.tau, master_seed=req.seed
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return AlignResponse(record=TrialRecordModel.from_record(record), plan=PlanModel(kind="dense", d=req.d))


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest):
    try:
        config = harness.SweepConfig(
            n=tuple(req.n),
            m=tuple(req.m),
            p=tuple(req.p),
            q=tuple(req.q),
            s_u=tuple(req.s_u),
            s_a=tuple(req.s_a),
            algos=tuple(req.algos),
            trials=req.trials,
            seed=req.seed,
            epsilon=req.epsilon,
            tau=req.tau,
            overrides=req.overrides.to_overrides(),
        )
        csv = harness.sweep_csv(config, workers=req.workers)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return SweepResponse(csv=csv, cells=len(config.cells()), trials_per_cell=config.trials)
