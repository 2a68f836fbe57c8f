"""Experiment driver: feasibility classification, Monte Carlo trials, sweeps.

Asymptotic conditions are evaluated through documented finite-n surrogates:
an Omega(log n) lower bound reads as ">= ln n", an o(log n) upper bound as
"< ln n", and an omega(1) gap as ">= 3".  These are labelled surrogates for
plotting; they are not the limits themselves.

Success of a trial is always verified coordinate-wise against the hidden
ground truth, never taken from the algorithm's own report.
"""

from __future__ import annotations

import io
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

from .attr_rich import align_attr_rich, threshold_x, threshold_y
from .attr_sparse import DensePlan, SparsePlan, align_attr_sparse, plan_dispatch, threshold_z
from .model import ModelParams, generate_pair, seeded_params, seeded_view, trial_rng
from .seeded import seeded_dense_align

ALGORITHMS = ("attr_rich", "attr_sparse")

CSV_COLUMNS = (
    "row_type,n,m,p,q,s_u,s_a,algo,epsilon,tau,x,y,z,l,eta,seed,trial,success,"
    "failure_kind,anchors,runtime_ms,thm1_feasible,thm2_feasible,coord_x,coord_y"
).split(",")

OMEGA_ONE_GAP = 3.0  # finite-n stand-in for "exceeds log n by omega(1)"


@dataclass(frozen=True)
class RegionClass:
    """Feasibility flags of the two guarantee regions plus plot coordinates.

    Coordinates are (n*p*s_u^2 / ln n, m*q*s_a^2 / ln n); the per-condition
    booleans record the finite-n surrogate reading of each requirement.
    """

    thm1_feasible: bool
    thm2_feasible: bool
    coord_x: float
    coord_y: float
    conditions: dict[str, bool] = field(default_factory=dict, compare=False)


def classify_region(params: ModelParams, epsilon: float, tau: float) -> RegionClass:
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if params.n < 2:
        raise ValueError("region classification needs n >= 2")
    log_n = math.log(params.n)
    attr = params.attr_signal
    user = params.user_signal

    cond1 = attr >= log_n  # Omega(log n) surrogate
    cond2 = attr + user >= (1.0 + epsilon) * log_n
    cond3 = attr < log_n  # o(log n) surrogate
    cond4 = user - log_n >= OMEGA_ONE_GAP  # omega(1) surrogate
    cond5 = params.n * params.p <= params.s_u / (16.0 * (2.0 - params.s_u) ** 2) * params.n
    if 0.0 < params.q < 1.0:
        cond6 = attr >= 2.0 * log_n / (tau * math.log(1.0 / params.q))
    else:
        cond6 = params.q == 0.0 and attr >= 0.0  # limit reading: rhs -> 0
    return RegionClass(
        thm1_feasible=cond1 and cond2,
        thm2_feasible=cond3 and cond4 and cond5 and cond6,
        coord_x=user / log_n,
        coord_y=attr / log_n,
        conditions={
            "attr_rich_signal": cond1,
            "attr_rich_sum": cond2,
            "attr_sparse_signal": cond3,
            "attr_sparse_user": cond4,
            "attr_sparse_density_cap": cond5,
            "attr_sparse_tau": cond6,
        },
    )


@dataclass(frozen=True)
class Overrides:
    """Optional threshold/parameter overrides; None means the derived default."""

    x: Optional[float] = None
    y: Optional[float] = None
    z: Optional[float] = None
    l: Optional[int] = None
    eta: Optional[float] = None
    delta_x: Optional[float] = None
    delta_y: Optional[float] = None


@dataclass(frozen=True)
class TrialRecord:
    """One Monte Carlo trial, one CSV row."""

    params: ModelParams
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
    region: RegionClass


def run_trial(
    params: ModelParams,
    algo: str,
    epsilon: float,
    tau: float,
    master_seed: int,
    trial_index: int = 0,
    overrides: Overrides = Overrides(),
    force_identity: bool = False,
) -> TrialRecord:
    """Generate one instance, run one algorithm, verify against ground truth."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    rng = trial_rng(master_seed, trial_index)
    pair = generate_pair(params, rng, force_identity=force_identity)
    region = classify_region(params, epsilon, tau)

    x = y = z = eta = None
    l = None
    if algo == "attr_rich":
        x = overrides.x if overrides.x is not None else threshold_x(params, overrides.delta_x)
        y = overrides.y if overrides.y is not None else threshold_y(
            params, overrides.delta_y if overrides.delta_y is not None else 2.0
        )
        start = time.perf_counter()
        result = align_attr_rich(pair.g1, pair.g2_anon, x, y)
        elapsed = time.perf_counter() - start
    else:
        z = overrides.z if overrides.z is not None else threshold_z(params, tau)
        plan = plan_dispatch(params.n, params.p, params.s_u, overrides.l, overrides.eta)
        if isinstance(plan, SparsePlan):
            l, eta = plan.l, plan.eta
        start = time.perf_counter()
        result = align_attr_sparse(pair.g1, pair.g2_anon, params, tau, plan=plan, z=z)
        elapsed = time.perf_counter() - start

    if result.ok:
        success = result.pi_hat == pair.ground_truth
        failure_kind = "" if success else "wrong_permutation"
    else:
        success = False
        failure_kind = result.failure.value

    return TrialRecord(
        params=params,
        algo=algo,
        epsilon=epsilon,
        tau=tau,
        x=x,
        y=y,
        z=z,
        l=l,
        eta=eta,
        seed=(int(master_seed) ^ int(trial_index)) & ((1 << 64) - 1),
        trial=trial_index,
        success=success,
        failure_kind=failure_kind,
        anchors=result.n_anchors,
        runtime_ms=elapsed * 1000.0,
        region=region,
    )


def run_seeded_dense_trial(
    N: int,
    alpha: float,
    p: float,
    s: float,
    d: int,
    epsilon: float,
    tau: float,
    master_seed: int,
    trial_index: int = 0,
) -> TrialRecord:
    """Comparison mode: the seeded specialization run end to end.

    Seeds are modelled as attributes, the pair is recast as a combined
    user-only instance, and the dense subroutine aligns it directly.
    """
    params = seeded_params(N, alpha, p, s)
    rng = trial_rng(master_seed, trial_index)
    pair = generate_pair(params, rng)
    h1, h2, seeds, truth = seeded_view(pair)
    start = time.perf_counter()
    result = seeded_dense_align(h1, h2, seeds, d)
    elapsed = time.perf_counter() - start
    if result.ok:
        success = result.pi_hat == truth
        failure_kind = "" if success else "wrong_permutation"
    else:
        success = False
        failure_kind = result.failure.value
    return TrialRecord(
        params=params,
        algo="seeded_dense",
        epsilon=epsilon,
        tau=tau,
        x=None,
        y=None,
        z=None,
        l=None,
        eta=None,
        seed=(int(master_seed) ^ int(trial_index)) & ((1 << 64) - 1),
        trial=trial_index,
        success=success,
        failure_kind=failure_kind,
        anchors=len(seeds),
        runtime_ms=elapsed * 1000.0,
        region=classify_region(params, epsilon, tau),
    )


# -- sweeps


@dataclass(frozen=True)
class SweepConfig:
    """Grid of model parameters crossed with algorithms, plus shared constants."""

    n: tuple[int, ...]
    m: tuple[int, ...]
    p: tuple[float, ...]
    q: tuple[float, ...]
    s_u: tuple[float, ...]
    s_a: tuple[float, ...]
    algos: tuple[str, ...]
    trials: int
    seed: int
    epsilon: float
    tau: float
    overrides: Overrides = Overrides()

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        for algo in self.algos:
            if algo not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {algo!r}")
        if not self.algos:
            raise ValueError("at least one algorithm is required")
        for name in ("n", "m", "p", "q", "s_u", "s_a"):
            if not getattr(self, name):
                raise ValueError(f"grid for {name} must be non-empty")

    def cells(self) -> list[tuple[ModelParams, str]]:
        """Grid cells in canonical order (parameter product, then algorithm)."""
        out = []
        for n, m, p, q, s_u, s_a in itertools.product(self.n, self.m, self.p, self.q, self.s_u, self.s_a):
            for algo in self.algos:
                out.append((ModelParams(n=n, m=m, p=p, q=q, s_u=s_u, s_a=s_a), algo))
        return out


_CONFIG_GRID_KEYS = {"n": int, "m": int, "p": float, "q": float, "s_u": float, "s_a": float}
_CONFIG_SCALAR_KEYS = {
    "trials": int,
    "seed": int,
    "epsilon": float,
    "tau": float,
    "x": float,
    "y": float,
    "z": float,
    "l": int,
    "eta": float,
    "delta_x": float,
    "delta_y": float,
}


def parse_sweep_config(text: str) -> SweepConfig:
    """Parse the flat key-value sweep format.

    One `key = value` pair per line; `#` starts a comment.  Grid keys
    (n, m, p, q, s_u, s_a) take comma-separated lists, `algos` a
    comma-separated subset of {attr_rich, attr_sparse}, everything else a
    single number.  Required keys: the six grids, algos, trials, seed,
    epsilon, tau.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        if key not in _CONFIG_GRID_KEYS and key not in _CONFIG_SCALAR_KEYS and key != "algos":
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        values[key] = val

    missing = [k for k in (*_CONFIG_GRID_KEYS, "algos", "trials", "seed", "epsilon", "tau") if k not in values]
    if missing:
        raise ValueError(f"missing required config keys: {', '.join(missing)}")

    def grid(key, cast):
        return tuple(cast(tok.strip()) for tok in values[key].split(",") if tok.strip())

    kwargs = {key: grid(key, cast) for key, cast in _CONFIG_GRID_KEYS.items()}
    kwargs["algos"] = tuple(tok.strip() for tok in values["algos"].split(",") if tok.strip())
    over = {}
    for key, cast in _CONFIG_SCALAR_KEYS.items():
        if key in values:
            if key in ("trials", "seed", "epsilon", "tau"):
                kwargs[key] = cast(values[key])
            else:
                over[key] = cast(values[key])
    return SweepConfig(overrides=Overrides(**over), **kwargs)


def _sweep_task(args):
    config, cell_index, trial_index = args
    params, algo = config.cells()[cell_index]
    return cell_index, run_trial(
        params,
        algo,
        config.epsilon,
        config.tau,
        master_seed=config.seed,
        trial_index=cell_index * config.trials + trial_index,
        overrides=config.overrides,
    )


def run_sweep(config: SweepConfig, workers: int = 1) -> list[tuple[int, TrialRecord]]:
    """All trials of the sweep, canonically ordered by (cell, trial)."""
    tasks = [
        (config, cell_index, trial_index)
        for cell_index in range(len(config.cells()))
        for trial_index in range(config.trials)
    ]
    if workers <= 1:
        results = [_sweep_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_task, tasks, chunksize=1))
    results.sort(key=lambda item: (item[0], item[1].trial))
    return results


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _record_row(record: TrialRecord) -> list[str]:
    p = record.params
    r = record.region
    return [
        "trial",
        _fmt(p.n),
        _fmt(p.m),
        _fmt(p.p),
        _fmt(p.q),
        _fmt(p.s_u),
        _fmt(p.s_a),
        record.algo,
        _fmt(record.epsilon),
        _fmt(record.tau),
        _fmt(record.x),
        _fmt(record.y),
        _fmt(record.z),
        _fmt(record.l),
        _fmt(record.eta),
        _fmt(record.seed),
        _fmt(record.trial),
        _fmt(record.success),
        record.failure_kind,
        _fmt(record.anchors),
        f"{record.runtime_ms:.3f}",
        _fmt(r.thm1_feasible),
        _fmt(r.thm2_feasible),
        _fmt(r.coord_x),
        _fmt(r.coord_y),
    ]


def _aggregate_row(records: list[TrialRecord], master_seed: int) -> list[str]:
    first = records[0]
    p = first.params
    r = first.region
    rate = sum(rec.success for rec in records) / len(records)
    mean_anchors = sum(rec.anchors for rec in records) / len(records)
    mean_ms = sum(rec.runtime_ms for rec in records) / len(records)
    return [
        "aggregate",
        _fmt(p.n),
        _fmt(p.m),
        _fmt(p.p),
        _fmt(p.q),
        _fmt(p.s_u),
        _fmt(p.s_a),
        first.algo,
        _fmt(first.epsilon),
        _fmt(first.tau),
        _fmt(first.x),
        _fmt(first.y),
        _fmt(first.z),
        _fmt(first.l),
        _fmt(first.eta),
        _fmt(master_seed),
        _fmt(len(records)),
        _fmt(rate),
        "",
        _fmt(mean_anchors),
        f"{mean_ms:.3f}",
        _fmt(r.thm1_feasible),
        _fmt(r.thm2_feasible),
        _fmt(r.coord_x),
        _fmt(r.coord_y),
    ]


def sweep_csv(config: SweepConfig, workers: int = 1) -> str:
    """Run the sweep and render the CSV: trial rows per cell, then its aggregate row.

    Identical configs produce byte-identical output except for the
    runtime_ms column.
    """
    results = run_sweep(config, workers=workers)
    by_cell: dict[int, list[TrialRecord]] = {}
    for cell_index, record in results:
        by_cell.setdefault(cell_index, []).append(record)
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for cell_index in sorted(by_cell):
        records = by_cell[cell_index]
        for record in records:
            buf.write(",".join(_record_row(record)) + "\n")
        buf.write(",".join(_aggregate_row(records, config.seed)) + "\n")
    return buf.getvalue()
