import math

import pytest

from attralign.harness import (
    CSV_COLUMNS,
    Overrides,
    SweepConfig,
    classify_region,
    parse_sweep_config,
    run_seeded_dense_trial,
    run_trial,
    sweep_csv,
)
from attralign.model import ModelParams


def tiny_config(**kw):
    base = dict(
        n=(12,),
        m=(30,),
        p=(0.2,),
        q=(0.3,),
        s_u=(1.0,),
        s_a=(1.0,),
        algos=("attr_rich",),
        trials=2,
        seed=77,
        epsilon=0.1,
        tau=0.5,
    )
    base.update(kw)
    return SweepConfig(**base)


def strip_runtime(csv_text):
    col = CSV_COLUMNS.index("runtime_ms")
    out = []
    for line in csv_text.splitlines():
        cells = line.split(",")
        del cells[col]
        out.append(",".join(cells))
    return "\n".join(out)


def parse_rows(csv_text):
    lines = csv_text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    return [dict(zip(CSV_COLUMNS, line.split(","))) for line in lines[1:]]


class TestClassify:
    def test_feasible_example(self):
        params = ModelParams(n=500, m=3000, p=0.05, q=0.02, s_u=0.9, s_a=0.9)
        region = classify_region(params, epsilon=0.1, tau=0.5)
        assert region.thm1_feasible
        assert region.coord_y == pytest.approx(48.6 / math.log(500))
        assert region.coord_x == pytest.approx(20.25 / math.log(500))

    def test_zero_information_infeasible(self):
        params = ModelParams(n=100, m=50, p=0.0, q=0.0, s_u=1.0, s_a=1.0)
        region = classify_region(params, epsilon=0.1, tau=0.5)
        assert not region.thm1_feasible
        assert not region.thm2_feasible

    def test_density_cap_boundary_inclusive(self):
        # s_u = 1 gives cap 1/16; p exactly at the cap satisfies condition 5
        params = ModelParams(n=160, m=10, p=1.0 / 16.0, q=0.01, s_u=1.0, s_a=1.0)
        region = classify_region(params, epsilon=0.1, tau=0.5)
        assert region.conditions["attr_sparse_density_cap"]
        above = ModelParams(n=160, m=10, p=1.0 / 16.0 + 1e-9, q=0.01, s_u=1.0, s_a=1.0)
        assert not classify_region(above, 0.1, 0.5).conditions["attr_sparse_density_cap"]

    def test_parameter_validation(self):
        params = ModelParams(n=100, m=10, p=0.1, q=0.1, s_u=1.0, s_a=1.0)
        with pytest.raises(ValueError):
            classify_region(params, epsilon=0.0, tau=0.5)
        with pytest.raises(ValueError):
            classify_region(params, epsilon=0.1, tau=0.0)


class TestRunTrial:
    def test_noiseless_success(self):
        params = ModelParams(n=40, m=400, p=0.1, q=0.1, s_u=1.0, s_a=1.0)
        rec = run_trial(params, "attr_rich", 0.1, 0.5, master_seed=3)
        assert rec.success
        assert rec.failure_kind == ""
        assert rec.anchors == 40

    def test_unreachable_x_override(self):
        params = ModelParams(n=20, m=40, p=0.2, q=0.2, s_u=1.0, s_a=1.0)
        rec = run_trial(params, "attr_rich", 0.1, 0.5, master_seed=3, overrides=Overrides(x=41.0))
        assert not rec.success
        assert rec.failure_kind == "non_unique_match"
        assert rec.anchors == 0

    def test_determinism(self):
        params = ModelParams(n=25, m=60, p=0.2, q=0.2, s_u=0.8, s_a=0.8)
        a = run_trial(params, "attr_rich", 0.1, 0.5, master_seed=9, trial_index=4)
        b = run_trial(params, "attr_rich", 0.1, 0.5, master_seed=9, trial_index=4)
        assert (a.success, a.failure_kind, a.anchors, a.seed, a.x, a.y) == (
            b.success,
            b.failure_kind,
            b.anchors,
            b.seed,
            b.x,
            b.y,
        )

    def test_attr_sparse_records_plan_parameters(self):
        # n*p = 1.2 <= 12^(1/7): the sparse subroutine is selected
        params = ModelParams(n=12, m=40, p=0.1, q=0.3, s_u=0.9, s_a=0.9)
        rec = run_trial(
            params,
            "attr_sparse",
            0.1,
            0.5,
            master_seed=11,
            overrides=Overrides(l=1, eta=0.4),
        )
        assert rec.algo == "attr_sparse"
        assert rec.l == 1
        assert rec.eta == 0.4
        assert rec.z == pytest.approx(1.5 * params.attr_signal)
        assert rec.x is None and rec.y is None

    def test_unknown_algorithm_rejected(self):
        params = ModelParams(n=10, m=5, p=0.2, q=0.2, s_u=1.0, s_a=1.0)
        with pytest.raises(ValueError):
            run_trial(params, "hungarian", 0.1, 0.5, master_seed=0)

    def test_seeded_dense_trial(self):
        rec = run_seeded_dense_trial(N=40, alpha=0.3, p=0.4, s=0.95, d=2, epsilon=0.1, tau=0.5, master_seed=5)
        assert rec.algo == "seeded_dense"
        assert rec.anchors == 12
        assert isinstance(rec.success, bool)


class TestSweep:
    def test_schema_floor(self):
        csv = sweep_csv(tiny_config(trials=1))
        rows = parse_rows(csv)
        assert len(rows) == 2
        assert rows[0]["row_type"] == "trial"
        assert rows[1]["row_type"] == "aggregate"

    def test_grid_cardinality(self):
        config = tiny_config(m=(10, 20, 30), p=(0.1, 0.2, 0.3), trials=10, n=(8,))
        csv = sweep_csv(config)
        rows = parse_rows(csv)
        trials = [r for r in rows if r["row_type"] == "trial"]
        aggregates = [r for r in rows if r["row_type"] == "aggregate"]
        assert len(trials) == 90
        assert len(aggregates) == 9

    def test_aggregate_rate_matches_trials(self):
        config = tiny_config(trials=6, m=(8, 40))
        rows = parse_rows(sweep_csv(config))
        for agg in (r for r in rows if r["row_type"] == "aggregate"):
            cell_trials = [
                r
                for r in rows
                if r["row_type"] == "trial" and r["m"] == agg["m"] and r["algo"] == agg["algo"]
            ]
            rate = sum(r["success"] == "true" for r in cell_trials) / len(cell_trials)
            assert float(agg["success"]) == pytest.approx(rate)
            assert int(agg["trial"]) == len(cell_trials)

    def test_reproducible_modulo_runtime(self):
        config = tiny_config(trials=3, m=(10, 25))
        a = sweep_csv(config)
        b = sweep_csv(config)
        assert strip_runtime(a) == strip_runtime(b)

    def test_workers_do_not_change_output(self):
        config = tiny_config(trials=3, m=(10, 25))
        a = sweep_csv(config, workers=1)
        b = sweep_csv(config, workers=2)
        assert strip_runtime(a) == strip_runtime(b)

    def test_success_rate_nondecreasing_in_m(self):
        # one-sided trend check at three attribute-count grid points
        config = SweepConfig(
            n=(60,),
            m=(10, 60, 1200),
            p=(0.1,),
            q=(0.05,),
            s_u=(0.9,),
            s_a=(0.9,),
            algos=("attr_rich",),
            trials=15,
            seed=101,
            epsilon=0.1,
            tau=0.5,
        )
        rows = parse_rows(sweep_csv(config))
        rates = [
            (int(r["m"]), float(r["success"]), int(r["trial"]))
            for r in rows
            if r["row_type"] == "aggregate"
        ]
        rates.sort()
        assert len(rates) == 3
        for (_, r1, t1), (_, r2, t2) in zip(rates, rates[1:]):
            noise = 3 * math.sqrt((r1 * (1 - r1) + r2 * (1 - r2)) / min(t1, t2) + 1e-12)
            assert r2 >= r1 - noise
        assert rates[-1][1] > rates[0][1]

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            tiny_config(trials=0)
        with pytest.raises(ValueError):
            tiny_config(algos=("qap",))
        with pytest.raises(ValueError):
            tiny_config(m=())


CONFIG_TEXT = """
# sweep over two attribute counts
n = 12
m = 30, 60
p = 0.2
q = 0.3
s_u = 1.0
s_a = 1.0
algos = attr_rich
trials = 2
seed = 77
epsilon = 0.1
tau = 0.5
"""


class TestConfigParsing:
    def test_parses_grids_and_scalars(self):
        config = parse_sweep_config(CONFIG_TEXT)
        assert config.m == (30, 60)
        assert config.n == (12,)
        assert config.trials == 2
        assert config.seed == 77
        assert config.epsilon == 0.1
        assert config.algos == ("attr_rich",)

    def test_overrides(self):
        config = parse_sweep_config(CONFIG_TEXT + "\nx = 5.5\nl = 2\n")
        assert config.overrides.x == 5.5
        assert config.overrides.l == 2
        assert config.overrides.y is None

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError, match="unknown key"):
            parse_sweep_config(CONFIG_TEXT + "\nbogus = 1\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            parse_sweep_config(CONFIG_TEXT + "\nn = 5\n")

    def test_missing_key_rejected(self):
        with pytest.raises(ValueError, match="missing required"):
            parse_sweep_config("n = 5\n")

    def test_bad_line_rejected(self):
        with pytest.raises(ValueError, match="expected"):
            parse_sweep_config("n 5\n")
