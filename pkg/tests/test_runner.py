import math

import numpy as np
import pytest

from apvm.errors import AbortedRunError, ConfigurationError
from apvm.runner import RunConfig, run, run_convergence_in_c, run_limit, run_order_study


def tiny(**kw):
    base = dict(scenario="landau", nx=8, np1=16, np2=16, dt=0.1, t_final=0.3, c=2.0)
    base.update(kw)
    return RunConfig(**base)


def test_defaults_fill_scenario_parameters():
    w = RunConfig(scenario="weibel")
    assert (w.alpha, w.k, w.pmax, w.T_r, w.t_final) == (1e-4, 1.25, 0.3, 12.0, 200.0)
    assert RunConfig(scenario="landau").t_final == 45.0
    assert RunConfig(scenario="landau", method="Radau").method == "radau3"


@pytest.mark.parametrize("bad", [{"scenario": "bump"}, {"dt": 0.0}, {"nx": 12}, {"c": -1.0},
                                 {"order": "third"}, {"sample_every": 0}, {"method": "rk4"}])
def test_config_validation(bad):
    kw = dict(scenario="landau")
    kw.update(bad)
    with pytest.raises(ConfigurationError):
        RunConfig(**kw)


def test_zero_final_time_gives_one_row():
    series, final = run(tiny(t_final=0.0))
    assert len(series) == 1
    assert series.rows[0][4] == 0.0 and series.rows[0][5] == 0.0


def test_sampling_and_final_time():
    series, final = run(tiny(t_final=0.25, sample_every=2))
    assert final.t == pytest.approx(0.25, abs=1e-15)
    assert list(series.column("t")) == pytest.approx([0.0, 0.2, 0.25])


def test_runs_are_deterministic():
    a, fa = run(tiny())
    b, fb = run(tiny())
    assert a.rows == b.rows
    assert np.array_equal(fa.f, fb.f)


def test_nonfinite_state_aborts():
    cfg = tiny()
    s = cfg.initial_state()
    s.f[0, 0, 0] = np.nan
    with pytest.raises(AbortedRunError) as info:
        run(cfg, state=s)
    assert info.value.t_last == 0.0


def test_limit_run_independent_of_c():
    a = run_limit(tiny(c=1.0))
    b = run_limit(tiny(c=1e6))
    assert np.array_equal(a.f, b.f)
    assert np.array_equal(a.fields.E1, b.fields.E1)


def test_csweep_single_value_has_no_rate():
    table = run_convergence_in_c(tiny(), [1.0], t_final=0.2)
    assert len(table.rows) == 1
    assert math.isnan(table.rows[0][2])
    assert table.column("B_error")[0] > 0


def test_csweep_rejects_unsorted():
    with pytest.raises(ConfigurationError):
        run_convergence_in_c(tiny(), [5.0, 1.0])


def test_csweep_errors_shrink_with_c():
    table = run_convergence_in_c(tiny(relativistic=True), [10.0, 100.0], t_final=0.3)
    b = table.column("B_error")
    assert b[1] < b[0]
    assert table.column("B_rate")[1] < -1.0


def test_order_study_repeated_dt():
    table = run_order_study(tiny(), [0.1, 0.1], t_final=0.2)
    assert table.rows[0][2] == 0.0
    assert math.isnan(table.meta["slope"])


def test_order_study_columns():
    table = run_order_study(tiny(), [0.1, 0.05, 0.025], t_final=0.2)
    assert table.rows[-1][1] == 0.0
    assert np.isfinite(table.rows[1][3])
    assert np.isfinite(table.meta["slope"])
