"""Experiment drivers: single runs, the c-sweep against the limit model and
time-step self-convergence studies."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .diagnostics import Recorder, convergence_rate, limit_errors
from .errors import AbortedRunError, ConfigurationError
from .io import write_csv
from .maxwell import MaxwellMethod
from .spectral import is_power_of_two
from .state import PhaseGrid, init_landau, init_weibel
from .vlasov import step, step_limit_vlasov_ampere

SCENARIO_DEFAULTS = {
    "landau": {"alpha": 0.01, "k": 0.4, "pmax": 5.0, "t_final": 45.0},
    "weibel": {"alpha": 1e-4, "k": 1.25, "pmax": 0.3, "t_final": 200.0,
               "T_r": 12.0, "p_th": 0.02},
}

# final time of the c-sweep when none is given; kept below a light period at
# c = 5 so the B error measures amplitude rather than oscillation phase
CSWEEP_T_FINAL = 0.5


@dataclass
class RunConfig:
    scenario: str
    relativistic: bool = False
    c: float = 1.0
    dt: float = 0.1
    t_final: float | None = None
    nx: int = 64
    np1: int = 256
    np2: int = 256
    method: str = "radau3"
    order: str = "strang"
    sample_every: int = 1
    out: str | None = None
    # scenario parameters; None means the scenario default
    alpha: float | None = None
    k: float | None = None
    pmax: float | None = None
    T_r: float | None = None
    p_th: float | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIO_DEFAULTS:
            raise ConfigurationError(f"unknown scenario {self.scenario!r}")
        for name, val in SCENARIO_DEFAULTS[self.scenario].items():
            if getattr(self, name, None) is None:
                setattr(self, name, val)
        self.method = MaxwellMethod.parse(self.method).value
        if self.order not in ("first", "strang"):
            raise ConfigurationError(f"order must be 'first' or 'strang', got {self.order!r}")
        if not self.dt > 0:
            raise ConfigurationError("dt must be positive")
        if self.t_final < 0:
            raise ConfigurationError("t_final must be non-negative")
        if not self.c > 0:
            raise ConfigurationError("c must be positive")
        for name in ("nx", "np1", "np2"):
            if not is_power_of_two(int(getattr(self, name))):
                raise ConfigurationError(f"{name} must be a power of two")
        if self.sample_every < 1:
            raise ConfigurationError("sample_every must be >= 1")

    def with_(self, **changes):
        return replace(self, **changes)

    @property
    def grid(self):
        return PhaseGrid(self.nx, self.np1, self.np2, 2.0 * np.pi / self.k, self.pmax)

    def initial_state(self):
        if self.scenario == "landau":
            return init_landau(self.grid, self.alpha, self.k, self.c, self.relativistic)
        return init_weibel(self.grid, self.alpha, self.k, self.T_r, self.p_th, self.c,
                           self.relativistic)


def _n_steps(t_final, dt):
    return max(0, math.ceil(t_final / dt - 1e-9))


def _check_finite(state, t_last):
    fl = state.fields
    if not (np.isfinite(state.f.sum()) and np.isfinite(fl.E1).all()
            and np.isfinite(fl.E2).all() and np.isfinite(fl.B).all()):
        raise AbortedRunError(f"non-finite state after t={t_last}", t_last=t_last)


def advance(state, t_final, dt, stepper):
    """Step ``state`` to ``t_final`` (last step shortened to land on it)."""
    n = _n_steps(t_final - state.t, dt)
    t0 = state.t
    for i in range(n):
        h = min(dt, t_final - state.t) if i == n - 1 else dt
        t_last = state.t
        state = stepper(state, h)
        _check_finite(state, t_last)
    if n:
        state = state.replace(t=t0 + (t_final - t0))
    return state


def run(config, state=None, callback=None):
    """Integrate ``config`` from its initial data and sample diagnostics.

    Returns ``(TimeSeries, final SimState)``. A sample is taken at ``t = 0``,
    every ``sample_every`` steps and at the final time.
    """
    if state is None:
        state = config.initial_state()
    method = MaxwellMethod.parse(config.method)
    rec = Recorder(state)
    rec.record(state)
    n = _n_steps(config.t_final - state.t, config.dt)
    for i in range(1, n + 1):
        h = min(config.dt, config.t_final - state.t) if i == n else config.dt
        t_last = state.t
        state = step(state, h, method, config.order)
        _check_finite(state, t_last)
        if i % config.sample_every == 0 or i == n:
            rec.record(state)
        if callback is not None:
            callback(state)
    rec.series.meta = {"config": asdict(config)}
    return rec.series, state


def run_limit(config, state=None):
    """Vlasov-Ampere limit run with the same initial data and composition order."""
    if state is None:
        state = config.initial_state()
    return advance(state, config.t_final, config.dt,
                   lambda s, h: step_limit_vlasov_ampere(s, h, config.order))


CSWEEP_COLUMNS = ("c", "E1_error", "E1_rate", "E2_error", "E2_rate",
                  "B_error", "B_rate", "f_error", "f_rate")


@dataclass
class Table:
    columns: tuple
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def column(self, name):
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)

    def to_csv(self, fh):
        write_csv(fh, self.columns, self.rows)


def run_convergence_in_c(config, c_list, t_final=None):
    """Limit errors ``(E1, E2, B, f)`` at ``t_final`` for each ``c`` and the rates
    ``ln(err_c/err_prev)/ln(c/c_prev)`` between consecutive entries."""
    c_list = [float(c) for c in c_list]
    if any(b <= a for a, b in zip(c_list, c_list[1:])):
        raise ConfigurationError("c_list must be strictly increasing")
    if t_final is None:
        t_final = CSWEEP_T_FINAL
    base = config.with_(t_final=t_final)
    limit = run_limit(base)
    table = Table(CSWEEP_COLUMNS, meta={"t_final": t_final, "config": asdict(base)})
    prev = None
    for c in c_list:
        cfg = base.with_(c=c)
        _, final = run(cfg.with_(sample_every=10**9))
        errs = limit_errors(final, limit)
        row = [c]
        for i, e in enumerate(errs):
            rate = convergence_rate(e, prev[1][i], c, prev[0]) if prev and e > 0 and prev[1][i] > 0 else math.nan
            row += [e, rate]
        table.rows.append(tuple(row))
        prev = (c, errs)
    return table


ORDER_COLUMNS = ("dt", "self_error", "successive_diff", "observed_order")


def run_order_study(config, dt_list, t_final=None):
    """Self-convergence in time of ``f`` (max norm).

    ``self_error`` is measured against the run with the smallest step;
    ``successive_diff`` is ``|f_dt - f_{next dt}|`` and ``observed_order`` the
    base-2 log ratio of consecutive differences (Richardson). The fitted slope
    of ``log(successive_diff)`` against ``log(dt)`` is stored in ``meta["slope"]``.
    """
    dts = [float(d) for d in dt_list]
    if t_final is None:
        t_final = config.t_final
    base = config.with_(t_final=t_final, sample_every=10**9)
    finals = {}
    for d in dts:
        if d not in finals:
            finals[d] = run(base.with_(dt=d))[1].f
    ref = finals[min(dts)]
    diffs = [float(np.max(np.abs(finals[a] - finals[b]))) for a, b in zip(dts, dts[1:])]
    table = Table(ORDER_COLUMNS, meta={"t_final": t_final, "config": asdict(base)})
    for i, d in enumerate(dts):
        sd = diffs[i] if i < len(diffs) else math.nan
        order = (math.log2(diffs[i - 1] / diffs[i]) * math.log(2) / math.log(dts[i - 1] / dts[i])
                 if 0 < i < len(diffs) and diffs[i] > 0 and diffs[i - 1] > 0
                 and dts[i - 1] != dts[i] else math.nan)
        table.rows.append((d, float(np.max(np.abs(finals[d] - ref))), sd, order))
    pairs = [(d, e) for d, e in zip(dts, diffs) if e > 0]
    if len(pairs) >= 2:
        x = np.log([p[0] for p in pairs])
        y = np.log([p[1] for p in pairs])
        table.meta["slope"] = float(np.polyfit(x, y, 1)[0])
    else:
        table.meta["slope"] = math.nan
    return table
