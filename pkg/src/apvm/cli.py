"""Command-line front end.

Subcommands: ``run``, ``csweep``, ``orderstudy`` and ``dispersion``. Runs read
a ``key=value`` config file; any flag given on the command line overrides the
value from the file.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager

import numpy as np

from .dispersion import WEIBEL_PARAMS, growth_rate_scan
from .errors import ApvmError, ConfigParseError
from .io import write_meta
from .runner import RunConfig, run, run_convergence_in_c, run_order_study

CONFIG_KEYS = ("scenario", "relativistic", "c", "dt", "t_final", "nx", "np1", "np2",
               "method", "order", "sample_every", "out")

_INT_KEYS = {"nx", "np1", "np2", "sample_every"}
_FLOAT_KEYS = {"c", "dt", "t_final"}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _convert(key, raw, lineno):
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigParseError(f"{key}: expected an integer, got {raw!r}", lineno) from None
    if key in _FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ConfigParseError(f"{key}: expected a number, got {raw!r}", lineno) from None
    if key == "relativistic":
        low = raw.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ConfigParseError(f"relativistic: expected true/false, got {raw!r}", lineno)
    return raw


def parse_config_values(text):
    """Typed ``{key: value}`` from config text, without defaults applied."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"expected key=value, got {line!r}", lineno)
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigParseError(f"unknown key {key!r}", lineno)
        values[key] = (_convert(key, raw, lineno), lineno)
    return values


def _build(values):
    if "scenario" not in values:
        raise ConfigParseError("missing required key 'scenario'")
    kwargs = {k: v for k, (v, _) in values.items()}
    try:
        return RunConfig(**kwargs)
    except (ApvmError, ValueError) as exc:
        # blame the first line whose key the message mentions, if any
        line = next((ln for k, (_, ln) in values.items() if k in str(exc)), None)
        raise ConfigParseError(str(exc), line) from exc


def parse_config(text):
    """Parse ``key=value`` lines (``#`` starts a comment) into a :class:`RunConfig`.

    Missing keys take the run defaults (``dt=0.1``, ``method=radau3``,
    ``order=strang``, ``sample_every=1``); scenario parameters such as the
    perturbation amplitude and wavenumber come from the scenario.
    """
    return _build(parse_config_values(text))


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _apply_threads():
    env = os.environ.get("APVM_THREADS", "").strip()
    if not env:
        return
    try:
        n = int(env)
    except ValueError:
        return
    from .spectral import set_fft_workers

    set_fft_workers(n)
    if n > 0:
        import numba

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def _float_list(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _range(text):
    try:
        a, b, h = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}") from None
    if h <= 0 or b < a:
        raise argparse.ArgumentTypeError("need step > 0 and stop >= start")
    n = int(np.floor((b - a) / h + 1e-9)) + 1
    return [a + i * h for i in range(n)]


def _add_run_flags(p):
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--scenario", choices=("landau", "weibel"))
    rel = p.add_mutually_exclusive_group()
    rel.add_argument("--relativistic", dest="relativistic", action="store_true", default=None)
    rel.add_argument("--semi-relativistic", dest="relativistic", action="store_false")
    p.add_argument("--dt", type=float)
    p.add_argument("--t-final", dest="t_final", type=float)
    p.add_argument("--nx", type=int)
    p.add_argument("--np1", type=int)
    p.add_argument("--np2", type=int)
    p.add_argument("--method")
    p.add_argument("--order", choices=("first", "strang"))
    p.add_argument("--sample-every", dest="sample_every", type=int)
    p.add_argument("--out", help="output CSV path (default: stdout)")


def _config_from_args(args, skip=()):
    values = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            values = parse_config_values(fh.read())
    for key in CONFIG_KEYS:
        if key in skip:
            continue
        v = getattr(args, key, None)
        if v is not None:
            values[key] = (v, None)
    return _build(values)


def _write_table(table, out, meta=None):
    with _output(out) as fh:
        table.to_csv(fh)
    if meta is not None and out not in (None, "-"):
        write_meta(out + ".meta.json", meta)


def _cmd_run(args):
    cfg = _config_from_args(args)
    series, _ = run(cfg)
    _write_table(series, cfg.out, series.meta)
    return 0


def _cmd_csweep(args):
    cfg = _config_from_args(args, skip=("c",))
    table = run_convergence_in_c(cfg, args.c_list, args.t_final)
    _write_table(table, cfg.out, table.meta)
    return 0


def _cmd_orderstudy(args):
    cfg = _config_from_args(args)
    table = run_order_study(cfg, args.dt_list)
    _write_table(table, cfg.out, table.meta)
    print(f"fitted slope: {table.meta['slope']:.4f}", file=sys.stderr)
    return 0


def _cmd_dispersion(args):
    params = WEIBEL_PARAMS.with_(v_th=args.v_th, T_r=args.T_r, k=args.k)
    c_values = args.scan_c if args.scan_c is not None else args.c_list
    kind = "semidiscrete" if args.dt is not None else "continuous"
    table = growth_rate_scan(c_values, params, kind, dt=args.dt)
    _write_table(table, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="apvm",
        description="Asymptotic-preserving Vlasov-Maxwell solver.",
        epilog="Flags given on the command line override keys from --config.",
    )
    sub = parser.add_subparsers(dest="command", metavar="{run,csweep,orderstudy,dispersion}")
    sub.required = True

    p = sub.add_parser("run", help="single run; writes the diagnostics time series")
    _add_run_flags(p)
    p.add_argument("--c", type=float)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("csweep", help="errors against the limit model as c grows")
    _add_run_flags(p)
    p.add_argument("--c", dest="c_list", type=_float_list, default=[1, 5, 25, 125, 625, 3125],
                   help="comma-separated increasing c values")
    p.set_defaults(func=_cmd_csweep)

    p = sub.add_parser("orderstudy", help="self-convergence in dt")
    _add_run_flags(p)
    p.add_argument("--c", type=float)
    p.add_argument("--dts", dest="dt_list", type=_float_list, default=[0.1, 0.05, 0.025, 0.0125],
                   help="comma-separated halving sequence of steps")
    p.set_defaults(func=_cmd_orderstudy)

    p = sub.add_parser("dispersion", help="growth rate of the most unstable root against c")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--scan-c", dest="scan_c", type=_range, help="start:stop:step (inclusive)")
    grp.add_argument("--c", dest="c_list", type=_float_list, default=[1.0])
    p.add_argument("--dt", type=float, help="time step; selects the semi-discrete relation")
    p.add_argument("--v-th", dest="v_th", type=float, default=WEIBEL_PARAMS.v_th)
    p.add_argument("--T-r", dest="T_r", type=float, default=WEIBEL_PARAMS.T_r)
    p.add_argument("--k", type=float, default=WEIBEL_PARAMS.k)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=_cmd_dispersion)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _apply_threads()
    try:
        return args.func(args)
    except (ApvmError, ValueError, OSError) as exc:
        print(f"apvm {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
