"""Command-line front end: point and grid evaluation, table comparison, bound
curves and zero tracing, written as CSV or JSON.

Exit codes: 0 ok, 2 invalid arguments, 3 numeric domain error,
4 a compare delta above --tolerance, 5 grid budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import bounds as _bounds
from .core import T_RELIABLE
from .errors import AccuracyWarning, BudgetExceededError, DomainError
from .oracle import OracleConfig, z_reference
from .zeros import DEFAULT_POINT_BUDGET, ZeroKind, critical_zeros, trace_curves
from .zext import xi_scaled, z_ext

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_TOLERANCE = 4
EXIT_BUDGET = 5

TABLE1 = (7000.0, (0.1, 0.2, 0.3, 0.4, 0.5))
TABLE2 = (250000.0, (0.1, 0.2, 0.3, 0.4, 0.5))


class ValidationError(Exception):
    pass


def _float_cell(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render(rows: list, config: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"config": config, "rows": rows}, allow_nan=True) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        cols = list(rows[0])
        w.writerow(cols)
        for r in rows:
            w.writerow([_float_cell(r[c]) for c in cols])
    return buf.getvalue()


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _eval_row(t: float, eps: float, M: int, theta_corrected: bool) -> dict:
    ev = z_ext(t, eps, M, theta_corrected)
    xs = xi_scaled(t, eps, M)
    return {
        "t": float(t),
        "epsilon": float(eps),
        "M": M,
        "N": ev.N,
        "p": ev.p,
        "re_Z": ev.z.real,
        "im_Z": ev.z.imag,
        "re_xi_scaled": xs.real,
        "im_xi_scaled": xs.imag,
    }


def _grid_job(job):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        return _eval_row(*job)


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(
        em_terms=args.em_terms,
        em_bernoulli_order=args.em_bernoulli_order,
        target_abs_err=args.oracle_target,
    )


def _check_range(name, lo, hi, allow_equal=True):
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo or (hi == lo and not allow_equal):
        raise ValidationError(f"{name}: invalid range ({lo}, {hi})")


def _check_eps(eps):
    if not (math.isfinite(eps) and abs(eps) <= 1.0):
        raise ValidationError(f"epsilon must lie in [-1, 1], got {eps}")


def cmd_eval(args):
    _check_eps(args.eps)
    return [_eval_row(args.t, args.eps, args.m, args.theta_corrected)], EXIT_OK


def cmd_grid(args):
    _check_range("--t-range", *args.t_range)
    _check_range("--eps-range", *args.eps_range)
    for e in args.eps_range:
        _check_eps(e)
    if not args.dt > 0 or args.n_eps < 1:
        raise ValidationError("--dt must be positive and --n-eps at least 1")
    t1, t2 = args.t_range
    n_t = int(math.floor((t2 - t1) / args.dt + 1e-9)) + 1
    if n_t * args.n_eps > args.budget:
        raise BudgetExceededError(f"grid of {n_t * args.n_eps} points exceeds budget {args.budget}")
    ts = t1 + args.dt * np.arange(n_t)
    if t1 < T_RELIABLE:
        warnings.warn(f"grid starts at t={t1:g} < {T_RELIABLE}; asymptotic accuracy is not guaranteed there",
                      AccuracyWarning)
    es = np.linspace(args.eps_range[0], args.eps_range[1], args.n_eps)
    jobs = [(float(t), float(e), args.m, args.theta_corrected) for t in ts for e in es]
    if args.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.parallelism) as pool:
            rows = list(pool.map(_grid_job, jobs, chunksize=max(1, len(jobs) // (4 * args.parallelism))))
    else:
        rows = [_grid_job(j) for j in jobs]
    return rows, EXIT_OK


def cmd_compare(args):
    if args.table:
        t, eps_list = TABLE1 if args.table == 1 else TABLE2
    else:
        if args.t is None or not args.eps:
            raise ValidationError("compare needs --table or both --t and --eps")
        t, eps_list = args.t, args.eps
    for e in eps_list:
        _check_eps(e)
    cfg = _oracle_config(args)
    rows = []
    status = EXIT_OK
    for e in eps_list:
        z = z_ext(t, e, args.m, args.theta_corrected).z
        zr = z_reference(t, e, cfg)
        delta = abs(z - zr)
        ok = delta <= args.tolerance
        if not ok:
            status = EXIT_TOLERANCE
        rows.append(
            {
                "t": float(t),
                "epsilon": float(e),
                "M": args.m,
                "re_Z": z.real,
                "im_Z": z.imag,
                "re_Z_ref": zr.real,
                "im_Z_ref": zr.imag,
                "delta": delta,
                "within_tolerance": ok,
            }
        )
    return rows, status


def cmd_bounds(args):
    if not (args.t_min > 10 and args.t_max >= args.t_min) or args.n < 1:
        raise ValidationError("bounds need 10 < --t-min <= --t-max and --n >= 1")
    for r in args.r:
        if not (1.0 < r <= 2.0):
            raise ValidationError(f"--r must lie in (1, 2], got {r}")
    for e in args.eps:
        if not (-0.5 <= e <= 0.5):
            raise ValidationError(f"bounds need epsilon in [-1/2, 1/2], got {e}")
    ts = np.geomspace(args.t_min, args.t_max, args.n) if args.n > 1 else np.array([args.t_min])
    rows = []
    for r in args.r:
        for e in args.eps:
            for t in ts:
                rep = _bounds.bound_report(float(t), float(e), float(r))
                rows.append(
                    {
                        "r": float(r),
                        "epsilon": float(e),
                        "t": float(t),
                        "ub_L0": rep.ub_L0,
                        "ub_L2": rep.ub_L2,
                        "ub_L3": rep.ub_L3,
                        "ratio": rep.ratio,
                    }
                )
    return rows, EXIT_OK


def cmd_zeros(args):
    _check_range("--t-range", *args.t_range)
    if not args.dt > 0:
        raise ValidationError("--dt must be positive")
    m = 2 if args.m is None else args.m
    zs = critical_zeros(tuple(args.t_range), args.dt, M=m, theta_corrected=args.theta_corrected or None)
    return [{"t": z.t, "width": z.refinement_width, "M": m} for z in zs], EXIT_OK


def cmd_curves(args):
    _check_range("--t-range", *args.t_range)
    _check_range("--eps-range", *args.eps_range, allow_equal=False)
    for e in args.eps_range:
        _check_eps(e)
    if not args.dt > 0 or args.n_eps < 8:
        raise ValidationError("--dt must be positive and --n-eps at least 8")
    kinds = [ZeroKind.RE, ZeroKind.IM] if args.kind == "both" else [ZeroKind(args.kind)]
    rows = []
    cid = 0
    for kind in kinds:
        curves = trace_curves(
            tuple(args.t_range),
            args.dt,
            tuple(args.eps_range),
            args.n_eps,
            kind,
            M=args.m,
            parallelism=args.parallelism,
            point_budget=args.budget,
        )
        for c in curves:
            for t, e in c.points:
                rows.append({"curve_id": cid, "kind": kind.value, "t": t, "epsilon": e, "M": args.m})
            cid += 1
    return rows, EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "grid": cmd_grid,
    "compare": cmd_compare,
    "bounds": cmd_bounds,
    "zeros": cmd_zeros,
    "curves": cmd_curves,
}


def _default_parallelism() -> int:
    raw = os.environ.get("ZEXT_PARALLELISM")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--parallelism", type=int, default=None,
                        help="worker processes (falls back to $ZEXT_PARALLELISM, then 1)")
    common.add_argument("--theta-corrected", action="store_true",
                        help="include the 1/(48t) + 7/(5760t^3) phase terms")

    p = argparse.ArgumentParser(prog="rsext", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="Z(t, eps) at one point")
    e.add_argument("--t", type=float, required=True)
    e.add_argument("--eps", type=float, default=0.0)
    e.add_argument("--m", type=int, default=1, choices=(0, 1, 2))

    g = sub.add_parser("grid", parents=[common], help="Z over a (t, eps) grid")
    g.add_argument("--t-range", type=float, nargs=2, required=True, metavar=("T1", "T2"))
    g.add_argument("--dt", type=float, default=1.0)
    g.add_argument("--eps-range", type=float, nargs=2, default=(-0.5, 0.5), metavar=("E1", "E2"))
    g.add_argument("--n-eps", type=int, default=11)
    g.add_argument("--m", type=int, default=1, choices=(0, 1, 2))
    g.add_argument("--budget", type=int, default=DEFAULT_POINT_BUDGET)

    c = sub.add_parser("compare", parents=[common], help="formula against the oracle")
    c.add_argument("--table", type=int, choices=(1, 2), default=None,
                   help="reproduce the t=7000 (1) or t=250000 (2) comparison")
    c.add_argument("--t", type=float, default=None)
    c.add_argument("--eps", type=float, nargs="+", default=None)
    c.add_argument("--m", type=int, default=0, choices=(0, 1, 2))
    c.add_argument("--tolerance", type=float, default=1.3e-4)
    c.add_argument("--em-terms", type=int, default=None)
    c.add_argument("--em-bernoulli-order", type=int, default=10)
    c.add_argument("--oracle-target", type=float, default=1e-12)

    b = sub.add_parser("bounds", parents=[common], help="relative remainder-error bound curves")
    b.add_argument("--t-min", type=float, default=20.0)
    b.add_argument("--t-max", type=float, default=200.0)
    b.add_argument("--n", type=int, default=50)
    b.add_argument("--r", type=float, nargs="+", default=[_bounds.DEFAULT_R, 2.0])
    b.add_argument("--eps", type=float, nargs="+", default=[-0.5, 0.5])

    z = sub.add_parser("zeros", parents=[common], help="critical-line zeros")
    z.add_argument("--t-range", type=float, nargs=2, required=True, metavar=("T1", "T2"))
    z.add_argument("--dt", type=float, default=0.05)
    z.add_argument("--m", type=int, default=None, choices=(0, 1, 2),
                   help="remainder order (default 2)")

    cv = sub.add_parser("curves", parents=[common], help="Re/Im zero curves in the (t, eps) plane")
    cv.add_argument("--t-range", type=float, nargs=2, required=True, metavar=("T1", "T2"))
    cv.add_argument("--dt", type=float, default=0.05)
    cv.add_argument("--eps-range", type=float, nargs=2, default=(-0.6, 0.6), metavar=("E1", "E2"))
    cv.add_argument("--n-eps", type=int, default=41)
    cv.add_argument("--kind", choices=("re", "im", "both"), default="both")
    cv.add_argument("--m", type=int, default=1, choices=(0, 1))
    cv.add_argument("--budget", type=int, default=DEFAULT_POINT_BUDGET)
    return p


def _config_dict(args) -> dict:
    # parallelism is left out so output does not depend on the worker count
    skip = {"out", "format", "parallelism"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _report_warnings(caught) -> None:
    seen = {}
    for w in caught:
        key = (w.category.__name__, str(w.message))
        seen[key] = seen.get(key, 0) + 1
    for (cat, msg), n in seen.items():
        extra = f" (x{n})" if n > 1 else ""
        print(f"warning: {cat}: {msg}{extra}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    if args.parallelism is None:
        args.parallelism = _default_parallelism()
    if args.parallelism < 1:
        print("error: --parallelism must be >= 1", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", AccuracyWarning)
            rows, status = COMMANDS[args.command](args)
        _report_warnings(caught)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _write(render(rows, _config_dict(args), args.format), args.out)
    return status


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
