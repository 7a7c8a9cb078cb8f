"""Zero sets in the (t, epsilon) plane and zeros on the critical line.

Level sets of Re and Im of exp(i pi eps/4) Z(t, eps) are sampled on lines of
constant t, refined by bisection and linked into polylines by a
nearest-neighbour rule.  Critical-line zeros come from sign changes of the
classical Z(t).
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import T_RELIABLE
from .errors import AccuracyWarning, BudgetExceededError, DomainError
from .zext import xi_scaled, z_classic

ROOT_TOL = 1e-9
EPS_WIDTH_TOL = 1e-12
T_WIDTH_TOL = 1e-9
DEFAULT_POINT_BUDGET = 2_000_000


class ZeroKind(enum.Enum):
    RE = "re"
    IM = "im"


@dataclass
class ZeroCurve:
    kind: ZeroKind
    points: list = field(default_factory=list)
    scan_dt: float = 0.0


@dataclass(frozen=True)
class CriticalZero:
    t: float
    refinement_width: float


class ZeroSeparationWarning(AccuracyWarning):
    """|Z| dips close to zero between samples without a sign change."""


def _component(t: float, eps: float, kind: ZeroKind, M: int) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        v = xi_scaled(t, eps, M)
    return v.real if kind is ZeroKind.RE else v.imag


def _quiet_z(t: float, M: int, theta_corrected: bool) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        return z_classic(t, M, theta_corrected)


def _warn_low_range(t_lo: float) -> None:
    # one warning per call rather than one per sample
    if t_lo < T_RELIABLE:
        warnings.warn(
            f"range starts at t={t_lo:g} < {T_RELIABLE}; asymptotic accuracy is not guaranteed there",
            AccuracyWarning,
            stacklevel=3,
        )


def _bisect(f, lo: float, hi: float, flo: float, width_tol: float) -> float:
    while hi - lo > width_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_line(
    t: float,
    eps_range: tuple = (-0.6, 0.6),
    n_samples: int = 41,
    kind: ZeroKind = ZeroKind.IM,
    M: int = 1,
) -> list:
    """Roots in epsilon of the selected component of xi_scaled along constant t."""
    kind = ZeroKind(kind)
    lo, hi = eps_range
    if not (-1.0 <= lo <= hi <= 1.0):
        raise DomainError(f"eps_range must lie within [-1, 1], got {eps_range!r}")
    if n_samples < 8:
        raise DomainError("n_samples must be at least 8")

    def f(e):
        return _component(t, e, kind, M)

    _warn_low_range(t)
    grid = np.linspace(lo, hi, n_samples)
    vals = [f(float(e)) for e in grid]
    roots = []
    for i, e in enumerate(grid):
        if vals[i] == 0.0:
            roots.append(float(e))
        elif i + 1 < n_samples and vals[i + 1] != 0.0 and (vals[i] < 0) != (vals[i + 1] < 0):
            roots.append(_bisect(f, float(e), float(grid[i + 1]), vals[i], EPS_WIDTH_TOL))
    return roots


def _t_grid(t_range: tuple, dt: float) -> np.ndarray:
    t1, t2 = t_range
    if not dt > 0:
        raise DomainError("dt must be positive")
    if t2 < t1:
        raise DomainError(f"empty t range {t_range!r}")
    n = int(math.floor((t2 - t1) / dt + 1e-9)) + 1
    return t1 + dt * np.arange(n)


def _scan_job(args):
    t, eps_range, n_eps, kind, M = args
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        return scan_line(t, eps_range, n_eps, kind, M)


def link_roots(lines: list, kind: ZeroKind, jump: float, dt: float) -> list:
    """Greedy nearest-epsilon continuation of per-line roots into curves.

    ``lines`` is a t-sorted list of (t, roots).  A root extends the curve whose
    last point sits on the previous line and is closest in epsilon, provided
    the gap does not exceed ``jump``; otherwise it starts a new curve.
    """
    curves = []
    active = []
    for t, roots in lines:
        pairs = sorted(
            (abs(r - curves[c].points[-1][1]), ci, ri)
            for ci, c in enumerate(active)
            for ri, r in enumerate(roots)
            if abs(r - curves[c].points[-1][1]) <= jump
        )
        used_c, used_r = set(), set()
        next_active = []
        for _, ci, ri in pairs:
            if ci in used_c or ri in used_r:
                continue
            used_c.add(ci)
            used_r.add(ri)
            c = active[ci]
            curves[c].points.append((float(t), float(roots[ri])))
            next_active.append(c)
        for ri, r in enumerate(roots):
            if ri not in used_r:
                curves.append(ZeroCurve(kind=kind, points=[(float(t), float(r))], scan_dt=dt))
                next_active.append(len(curves) - 1)
        active = sorted(next_active)
    return curves


def trace_curves(
    t_range: tuple,
    dt: float,
    eps_range: tuple = (-0.6, 0.6),
    n_eps: int = 41,
    kind: ZeroKind = ZeroKind.IM,
    M: int = 1,
    parallelism: int = 1,
    point_budget: int = DEFAULT_POINT_BUDGET,
) -> list:
    """Re=0 or Im=0 curves of xi_scaled over a grid of constant-t scan lines."""
    kind = ZeroKind(kind)
    ts = _t_grid(t_range, dt)
    _warn_low_range(float(ts[0]))
    if len(ts) * n_eps > point_budget:
        raise BudgetExceededError(
            f"{len(ts)} lines x {n_eps} samples exceeds the budget of {point_budget} points"
        )
    jobs = [(float(t), eps_range, n_eps, kind, M) for t in ts]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_scan_job, jobs, chunksize=max(1, len(jobs) // (4 * parallelism))))
    else:
        results = [_scan_job(j) for j in jobs]
    jump = 3.0 * (eps_range[1] - eps_range[0]) / n_eps
    return link_roots(list(zip(ts, results)), kind, jump, dt)


def critical_zeros(
    t_range: tuple,
    dt: float = 0.05,
    M: int = 2,
    theta_corrected: bool | None = None,
    dip_threshold: float = 0.02,
) -> list:
    """Zeros of the classical Z(t) in t_range by sign change and bisection.

    ``theta_corrected=None`` turns the 1/(48t) phase terms on exactly when
    M = 2: without them the main-sum phase error is as large as the omega^2
    remainder term and M = 2 gains nothing over M = 1.
    """
    if theta_corrected is None:
        theta_corrected = M == 2
    ts = _t_grid(t_range, dt)
    _warn_low_range(float(ts[0]))
    vals = [_quiet_z(float(t), M, theta_corrected) for t in ts]

    def f(x):
        return _quiet_z(x, M, theta_corrected)

    zeros = []
    for i in range(len(ts)):
        if vals[i] == 0.0:
            zeros.append(CriticalZero(float(ts[i]), 0.0))
            continue
        if i + 1 < len(ts) and vals[i + 1] != 0.0 and (vals[i] < 0) != (vals[i + 1] < 0):
            lo, hi = float(ts[i]), float(ts[i + 1])
            root = _bisect(f, lo, hi, vals[i], T_WIDTH_TOL)
            zeros.append(CriticalZero(root, T_WIDTH_TOL))
    for i in range(1, len(ts) - 1):
        a, b, c = abs(vals[i - 1]), abs(vals[i]), abs(vals[i + 1])
        same_sign = (vals[i - 1] < 0) == (vals[i] < 0) == (vals[i + 1] < 0)
        if b < dip_threshold and b <= a and b <= c and same_sign:
            warnings.warn(
                f"|Z| dips to {b:.3g} near t={ts[i]:.6g} without a sign change; "
                "a close zero pair may be hidden, reduce dt",
                ZeroSeparationWarning,
                stacklevel=2,
            )
    return zeros
