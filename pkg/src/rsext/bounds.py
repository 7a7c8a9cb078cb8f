"""Upper bounds for the off-saddle path integrals L0, L2, L3.

Each bound is divided by the smallest leading remainder R_0(t) at p = 1/2,
so the sum is a bound on the relative remainder error Delta R / R.
``r`` in (1, 2] places the L0/L1 and L1/L2 boundaries at a +/- |a|/r e^{i pi/4}.

Not computed here: the L1 spurious (Gaussian-tail) contribution.  Outside the
[-|a|, |a|] window it is below 0.003 of the in-window contribution already at
t = 20, and shrinks quickly with t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .psi import psi

SQRT2 = math.sqrt(2.0)
DEFAULT_R = 1.05
SPURIOUS_L1_FRACTION = 0.003


@dataclass(frozen=True)
class BoundReport:
    t: float
    epsilon: float
    r: float
    K0: float
    K2: float
    ub_L0: float
    ub_L2: float
    ub_L3: float
    ratio: float


def _check_r(r: float) -> None:
    if not (1.0 < r <= 2.0):
        raise DomainError(f"r must lie in (1, 2], got {r!r}")


def _check_args(t: float, epsilon: float, r: float) -> None:
    if not (math.isfinite(t) and t > 10.0):
        raise DomainError(f"bounds require t > 10, got {t!r}")
    if not (-0.5 <= epsilon <= 0.5):
        raise DomainError(f"bounds require epsilon in [-1/2, 1/2], got {epsilon!r}")
    _check_r(r)


def K0(r: float) -> float:
    _check_r(r)
    return math.atan(1.0 / (r * SQRT2 + 1.0)) - 1.0 / (r * SQRT2)


def K2(r: float) -> float:
    _check_r(r)
    return -(math.atan(1.0 / (SQRT2 * r - 1.0)) - 1.0 / (SQRT2 * r))


def r0_min(t: float) -> float:
    """R_0(t) at p = 1/2: (2 pi / t)^(1/4) C_0(1/2)."""
    return (2.0 * math.pi / t) ** 0.25 * psi(0.5)


def upper_bound_L0(t: float, epsilon: float, r: float = DEFAULT_R) -> float:
    _check_args(t, epsilon, r)
    num = 2.0 * SQRT2 * math.exp(K0(r) * t)
    den = math.sqrt(2.0 * math.pi) ** ((1.0 + epsilon) / 2.0) * (2.0 * math.pi * t) ** 0.25
    return num / den / r0_min(t)


def upper_bound_L0_intermediate(t: float, epsilon: float, r: float = DEFAULT_R) -> float:
    """The bound one step before the last inequality, kept for comparison."""
    _check_args(t, epsilon, r)
    x = math.sqrt(math.pi * t) / r
    val = (
        (2.0 * math.pi * t) ** -0.25
        / (2.0 * math.pi) ** ((1.0 + epsilon) / 2.0)
        * 2.0
        * math.exp(K0(r) * t + x)
        * SQRT2
        * math.exp(-x)
        / -math.expm1(-x)
    )
    return val / r0_min(t)


def upper_bound_L2(t: float, epsilon: float, r: float = DEFAULT_R) -> float:
    _check_args(t, epsilon, r)
    val = (1.0 / (r * SQRT2)) ** epsilon * math.exp(K2(r) * t) * 2.0 * math.sqrt(r) * (t / math.pi) ** 0.25
    return val / r0_min(t)


def upper_bound_L3(t: float, epsilon: float, r: float = DEFAULT_R) -> float:
    """r does not enter the final bound; it is validated for a uniform interface."""
    _check_args(t, epsilon, r)
    a = math.sqrt(2.0 * math.pi * t)
    val = ((a + math.pi) / a) ** epsilon * math.exp(-t) / math.sqrt(math.pi * t)
    return val / r0_min(t)


def bound_report(t: float, epsilon: float, r: float = DEFAULT_R) -> BoundReport:
    l0 = upper_bound_L0(t, epsilon, r)
    l2 = upper_bound_L2(t, epsilon, r)
    l3 = upper_bound_L3(t, epsilon, r)
    return BoundReport(
        t=t,
        epsilon=epsilon,
        r=r,
        K0=K0(r),
        K2=K2(r),
        ub_L0=l0,
        ub_L2=l2,
        ub_L3=l3,
        ratio=l0 + l2 + l3,
    )
