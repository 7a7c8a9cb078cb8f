"""Extended Riemann-Siegel function Z(t, epsilon) off the critical line.

Z(t, eps) = 2 sum_{n<=N} [cosh(eps L_n) cos(phi_n) + i sinh(eps L_n) sin(phi_n)] / sqrt(n)
            + R_M(t, eps)

with L_n = ln sqrt(t / (2 pi n^2)) and phi_n = theta_1(t) - t ln n.  It tracks
-xi(1/2 + eps + i t) / (F(t) exp(i pi eps / 4)).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import TWO_PI, StripPoint, check_t, grid_quantities, log_scale_factor_F
from .core import theta as theta_full
from .core import theta1 as theta_leading
from .core import warn_low_t
from .errors import AccuracyWarning, DomainError
from .remainder import check_order, remainder_R

# Above this t the phases are reduced mod 2 pi in extended precision.
COMPENSATED_PHASE_T = 1.0e7


@dataclass(frozen=True)
class ZEvaluation:
    point: StripPoint
    N: int
    p: float
    main_sum: complex
    remainder: complex
    z: complex
    remainder_order: int


def _phases_double(t: float, n: np.ndarray, theta_corrected: bool) -> np.ndarray:
    th = theta_full(t) if theta_corrected else theta_leading(t)
    return th - t * np.log(n)


def _phases_compensated(t: float, N: int, theta_corrected: bool) -> np.ndarray:
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.dps = 20 + int(math.log10(t)) * 2
    T = ctx.mpf(t)
    th = T / 2 * (ctx.log(T / (2 * ctx.pi)) - 1) - ctx.pi / 8
    if theta_corrected:
        th += 1 / (48 * T) + ctx.mpf(7) / (5760 * T**3)
    two_pi = 2 * ctx.pi
    return np.array([float(ctx.fmod(th - T * ctx.log(k), two_pi)) for k in range(1, N + 1)])


def main_sum(t: float, epsilon: float, theta_corrected: bool = False) -> complex:
    """The cosh/sinh weighted main sums (without remainder)."""
    g = grid_quantities(t)
    if g.N == 0:
        return 0j
    n = np.arange(1, g.N + 1, dtype=float)
    if t > COMPENSATED_PHASE_T:
        phi = _phases_compensated(t, g.N, theta_corrected)
    else:
        phi = _phases_double(t, n, theta_corrected)
    L = 0.5 * math.log(t / TWO_PI) - np.log(n)
    w = 2.0 / np.sqrt(n)
    re = w * np.cosh(epsilon * L) * np.cos(phi)
    im = w * np.sinh(epsilon * L) * np.sin(phi)
    return complex(math.fsum(re), math.fsum(im))


def _validate(t: float, epsilon: float, M: int) -> None:
    check_t(t)
    if not math.isfinite(epsilon) or abs(epsilon) > 1.0:
        raise DomainError(f"|epsilon| must be <= 1, got {epsilon!r}")
    check_order(M, epsilon)


def z_ext(t: float, epsilon: float, M: int = 1, theta_corrected: bool = False) -> ZEvaluation:
    """Evaluate Z(t, epsilon) with remainder order M."""
    _validate(t, epsilon, M)
    warn_low_t(t)
    if M == 1 and abs(epsilon) > 0.5:
        warnings.warn(
            f"|epsilon|={abs(epsilon):g} > 0.5: outside the range covered by the error bounds",
            AccuracyWarning,
            stacklevel=2,
        )
    g = grid_quantities(t)
    ms = main_sum(t, epsilon, theta_corrected)
    r = remainder_R(t, epsilon, M)
    return ZEvaluation(
        point=StripPoint(t, epsilon),
        N=g.N,
        p=g.p,
        main_sum=ms,
        remainder=r,
        z=ms + r,
        remainder_order=M,
    )


def z_value(t: float, epsilon: float, M: int = 1, theta_corrected: bool = False) -> complex:
    return z_ext(t, epsilon, M, theta_corrected).z


def z_classic(t: float, M: int = 2, theta_corrected: bool = False) -> float:
    """Classical Riemann-Siegel Z(t); sign changes mark zeros on the critical line."""
    return z_ext(t, 0.0, M, theta_corrected).z.real


def xi_scaled(t: float, epsilon: float, M: int = 1) -> complex:
    """exp(i pi eps / 4) Z(t, eps): shares its Re/Im zero sets with -xi."""
    return cmath.exp(0.25j * math.pi * epsilon) * z_value(t, epsilon, M)


def log_abs_xi(t: float, epsilon: float, M: int = 1) -> float:
    """ln|xi(1/2 + eps + i t)| ~ ln F(t) + ln|Z|; ``-inf`` marks an exact zero."""
    z = z_value(t, epsilon, M)
    if z == 0:
        return -math.inf
    return log_scale_factor_F(t) + math.log(abs(z))


def cauchy_riemann_residual(
    t: float, epsilon: float, dt: float = 1e-4, de: float = 1e-4, M: int = 1
) -> tuple[float, float]:
    """Central-difference residuals (dIm/deps + dRe/dt, dRe/deps - dIm/dt).

    Z oscillates in t with frequency up to ln(t/2pi)/2, so the t-step error
    is about dt^2 |Z'''| / 6.  dt = 1e-3 already leaves a ~1e-5 floor at
    t ~ 5000, which hides the decay of the residual itself.
    """
    if not (dt > 0 and de > 0) or dt >= t or de >= 1.0:
        raise DomainError(f"invalid steps dt={dt!r}, de={de!r}")
    if abs(epsilon) + de > 1.0:
        raise DomainError("epsilon +/- de leaves [-1, 1]")
    if M == 2:
        raise DomainError("M=2 is only defined at epsilon=0; no epsilon derivative")
    d_t = (z_value(t + dt, epsilon, M) - z_value(t - dt, epsilon, M)) / (2.0 * dt)
    d_e = (z_value(t, epsilon + de, M) - z_value(t, epsilon - de, M)) / (2.0 * de)
    return d_e.imag + d_t.real, d_e.real - d_t.imag
