"""Formula-independent reference values for zeta, log-Gamma, xi and Z(t, epsilon).

Nothing here touches the Riemann-Siegel machinery or the core Stirling table:
zeta comes from Euler-Maclaurin summation, log-Gamma from a recurrence-shifted
Stirling series whose Bernoulli numbers are generated locally.

:func:`z_reference` is the analytic continuation of the classical
Z(t) = exp(i theta(t)) zeta(1/2 + i t) to the complex argument t - i epsilon,
i.e. exp(i theta(t - i eps)) zeta(1/2 + eps + i t).  :func:`z_xi_ratio` is the
cruder -xi / (F(t) exp(i pi eps / 4)) form, kept for comparison.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import AccuracyWarning, DomainError, PoleError

EM_MAX_TERMS = 300_000
IM_ACCURACY_LIMIT = 3.0e5
LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# log-Gamma: shift until Re z >= 12, then use this many Stirling terms.
_LG_SHIFT = 12.0
_LG_TERMS = 10
_LG_MAX_SHIFT = 10**6


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n (B_1 = +1/2 convention) by the Akiyama-Tanigawa algorithm."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


@dataclass(frozen=True)
class OracleConfig:
    """Euler-Maclaurin settings.

    em_terms: number of terms summed directly (None = max(20, ceil|Im s|)).
    em_bernoulli_order: maximum number of Bernoulli tail terms (B_2 .. B_2k).
    target_abs_err: tail terms are added until they drop below this.
    """

    em_terms: int | None = None
    em_bernoulli_order: int = 10
    target_abs_err: float = 1e-10

    def __post_init__(self):
        if not (2 <= self.em_bernoulli_order <= 10):
            raise DomainError("em_bernoulli_order must lie in [2, 10]")
        if self.em_terms is not None and self.em_terms < 10:
            raise DomainError("em_terms must be at least 10")
        if not self.target_abs_err > 0:
            raise DomainError("target_abs_err must be positive")

    def terms_for(self, s: complex) -> int:
        if self.em_terms is not None:
            return self.em_terms
        return min(max(20, math.ceil(abs(s.imag))), EM_MAX_TERMS)


DEFAULT_CONFIG = OracleConfig()


def zeta_em(s: complex, cfg: OracleConfig = DEFAULT_CONFIG) -> complex:
    """Riemann zeta by Euler-Maclaurin summation."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if abs(s.imag) > IM_ACCURACY_LIMIT:
        warnings.warn(
            f"|Im s| = {abs(s.imag):g} exceeds the oracle's accuracy range",
            AccuracyWarning,
            stacklevel=2,
        )
    M = cfg.terms_for(s)
    n = np.arange(1, M, dtype=float)
    logn = np.log(n)
    mag = np.exp(-s.real * logn)
    ph = s.imag * logn
    head = complex(math.fsum(mag * np.cos(ph)), -math.fsum(mag * np.sin(ph)))

    logM = math.log(M)
    M_pow = cmath.exp(-s * logM)  # M^{-s}
    acc = head + M * M_pow / (s - 1.0) + 0.5 * M_pow
    # tail: B_2k/(2k)! * s(s+1)...(s+2k-2) * M^{-s-2k+1}
    rising = s
    term_base = M_pow / M
    for k in range(1, cfg.em_bernoulli_order + 1):
        if k > 1:
            rising *= (s + 2 * k - 3) * (s + 2 * k - 2)
            term_base /= M * M
        term = float(bernoulli(2 * k)) / math.factorial(2 * k) * rising * term_base
        acc += term
        if abs(term) < 0.1 * cfg.target_abs_err:
            break
    return acc


def log_gamma_ref(z: complex) -> complex:
    """Principal-branch ln Gamma(z) via upward shift and Stirling's series."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    shift = max(0, math.ceil(_LG_SHIFT - z.real))
    if shift > _LG_MAX_SHIFT:
        raise DomainError(f"argument too far left of the origin: {z}")
    w = z + shift
    logw = cmath.log(w)
    acc = (w - 0.5) * logw - w + HALF_LOG_2PI
    inv_w2 = 1.0 / (w * w)
    power = 1.0 / w
    for k in range(1, _LG_TERMS + 1):
        acc += float(bernoulli(2 * k)) / (2 * k * (2 * k - 1)) * power
        power *= inv_w2
    if shift:
        shifted = z + np.arange(shift, dtype=float)
        logs = np.log(shifted.astype(complex))
        acc -= complex(math.fsum(logs.real), math.fsum(logs.imag))
    return acc


def xi_direct(s: complex, cfg: OracleConfig = DEFAULT_CONFIG) -> complex:
    """log xi(s) for xi(s) = Gamma(s/2 + 1)(s - 1) pi^(-s/2) zeta(s).

    Returned as a complex logarithm: real part ln|xi|, imaginary part a phase.
    A zero of zeta yields ``complex(-inf, 0)``.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("xi_direct is not evaluated at s = 1")
    z = zeta_em(s, cfg)
    if z == 0:
        return complex(-math.inf, 0.0)
    return (
        log_gamma_ref(0.5 * s)
        + cmath.log(0.5 * s)
        + cmath.log(s - 1.0)
        - 0.5 * s * LOG_PI
        + cmath.log(z)
    )


def log_theta_factor(t: float, epsilon: float) -> complex:
    """i * theta(t - i eps), with theta continued through log-Gamma."""
    s = complex(0.5 + epsilon, t)
    return 0.5 * (log_gamma_ref(0.5 * s) - log_gamma_ref(0.5 * (1.0 - s))) - 0.5 * complex(
        epsilon, t
    ) * LOG_PI


def z_reference(t: float, epsilon: float, cfg: OracleConfig = DEFAULT_CONFIG) -> complex:
    """exp(i theta(t - i eps)) zeta(1/2 + eps + i t)."""
    s = complex(0.5 + epsilon, t)
    return cmath.exp(log_theta_factor(t, epsilon)) * zeta_em(s, cfg)


def z_xi_ratio(t: float, epsilon: float, cfg: OracleConfig = DEFAULT_CONFIG) -> complex:
    """-xi(1/2 + eps + i t) / (F(t) exp(i pi eps / 4)), assembled in log space."""
    from .core import log_scale_factor_F

    lx = xi_direct(complex(0.5 + epsilon, t), cfg)
    return -cmath.exp(lx - log_scale_factor_F(t) - 0.25j * math.pi * epsilon)
