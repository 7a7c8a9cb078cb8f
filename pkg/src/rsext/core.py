"""Scalar building blocks: truncation grid, phases, scale factors, Stirling series.

Everything here is a pure function of its arguments.  Complex values are plain
Python ``complex``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AccuracyWarning, DomainError

TWO_PI = 2.0 * math.pi

# Usable range of the asymptotic formulas; below this only a warning is issued.
T_RELIABLE = 20.0

# B_2 ... B_12.  K is capped at 6, so B_12 is only needed by the error bound.
BERNOULLI_EVEN = {
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
}
K_MAX = 6


@dataclass(frozen=True)
class StripPoint:
    """A point s = 1/2 + epsilon + i t of the critical strip."""

    t: float
    epsilon: float

    def __post_init__(self):
        check_t(self.t)
        if not math.isfinite(self.epsilon) or abs(self.epsilon) > 1.0:
            raise DomainError(f"|epsilon| must be <= 1, got {self.epsilon!r}")

    @property
    def s(self) -> complex:
        return complex(0.5 + self.epsilon, self.t)


@dataclass(frozen=True)
class GridQuantities:
    N: int
    p: float
    omega: float
    a_mod: float


def check_t(t: float) -> None:
    if not isinstance(t, (int, float)) or not math.isfinite(t) or t <= 0:
        raise DomainError(f"t must be a finite positive number, got {t!r}")


def warn_low_t(t: float, stacklevel: int = 3) -> None:
    if t < T_RELIABLE:
        import warnings

        warnings.warn(
            f"t={t:g} is below {T_RELIABLE:g}; asymptotic accuracy is not guaranteed",
            AccuracyWarning,
            stacklevel=stacklevel,
        )


def grid_quantities(t: float) -> GridQuantities:
    """N = floor(sqrt(t/2pi)), p = sqrt(t/2pi) - N, omega and |a|.

    The floor is decided in exact rational arithmetic on the double values of
    ``t`` and ``2*pi`` so lattice points are never misclassified by rounding.
    """
    check_t(t)
    a = math.sqrt(t / TWO_PI)
    ratio = Fraction(t) / Fraction(TWO_PI)
    num, den = ratio.numerator, ratio.denominator
    N = math.isqrt(num * den) // den
    p = a - N
    if p < 0.0:
        p = 0.0
    elif p >= 1.0:
        p = math.nextafter(1.0, 0.0)
    return GridQuantities(N=N, p=p, omega=math.sqrt(TWO_PI / t), a_mod=math.sqrt(TWO_PI * t))


def theta1(t: float) -> float:
    """Leading phase (t/2) ln(t/(2 pi e)) - pi/8."""
    check_t(t)
    return 0.5 * t * (math.log(t / TWO_PI) - 1.0) - math.pi / 8.0


def theta_correction(t: float) -> float:
    return 1.0 / (48.0 * t) + 7.0 / (5760.0 * t**3)


def theta(t: float) -> float:
    """Riemann-Siegel theta with the 1/(48t) and 7/(5760 t^3) corrections."""
    return theta1(t) + theta_correction(t)


def log_scale_factor_F(t: float) -> float:
    check_t(t)
    return (
        0.75 * math.log(t / 2.0)
        + 0.5 * math.log(TWO_PI)
        - 0.25 * math.log(math.pi)
        - 0.25 * math.pi * t
        + math.log(t)
    )


def scale_factor_F(t: float) -> float:
    """(pi/2)^(1/4) t^(7/4) exp(-pi t/4).

    Underflows to subnormals/zero near t ~ 940; use :func:`log_scale_factor_F`
    for ratios.
    """
    check_t(t)
    return (math.pi / 2.0) ** 0.25 * t**1.75 * math.exp(-0.25 * math.pi * t)


def log_scale_factor_f(t: float) -> float:
    # lazy import: oracle is the independent log-Gamma path
    from .oracle import log_gamma_ref

    check_t(t)
    lg = log_gamma_ref(complex(0.25, 0.5 * t)).real
    return math.log(0.5) - 0.25 * math.log(math.pi) + math.log(t * t + 0.25) + lg


def scale_factor_f(t: float) -> float:
    """Edwards' scale factor (1/2) pi^(-1/4) (t^2 + 1/4) |Gamma(1/4 + i t/2)|."""
    return math.exp(log_scale_factor_f(t))


def _check_stirling_args(z: complex, K: int) -> complex:
    z = complex(z)
    if not (1 <= K <= K_MAX):
        raise DomainError(f"K must be in [1, {K_MAX}], got {K}")
    if z == 0 or (z.imag == 0.0 and z.real < 0.0):
        raise DomainError(f"Stirling series undefined on the non-positive real axis: {z}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
    return z


def stirling_log_gamma(z: complex, K: int = 3) -> complex:
    """ln Gamma(z+1) from the Stirling series with K-1 Bernoulli terms."""
    z = _check_stirling_args(z, K)
    logz = cmath.log(z)
    acc = (z + 0.5) * logz - z + 0.5 * math.log(TWO_PI)
    inv_z2 = 1.0 / (z * z)
    power = 1.0 / z
    for k in range(1, K):
        acc += float(BERNOULLI_EVEN[2 * k]) / (2 * k * (2 * k - 1)) * power
        power *= inv_z2
    return acc


def stirling_remainder_bound(z: complex, K: int = 3) -> float:
    """Stieltjes bound on the truncation error of :func:`stirling_log_gamma`."""
    z = _check_stirling_args(z, K)
    b = abs(float(BERNOULLI_EVEN[2 * K])) / (2 * K * (2 * K - 1) * abs(z) ** (2 * K - 1))
    return b / math.cos(0.5 * cmath.phase(z)) ** (2 * K)


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")


def err_series_im(t: float, epsilon: float, sign: int) -> float:
    """Leading 1/t term of the merged imaginary Stirling corrections."""
    check_t(t)
    _check_sign(sign)
    e = epsilon
    if sign == 1:
        return (1.0 - 84.0 * e + 10.0 * e * e) / (48.0 * t)
    return -(1.0 + 108.0 * e - 12.0 * e * e) / (48.0 * t)


def err_series_re(t: float, epsilon: float, sign: int) -> float:
    """Leading 1/t^2 term of the merged real Stirling corrections."""
    check_t(t)
    _check_sign(sign)
    e = epsilon
    if sign == 1:
        poly = 27.0 + 94.0 * e + 84.0 * e * e + 8.0 * e**3
    else:
        poly = 27.0 - 22.0 * e + 36.0 * e * e - 8.0 * e**3
    return poly / (96.0 * t * t)
