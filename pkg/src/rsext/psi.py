"""The kernel psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) and its derivatives.

Derivatives come from truncated Taylor (jet) arithmetic on the closed form.
At p = 1/4 and p = 3/4 numerator and denominator vanish together; close to
those points the jet is built from the quotient series expanded about the
singular point, after cancelling the common simple zero.  psi is entire, so
that re-expanded series converges everywhere; the switch radius only trades
cancellation in the direct quotient against series length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_ORDER = 6
SINGULAR_POINTS = (0.25, 0.75)
# Inside this radius the re-expanded quotient is used.
SWITCH_RADIUS = 0.15
# Terms kept in the quotient series about a singular point.
_SERIES_LEN = 40

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PsiJet:
    """psi and its derivatives psi^(k)(p), k = 0..max_order."""

    p: float
    values: tuple

    def __getitem__(self, k: int) -> float:
        return self.values[k]

    @property
    def max_order(self) -> int:
        return len(self.values) - 1


def _jet_sin_cos(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(u)
    s = np.zeros(n)
    c = np.zeros(n)
    s[0] = math.sin(u[0])
    c[0] = math.cos(u[0])
    ku = np.arange(n) * u
    for k in range(1, n):
        s[k] = np.dot(ku[1 : k + 1], c[k - 1 :: -1][:k]) / k
        c[k] = -np.dot(ku[1 : k + 1], s[k - 1 :: -1][:k]) / k
    return s, c


def _jet_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    q = np.zeros(n)
    for k in range(n):
        q[k] = (a[k] - np.dot(q[:k], b[k:0:-1])) / b[0]
    return q


def _num_den_jets(p0: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Taylor coefficients (about p0) of the numerator and denominator cosines."""
    u = np.zeros(n)
    u[0] = TWO_PI * (p0 * p0 - p0 - 0.0625)
    if n > 1:
        u[1] = TWO_PI * (2.0 * p0 - 1.0)
    if n > 2:
        u[2] = TWO_PI
    v = np.zeros(n)
    v[0] = TWO_PI * p0
    if n > 1:
        v[1] = TWO_PI
    return _jet_sin_cos(u)[1], _jet_sin_cos(v)[1]


def _regular_coeffs(p: float, n: int) -> np.ndarray:
    num, den = _num_den_jets(p, n)
    return _jet_div(num, den)


def _quotient_series(p0: float) -> np.ndarray:
    num, den = _num_den_jets(p0, _SERIES_LEN + 1)
    # both constant terms vanish exactly at p0; drop them and divide out h
    return _jet_div(num[1:], den[1:])


def _singular_coeffs(p: float, p0: float, n: int) -> np.ndarray:
    quotient = _QUOTIENTS[p0]
    h = p - p0
    out = np.zeros(n)
    for k in range(n):
        # k-th Taylor coefficient at p of sum_m Q_m h^m
        terms = [quotient[m] * math.comb(m, k) * h ** (m - k) for m in range(k, _SERIES_LEN)]
        out[k] = math.fsum(terms)
    return out


def _nearest_singular(p: float):
    for p0 in SINGULAR_POINTS:
        if abs(p - p0) < SWITCH_RADIUS:
            return p0
    return None


_QUOTIENTS = {p0: _quotient_series(p0) for p0 in SINGULAR_POINTS}


def _check_p(p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    return p


def psi_jet(p: float, max_order: int = MAX_ORDER) -> PsiJet:
    """Derivatives psi^(0..max_order)(p)."""
    p = _check_p(p)
    if not (0 <= max_order <= MAX_ORDER):
        raise DomainError(f"max_order must be in [0, {MAX_ORDER}], got {max_order}")
    n = max_order + 1
    p0 = _nearest_singular(p)
    if p0 is None:
        coeffs = _regular_coeffs(p, n)
    else:
        coeffs = _singular_coeffs(p, p0, n)
    values = tuple(float(coeffs[k] * math.factorial(k)) for k in range(n))
    return PsiJet(p=p, values=values)


def psi(p: float) -> float:
    """C_0(p); the removable singularities at 1/4 and 3/4 are filled in."""
    return psi_jet(p, 0).values[0]
