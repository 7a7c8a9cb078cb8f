"""Riemann-Siegel Z function extended off the critical line.

Z(t, eps) approximates -xi(1/2 + eps + i t) / (F(t) exp(i pi eps / 4)) with
hyperbolic main sums and generalized remainder coefficients.
"""

from .errors import (
    AccuracyWarning,
    BudgetExceededError,
    DomainError,
    PoleError,
    UnsupportedOrderError,
)
from .zext import xi_scaled, z_classic, z_ext, z_value

__all__ = [
    "AccuracyWarning",
    "BudgetExceededError",
    "DomainError",
    "PoleError",
    "UnsupportedOrderError",
    "xi_scaled",
    "z_classic",
    "z_ext",
    "z_value",
]

__version__ = "0.1.0"
