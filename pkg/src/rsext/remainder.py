"""Generalized remainder coefficients C_k(p, epsilon) and the truncated remainder R_M.

Two independent routes produce C_1 and C_2(epsilon=0):

* closed forms (:func:`C1`, :func:`C2_at_eps0`), and
* :func:`assemble_Ck`, which runs the b_n recursion symbolically in omega,
  builds the c_n from psi derivatives and collects the omega^k coefficient.

The tests hold the two routes against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import TWO_PI, check_t, err_series_im, grid_quantities
from .errors import DomainError, UnsupportedOrderError
from .psi import psi_jet

PI = math.pi
N_MAX_B = 9
MAX_C_INDEX = 6


@dataclass(frozen=True)
class BPolynomial:
    """b_n(omega) = sum_k coeffs[k] * omega**k."""

    n: int
    coeffs: dict = field(default_factory=dict)

    @property
    def powers(self) -> tuple:
        return tuple(sorted(self.coeffs))

    def __call__(self, omega: float) -> complex:
        return sum(c * omega**k for k, c in self.coeffs.items())


@dataclass(frozen=True)
class RemainderCoeffs:
    p: float
    epsilon: float
    C0: float
    C1: complex
    C2: complex | None = None
    b: tuple = ()
    c: tuple = ()


def p_eps_product(n1: int, n2: int, epsilon: float) -> float:
    """prod_{n=n1}^{n2} (n - 1/2 - epsilon)."""
    if n1 > n2:
        raise ValueError(f"empty product range: n1={n1} > n2={n2}")
    out = 1.0
    for n in range(n1, n2 + 1):
        out *= n - 0.5 - epsilon
    return out


def min_power(n: int) -> int:
    """Lowest omega power present in b_n."""
    q = n // 3
    return q + n - 3 * q


def b_polynomials(epsilon: float, n_max: int = N_MAX_B) -> list:
    """b_0 .. b_{n_max} as polynomials in omega.

    b_{n+1} = omega * (2 pi i (n + 1/2 - eps) b_n - b_{n-2}) / (4 pi^2 (n+1)),
    seeded with b_0 = 1, b_{-1} = b_{-2} = 0.  Every structurally present
    power is stored, even where a P_eps factor makes its value zero.
    """
    if not (0 <= n_max <= N_MAX_B):
        raise ValueError(f"n_max must be in [0, {N_MAX_B}], got {n_max}")
    polys = [{0: 1 + 0j}]

    def get(m):
        return polys[m] if m >= 0 else {}

    for n in range(n_max):
        nxt = {}
        scale = 1.0 / (4.0 * PI * PI * (n + 1))
        lead = 2j * PI * (n + 0.5 - epsilon)
        for k, c in get(n).items():
            nxt[k + 1] = nxt.get(k + 1, 0j) + lead * c * scale
        for k, c in get(n - 2).items():
            nxt[k + 1] = nxt.get(k + 1, 0j) - c * scale
        polys.append(nxt)
    return [BPolynomial(n=i, coeffs=dict(sorted(c.items()))) for i, c in enumerate(polys)]


def c_coefficient(n: int, p: float, jet=None) -> complex:
    """c_n = n!/2^n sum_j (2 pi i)^j / j! psi^(n-2j)(p) / (n-2j)!."""
    if not (0 <= n <= MAX_C_INDEX):
        raise DomainError(f"c_n only available for 0 <= n <= {MAX_C_INDEX}, got {n}")
    if jet is None:
        jet = psi_jet(p, n)
    acc = 0j
    for j in range(n // 2 + 1):
        m = n - 2 * j
        acc += (2j * PI) ** j / math.factorial(j) * jet[m] / math.factorial(m)
    return math.factorial(n) / 2**n * acc


def C1(p: float, epsilon: float, jet=None) -> complex:
    """C_1(p, eps) = -eps psi'(p) i/(4 pi) - psi'''(p)/(96 pi^2)."""
    if jet is None:
        jet = psi_jet(p, 3)
    return complex(-jet[3] / (96.0 * PI**2), -epsilon * jet[1] / (4.0 * PI))


def C2_at_eps0(p: float, jet=None) -> float:
    """C_2(p, 0) = psi''/(2^6 pi^2) + 5 psi^(6)/(2^7 pi^4 6!)."""
    if jet is None:
        jet = psi_jet(p, 6)
    return jet[2] / (64.0 * PI**2) + 5.0 * jet[6] / (128.0 * PI**4 * 720.0)


def phase_shift_omega2(epsilon: float) -> complex:
    """omega^2 coefficient of exp(i (Im_2^- + Im_3^-)) - 1 to leading order.

    The merged imaginary correction is c/t with 1/t = omega^2 / (2 pi), so
    evaluating it at t = 2 pi yields the omega^2 coefficient directly.
    """
    return 1j * err_series_im(TWO_PI, epsilon, -1)


def assemble_Ck(k: int, p: float, epsilon: float) -> complex:
    """C_k from sum over i = 3k - 2h >= k of c_i B_{i,k}.

    k = 2 also folds in the omega^0 -> omega^2 phase shift of the psi term and
    is only derived at epsilon = 0.
    """
    if k not in (0, 1, 2):
        raise UnsupportedOrderError(f"C_k is only derived for k <= 2, got k={k}")
    if k == 2 and epsilon != 0.0:
        raise UnsupportedOrderError("C_2 is only derived at epsilon = 0")
    jet = psi_jet(p, 3 * k)
    if k == 0:
        return complex(jet[0])
    b = b_polynomials(epsilon, 3 * k)
    acc = 0j
    for i in range(3 * k, k - 1, -2):
        acc += c_coefficient(i, p, jet) * b[i].coeffs.get(k, 0j)
    if k == 2:
        acc += phase_shift_omega2(epsilon) * jet[0]
    return acc


def remainder_coeffs(p: float, epsilon: float, with_c2: bool = False) -> RemainderCoeffs:
    jet = psi_jet(p, 6 if with_c2 else 3)
    c2 = None
    if with_c2:
        if epsilon != 0.0:
            raise UnsupportedOrderError("C_2 is only derived at epsilon = 0")
        c2 = complex(C2_at_eps0(p, jet))
    n_c = 7 if with_c2 else 4
    return RemainderCoeffs(
        p=p,
        epsilon=epsilon,
        C0=jet[0],
        C1=C1(p, epsilon, jet),
        C2=c2,
        b=tuple(b_polynomials(epsilon, N_MAX_B)),
        c=tuple(c_coefficient(n, p, jet) for n in range(n_c)),
    )


def check_order(M: int, epsilon: float) -> None:
    if M not in (0, 1, 2):
        raise UnsupportedOrderError(f"remainder order M must be 0, 1 or 2, got {M}")
    if M == 2 and epsilon != 0.0:
        raise UnsupportedOrderError("M=2 is only available on the critical line (epsilon=0)")


def remainder_R(t: float, epsilon: float, M: int) -> complex:
    """R_M = (-1)^(N-1) omega^(1/2) sum_{j<=M} C_j(p, eps) omega^j.

    The M=2 term uses C_2(p, 0), which already carries the leading phase
    correction, so no separate phase factor is applied.
    """
    check_t(t)
    check_order(M, epsilon)
    g = grid_quantities(t)
    jet = psi_jet(g.p, 6 if M == 2 else (3 if M == 1 else 0))
    acc = complex(jet[0])
    if M >= 1:
        acc += C1(g.p, epsilon, jet) * g.omega
    if M >= 2:
        acc += C2_at_eps0(g.p, jet) * g.omega**2
    sign = 1.0 if (g.N - 1) % 2 == 0 else -1.0
    return sign * math.sqrt(g.omega) * acc
