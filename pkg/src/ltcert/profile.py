"""The budget profile f(t) = 1/(1 + mu t^2) and the constants it induces.

With mu = pi^2/16 the profile is L^2-normalized on (0, inf),
int (1-f)^2 t^-2 dt is minimal among normalized profiles, and the induced
spectral-budget constant is A = sqrt(mu)/16 = pi/64.  Six times A is the
certified Lieb-Thirring constant 3 pi/32.
"""

import math
from dataclasses import dataclass

import numpy as np

from ltcert.specfun import integrate_semi_infinite

MU_STAR = math.pi**2 / 16.0


@dataclass(frozen=True)
class BudgetProfile:
    """Spectral filter profile, parametrized by mu > 0."""

    mu: float = MU_STAR

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("mu must be positive")


@dataclass(frozen=True)
class ProfileReport:
    mu: float
    normalization_residual: float
    objective_value: float
    induced_A: float


def f_eval(p: BudgetProfile, t):
    """f(t) = 1/(1 + mu t^2); strictly decreasing from f(0) = 1."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    out = 1.0 / (1.0 + p.mu * t * t)
    return float(out) if out.ndim == 0 else out


def induced_A(p: BudgetProfile) -> float:
    """The budget constant A = sqrt(mu)/16 (pi/64 at the normalized mu)."""
    return math.sqrt(p.mu) / 16.0


def normalization_residual(p: BudgetProfile, quadrature: bool = False) -> float:
    """int_0^inf f^2 dt - 1, closed form (pi/4) mu^(-1/2) - 1.

    With quadrature=True the integral is recomputed numerically; the two
    routes agree to 1e-12.
    """
    closed = 0.25 * math.pi / math.sqrt(p.mu) - 1.0
    if not quadrature:
        return closed
    mu = p.mu
    value, _ = integrate_semi_infinite(
        lambda t: 1.0 / (1.0 + mu * t * t) ** 2, tol=1e-13
    )
    return value - 1.0


def objective_value(p: BudgetProfile, quadrature: bool = False) -> float:
    """pi * int_0^inf (1 - f)^2 t^-2 dt = pi^2 sqrt(mu) / 4.

    Equals pi^3/16 at the normalized mu = pi^2/16.  The quadrature route
    integrates mu^2 t^2/(1 + mu t^2)^2, the literal integrand continued by
    zero at t = 0, and agrees with the closed form to 1e-10.
    """
    closed = 0.25 * math.pi**2 * math.sqrt(p.mu)
    if not quadrature:
        return closed
    mu = p.mu
    value, _ = integrate_semi_infinite(
        lambda t: mu * mu * t * t / (1.0 + mu * t * t) ** 2, tol=1e-12
    )
    return math.pi * value


def profile_report(p: BudgetProfile) -> ProfileReport:
    return ProfileReport(
        mu=p.mu,
        normalization_residual=normalization_residual(p),
        objective_value=objective_value(p),
        induced_A=induced_A(p),
    )


def integral_identity_check(rho: float, A: float) -> float:
    """Relative deviation of int_0^inf (sqrt(rho) - sqrt(A E))_+^2 dE from rho^2/(6A).

    The integrand is supported on [0, rho/A]; the quadrature value matches
    the closed antiderivative to better than 1e-10.  rho = 0 returns 0.
    """
    if rho < 0 or A <= 0:
        raise ValueError("need rho >= 0 and A > 0")
    if rho == 0:
        return 0.0
    sr = math.sqrt(rho)
    sa = math.sqrt(A)

    def integrand(E):
        return np.maximum(sr - sa * np.sqrt(E), 0.0) ** 2

    value, _ = integrate_semi_infinite(integrand, tol=1e-13 * max(1.0, rho * rho / A))
    exact = rho * rho / (6.0 * A)
    return abs(value - exact) / exact


def perturbed_objective(p: BudgetProfile, delta, support, eps: float = 1e-3) -> float:
    """Objective of f + eps*delta, renormalized by argument dilation.

    delta must be a smooth vectorized bump supported inside the positive
    interval `support`, so the perturbed profile keeps the value 1 at
    t = 0 and the objective stays finite.  The dilation g(t) -> g(S t)
    with S = ||f + eps delta||^2 restores the L^2 constraint exactly and
    multiplies the objective by S.  Using (1 - f)/t^2 = mu f, the
    perturbation enters through three integrals over the support:

        S    = (pi/4) mu^(-1/2) + 2 eps int f delta + eps^2 int delta^2,
        J(g) = (pi^2/4) sqrt(mu) - 2 eps pi mu int f delta
                 + eps^2 pi int (delta/t)^2.
    """
    from ltcert.specfun import _adaptive_panel

    lo, hi = support
    if not 0.0 < lo < hi:
        raise ValueError("support must be a positive interval")
    mu = p.mu

    def f(t):
        return 1.0 / (1.0 + mu * t * t)

    i_fd, _ = _adaptive_panel(lambda t: f(t) * delta(t), lo, hi, 1e-14)
    i_dd, _ = _adaptive_panel(lambda t: delta(t) ** 2, lo, hi, 1e-14)
    i_dt, _ = _adaptive_panel(lambda t: (delta(t) / t) ** 2, lo, hi, 1e-14)
    norm_sq = 0.25 * math.pi / math.sqrt(mu) + 2.0 * eps * i_fd + eps * eps * i_dd
    objective = (
        0.25 * math.pi**2 * math.sqrt(mu)
        - 2.0 * eps * math.pi * mu * i_fd
        + eps * eps * math.pi * i_dt
    )
    return norm_sq * objective
