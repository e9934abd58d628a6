"""Closed-form SIR distribution bounds, rate bounds and outage bounds.

All arguments are linear (not dB). Everything here is deterministic;
the only randomness-free numerics are the quadratures behind rho, the
rate lower bounds and the fading CDF expectation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from .mc import RateParams
from .numerics import DEFAULT_QUAD, QuadSpec, integrate, rho, upper_inc_gamma

__all__ = [
    "CurveKind",
    "BoundCurve",
    "DegenerateObjectiveError",
    "beta_nfd",
    "xi_star",
    "beta_fd",
    "cdf_lb_nfd",
    "cdf_ub_nfd",
    "cdf_ub_nfd_tight",
    "mean_inv_sir_nfd",
    "avg_rate_ub_nfd",
    "avg_rate_lb_nfd",
    "avg_rate_lb_fd",
    "outage_ub_nfd",
    "outage_lb_nfd",
    "outage_bounds_nfd",
    "outage_lb_fd",
    "outage_capacity_numeric",
    "fading_cdf_exact",
    "fading_cdf_lb",
    "fading_cdf_ub",
    "pfd_cdf_lb",
]

_LN2 = math.log(2.0)


class CurveKind(Enum):
    LB = "lb"
    UB = "ub"
    EXACT = "exact"


@dataclass(frozen=True)
class BoundCurve:
    """A bound or exact curve evaluated on a grid of abscissae."""

    grid: np.ndarray
    values: np.ndarray
    kind: CurveKind

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        if g.shape != v.shape or g.ndim != 1:
            raise ValueError("grid and values must be 1-d arrays of equal length")

    def validate_cdf(self, tol: float = 1e-12) -> "BoundCurve":
        v = self.values
        if np.any(v < -tol) or np.any(v > 1.0 + tol):
            raise ValueError("CDF curve leaves [0, 1]")
        if np.any(np.diff(v) < -tol):
            raise ValueError("CDF curve is not nondecreasing")
        return self


class DegenerateObjectiveError(RuntimeError):
    """The outage-rate objective was flat over the whole search bracket."""


def _check_mu(mu: float) -> None:
    if mu <= 2.0:
        raise ValueError(f"path-loss exponent must exceed 2, got {mu}")


# ---------------------------------------------------------------------------
# beta coefficients
# ---------------------------------------------------------------------------

def xi_star(mu: float) -> float:
    """Optimal dominant-interferer threshold behind the non-fading bound."""
    _check_mu(mu)
    return (mu + 2.0) / (mu - 2.0)


def beta_nfd(mu: float) -> float:
    """Non-fading bound coefficient (mu+2)^(2/mu+1) / (mu*(mu-2)^(2/mu))."""
    _check_mu(mu)
    return (mu + 2.0) ** (2.0 / mu + 1.0) / (mu * (mu - 2.0) ** (2.0 / mu))


def beta_fd(mu: float) -> float:
    """Fading bound coefficient 2*pi / (mu*sin(2*pi/mu)).

    Also equals Gamma(1+2/mu)*Gamma(1-2/mu) by reflection; both forms are
    evaluated and must agree to 1e-12, as an internal sanity check.
    """
    _check_mu(mu)
    trig = 2.0 * math.pi / (mu * math.sin(2.0 * math.pi / mu))
    gam = math.gamma(1.0 + 2.0 / mu) * math.gamma(1.0 - 2.0 / mu)
    if abs(trig - gam) > 1e-12 * abs(trig):
        raise AssertionError(f"beta_fd forms disagree: {trig} vs {gam}")
    return trig


# ---------------------------------------------------------------------------
# non-fading SIR CDF bounds
# ---------------------------------------------------------------------------

def cdf_lb_nfd(q: float, mu: float) -> float:
    """Universal lower bound of the non-fading SIR CDF (zero below q=1)."""
    _check_mu(mu)
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    return 0.0 if q <= 1.0 else 1.0 - q ** (-2.0 / mu)


def cdf_ub_nfd(q: float, mu: float) -> float:
    """Universal upper bound 1 - 1/(1 + beta_nfd * q^(2/mu))."""
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    return 1.0 - 1.0 / (1.0 + beta_nfd(mu) * q ** (2.0 / mu))


def cdf_ub_nfd_tight(q: float, mu: float) -> float:
    """Tighter upper bound 1 - 1/(beta_nfd * q^(2/mu)), valid for q >= 1 only."""
    if q < 1.0:
        raise ValueError("tight upper bound is only valid for q >= 1")
    return 1.0 - 1.0 / (beta_nfd(mu) * q ** (2.0 / mu))


def mean_inv_sir_nfd(mu: float) -> float:
    """Mean inverted SIR of the non-fading network: 2/(mu-2)."""
    _check_mu(mu)
    return 2.0 / (mu - 2.0)


# ---------------------------------------------------------------------------
# average Shannon rate bounds
# ---------------------------------------------------------------------------

def avg_rate_ub_nfd(alpha: float, mu: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Non-fading rate upper bound: log2(1+a) + a^(2/mu)*mu/((mu-2)*ln2) * rho(...)."""
    _check_mu(mu)
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    lead = math.log2(1.0 + alpha)
    coef = alpha ** (2.0 / mu) * mu / ((mu - 2.0) * _LN2)
    return lead + coef * rho(alpha ** (1.0 - 2.0 / mu), mu / (mu - 2.0), spec)


def _rate_lb(alpha: float, mu: float, beta: float, spec: QuadSpec) -> float:
    two_over_mu = 2.0 / mu
    log_alpha = math.log(alpha)

    def integrand(t: float) -> float:
        if t <= 0.0:
            return 1.0
        x = t * _LN2
        # log(2^t - 1), safe for every t
        log_pow = x if x > 40.0 else math.log(math.expm1(x))
        z = two_over_mu * (log_pow - log_alpha)
        if z > 700.0:
            return 0.0
        return 1.0 / (1.0 + beta * math.exp(z))

    return integrate(integrand, 0.0, math.inf, spec).value


def avg_rate_lb_nfd(alpha: float, mu: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Non-fading rate lower bound (integral of the CDF upper bound's CCDF)."""
    _check_mu(mu)
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    return _rate_lb(alpha, mu, beta_nfd(mu), spec)


def avg_rate_lb_fd(alpha: float, mu: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Rayleigh-fading rate lower bound; same form with beta_fd < beta_nfd."""
    _check_mu(mu)
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    return _rate_lb(alpha, mu, beta_fd(mu), spec)


# ---------------------------------------------------------------------------
# outage rate bounds
# ---------------------------------------------------------------------------

def outage_ub_nfd(alpha: float, eta: float, mu: float) -> float:
    """Outage-rate upper bound: the target rate itself up to eta = alpha,
    then decaying as (alpha/eta)^(2/mu)."""
    _check_mu(mu)
    rate = math.log2(1.0 + eta)
    if eta <= alpha:
        return rate
    return rate * (alpha / eta) ** (2.0 / mu)


def outage_lb_nfd(alpha: float, eta: float, mu: float) -> float:
    """Outage-rate lower bound log2(1+eta) / (1 + beta_nfd*(eta/alpha)^(2/mu))."""
    return math.log2(1.0 + eta) / (1.0 + beta_nfd(mu) * (eta / alpha) ** (2.0 / mu))


def outage_bounds_nfd(params: RateParams, mu: float) -> Tuple[float, float]:
    """(lower, upper) outage-rate bounds for the non-fading network."""
    return (
        outage_lb_nfd(params.alpha, params.eta, mu),
        outage_ub_nfd(params.alpha, params.eta, mu),
    )


def outage_lb_fd(params: RateParams, mu: float) -> float:
    """Rayleigh-fading outage-rate lower bound (beta_fd in place of beta_nfd)."""
    return math.log2(1.0 + params.eta) / (
        1.0 + beta_fd(mu) * (params.eta / params.alpha) ** (2.0 / mu)
    )


def outage_capacity_numeric(
    alpha: float, mu: float, bound_kind: CurveKind
) -> Tuple[float, float]:
    """Maximize the chosen outage-rate bound over the target SINR eta.

    Golden-section search on log(eta) over [1e-3*alpha, 1e3*alpha] to
    1e-6 relative accuracy in eta. Returns (eta_star, value). Raises
    DegenerateObjectiveError when the objective is flat over the bracket.
    """
    _check_mu(mu)
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if bound_kind is CurveKind.UB:
        f = lambda eta: outage_ub_nfd(alpha, eta, mu)
    elif bound_kind is CurveKind.LB:
        f = lambda eta: outage_lb_nfd(alpha, eta, mu)
    else:
        raise ValueError("bound_kind must be CurveKind.LB or CurveKind.UB")

    lo, hi = math.log(1e-3 * alpha), math.log(1e3 * alpha)
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(math.exp(c)), f(math.exp(d))
    f_lo, f_hi = f(math.exp(lo)), f(math.exp(hi))
    while b - a > 1e-6:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(math.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(math.exp(d))
    eta_star = math.exp(0.5 * (a + b))
    value = f(eta_star)
    spread = max(value, f_lo, f_hi) - min(value, f_lo, f_hi)
    if spread <= 1e-12 * max(abs(value), 1e-300):
        raise DegenerateObjectiveError("outage objective is flat over the bracket")
    return eta_star, value


# ---------------------------------------------------------------------------
# Rayleigh-fading SIR CDF: exact noise-free form and bounds
# ---------------------------------------------------------------------------

def fading_cdf_exact(q: float, mu: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Exact noise-free fading SIR CDF 1 - 1/(1 + q^(2/mu)*rho(q^(-2/mu), mu/2))."""
    _check_mu(mu)
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    if q == 0.0:
        return 0.0
    e = 2.0 / mu
    return 1.0 - 1.0 / (1.0 + q**e * rho(q**-e, mu / 2.0, spec))


def fading_cdf_lb(q: float, mu: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Fading CDF lower bound: dominant-interferer void probability averaged
    over the desired link's exponential power by quadrature."""
    _check_mu(mu)
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    if q == 0.0:
        return 0.0
    e = 2.0 / mu
    coef = 2.0 * q**e / mu

    def integrand(t: float) -> float:
        # t is the desired |h|^2 ~ Exp(1); t^(1/mu) = |h|^(2/mu)
        g = upper_inc_gamma(e, t / q)
        return math.exp(-t) / (1.0 + coef * g / t ** (1.0 / mu))

    return 1.0 - integrate(integrand, 0.0, math.inf, spec).value


def fading_cdf_ub(q: float, mu: float) -> float:
    """Fading CDF upper bound 1 - 1/(1 + beta_fd * q^(2/mu))."""
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    return 1.0 - 1.0 / (1.0 + beta_fd(mu) * q ** (2.0 / mu))


# ---------------------------------------------------------------------------
# partial fading
# ---------------------------------------------------------------------------

def pfd_cdf_lb(q: float, mu: float) -> float:
    """Partial-fading CDF lower bound 1 - 1/(1 + (2 q^(2/mu)/mu) Gamma(2/mu, 1/q))."""
    _check_mu(mu)
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    if q == 0.0:
        return 0.0
    e = 2.0 / mu
    return 1.0 - 1.0 / (1.0 + (2.0 * q**e / mu) * upper_inc_gamma(e, 1.0 / q))
