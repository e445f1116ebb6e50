"""Special functions and quadrature used by the exact-law machinery.

Provides validated wrappers around the classical Gamma-family functions, a
numerical Barnes double Gamma function ``G(z, tau)``, and an adaptive
quadrature helper for the semi-infinite integrals that appear in Mellin
transforms of Beta products.

The double Gamma function is the upper-triangular analogue of the Gamma
function: it is the unique (suitably regular) solution of

    G(z + 1, tau) = Gamma(z / tau) * G(z, tau),      G(1, tau) = 1,

for ``z, tau > 0``.  It is evaluated here by a convergent Lerch-style series
with Euler-Maclaurin tail acceleration; the two anchor constants of the
series are pinned so that the concatenation identity above holds exactly at
z = 1, 2, and therefore (by telescoping) everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy import integrate as _sp_integrate
from scipy import special as _sp

__all__ = [
    "DomainError",
    "AccuracyError",
    "QuadratureSpec",
    "QuadratureResult",
    "log_gamma",
    "log_gamma_complex",
    "digamma",
    "trigamma",
    "polygamma",
    "log_double_gamma",
    "integrate",
]

ArrayLike = Union[float, np.ndarray]


class DomainError(ValueError):
    """Raised when an argument lies outside a function's mathematical domain."""


class AccuracyError(RuntimeError):
    """Raised when a numerical routine cannot meet its accuracy target.

    Attributes
    ----------
    estimate : float
        Best available estimate of the requested quantity.
    error_bound : float
        Estimated bound on the absolute error of ``estimate``.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (estimate={estimate!r}, error_bound={error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    """Configuration for :func:`integrate`.

    Parameters
    ----------
    abs_tol, rel_tol : float
        Target absolute/relative tolerances passed to the adaptive
        Gauss-Kronrod scheme.
    max_subdivisions : int
        Subdivision budget for the adaptive scheme.
    tail_rate : float
        Exponential decay-rate hint for semi-infinite domains.  The domain
        ``[a, inf)`` is mapped to ``(0, 1]`` by ``t = a - log(u)/tail_rate``;
        any value no larger than the integrand's true decay rate keeps the
        substituted integrand bounded.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    tail_rate: float = 1.0

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")
        if not (self.tail_rate > 0 and math.isfinite(self.tail_rate)):
            raise DomainError("tail_rate must be a positive finite number")


@dataclass(frozen=True)
class QuadratureResult:
    """Value and achieved-error report of a quadrature."""

    value: float
    error_bound: float

    def __float__(self) -> float:  # allow float(integrate(...))
        return self.value


def _validate_positive(x: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {x!r}")
    if np.any(arr <= 0.0):
        raise DomainError(f"{name} must be positive, got {x!r}")
    return arr


def log_gamma(x: ArrayLike) -> ArrayLike:
    """Natural log of the Gamma function for positive real arguments."""
    arr = _validate_positive(x, "log_gamma argument")
    out = _sp.gammaln(arr)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def log_gamma_complex(z: complex | np.ndarray) -> complex | np.ndarray:
    """Principal branch of log Gamma for complex arguments (Re z > 0 here).

    Used for Mellin transforms evaluated on vertical contours.
    """
    z_arr = np.asarray(z, dtype=complex)
    if np.any(z_arr.real <= 0.0):
        raise DomainError("log_gamma_complex requires Re z > 0")
    out = _sp.loggamma(z_arr)
    return complex(out) if np.ndim(z) == 0 else out


def digamma(x: ArrayLike) -> ArrayLike:
    """Digamma (logarithmic derivative of Gamma) for positive real arguments."""
    arr = _validate_positive(x, "digamma argument")
    out = _sp.psi(arr)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def trigamma(x: ArrayLike) -> ArrayLike:
    """Trigamma function for positive real arguments."""
    arr = _validate_positive(x, "trigamma argument")
    out = _sp.polygamma(1, arr)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def polygamma(n: int, x: ArrayLike) -> ArrayLike:
    """Polygamma function of order ``n >= 0`` for positive real arguments."""
    if n < 0:
        raise DomainError("polygamma order must be non-negative")
    arr = _validate_positive(x, "polygamma argument")
    out = _sp.polygamma(n, arr)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


# ---------------------------------------------------------------------------
# Barnes double Gamma
# ---------------------------------------------------------------------------

def _lgamma_antiderivative(u: np.ndarray) -> np.ndarray:
    """Antiderivative of log Gamma from its Stirling expansion (u >> 1).

    Valid up to an additive constant (which cancels in differences); the
    truncation error of the expansion is O(u^-6).
    """
    lu = np.log(u)
    return (
        (0.5 * u * u - 0.5 * u + 1.0 / 12.0) * lu
        - 0.75 * u * u
        + 0.5 * u
        + 0.5 * u * math.log(2.0 * math.pi)
        + 1.0 / (720.0 * u * u)
        - 1.0 / (5040.0 * u ** 4)
    )


def _dgamma_series_sum(z: float, tau: float) -> float:
    """The corrected series S(z) entering the double Gamma evaluation.

    S(z) = sum_{k>=0} [ lgamma((z+k)/tau) - lgamma((1+k)/tau)
                        - (z-1)/tau * psi((1+k)/tau)
                        - (z-1)^2/(2 tau^2) * psi'((1+k)/tau) ],

    summed exactly for k < K and by Euler-Maclaurin beyond, with K chosen so
    the asymptotic pieces are deep in their Stirling regime.
    """
    dz = z - 1.0
    K = int(max(64.0, math.ceil(40.0 * tau), math.ceil(8.0 * abs(dz)), math.ceil(4.0 * z)))

    k = np.arange(K, dtype=float)
    xk = (1.0 + k) / tau
    head = np.sum(
        _sp.gammaln((z + k) / tau)
        - _sp.gammaln(xk)
        - (dz / tau) * _sp.psi(xk)
        - (dz * dz / (2.0 * tau * tau)) * _sp.polygamma(1, xk)
    )

    # Euler-Maclaurin tail: integral + g(K)/2 - g'(K)/12 + g'''(K)/720.
    xK = (1.0 + K) / tau
    zK = (z + K) / tau
    integral = (
        -tau * (_lgamma_antiderivative(np.asarray(zK)) - _lgamma_antiderivative(np.asarray(xK)))
        + dz * _sp.gammaln(xK)
        + (dz * dz / (2.0 * tau)) * _sp.psi(xK)
    )

    def g_derivs(kk: float) -> tuple[float, float, float]:
        xa = (z + kk) / tau
        xb = (1.0 + kk) / tau
        g0 = (
            _sp.gammaln(xa)
            - _sp.gammaln(xb)
            - (dz / tau) * _sp.psi(xb)
            - (dz * dz / (2.0 * tau * tau)) * _sp.polygamma(1, xb)
        )
        g1 = (
            (_sp.psi(xa) - _sp.psi(xb)) / tau
            - (dz / tau ** 2) * _sp.polygamma(1, xb)
            - (dz * dz / (2.0 * tau ** 3)) * _sp.polygamma(2, xb)
        )
        g3 = (
            (_sp.polygamma(2, xa) - _sp.polygamma(2, xb)) / tau ** 3
            - (dz / tau ** 4) * _sp.polygamma(3, xb)
            - (dz * dz / (2.0 * tau ** 5)) * _sp.polygamma(4, xb)
        )
        return float(g0), float(g1), float(g3)

    g0, g1, g3 = g_derivs(float(K))
    tail = float(integral) + 0.5 * g0 - g1 / 12.0 + g3 / 720.0
    return float(head) + tail


@lru_cache(maxsize=256)
def _dgamma_anchors(tau: float) -> tuple[float, float]:
    """Constants (A, B) pinning the series so the concatenation holds exactly.

    Solved from log G(2) = lgamma(1/tau) and log G(3) = lgamma(1/tau) +
    lgamma(2/tau) with log G(z) = -S(z) + A (z-1) + B (z-1)^2 / 2.
    """
    s2 = _dgamma_series_sum(2.0, tau)
    s3 = _dgamma_series_sum(3.0, tau)
    lg1 = float(_sp.gammaln(1.0 / tau))
    lg2 = float(_sp.gammaln(2.0 / tau))
    b = lg2 - lg1 + s3 - 2.0 * s2
    a = lg1 + s2 - 0.5 * b
    return a, b


def log_double_gamma(z: float, tau: float) -> float:
    """Natural log of the Barnes double Gamma function G(z, tau).

    Satisfies ``log G(z+1, tau) = log_gamma(z / tau) + log G(z, tau)`` and
    ``G(1, tau) = 1``.  Arguments must be positive; ``z`` may be any positive
    real (large arguments are reduced into a reference band with the
    concatenation identity before the series is evaluated).
    """
    if not (math.isfinite(z) and z > 0.0):
        raise DomainError(f"log_double_gamma requires z > 0, got {z!r}")
    if not (math.isfinite(tau) and tau > 0.0):
        raise DomainError(f"log_double_gamma requires tau > 0, got {tau!r}")

    # Reduce z into (1, 2] by concatenation so the series length stays small.
    shift = 0.0
    z0 = z
    if z0 > 2.0:
        m = int(math.ceil(z0 - 2.0))
        j = np.arange(m, dtype=float)
        z0 = z0 - m
        shift = float(np.sum(_sp.gammaln((z0 + j) / tau)))

    a, b = _dgamma_anchors(tau)
    dz = z0 - 1.0
    return -_dgamma_series_sum(z0, tau) + a * dz + 0.5 * b * dz * dz + shift


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def integrate(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    spec: QuadratureSpec | None = None,
) -> QuadratureResult:
    """Adaptive quadrature of ``f`` on ``[lower, upper]``.

    ``upper`` may be ``inf``; in that case the domain is mapped to ``(0, 1]``
    with the exponential substitution ``t = lower - log(u) / tail_rate`` so
    the adaptive scheme sees a finite interval.  Raises
    :class:`AccuracyError` (carrying the best estimate and the reported
    bound) if the scheme cannot meet the requested tolerance within its
    subdivision budget.
    """
    spec = spec or QuadratureSpec()
    if not math.isfinite(lower):
        raise DomainError("lower integration limit must be finite")
    if upper <= lower:
        raise DomainError("upper integration limit must exceed lower limit")

    if math.isinf(upper):
        rate = spec.tail_rate

        def substituted(u: float) -> float:
            t = lower - math.log(u) / rate
            return f(t) / (rate * u)

        target, lo, hi = substituted, 0.0, 1.0
    else:
        target, lo, hi = f, lower, upper

    with np.errstate(over="ignore", invalid="ignore"):
        value, err_bound, info, *rest = _sp_integrate.quad(
            target,
            lo,
            hi,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=True,
        )
    if rest:  # quad appended a warning message: convergence not certified
        raise AccuracyError(
            f"quadrature did not converge: {rest[0]}", estimate=value, error_bound=err_bound
        )
    tolerance = max(spec.abs_tol, spec.rel_tol * abs(value))
    if err_bound > max(tolerance, 1e2 * spec.abs_tol):
        raise AccuracyError(
            "quadrature error bound exceeds tolerance", estimate=value, error_bound=err_bound
        )
    return QuadratureResult(value=float(value), error_bound=float(err_bound))
