"""Parameterisation and exact samplers for the stable-process building blocks.

The process convention used throughout the package: ``L`` is strictly
alpha-stable, started at 1, normalised so that its characteristic exponent is

    Psi(lam) = i lam - (i lam)^alpha * exp(-i pi alpha rho sign(lam)),

where ``rho = P[L_1 - L_0 >= 0]`` is the positivity parameter.  Under this
normalisation

* ``alpha = 2`` is Brownian motion with variance ``2 t`` (``rho = 1/2``),
* ``alpha = 1`` is a Cauchy process with drift ``-cos(pi rho)`` and scale
  ``sin(pi rho)`` per unit time (pure drift ``-t`` when ``rho = 0``),
* ``alpha < 1, rho = 1`` is the unit subordinator with Laplace exponent
  ``lam^alpha``.

The admissible positivity range is ``rho in [0, 1]`` for ``alpha < 1``,
``rho in [0, 1)`` for ``alpha = 1``, ``rho in [1 - 1/alpha, 1/alpha]`` for
``alpha in (1, 2)`` and ``rho = 1/2`` for ``alpha = 2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import DomainError

__all__ = [
    "ProcessClass",
    "RngStream",
    "StableParams",
    "sample_stable_increment",
    "sample_beta",
    "sample_gamma",
    "sample_exponential",
    "sample_uniform",
    "sample_positive_stable",
    "sample_mittag_leffler",
    "sample_mu_cauchy",
    "mu_cauchy_cdf",
]

_RHO_TOL = 1e-12


class ProcessClass(enum.Enum):
    """Exhaustive classification of the admissible (alpha, rho) pairs."""

    BROWNIAN = "brownian"
    SPECTRALLY_POSITIVE = "spectrally_positive"
    SPECTRALLY_NEGATIVE = "spectrally_negative"
    NEGATIVE_JUMPS_GENERAL = "negative_jumps_general"
    SUBORDINATOR = "subordinator"
    DRIFT_ONLY = "drift_only"


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream: one (seed, stream) pair per independent use.

    Distinct ``stream`` indices under the same seed yield statistically
    independent generators (PCG64 seeded through a spawn-keyed SeedSequence),
    and identical pairs reproduce identical draws.
    """

    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        if self.seed < 0 or self.stream < 0:
            raise DomainError("seed and stream must be non-negative integers")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def substream(self, index: int) -> "RngStream":
        """A derived independent stream (stable indexing, no state sharing)."""
        return RngStream(seed=self.seed, stream=self.stream * 1_000_003 + 1 + index)


@dataclass(frozen=True)
class StableParams:
    """Admissible (alpha, rho) pair for the strictly stable process."""

    alpha: float
    rho: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "rho", float(self.rho))
        a, r = self.alpha, self.rho
        if not (math.isfinite(a) and 0.0 < a <= 2.0):
            raise DomainError(f"alpha must lie in (0, 2], got {a!r}")
        if not math.isfinite(r):
            raise DomainError(f"rho must be finite, got {r!r}")
        if a == 2.0:
            if abs(r - 0.5) > _RHO_TOL:
                raise DomainError("alpha = 2 requires rho = 1/2")
        elif a == 1.0:
            if not (0.0 <= r < 1.0):
                raise DomainError("alpha = 1 requires rho in [0, 1)")
        elif a > 1.0:
            lo, hi = 1.0 - 1.0 / a, 1.0 / a
            if not (lo - _RHO_TOL <= r <= hi + _RHO_TOL):
                raise DomainError(
                    f"alpha in (1,2) requires rho in [1-1/alpha, 1/alpha] = [{lo}, {hi}], got {r!r}"
                )
        else:
            if not (0.0 <= r <= 1.0):
                raise DomainError("alpha < 1 requires rho in [0, 1]")

    @property
    def rho_hat(self) -> float:
        """Negativity parameter ``1 - rho``."""
        return 1.0 - self.rho

    @property
    def kappa(self) -> float:
        """Scale constant ``cos(pi alpha (rho - 1/2))`` of the exponent."""
        return math.cos(math.pi * self.alpha * (self.rho - 0.5))

    @property
    def skewness(self) -> float:
        """Classical skewness ``beta`` solving the positivity relation
        ``rho = 1/2 + arctan(beta tan(pi alpha/2)) / (pi alpha)`` (alpha != 1, 2)."""
        if self.alpha == 2.0:
            return 0.0
        if self.alpha == 1.0:
            raise DomainError("skewness parameterisation is singular at alpha = 1")
        return math.tan(math.pi * self.alpha * (self.rho - 0.5)) / math.tan(
            math.pi * self.alpha / 2.0
        )

    def classify(self) -> ProcessClass:
        a, r = self.alpha, self.rho
        if a == 2.0:
            return ProcessClass.BROWNIAN
        if a == 1.0 and r == 0.0:
            return ProcessClass.DRIFT_ONLY
        if a < 1.0 and r == 1.0:
            return ProcessClass.SUBORDINATOR
        if a > 1.0 and abs(r - (1.0 - 1.0 / a)) <= _RHO_TOL:
            return ProcessClass.SPECTRALLY_POSITIVE
        if (a > 1.0 and abs(r - 1.0 / a) <= _RHO_TOL) or (a < 1.0 and r == 0.0):
            return ProcessClass.SPECTRALLY_NEGATIVE
        return ProcessClass.NEGATIVE_JUMPS_GENERAL

    @property
    def has_negative_jumps(self) -> bool:
        return self.classify() in (
            ProcessClass.SPECTRALLY_NEGATIVE,
            ProcessClass.NEGATIVE_JUMPS_GENERAL,
        )


def _uniforms_open(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1)."""
    u = rng.random(size)
    return np.clip(u, 1e-16, 1.0 - 1e-16)


def sample_stable_increment(
    params: StableParams, h: float, rng: np.random.Generator, size: int = 1
) -> np.ndarray:
    """Exact increments of ``L`` over a time step ``h``.

    Chambers-Mallows-Stuck representation, specialised to the positivity
    normalisation: with ``V`` uniform on (-pi/2, pi/2), ``W`` unit
    exponential and ``B = pi (rho - 1/2)``,

        increment = h^{1/alpha} * sin(alpha (V+B)) * cos(V)^{-1/alpha}
                    * (cos(V - alpha (V+B)) / W)^{(1-alpha)/alpha},

    which reduces to a N(0, 2h) draw at alpha = 2, to a Cauchy with drift
    ``-h cos(pi rho)`` and scale ``h sin(pi rho)`` at alpha = 1, and to
    Kanter's representation of the unit subordinator at ``rho = 1``.
    """
    if not (h > 0.0 and math.isfinite(h)):
        raise DomainError(f"step h must be positive and finite, got {h!r}")
    a, r = params.alpha, params.rho

    if a == 2.0:
        return rng.normal(0.0, math.sqrt(2.0 * h), size)

    if a == 1.0:
        if r == 0.0:
            return np.full(size, -h)
        u = _uniforms_open(rng, size)
        cauchy = np.tan(math.pi * (u - 0.5))
        return -h * math.cos(math.pi * r) + h * math.sin(math.pi * r) * cauchy

    v = math.pi * (_uniforms_open(rng, size) - 0.5)
    w = rng.standard_exponential(size) + 1e-300
    b = math.pi * (r - 0.5)
    av = a * (v + b)
    z = (
        np.sin(av)
        * np.cos(v) ** (-1.0 / a)
        * (np.cos(v - av) / w) ** ((1.0 - a) / a)
    )
    return h ** (1.0 / a) * z


def sample_beta(a: float, b: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Beta(a, b) draws, a > 0, with the degenerate convention B_{a,0} = 1."""
    if a <= 0.0:
        raise DomainError(f"Beta shape a must be positive, got {a!r}")
    if b < 0.0:
        raise DomainError(f"Beta shape b must be non-negative, got {b!r}")
    if b == 0.0:
        return np.ones(size)
    return rng.beta(a, b, size)


def sample_gamma(a: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Gamma(a, 1) draws, a > 0."""
    if a <= 0.0:
        raise DomainError(f"Gamma shape must be positive, got {a!r}")
    return rng.gamma(a, 1.0, size)


def sample_exponential(rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Unit-mean exponential draws."""
    return rng.standard_exponential(size)


def sample_uniform(rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Uniform(0, 1) draws."""
    return rng.random(size)


def sample_positive_stable(mu: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Positive stable draws ``Z`` with Laplace transform ``exp(-lam^mu)``, mu in (0,1).

    Kanter's representation:
        Z = (a(U) / W)^{(1-mu)/mu},
        a(u) = [sin(mu pi u)^mu sin((1-mu) pi u)^{1-mu} / sin(pi u)]^{1/(1-mu)}.
    """
    if not (0.0 < mu < 1.0):
        raise DomainError(f"positive-stable index must lie in (0, 1), got {mu!r}")
    u = math.pi * _uniforms_open(rng, size)
    w = rng.standard_exponential(size) + 1e-300
    log_a = (
        mu * np.log(np.sin(mu * u)) + (1.0 - mu) * np.log(np.sin((1.0 - mu) * u)) - np.log(np.sin(u))
    ) / (1.0 - mu)
    return np.exp(((1.0 - mu) / mu) * (log_a - np.log(w)))


def sample_mittag_leffler(alpha: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Mittag-Leffler draws ``M = Z^{-alpha}`` with moments
    ``E[M^s] = Gamma(1+s) / Gamma(1+alpha s)``, alpha in (0, 1)."""
    return sample_positive_stable(alpha, rng, size) ** (-alpha)


def sample_mu_cauchy(mu: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Draws from the positive Cauchy family with density
    ``sin(pi mu) / (pi mu (x^2 + 2 cos(pi mu) x + 1))`` on (0, inf), mu in (0, 1).

    Analytic inverse CDF: ``x = sin(pi mu) cot(pi mu (1 - u)) - cos(pi mu)``.
    """
    if not (0.0 < mu < 1.0):
        raise DomainError(f"mu-Cauchy index must lie in (0, 1), got {mu!r}")
    u = _uniforms_open(rng, size)
    return math.sin(math.pi * mu) / np.tan(math.pi * mu * (1.0 - u)) - math.cos(math.pi * mu)


def mu_cauchy_cdf(mu: float, x: np.ndarray) -> np.ndarray:
    """CDF of the positive Cauchy family above (used by verification tests)."""
    if not (0.0 < mu < 1.0):
        raise DomainError(f"mu-Cauchy index must lie in (0, 1), got {mu!r}")
    x = np.asarray(x, dtype=float)
    c, s = math.cos(math.pi * mu), math.sin(math.pi * mu)
    out = (np.arctan((x + c) / s) - (math.pi / 2.0 - math.pi * mu)) / (math.pi * mu)
    return np.where(x <= 0.0, 0.0, np.clip(out, 0.0, 1.0))
