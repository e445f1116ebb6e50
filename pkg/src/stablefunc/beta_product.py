"""The mean-one infinite Beta product and its Mellin transform.

For parameters ``a, c >= 0`` and ``b > 0`` define

    T(a, b, c) = prod_{n >= 0} a_n * B_{a + n b, c},
    a_n = (a + n b + c) / (a + n b),

with independent Beta factors.  Conventions: ``T(a, b, 0) = 1`` (empty
product), ``T(0, b, c) = 0`` for ``c > 0``, ``B_{a, 0} = 1``, ``B_{0, c}``
= 0.  The product converges a.s.; the ``a_n`` normalisers make ``E[T] = 1``.

Two independent Mellin routes are provided:

* :func:`mellin_T` — exponential-integral representation: the unnormalised
  version obtained with normalisers ``exp(psi(a+nb+c) - psi(a+nb))``
  (making ``E[log] = 0``) has

      E[T~^s] = exp( integral_0^inf (e^{-s t} - 1 + s t)
                      e^{-a t}(1 - e^{-c t})
                      / ( t (1 - e^{-t}) (1 - e^{-b t}) ) dt ),   s > -a,

  and ``E[T^s] = E[T~^s] * E[T~]^{-s}``.

* :func:`mellin_T_via_double_gamma` — Barnes double Gamma closed form

      E[T^s] = (Gamma(a/b) / Gamma((a+c)/b))^s
               * G(a+c+s, b) G(a, b) / ( G(a+s, b) G(a+c, b) ).

The two routes agreeing on random parameter tuples is one of the package's
primary verification criteria.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import integrate as _sp_integrate
from scipy import special as _sp

from .specfun import AccuracyError, DomainError, QuadratureSpec, integrate, log_double_gamma

__all__ = [
    "BetaProductParams",
    "sample_T",
    "mellin_T",
    "mellin_T_via_double_gamma",
    "log_moments_T",
    "truncation_index",
    "sd_criterion",
    "identity_catalog",
]


@dataclass(frozen=True)
class BetaProductParams:
    """Parameters (a, b, c) of the Beta product; a, c >= 0 and b > 0."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        # Coerce eagerly so integer inputs cannot leak arbitrary-precision
        # arithmetic into the series accelerations downstream.
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (math.isfinite(self.a) and self.a >= 0.0):
            raise DomainError(f"a must be >= 0, got {self.a!r}")
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise DomainError(f"b must be > 0, got {self.b!r}")
        if not (math.isfinite(self.c) and self.c >= 0.0):
            raise DomainError(f"c must be >= 0, got {self.c!r}")

    @property
    def is_one(self) -> bool:
        """True when the product degenerates to the constant 1 (c = 0)."""
        return self.c == 0.0

    @property
    def is_zero(self) -> bool:
        """True when the product degenerates to the constant 0 (a = 0, c > 0)."""
        return self.a == 0.0 and self.c > 0.0


# ---------------------------------------------------------------------------
# log-moment series: per-factor means/variances and accelerated tail sums
# ---------------------------------------------------------------------------

def _factor_log_mean(x: np.ndarray, c: float) -> np.ndarray:
    """E[log(a_n B_n)] for a factor with Beta shape (x, c); always <= 0."""
    return (np.log(x + c) - np.log(x)) - (_sp.psi(x + c) - _sp.psi(x))


def _factor_log_var(x: np.ndarray, c: float) -> np.ndarray:
    """Var[log B_{x, c}] = psi'(x) - psi'(x + c)."""
    return _sp.polygamma(1, x) - _sp.polygamma(1, x + c)


def _mean_antiderivative(x: float, c: float) -> float:
    """Antiderivative of the factor log-mean in the shape variable."""
    return float(
        (x + c) * math.log(x + c) - x * math.log(x) - _sp.gammaln(x + c) + _sp.gammaln(x)
    )


def _tail_sums(params: BetaProductParams, start: int) -> tuple[float, float]:
    """(sum of log-means, sum of log-variances) over factors n >= start.

    Explicit vectorised block plus an Euler-Maclaurin remainder once the
    shapes are deep in the asymptotic regime.
    """
    a, b, c = params.a, params.b, params.c
    if c == 0.0:
        return 0.0, 0.0
    x0 = a + start * b
    # Explicit block until the shape is comfortably large for Euler-Maclaurin.
    x_target = 64.0 + 4.0 * c + 64.0 * b
    count = int(min(2_000_000, max(512, math.ceil((x_target - x0) / b) + 1)))
    n = np.arange(count, dtype=float)
    x = x0 + n * b
    mean_block = float(np.sum(_factor_log_mean(x, c)))
    var_block = float(np.sum(_factor_log_var(x, c)))

    xe = x0 + count * b  # first index beyond the explicit block
    # integral terms
    mean_int = (c - _mean_antiderivative(xe, c)) / b
    var_int = float(_sp.psi(xe + c) - _sp.psi(xe)) / b
    # f(N)/2 - f'(N)/12 corrections (f in the index variable n, so f' = b * d/dx)
    m0 = float(_factor_log_mean(np.asarray(xe), c))
    v0 = float(_factor_log_var(np.asarray(xe), c))
    m1 = b * float(1.0 / (xe + c) - 1.0 / xe - _sp.polygamma(1, xe + c) + _sp.polygamma(1, xe))
    v1 = b * float(_sp.polygamma(2, xe) - _sp.polygamma(2, xe + c))
    mean_tail = mean_int + 0.5 * m0 - m1 / 12.0
    var_tail = var_int + 0.5 * v0 - v1 / 12.0
    return mean_block + mean_tail, var_block + var_tail


@lru_cache(maxsize=512)
def _tail_sums_cached(params: BetaProductParams, start: int) -> tuple[float, float]:
    return _tail_sums(params, start)


def truncation_index(params: BetaProductParams, log_tol: float) -> int:
    """Smallest N with tail log-variance sum_{n >= N} Var[log B_n] <= log_tol^2."""
    if not (log_tol > 0.0):
        raise DomainError("log_tol must be positive")
    if params.is_one or params.is_zero:
        return 0
    target = log_tol * log_tol

    def tail_var(n: int) -> float:
        return _tail_sums_cached(params, n)[1]

    if tail_var(0) <= target:
        return 0
    # Asymptotically the tail variance is ~ c / (b * (a + N b)), so invert that
    # for an upper bracket, then binary-search the exact smallest index.
    a, b, c = params.a, params.b, params.c
    hi = int(max(4, math.ceil((c / (b * target) - a) / b) * 2 + 4))
    while tail_var(hi) > target:
        hi *= 2
        if hi > 1 << 48:  # pragma: no cover - unreachable for valid params
            raise AccuracyError("tail variance does not decay", 0.0, float("inf"))
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_var(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def log_moments_T(params: BetaProductParams) -> tuple[float, float]:
    """(mean, variance) of log T(a, b, c), by accelerated series summation."""
    if params.is_zero:
        raise DomainError("log moments undefined for the degenerate zero law")
    if params.is_one:
        return 0.0, 0.0
    return _tail_sums_cached(params, 0)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _exact_cap(b: float) -> int:
    """Number of Beta factors sampled exactly before the lognormal tail.

    Scaled with 1/b so the smallest exactly-sampled shape a + M b is large
    enough that the remaining tail (a sum of thousands of tiny independent
    log-Beta terms) is Gaussian to well below every statistical tolerance.
    """
    return int(max(256, min(16384, math.ceil(256.0 / b))))


@lru_cache(maxsize=256)
def _sampling_plan(
    params: BetaProductParams, log_tol: float
) -> tuple[int, bool, float, float]:
    """(n_exact, use_gaussian_tail, tail_mean, tail_std) for sample_T."""
    n_spec = truncation_index(params, log_tol)
    cap = _exact_cap(params.b)
    if n_spec <= cap:
        return n_spec, False, 0.0, 0.0
    mean_tail, var_tail = _tail_sums_cached(params, cap)
    return cap, True, mean_tail, math.sqrt(max(var_tail, 0.0))


def sample_T(
    params: BetaProductParams,
    log_tol: float,
    rng: np.random.Generator,
    size: Union[int, None] = None,
) -> Union[float, np.ndarray]:
    """Draws of T(a, b, c); a single float when ``size`` is None, else an array.

    The product is truncated at the smallest index where the remaining
    factors' log-variance drops below ``log_tol**2`` and the discarded
    mean-one tail is replaced by 1.  When that index is impractically large
    (small ``b`` or slowly decaying variance), the factors beyond an exact
    block are replaced by a single lognormal with the tail's exact log-mean
    and log-variance instead, which is strictly more accurate than dropping
    them.
    """
    n = 1 if size is None else int(size)
    if n < 0:
        raise DomainError("sample count must be non-negative")
    if params.is_one:
        return 1.0 if size is None else np.ones(n)
    if params.is_zero:
        return 0.0 if size is None else np.zeros(n)

    m, gaussian_tail, tail_mean, tail_std = _sampling_plan(params, float(log_tol))
    a, b, c = params.a, params.b, params.c

    out = np.zeros(n)
    if m > 0:
        x = a + b * np.arange(m, dtype=float)
        log_norm = float(np.sum(np.log1p(c / x)))  # sum of log a_n
        chunk = max(1, 2_000_000 // m)
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            betas = rng.beta(x, c, size=(hi - lo, m))
            np.clip(betas, 1e-308, 1.0, out=betas)
            out[lo:hi] = np.sum(np.log(betas), axis=1) + log_norm
    if gaussian_tail:
        out += rng.normal(tail_mean, tail_std, size=n)
    result = np.exp(out)
    return float(result[0]) if size is None else result


# ---------------------------------------------------------------------------
# Mellin transforms
# ---------------------------------------------------------------------------

def _mellin_integrand(t: np.ndarray, s: complex, a: float, b: float, c: float):
    """Integrand of log E[T~^s]; finite limit c s^2 / (2 b) at t = 0.

    The factor e^{-a t} is distributed into the bracket,
    (e^{-st} - 1 + st) e^{-at} = e^{-(s+a)t} + (st - 1) e^{-at},
    so that every term decays for Re s > -a and no inf * 0 arises at large t
    near the strip boundary.
    """
    one_m_et = -np.expm1(-t)
    one_m_ebt = -np.expm1(-b * t)
    one_m_ect = -np.expm1(-c * t)
    x = s * t
    if abs(x) < 0.01:
        # series for e^{-x} - 1 + x = x^2/2 (1 - x/3 + x^2/12 - ...), which
        # avoids the catastrophic cancellation of the direct difference
        g = 1.0 + x * (-1.0 / 3.0 + x * (1.0 / 12.0 + x * (-1.0 / 60.0 + x * (1.0 / 360.0 - x / 2520.0))))
        bracket = 0.5 * x * x * g * np.exp(-a * t)
    else:
        bracket = np.exp(-(s + a) * t) + (x - 1.0) * np.exp(-a * t)
    num = bracket * one_m_ect
    return num / (t * one_m_et * one_m_ebt)


def _log_mellin_unnormalised(params: BetaProductParams, s: complex) -> complex:
    """log E[T~^s] by adaptive quadrature with exponential tail substitution."""
    a, b, c = params.a, params.b, params.c
    decay = a + min(s.real, 0.0)  # integrand decays like e^{-decay * t}
    scale = max(1.0, decay / 2.0, a / 8.0)
    rate = decay / scale  # O(1) decay after rescaling t = y / scale

    is_complex = abs(s.imag) > 0.0

    def f(y: float):
        t = y / scale
        if t == 0.0:
            return c * s * s / (2.0 * b) / scale
        return _mellin_integrand(t, s, a, b, c) / scale

    if not is_complex:
        res = integrate(
            lambda y: float(np.real(f(y))),
            0.0,
            np.inf,
            QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11, tail_rate=rate / 2.0, max_subdivisions=400),
        )
        return complex(res.value, 0.0)

    # complex s: integrate real and imaginary parts on the substituted domain
    def sub(u: float, part) -> float:
        y = -math.log(u) / (rate / 2.0)
        return part(f(y)) / ((rate / 2.0) * u)

    re, re_err = _sp_integrate.quad(
        sub, 0.0, 1.0, args=(np.real,), epsabs=1e-13, epsrel=1e-11, limit=400
    )
    im, im_err = _sp_integrate.quad(
        sub, 0.0, 1.0, args=(np.imag,), epsabs=1e-13, epsrel=1e-11, limit=400
    )
    if max(re_err, im_err) > 1e-7 * max(1.0, abs(complex(re, im))):
        raise AccuracyError(
            "complex Mellin quadrature did not converge", estimate=re, error_bound=max(re_err, im_err)
        )
    return complex(re, im)


@lru_cache(maxsize=1024)
def _log_mellin_at_one(params: BetaProductParams) -> float:
    return _log_mellin_unnormalised(params, complex(1.0, 0.0)).real


def mellin_T(params: BetaProductParams, s: Union[float, complex]) -> Union[float, complex]:
    """E[T(a, b, c)^s] for real or complex ``s`` with ``Re s > -a``.

    Degenerate cases: returns 1 for the constant-one law; the constant-zero
    law has no finite Mellin transform away from s = 0.
    """
    s_c = complex(s)
    if params.is_one:
        return 1.0 if not isinstance(s, complex) else complex(1.0)
    if params.is_zero:
        if s_c == 0:
            return 1.0
        raise DomainError("Mellin transform of the degenerate zero law is 0/undefined")
    if s_c.real <= -params.a + 1e-9:
        raise DomainError(
            f"mellin_T requires Re s > -a, i.e. Re s in (-{params.a}, inf); got {s!r}"
        )
    log_m = _log_mellin_unnormalised(params, s_c) - s_c * _log_mellin_at_one(params)
    value = np.exp(log_m)
    if isinstance(s, complex):
        return complex(value)
    return float(value.real)


def mellin_T_via_double_gamma(params: BetaProductParams, s: float) -> float:
    """E[T(a, b, c)^s] through the Barnes double Gamma closed form (real s > -a).

    Independent of :func:`mellin_T`: no quadrature of the exponential
    representation is involved.
    """
    if params.is_one:
        return 1.0
    if params.is_zero:
        raise DomainError("Mellin transform of the degenerate zero law is 0/undefined")
    a, b, c = params.a, params.b, params.c
    if s <= -a + 1e-9:
        raise DomainError(
            f"mellin_T_via_double_gamma requires s > -a, i.e. s in (-{a}, inf); got {s!r}"
        )
    log_const = float(_sp.gammaln(a / b) - _sp.gammaln((a + c) / b))
    log_ratio = (
        log_double_gamma(a + c + s, b)
        + log_double_gamma(a, b)
        - log_double_gamma(a + s, b)
        - log_double_gamma(a + c, b)
    )
    return float(math.exp(s * log_const + log_ratio))


# ---------------------------------------------------------------------------
# self-decomposability criterion
# ---------------------------------------------------------------------------

def _sd_log_derivative(xs: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """d/dx log[ x^a (1-x^c) / ((1-x)(1-x^b)) ], elementwise on xs in (0,1)."""
    with np.errstate(over="ignore"):
        return (
            a / xs
            - c * xs ** (c - 1.0) / (-np.expm1(c * np.log(xs)))
            + 1.0 / (1.0 - xs)
            + b * xs ** (b - 1.0) / (-np.expm1(b * np.log(xs)))
        )


def sd_criterion(a: float, b: float, c: float, grid_size: int = 20001) -> bool:
    """Monotonicity scan deciding self-decomposability of log T(a, b, c).

    log T is self-decomposable iff

        x -> x^a (1 - x^c) / ( (1 - x)(1 - x^b) )

    is non-decreasing on (0, 1).  The scan checks the sign of the logarithmic
    derivative on a dense grid (uniform plus log-spaced refinement at both
    endpoints), then re-scans at 100x resolution around any point where the
    derivative is negative or nearly so, to separate true sign changes from
    discretisation effects.  A sufficient condition is ``2a + c >= min(1, b)``.
    """
    if a < 0 or b <= 0 or c < 0:
        raise DomainError("sd_criterion requires a, c >= 0 and b > 0")
    if c == 0.0:
        return True  # constant law

    def scan(xs: np.ndarray) -> tuple[bool, np.ndarray]:
        deriv = _sd_log_derivative(xs, a, b, c)
        finite = np.isfinite(deriv)
        bad = finite & (deriv < 1e-7 * np.maximum(1.0, np.abs(deriv)))
        return bool(np.any(deriv[finite] < -1e-9 * np.maximum(1.0, np.abs(deriv[finite])))), xs[bad]

    xs = np.unique(
        np.concatenate(
            [
                np.linspace(1e-9, 1.0 - 1e-9, grid_size),
                np.geomspace(1e-12, 0.1, 2000),
                1.0 - np.geomspace(1e-12, 0.1, 2000),
            ]
        )
    )
    step = 1.0 / grid_size
    for _ in range(3):
        negative, suspects = scan(xs)
        if negative:
            return False
        if suspects.size == 0:
            return True
        # refine around near-zero derivative values at 100x local resolution
        xs = np.unique(
            np.concatenate(
                [np.linspace(max(x0 - step, 1e-12), min(x0 + step, 1.0 - 1e-12), 201) for x0 in suspects[:64]]
            )
        )
        step /= 100.0
    return True


# ---------------------------------------------------------------------------
# identity catalog
# ---------------------------------------------------------------------------

def identity_catalog():
    """The library's catalog of exact Beta-product identities.

    Returns a list of :class:`~stablefunc.laws.Identity` objects, each
    carrying a name, a parameter sampler and lhs/rhs law builders:

    * ``extend``            T(a,b,c) x T(a+c,b,d)  =  T(a,b,c+d)
    * ``rescale``           T(a,b,c)  =  T(a/b, 1/b, c/b)^{1/b} up to a constant
    * ``shift_bias``        T(a,b,c)  =  B_{a,c} x T(a,b,c)^{(b)}
    * ``shift_bias_scaled`` T(a,b,c)  =  B_{a/b,c/b}^{1/b} x T(a,b,c)^{(1)}
    * ``gamma_product``     Gamma_a  =  a T(a,b,b)   (any b)
    * ``gamma_power``       Gamma_a^b  =  (Gamma(a+b)/Gamma(a)) T(a/b, 1/b, 1)
    * ``stable_inverse``    Z_mu^{-1}  =  Gamma(1+1/mu) T(mu, mu, 1-mu)
    * ``mittag_leffler``    Z_mu^{-mu}  =  T(1, 1/mu, 1/mu - 1) / Gamma(1+mu)
    * ``beta_extend``       B_{a,b} x B_{a+b,c}  =  B_{a,b+c}
    * ``beta_gamma``        B_{a,b} x Gamma_{a+b}  =  Gamma_a

    The ``rescale`` identity holds up to an unknown positive constant and is
    therefore verified scale-free (``M(s) M(1)^{-s}`` equality); all others
    are strict equalities in law.
    """
    from . import laws  # local import: laws depends on this module

    return laws.beta_product_identities()
