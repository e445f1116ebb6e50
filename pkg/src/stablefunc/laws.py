"""Symbolic law expressions: trees of positive random variables.

A :class:`LawExpr` is an immutable expression tree whose leaves are named
positive laws (constant, Beta, Gamma, exponential, uniform, positive stable,
Mittag-Leffler, mu-Cauchy, Beta product) and whose internal nodes are

* ``product`` of independent subtrees,
* ``power`` by a nonzero real exponent (reciprocal = power by -1),
* ``size_bias`` by nu (law reweighted by x^nu), which is Mellin-only.

Every tree exposes a Mellin transform ``M(s) = E[X^s]`` on an explicit open
strip, computed compositionally (product -> product of Mellins; power p ->
M(p s); size-bias nu -> M(s+nu)/M(nu)), valid for complex ``s`` with real
part inside the strip.  Trees without size-bias nodes also expose a sampler.
Trees serialize to a canonical JSON structure (node type, parameters,
children) and back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import special as _sp

from . import distributions as _dist
from .beta_product import BetaProductParams, mellin_T, sample_T
from .specfun import DomainError

__all__ = [
    "Strip",
    "LawExpr",
    "const",
    "beta",
    "gamma_rv",
    "exponential",
    "uniform",
    "positive_stable",
    "mittag_leffler",
    "mu_cauchy",
    "beta_product",
    "product",
    "power",
    "reciprocal",
    "size_bias",
    "law_to_json",
    "law_from_json",
    "Identity",
    "beta_product_identities",
]

_STRIP_MARGIN = 1e-9

Scalar = Union[float, complex]


@dataclass(frozen=True)
class Strip:
    """Open interval of Mellin convergence (endpoints may be infinite)."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise DomainError(f"empty Mellin strip ({self.lower}, {self.upper})")

    def intersect(self, other: "Strip") -> "Strip":
        lo, hi = max(self.lower, other.lower), min(self.upper, other.upper)
        if not lo < hi:
            raise DomainError(f"Mellin strips ({self.lower},{self.upper}) and "
                              f"({other.lower},{other.upper}) do not overlap")
        return Strip(lo, hi)

    def contains(self, s: Scalar, margin: float = _STRIP_MARGIN) -> bool:
        x = complex(s).real
        return self.lower + margin < x < self.upper - margin

    def require(self, s: Scalar, what: str) -> None:
        if not self.contains(s):
            raise DomainError(
                f"{what}: Mellin transform defined for Re s in "
                f"({self.lower}, {self.upper}); got s = {s!r}"
            )

    def contour(self) -> float:
        """Default inversion contour: strip midpoint, pulled in from an
        infinite endpoint by 1."""
        lo, hi = self.lower, self.upper
        if math.isinf(lo) and math.isinf(hi):
            return 0.0
        if math.isinf(lo):
            return hi - 1.0
        if math.isinf(hi):
            return lo + 1.0
        return 0.5 * (lo + hi)

    def interior_grid(self, n: int = 6, coverage: float = 0.8) -> np.ndarray:
        """n points spanning the middle ``coverage`` fraction of the strip.

        Infinite endpoints are replaced by finite probes (distance 2 beyond
        the opposite endpoint, or [-2, 2] when both are infinite).
        """
        lo, hi = self.lower, self.upper
        if math.isinf(lo) and math.isinf(hi):
            lo, hi = -2.0, 2.0
        elif math.isinf(lo):
            lo = hi - 4.0
        elif math.isinf(hi):
            hi = lo + 4.0
        pad = (1.0 - coverage) / 2.0 * (hi - lo)
        return np.linspace(lo + pad, hi - pad, n)


def _as_scalar(value: complex, s: Scalar) -> Scalar:
    """Return float for real s, complex for complex s."""
    if isinstance(s, complex):
        return value
    return float(value.real)


def _loggamma(z: Scalar) -> complex:
    return complex(_sp.loggamma(complex(z)))


class LawExpr:
    """Base class for law-expression nodes.  Immutable after construction."""

    #: class-level node tag used in JSON serialization
    node: str = ""

    # -- interface -----------------------------------------------------
    def strip(self) -> Strip:
        raise NotImplementedError

    def mellin(self, s: Scalar) -> Scalar:
        """E[X^s] for Re s inside the strip (raises DomainError outside)."""
        self.strip().require(s, type(self).__name__)
        return _as_scalar(self._mellin(complex(s)), s)

    def _mellin(self, s: complex) -> complex:
        raise NotImplementedError

    def sample(
        self,
        rng: np.random.Generator,
        size: Union[int, None] = None,
        log_tol: float = 1e-3,
    ) -> Union[float, np.ndarray]:
        n = 1 if size is None else int(size)
        out = self._sample(rng, n, log_tol)
        return float(out[0]) if size is None else out

    def _sample(self, rng: np.random.Generator, n: int, log_tol: float) -> np.ndarray:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    # -- conveniences ---------------------------------------------------
    def __mul__(self, other: "LawExpr") -> "LawExpr":
        return product(self, other)

    def __pow__(self, p: float) -> "LawExpr":
        return power(self, p)

    def __repr__(self) -> str:  # compact structural repr
        return f"{type(self).__name__}({self.to_json()})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LawExpr) and self.to_json() == other.to_json()

    def __hash__(self) -> int:
        import json

        return hash(json.dumps(self.to_json(), sort_keys=True))


# ---------------------------------------------------------------------------
# leaves
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Const(LawExpr):
    """Deterministic nonnegative constant (0 allowed for boundary laws)."""

    value: float
    node = "const"

    def __post_init__(self) -> None:
        if not (self.value >= 0.0) or not math.isfinite(self.value):
            raise DomainError(f"const law requires a finite value >= 0, got {self.value!r}")

    def strip(self) -> Strip:
        return Strip(-math.inf, math.inf)

    def mellin(self, s: Scalar) -> Scalar:  # zero needs special handling
        if self.value == 0.0:
            if complex(s) == 0:
                return _as_scalar(complex(1.0), s)
            raise DomainError("Mellin transform of the constant 0 is defined only at s = 0")
        return _as_scalar(complex(self.value) ** complex(s), s)

    def _sample(self, rng, n, log_tol):
        return np.full(n, self.value)

    def to_json(self) -> dict:
        return {"node": "const", "value": self.value}


@dataclass(frozen=True, eq=False)
class Beta(LawExpr):
    """Beta(a, b) on (0,1): E[B^s] = Gamma(a+s)Gamma(a+b) / (Gamma(a)Gamma(a+b+s))."""

    a: float
    b: float
    node = "beta"

    def __post_init__(self) -> None:
        if self.a <= 0 or self.b < 0:
            raise DomainError(f"Beta law requires a > 0 and b >= 0, got ({self.a}, {self.b})")

    def strip(self) -> Strip:
        return Strip(-self.a, math.inf)

    def _mellin(self, s: complex) -> complex:
        if self.b == 0.0:
            return complex(1.0)
        return np.exp(
            _loggamma(self.a + s)
            + _loggamma(self.a + self.b)
            - _loggamma(self.a)
            - _loggamma(self.a + self.b + s)
        )

    def _sample(self, rng, n, log_tol):
        return _dist.sample_beta(self.a, self.b, rng, size=n)

    def to_json(self) -> dict:
        return {"node": "beta", "a": self.a, "b": self.b}


@dataclass(frozen=True, eq=False)
class Gamma(LawExpr):
    """Gamma(a) with unit scale: E[G^s] = Gamma(a+s)/Gamma(a)."""

    a: float
    node = "gamma"

    def __post_init__(self) -> None:
        if self.a <= 0:
            raise DomainError(f"Gamma law requires a > 0, got {self.a}")

    def strip(self) -> Strip:
        return Strip(-self.a, math.inf)

    def _mellin(self, s: complex) -> complex:
        return np.exp(_loggamma(self.a + s) - _loggamma(self.a))

    def _sample(self, rng, n, log_tol):
        return _dist.sample_gamma(self.a, rng, size=n)

    def to_json(self) -> dict:
        return {"node": "gamma", "a": self.a}


@dataclass(frozen=True, eq=False)
class Exponential(LawExpr):
    """Standard exponential: E[L^s] = Gamma(1+s)."""

    node = "exponential"

    def strip(self) -> Strip:
        return Strip(-1.0, math.inf)

    def _mellin(self, s: complex) -> complex:
        return np.exp(_loggamma(1.0 + s))

    def _sample(self, rng, n, log_tol):
        return _dist.sample_exponential(rng, size=n)

    def to_json(self) -> dict:
        return {"node": "exponential"}


@dataclass(frozen=True, eq=False)
class Uniform(LawExpr):
    """Uniform on (0,1): E[U^s] = 1/(1+s)."""

    node = "uniform"

    def strip(self) -> Strip:
        return Strip(-1.0, math.inf)

    def _mellin(self, s: complex) -> complex:
        return 1.0 / (1.0 + s)

    def _sample(self, rng, n, log_tol):
        return _dist.sample_uniform(rng, size=n)

    def to_json(self) -> dict:
        return {"node": "uniform"}


@dataclass(frozen=True, eq=False)
class PositiveStable(LawExpr):
    """Positive mu-stable, E[exp(-l Z)] = exp(-l^mu): E[Z^s] = Gamma(1-s/mu)/Gamma(1-s), s < mu."""

    mu: float
    node = "positive_stable"

    def __post_init__(self) -> None:
        if not 0.0 < self.mu < 1.0:
            raise DomainError(f"positive stable requires mu in (0,1), got {self.mu}")

    def strip(self) -> Strip:
        return Strip(-math.inf, self.mu)

    def _mellin(self, s: complex) -> complex:
        return np.exp(_loggamma(1.0 - s / self.mu) - _loggamma(1.0 - s))

    def _sample(self, rng, n, log_tol):
        return _dist.sample_positive_stable(self.mu, rng, size=n)

    def to_json(self) -> dict:
        return {"node": "positive_stable", "mu": self.mu}


@dataclass(frozen=True, eq=False)
class MittagLeffler(LawExpr):
    """Mittag-Leffler law Z_alpha^{-alpha}: E[M^s] = Gamma(1+s)/Gamma(1+alpha s), s > -1."""

    alpha: float
    node = "mittag_leffler"

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"Mittag-Leffler requires alpha in (0,1), got {self.alpha}")

    def strip(self) -> Strip:
        return Strip(-1.0, math.inf)

    def _mellin(self, s: complex) -> complex:
        return np.exp(_loggamma(1.0 + s) - _loggamma(1.0 + self.alpha * s))

    def _sample(self, rng, n, log_tol):
        return _dist.sample_mittag_leffler(self.alpha, rng, size=n)

    def to_json(self) -> dict:
        return {"node": "mittag_leffler", "alpha": self.alpha}


@dataclass(frozen=True, eq=False)
class MuCauchy(LawExpr):
    """Positive mu-Cauchy law: E[C^s] = sin(pi mu s) / (mu sin(pi s)) on (-1, 1)."""

    mu: float
    node = "mu_cauchy"

    def __post_init__(self) -> None:
        if not 0.0 < self.mu < 1.0:
            raise DomainError(f"mu-Cauchy requires mu in (0,1), got {self.mu}")

    def strip(self) -> Strip:
        return Strip(-1.0, 1.0)

    def _mellin(self, s: complex) -> complex:
        if abs(complex(s)) < 1e-12:
            return complex(1.0)
        pis = math.pi * s
        return np.sin(self.mu * pis) / (self.mu * np.sin(pis))

    def _sample(self, rng, n, log_tol):
        return _dist.sample_mu_cauchy(self.mu, rng, size=n)

    def to_json(self) -> dict:
        return {"node": "mu_cauchy", "mu": self.mu}


@dataclass(frozen=True, eq=False)
class BetaProduct(LawExpr):
    """The infinite Beta product T(a, b, c) leaf."""

    a: float
    b: float
    c: float
    node = "beta_product"

    def __post_init__(self) -> None:
        BetaProductParams(self.a, self.b, self.c)  # validates

    @property
    def params(self) -> BetaProductParams:
        return BetaProductParams(self.a, self.b, self.c)

    def strip(self) -> Strip:
        return Strip(-self.a, math.inf) if self.c > 0 else Strip(-math.inf, math.inf)

    def _mellin(self, s: complex) -> complex:
        if s.imag == 0.0:
            return complex(mellin_T(self.params, float(s.real)))
        return complex(mellin_T(self.params, s))

    def _sample(self, rng, n, log_tol):
        return sample_T(self.params, log_tol, rng, size=n)

    def to_json(self) -> dict:
        return {"node": "beta_product", "a": self.a, "b": self.b, "c": self.c}


# ---------------------------------------------------------------------------
# internal nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Product(LawExpr):
    """Product of independent subtrees."""

    factors: tuple
    node = "product"

    def __post_init__(self) -> None:
        if len(self.factors) < 1:
            raise DomainError("product requires at least one factor")
        for f in self.factors:
            if not isinstance(f, LawExpr):
                raise DomainError(f"product factors must be LawExpr, got {type(f).__name__}")

    def strip(self) -> Strip:
        strip = self.factors[0].strip()
        for f in self.factors[1:]:
            strip = strip.intersect(f.strip())
        return strip

    def _mellin(self, s: complex) -> complex:
        out = complex(1.0)
        for f in self.factors:
            out *= complex(f.mellin(s if s.imag != 0.0 else float(s.real)))
        return out

    def _sample(self, rng, n, log_tol):
        out = np.ones(n)
        for f in self.factors:
            out *= f._sample(rng, n, log_tol)
        return out

    def to_json(self) -> dict:
        return {"node": "product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True, eq=False)
class Power(LawExpr):
    """X^p for a nonzero real exponent p (p = -1 is the reciprocal)."""

    base: LawExpr
    exponent: float
    node = "power"

    def __post_init__(self) -> None:
        if self.exponent == 0.0 or not math.isfinite(self.exponent):
            raise DomainError("power exponent must be nonzero and finite")

    def strip(self) -> Strip:
        inner = self.base.strip()
        p = self.exponent
        if p > 0:
            return Strip(inner.lower / p, inner.upper / p)
        lo = inner.upper / p  # p < 0 flips the interval
        hi = inner.lower / p
        return Strip(lo, hi)

    def _mellin(self, s: complex) -> complex:
        ps = self.exponent * s
        return complex(self.base.mellin(ps if ps.imag != 0.0 else float(ps.real)))

    def _sample(self, rng, n, log_tol):
        return self.base._sample(rng, n, log_tol) ** self.exponent

    def to_json(self) -> dict:
        return {"node": "power", "base": self.base.to_json(), "exponent": self.exponent}


@dataclass(frozen=True, eq=False)
class SizeBias(LawExpr):
    """Size-biased law X^(nu): Mellin M(s+nu)/M(nu).  Mellin-only (no sampler)."""

    base: LawExpr
    nu: float
    node = "size_bias"

    def __post_init__(self) -> None:
        if not math.isfinite(self.nu) or self.nu == 0.0:
            raise DomainError("size-bias exponent nu must be nonzero and finite")
        if not self.base.strip().contains(self.nu):
            raise DomainError(
                f"size-bias exponent nu={self.nu} outside the base Mellin strip "
                f"({self.base.strip().lower}, {self.base.strip().upper})"
            )

    def strip(self) -> Strip:
        inner = self.base.strip()
        return Strip(inner.lower - self.nu, inner.upper - self.nu)

    def _mellin(self, s: complex) -> complex:
        shifted = s + self.nu
        num = self.base.mellin(shifted if shifted.imag != 0.0 else float(shifted.real))
        den = self.base.mellin(self.nu)
        return complex(num) / complex(den)

    def _sample(self, rng, n, log_tol):
        raise DomainError(
            "size-biased laws are Mellin-only: x^nu reweighting admits no bounded "
            "importance sampler; verify identities containing them on the Mellin grid"
        )

    def to_json(self) -> dict:
        return {"node": "size_bias", "base": self.base.to_json(), "nu": self.nu}


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def const(value: float) -> Const:
    return Const(float(value))


def beta(a: float, b: float) -> Beta:
    return Beta(float(a), float(b))


def gamma_rv(a: float) -> Gamma:
    return Gamma(float(a))


def exponential() -> Exponential:
    return Exponential()


def uniform() -> Uniform:
    return Uniform()


def positive_stable(mu: float) -> PositiveStable:
    return PositiveStable(float(mu))


def mittag_leffler(alpha: float) -> MittagLeffler:
    return MittagLeffler(float(alpha))


def mu_cauchy(mu: float) -> MuCauchy:
    return MuCauchy(float(mu))


def beta_product(a: float, b: float, c: float) -> BetaProduct:
    return BetaProduct(float(a), float(b), float(c))


def product(*factors: LawExpr) -> LawExpr:
    flat: list[LawExpr] = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def power(base: LawExpr, p: float) -> LawExpr:
    if isinstance(base, Power):
        return Power(base.base, base.exponent * float(p))
    return Power(base, float(p))


def reciprocal(base: LawExpr) -> LawExpr:
    return power(base, -1.0)


def size_bias(base: LawExpr, nu: float) -> SizeBias:
    return SizeBias(base, float(nu))


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------

def law_to_json(expr: LawExpr) -> dict:
    return expr.to_json()


def law_from_json(data: dict) -> LawExpr:
    if not isinstance(data, dict) or "node" not in data:
        raise DomainError("law JSON must be an object with a 'node' field")
    node = data["node"]
    if node == "const":
        return Const(float(data["value"]))
    if node == "beta":
        return Beta(float(data["a"]), float(data["b"]))
    if node == "gamma":
        return Gamma(float(data["a"]))
    if node == "exponential":
        return Exponential()
    if node == "uniform":
        return Uniform()
    if node == "positive_stable":
        return PositiveStable(float(data["mu"]))
    if node == "mittag_leffler":
        return MittagLeffler(float(data["alpha"]))
    if node == "mu_cauchy":
        return MuCauchy(float(data["mu"]))
    if node == "beta_product":
        return BetaProduct(float(data["a"]), float(data["b"]), float(data["c"]))
    if node == "product":
        return Product(tuple(law_from_json(f) for f in data["factors"]))
    if node == "power":
        return Power(law_from_json(data["base"]), float(data["exponent"]))
    if node == "size_bias":
        return SizeBias(law_from_json(data["base"]), float(data["nu"]))
    raise DomainError(f"unknown law node type {node!r}")


# ---------------------------------------------------------------------------
# identity catalog for the Beta product algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    """A named distributional identity with parameter slots.

    ``make_lhs(params)`` / ``make_rhs(params)`` build the two sides;
    ``sample_params(rng)`` draws a random admissible parameter dict and
    ``default_params`` is a canonical instantiation.  ``scale_free`` marks
    identities that hold only up to an unknown positive constant: those are
    verified through equality of the scale-invariant transform
    M(s) * M(1)^{-s} rather than plain Mellin equality.  Iterating yields
    ``(name, lhs, rhs)`` at the default parameters.
    """

    name: str
    make_lhs: "object"
    make_rhs: "object"
    default_params: dict
    sample_params: "object"
    scale_free: bool = False
    mellin_only: bool = False

    @property
    def lhs(self) -> LawExpr:
        return self.make_lhs(**self.default_params)

    @property
    def rhs(self) -> LawExpr:
        return self.make_rhs(**self.default_params)

    def instantiate(self, **params) -> tuple:
        return self.make_lhs(**params), self.make_rhs(**params)

    def __iter__(self):
        yield self.name
        yield self.lhs
        yield self.rhs


def _gammaln(x: float) -> float:
    return float(_sp.gammaln(x))


def beta_product_identities() -> list:
    """The Beta-product identity catalog (see beta_product.identity_catalog)."""

    def u(rng, lo, hi):
        return float(rng.uniform(lo, hi))

    catalog = [
        Identity(
            name="extend",  # T(a,b,c) x T(a+c,b,d) = T(a,b,c+d)
            make_lhs=lambda a, b, c, d: product(beta_product(a, b, c), beta_product(a + c, b, d)),
            make_rhs=lambda a, b, c, d: beta_product(a, b, c + d),
            default_params={"a": 0.5, "b": 1.0, "c": 0.8, "d": 0.4},
            sample_params=lambda rng: {
                "a": u(rng, 0.2, 2.0), "b": u(rng, 0.3, 2.5),
                "c": u(rng, 0.2, 1.5), "d": u(rng, 0.2, 1.5),
            },
        ),
        Identity(
            name="rescale",  # T(a,b,c) = T(a/b, 1/b, c/b)^{1/b} up to a positive constant
            make_lhs=lambda a, b, c: beta_product(a, b, c),
            make_rhs=lambda a, b, c: power(beta_product(a / b, 1.0 / b, c / b), 1.0 / b),
            default_params={"a": 0.7, "b": 1.6, "c": 0.9},
            sample_params=lambda rng: {
                "a": u(rng, 0.3, 2.0), "b": u(rng, 0.4, 2.2), "c": u(rng, 0.3, 1.5),
            },
            scale_free=True,
        ),
        Identity(
            name="shift_bias",  # T(a,b,c) = B_{a,c} x T(a,b,c)^{(b)}
            make_lhs=lambda a, b, c: beta_product(a, b, c),
            make_rhs=lambda a, b, c: product(beta(a, c), size_bias(beta_product(a, b, c), b)),
            default_params={"a": 0.8, "b": 1.2, "c": 0.6},
            sample_params=lambda rng: {
                "a": u(rng, 0.3, 2.0), "b": u(rng, 0.3, 2.0), "c": u(rng, 0.3, 1.5),
            },
            mellin_only=True,
        ),
        Identity(
            name="shift_bias_scaled",  # T(a,b,c) = B_{a/b,c/b}^{1/b} x T(a,b,c)^{(1)}
            make_lhs=lambda a, b, c: beta_product(a, b, c),
            make_rhs=lambda a, b, c: product(
                power(beta(a / b, c / b), 1.0 / b), size_bias(beta_product(a, b, c), 1.0)
            ),
            default_params={"a": 0.8, "b": 1.2, "c": 0.6},
            sample_params=lambda rng: {
                "a": u(rng, 0.3, 2.0), "b": u(rng, 0.3, 2.0), "c": u(rng, 0.3, 1.5),
            },
            mellin_only=True,
        ),
        Identity(
            name="gamma_product",  # Gamma_a = a T(a,b,b), any b > 0
            make_lhs=lambda a, b: gamma_rv(a),
            make_rhs=lambda a, b: product(const(a), beta_product(a, b, b)),
            default_params={"a": 1.0, "b": 1.0},
            sample_params=lambda rng: {"a": u(rng, 0.3, 2.5), "b": u(rng, 0.3, 2.5)},
        ),
        Identity(
            name="gamma_power",  # Gamma_a^b = (Gamma(a+b)/Gamma(a)) T(a/b, 1/b, 1)
            make_lhs=lambda a, b: power(gamma_rv(a), b),
            make_rhs=lambda a, b: product(
                const(math.exp(_gammaln(a + b) - _gammaln(a))),
                beta_product(a / b, 1.0 / b, 1.0),
            ),
            default_params={"a": 1.5, "b": 2.0},
            sample_params=lambda rng: {"a": u(rng, 0.4, 2.5), "b": u(rng, 0.4, 2.5)},
        ),
        Identity(
            name="stable_inverse",  # Z_mu^{-1} = Gamma(1+1/mu) T(mu, mu, 1-mu)
            make_lhs=lambda mu: reciprocal(positive_stable(mu)),
            make_rhs=lambda mu: product(
                const(math.exp(_gammaln(1.0 + 1.0 / mu))), beta_product(mu, mu, 1.0 - mu)
            ),
            default_params={"mu": 0.5},
            sample_params=lambda rng: {"mu": u(rng, 0.15, 0.9)},
        ),
        Identity(
            name="mittag_leffler",  # Z_mu^{-mu} = (1/Gamma(1+mu)) T(1, 1/mu, 1/mu - 1)
            make_lhs=lambda mu: mittag_leffler(mu),
            make_rhs=lambda mu: product(
                const(math.exp(-_gammaln(1.0 + mu))),
                beta_product(1.0, 1.0 / mu, 1.0 / mu - 1.0),
            ),
            default_params={"mu": 0.5},
            sample_params=lambda rng: {"mu": u(rng, 0.15, 0.9)},
        ),
        Identity(
            name="beta_extend",  # B_{a,b} x B_{a+b,c} = B_{a,b+c}
            make_lhs=lambda a, b, c: product(beta(a, b), beta(a + b, c)),
            make_rhs=lambda a, b, c: beta(a, b + c),
            default_params={"a": 0.6, "b": 0.9, "c": 0.7},
            sample_params=lambda rng: {
                "a": u(rng, 0.2, 2.0), "b": u(rng, 0.2, 2.0), "c": u(rng, 0.2, 2.0),
            },
        ),
        Identity(
            name="beta_gamma",  # B_{a,b} x Gamma_{a+b} = Gamma_a
            make_lhs=lambda a, b: product(beta(a, b), gamma_rv(a + b)),
            make_rhs=lambda a, b: gamma_rv(a),
            default_params={"a": 0.8, "b": 1.1},
            sample_params=lambda rng: {"a": u(rng, 0.2, 2.0), "b": u(rng, 0.2, 2.0)},
        ),
    ]
    return catalog
