"""Monte Carlo ground truth by direct path simulation.

Simulates the stable path from its starting level with exact stable
increments over adaptive Euler steps, accumulating the time integral of
``|L_s|^q`` up to the first passage below zero and tracking the stopped
extrema.  A second routine integrates ``(1 + subordinator)^{-q}`` over the
half-line with a sampled-growth tail cutoff.

This module deliberately shares nothing with the analytic law machinery:
it touches only the raw increment representation (Chambers-Mallows-Stuck)
re-implemented here inside compiled kernels, so its output is an
independent check of the exact laws, not a restatement of them.

Reproducibility: batch run ``i`` draws from ``RngStream(seed,
stream).substream(i)``, so results are independent of batch size and stable
under re-runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np
from numba import njit

from .distributions import ProcessClass, RngStream, StableParams
from .functional_law import FunctionalSpec, classify
from .specfun import AccuracyError, DomainError

__all__ = [
    "PathConfig",
    "RunResult",
    "BatchResult",
    "ResolvedBatch",
    "simulate_killed_functional",
    "simulate_killed_batch",
    "resolve_censored",
    "simulate_subordinator_integral",
    "subordinator_integral_batch",
]

#: the adaptive step is never smaller than ``dt`` times this factor
_FLOOR_FRACTION = 1e-6
#: relative size at which the subordinator tail estimate stops the run
_TAIL_RTOL = 1e-4

_MODE_GAUSS = 0
_MODE_CAUCHY = 1
_MODE_DRIFT = 2
_MODE_CMS = 3


@dataclass(frozen=True)
class PathConfig:
    """Discretization parameters of the Euler walk.

    ``dt`` is the base time step; the step taken at level ``x`` is
    ``dt * min(1, x^adaptive_exponent)`` (self-similar refinement near
    zero), floored at ``dt * 1e-6``.  ``adaptive_exponent`` defaults to the
    stability index of the simulated process.  ``absorption`` stops the walk
    when the level drops below it, used only in the spectrally positive
    regime where zero is approached continuously from above and a strict
    sign change would never trigger.  ``t_max`` is the simulation horizon;
    runs that never pass below zero before it are reported censored.
    """

    dt: float = 1e-4
    adaptive_exponent: Optional[float] = None
    absorption: float = 1e-4
    t_max: float = 1e3

    def __post_init__(self) -> None:
        for name in ("dt", "absorption", "t_max"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.adaptive_exponent is not None:
            object.__setattr__(self, "adaptive_exponent", float(self.adaptive_exponent))
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise DomainError(f"dt must be positive and finite, got {self.dt!r}")
        if not (self.absorption >= 0.0 and math.isfinite(self.absorption)):
            raise DomainError(
                f"absorption threshold must be >= 0 and finite, got {self.absorption!r}"
            )
        if not (self.t_max > 0.0 and math.isfinite(self.t_max)):
            raise DomainError(f"t_max must be positive and finite, got {self.t_max!r}")
        if self.adaptive_exponent is not None and not (
            self.adaptive_exponent > 0.0 and math.isfinite(self.adaptive_exponent)
        ):
            raise DomainError(
                f"adaptive exponent must be positive, got {self.adaptive_exponent!r}"
            )

    def exponent_for(self, alpha: float) -> float:
        return alpha if self.adaptive_exponent is None else self.adaptive_exponent


@dataclass(frozen=True)
class RunResult:
    """One killed-path run.

    ``censored`` is True exactly when the path never went below zero before
    ``t_max``; a censored run's ``first_passage_time`` equals ``t_max`` and
    its ``functional_value`` is the accumulation up to the horizon only.
    """

    first_passage_time: float
    functional_value: float
    stopped_sup: float
    stopped_inf: float
    censored: bool


@dataclass(frozen=True)
class BatchResult:
    """Array-valued result of a batch of killed-path runs.

    ``functional_values`` has one column per requested exponent in ``qs``.
    Censored runs are never dropped here; downstream consumers either filter
    on ``censored`` explicitly or complete the censored runs with
    :func:`resolve_censored`.  ``final_level`` is the level at the stop: the
    (negative) overshoot level for runs that crossed, the current level at
    the horizon for censored runs.
    """

    params: StableParams
    qs: Tuple[float, ...]
    config: PathConfig
    seed: int
    stream: int
    start: float
    first_passage_time: np.ndarray
    functional_values: np.ndarray
    stopped_sup: np.ndarray
    stopped_inf: np.ndarray
    censored: np.ndarray
    final_level: np.ndarray

    @property
    def n_runs(self) -> int:
        return int(self.first_passage_time.shape[0])

    @property
    def n_censored(self) -> int:
        return int(np.count_nonzero(self.censored))

    def functional(self, q: float) -> np.ndarray:
        for j, qj in enumerate(self.qs):
            if qj == q:
                return self.functional_values[:, j]
        raise DomainError(f"exponent q={q!r} was not accumulated; have {self.qs}")

    def rows(self) -> Iterator[tuple]:
        """Streamable rows: (run id, T, A columns..., sup, inf, censored)."""
        for i in range(self.n_runs):
            yield (
                i,
                float(self.first_passage_time[i]),
                *(float(v) for v in self.functional_values[i]),
                float(self.stopped_sup[i]),
                float(self.stopped_inf[i]),
                bool(self.censored[i]),
            )


@njit(cache=True)
def _killed_walk(gen, mode, alpha, rho, dt, aexp, h_floor, eps_stop, t_max, qs, start):
    """One adaptive Euler walk; returns (T, acc, sup, inf, censored, level).

    The functional uses the left-point rule: each step contributes the
    pre-step level raised to q times the step length, so jump crossings are
    charged at the pre-jump level.  The walk equals the true process sampled
    along its own (state-adapted) grid, because every increment is an exact
    stable draw; all discretization error lives between grid points.
    """
    nq = qs.shape[0]
    acc = np.zeros(nq)
    level = start
    t = 0.0
    sup = start
    inf = start
    b = math.pi * (rho - 0.5)
    inv_a = 1.0 / alpha
    om_a = (1.0 - alpha) / alpha
    drift1 = -math.cos(math.pi * rho)
    scale1 = math.sin(math.pi * rho)
    aexp_is_2 = aexp == 2.0
    aexp_is_1 = aexp == 1.0
    while t < t_max:
        x = level
        if x >= 1.0:
            h = dt
        else:
            if aexp_is_2:
                h = dt * x * x
            elif aexp_is_1:
                h = dt * x
            else:
                h = dt * x ** aexp
            if h < h_floor:
                h = h_floor
        for k in range(nq):
            qk = qs[k]
            if qk == 0.0:
                acc[k] += h
            elif qk == 1.0:
                acc[k] += x * h
            elif qk == -1.0:
                acc[k] += h / x
            else:
                acc[k] += x ** qk * h
        if mode == _MODE_GAUSS:
            level = x + math.sqrt(2.0 * h) * gen.standard_normal()
        elif mode == _MODE_CMS:
            u = gen.random()
            if u < 1e-16:
                u = 1e-16
            elif u > 1.0 - 1e-16:
                u = 1.0 - 1e-16
            v = math.pi * (u - 0.5)
            w = gen.standard_exponential() + 1e-300
            av = alpha * (v + b)
            z = (
                math.sin(av)
                * math.cos(v) ** (-inv_a)
                * (math.cos(v - av) / w) ** om_a
            )
            level = x + h ** inv_a * z
        elif mode == _MODE_CAUCHY:
            u = gen.random()
            if u < 1e-16:
                u = 1e-16
            elif u > 1.0 - 1e-16:
                u = 1.0 - 1e-16
            level = x + h * (drift1 + scale1 * math.tan(math.pi * (u - 0.5)))
        else:
            level = x - h
        t += h
        if level < eps_stop:
            return t, acc, sup, inf, False, level
        if level > sup:
            sup = level
        elif level < inf:
            inf = level
    return t_max, acc, sup, inf, True, level


@njit(cache=True)
def _subordinator_walk(gen, alpha, q, dt, t_max, rel_tail):
    """Integral of (1 + sigma_t)^{-q} dt with a sampled-growth tail cutoff.

    Steps grow proportionally to elapsed time (h = dt * max(1, t)), which
    keeps the per-step relative movement of the integrand uniformly small
    while reaching large horizons in O(log) steps.  Returns (value, ok).
    """
    inv_a = 1.0 / alpha
    om_a = (1.0 - alpha) / alpha
    b = math.pi * 0.5
    kappa = alpha / (q - alpha)
    sigma = 0.0
    t = 0.0
    acc = 0.0
    while t < t_max:
        h = dt if t < 1.0 else dt * t
        base = (1.0 + sigma) ** (-q)
        acc += base * h
        u = gen.random()
        if u < 1e-16:
            u = 1e-16
        elif u > 1.0 - 1e-16:
            u = 1.0 - 1e-16
        v = math.pi * (u - 0.5)
        w = gen.standard_exponential() + 1e-300
        av = alpha * (v + b)
        z = (
            math.sin(av)
            * math.cos(v) ** (-inv_a)
            * (math.cos(v - av) / w) ** om_a
        )
        sigma += h ** inv_a * z
        t += h
        if (1.0 + sigma) ** (-q) * t * kappa <= rel_tail * acc:
            return acc, True
    return acc, False


def _mode_and_eps(params: StableParams, cfg: PathConfig) -> Tuple[int, float]:
    regime = params.classify()
    if regime is ProcessClass.SUBORDINATOR:
        raise DomainError(
            "the killed walk needs a path that can pass below zero; "
            "for increasing paths use simulate_subordinator_integral"
        )
    if params.alpha == 2.0:
        mode = _MODE_GAUSS
    elif params.alpha == 1.0:
        mode = _MODE_DRIFT if params.rho == 0.0 else _MODE_CAUCHY
    else:
        mode = _MODE_CMS
    eps = cfg.absorption if regime is ProcessClass.SPECTRALLY_POSITIVE else 0.0
    return mode, eps


def _require_finite_qs(params: StableParams, qs: Sequence[float]) -> Tuple[float, ...]:
    out = []
    for q in qs:
        q = float(q)
        spec = FunctionalSpec(params, q)
        _, finite = classify(spec)
        if not finite:
            raise DomainError(
                f"A(alpha={params.alpha:g}, rho={params.rho:g}, q={q:g}) is almost "
                "surely infinite; simulating its accumulation would not converge"
            )
        out.append(q)
    if not out:
        raise DomainError("at least one exponent q is required")
    return tuple(out)


def simulate_killed_functional(
    spec: FunctionalSpec,
    cfg: PathConfig,
    rng: np.random.Generator,
    start: float = 1.0,
) -> RunResult:
    """One killed-path run for the functional described by ``spec``.

    ``start`` scales the starting level (default 1, the normalisation used
    everywhere else); it exists so self-similarity of the scheme itself can
    be exercised.
    """
    if not (start > 0.0 and math.isfinite(start)):
        raise DomainError(f"start level must be positive, got {start!r}")
    _require_finite_qs(spec.params, (spec.q,))
    mode, eps = _mode_and_eps(spec.params, cfg)
    qs = np.asarray([spec.q], dtype=np.float64)
    t, acc, sup, inf, censored, _level = _killed_walk(
        rng,
        mode,
        spec.alpha,
        spec.rho,
        cfg.dt,
        cfg.exponent_for(spec.alpha),
        cfg.dt * _FLOOR_FRACTION,
        eps,
        cfg.t_max,
        qs,
        start,
    )
    return RunResult(
        first_passage_time=float(t),
        functional_value=float(acc[0]),
        stopped_sup=float(sup),
        stopped_inf=float(inf),
        censored=bool(censored),
    )


def simulate_killed_batch(
    params: StableParams,
    qs: Sequence[float],
    cfg: PathConfig,
    n_runs: int,
    seed: int,
    stream: int = 0,
    start: float = 1.0,
) -> BatchResult:
    """A batch of independent killed-path runs with shared accumulators.

    All exponents in ``qs`` are accumulated along the same paths, so one
    batch serves several functionals at once.  Run ``i`` uses
    ``RngStream(seed, stream).substream(i)``.
    """
    if n_runs <= 0:
        raise DomainError(f"n_runs must be positive, got {n_runs!r}")
    if not (start > 0.0 and math.isfinite(start)):
        raise DomainError(f"start level must be positive, got {start!r}")
    qs_t = _require_finite_qs(params, qs)
    mode, eps = _mode_and_eps(params, cfg)
    qs_arr = np.asarray(qs_t, dtype=np.float64)
    aexp = cfg.exponent_for(params.alpha)
    h_floor = cfg.dt * _FLOOR_FRACTION
    base = RngStream(seed=seed, stream=stream)
    n = int(n_runs)
    T = np.empty(n)
    A = np.empty((n, len(qs_t)))
    sup = np.empty(n)
    inf = np.empty(n)
    cens = np.empty(n, dtype=bool)
    lev = np.empty(n)
    for i in range(n):
        gen = base.substream(i).generator()
        t, acc, s, lo, c, x = _killed_walk(
            gen,
            mode,
            params.alpha,
            params.rho,
            cfg.dt,
            aexp,
            h_floor,
            eps,
            cfg.t_max,
            qs_arr,
            start,
        )
        T[i] = t
        A[i] = acc
        sup[i] = s
        inf[i] = lo
        cens[i] = c
        lev[i] = x
    return BatchResult(
        params=params,
        qs=qs_t,
        config=cfg,
        seed=seed,
        stream=stream,
        start=start,
        first_passage_time=T,
        functional_values=A,
        stopped_sup=sup,
        stopped_inf=inf,
        censored=cens,
        final_level=lev,
    )


@dataclass(frozen=True)
class ResolvedBatch:
    """Killed-path samples with every censored run completed.

    Completion uses the walk's Markov property and the process's
    self-similarity: a run censored at level ``y`` continues, in law, as
    ``y`` times an independent fresh run with time scaled by ``y^alpha``.
    The continuation adds ``y^alpha * T'`` to the passage time,
    ``y^(alpha+q) * A'(q)`` to each functional, and folds ``y * sup'`` /
    ``y * inf'`` into the extrema; continuations that censor again are
    completed recursively.  Because every increment of the walk is an exact
    stable draw, the stitched values are samples of the killed-path
    quantities without any horizon truncation; the continuation merely steps
    coarser above its own rescaled unit level, so its extra grid-hole error
    sits at high levels where passage detection and the tracked quantities
    are insensitive.
    """

    params: StableParams
    qs: Tuple[float, ...]
    config: PathConfig
    rounds: int
    first_passage_time: np.ndarray
    functional_values: np.ndarray
    stopped_sup: np.ndarray
    stopped_inf: np.ndarray

    @property
    def n_runs(self) -> int:
        return int(self.first_passage_time.shape[0])

    def functional(self, q: float) -> np.ndarray:
        for j, qj in enumerate(self.qs):
            if qj == q:
                return self.functional_values[:, j]
        raise DomainError(f"exponent q={q!r} was not accumulated; have {self.qs}")


def resolve_censored(batch: BatchResult, max_rounds: int = 64) -> ResolvedBatch:
    """Complete a batch's censored runs by self-similar continuation.

    Each continuation round consumes one fresh stream id above the batch's
    own (so results stay reproducible and disjoint from the base runs as
    long as the batch has fewer than 1_000_003 runs).
    """
    if not isinstance(batch, BatchResult):
        raise DomainError("resolve_censored expects a BatchResult")
    T = batch.first_passage_time.copy()
    A = batch.functional_values.copy()
    sup = batch.stopped_sup.copy()
    inf = batch.stopped_inf.copy()
    alpha = batch.params.alpha
    powers = np.asarray([alpha + q for q in batch.qs])
    idx = np.flatnonzero(batch.censored)
    scale = batch.final_level[idx].copy()
    rounds = 0
    while idx.size:
        if rounds >= max_rounds:
            raise AccuracyError(
                f"{idx.size} runs still censored after {max_rounds} continuation rounds",
                estimate=float(idx.size),
                error_bound=math.inf,
            )
        if np.any(scale <= 0.0):
            raise DomainError("censored run recorded a non-positive final level")
        cont = simulate_killed_batch(
            batch.params,
            batch.qs,
            batch.config,
            idx.size,
            seed=batch.seed,
            stream=batch.stream + 1 + rounds,
            start=1.0,
        )
        T[idx] += scale**alpha * cont.first_passage_time
        A[idx] += scale[:, None] ** powers[None, :] * cont.functional_values
        sup[idx] = np.maximum(sup[idx], scale * cont.stopped_sup)
        inf[idx] = np.minimum(inf[idx], scale * cont.stopped_inf)
        again = cont.censored
        scale = scale[again] * cont.final_level[again]
        idx = idx[again]
        rounds += 1
    return ResolvedBatch(
        params=batch.params,
        qs=batch.qs,
        config=batch.config,
        rounds=rounds,
        first_passage_time=T,
        functional_values=A,
        stopped_sup=sup,
        stopped_inf=inf,
    )


def _check_subordinator_args(alpha: float, q: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"the subordinator integral requires alpha in (0, 1), got {alpha!r}")
    if not (q > alpha):
        raise DomainError(
            f"the subordinator integral converges only for q > alpha, got q={q!r}"
        )


def simulate_subordinator_integral(
    alpha: float,
    q: float,
    cfg: PathConfig,
    rng: np.random.Generator,
) -> float:
    """One draw of ``integral_0^inf (1 + sigma_t)^{-q} dt``, q > alpha.

    The run stops once the sampled-growth tail estimate drops below 1e-4 of
    the accumulated value; if that never happens before ``cfg.t_max`` the
    run is censored and raises :class:`AccuracyError` (heavy perpetuities
    need a larger horizon, which costs only logarithmically many steps).
    """
    _check_subordinator_args(alpha, q)
    value, ok = _subordinator_walk(rng, alpha, q, cfg.dt, cfg.t_max, _TAIL_RTOL)
    if not ok:
        raise AccuracyError(
            f"subordinator integral still above its tail target at t_max={cfg.t_max:g}; "
            "increase t_max",
            estimate=float(value),
            error_bound=math.inf,
        )
    return float(value)


def subordinator_integral_batch(
    alpha: float,
    q: float,
    cfg: PathConfig,
    n_runs: int,
    seed: int,
    stream: int = 0,
) -> np.ndarray:
    """Independent draws of the subordinator integral, one substream per run."""
    _check_subordinator_args(alpha, q)
    if n_runs <= 0:
        raise DomainError(f"n_runs must be positive, got {n_runs!r}")
    base = RngStream(seed=seed, stream=stream)
    out = np.empty(int(n_runs))
    for i in range(int(n_runs)):
        gen = base.substream(i).generator()
        value, ok = _subordinator_walk(gen, alpha, q, cfg.dt, cfg.t_max, _TAIL_RTOL)
        if not ok:
            raise AccuracyError(
                f"subordinator integral run {i} censored at t_max={cfg.t_max:g}; "
                "increase t_max",
                estimate=float(value),
                error_bound=math.inf,
            )
        out[i] = value
    return out
