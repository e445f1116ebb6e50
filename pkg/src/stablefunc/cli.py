"""Command-line entry point: classification, sampling, transforms, verification.

Output goes to standard output as JSON by default; ``--format csv`` emits a
flat table instead, and ``--output`` redirects either format to a file.
Both formats carry a ``schema_version`` marker (a top-level JSON field, a
leading CSV column) and every numeric row repeats the parameter tuple it
was computed from, so rows remain auditable out of context.

All randomness is drawn from explicitly seeded streams: identical argument
vectors produce byte-identical output.  When ``--seed`` is absent the seed
is read from the ``STABLEFUNC_SEED`` environment variable, falling back
to 0.

Exit codes: 0 on success (and, for ``verify``, all checks passing), 1 when
a verification suite reports a failure or a computation cannot reach its
accuracy target, 2 on usage errors (unknown flags, inadmissible parameter
combinations); the accompanying message names the violated requirement.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats as _scipy_stats

from .specfun import AccuracyError, DomainError
from .distributions import RngStream, StableParams
from .beta_product import (
    BetaProductParams,
    identity_catalog,
    mellin_T,
    mellin_T_via_double_gamma,
)
from .functional_law import (
    FunctionalSpec,
    classify,
    corollary_identities,
    density_A,
    explicit_identities,
    law_of_A,
    mellin_A,
    mittag_leffler_passage_identity,
    sample_A,
    spectrally_positive_passage_identity,
    stopped_extrema_laws,
)
from .laws import const, gamma_rv, product, reciprocal
from .path_oracle import (
    PathConfig,
    resolve_censored,
    simulate_killed_batch,
    subordinator_integral_batch,
)
from .stat_tests import TestReport, verify_identity

SCHEMA_VERSION = "1"
SEED_ENV_VAR = "STABLEFUNC_SEED"

#: inadmissible rho values within this distance of an admissibility boundary
#: snap to the boundary (decimal shorthand such as 0.3333 for the spectrally
#: positive edge 1 - 1/alpha); anything farther away is rejected.
RHO_SNAP_TOL = 5e-4

SUITES = ("prop1", "prop2", "theorem", "corollaries", "explicit", "oracle")

__all__ = ["main", "run", "SCHEMA_VERSION", "SEED_ENV_VAR", "SUITES"]


class _UsageError(Exception):
    """Raised for malformed invocations; mapped to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# parameter resolution
# ---------------------------------------------------------------------------

def _snap_rho(alpha: float, rho: float) -> float:
    """Admissible rho as given; inadmissible rho snapped to a nearby boundary.

    Users often type decimal shorthand (``0.3333``) for an exact boundary
    such as ``1 - 1/alpha``; values within ``RHO_SNAP_TOL`` of a boundary
    are interpreted as that boundary, anything else is rejected with the
    admissibility invariant in the message.
    """
    try:
        StableParams(alpha, rho)
        return rho
    except DomainError:
        pass
    if alpha == 2.0:
        boundaries = [0.5]
    elif alpha > 1.0:
        boundaries = [1.0 - 1.0 / alpha, 1.0 / alpha]
    elif alpha == 1.0:
        boundaries = [0.0]
    else:
        boundaries = [0.0, 1.0]
    nearest = min(boundaries, key=lambda b: abs(rho - b))
    if abs(rho - nearest) <= RHO_SNAP_TOL:
        return nearest
    StableParams(alpha, rho)  # re-raise the admissibility error
    raise AssertionError("unreachable")


def _stable_params(args: argparse.Namespace) -> Tuple[StableParams, float]:
    alpha = float(args.alpha)
    requested = float(args.rho)
    rho = _snap_rho(alpha, requested)
    return StableParams(alpha, rho), requested


def _functional_spec(args: argparse.Namespace) -> Tuple[FunctionalSpec, float]:
    params, requested = _stable_params(args)
    return FunctionalSpec(params, float(args.q)), requested


def _resolve_seed(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(
            f"environment variable {SEED_ENV_VAR} must hold an integer seed, "
            f"got {raw!r}"
        )


def _regime_label(regime) -> str:
    return "".join(part.capitalize() for part in regime.value.split("_"))


def _grid_values(
    single: Optional[List[float]], grid: Optional[List[float]], what: str
) -> List[float]:
    if (single is None or not single) and grid is None:
        raise _UsageError(f"provide --{what} (repeatable) or --{what}-grid LO HI N")
    if single and grid is not None:
        raise _UsageError(f"--{what} and --{what}-grid are mutually exclusive")
    if grid is not None:
        lo, hi, count_f = grid
        count = int(count_f)
        if count < 2 or count != count_f:
            raise _UsageError(f"--{what}-grid needs an integer point count >= 2")
        if not (lo < hi):
            raise _UsageError(f"--{what}-grid needs LO < HI, got {lo} >= {hi}")
        return [float(v) for v in np.linspace(lo, hi, count)]
    return [float(v) for v in single]


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _render(payload: dict, columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["schema_version", *columns])
    for row in payload["rows"]:
        writer.writerow([SCHEMA_VERSION, *(_csv_cell(row.get(col)) for col in columns)])
    return buf.getvalue()


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _payload(command: str, **fields) -> dict:
    data = {"schema_version": SCHEMA_VERSION, "command": command}
    data.update(fields)
    return data


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload, csv columns, exit code)
# ---------------------------------------------------------------------------

Handler = Callable[[argparse.Namespace], Tuple[dict, Sequence[str], int]]


def _cmd_classify(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    spec, requested = _functional_spec(args)
    regime, finite = classify(spec)
    row = {
        "alpha": spec.alpha,
        "rho": spec.rho,
        "q": spec.q,
        "regime": _regime_label(regime),
        "finite": bool(finite),
        "finiteness": "finite" if finite else "infinite",
    }
    payload = _payload("classify", rows=[row])
    if requested != spec.rho:
        payload["rho_requested"] = requested
    return payload, ["alpha", "rho", "q", "regime", "finite", "finiteness"], 0


def _cmd_mellin(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    spec, requested = _functional_spec(args)
    values = _grid_values(args.s, args.s_grid, "s")
    rows = []
    for s in values:
        rows.append(
            {
                "alpha": spec.alpha,
                "rho": spec.rho,
                "q": spec.q,
                "s": s,
                "value": float(mellin_A(spec, s)),
            }
        )
    payload = _payload("mellin", rows=rows)
    if requested != spec.rho:
        payload["rho_requested"] = requested
    return payload, ["alpha", "rho", "q", "s", "value"], 0


def _cmd_density(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    spec, requested = _functional_spec(args)
    values = _grid_values(args.x, args.x_grid, "x")
    rows = []
    for x in values:
        rows.append(
            {
                "alpha": spec.alpha,
                "rho": spec.rho,
                "q": spec.q,
                "x": x,
                "density": float(density_A(spec, x)),
            }
        )
    payload = _payload("density", rows=rows)
    if requested != spec.rho:
        payload["rho_requested"] = requested
    return payload, ["alpha", "rho", "q", "x", "density"], 0


def _cmd_sample(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    spec, requested = _functional_spec(args)
    n = int(args.n)
    if n <= 0:
        raise _UsageError(f"--n must be a positive draw count, got {args.n}")
    seed = _resolve_seed(args)
    stream = int(args.stream)
    rng = RngStream(seed, stream).generator()
    draws = sample_A(spec, float(args.log_tol), rng, n)
    rows = [
        {
            "alpha": spec.alpha,
            "rho": spec.rho,
            "q": spec.q,
            "index": i,
            "value": float(v),
        }
        for i, v in enumerate(np.asarray(draws, dtype=float))
    ]
    payload = _payload(
        "sample",
        rows=rows,
        seed=seed,
        stream=stream,
        log_tol=float(args.log_tol),
    )
    if requested != spec.rho:
        payload["rho_requested"] = requested
    return payload, ["alpha", "rho", "q", "index", "value"], 0


def _cmd_extrema(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    params, requested = _stable_params(args)
    sup_law, inf_law = stopped_extrema_laws(params)
    rows = [
        {
            "alpha": params.alpha,
            "rho": params.rho,
            "side": "sup",
            "law": None if sup_law is None else sup_law.to_json(),
            "note": "almost surely infinite" if sup_law is None else "",
        },
        {
            "alpha": params.alpha,
            "rho": params.rho,
            "side": "inf",
            "law": inf_law.to_json(),
            "note": "",
        },
    ]
    payload = _payload("extrema", rows=rows)
    if requested != params.rho:
        payload["rho_requested"] = requested
    return payload, ["alpha", "rho", "side", "law", "note"], 0


def _cmd_oracle(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    n = int(args.n)
    if n <= 0:
        raise _UsageError(f"--n must be a positive run count, got {args.n}")
    seed = _resolve_seed(args)
    stream = int(args.stream)
    cfg = PathConfig(
        dt=float(args.dt), absorption=float(args.absorption), t_max=float(args.t_max)
    )
    if args.subordinator:
        alpha = float(args.alpha)
        q = float(args.q)
        values = subordinator_integral_batch(alpha, q, cfg, n, seed, stream)
        rows = [
            {"alpha": alpha, "q": q, "run": i, "value": float(v)}
            for i, v in enumerate(values)
        ]
        payload = _payload(
            "oracle",
            mode="subordinator",
            rows=rows,
            seed=seed,
            stream=stream,
            dt=cfg.dt,
            t_max=cfg.t_max,
        )
        return payload, ["alpha", "q", "run", "value"], 0

    spec, requested = _functional_spec(args)
    batch = simulate_killed_batch(spec.params, (spec.q,), cfg, n, seed, stream)
    resolved = bool(args.resolve_censored)
    if resolved:
        result = resolve_censored(batch)
        times = result.first_passage_time
        functionals = result.functional_values[:, 0]
        sups = result.stopped_sup
        infs = result.stopped_inf
        censored = np.zeros(n, dtype=bool)
        extra = {"stitch_rounds": result.rounds}
    else:
        times = batch.first_passage_time
        functionals = batch.functional_values[:, 0]
        sups = batch.stopped_sup
        infs = batch.stopped_inf
        censored = batch.censored
        extra = {}
    rows = [
        {
            "alpha": spec.alpha,
            "rho": spec.rho,
            "q": spec.q,
            "run": i,
            "first_passage_time": float(times[i]),
            "functional_value": float(functionals[i]),
            "stopped_sup": float(sups[i]),
            "stopped_inf": float(infs[i]),
            "censored": bool(censored[i]),
        }
        for i in range(n)
    ]
    payload = _payload(
        "oracle",
        mode="killed",
        rows=rows,
        seed=seed,
        stream=stream,
        dt=cfg.dt,
        t_max=cfg.t_max,
        absorption=cfg.absorption,
        n_censored=int(batch.n_censored),
        resolved=resolved,
        **extra,
    )
    if requested != spec.rho:
        payload["rho_requested"] = requested
    columns = [
        "alpha",
        "rho",
        "q",
        "run",
        "first_passage_time",
        "functional_value",
        "stopped_sup",
        "stopped_inf",
        "censored",
    ]
    return payload, columns, 0


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _identity_report(ident, *, n: int, seed: int, rtol: float) -> TestReport:
    """Dispatch a functional identity to its natural verification mode."""
    if ident.sampling_only:
        return verify_identity(
            ident.lhs,
            ident.rhs,
            "ks",
            n=n,
            seed=seed,
            rhs_shift=ident.rhs_shift,
            name=ident.name,
            metadata={"params": ident.params},
        )
    return verify_identity(
        ident.lhs,
        ident.rhs,
        "mellin-grid",
        rtol=rtol,
        name=ident.name,
        metadata={"params": ident.params},
    )


def _suite_prop1(seed: int, n: int) -> List[TestReport]:
    """Analytic product identities: defaults plus seeded random parameters."""
    rng = RngStream(seed, 11).generator()
    reports: List[TestReport] = []
    for ident in identity_catalog():
        reports.append(
            verify_identity(
                ident.lhs,
                ident.rhs,
                "mellin-grid",
                rtol=1e-8,
                scale_free=ident.scale_free,
                name=f"{ident.name}[defaults]",
                metadata={"params": ident.default_params},
            )
        )
        draws = 0
        attempts = 0
        while draws < 3 and attempts < 40:
            attempts += 1
            params = {k: float(v) for k, v in ident.sample_params(rng).items()}
            lhs, rhs = ident.instantiate(**params)
            if ident.scale_free and not lhs.strip().intersect(rhs.strip()).contains(1.0):
                continue
            draws += 1
            reports.append(
                verify_identity(
                    lhs,
                    rhs,
                    "mellin-grid",
                    rtol=1e-8,
                    scale_free=ident.scale_free,
                    name=f"{ident.name}[{draws}]",
                    metadata={"params": params},
                )
            )
    return reports


def _suite_prop2(seed: int, n: int) -> List[TestReport]:
    """The two transform routes (quadrature vs double gamma) must agree."""
    rng = RngStream(seed, 12).generator()
    reports: List[TestReport] = []
    for i in range(20):
        a = 0.1 + 3.9 * rng.random()
        b = 0.2 + 2.8 * rng.random()
        c = 0.05 + 2.95 * rng.random()
        s = -a + 0.2 + 4.0 * rng.random()
        p = BetaProductParams(a, b, c)
        quadrature = mellin_T(p, s)
        closed_form = mellin_T_via_double_gamma(p, s)
        gap = abs(quadrature - closed_form) / max(abs(quadrature), abs(closed_form))
        reports.append(
            TestReport(
                f"dual_route[{i}]",
                gap,
                1e-6,
                (),
                {"a": a, "b": b, "c": c, "s": s},
            )
        )
    return reports


def _suite_theorem(seed: int, n: int) -> List[TestReport]:
    """The functional law pinned to classical closed forms."""
    reports: List[TestReport] = []
    for q in (0.0, 1.0, -1.0):
        shape = 1.0 / (q + 2.0)
        pinned = product(
            const((q + 2.0) ** -2.0), reciprocal(gamma_rv(shape))
        )
        reports.append(
            verify_identity(
                law_of_A(FunctionalSpec(StableParams(2.0, 0.5), q)),
                pinned,
                "mellin-grid",
                rtol=1e-8,
                name=f"brownian_functional[q={q:g}]",
                metadata={"alpha": 2.0, "rho": 0.5, "q": q},
            )
        )
    reports.append(
        verify_identity(
            law_of_A(FunctionalSpec(StableParams(1.0, 0.0), 3.0)),
            const(0.25),
            "mellin-grid",
            rtol=1e-12,
            name="drift_functional[q=3]",
            metadata={"alpha": 1.0, "rho": 0.0, "q": 3.0},
        )
    )
    for ident in (
        spectrally_positive_passage_identity(1.5),
        mittag_leffler_passage_identity(0.5),
    ):
        reports.append(_identity_report(ident, n=n, seed=seed, rtol=1e-8))
    return reports


def _suite_corollaries(seed: int, n: int) -> List[TestReport]:
    return [
        _identity_report(ident, n=n, seed=seed, rtol=1e-6)
        for ident in corollary_identities()
    ]


def _suite_explicit(seed: int, n: int) -> List[TestReport]:
    return [
        _identity_report(ident, n=n, seed=seed, rtol=1e-6)
        for ident in explicit_identities()
    ]


def _suite_oracle(seed: int, n: int) -> List[TestReport]:
    """Fast path-simulation spot checks against exact laws."""
    reports: List[TestReport] = []

    cfg = PathConfig(dt=1e-3, t_max=1e3)
    batch = simulate_killed_batch(StableParams(2.0, 0.5), (0.0,), cfg, 4000, seed, 0)
    stitched = resolve_censored(batch)
    stat = float(
        _scipy_stats.kstest(
            stitched.first_passage_time,
            lambda t: _scipy_stats.gamma.sf(1.0 / (4.0 * t), 0.5),
        ).statistic
    )
    reports.append(
        TestReport(
            "brownian_passage_walk",
            stat,
            0.04,
            (4000,),
            {"alpha": 2.0, "rho": 0.5, "q": 0.0, "dt": cfg.dt, "seed": seed},
        )
    )

    drift = simulate_killed_batch(StableParams(1.0, 0.0), (3.0,), cfg, 64, seed, 50)
    gap = max(
        float(np.max(np.abs(drift.first_passage_time - 1.0))),
        float(np.max(np.abs(drift.functional_values[:, 0] - 0.25))),
    )
    reports.append(
        TestReport(
            "drift_only_walk",
            gap,
            5e-3,
            (64,),
            {"alpha": 1.0, "rho": 0.0, "q": 3.0, "dt": cfg.dt, "seed": seed},
        )
    )

    sub_cfg = PathConfig(dt=1e-3, t_max=1e6)
    values = subordinator_integral_batch(0.5, 1.0, sub_cfg, 3000, seed, 100)
    stat = float(
        _scipy_stats.kstest(
            values, lambda x: 1.0 - np.exp(-((x / 2.0) ** 2))
        ).statistic
    )
    reports.append(
        TestReport(
            "subordinator_weibull_walk",
            stat,
            0.04,
            (3000,),
            {"alpha": 0.5, "q": 1.0, "dt": sub_cfg.dt, "seed": seed},
        )
    )
    return reports


_SUITE_RUNNERS: Dict[str, Callable[[int, int], List[TestReport]]] = {
    "prop1": _suite_prop1,
    "prop2": _suite_prop2,
    "theorem": _suite_theorem,
    "corollaries": _suite_corollaries,
    "explicit": _suite_explicit,
    "oracle": _suite_oracle,
}


def _cmd_verify(args: argparse.Namespace) -> Tuple[dict, Sequence[str], int]:
    suite = args.suite
    if suite not in _SUITE_RUNNERS:
        raise _UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    seed = _resolve_seed(args)
    n = int(args.n)
    if n <= 0:
        raise _UsageError(f"--n must be a positive draw count, got {args.n}")
    reports = _SUITE_RUNNERS[suite](seed, n)
    all_passed = all(r.passed for r in reports)
    rows = []
    for r in reports:
        rows.append(
            {
                "suite": suite,
                "name": r.name,
                "statistic": r.statistic,
                "threshold": r.threshold,
                "passed": r.passed,
                "sample_sizes": list(r.sample_sizes),
                "metadata": r.as_dict()["metadata"],
            }
        )
    payload = _payload(
        "verify", suite=suite, seed=seed, all_passed=all_passed, rows=rows
    )
    columns = [
        "suite",
        "name",
        "statistic",
        "threshold",
        "passed",
        "sample_sizes",
        "metadata",
    ]
    return payload, columns, 0 if all_passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="output format (default: json)",
    )
    sub.add_argument(
        "--output",
        default=None,
        help="write output to this path instead of standard output",
    )


def _add_param_flags(sub: argparse.ArgumentParser, with_q: bool = True) -> None:
    sub.add_argument("--alpha", type=float, required=True, help="stability index in (0, 2]")
    sub.add_argument(
        "--rho",
        type=float,
        required=True,
        help="positivity parameter; values within 5e-4 outside the admissible "
        "interval snap to the nearest boundary",
    )
    if with_q:
        sub.add_argument(
            "--q", type=float, required=True, help="homogeneity exponent of |L|^q"
        )


def _add_seed_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"random seed (default: ${SEED_ENV_VAR} if set, else 0)",
    )
    sub.add_argument(
        "--stream", type=int, default=0, help="independent substream index (default 0)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="stablefunc",
        description=(
            "Exact laws, Mellin transforms, samplers and Monte Carlo oracles for "
            "power integrals of stable processes killed at first passage."
        ),
        epilog=(
            "Determinism: identical argument vectors produce byte-identical "
            f"output. The default seed comes from ${SEED_ENV_VAR} when --seed "
            "is omitted (0 if unset)."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser(
        "classify", help="process regime and functional finiteness"
    )
    _add_param_flags(sub)
    _add_output_flags(sub)

    sub = commands.add_parser("mellin", help="E[A^s] on one or more points s")
    _add_param_flags(sub)
    sub.add_argument(
        "--s", type=float, action="append", help="evaluation point (repeatable)"
    )
    sub.add_argument(
        "--s-grid",
        type=float,
        nargs=3,
        metavar=("LO", "HI", "N"),
        help="evenly spaced evaluation points",
    )
    _add_output_flags(sub)

    sub = commands.add_parser("density", help="density of A on one or more points x")
    _add_param_flags(sub)
    sub.add_argument(
        "--x", type=float, action="append", help="evaluation point (repeatable)"
    )
    sub.add_argument(
        "--x-grid",
        type=float,
        nargs=3,
        metavar=("LO", "HI", "N"),
        help="evenly spaced evaluation points",
    )
    _add_output_flags(sub)

    sub = commands.add_parser("sample", help="independent draws from the law of A")
    _add_param_flags(sub)
    sub.add_argument("--n", type=int, required=True, help="number of draws")
    sub.add_argument(
        "--log-tol",
        type=float,
        default=1e-3,
        help="Kolmogorov truncation tolerance of the product sampler (default 1e-3)",
    )
    _add_seed_flags(sub)
    _add_output_flags(sub)

    sub = commands.add_parser("extrema", help="laws of the stopped supremum and infimum")
    _add_param_flags(sub, with_q=False)
    _add_output_flags(sub)

    sub = commands.add_parser("oracle", help="raw Monte Carlo path-simulation batch")
    _add_param_flags(sub)
    sub.add_argument("--n", type=int, required=True, help="number of independent runs")
    sub.add_argument("--dt", type=float, default=1e-4, help="base step size (default 1e-4)")
    sub.add_argument(
        "--t-max", type=float, default=1e3, help="simulation horizon (default 1e3)"
    )
    sub.add_argument(
        "--absorption",
        type=float,
        default=1e-4,
        help="absorption threshold for continuous downward passage (default 1e-4)",
    )
    sub.add_argument(
        "--resolve-censored",
        action="store_true",
        help="extend censored runs by rescaled continuation instead of reporting them",
    )
    sub.add_argument(
        "--subordinator",
        action="store_true",
        help="integrate (1+subordinator)^-q over the half line instead (alpha<1, q>alpha)",
    )
    _add_seed_flags(sub)
    _add_output_flags(sub)

    sub = commands.add_parser("verify", help="run a verification suite")
    sub.add_argument("suite", choices=SUITES, help="which suite to run")
    sub.add_argument(
        "--n",
        type=int,
        default=30_000,
        help="draws per side for sampling-mode checks (default 30000)",
    )
    _add_seed_flags(sub)
    _add_output_flags(sub)

    return parser


_HANDLERS: Dict[str, Handler] = {
    "classify": _cmd_classify,
    "mellin": _cmd_mellin,
    "density": _cmd_density,
    "sample": _cmd_sample,
    "extrema": _cmd_extrema,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute one invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help and friends
        code = exc.code
        return int(code) if code is not None else 0
    try:
        payload, columns, code = _HANDLERS[args.command](args)
        text = _render(payload, columns, args.format)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except AccuracyError as exc:
        sys.stderr.write(f"computation failed: {exc}\n")
        return 1
    _emit(text, args.output)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
