"""Independent cross-checks of every closed form in the package.

Each check pits a closed-form quantity against a route that shares no code
with it: nested quadrature of the convolution integral for sum densities,
adaptive quadrature for normalizations, moments, and MTTFs, and Monte Carlo
simulation with a Kolmogorov-Smirnov distance for whole distributions.  The
two routes are never collapsed; a disagreement fails the check rather than
being patched over.

verify_all() runs the registry and reports one record per check with the
measured value and its bound.  Quadrature non-convergence is reported as an
"error" status instead of being silently swallowed.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .family import LINDLEY, MEMBERS, RAM_AWADH, DistSpec, member_by_name
from .numerics import QuadratureError, integrate
from .reliability import exponential_reliability, lindley_mttf, lindley_reliability
from .sums import SumSpec

__all__ = [
    "CheckResult",
    "DEFAULT_SEEDS",
    "KS_99_COEFFICIENT",
    "KsReport",
    "VerificationReport",
    "VerifyConfig",
    "convolution_oracle_pdf",
    "ks_statistic",
    "sample_sum",
    "verify_all",
]

# Coefficient of the asymptotic two-sided Kolmogorov band at the 99% level.
KS_99_COEFFICIENT = 1.63

# Documented fixed seeds for the reproducible Monte Carlo checks.
DEFAULT_SEEDS = (7, 19, 37)

_THETAS = (0.5, 1.0, 2.0)
_SUM_NS = (1, 2, 3, 5, 10)
_ORACLE_NS = (2, 3)
_STANDBY_THETAS = (0.1, 0.5, 1.0, 3.0)
_STANDBY_N = 5
_GRID_POINTS = 101
_T_MAX = 100.0

# Two-decimal reference MTTFs at theta = 0.1, 0.5, 1, 3 with n = 5 units.
_MTTF_REFERENCE = {
    "lindley": (95.45, 16.67, 7.5, 2.08),
    "exponential": (50.0, 10.0, 5.0, 1.67),
}


@dataclass(frozen=True)
class KsReport:
    """Result of a Kolmogorov-Smirnov comparison of samples against a cdf."""

    sample_count: int
    ks_distance: float
    threshold: float
    passed: bool


def ks_statistic(
    samples: Sequence[float] | np.ndarray,
    cdf: Callable[[np.ndarray], np.ndarray],
    threshold: float | None = None,
) -> KsReport:
    """Two-sided KS distance of a sample against a cdf, with a pass threshold.

    The distance is max over order statistics x_(i) of
    max(i/N - F(x_(i)), F(x_(i)) - (i-1)/N); the default threshold is the
    99% Kolmogorov band 1.63/sqrt(N).  cdf must accept an ndarray.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    count = x.size
    if count == 0:
        raise ValueError("samples must be nonempty")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, count + 1, dtype=float)
    distance = float(max((i / count - f).max(), (f - (i - 1.0) / count).max()))
    if threshold is None:
        threshold = KS_99_COEFFICIENT / math.sqrt(count)
    return KsReport(count, distance, float(threshold), distance <= threshold)


def convolution_oracle_pdf(spec: SumSpec, x: float, tol: float = 1e-9) -> float:
    """Density of a 2- or 3-fold sum by direct nested quadrature.

    Integrates f(u)f(x-u) (and the extra layer for n = 3) with the adaptive
    rule; shares no code with the closed-form series in SumSpec.pdf, so the
    two may be compared as independent routes to the same number.
    """
    if spec.n not in (2, 3):
        raise ValueError(f"the convolution oracle supports n in {{2, 3}}, got {spec.n}")
    x = float(x)
    if x <= 0.0:
        return 0.0
    d = spec.dist
    c, a, k, theta = d.norm_const, d.alpha, d.member.degree, d.theta

    def f(u: float) -> float:
        return c * (a + u**k) * math.exp(-theta * u)

    if spec.n == 2:
        return integrate(lambda u: f(u) * f(x - u), 0.0, x, tol).value

    inner_tol = tol * 0.1

    def partial(u1: float) -> float:
        width = x - u1
        return integrate(lambda u2: f(u2) * f(width - u2), 0.0, width, inner_tol).value

    return integrate(lambda u1: f(u1) * partial(u1), 0.0, x, tol).value


def sample_sum(
    spec: SumSpec,
    rng: np.random.Generator,
    size: int | None = None,
) -> float | np.ndarray:
    """Simulate sums of n IID family draws via the exact composition sampler."""
    if size is None:
        return float(sample_sum(spec, rng, size=1)[0])
    if not (isinstance(size, int) and size >= 1):
        raise ValueError(f"size must be a positive integer, got {size!r}")
    draws = spec.dist.sample(rng, (size, spec.n))
    return draws.sum(axis=1)


@dataclass(frozen=True)
class VerifyConfig:
    """Settings for verify_all: which checks run and how hard they push."""

    members: tuple[str, ...] | None = None
    only: tuple[str, ...] | None = None
    quad_tol: float = 1e-10
    sample_count: int = 1_000_000
    seeds: tuple[int, ...] = DEFAULT_SEEDS


@dataclass(frozen=True)
class CheckResult:
    """One verification record: the measured value against its bound."""

    check_id: str
    status: str  # "pass", "fail", or "error"
    value: float
    bound: float
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """All check results from one verify_all run."""

    results: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_lines(self) -> list[str]:
        lines = []
        for r in self.results:
            suffix = f"  ({r.detail})" if r.detail else ""
            lines.append(
                f"{r.status.upper():5s} {r.check_id:28s} "
                f"value={r.value:.6g} bound={r.bound:.6g}{suffix}"
            )
        return lines

    def to_json(self) -> str:
        records = [
            {
                "check_id": r.check_id,
                "status": r.status,
                "value": r.value if math.isfinite(r.value) else None,
                "bound": r.bound if math.isfinite(r.bound) else None,
            }
            for r in self.results
        ]
        return json.dumps(records, indent=2)


def _sum_scale(spec: SumSpec) -> float:
    # change-of-variable hint only; does not bias the quadrature value
    return max(1.0, spec.mean())


def _check_mttf_reference() -> list[tuple[str, Callable[[], tuple[float, float]]]]:
    def run(model: str) -> Callable[[], tuple[float, float]]:
        def check() -> tuple[float, float]:
            worst = 0.0
            for theta, expected in zip(_STANDBY_THETAS, _MTTF_REFERENCE[model]):
                if model == "lindley":
                    got = lindley_mttf(theta, _STANDBY_N)
                else:
                    got = _STANDBY_N / theta
                worst = max(worst, abs(got - expected))
            return worst, 0.005
        return check

    return [(f"mttf-reference/{m}", run(m)) for m in ("lindley", "exponential")]


def _check_dominance() -> tuple[float, float]:
    grid = np.linspace(0.0, _T_MAX, _GRID_POINTS)
    worst = -math.inf
    for theta in _STANDBY_THETAS:
        for t in grid:
            gap = exponential_reliability(theta, _STANDBY_N, float(t)) - lindley_reliability(
                theta, _STANDBY_N, float(t)
            )
            worst = max(worst, gap)
    return worst, 0.0


def _check_dual_tail() -> tuple[float, float]:
    grid = np.linspace(0.0, _T_MAX, _GRID_POINTS)
    worst = 0.0
    for theta in _STANDBY_THETAS:
        spec = SumSpec(DistSpec(LINDLEY, theta), _STANDBY_N)
        mixture_tail = np.asarray(spec.survival(grid), dtype=float)
        for t, reference in zip(grid, mixture_tail):
            worst = max(worst, abs(lindley_reliability(theta, _STANDBY_N, float(t)) - reference))
    return worst, 1e-10


def _check_dual_mttf(quad_tol: float) -> tuple[float, float]:
    worst = 0.0
    for theta in _STANDBY_THETAS:
        for n in range(1, 6):
            closed = lindley_mttf(theta, n)
            numeric = integrate(
                lambda t: lindley_reliability(theta, n, t),
                0.0,
                math.inf,
                max(quad_tol, 1e-12),
                scale=closed,
            ).value
            worst = max(worst, abs(numeric - closed) / closed)
    return worst, 1e-6


def _check_convolution(member_name: str) -> tuple[float, float]:
    member = member_by_name(member_name)
    worst = 0.0
    for theta in _THETAS:
        for n in _ORACLE_NS:
            spec = SumSpec(DistSpec(member, theta), n)
            grid = np.linspace(0.0, 5.0 * spec.mean(), 12)[1:-1]
            for x in grid:
                oracle = convolution_oracle_pdf(spec, float(x))
                closed = spec.pdf(float(x))
                worst = max(worst, abs(closed - oracle) / abs(oracle))
    return worst, 1e-6


def _check_normalization(member_name: str, quad_tol: float) -> tuple[float, float]:
    member = member_by_name(member_name)
    worst = 0.0
    for theta in _THETAS:
        for n in _SUM_NS:
            spec = SumSpec(DistSpec(member, theta), n)
            mass = integrate(
                spec.pdf, 0.0, math.inf, quad_tol, scale=_sum_scale(spec)
            ).value
            worst = max(worst, abs(mass - 1.0))
    return worst, 1e-8


def _check_moments(member_name: str, quad_tol: float) -> tuple[float, float]:
    member = member_by_name(member_name)
    worst = 0.0
    for theta in _THETAS:
        for n in _SUM_NS:
            spec = SumSpec(DistSpec(member, theta), n)
            scale = _sum_scale(spec)
            for m in range(1, 5):
                closed = spec.moment(m)
                numeric = integrate(
                    lambda x: x**m * spec.pdf(x),
                    0.0,
                    math.inf,
                    max(quad_tol, 1e-11),
                    scale=scale,
                ).value
                worst = max(worst, abs(closed - numeric) / closed)
    return worst, 1e-6


def _check_moment_forms(member_name: str) -> tuple[float, float]:
    member = member_by_name(member_name)
    worst = 0.0
    for theta in _THETAS:
        for n in range(1, 6):
            spec = SumSpec(DistSpec(member, theta), n)
            for m in range(4):
                mixture_form = spec.moment(m)
                series_form = spec.moment_series(m)
                worst = max(worst, abs(series_form - mixture_form) / mixture_form)
    return worst, 1e-10


def _check_ks(member_name: str, n: int, cfg: VerifyConfig) -> tuple[float, float]:
    member = member_by_name(member_name)
    spec = SumSpec(DistSpec(member, 1.0), n)
    worst = 0.0
    threshold = KS_99_COEFFICIENT / math.sqrt(cfg.sample_count)
    for seed in cfg.seeds:
        rng = np.random.default_rng(seed)
        samples = sample_sum(spec, rng, cfg.sample_count)
        report = ks_statistic(samples, spec.cdf, threshold)
        worst = max(worst, report.ks_distance)
    return worst, threshold


def _check_mc_moments(member_name: str, n: int, cfg: VerifyConfig) -> tuple[float, float]:
    member = member_by_name(member_name)
    spec = SumSpec(DistSpec(member, 1.0), n)
    exact = {m: spec.moment(m) for m in range(1, 5)}
    worst = 0.0
    for seed in cfg.seeds:
        rng = np.random.default_rng(seed)
        samples = sample_sum(spec, rng, cfg.sample_count)
        for m in (1, 2):
            powered = samples if m == 1 else samples * samples
            se = math.sqrt((exact[2 * m] - exact[m] ** 2) / cfg.sample_count)
            z = abs(float(powered.mean()) - exact[m]) / se
            worst = max(worst, z)
    return worst, 4.0


def _check_stability(quad_tol: float) -> tuple[float, float]:
    spec = SumSpec(DistSpec(RAM_AWADH, 1.0), 50)
    grid = np.linspace(0.0, 500.0, 1001)[1:]
    densities = np.array([spec.pdf(float(x)) for x in grid])
    tails = np.asarray(spec.survival(grid), dtype=float)
    if not (np.all(np.isfinite(densities)) and np.all(np.isfinite(tails))):
        raise ArithmeticError("non-finite density or survival value in the deep-sum regime")
    if np.any(densities < 0.0):
        raise ArithmeticError("negative density value in the deep-sum regime")
    mass = integrate(spec.pdf, 0.0, math.inf, quad_tol, scale=_sum_scale(spec)).value
    return abs(mass - 1.0), 1e-6


def _check_reduction_pdf() -> tuple[float, float]:
    worst = 0.0
    for member in MEMBERS:
        for theta in _THETAS:
            dist = DistSpec(member, theta)
            spec = SumSpec(dist, 1)
            for x in np.linspace(0.0, 10.0 / theta, 21):
                direct = float(dist.pdf(float(x)))
                series = spec.pdf(float(x))
                worst = max(worst, abs(series - direct) / direct)
    return worst, 1e-12


def _check_reduction_weights() -> tuple[float, float]:
    worst = 0.0
    for member in MEMBERS:
        for theta in _THETAS:
            for n in range(1, 21):
                mixture = SumSpec(DistSpec(member, theta), n).mixture()
                worst = max(worst, abs(math.fsum(mixture.weights) - 1.0))
    return worst, 1e-10


def _build_registry(cfg: VerifyConfig) -> list[tuple[str, Callable[[], tuple[float, float]]]]:
    if cfg.members is None:
        members = [m.name for m in MEMBERS]
    else:
        members = [member_by_name(name).name for name in cfg.members]

    registry: list[tuple[str, Callable[[], tuple[float, float]]]] = []
    registry.extend(_check_mttf_reference())
    registry.append(("dominance", _check_dominance))
    registry.append(("lindley-dual/tail", _check_dual_tail))
    registry.append(("lindley-dual/mttf", lambda: _check_dual_mttf(cfg.quad_tol)))
    for name in members:
        lower = name.lower()
        registry.append((f"convolution/{lower}", lambda n=name: _check_convolution(n)))
        registry.append(
            (f"normalization/{lower}", lambda n=name: _check_normalization(n, cfg.quad_tol))
        )
        registry.append((f"moments/{lower}", lambda n=name: _check_moments(n, cfg.quad_tol)))
        registry.append((f"moment-forms/{lower}", lambda n=name: _check_moment_forms(n)))
        for units in (2, 5):
            registry.append(
                (f"ks/{lower}/n{units}", lambda n=name, u=units: _check_ks(n, u, cfg))
            )
            registry.append(
                (f"mc-moments/{lower}/n{units}", lambda n=name, u=units: _check_mc_moments(n, u, cfg))
            )
    registry.append(("stability", lambda: _check_stability(cfg.quad_tol)))
    registry.append(("reductions/pdf", _check_reduction_pdf))
    registry.append(("reductions/weights", _check_reduction_weights))

    if cfg.only is not None:
        wanted = tuple(cfg.only)
        registry = [
            (check_id, fn)
            for check_id, fn in registry
            if any(check_id == w or check_id.startswith(w) for w in wanted)
        ]
    return registry


def verify_all(config: VerifyConfig | None = None) -> VerificationReport:
    """Run every registered cross-check and collect one record per check.

    A check passes when its measured value is within its bound, fails when it
    is not, and reports status "error" (with detail) when its oracle could not
    converge or evaluation broke down.
    """
    cfg = config or VerifyConfig()
    results = []
    for check_id, fn in _build_registry(cfg):
        try:
            value, bound = fn()
        except QuadratureError as exc:
            results.append(
                CheckResult(check_id, "error", exc.best.value, math.nan, str(exc))
            )
            continue
        except ArithmeticError as exc:
            results.append(CheckResult(check_id, "error", math.nan, math.nan, str(exc)))
            continue
        status = "pass" if value <= bound else "fail"
        results.append(CheckResult(check_id, status, value, bound))
    return VerificationReport(tuple(results))
