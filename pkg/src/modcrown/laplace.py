"""Laplace transforms of tail measures and temperedness tests.

Measures live on [1, inf).  Integrals are taken in the variable y = log x,
on the log scale, with tanh-sinh quadrature split at the peak of the
integrand.  This keeps ``exp(c sqrt(x))`` tails and ``t -> 0`` blow-ups
representable long after the plain values overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import tanhsinh
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp

from .errors import DivergentIntegral, FitError, QuadratureError

LOG_RTOL = math.log(1e-12)
LOG_ACCEPT = math.log(1e-9)
ASYMPTOTIC_KS = tuple(range(4, 25))
MOMENT_CAP = 50
GROWTH_CAP = 50.0


@dataclass(frozen=True)
class PowerTail:
    """Density x**-s on [1, inf)."""

    s: float

    def log_weight(self, y):
        # log of x * density(x) at x = e^y, the Jacobian included
        return (1.0 - self.s) * y

    def mode(self, t: float) -> float:
        if self.s < 1:
            return max(0.0, math.log((1.0 - self.s) / t))
        return 0.0

    @property
    def finite_mass(self) -> bool:
        return self.s > 1


@dataclass(frozen=True)
class StretchedExp:
    """Density exp(c sqrt(x)) on [1, inf)."""

    c: float

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ValueError("StretchedExp needs c > 0")

    def log_weight(self, y):
        return self.c * np.exp(0.5 * y) + y

    def mode(self, t: float) -> float:
        # stationary point of -t u^2 + c u + 2 log u with u = e^{y/2}
        u = (0.5 * self.c + math.sqrt(0.25 * self.c**2 + 4 * t)) / (2 * t)
        return max(0.0, 2 * math.log(u))

    @property
    def finite_mass(self) -> bool:
        return False


@dataclass(frozen=True)
class GridDensity:
    """Piecewise-linear density through (grid[i], values[i]), zero outside."""

    grid: tuple
    values: tuple

    def __post_init__(self) -> None:
        g = tuple(float(x) for x in self.grid)
        v = tuple(float(x) for x in self.values)
        if len(g) != len(v) or len(g) < 2:
            raise ValueError("grid and values need equal length >= 2")
        if any(b <= a for a, b in zip(g, g[1:])):
            raise ValueError("grid must be strictly increasing")
        if any(x < 0 for x in v):
            raise ValueError("densities must be nonnegative")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @property
    def finite_mass(self) -> bool:
        return True


TailMeasure = Union[PowerTail, StretchedExp, GridDensity]


def _check(res, what: str) -> float:
    if not np.all(res.success):
        raise QuadratureError(f"quadrature failed for {what}")
    return res.integral


def _log_quad(logf, lo: float, hi: float, what: str) -> float:
    """log int_lo^hi exp(logf); the peak value is taken out first."""
    shift = float(max(logf(np.array(lo)), logf(np.array(hi)), logf(np.array(0.5 * (lo + hi)))))
    res = tanhsinh(lambda y: logf(y) - shift, lo, hi, log=True, rtol=LOG_RTOL)
    integral, error = float(np.real(res.integral)), float(np.real(res.error))
    if not res.success and not error - integral < LOG_ACCEPT:
        raise QuadratureError(f"quadrature failed for {what}")
    return integral + shift


def _log_integral(logf, lo: float, peak: float) -> float:
    """log of int_lo^inf exp(logf(y)) dy for a unimodal log-integrand."""
    peak = max(lo, peak)
    top = float(logf(np.array(peak)))
    width = 1.0
    while float(logf(np.array(peak + width))) > top - 60.0:
        width *= 2.0
        if width > 1e4:
            raise DivergentIntegral("integrand does not decay")
    pieces = [_log_quad(logf, peak, peak + width, "upper piece")]
    if peak > lo:
        below = 1.0
        while peak - below > lo and float(logf(np.array(peak - below))) > top - 60.0:
            below *= 2.0
        # anything left of the window sits e^60 below the peak
        pieces.append(_log_quad(logf, max(lo, peak - below), peak, "lower piece"))
    return float(logsumexp(pieces))


def _grid_laplace(mu: GridDensity, t: float) -> float:
    g = np.asarray(mu.grid)
    v = np.asarray(mu.values)
    a, b = g[:-1], g[1:]
    va, vb = v[:-1], v[1:]

    def f(x, a, b, va, vb):
        dens = va + (vb - va) * (x - a) / (b - a)
        return np.exp(-t * x) * dens

    res = tanhsinh(f, a, b, args=(a, b, va, vb), rtol=1e-13)
    return float(np.sum(_check(res, "grid density")))


def log_laplace(mu: TailMeasure, t: float) -> float:
    """log of the Laplace transform int exp(-t x) dmu(x)."""
    t = float(t)
    if isinstance(mu, GridDensity):
        val = _grid_laplace(mu, t)
        return math.log(val) if val > 0 else -math.inf
    if t < 0 or (t == 0 and not mu.finite_mass):
        raise DivergentIntegral(f"Laplace transform diverges at t = {t:g}")
    if t == 0:
        return -math.log(mu.s - 1.0)

    def logf(y):
        return mu.log_weight(y) - t * np.exp(y)

    return _log_integral(logf, 0.0, mu.mode(t))


def laplace(mu: TailMeasure, t: float) -> float:
    return math.exp(log_laplace(mu, t))


@dataclass(frozen=True)
class Finite:
    pass


@dataclass(frozen=True)
class Log:
    pass


@dataclass(frozen=True)
class Power:
    exponent: float


Regime = Union[Finite, Log, Power]


@dataclass(frozen=True)
class AsymptoticReport:
    regime: Regime
    fitted_constant: float
    residual: float


def _log_profile(mu: TailMeasure, ks: Sequence[int]):
    ts = np.array([2.0**-k for k in ks])
    return ts, np.array([log_laplace(mu, t) for t in ts])


def _local_slopes(logs: np.ndarray) -> np.ndarray:
    """Growth exponent between consecutive halvings of t."""
    return np.diff(logs) / math.log(2.0)


def _projected_fit(ts, vals, lead):
    basis = np.column_stack([lead, np.ones_like(ts), ts, ts**2, ts**3])
    scale = 1.0 / np.abs(vals)
    coef, *_ = np.linalg.lstsq(basis * scale[:, None], vals * scale, rcond=None)
    resid = float(np.sqrt(np.mean(((basis @ coef - vals) * scale) ** 2)))
    return coef, resid


def _aitken(window) -> float:
    a, b, c = window
    denom = (c - b) - (b - a)
    return float(c - (c - b) ** 2 / denom) if denom != 0 else float(c)


def laplace_asymptotics(mu: TailMeasure, ks: Sequence[int] = ASYMPTOTIC_KS,
                        max_residual: float = 1e-6) -> AsymptoticReport:
    """Classify L(t) as t -> 0+ on t = 2**-k and fit the leading constant.

    Power regime: L ~ C t**p with p < 0.  Log regime: L ~ C |log t|.
    Finite regime: L -> C.
    """
    ts, logs = _log_profile(mu, ks)
    slopes = _local_slopes(logs)
    if not np.all(np.isfinite(logs)) or slopes[-1] > GROWTH_CAP or slopes[-1] > slopes[-2] + 0.5:
        raise FitError("Laplace transform grows faster than any power")
    vals = np.exp(logs)
    inc = np.diff(vals)
    if inc[-2] == 0:
        return AsymptoticReport(Finite(), float(vals[-1]), 0.0)
    rate = math.log2(abs(inc[-1] / inc[-2]))

    if rate > 0.05:
        def cost(p):
            return _projected_fit(ts, vals, ts**p)[1]

        guess = -rate
        opt = minimize_scalar(cost, bounds=(guess - 0.25, min(guess + 0.25, -1e-6)),
                              method="bounded", options={"xatol": 1e-12})
        coef, resid = _projected_fit(ts, vals, ts**opt.x)
        regime: Regime = Power(float(opt.x))
        const = float(coef[0])
    elif rate > -0.05:
        coef, resid = _projected_fit(ts, vals, np.abs(np.log(ts)))
        regime, const = Log(), float(coef[0])
    else:
        # Aitken's delta-squared; the residual is the drift between the
        # extrapolations from the last two windows of three values
        const = _aitken(vals[-3:])
        resid = abs(const - _aitken(vals[-4:-1])) / abs(const)
        regime = Finite()
    if resid > max_residual:
        raise FitError(f"asymptotic fit residual {resid:.3g} exceeds {max_residual}")
    return AsymptoticReport(regime, const, resid)


@dataclass(frozen=True)
class TemperednessReport:
    is_tempered: bool
    n_star: Optional[int]
    N_star: Optional[float]
    moment_verdict: bool
    growth_verdict: bool


def _log_dyadic_moment(mu: TailMeasure, n: int, j: int) -> float:
    lo, hi = j * math.log(2.0), (j + 1) * math.log(2.0)

    def logf(y):
        return mu.log_weight(y) - n * (2 * y + np.log1p(np.exp(-2 * y)))

    return _log_quad(logf, lo, hi, "moment")


def moment_order(mu: TailMeasure, cap: int = MOMENT_CAP, js: Sequence[int] = (16, 17, 18, 19, 20)):
    """Smallest n <= cap with int (1 + x^2)^-n dmu finite, or None.

    Finiteness is read off the decay of the dyadic pieces over
    [2^j, 2^{j+1}]: a summable tail shrinks geometrically.
    """
    if isinstance(mu, GridDensity):
        return 0
    for n in range(cap + 1):
        logs = np.array([_log_dyadic_moment(mu, n, j) for j in js])
        slope = float(np.mean(np.diff(logs))) / math.log(2.0)
        if slope < -1e-6:
            return n
    return None


def growth_order(mu: TailMeasure, ks: Sequence[int] = ASYMPTOTIC_KS, cap: float = GROWTH_CAP):
    """Exponent N with L(t) <= C t**-N near 0, or None if no power bound shows up.

    The local log-log slopes must settle down and stay below ``cap``.
    """
    try:
        _, logs = _log_profile(mu, ks)
    except DivergentIntegral:
        return None
    if not np.all(np.isfinite(logs)):
        return None
    slopes = _local_slopes(logs)
    last, prev = slopes[-1], slopes[-2]
    if last > cap or abs(last - prev) > 0.05 + 0.05 * abs(prev):
        return None
    return max(float(last), 0.0)


def temperedness_test(mu: TailMeasure) -> TemperednessReport:
    n_star = moment_order(mu)
    N_star = growth_order(mu)
    by_moment = n_star is not None
    by_growth = N_star is not None
    return TemperednessReport(by_moment, n_star, N_star, by_moment, by_growth)


@dataclass(frozen=True)
class DistributionLimit:
    exists: bool
    fitted_N: float


def distribution_limit_check(mu: TailMeasure, b: float, ks: Sequence[int] = ASYMPTOTIC_KS) -> DistributionLimit:
    """Growth of ||e^{tH} v|| for v(lambda) = exp(-b lambda) as t -> b-.

    ||e^{tH} v||^2 = L(2(b - t)), so with tau = 2(b - t) on a dyadic grid the
    norm grows like (b - t)^-N with N half the growth order of L.
    """
    if not b > 0:
        raise ValueError("b must be positive")
    order = growth_order(mu, ks)
    if order is None:
        return DistributionLimit(False, math.inf)
    return DistributionLimit(True, order / 2.0)


__all__ = [
    "PowerTail", "StretchedExp", "GridDensity", "TailMeasure", "laplace", "log_laplace",
    "Finite", "Log", "Power", "AsymptoticReport", "laplace_asymptotics",
    "TemperednessReport", "temperedness_test", "moment_order", "growth_order",
    "DistributionLimit", "distribution_limit_check",
]
