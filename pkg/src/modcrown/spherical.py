"""Spherical and chi-spherical functions of real rank-one groups.

Spherical functions are normalised by ``alpha(h) = 1`` and

    phi_lambda(a_t) = 2F1(rho + lambda, rho - lambda; c; -sinh(t/2)**2),

with ``c = (m_half + m_alpha + 1)/2``.  On the imaginary axis the argument
becomes ``sin(t/2)**2`` and the function blows up as ``t -> pi`` unless
``lambda = +-rho``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, FitError
from .special import gamma_fn, hyp2f1, hyp2f1_one_minus, rgamma


@dataclass(frozen=True)
class So1n:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("so(1,n) needs n >= 2")


@dataclass(frozen=True)
class Su1n:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("su(1,n) needs n >= 1")


@dataclass(frozen=True)
class Sp1n:
    """The quaternionic algebra u(1, n; H)."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("u(1,n;H) needs n >= 1")


@dataclass(frozen=True)
class F4_20:
    pass


RankOneAlgebra = Union[So1n, Su1n, Sp1n, F4_20]


def parse_algebra(tag: str) -> RankOneAlgebra:
    """Parse ``so:3``, ``su:2``, ``sp:2`` or ``f4``."""
    name, _, arg = tag.strip().lower().partition(":")
    if name in ("f4", "f4_20", "f4(-20)"):
        return F4_20()
    kinds = {"so": So1n, "so1n": So1n, "su": Su1n, "su1n": Su1n, "sp": Sp1n, "sp1n": Sp1n}
    if name not in kinds or not arg:
        raise ValueError(f"unknown algebra tag {tag!r}")
    return kinds[name](int(arg))


@dataclass(frozen=True)
class RootData:
    m_alpha: int
    m_half: int

    @property
    def rho(self) -> Fraction:
        return Fraction(2 * self.m_alpha + self.m_half, 4)

    @property
    def c(self) -> Fraction:
        return Fraction(self.m_half + self.m_alpha + 1, 2)

    @property
    def s0(self) -> Fraction:
        """Edge of the real interval of positive-definite parameters."""
        if self.m_half == 0:
            return self.rho
        return Fraction(1, 2) * (1 + Fraction(self.m_half, 2))


def root_data(alg: RankOneAlgebra) -> RootData:
    if isinstance(alg, So1n):
        return RootData(alg.n - 1, 0)
    if isinstance(alg, Su1n):
        return RootData(1, 2 * (alg.n - 1))
    if isinstance(alg, Sp1n):
        return RootData(3, 4 * (alg.n - 1))
    if isinstance(alg, F4_20):
        return RootData(7, 8)
    raise TypeError(f"not a rank-one algebra: {alg!r}")


@dataclass(frozen=True)
class SphericalParam:
    lam: complex
    data: RootData

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", complex(self.lam))

    def is_trivial(self, tol: float = 1e-12) -> bool:
        """lambda = +-rho, where phi is identically 1."""
        rho = float(self.data.rho)
        return abs(self.lam - rho) <= tol or abs(self.lam + rho) <= tol


@dataclass(frozen=True)
class PowerPrefactor:
    """cos(t/2)**power * phi_lambda(a_{it}) -> limit_value as t -> pi-."""

    power: int
    limit_value: complex


@dataclass(frozen=True)
class LogRate:
    """phi_lambda(a_{it}) / (-log(pi - t)) -> coefficient as t -> pi-."""

    coefficient: complex


@dataclass(frozen=True)
class Constant:
    pass


AsymptoticForm = Union[PowerPrefactor, LogRate, Constant]


def kostant_positive(p: SphericalParam, tol: float = 1e-12) -> bool:
    lam = p.lam
    if abs(lam.real) <= tol:
        return True
    if abs(lam.imag) <= tol and abs(lam.real) <= float(p.data.s0) + tol:
        return True
    return p.is_trivial(tol)


def _params(p: SphericalParam):
    rho = float(p.data.rho)
    return rho + p.lam, rho - p.lam, float(p.data.c)


def spherical(p: SphericalParam, t: float) -> complex:
    """phi_lambda(a_t) for real t."""
    if p.is_trivial(0.0):
        return 1 + 0j
    a, b, c = _params(p)
    return hyp2f1(a, b, c, -math.sinh(t / 2) ** 2)


def spherical_imaginary_time(p: SphericalParam, t: float) -> complex:
    """phi_lambda(a_{it}) for |t| < pi.

    Past sin^2(t/2) = 1/2 the Euler-transformed form is used, with the
    prefactor built from cos(t/2) itself so nothing is lost to 1 - sin^2.
    """
    if abs(t) >= math.pi:
        raise DomainError("imaginary-time spherical function needs |t| < pi")
    if p.is_trivial(0.0):
        return 1 + 0j
    a, b, c = _params(p)
    s2 = math.sin(t / 2) ** 2
    if s2 <= 0.5:
        return hyp2f1(a, b, c, s2)
    cos_half = math.cos(t / 2)
    w = cos_half * cos_half
    # c - a - b = -(m_alpha - 1)/2
    excess = c - a - b
    return cos_half ** (2 * excess.real) * hyp2f1_one_minus(c - a, c - b, c, w)


def boundary_asymptotics(p: SphericalParam) -> AsymptoticForm:
    """Leading behaviour of phi_lambda(a_{it}) as t -> pi-.

    For m_alpha > 1 the returned limit belongs to the prefactor
    cos(t/2)**(m_alpha - 1).  Multiplying it by 2**((m_alpha-1)/2) gives the
    limit for the prefactor (1 + cos t)**((m_alpha-1)/2) instead.
    """
    if p.is_trivial():
        return Constant()
    d = p.data
    rho = float(d.rho)
    denom = rgamma(rho - p.lam) * rgamma(rho + p.lam)
    if d.m_alpha > 1:
        b = (d.m_alpha - 1) / 2
        return PowerPrefactor(d.m_alpha - 1, gamma_fn(float(d.c)) * gamma_fn(b) * denom)
    return LogRate(2 * gamma_fn(1 + d.m_half / 2) * denom)


def chi_spherical(ell: float, lam: complex, n: int, t: float, imaginary: bool = False) -> complex:
    """chi_ell-spherical function of su(1, n) at a_t, or at a_{it} if ``imaginary``."""
    if n < 1:
        raise ValueError("chi-spherical functions need n >= 1")
    a = (n - ell + lam) / 2
    b = (n - ell - lam) / 2
    if not imaginary:
        return math.cosh(t / 2) ** (-ell) * hyp2f1(a, b, n, -math.sinh(t / 2) ** 2)
    if abs(t) >= math.pi:
        raise DomainError("imaginary-time chi-spherical function needs |t| < pi")
    cos_half = math.cos(t / 2)
    s2 = math.sin(t / 2) ** 2
    if s2 <= 0.5:
        return cos_half ** (-ell) * hyp2f1(a, b, n, s2)
    return cos_half ** (-ell) * hyp2f1_one_minus(a, b, n, cos_half * cos_half)


def chi_boundary_asymptotics(ell: float, lam: complex, n: int) -> complex:
    """Limit of cos(t/2)**|ell| * phi_{ell,lambda}(exp(ith)) as t -> pi-."""
    if ell == 0:
        raise ValueError("ell must be nonzero")
    k = abs(ell)
    return (
        gamma_fn(k)
        * math.factorial(n - 1)
        * rgamma((n + k - lam) / 2)
        * rgamma((n + k + lam) / 2)
    )


def orbit_norm(p: SphericalParam, t: float) -> float:
    """||exp(i t dU(h)) v|| = sqrt(phi(a_{2it})) for |t| < pi/2."""
    return math.sqrt(abs(spherical_imaginary_time(p, 2 * t)))


@dataclass(frozen=True)
class GrowthFit:
    exponent: float
    intercept: float
    residual: float


def growth_exponent_fit(
    p: SphericalParam, kmin: int = 6, kmax: int = 20, max_residual: float = 0.05
) -> GrowthFit:
    """Least-squares slope of log||e^{it dU(h)} v|| against -log(pi/2 - t).

    Grid: t = pi/2 - 2**-k for k = kmin..kmax.
    """
    if p.is_trivial():
        return GrowthFit(0.0, 0.0, 0.0)
    ks = np.arange(kmin, kmax + 1)
    eps = 2.0 ** -ks.astype(float)
    x = -np.log(eps)
    y = np.array([math.log(orbit_norm(p, math.pi / 2 - e)) for e in eps])
    design = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    if not np.isfinite(resid) or resid > max_residual:
        raise FitError(f"growth fit residual {resid:.3g} exceeds {max_residual}")
    return GrowthFit(float(coef[0]), float(coef[1]), resid)


def gram_matrix(p: SphericalParam, ts: Sequence[float]) -> np.ndarray:
    """[phi_lambda(a_{t_j - t_i})] for sample points on the subgroup A."""
    ts = np.asarray(ts, dtype=float)
    g = np.empty((len(ts), len(ts)), dtype=complex)
    for i, ti in enumerate(ts):
        for j, tj in enumerate(ts):
            g[i, j] = spherical(p, tj - ti) if j >= i else g[j, i].conjugate()
    return g


def min_gram_eigenvalue(p: SphericalParam, ts: Sequence[float]) -> float:
    g = gram_matrix(p, ts)
    return float(np.linalg.eigvalsh(0.5 * (g + g.conj().T)).min())
