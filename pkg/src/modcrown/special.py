"""Complex Gamma and the Gauss hypergeometric function 2F1.

Evaluation of 2F1 picks one of four expansions depending on where ``z``
sits: the defining series in ``z``, the expansion in ``1 - z`` (with the
logarithmic formulas when ``c - a - b`` is an integer), and the same two
after the Pfaff map ``z -> z/(z-1)``.  Callers that already know ``1 - z``
to full relative precision (boundary asymptotics) should use
:func:`hyp2f1_one_minus`, since forming ``1 - z`` in floating point throws
away most of the digits close to ``z = 1``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

from scipy.special import digamma

from .errors import ConvergenceError, DomainError, PoleError, UnclassifiedError

# Lanczos approximation, g = 7, nine coefficients.
LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_EULER_GAMMA = 0.57721566490153286061

SERIES_EPS = 1e-16
MAX_TERMS = 100_000
SWITCH_RADIUS = 0.75
# |c - a - b - m| below this counts as the integer m (logarithmic case).
INTEGER_TOL = 1e-12


def _is_nonpositive_integer(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _sinpi(z: complex) -> complex:
    # reduce the real part first so sin(pi z) keeps its digits near the integers
    n = round(z.real)
    r = complex(z.real - n, z.imag)
    s = cmath.sin(math.pi * r)
    return -s if n % 2 else s


def _lanczos(z: complex) -> complex:
    z -= 1.0
    acc = _LANCZOS[0]
    for i, coef in enumerate(_LANCZOS[1:], start=1):
        acc += coef / (z + i)
    t = z + LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def gamma_fn(z: complex) -> complex:
    """Gamma function for complex ``z``; raises PoleError on 0, -1, -2, ..."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return math.pi / (_sinpi(z) * _lanczos(1.0 - z))
    return _lanczos(z)


def rgamma(z: complex) -> complex:
    """1/Gamma(z), entire; zero on the poles of Gamma."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return _sinpi(z) * _lanczos(1.0 - z) / math.pi
    return 1.0 / _lanczos(z)


@dataclass(frozen=True)
class HypParams:
    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if _is_nonpositive_integer(self.gamma):
            raise PoleError(f"2F1 has a pole at gamma = {self.gamma.real:g}")

    @property
    def excess(self) -> complex:
        """gamma - alpha - beta, which governs the behaviour at z = 1."""
        return self.gamma - self.alpha - self.beta

    @property
    def terminating(self) -> bool:
        return _is_nonpositive_integer(self.alpha) or _is_nonpositive_integer(self.beta)


@dataclass(frozen=True)
class Finite:
    value: complex


@dataclass(frozen=True)
class LogDivergent:
    """F(t) ~ coefficient * (-log(1 - t))."""

    coefficient: complex


@dataclass(frozen=True)
class PowerDivergent:
    """F(t) ~ coefficient * (1 - t)**exponent with Re(exponent) < 0."""

    exponent: complex
    coefficient: complex

    def __post_init__(self) -> None:
        if complex(self.exponent).real >= 0:
            raise ValueError("PowerDivergent needs an exponent with negative real part")


LimitClass = Union[Finite, LogDivergent, PowerDivergent]


def leading_term(limit: LimitClass, w: float) -> complex:
    """Value of the leading asymptotic form at ``t = 1 - w``."""
    if isinstance(limit, Finite):
        return limit.value
    if isinstance(limit, LogDivergent):
        return limit.coefficient * -math.log(w)
    return limit.coefficient * cmath.exp(limit.exponent * math.log(w))


def _series(a: complex, b: complex, c: complex, z: complex) -> complex:
    term = 1 + 0j
    total = 1 + 0j
    small = 0
    for k in range(MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if abs(term) <= SERIES_EPS * abs(total):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
    raise ConvergenceError(f"2F1 series did not converge in {MAX_TERMS} terms (z={z})")


def _polynomial(a: complex, b: complex, c: complex, z: complex) -> complex:
    degree = min(
        int(-x.real) for x in (a, b) if _is_nonpositive_integer(x)
    )
    term = 1 + 0j
    total = 1 + 0j
    for k in range(degree):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def _near_one_generic(a: complex, b: complex, c: complex, w: complex) -> complex:
    d = c - a - b
    gc = gamma_fn(c)
    coef_a = gc * gamma_fn(d) * rgamma(c - a) * rgamma(c - b)
    coef_b = gc * gamma_fn(-d) * rgamma(a) * rgamma(b)
    out = 0j
    if coef_a != 0:
        out += coef_a * _series(a, b, 1 - d, w)
    if coef_b != 0:
        out += coef_b * cmath.exp(d * cmath.log(w)) * _series(c - a, c - b, 1 + d, w)
    return out


def _near_one_log(a: complex, b: complex, m: int, w: complex) -> complex:
    """F(a, b; a+b+m; 1-w) for integer m >= 0."""
    c = a + b + m
    gc = gamma_fn(c)
    out = 0j
    if m > 0:
        head = 0j
        term = 1 + 0j
        for n in range(m):
            head += term
            if n < m - 1:
                term *= (a + n) * (b + n) / ((n + 1) * (1 - m + n)) * w
        out += gamma_fn(m) * gc * rgamma(a + m) * rgamma(b + m) * head

    # digammas are advanced by recurrence: psi(x+1) = psi(x) + 1/x
    log_w = cmath.log(w)
    psi_n1 = -_EULER_GAMMA
    psi_nm1 = -_EULER_GAMMA + sum(1.0 / j for j in range(1, m + 1))
    psi_a = complex(digamma(a + m))
    psi_b = complex(digamma(b + m))
    term = 1.0 / math.factorial(m) + 0j
    total = 0j
    small = 0
    for n in range(MAX_TERMS):
        piece = term * (log_w - psi_n1 - psi_nm1 + psi_a + psi_b)
        total += piece
        if abs(piece) <= SERIES_EPS * abs(total):
            small += 1
            if small == 3:
                break
        else:
            small = 0
        term *= (a + m + n) * (b + m + n) / ((n + 1) * (n + m + 1)) * w
        psi_n1 += 1.0 / (n + 1)
        psi_nm1 += 1.0 / (n + m + 1)
        psi_a += 1.0 / (a + m + n)
        psi_b += 1.0 / (b + m + n)
    else:
        raise ConvergenceError(f"logarithmic 2F1 expansion did not converge (w={w})")
    out -= (-w) ** m * gc * rgamma(a) * rgamma(b) * total
    return out


def _near_one(a: complex, b: complex, c: complex, w: complex) -> complex:
    d = c - a - b
    m = round(d.real)
    if abs(d - m) < INTEGER_TOL:
        if m >= 0:
            return _near_one_log(a, b, m, w)
        # Euler's transformation flips the sign of the excess
        return w ** m * _near_one_log(c - a, c - b, -m, w)
    return _near_one_generic(a, b, c, w)


def _pick_expansion(z: complex, w: complex):
    """Return (modulus, tag) of the cheapest convergent expansion."""
    pf = z / (z - 1) if z != 1 else complex("inf")
    options = [
        (abs(z), "direct"),
        (abs(w), "one_minus"),
        (abs(pf), "pfaff"),
        (abs(1 - pf), "pfaff_one_minus"),
    ]
    for modulus, tag in options:
        if modulus <= SWITCH_RADIUS:
            return modulus, tag
    return min(options)


def _evaluate(a: complex, b: complex, c: complex, z: complex, w: complex) -> complex:
    # canonical order makes F(a, b) and F(b, a) bitwise identical
    if (b.real, b.imag) < (a.real, a.imag):
        a, b = b, a
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return _polynomial(a, b, c, z)
    # tested on w: 1 - w can round to 1 when w is a tiny positive number
    if w.imag == 0.0 and w.real <= 0.0:
        raise DomainError(f"z = {z.real:g} lies on the branch cut [1, inf)")
    if z == 0:
        return 1 + 0j
    modulus, tag = _pick_expansion(z, w)
    if modulus >= 1.0:
        raise ConvergenceError(f"no convergent expansion for 2F1 at z={z}")
    if tag == "direct":
        return _series(a, b, c, z)
    if tag == "one_minus":
        return _near_one(a, b, c, w)
    # Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)); 1 - z/(z-1) = 1/w
    prefactor = cmath.exp(-a * cmath.log(w))
    if tag == "pfaff":
        return prefactor * _series(a, c - b, c, z / (z - 1))
    return prefactor * _near_one(a, c - b, c, 1 / w)


def f21(p: HypParams, z: complex) -> complex:
    """Gauss hypergeometric function 2F1(alpha, beta; gamma; z) on C minus [1, inf).

    Terminating parameter sets (alpha or beta in 0, -1, -2, ...) are summed as
    polynomials and accept any ``z``.
    """
    z = complex(z)
    return _evaluate(p.alpha, p.beta, p.gamma, z, 1 - z)


def hyp2f1(a: complex, b: complex, c: complex, z: complex) -> complex:
    return f21(HypParams(a, b, c), z)


def hyp2f1_one_minus(a: complex, b: complex, c: complex, w: complex) -> complex:
    """2F1(a, b; c; 1 - w) with ``w`` supplied directly."""
    p = HypParams(a, b, c)
    w = complex(w)
    return _evaluate(p.alpha, p.beta, p.gamma, 1 - w, w)


def f21_limit_z1(p: HypParams, tol: float = 1e-12) -> LimitClass:
    """Classify 2F1(alpha, beta; gamma; t) as t -> 1- and return the constant."""
    if p.terminating:
        return Finite(f21(p, 1.0))
    d = p.excess
    g = gamma_fn(p.gamma)
    if d.real > tol:
        return Finite(g * gamma_fn(d) * rgamma(p.gamma - p.alpha) * rgamma(p.gamma - p.beta))
    if abs(d) <= tol:
        return LogDivergent(g * rgamma(p.alpha) * rgamma(p.beta))
    if d.real < -tol:
        return PowerDivergent(d, g * gamma_fn(-d) * rgamma(p.alpha) * rgamma(p.beta))
    raise UnclassifiedError(
        f"Re(gamma - alpha - beta) = 0 with gamma - alpha - beta = {d}: oscillatory boundary case"
    )
