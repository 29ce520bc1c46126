"""Positive-energy representations of SL(2, R) on kernel vectors.

For even ``s`` the space H_s is spanned by the kernels

    Q_w(z) = Q(z, w) = ((z - conj(w)) / 2i) ** -s,     Im w > 0,

with <Q_w, Q_u> = Q(w, u).  Points ``w`` on the real line give the boundary
(distribution) vectors Q_x.  Only integer powers ever appear, so no branch
of a logarithm has to be chosen anywhere.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import (
    InfinityError,
    PathSingularity,
    PoleError,
    QuadratureError,
    StripError,
    UndefinedPairing,
)
from .special import gamma_fn


def _check_weight(s: int) -> int:
    if int(s) != s or s <= 0 or int(s) % 2:
        raise ValueError(f"weight s must be an even positive integer, got {s!r}")
    return int(s)


@dataclass(frozen=True)
class Moebius:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-12 * max(1.0, abs(self.a * self.d), abs(self.b * self.c)):
            raise ValueError(f"determinant {det!r} is not 1")

    @classmethod
    def from_matrix(cls, m) -> "Moebius":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return Moebius.from_matrix(self.matrix @ other.matrix)

    def denominator(self, z: complex) -> complex:
        return self.c * z + self.d

    def apply(self, z: complex) -> complex:
        den = self.denominator(z)
        if den == 0:
            raise InfinityError(f"{z!r} is mapped to infinity")
        return (self.a * z + self.b) / den

    def tau_h(self) -> "Moebius":
        """Conjugation by diag(1, -1)."""
        return Moebius(self.a, -self.b, -self.c, self.d)


def boost(t: float) -> Moebius:
    """exp(t h) with h = diag(1/2, -1/2)."""
    return Moebius(math.exp(t / 2), 0.0, 0.0, math.exp(-t / 2))


def random_moebius(rng: np.random.Generator, spread: float = 1.0) -> Moebius:
    """Rotation times boost times translation, so det = 1 holds to rounding."""
    theta = rng.uniform(0, 2 * math.pi)
    r = Moebius(math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta))
    n = Moebius(1.0, rng.normal(scale=spread), 0.0, 1.0)
    return r @ boost(rng.normal(scale=spread)) @ n


def kernel_Q(z: complex, w: complex, s: int) -> complex:
    s = _check_weight(s)
    base = (complex(z) - complex(w).conjugate()) / 2j
    if base == 0:
        raise PoleError("Q(z, w) has a pole at z = conj(w)")
    return base ** (-s)


@dataclass(frozen=True)
class KernelVector:
    """Finite combination sum c_j Q_{w_j} of weight ``s``."""

    s: int
    terms: Tuple[Tuple[complex, complex], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", _check_weight(self.s))
        clean = []
        for coeff, point in self.terms:
            point = complex(point)
            if point.imag < 0:
                raise ValueError(f"kernel points live in the closed upper half-plane, got {point!r}")
            clean.append((complex(coeff), point))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def single(cls, w: complex, s: int, coeff: complex = 1.0) -> "KernelVector":
        return cls(s, ((coeff, w),))

    @property
    def boundary(self) -> Tuple[bool, ...]:
        return tuple(p.imag == 0 for _, p in self.terms)

    def __add__(self, other: "KernelVector") -> "KernelVector":
        if other.s != self.s:
            raise ValueError("weights differ")
        return KernelVector(self.s, self.terms + other.terms)

    def scale(self, k: complex) -> "KernelVector":
        return KernelVector(self.s, tuple((k * c, p) for c, p in self.terms))

    def __call__(self, z: complex) -> complex:
        """Value of the holomorphic function at z in the upper half-plane."""
        return sum(c * kernel_Q(z, p, self.s) for c, p in self.terms)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "terms": [
                {"re": c.real, "im": c.imag, "w_re": p.real, "w_im": p.imag} for c, p in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "KernelVector":
        terms = tuple(
            (complex(t["re"], t["im"]), complex(t["w_re"], t["w_im"])) for t in data["terms"]
        )
        return cls(int(data["s"]), terms)


def inner_kv(u: KernelVector, v: KernelVector) -> complex:
    if u.s != v.s:
        raise ValueError("weights differ")
    total = 0j
    for cu, pu in u.terms:
        for cv, pv in v.terms:
            if pu.imag == 0 and pv.imag == 0 and pu == pv:
                raise UndefinedPairing(f"two boundary vectors at the same point {pu.real:g}")
            total += cu.conjugate() * cv * kernel_Q(pu, pv, u.s)
    return total


def gram(points: Sequence[complex], s: int) -> np.ndarray:
    return np.array([[kernel_Q(p, q, s) for q in points] for p in points])


def act(g: Moebius, v: KernelVector) -> KernelVector:
    """U_s(g) Q_w = conj(g'(w)^{s/2}) Q_{g.w} with g'(w) = (cw + d)^-2."""
    out = []
    for coeff, point in v.terms:
        den = g.denominator(point)
        if point.imag == 0 and den == 0:
            raise InfinityError(f"boundary point {point.real:g} is sent to infinity")
        image = g.apply(point)
        if point.imag == 0:
            image = complex(image.real, 0.0)
        cocycle = (den ** (-v.s)).conjugate()
        out.append((cocycle * coeff, image))
    return KernelVector(v.s, tuple(out))


def j_conjugation(v: KernelVector) -> KernelVector:
    """J(sum c Q_w) = sum (-1)^{s/2} conj(c) Q_{-conj(w)}."""
    sign = -1.0 if (v.s // 2) % 2 else 1.0
    return KernelVector(v.s, tuple((sign * c.conjugate(), -p.conjugate()) for c, p in v.terms))


def j_pointwise(v: KernelVector, z: complex) -> complex:
    """(JF)(z) = e^{pi i s/2} conj(F(-conj z)), straight from the definition."""
    return cmath.exp(0.5j * math.pi * v.s) * v(-complex(z).conjugate()).conjugate()


def boost_continuation(t: complex, s: int, v0: Optional[KernelVector] = None) -> KernelVector:
    """e^{i t dU(h)} Q_i = e^{i s t/2} Q_{e^{it} i}.

    Any complex ``t`` with |Re t| <= pi/2 is accepted; Im t moves along the
    real boost.  At Re t = -pi/2 the image is the boundary vector at
    x = e^{-Im t}, so t = -pi/2 gives e^{-i s pi/4} Q_1.
    """
    s = _check_weight(s)
    if v0 is not None and (v0.s != s or v0.terms != ((1 + 0j, 1j),)):
        raise ValueError("closed form is available for v0 = Q_i only")
    t = complex(t)
    if abs(t.real) > math.pi / 2:
        raise StripError(f"Re t = {t.real:g} is outside [-pi/2, pi/2]")
    radius = math.exp(-t.imag)
    if abs(t.real) == math.pi / 2:
        point = complex(-math.copysign(radius, t.real), 0.0)
    else:
        point = radius * complex(-math.sin(t.real), math.cos(t.real))
    coeff = cmath.exp(0.5j * s * t)
    return KernelVector(s, ((coeff, point),))


def continue_boost_pairing(x: float, s: int, w: complex, eps: float = 1e-6, flip_sign: bool = False):
    """Continue F(t) = e^{st/2} Q(w, e^t x) from t = 0 to t = i pi.

    The log-derivative s/2 + s x e^t / (w - x e^t) is integrated along the
    segment t = i theta, so the value at i pi comes from the path and not from
    the closed form.  Returns (continued value, closed-form value).
    """
    s = _check_weight(s)
    w = complex(w)
    if not w.imag > 0:
        raise ValueError("test point must lie in the open upper half-plane")
    # arg w lies in (0, pi), so the nearest point of the arc is x e^{i arg w}
    gap = abs(abs(w) - abs(x))
    if gap < eps:
        raise PathSingularity(f"sweep arc passes within {gap:.2g} of w")

    def dlog(theta):
        e = x * cmath.exp(1j * theta)
        return 1j * (0.5 * s + s * e / (w - e))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        integral, err = quad(dlog, 0.0, math.pi, complex_func=True, epsabs=1e-14, epsrel=1e-13, limit=400)
    if abs(err) > 1e-9:
        raise QuadratureError(f"continuation integral error {abs(err):.2g}")
    start = kernel_Q(w, x, s)
    continued = start * cmath.exp(integral)
    sign = 1.0 if flip_sign or (s // 2) % 2 == 0 else -1.0
    return continued, sign * kernel_Q(w, -x, s)


def modular_relation_check(x: float, s: int, w: complex, tol: float = 1e-9, flip_sign: bool = False) -> bool:
    """Delta^{1/2} Q_x = (-1)^{s/2} Q_{-x}, tested through one matrix coefficient.

    With ``flip_sign`` the sign (-1)^{s/2} is replaced by +1, which must fail
    for s = 2 mod 4.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    continued, closed = continue_boost_pairing(x, s, w, flip_sign=flip_sign)
    return abs(continued - closed) <= tol * max(1.0, abs(closed))


@dataclass(frozen=True)
class FourierResult:
    vector: KernelVector
    residual: float


def fourier_from_density(u: complex, s: int, probes: Iterable[complex] = (1j, 0.5 + 2j, -1 + 0.5j)) -> FourierResult:
    """Fourier image of p -> e^{iup}, which is Q_{-conj(u)}.

    F(z) = 2^s / Gamma(s) int_0^inf e^{i(z+u)p} p^{s-1} dp is evaluated by
    quadrature at the probe points and compared with the kernel.
    """
    s = _check_weight(s)
    u = complex(u)
    if not u.imag > 0:
        raise ValueError("Im u must be positive")
    target = KernelVector.single(-u.conjugate(), s)
    scale = 2.0**s / gamma_fn(s).real
    residual = 0.0
    for z in probes:
        k = complex(z) + u

        def f(p, k=k):
            return cmath.exp(1j * k * p) * p ** (s - 1)

        with warnings.catch_warnings():
            # quadpack flags roundoff on the oscillating tail; the residual
            # against the closed form below is the real check
            warnings.simplefilter("ignore", IntegrationWarning)
            val, err = quad(f, 0.0, np.inf, complex_func=True, epsabs=0.0, epsrel=1e-12, limit=400)
        val *= scale
        expected = target(z)
        if not np.isfinite(val) or abs(err) * scale > 1e-6 * abs(expected):
            raise QuadratureError(f"Fourier integral failed at z = {z!r}")
        residual = max(residual, abs(val - expected) / abs(expected))
    return FourierResult(target, residual)
