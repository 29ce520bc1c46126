"""de Sitter space, its crown domain and the complexified boost flow.

Coordinates are (x_0, ..., x_n) with beta(x) = x_0^2 - x_1^2 - ... - x_n^2,
so dS^n is the level set beta = -1 and the crown is the part of the complex
quadric beta(z) = -1 whose imaginary part lies in the open future cone.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.stats import special_ortho_group

from .errors import DegenerateError, FormulaMismatch, OffShell

SHELL_TOL = 1e-10
DELTA_TOL = 1e-9


def beta(v) -> complex:
    """The Lorentz quadratic form (no conjugation, so it is complex-bilinear)."""
    v = np.asarray(v)
    return v[0] * v[0] - np.sum(v[1:] * v[1:])


def beta_form(u, v):
    u, v = np.asarray(u), np.asarray(v)
    return u[0] * v[0] - np.sum(u[1:] * v[1:])


def in_future_cone(v) -> bool:
    """v_0 > |(v_1, ..., v_n)|, the open cone V_+."""
    v = np.asarray(v, dtype=float)
    return bool(v[0] > 0 and v[0] > np.linalg.norm(v[1:]))


def _on_quadric(z, tol: float) -> bool:
    z = np.asarray(z, dtype=complex)
    scale = max(1.0, float(np.sum(np.abs(z) ** 2)))
    return abs(beta(z) + 1) <= tol * scale


def in_crown(z, tol: float = SHELL_TOL) -> bool:
    z = np.asarray(z, dtype=complex)
    if not _on_quadric(z, tol):
        return False
    im = z.imag
    return bool(im[0] > 0 and beta(im) > 0)


def _arccos_sqrt(u: float, one_minus_u: float) -> float:
    # arccos(sqrt(u)) without the cancellation of arccos near 1
    return math.atan2(math.sqrt(max(one_minus_u, 0.0)), math.sqrt(max(u, 0.0)))


def _rounding_slack(u: float, du: float) -> float:
    # change of arccos(sqrt(u)) under a perturbation du of u; the derivative
    # blows up at u = 0 and u = 1, where the change is of order sqrt(du)
    return du / math.sqrt(max(u * (1.0 - u), du))


def delta_routes(z) -> tuple:
    """(arccos sqrt(beta(Im z)), arccos sqrt(1 + beta(Re z)))."""
    z = np.asarray(z, dtype=complex)
    b_im = float(beta(z.imag))
    b_re = float(beta(z.real))
    return _arccos_sqrt(b_im, 1.0 - b_im), _arccos_sqrt(1.0 + b_re, -b_re)


def delta(z, tol: float = DELTA_TOL) -> float:
    """Distance-type invariant of a crown point, in [0, pi/2).

    The two routes are compared up to ``tol`` plus their propagated rounding
    error.  The value returned combines cos^2 = beta(Im z) with
    sin^2 = -beta(Re z), which stays accurate at both ends of the range.
    """
    z = np.asarray(z, dtype=complex)
    by_im, by_re = delta_routes(z)
    b_im = float(beta(z.imag))
    b_re = float(beta(z.real))
    ulp = 4 * z.size * np.finfo(float).eps
    slack = _rounding_slack(b_im, ulp * float(np.sum(z.imag**2)))
    slack += _rounding_slack(1.0 + b_re, ulp * (1.0 + float(np.sum(z.real**2))))
    if abs(by_im - by_re) > tol + slack:
        raise FormulaMismatch(f"delta routes disagree: {by_im!r} vs {by_re!r}")
    return _arccos_sqrt(b_im, -b_re)


def boost_generator(n: int, k: int = 1) -> np.ndarray:
    """h_{0k}: e_0 -> e_k, e_k -> e_0."""
    if not 1 <= k <= n:
        raise ValueError(f"boost plane (0, {k}) does not exist for n = {n}")
    h = np.zeros((n + 1, n + 1))
    h[0, k] = h[k, 0] = 1.0
    return h


def modular_flow(t: complex, v, k: int = 1) -> np.ndarray:
    """exp(t h_{0k}) v for complex t.

    Real t is the hyperbolic boost; t = i s gives the trigonometric form
    (cos s z_0 + i sin s z_k, i sin s z_0 + cos s z_k).
    """
    v = np.array(v, dtype=complex)
    if not 1 <= k < v.size:
        raise ValueError(f"boost plane (0, {k}) does not exist")
    t = complex(t)
    ch, sh = np.cosh(t), np.sinh(t)
    x0, xk = v[0], v[k]
    v[0] = ch * x0 + sh * xk
    v[k] = sh * x0 + ch * xk
    return v


def boost_matrix(n: int, a: float, k: int = 1) -> np.ndarray:
    g = np.eye(n + 1)
    g[0, 0] = g[k, k] = math.cosh(a)
    g[0, k] = g[k, 0] = math.sinh(a)
    return g


def random_lorentz(n: int, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    """Element of the identity component SO(1, n)_e as rotation * boost * rotation."""
    def rotation():
        g = np.eye(n + 1)
        if n >= 2:
            g[1:, 1:] = special_ortho_group.rvs(n, random_state=rng)
        return g

    return rotation() @ boost_matrix(n, rng.normal(scale=spread)) @ rotation()


def wedge_predicate(x, k: int = 1) -> bool:
    x = np.asarray(x, dtype=float)
    return bool(x[k] > abs(x[0]))


def wedge_positivity_region(x, k: int = 1, tol: float = SHELL_TOL) -> bool:
    """Is the boost vector field X_h(x) = h x timelike and future pointing at x?"""
    x = np.asarray(x, dtype=float)
    if abs(beta(x) + 1) > tol * max(1.0, float(np.dot(x, x))):
        raise OffShell(f"beta(x) = {float(beta(x))!r}, expected -1")
    field = boost_generator(x.size - 1, k) @ x
    if beta_form(x, field) != 0:
        raise OffShell("boost field is not tangent")
    return in_future_cone(field)


def tau_h_bar(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.conj(z)
    out[:2] = -out[:2]
    return out


def tau_h_bar_fixed(z, tol: float = 1e-12) -> bool:
    z = np.asarray(z, dtype=complex)
    return bool(np.max(np.abs(tau_h_bar(z) - z)) <= tol)


def crown_base_point(n: int, s: float, k: Optional[int] = None) -> np.ndarray:
    """exp(i s h_{0k}) i e_0 = i cos(s) e_0 - sin(s) e_k, default k = n."""
    e0 = np.zeros(n + 1, dtype=complex)
    e0[0] = 1j
    return modular_flow(1j * s, e0, n if k is None else k)


@dataclass(frozen=True)
class SlopeReport:
    lam: float
    fitted_slope: float
    pointwise_error: float


def boundary_slope_check(z, kmin: int = 8, kmax: int = 20, tol: float = 1e-9) -> SlopeReport:
    """Slope of pi/2 - delta(alpha_{it} z) as t -> pi/2-.

    For z = (i x_0, i x_1, x_2, ...) the flow gives delta = arccos(lam cos t)
    with lam = sqrt(x_0^2 - x_1^2).  The slope is fitted on eps = pi/2 - t =
    2^-k with the odd basis {eps, eps^3}; the closed form is checked pointwise.
    """
    z = np.asarray(z, dtype=complex)
    if not tau_h_bar_fixed(z):
        raise ValueError("point is not fixed by tau_h_bar")
    x0, x1 = z[0].imag, z[1].imag
    gap = x0 * x0 - x1 * x1
    if gap <= 0:
        raise DegenerateError("x_0^2 - x_1^2 must be positive")
    lam = math.sqrt(gap)
    eps = 2.0 ** -np.arange(kmin, kmax + 1, dtype=float)
    worst = 0.0
    ys = []
    for e in eps:
        t = math.pi / 2 - e
        d = delta(modular_flow(1j * t, z))
        worst = max(worst, abs(d - math.acos(lam * math.cos(t))))
        ys.append(math.pi / 2 - d)
    for t in np.linspace(0.0, 1.5, 7):
        d = delta(modular_flow(1j * t, z))
        worst = max(worst, abs(d - math.acos(min(1.0, lam * math.cos(t)))))
    if worst > tol:
        raise FormulaMismatch(f"delta along the flow deviates from arccos(lam cos t) by {worst:.2g}")
    design = np.column_stack([eps, eps**3])
    coef, *_ = np.linalg.lstsq(design, np.array(ys), rcond=None)
    return SlopeReport(lam, float(coef[0]), worst)


def sample_crown(n: int, rng: np.random.Generator, count: int, spread: float = 1.0) -> np.ndarray:
    """Crown points g . (i cos s e_0 - sin s e_n) with g random in SO(1, n)_e."""
    out = np.empty((count, n + 1), dtype=complex)
    for i in range(count):
        s = rng.uniform(-math.pi / 2, math.pi / 2)
        out[i] = random_lorentz(n, rng, spread) @ crown_base_point(n, s)
    return out


def sample_on_shell(n: int, rng: np.random.Generator, count: int, scale: float = 2.0) -> np.ndarray:
    """Points of dS^n: x_0 normal, spatial part uniform on the sphere of radius sqrt(1 + x_0^2)."""
    x0 = rng.normal(scale=scale, size=count)
    direction = rng.normal(size=(count, n))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    spatial = direction * np.sqrt(1 + x0**2)[:, None]
    return np.column_stack([x0, spatial])


def export_points(path: Union[str, Path], points: Iterable[Sequence[complex]]) -> int:
    """One CSV row per point: re/im per coordinate, delta and wedge flags."""
    rows = [np.asarray(p, dtype=complex) for p in points]
    if not rows:
        raise ValueError("nothing to export")
    dim = rows[0].size
    header = [f"re{i}" for i in range(dim)] + [f"im{i}" for i in range(dim)]
    header += ["delta", "in_crown", "on_shell", "wedge"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for z in rows:
            crown = in_crown(z)
            real = bool(np.all(z.imag == 0)) and _on_quadric(z, SHELL_TOL)
            row = [repr(float(v)) for v in z.real] + [repr(float(v)) for v in z.imag]
            row += [repr(delta(z)) if crown else "", int(crown), int(real)]
            row += [int(wedge_positivity_region(z.real)) if real else ""]
            w.writerow(row)
    return len(rows)
