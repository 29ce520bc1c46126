"""Matrix models of sl(2, R) and so(1, n) with Euler elements.

Everything is done in coordinates with respect to a fixed real basis: ``ad x``
is the matrix of [x, .] on those coordinates, and the involutions are
matrices on the same coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
from scipy.linalg import expm, null_space

from .errors import NotEuler, NotInP

TOL = 1e-10


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    size: int
    basis: Tuple[np.ndarray, ...] = field(repr=False)
    form: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: np.ndarray, tol: float = 1e-12) -> bool:
        x = np.asarray(x)
        if x.shape != (self.size, self.size):
            return False
        return bool(np.max(np.abs(x.T @ self.form + self.form @ x), initial=0.0) <= tol * max(1.0, np.max(np.abs(x))))

    def coords(self, x: np.ndarray) -> np.ndarray:
        flat = np.column_stack([b.ravel() for b in self.basis])
        c, *_ = np.linalg.lstsq(flat.astype(complex), np.asarray(x, dtype=complex).ravel(), rcond=None)
        return c if np.iscomplexobj(x) else c.real

    def element(self, c) -> np.ndarray:
        return sum(ci * b for ci, b in zip(c, self.basis))

    def ad(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        return np.column_stack([self.coords(x @ b - b @ x) for b in self.basis])


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def sl2() -> LieAlgebra:
    """Basis (e, h, f) with h = diag(1/2, -1/2)."""
    e = np.array([[0.0, 1.0], [0.0, 0.0]])
    h = 0.5 * np.diag([1.0, -1.0])
    f = np.array([[0.0, 0.0], [1.0, 0.0]])
    # trace-free is x^T J + J x = 0 for the symplectic J
    return LieAlgebra("sl2", 2, (e, h, f), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def so1n(n: int) -> LieAlgebra:
    """Boosts E_0k + E_k0 first, then rotations E_ij - E_ji."""
    if n < 1:
        raise ValueError("so(1,n) needs n >= 1")
    basis: List[np.ndarray] = []
    for k in range(1, n + 1):
        b = np.zeros((n + 1, n + 1))
        b[0, k] = b[k, 0] = 1.0
        basis.append(b)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            b = np.zeros((n + 1, n + 1))
            b[i, j], b[j, i] = 1.0, -1.0
            basis.append(b)
    eta = np.diag([1.0] + [-1.0] * n)
    return LieAlgebra(f"so(1,{n})", n + 1, tuple(basis), eta)


def sl2_h() -> np.ndarray:
    return 0.5 * np.diag([1.0, -1.0])


def sl2_rotation() -> np.ndarray:
    return np.array([[0.0, -1.0], [1.0, 0.0]])


def so1n_boost(n: int, k: int = 1) -> np.ndarray:
    b = np.zeros((n + 1, n + 1))
    b[0, k] = b[k, 0] = 1.0
    return b


@dataclass(frozen=True)
class MatElem:
    entries: np.ndarray
    algebra: LieAlgebra

    def __post_init__(self) -> None:
        x = np.asarray(self.entries)
        if not self.algebra.contains(x):
            raise ValueError(f"matrix is not in {self.algebra.name}")
        object.__setattr__(self, "entries", x)

    def scaled(self, t: float) -> "MatElem":
        return MatElem(t * self.entries, self.algebra)


def is_euler(x: MatElem, tol: float = TOL) -> bool:
    """(ad x)^3 = ad x with ad x nonzero."""
    a = x.algebra.ad(x.entries)
    size = np.max(np.abs(a))
    if size <= 1e-12:
        return False
    return bool(np.max(np.abs(a @ a @ a - a)) <= tol * max(1.0, size))


@dataclass(frozen=True)
class Grading:
    g1: Tuple[np.ndarray, ...]
    g0: Tuple[np.ndarray, ...]
    gm1: Tuple[np.ndarray, ...]

    @property
    def dims(self) -> Tuple[int, int, int]:
        return len(self.g1), len(self.g0), len(self.gm1)

    def part(self, degree: int) -> Tuple[np.ndarray, ...]:
        return {1: self.g1, 0: self.g0, -1: self.gm1}.get(degree, ())


def _eigencoords(h: MatElem, value: float) -> np.ndarray:
    a = h.algebra.ad(h.entries)
    return null_space(a - value * np.eye(a.shape[0]), rcond=1e-9)


def grading(h: MatElem) -> Grading:
    if not is_euler(h):
        raise NotEuler("ad h is not diagonalisable with spectrum in {-1, 0, 1}")
    alg = h.algebra
    parts = [tuple(alg.element(c) for c in _eigencoords(h, v).T) for v in (1.0, 0.0, -1.0)]
    return Grading(*parts)


@dataclass(frozen=True)
class Involutions:
    """theta, tau_h and tau = theta tau_h, as maps and as coordinate matrices."""

    theta: Callable[[np.ndarray], np.ndarray]
    tau_h: Callable[[np.ndarray], np.ndarray]
    tau: Callable[[np.ndarray], np.ndarray]
    theta_matrix: np.ndarray
    tau_h_matrix: np.ndarray
    tau_matrix: np.ndarray


def cartan_involution(x: np.ndarray) -> np.ndarray:
    """theta(x) = -x^T; on so(1, n) this equals eta x eta."""
    return -np.asarray(x).T


def involutions(h: MatElem) -> Involutions:
    g = grading(h)
    alg = h.algebra
    cols = [alg.coords(b) for part in (g.g1, g.g0, g.gm1) for b in part]
    signs = [-1.0] * len(g.g1) + [1.0] * len(g.g0) + [-1.0] * len(g.gm1)
    p = np.column_stack(cols)
    tau_h_m = p @ np.diag(signs) @ np.linalg.inv(p)
    theta_m = np.column_stack([alg.coords(cartan_involution(b)) for b in alg.basis])
    tau_m = theta_m @ tau_h_m

    def via(m):
        return lambda x: alg.element(m @ alg.coords(x))

    return Involutions(via(theta_m), via(tau_h_m), via(tau_m), theta_m, tau_h_m, tau_m)


def tau_h_by_exponential(h: MatElem) -> np.ndarray:
    """e^{pi i ad h} on coordinates, real up to rounding."""
    return expm(1j * math.pi * h.algebra.ad(h.entries))


def is_automorphism(alg: LieAlgebra, m: np.ndarray, tol: float = TOL) -> bool:
    worst = 0.0
    for i, x in enumerate(alg.basis):
        for y in alg.basis[i:]:
            lhs = m @ alg.coords(bracket(x, y))
            rhs = alg.coords(bracket(alg.element(m @ alg.coords(x)), alg.element(m @ alg.coords(y))))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst <= tol


def eigenspace(m: np.ndarray, value: float) -> np.ndarray:
    return null_space(m - value * np.eye(m.shape[0]), rcond=1e-9)


def omega_p_member(x: MatElem) -> bool:
    """x in p with the spectrum of ad x inside (-pi/2, pi/2)."""
    if np.max(np.abs(cartan_involution(x.entries) + x.entries)) > 1e-12:
        raise NotInP("theta(x) != -x")
    radius = np.max(np.abs(np.linalg.eigvals(x.algebra.ad(x.entries))))
    return bool(radius < math.pi / 2)


@dataclass(frozen=True)
class ZetaReport:
    ok: bool
    dim_h: int
    dim_hk: int
    dim_qk: int
    imag_residual: float
    span_residual: float


def zeta_report(h: MatElem, tol: float = 1e-9) -> ZetaReport:
    """Apply zeta = e^{-(pi i/2) ad h} to h_k + i q_k and compare with h = g^tau."""
    inv = involutions(h)
    alg = h.algebra
    d = alg.dim
    p_theta = 0.5 * (np.eye(d) + inv.theta_matrix)
    tau_plus = 0.5 * (np.eye(d) + inv.tau_matrix)
    tau_minus = 0.5 * (np.eye(d) - inv.tau_matrix)

    def image(m):
        u, sv, _ = np.linalg.svd(m)
        return u[:, : int(np.sum(sv > 1e-9))]

    h_sub = image(tau_plus)
    hk = image(p_theta @ tau_plus)
    qk = image(p_theta @ tau_minus)
    zeta = expm(-0.5j * math.pi * alg.ad(h.entries))
    mapped = np.column_stack([zeta @ hk, zeta @ (1j * qk)]) if hk.size or qk.size else np.zeros((d, 0))
    imag_res = float(np.max(np.abs(mapped.imag), initial=0.0))
    real = mapped.real
    span_res = float(np.max(np.abs(real - h_sub @ (h_sub.T @ real)), initial=0.0))
    rank = int(np.sum(np.linalg.svd(real, compute_uv=False) > 1e-9)) if real.size else 0
    ok = imag_res <= tol and span_res <= tol and rank == h_sub.shape[1]
    return ZetaReport(ok, h_sub.shape[1], hk.shape[1], qk.shape[1], imag_res, span_res)


def zeta_map_check(h: MatElem, tol: float = 1e-9) -> bool:
    return zeta_report(h, tol).ok
