"""The Heisenberg group C x R as the boundary of the Siegel model.

Points (xi, v) carry the twisted product
(xi1, v1) . (xi2, v2) = (xi1 + xi2, v1 + v2 + 2 Im(xi1 conj(xi2)))
and the Cygan norm ||(xi, v, u)|| = | |xi|^2 + u - i v |^(1/2) on the
half space C x R x [0, inf).  A finite point lifts to the null vector
((-|xi|^2 + i v)/2, xi, 1); infinity lifts to (1, 0, 0).

The similarity group is generated by left translations, the dilations
diag(lam, 1, 1/lam) acting as (xi, v) -> (lam xi, lam^2 v), and the
vertical rotations diag(1, e^{i eta}, 1) acting as (xi, v) -> (e^{i eta} xi, v).

``flattening_map(r)`` is the distinguished element h_r carrying the
Cygan sphere S(0, r) onto the horizontal plane (C x {0}) u {inf}: it
fixes the radius-r horizontal chain pointwise, sends (0, -r^2) to the
origin and (0, r^2) to infinity, and commutes with the vertical
rotations.  h_1 is the complex reflection of angle pi/2 about the
polar vector (1, 0, 2) of the unit chain; h_r is its conjugate by
dilation(r).  The orientation choice (0, -r^2) -> 0 is fixed here once;
flipping it conjugates the whole bending construction and changes no
verified quantity.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np
from mpmath import mpc, mpf

from . import _precision as xp
from .core import SIEGEL, Isometry
from .errors import DomainError

__all__ = [
    "HeisenbergPoint", "INFINITY", "HalfSpacePoint", "HeisenbergSphere",
    "cygan_norm", "cygan_metric", "heis_mul", "heis_inverse",
    "heis_translation", "dilation", "rotation_u", "flattening_map",
    "sphere_membership", "sphere_sample", "heis_lift", "heis_from_lift",
    "apply_boundary",
]


@dataclass(frozen=True)
class HeisenbergPoint:
    """Boundary point (xi, v), or the point at infinity."""

    xi: complex = 0.0
    v: float = 0.0
    infinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "v", float(self.v))
        if self.infinite and (self.xi != 0 or self.v != 0):
            raise DomainError("the point at infinity carries no coordinates")

    def is_infinity(self) -> bool:
        return self.infinite

    def __repr__(self):
        if self.infinite:
            return "HeisenbergPoint(INFINITY)"
        return f"HeisenbergPoint(xi={self.xi:.6g}, v={self.v:.6g})"


INFINITY = HeisenbergPoint(infinite=True)


@dataclass(frozen=True)
class HalfSpacePoint:
    """Horospherical coordinates (xi, v, u) with height u >= 0."""

    xi: complex
    v: float
    u: float

    def __post_init__(self):
        if self.u < 0:
            raise DomainError("horospherical height must be nonnegative")

    def boundary(self) -> HeisenbergPoint:
        if self.u != 0:
            raise DomainError("interior point has no boundary coordinates")
        return HeisenbergPoint(self.xi, self.v)


@dataclass(frozen=True)
class HeisenbergSphere:
    """Cygan sphere S(0, r) about the origin."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("sphere radius must be positive")


# ---------------------------------------------------------------------------
# Norm, group law, metric
# ---------------------------------------------------------------------------

def cygan_norm(p) -> float:
    """| |xi|^2 + u - i v |^(1/2); zero exactly at the origin."""
    if isinstance(p, HeisenbergPoint):
        if p.infinite:
            raise DomainError("cygan_norm is undefined at infinity")
        xi, v, u = p.xi, p.v, 0.0
    elif isinstance(p, HalfSpacePoint):
        xi, v, u = p.xi, p.v, p.u
    else:
        xi, v, u = p
    return float(np.sqrt(abs(abs(xi) ** 2 + u - 1j * v)))


def heis_mul(p: HeisenbergPoint, q: HeisenbergPoint) -> HeisenbergPoint:
    if p.infinite or q.infinite:
        raise DomainError("group law is defined on finite points")
    return HeisenbergPoint(p.xi + q.xi, p.v + q.v + 2.0 * (p.xi * np.conj(q.xi)).imag)


def heis_inverse(p: HeisenbergPoint) -> HeisenbergPoint:
    if p.infinite:
        raise DomainError("group law is defined on finite points")
    return HeisenbergPoint(-p.xi, -p.v)


def cygan_metric(p: HeisenbergPoint, q: HeisenbergPoint) -> float:
    """Left-invariant distance ||q^-1 . p||."""
    return cygan_norm(heis_mul(heis_inverse(q), p))


# ---------------------------------------------------------------------------
# Lifts
# ---------------------------------------------------------------------------

def heis_lift(p: HeisenbergPoint) -> np.ndarray:
    if p.infinite:
        return np.array([1.0, 0.0, 0.0], dtype=complex)
    return np.array([(-abs(p.xi) ** 2 + 1j * p.v) / 2.0, p.xi, 1.0], dtype=complex)


def heis_from_lift(w) -> HeisenbergPoint:
    w = np.asarray(w, dtype=complex)
    top = float(np.abs(w).max())
    if top == 0.0:
        raise DomainError("zero vector is not a lift")
    if abs(w[2]) <= 1e-13 * top:
        return INFINITY
    xi = w[1] / w[2]
    v = float((2.0 * w[0] / w[2]).imag)
    return HeisenbergPoint(xi, v)


def apply_boundary(g: Isometry, p: HeisenbergPoint) -> HeisenbergPoint:
    """Boundary action of a SIEGEL-model isometry."""
    if g.form.tag != "SIEGEL":
        raise DomainError("boundary action needs the SIEGEL model")
    return heis_from_lift(g.apply(heis_lift(p)))


# ---------------------------------------------------------------------------
# Similarities
# ---------------------------------------------------------------------------

def heis_translation(xi, v) -> Isometry:
    """Left translation by (xi, v)."""
    xi = complex(xi)
    v = float(v)
    m = np.array([
        [1.0, -np.conj(xi), (-abs(xi) ** 2 + 1j * v) / 2.0],
        [0.0, 1.0, xi],
        [0.0, 0.0, 1.0],
    ], dtype=complex)
    with xp.wd():
        x = mpc(mpf(xi.real), mpf(xi.imag))
        payload = xp.as_mp_matrix([
            [1, -x.conjugate(), (-(x * x.conjugate()) + mpc(0, 1) * mpf(v)) / 2],
            [0, 1, x],
            [0, 0, 1],
        ])
    return Isometry(m, SIEGEL, mp_payload=payload, check=False)


def dilation(lam: float) -> Isometry:
    """diag(lam, 1, 1/lam): (xi, v) -> (lam xi, lam^2 v)."""
    if not lam > 0:
        raise DomainError("dilation factor must be positive")
    lam = float(lam)
    m = np.diag([lam, 1.0, 1.0 / lam]).astype(complex)
    with xp.wd():
        payload = xp.as_mp_matrix([[mpf(lam), 0, 0], [0, 1, 0], [0, 0, 1 / mpf(lam)]])
    return Isometry(m, SIEGEL, mp_payload=payload, check=False)


def rotation_u(eta: float) -> Isometry:
    """diag(1, e^{i eta}, 1): rotation by eta about the vertical axis."""
    from mpmath import cos as mcos, sin as msin
    eta = float(eta)
    m = np.diag([1.0, np.exp(1j * eta), 1.0]).astype(complex)
    with xp.wd():
        e = mpc(mcos(mpf(eta)), msin(mpf(eta)))
        payload = xp.as_mp_matrix([[1, 0, 0], [0, e, 0], [0, 0, 1]])
    return Isometry(m, SIEGEL, mp_payload=payload, check=False)


@functools.lru_cache(maxsize=1)
def _h1() -> Isometry:
    # Complex reflection of angle pi/2 about c = (1, 0, 2), the polar
    # vector of the unit horizontal chain: h = I + ((i-1)/4) c (J conj c)^T.
    # It fixes the chain pointwise and sends (0, -1) -> 0, (0, 1) -> inf.
    i = 1j
    m = np.array([
        [(1 + i) / 2, 0.0, (i - 1) / 4],
        [0.0, 1.0, 0.0],
        [i - 1, 0.0, (1 + i) / 2],
    ], dtype=complex)
    with xp.wd():
        I = mpc(0, 1)
        payload = xp.as_mp_matrix([
            [(1 + I) / 2, 0, (I - 1) / 4],
            [0, 1, 0],
            [I - 1, 0, (1 + I) / 2],
        ])
    return Isometry(m, SIEGEL, mp_payload=payload, check=False)


def flattening_map(r: float) -> Isometry:
    """h_r = dilation(r) h_1 dilation(1/r), carrying S(0, r) to the
    horizontal plane; see the module docstring for its three defining
    properties."""
    if not r > 0:
        raise DomainError("sphere radius must be positive")
    r = float(r)
    if r == 1.0:
        return _h1()
    return dilation(r) @ _h1() @ dilation(1.0 / r)


# ---------------------------------------------------------------------------
# Spheres
# ---------------------------------------------------------------------------

def sphere_membership(p: HeisenbergPoint, sphere: HeisenbergSphere, tol: float = 1e-10) -> bool:
    if p.infinite:
        return False
    return abs(cygan_norm(p) - sphere.radius) <= tol


def sphere_sample(sphere: HeisenbergSphere, n: int) -> list[HeisenbergPoint]:
    """n grid points on S(0, r), indexed by angle and height.

    Parametrized by v = r^2 cos(a), |xi| = r sqrt(sin(a)) for a in (0, pi).
    """
    if n < 1:
        raise DomainError("need n >= 1 sample points")
    r = sphere.radius
    n_a = max(1, int(round(np.sqrt(n / 2.0))))
    n_t = int(np.ceil(n / n_a))
    pts = []
    for j in range(n_a):
        a = np.pi * (j + 0.5) / n_a
        v = r * r * np.cos(a)
        rho = r * np.sqrt(np.sin(a))
        for k in range(n_t):
            th = 2.0 * np.pi * k / n_t
            pts.append(HeisenbergPoint(rho * np.exp(1j * th), v))
            if len(pts) == n:
                return pts
    return pts
