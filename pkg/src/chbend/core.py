"""Hermitian linear algebra for the complex hyperbolic plane.

The complex hyperbolic plane is carried in two projective models, each a
signature-(2,1) Hermitian form on C^3:

* ``BALL``:   J = diag(1, 1, -1); interior points are lifts (z1, z2, 1)
  with |z1|^2 + |z2|^2 < 1.
* ``SIEGEL``: J = antidiag(1, 1, 1) pairing the first and third
  coordinates; boundary points are Heisenberg coordinates (xi, v) with
  lift ((-|xi|^2 - u + i v)/2, xi, 1) and the point at infinity (1,0,0).

The pairing is ``<v, w> = v^T J conj(w)`` (linear in the first slot).
Distances are normalized so that cosh^2(d/2) = <p,q><q,p>/(<p,p><q,q>),
which makes totally real planes have curvature -1/4 and the restriction
of the metric to the real locus equal twice the Klein-model distance.
That single convention fixes every collar formula in :mod:`.fuchsian`;
change it here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _precision as xp
from .errors import DomainError

__all__ = [
    "HermitianForm", "BALL", "SIEGEL", "hermitian_product", "Isometry",
    "ball_lift", "ball_coords", "distance", "Classification", "classify",
    "translation_length", "cayley", "TO_SIEGEL", "TO_BALL",
]

# Structural identities (form preservation, intertwiners) hold to this.
STRUCT_TOL = 1e-12
# Tolerance band below which the trace discriminant is inconclusive.
AMBIGUOUS_BAND = 1e-9


@dataclass(frozen=True)
class HermitianForm:
    """A signature-(2,1) Hermitian form with a model tag."""

    tag: str

    @property
    def matrix(self) -> np.ndarray:
        return _FORM_MATRICES[self.tag]

    def mp_matrix(self):
        return _FORM_MP[self.tag]


_FORM_MATRICES = {
    "BALL": np.diag([1.0, 1.0, -1.0]).astype(complex),
    "SIEGEL": np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex),
}
_FORM_MP = {tag: xp.as_mp_matrix(m.real.astype(int).tolist()) for tag, m in _FORM_MATRICES.items()}

BALL = HermitianForm("BALL")
SIEGEL = HermitianForm("SIEGEL")


def hermitian_product(v, w, form: HermitianForm = SIEGEL):
    """Pairing <v, w> = v^T J conj(w); conjugate-symmetric in (v, w)."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return v @ form.matrix @ np.conj(w)


class Isometry:
    """A holomorphic isometry: 3x3 matrix with m* J m = J, up to unit scalar.

    ``matrix`` is the float64 working view used by all bulk geometry.  An
    optional exact mpmath payload rides along so that group-theoretic
    residuals (defining relations, form preservation) can be verified far
    below float64 rounding noise; see :mod:`._precision` for why.
    """

    __slots__ = ("matrix", "form", "_mp")

    def __init__(self, matrix, form: HermitianForm, mp_payload=None, check: bool = True):
        if mp_payload is not None and not isinstance(matrix, np.ndarray):
            matrix = xp.mp_to_c128(mp_payload)
        m = np.array(matrix, dtype=complex).reshape(3, 3)
        m.setflags(write=False)
        self.matrix = m
        self.form = form
        self._mp = mp_payload
        if check:
            scale = max(1.0, float(np.abs(m).max()) ** 2)
            if self.form_residual() > 1e-8 * scale:
                raise DomainError("matrix does not preserve the Hermitian form")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def identity(cls, form: HermitianForm = SIEGEL):
        return cls(np.eye(3, dtype=complex), form, mp_payload=xp.MP_IDENTITY, check=False)

    def with_payload(self):
        """Return an equal isometry carrying an exact payload."""
        if self._mp is not None:
            return self
        return Isometry(self.matrix, self.form, mp_payload=xp.mp_from_c128(self.matrix), check=False)

    # -- algebra ---------------------------------------------------------------

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if self.form.tag != other.form.tag:
            raise DomainError("cannot compose isometries of different models")
        payload = None
        if self._mp is not None and other._mp is not None:
            payload = xp.mp_matmul(self._mp, other._mp)
            return Isometry(xp.mp_to_c128(payload), self.form, mp_payload=payload, check=False)
        return Isometry(self.matrix @ other.matrix, self.form, check=False)

    def inverse(self) -> "Isometry":
        # For a form-preserving m, m^-1 = J m* J exactly; no linear solve.
        J = self.form.matrix
        payload = None
        if self._mp is not None:
            Jmp = self.form.mp_matrix()
            payload = xp.mp_matmul(xp.mp_matmul(Jmp, xp.mp_conj_t(self._mp)), Jmp)
            return Isometry(xp.mp_to_c128(payload), self.form, mp_payload=payload, check=False)
        return Isometry(J @ np.conj(self.matrix.T) @ J, self.form, check=False)

    def det1(self) -> "Isometry":
        """Representative scaled to determinant 1 (principal cube root)."""
        d = np.linalg.det(self.matrix)
        s = d ** (-1.0 / 3.0)
        return Isometry(s * self.matrix, self.form, check=False)

    def apply(self, lift) -> np.ndarray:
        return self.matrix @ np.asarray(lift, dtype=complex)

    # -- diagnostics -------------------------------------------------------------

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def form_residual(self) -> float:
        """max |m* J m - J|, evaluated on the exact payload when present."""
        if self._mp is not None:
            Jmp = self.form.mp_matrix()
            r = xp.mp_matmul(xp.mp_matmul(xp.mp_conj_t(self._mp), Jmp), self._mp)
            with xp.wd():
                return float(max(abs(r[i, j] - Jmp[i, j]) for i in range(3) for j in range(3)))
        J = self.form.matrix
        return float(np.abs(np.conj(self.matrix.T) @ J @ self.matrix - J).max())

    def projectively_equal(self, other: "Isometry", tol: float = 1e-10) -> bool:
        """Equality in PU(2,1): equal up to a unit complex scalar."""
        a, b = self.matrix, other.matrix
        s = np.vdot(a, b) / np.vdot(a, a)
        if abs(abs(s) - 1.0) > max(tol, 1e-9):
            return False
        return bool(np.abs(b - s * a).max() <= tol * max(1.0, np.abs(a).max()))

    def __repr__(self):
        return f"Isometry({self.form.tag}, trace={self.trace:.6g})"


# ---------------------------------------------------------------------------
# Points and distance
# ---------------------------------------------------------------------------

def ball_lift(z1, z2) -> np.ndarray:
    return np.array([z1, z2, 1.0], dtype=complex)


def ball_coords(lift) -> tuple[complex, complex]:
    lift = np.asarray(lift, dtype=complex)
    if abs(lift[2]) < 1e-14 * np.abs(lift).max():
        raise DomainError("lift is at infinity of the affine chart")
    return complex(lift[0] / lift[2]), complex(lift[1] / lift[2])


def _norm2(lift, form):
    return float(np.real(hermitian_product(lift, lift, form)))


def distance(p, q, form: HermitianForm = BALL) -> float:
    """Distance with cosh^2(d/2) = <p,q><q,p> / (<p,p><q,q>).

    Both lifts must be interior (negative vectors); boundary input raises.
    """
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    pp = _norm2(p, form)
    qq = _norm2(q, form)
    if pp >= -1e-13 * np.abs(p).max() ** 2 or qq >= -1e-13 * np.abs(q).max() ** 2:
        raise DomainError("distance requires interior points (negative lifts)")
    pq = hermitian_product(p, q, form)
    ratio = float(np.real(pq * np.conj(pq))) / (pp * qq)
    return 2.0 * np.arccosh(np.sqrt(max(ratio, 1.0)))


# ---------------------------------------------------------------------------
# Trace classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str                 # "ELLIPTIC" | "PARABOLIC" | "LOXODROMIC"
    discriminant: float
    trace: complex
    ambiguous: bool = False   # discriminant inside the +-1e-9 band
    identity: bool = False


def trace_discriminant(tau: complex) -> float:
    """f(tau) = |tau|^4 - 8 Re(tau^3) + 18 |tau|^2 - 27.

    Equals the discriminant of the characteristic polynomial of a
    determinant-1 representative: positive iff loxodromic, negative iff
    regular elliptic, zero on the parabolic/boundary-elliptic locus.
    """
    t2 = abs(tau) ** 2
    return t2 * t2 - 8.0 * (tau ** 3).real + 18.0 * t2 - 27.0


def _bounded_power_growth(m: np.ndarray) -> float:
    """Ratio ||m^(2^20)|| / ||m|| via repeated squaring (inf on blow-up)."""
    base = float(np.abs(m).max())
    p = m.copy()
    for _ in range(20):
        p = p @ p
        top = float(np.abs(p).max())
        if not np.isfinite(top) or top > 1e30:
            return np.inf
    return float(np.abs(p).max()) / base


def classify(g: Isometry) -> Classification:
    """Classify by the trace discriminant; settle the degenerate band by
    the eigenvalue structure (bounded powers = elliptic, polynomial
    growth = parabolic, exponential = loxodromic)."""
    m = g.det1().matrix
    tau = complex(np.trace(m))
    f = trace_discriminant(tau)
    if abs(f) >= AMBIGUOUS_BAND:
        kind = "LOXODROMIC" if f > 0 else "ELLIPTIC"
        return Classification(kind, f, tau)
    s = tau / 3.0
    if abs(abs(s) - 1.0) < 1e-8 and np.abs(m - s * np.eye(3)).max() < 1e-10 * max(1.0, np.abs(m).max()):
        return Classification("ELLIPTIC", f, tau, ambiguous=True, identity=True)
    growth = _bounded_power_growth(m)
    if growth < 1e3 * max(1.0, float(np.abs(m).max())):
        kind = "ELLIPTIC"
    elif np.isfinite(growth):
        kind = "PARABOLIC"
    else:
        kind = "LOXODROMIC"
    return Classification(kind, f, tau, ambiguous=True)


def translation_length(g: Isometry) -> float:
    """2 ln |largest eigenvalue| of a determinant-1 loxodromic representative."""
    c = classify(g)
    if c.kind != "LOXODROMIC":
        raise DomainError(f"translation_length needs a loxodromic element, got {c.kind}")
    lam = np.abs(np.linalg.eigvals(g.det1().matrix)).max()
    return 2.0 * float(np.log(lam))


# ---------------------------------------------------------------------------
# Cayley transform between the two models
# ---------------------------------------------------------------------------

_S2 = np.sqrt(2.0)
# TO_SIEGEL maps BALL lifts/matrices to SIEGEL ones; it intertwines the
# forms: TO_SIEGEL^T J_SIEGEL TO_SIEGEL = J_BALL.  It is real, so the
# real locus {(x1, x2) in R^2} lands on {xi in R, v = 0} and the marked
# diameter through (+-1, 0) becomes the vertical axis (0, infinity).
TO_SIEGEL = np.array([[0, 1, 1], [_S2, 0, 0], [0, 1, -1]]) / _S2
TO_BALL = np.array([[0, _S2, 0], [1, 0, 1], [1, 0, -1]]) / _S2

_MP_S2 = None


def _mp_cayley():
    global _MP_S2
    if _MP_S2 is None:
        from mpmath import mpf, sqrt
        with xp.wd():
            r2 = sqrt(mpf(2))
            ts = xp.as_mp_matrix([[0, 1 / r2, 1 / r2], [1, 0, 0], [0, 1 / r2, -1 / r2]])
            tb = xp.as_mp_matrix([[0, 1, 0], [1 / r2, 0, 1 / r2], [1 / r2, 0, -1 / r2]])
        _MP_S2 = (ts, tb)
    return _MP_S2


def cayley(obj, to: str):
    """Convert a lift (ndarray) or an :class:`Isometry` between models.

    Round-trips are exact to 1e-12 or better; the BALL boundary point
    (1, 0) is the unique pole, mapping to infinity in the SIEGEL model.
    """
    if to not in ("BALL", "SIEGEL"):
        raise DomainError("direction must be 'BALL' or 'SIEGEL'")
    if isinstance(obj, Isometry):
        if obj.form.tag == to:
            return obj
        R, Rinv = (TO_SIEGEL, TO_BALL) if to == "SIEGEL" else (TO_BALL, TO_SIEGEL)
        target = SIEGEL if to == "SIEGEL" else BALL
        if obj._mp is not None:
            ts, tb = _mp_cayley()
            Rm, Rim = (ts, tb) if to == "SIEGEL" else (tb, ts)
            payload = xp.mp_matmul(xp.mp_matmul(Rm, obj._mp), Rim)
            return Isometry(xp.mp_to_c128(payload), target, mp_payload=payload, check=False)
        return Isometry(R @ obj.matrix @ Rinv, target, check=False)
    v = np.asarray(obj, dtype=complex)
    R = TO_SIEGEL if to == "SIEGEL" else TO_BALL
    return R @ v
