"""Extended-precision backing for group matrices.

In the axis-normalized frame a short marked geodesic forces the handle
generators far from the frame base point, so their matrix entries are
O(1e3) and the surface relation amplifies entry-level rounding by ~1e9.
IEEE double simply cannot store such a generator tuple with relation
residual below 1e-10, so group generators carry an exact mpmath payload
alongside their float64 view.  All bulk geometry (orbits, distances,
polygon clipping) runs on the float64 views; only construction and
residual verification touch the payload.
"""

from __future__ import annotations

import numpy as np
from mpmath import mp, mpc, mpf

# Working precision for payload arithmetic.  40 digits leaves ~30 digits
# of headroom below every tolerance in the test suite even after the
# worst-case 1e9 amplification.
DPS = 40


def wd():
    """Context manager setting the payload working precision."""
    return mp.workdps(DPS)


def as_mp_matrix(rows):
    """Build a 3x3 object ndarray of mpc from nested values."""
    out = np.empty((3, 3), dtype=object)
    with wd():
        for i in range(3):
            for j in range(3):
                x = rows[i][j]
                out[i, j] = x if isinstance(x, (mpf, mpc)) else mpc(x)
    return out


def mp_from_c128(m):
    """Exact payload for a float64 complex matrix (binary floats embed exactly)."""
    out = np.empty((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            z = complex(m[i, j])
            out[i, j] = mpc(mpf(z.real), mpf(z.imag))
    return out


def mp_to_c128(m):
    out = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            out[i, j] = complex(m[i, j])
    return out


def mp_matmul(a, b):
    with wd():
        return a @ b


def mp_conj_t(m):
    out = np.empty((3, 3), dtype=object)
    with wd():
        for i in range(3):
            for j in range(3):
                out[i, j] = mpc(m[j, i]).conjugate()
    return out


def mp_max_abs(m):
    with wd():
        return float(max(abs(m[i, j]) for i in range(3) for j in range(3)))


MP_IDENTITY = as_mp_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def mp_scalar_residual(m):
    """Max entry deviation of ``m`` from the nearest unit-scalar multiple of I."""
    with wd():
        s = (m[0, 0] + m[1, 1] + m[2, 2]) / 3
        a = abs(s)
        if a > mpf("0.1"):
            s = s / a
        else:
            s = mpc(1)
        return float(max(abs(m[i, j] - (s if i == j else 0)) for i in range(3) for j in range(3)))


# ---------------------------------------------------------------------------
# Exact decimal serialization.  An mpf is man*2^exp; binary fractions have
# terminating decimal expansions, so every payload entry round-trips through
# a finite decimal literal.
# ---------------------------------------------------------------------------

def mpf_to_decimal(x) -> str:
    x = mpf(x)
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return "0.0" if not (exp or sign) else ("-0.0" if sign else "0.0")
    neg = "-" if sign else ""
    if exp >= 0:
        return f"{neg}{man << exp}.0"
    digits = str(man * 5 ** (-exp))
    if len(digits) <= -exp:
        digits = "0" * (-exp - len(digits) + 1) + digits
    intpart, frac = digits[:exp], digits[exp:]
    return f"{neg}{intpart or '0'}.{frac}"


def decimal_to_mpf(s: str):
    # Parse with enough precision that the (finite-binary) value is recovered
    # exactly: 4 bits per decimal digit is a safe overestimate.
    with mp.workprec(max(64, 4 * len(s))):
        return mpf(s)
