"""Fixed-size tensor containers and central finite differences.

Everything here is dimension 3 (or the 2-D meridian sub-case) and dense.
The finite-difference helpers accept scalar- or array-valued callables of a
2-vector; array results are differentiated elementwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMetric

log = logging.getLogger(__name__)

DEFAULT_STEP = 1e-3
RICHARDSON_TOL = 1e-6
DEGENERACY_THRESHOLD = 1e-12

# lower-triangle packing order: (0,0) (1,0) (1,1) (2,0) (2,1) (2,2)
_PAIR = np.array([[0, 1, 3], [1, 2, 4], [3, 4, 5]])


def _shifted(p, axis, delta):
    q = np.array(p, dtype=float)
    q[axis] += delta
    return q


def fd_derivative(f, p, axis, h=DEFAULT_STEP):
    """Fourth-order central difference of ``f`` along ``axis`` at ``p``.

    Uses (-f(+2h) + 8 f(+h) - 8 f(-h) + f(-2h)) / 12h, which is exact for
    polynomials up to degree four.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    fp2 = f(_shifted(p, axis, 2 * h))
    fp1 = f(_shifted(p, axis, h))
    fm1 = f(_shifted(p, axis, -h))
    fm2 = f(_shifted(p, axis, -2 * h))
    # paired differences: constants give exactly zero
    out = ((fm2 - fp2) + 8 * (fp1 - fm1)) / (12 * h)
    if not np.all(np.isfinite(out)):
        raise FloatingPointError(f"non-finite sample in fd_derivative at {p!r}")
    return out


def fd_second_derivative(f, p, axis, h=DEFAULT_STEP):
    """Fourth-order central second difference along ``axis``."""
    if not h > 0:
        raise ValueError("step h must be positive")
    f0 = f(np.asarray(p, dtype=float))
    fp2 = f(_shifted(p, axis, 2 * h))
    fp1 = f(_shifted(p, axis, h))
    fm1 = f(_shifted(p, axis, -h))
    fm2 = f(_shifted(p, axis, -2 * h))
    out = (16 * ((fp1 - f0) + (fm1 - f0)) - ((fp2 - f0) + (fm2 - f0))) / (12 * h * h)
    if not np.all(np.isfinite(out)):
        raise FloatingPointError(f"non-finite sample in fd_second_derivative at {p!r}")
    return out


def fd_derivative_checked(f, p, axis, h=DEFAULT_STEP, tol=RICHARDSON_TOL):
    """Derivative at step ``h`` plus the gap to the same estimate at ``h/2``.

    Returns ``(value, gap)``. A gap above ``tol`` (scaled by max(1, |value|))
    is logged as a warning; the value is still returned.
    """
    coarse = fd_derivative(f, p, axis, h)
    fine = fd_derivative(f, p, axis, h / 2)
    gap = float(np.max(np.abs(coarse - fine)))
    scale = max(1.0, float(np.max(np.abs(fine))))
    if gap > tol * scale:
        log.warning("Richardson check failed at p=%s axis=%d: gap %.3g", p, axis, gap)
    return fine, gap


@dataclass(frozen=True)
class Mat3Sym:
    """Symmetric 3x3 matrix stored as its lower triangle."""

    lower: tuple  # (m00, m10, m11, m20, m21, m22)

    def __post_init__(self):
        vals = tuple(float(x) for x in self.lower)
        if len(vals) != 6:
            raise ValueError("Mat3Sym needs exactly 6 lower-triangle entries")
        if not all(np.isfinite(vals)):
            raise ValueError("Mat3Sym entries must be finite")
        object.__setattr__(self, "lower", vals)

    @classmethod
    def diag(cls, a, b, c):
        return cls((a, 0.0, b, 0.0, 0.0, c))

    @classmethod
    def from_array(cls, m):
        m = np.asarray(m, dtype=float)
        if m.shape == (2, 2):
            m = np.pad(m, ((0, 1), (0, 1)))
        if m.shape != (3, 3):
            raise ValueError(f"expected 3x3 (or 2x2) matrix, got {m.shape}")
        return cls((m[0, 0], m[1, 0], m[1, 1], m[2, 0], m[2, 1], m[2, 2]))

    def __getitem__(self, ij):
        i, j = ij
        return self.lower[_PAIR[i, j]]

    @property
    def array(self):
        return np.array(self.lower)[_PAIR]

    def det(self):
        a, b, c, d, e, f = self.lower
        # | a b d |
        # | b c e |
        # | d e f |
        return a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d)


def mat3_inverse(g, threshold=DEGENERACY_THRESHOLD):
    """Inverse of a symmetric 3x3 matrix by cofactors.

    Raises DegenerateMetric when |det g| < threshold.
    """
    a, b, c, d, e, f = g.lower
    det = g.det()
    if not abs(det) >= threshold:
        raise DegenerateMetric(det)
    return Mat3Sym(
        (
            (c * f - e * e) / det,
            (d * e - b * f) / det,
            (a * f - d * d) / det,
            (b * e - c * d) / det,
            (b * d - a * e) / det,
            (a * c - b * b) / det,
        )
    )


@dataclass
class Christoffel3:
    """Connection coefficients Gamma^a_{bc}, one slot per unordered (b, c)."""

    data: np.ndarray = field(default_factory=lambda: np.zeros((3, 6)))

    def get(self, a, b, c):
        return float(self.data[a, _PAIR[b, c]])

    def set(self, a, b, c, value):
        self.data[a, _PAIR[b, c]] = value

    @classmethod
    def from_array(cls, gamma):
        """Pack a (3, 3, 3) array; the (b, c) symmetric part is kept."""
        gamma = np.asarray(gamma, dtype=float)
        sym = 0.5 * (gamma + gamma.transpose(0, 2, 1))
        data = np.empty((3, 6))
        for b in range(3):
            for c in range(b + 1):
                data[:, _PAIR[b, c]] = sym[:, b, c]
        return cls(data)

    @property
    def array(self):
        return self.data[:, _PAIR]


@dataclass
class Riemann3:
    """Mixed Riemann tensor R^a_{bcd}.

    ``richardson_gap`` records the largest h vs h/2 discrepancy of the finite
    differences that produced it (0 for exact constructions).
    """

    r: np.ndarray
    richardson_gap: float = 0.0

    def __post_init__(self):
        self.r = np.asarray(self.r, dtype=float)
        if self.r.shape != (3, 3, 3, 3):
            raise ValueError(f"Riemann3 needs shape (3,3,3,3), got {self.r.shape}")

    def max_abs(self):
        return float(np.max(np.abs(self.r)))

    def antisymmetry_residual(self):
        return float(np.max(np.abs(self.r + self.r.transpose(0, 1, 3, 2))))

    def bianchi_residual(self):
        """Max of |R^a_{bcd} + R^a_{cdb} + R^a_{dbc}|."""
        r = self.r
        cyc = r + r.transpose(0, 2, 3, 1) + r.transpose(0, 3, 1, 2)
        return float(np.max(np.abs(cyc)))
