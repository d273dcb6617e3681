"""Complex vector geometry with principal-branch square-root conventions.

The bilinear square ``w = sum_j z_j**2`` of a complex vector is the quantity
everything here is built on.  Its principal square root plays the role of a
"norm" even though it is complex valued; the branch cut sits on the
nonpositive real axis and signed zeros are normalized so that negative real
arguments map into the upper half plane.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def as_cvec(values, dim=None):
    """Coerce ``values`` to a 1-D complex128 vector with finite entries."""
    z = np.atleast_1d(np.asarray(values, dtype=np.complex128))
    if z.ndim != 1 or z.size < 1:
        raise ValueError("expected a one-dimensional vector with at least one entry")
    if not np.all(np.isfinite(z)):
        raise ValueError("vector entries must be finite")
    if dim is not None and z.size != dim:
        raise ValueError(f"expected a vector of dimension {dim}, got {z.size}")
    return z


def normalize_angle(phi):
    """Reduce an angle to the interval (-pi, pi]."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError("angle must be finite")
    r = math.remainder(phi, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def csqrt_principal(w):
    """Principal square root: branch cut on the nonpositive real axis.

    The result has nonnegative real part; negative real input maps to the
    positive imaginary axis (a signed zero in the imaginary part is ignored).
    """
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError("csqrt_principal requires a finite argument")
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    return cmath.sqrt(w)


def principal_power(w, m):
    """Return ``w**(m/2)`` for integer ``m`` using the principal logarithm.

    Even ``m`` is evaluated as the exact integer power ``w**(m//2)`` so that
    no branch enters where none exists.  ``w = 0`` yields 0 for positive
    ``m`` and raises otherwise.
    """
    w = complex(w)
    m = int(m)
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    if w == 0:
        if m > 0:
            return 0j
        raise ZeroDivisionError("0 cannot be raised to a nonpositive half-integer power")
    if m % 2 == 0:
        k = m // 2
        if k >= 0:
            return w**k
        return 1.0 / w ** (-k)
    return cmath.exp(0.5 * m * cmath.log(w))


def bilinear_square(z):
    """The complex bilinear square ``sum_j z_j**2`` (no conjugation)."""
    z = as_cvec(z)
    return complex(np.sum(z * z))


def cnorm(z):
    """Complex extension of the Euclidean norm: principal root of the bilinear square.

    Complex valued in general; coincides with the Euclidean norm on real
    vectors.  Not a norm on C^n.
    """
    return csqrt_principal(bilinear_square(z))


def cnorm_pow(z, m):
    """``cnorm(z)**m`` for integer ``m >= 1``, via a single principal power.

    Computed as ``w**(m/2)`` with ``w`` the bilinear square, so even powers
    are exact polynomials in the entries and odd powers use one principal
    logarithm (never a root followed by an integer power).
    """
    m = int(m)
    if m < 1:
        raise ValueError("cnorm_pow requires m >= 1")
    return principal_power(bilinear_square(z), m)


def rotation_factor(phi):
    """Principal value of ``sqrt(exp(2i*phi))`` as a piecewise phase.

    Equals ``exp(i*phi)`` for phi in (-pi/2, pi/2] and ``-exp(i*phi)``
    elsewhere in (-pi, pi], so that ``cnorm(exp(i*phi) * x)`` is
    ``rotation_factor(phi) * |x|`` for real x.
    """
    phi = normalize_angle(phi)
    if -HALF_PI < phi <= HALF_PI:
        return cmath.exp(1j * phi)
    return -cmath.exp(1j * phi)


def hermitian_norm(z):
    """Standard Hermitian norm ``sqrt(sum_j |z_j|^2)``; zero iff z = 0."""
    return float(np.linalg.norm(as_cvec(z)))


def lie_norm(z):
    """Lie-ball gauge ``L(z) = sqrt(||z||^2 + sqrt(||z||^4 - |z.z|^2))``.

    The inner radical is evaluated through the Lagrange identity
    ``||z||^4 - |z.z|^2 = 4 * sum_{j<k} (a_j b_k - a_k b_j)^2`` with
    ``z = a + ib``, which is a sum of squares and hence immune to the
    catastrophic cancellation the textbook form suffers on rotated real
    vectors.
    """
    z = as_cvec(z)
    a = np.real(z)
    b = np.imag(z)
    h2 = float(a @ a + b @ b)
    cross = 0.0
    for j in range(z.size - 1):
        t = a[j] * b[j + 1 :] - b[j] * a[j + 1 :]
        cross += float(t @ t)
    return math.sqrt(h2 + 2.0 * math.sqrt(cross))


@dataclass(frozen=True)
class LieBall:
    """Open Lie ball of a given radius, centred at the origin."""

    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("Lie ball radius must be positive")

    def contains(self, z):
        return lie_norm(z) < self.radius


class RotatedPoint:
    """A point ``exp(i*angle) * base`` with real ``base``.

    The pair ``(angle, base)`` and ``(angle + pi, -base)`` describe the same
    point; :meth:`canonical` picks a unique representative, and equality is
    defined as closeness of canonical forms to 1e-12 componentwise.  The
    angle is normalized to (-pi, pi] at construction.
    """

    __slots__ = ("angle", "base")

    def __init__(self, angle, base):
        angle = normalize_angle(angle)
        base = np.atleast_1d(np.asarray(base, dtype=np.float64))
        if base.ndim != 1 or base.size < 1:
            raise ValueError("base must be a one-dimensional real vector")
        if not np.all(np.isfinite(base)):
            raise ValueError("base entries must be finite")
        base = base.copy()
        base.setflags(write=False)
        object.__setattr__(self, "angle", angle)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("RotatedPoint is immutable")

    @property
    def dim(self):
        return self.base.size

    def complex_vector(self):
        """The point as a plain complex vector ``exp(i*angle) * base``."""
        return cmath.exp(1j * self.angle) * self.base.astype(np.complex128)

    def canonical(self):
        """Unique representative with angle in (-pi/2, pi/2].

        When the canonical angle lands exactly on pi/2, the representative
        whose base has a lexicographically nonnegative first nonzero entry
        is preferred (its angle is then -pi/2 if the flip was needed).
        """
        phi = self.angle
        base = self.base
        if phi > HALF_PI:
            phi -= math.pi
            base = -base
        elif phi <= -HALF_PI:
            phi += math.pi
            base = -base
        if phi == HALF_PI:
            nonzero = base[base != 0.0]
            if nonzero.size and nonzero[0] < 0.0:
                phi = -HALF_PI
                base = -base
        return RotatedPoint(phi, base)

    def __eq__(self, other):
        if not isinstance(other, RotatedPoint):
            return NotImplemented
        if self.dim != other.dim:
            return False
        a = self.canonical()
        b = other.canonical()
        return abs(a.angle - b.angle) <= 1e-12 and bool(
            np.all(np.abs(a.base - b.base) <= 1e-12)
        )

    __hash__ = None

    def __repr__(self):
        return f"RotatedPoint(angle={self.angle!r}, base={self.base.tolist()!r})"


def canonicalize(point):
    """Canonical representative of a :class:`RotatedPoint` (idempotent)."""
    return point.canonical()
