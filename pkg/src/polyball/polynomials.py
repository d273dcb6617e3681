"""Sparse multivariate polynomials over complex coefficients.

Coefficients are stored exactly as pairs of rationals (real and imaginary
part), so Laplacians, harmonicity tests and the Almansi decomposition are
exact symbolic computations: a polyharmonic polynomial decomposes into
components whose Laplacians are identically zero, not merely small.
Numeric evaluation converts the coefficients to complex floats once and
caches the result.

Evaluating a polynomial at a complex argument is its holomorphic extension,
which is how boundary traces on rotated spheres are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import as_cvec, principal_power

_ZERO = Fraction(0)


def _to_exact(value):
    """Exact (re, im) Fraction pair for a Python or NumPy numeric value."""
    if isinstance(value, Fraction):
        return (value, _ZERO)
    if isinstance(value, int):
        return (Fraction(value), _ZERO)
    if isinstance(value, float):
        return (Fraction(value), _ZERO)
    if isinstance(value, complex):
        return (Fraction(value.real), Fraction(value.imag))
    c = complex(value)  # numpy scalars and the like
    return (Fraction(c.real), Fraction(c.imag))


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


class MultiPoly:
    """Sparse polynomial in ``dim`` variables with complex coefficients.

    Terms map exponent tuples to coefficients; zero coefficients are never
    stored.  Instances are immutable: all arithmetic returns new objects.
    """

    __slots__ = ("dim", "_terms", "_numeric")

    def __init__(self, dim, terms=None):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dim must be a positive integer")
        canonical = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != dim:
                raise ValueError(f"exponent {alpha} does not match dim={dim}")
            if any(e < 0 for e in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            exact = coeff if isinstance(coeff, tuple) else _to_exact(coeff)
            if exact[0] or exact[1]:
                prev = canonical.get(alpha)
                if prev is not None:
                    exact = (prev[0] + exact[0], prev[1] + exact[1])
                    if not (exact[0] or exact[1]):
                        del canonical[alpha]
                        continue
                canonical[alpha] = exact
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", canonical)
        object.__setattr__(self, "_numeric", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # ---- constructors ----

    @classmethod
    def _from_exact(cls, dim, exact_terms):
        self = cls.__new__(cls)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(
            self, "_terms", {a: c for a, c in exact_terms.items() if c[0] or c[1]}
        )
        object.__setattr__(self, "_numeric", None)
        return self

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    @classmethod
    def constant(cls, value, dim):
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, j, dim):
        """The coordinate polynomial ``x_j`` (1-based index)."""
        j = int(j)
        if not 1 <= j <= dim:
            raise ValueError(f"variable index {j} out of range 1..{dim}")
        alpha = tuple(1 if i == j - 1 else 0 for i in range(dim))
        return cls(dim, {alpha: 1})

    # ---- inspection ----

    def terms(self):
        """Fresh mapping exponent tuple -> complex coefficient."""
        return {a: complex(c[0]) + 1j * complex(c[1]) for a, c in self._terms.items()}

    def coefficient(self, alpha):
        c = self._terms.get(tuple(int(e) for e in alpha))
        if c is None:
            return 0j
        return complex(c[0]) + 1j * complex(c[1])

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(a) for a in self._terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    __hash__ = None

    def allclose(self, other, tol=1e-12):
        """Coefficientwise agreement within ``tol`` on the union of terms."""
        if self.dim != other.dim:
            return False
        mine = self.terms()
        theirs = other.terms()
        for alpha in mine.keys() | theirs.keys():
            if abs(mine.get(alpha, 0j) - theirs.get(alpha, 0j)) > tol:
                return False
        return True

    def __repr__(self):
        if not self._terms:
            return f"MultiPoly(dim={self.dim}, 0)"
        parts = []
        for alpha in sorted(self._terms, key=lambda a: (sum(a), a)):
            c = self.coefficient(alpha)
            mono = "*".join(
                f"x{j + 1}^{e}" if e > 1 else f"x{j + 1}"
                for j, e in enumerate(alpha)
                if e
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return f"MultiPoly(dim={self.dim}, " + " + ".join(parts) + ")"

    # ---- arithmetic ----

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.dim)
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            prev = out.get(alpha)
            if prev is None:
                out[alpha] = c
            else:
                s = (prev[0] + c[0], prev[1] + c[1])
                if s[0] or s[1]:
                    out[alpha] = s
                else:
                    del out[alpha]
        return MultiPoly._from_exact(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._from_exact(
            self.dim, {a: (-c[0], -c[1]) for a, c in self._terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.dim)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            scale = _to_exact(other)
            if not (scale[0] or scale[1]):
                return MultiPoly.zero(self.dim)
            return MultiPoly._from_exact(
                self.dim, {a: _cmul(c, scale) for a, c in self._terms.items()}
            )
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = {}
        for a1, c1 in self._terms.items():
            for a2, c2 in other._terms.items():
                alpha = tuple(e1 + e2 for e1, e2 in zip(a1, a2))
                prod = _cmul(c1, c2)
                prev = out.get(alpha)
                if prev is None:
                    out[alpha] = prod
                else:
                    out[alpha] = (prev[0] + prod[0], prev[1] + prod[1])
        return MultiPoly._from_exact(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        exponent = int(exponent)
        if exponent < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = MultiPoly.constant(1, self.dim)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def real_part(self):
        return MultiPoly._from_exact(
            self.dim, {a: (c[0], _ZERO) for a, c in self._terms.items()}
        )

    def imag_part(self):
        return MultiPoly._from_exact(
            self.dim, {a: (c[1], _ZERO) for a, c in self._terms.items()}
        )

    def derivative(self, j):
        """Exact partial derivative with respect to ``x_j`` (1-based)."""
        j = int(j)
        if not 1 <= j <= self.dim:
            raise ValueError(f"variable index {j} out of range 1..{self.dim}")
        out = {}
        for alpha, c in self._terms.items():
            e = alpha[j - 1]
            if e:
                beta = alpha[: j - 1] + (e - 1,) + alpha[j:]
                scaled = (c[0] * e, c[1] * e)
                prev = out.get(beta)
                out[beta] = (
                    scaled
                    if prev is None
                    else (prev[0] + scaled[0], prev[1] + scaled[1])
                )
        return MultiPoly._from_exact(self.dim, out)

    # ---- numeric evaluation ----

    def _numeric_view(self):
        cached = self._numeric
        if cached is None:
            exps = np.array(sorted(self._terms), dtype=np.int64).reshape(
                len(self._terms), self.dim
            )
            coeffs = np.array(
                [
                    complex(self._terms[tuple(a)][0]) + 1j * complex(self._terms[tuple(a)][1])
                    for a in exps
                ],
                dtype=np.complex128,
            )
            cached = (exps, coeffs)
            object.__setattr__(self, "_numeric", cached)
        return cached

    def evaluate(self, point):
        """Value at a real or complex point (the holomorphic extension)."""
        return complex(self.eval_many(np.asarray(point, dtype=np.complex128)[None, :])[0])

    def eval_many(self, points):
        """Vectorized evaluation on an ``(m, dim)`` array of points."""
        points = np.asarray(points, dtype=np.complex128)
        if points.ndim != 2 or points.shape[1] != self.dim:
            raise ValueError(f"expected points of shape (m, {self.dim})")
        if not self._terms:
            return np.zeros(points.shape[0], dtype=np.complex128)
        exps, coeffs = self._numeric_view()
        monomials = np.ones((points.shape[0], exps.shape[0]), dtype=np.complex128)
        for j in range(self.dim):
            col = exps[:, j]
            top = int(col.max())
            if top == 0:
                continue
            # power table by repeated multiplication; integer pow per entry
            # is far slower at quadrature-node counts
            table = np.empty((top + 1, points.shape[0]), dtype=np.complex128)
            table[0] = 1.0
            for e in range(1, top + 1):
                table[e] = table[e - 1] * points[:, j]
            monomials *= table[col].T
        return monomials @ coeffs


def squared_radius(dim):
    """The polynomial ``|x|^2 = sum_j x_j**2``."""
    return MultiPoly(dim, {tuple(2 if i == j else 0 for i in range(dim)): 1 for j in range(dim)})


def poly_eval(poly, point):
    """Evaluate ``poly`` at ``point`` (complex arguments extend holomorphically)."""
    z = as_cvec(point, dim=poly.dim)
    return poly.evaluate(z)


def laplacian(poly):
    """Exact symbolic Laplacian ``sum_j d^2/dx_j^2``."""
    out = {}
    for alpha, c in poly._terms.items():
        for j, e in enumerate(alpha):
            if e >= 2:
                factor = e * (e - 1)
                beta = alpha[:j] + (e - 2,) + alpha[j + 1 :]
                scaled = (c[0] * factor, c[1] * factor)
                prev = out.get(beta)
                out[beta] = (
                    scaled
                    if prev is None
                    else (prev[0] + scaled[0], prev[1] + scaled[1])
                )
    return MultiPoly._from_exact(poly.dim, out)


def is_polyharmonic(poly, p):
    """True iff the p-th iterated Laplacian of ``poly`` vanishes identically."""
    p = int(p)
    if p < 1:
        raise ValueError("order p must be >= 1")
    current = poly
    for _ in range(p):
        if current.is_zero():
            return True
        current = laplacian(current)
    return current.is_zero()


def almansi_compose(components):
    """Assemble ``sum_k |x|^{2k} h_k`` from harmonic components.

    Raises if any component fails the exact harmonicity check; the result is
    polyharmonic of order ``len(components)``.
    """
    components = list(components)
    if not components:
        raise ValueError("need at least one component")
    dim = components[0].dim
    for k, h in enumerate(components):
        if h.dim != dim:
            raise ValueError("components must share a dimension")
        if not laplacian(h).is_zero():
            raise ValueError(f"component {k} is not harmonic")
    r2 = squared_radius(dim)
    total = MultiPoly.zero(dim)
    power = MultiPoly.constant(1, dim)
    for k, h in enumerate(components):
        if k:
            power = power * r2
        total = total + power * h
    return total


def _decompose_homogeneous(poly):
    """Gauss decomposition ``Q = sum_j |x|^{2j} h_j`` of a homogeneous polynomial.

    Uses the identity ``lap(|x|^{2j} h) = 2j(2j + 2s + n - 2) |x|^{2(j-1)} h``
    for harmonic homogeneous ``h`` of degree ``s``: decompose the Laplacian
    recursively, divide out the known factors, and recover the harmonic head
    as the remainder.  All arithmetic is exact.
    """
    m = poly.degree()
    lap = laplacian(poly)
    if lap.is_zero():
        return {0: poly}
    n = poly.dim
    sub = _decompose_homogeneous(lap)
    parts = {}
    r2 = squared_radius(n)
    acc = MultiPoly.zero(n)
    for i, g in sub.items():
        j = i + 1
        s = m - 2 * j
        c = 2 * j * (2 * j + 2 * s + n - 2)
        h = g * Fraction(1, c)
        parts[j] = h
        acc = acc + (r2**j) * h
    head = poly - acc
    if not head.is_zero():
        parts[0] = head
    return parts


def almansi_decompose(poly, p):
    """Unique harmonic ``h_0..h_{p-1}`` with ``poly = sum_k |x|^{2k} h_k``.

    ``poly`` must be polyharmonic of order ``p``; the decomposition is exact.
    """
    p = int(p)
    if p < 1:
        raise ValueError("order p must be >= 1")
    if not is_polyharmonic(poly, p):
        raise ValueError(f"polynomial is not polyharmonic of order {p}")
    merged = {}
    # split into homogeneous layers, decompose each, collect by radial power
    by_degree = {}
    for alpha, c in poly._terms.items():
        by_degree.setdefault(sum(alpha), {})[alpha] = c
    for degree_terms in by_degree.values():
        homogeneous = MultiPoly._from_exact(poly.dim, degree_terms)
        for k, h in _decompose_homogeneous(homogeneous).items():
            prev = merged.get(k)
            merged[k] = h if prev is None else prev + h
    for k, h in merged.items():
        if k >= p and not h.is_zero():
            raise AssertionError(
                "decomposition produced a component beyond order p despite the "
                "polyharmonicity check; this indicates a bug"
            )
    zero = MultiPoly.zero(poly.dim)
    return [merged.get(k, zero) for k in range(p)]


@dataclass(frozen=True)
class PizzettiTerm:
    """One term of the iterated-Laplacian mean expansion."""

    j: int
    coefficient: float

    def __post_init__(self):
        if self.j < 0:
            raise ValueError("term index must be nonnegative")
        if not self.coefficient > 0:
            raise ValueError("term coefficient must be positive")

    @classmethod
    def for_index(cls, j, p, n):
        return cls(j, float(pizzetti_coefficient(n, p, j)))


def pizzetti_coefficient(n, p, j):
    """Exact rational ``1 / (4**(p j) * (n/2)_(p j) * (p j)!)``."""
    n = int(n)
    p = int(p)
    j = int(j)
    if j < 0 or p < 1 or n < 1:
        raise ValueError("invalid Pizzetti coefficient arguments")
    k = p * j
    rising = Fraction(1)
    half_n = Fraction(n, 2)
    for i in range(k):
        rising *= half_n + i
    return Fraction(1) / (Fraction(4) ** k * rising * math.factorial(k))


def pizzetti_mean_series(poly, p, x, r):
    """Finite iterated-Laplacian expansion of the rotated-sphere mean.

    ``sum_j lap^{p j} P(x) * r^{2 p j} * c_{n,p,j}`` -- the series terminates
    because each term differentiates the polynomial down by ``2p`` degrees.
    Equals the rotated-sphere mean of ``P`` centred at real ``x`` with
    radius ``r``.
    """
    p = int(p)
    if p < 1:
        raise ValueError("order p must be >= 1")
    r = float(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    x = as_cvec(x, dim=poly.dim)
    n = poly.dim
    total = 0j
    current = poly
    j = 0
    while not current.is_zero():
        total += (
            current.evaluate(x)
            * float(pizzetti_coefficient(n, p, j))
            * r ** (2 * p * j)
        )
        for _ in range(p):
            current = laplacian(current)
        j += 1
    return total


class FieldFunction:
    """A deterministic scalar field on C^n wrapped with its dimension.

    The evaluator must be pure: no side effects, equal inputs give equal
    outputs.  ``vectorized=True`` promises the callable accepts an
    ``(m, dim)`` array and returns ``m`` values.
    """

    __slots__ = ("dim", "_func", "_vectorized")

    def __init__(self, dim, func, vectorized=False):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dim must be a positive integer")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_func", func)
        object.__setattr__(self, "_vectorized", bool(vectorized))

    def __setattr__(self, name, value):
        raise AttributeError("FieldFunction is immutable")

    @classmethod
    def from_polynomial(cls, poly):
        return cls(poly.dim, poly.eval_many, vectorized=True)

    def __call__(self, point):
        z = as_cvec(point, dim=self.dim)
        if self._vectorized:
            return complex(np.asarray(self._func(z[None, :])).reshape(-1)[0])
        return complex(self._func(z))

    def eval_many(self, points):
        points = np.asarray(points, dtype=np.complex128)
        if points.ndim != 2 or points.shape[1] != self.dim:
            raise ValueError(f"expected points of shape (m, {self.dim})")
        if self._vectorized:
            return np.asarray(self._func(points), dtype=np.complex128).reshape(
                points.shape[0]
            )
        return np.array([self._func(row) for row in points], dtype=np.complex128)


def kelvin_transform(field, p, n=None):
    """Extended Kelvin transform ``x -> |x|^(2p-n) * F(x / |x|^2)``.

    ``|x|^2`` is the bilinear square, so the transform is defined on complex
    arguments as well; evaluation where the bilinear square vanishes raises.
    Maps order-``p`` polyharmonic functions on the ball to order-``p``
    polyharmonic functions on the exterior (and back: it is an involution).
    """
    p = int(p)
    if p < 1:
        raise ValueError("order p must be >= 1")
    if n is None:
        n = field.dim
    elif int(n) != field.dim:
        raise ValueError(f"dimension {n} does not match the field's {field.dim}")
    n = int(n)
    m = 2 * p - n

    def evaluator(point):
        z = as_cvec(point, dim=n)
        w = complex(np.sum(z * z))
        if w == 0:
            raise ZeroDivisionError(
                "Kelvin transform undefined where the complex norm vanishes"
            )
        return principal_power(w, m) * field(z / w)

    return FieldFunction(n, evaluator)
