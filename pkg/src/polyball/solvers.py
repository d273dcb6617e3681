"""Dirichlet solvers for complex polyharmonic functions on rotated balls.

A polyharmonic function of order p on the unit ball is determined by its
values on the union of the p rotated unit spheres ``exp(k pi i / p) * dB``,
and is recovered by a sum of Poisson-type integrals

    u(x) = 1/(p w_n) * sum_k  int_dB (1 - |x|^{2p}) / |exp(-k pi i/p) x - zeta|^n
                               * f_k(exp(k pi i/p) zeta) dS(zeta),

where |.| is the complex bilinear norm and w_n the sphere area.  This module
discretizes that formula (interior, general ball, exterior via the Kelvin
transform), together with the harmonic-stack conversion through the
roots-of-unity Vandermonde system and rotated-sphere means.

Boundary data is supplied as p functions of the *real* unit node zeta; entry
k stands for ``zeta -> f_k(exp(k pi i / p) zeta)``, i.e. the rotation is
implicit in the index.

All solvers are pure functions of their arguments.  Each evaluation point is
reduced with a fixed-topology pairwise sum over quadrature nodes, so results
are identical no matter how many workers are used.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernels import weighted_kernel_sum
from .geometry import RotatedPoint, principal_power
from .polynomials import FieldFunction, MultiPoly
from .quadrature import surface_area, unit_sphere_rule

DEFAULT_BOUNDARY_GUARD = 1e-3


def _unit_root(k, p):
    """The rotation ``exp(k pi i / p)`` (k may be negative)."""
    return cmath.exp(1j * math.pi * k / p)


@lru_cache(maxsize=64)
def _cached_rule(dim, order):
    return unit_sphere_rule(dim, order)


@dataclass(frozen=True)
class ProblemSpec:
    """Geometry and discretization of one Dirichlet problem."""

    dim: int
    order: int
    center: tuple = None
    radius: float = 1.0
    quadrature_order: int = 64

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        if self.order < 1:
            raise ValueError("polyharmonic order p must be >= 1")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.quadrature_order < 1:
            raise ValueError("quadrature order must be >= 1")
        center = self.center
        if center is None:
            center = (0.0,) * self.dim
        center = tuple(float(c) for c in center)
        if len(center) != self.dim:
            raise ValueError("center must have length dim")
        if not all(math.isfinite(c) for c in center):
            raise ValueError("center entries must be finite")
        object.__setattr__(self, "center", center)

    @property
    def center_array(self):
        return np.asarray(self.center, dtype=np.float64)

    def rule(self):
        return _cached_rule(self.dim, self.quadrature_order)

    def is_unit(self):
        return self.radius == 1.0 and all(c == 0.0 for c in self.center)


class BoundaryData:
    """Ordered traces on the p rotated spheres.

    Entry k is a function of the real unit node and stands for
    ``zeta -> f_k(exp(k pi i / p) zeta)``.
    """

    def __init__(self, functions):
        functions = list(functions)
        if not functions:
            raise ValueError("boundary data needs at least one entry")
        for f in functions:
            if not isinstance(f, FieldFunction):
                raise TypeError("boundary entries must be FieldFunction instances")
        dim = functions[0].dim
        for f in functions:
            if f.dim != dim:
                raise ValueError("boundary entries must share a dimension")
        self.functions = functions
        self.dim = dim

    @property
    def order(self):
        return len(self.functions)

    def values_at(self, k, nodes):
        """Vector of f_k values at an (m, dim) array of real unit nodes."""
        return self.functions[k].eval_many(np.asarray(nodes, dtype=np.complex128))

    @classmethod
    def from_polynomial(cls, poly, p, center=None, radius=1.0):
        """Traces of a polynomial's holomorphic extension on the rotated spheres.

        Entry k evaluates ``poly(center + radius * exp(k pi i / p) * zeta)``,
        which is exactly the boundary data a manufactured solution induces.
        """
        n = poly.dim
        center = np.zeros(n) if center is None else np.asarray(center, dtype=np.float64)
        radius = float(radius)

        def make(k):
            rot = _unit_root(k, p) * radius

            def values(points):
                return poly.eval_many(center[None, :] + rot * points)

            return FieldFunction(n, values, vectorized=True)

        return cls([make(k) for k in range(int(p))])


class HarmonicStack:
    """Ordered components (g_k or h_k) of a polyharmonic representation."""

    def __init__(self, components):
        components = list(components)
        if not components:
            raise ValueError("a stack needs at least one component")
        dims = {c.dim for c in components}
        if len(dims) != 1:
            raise ValueError("stack components must share a dimension")
        self.components = components
        self.dim = dims.pop()

    @property
    def order(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k):
        return self.components[k]


def coefficient_a(k, p, t):
    """Geometric coefficient ``sum_{j<p} exp(2 pi i j k / p) t^j``.

    At ``t = |x|^2`` this is the factor multiplying g_k in the
    rotated-denominator representation of a polyharmonic function.
    """
    p = int(p)
    k = int(k)
    if not 0 <= k < p:
        raise IndexError(f"index k={k} out of range 0..{p - 1}")
    t = complex(t)
    total = 0j
    power = 1.0 + 0j
    for j in range(p):
        total += cmath.exp(2j * math.pi * j * k / p) * power
        power *= t
    return total


class AlmansiWeights:
    """The roots-of-unity Vandermonde system linking h- and g-stacks.

    ``matrix[k, l] = exp(2 pi i k l / p)``; its inverse is the closed form
    ``(1/p) exp(-2 pi i k l / p)``, verified against direct inversion at
    construction.
    """

    def __init__(self, p):
        p = int(p)
        if p < 1:
            raise ValueError("order p must be >= 1")
        k, l = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
        self.order = p
        self.matrix = np.exp(2j * math.pi * k * l / p)
        self.inverse = np.exp(-2j * math.pi * k * l / p) / p
        if np.max(np.abs(self.matrix @ self.inverse - np.eye(p))) > 1e-12:
            raise AssertionError("closed-form Vandermonde inverse failed validation")


def _combine(rows, components, dim):
    """Pointwise linear combinations of stack components by matrix rows."""
    if all(isinstance(c, MultiPoly) for c in components):
        out = []
        for row in rows:
            acc = MultiPoly.zero(dim)
            for coeff, comp in zip(row, components):
                acc = acc + comp * complex(coeff)
            out.append(acc)
        return out

    funcs = [
        c if isinstance(c, FieldFunction) else FieldFunction.from_polynomial(c)
        for c in components
    ]

    def make(row):
        coeffs = [complex(c) for c in row]

        def combined(point):
            return sum(c * f(point) for c, f in zip(coeffs, funcs))

        return FieldFunction(dim, combined)

    return [make(row) for row in rows]


def vandermonde_convert(stack, direction):
    """Convert between the h- and g-representations of a polyharmonic function.

    ``direction`` is ``"h-to-g"`` (apply the closed-form inverse) or
    ``"g-to-h"`` (apply the matrix itself).
    """
    if not isinstance(stack, HarmonicStack):
        stack = HarmonicStack(stack)
    weights = AlmansiWeights(stack.order)
    if direction == "h-to-g":
        rows = weights.inverse
    elif direction == "g-to-h":
        rows = weights.matrix
    else:
        raise ValueError(f"unknown direction {direction!r}; use 'h-to-g' or 'g-to-h'")
    return HarmonicStack(_combine(rows, stack.components, stack.dim))


def _as_rotated_point(point, dim):
    if isinstance(point, RotatedPoint):
        if point.dim != dim:
            raise ValueError(f"point dimension {point.dim} does not match {dim}")
        return point
    return RotatedPoint(0.0, np.asarray(point, dtype=np.float64).reshape(dim))


def rotated_poisson_kernel(x, zeta, k, spec):
    """Kernel ``(1 - |x|^{2p}) / |exp(-k pi i / p) x - zeta|^n`` on the unit ball.

    ``x`` may be a RotatedPoint or a real vector; ``|x|^{2p}`` is computed
    algebraically as ``(exp(2 i phi) |base|^2)^p`` so no root is taken.
    """
    x = _as_rotated_point(x, spec.dim)
    zeta = np.asarray(zeta, dtype=np.float64).reshape(spec.dim)
    k = int(k)
    if not 0 <= k < spec.order:
        raise IndexError(f"index k={k} out of range 0..{spec.order - 1}")
    base_norm2 = float(x.base @ x.base)
    if base_norm2 >= 1.0:
        raise ValueError("kernel is undefined for points with base norm >= 1")
    x2p = (cmath.exp(2j * x.angle) * base_norm2) ** spec.order
    z = _unit_root(-k, spec.order) * x.complex_vector()
    diff = z - zeta
    w = complex(np.sum(diff * diff))
    if w == 0:
        raise ZeroDivisionError("kernel denominator vanished")
    return (1.0 - x2p) / principal_power(w, spec.dim)


def _map_points(points, evaluate_one, workers):
    if workers <= 1 or len(points) <= 1:
        return np.array([evaluate_one(pt) for pt in points], dtype=np.complex128)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(evaluate_one, points)), dtype=np.complex128)


def _prepare(spec, data):
    if data.order != spec.order:
        raise ValueError(
            f"boundary data has {data.order} entries but the problem order is {spec.order}"
        )
    if data.dim != spec.dim:
        raise ValueError("boundary data dimension does not match the problem")
    rule = spec.rule()
    weighted = [
        np.ascontiguousarray(rule.weights * data.values_at(k, rule.nodes))
        for k in range(spec.order)
    ]
    return rule, weighted


def solve_interior(spec, data, points, delta=DEFAULT_BOUNDARY_GUARD, workers=1):
    """Discretized Poisson-type solution of the unit-ball Dirichlet problem.

    Points are RotatedPoint instances or real vectors (treated as angle 0)
    with base norm at most ``1 - delta``; pass ``delta=0`` to lift the guard.
    Returns one complex value per point.
    """
    if not spec.is_unit():
        raise ValueError("solve_interior requires the unit ball (center 0, radius 1)")
    rule, weighted = _prepare(spec, data)
    p = spec.order
    n = spec.dim
    scale = 1.0 / (p * surface_area(n))
    rotations = [_unit_root(-k, p) for k in range(p)]
    pts = [_as_rotated_point(pt, n) for pt in points]
    for pt in pts:
        if float(np.linalg.norm(pt.base)) > 1.0 - delta:
            raise ValueError(
                f"evaluation point with base norm {np.linalg.norm(pt.base):.6g} is "
                f"within {delta} of the boundary; reduce delta to override"
            )

    def evaluate_one(pt):
        z = pt.complex_vector()
        base_norm2 = float(pt.base @ pt.base)
        x2p = (cmath.exp(2j * pt.angle) * base_norm2) ** p
        total = 0j
        for k in range(p):
            total += weighted_kernel_sum(rotations[k] * z, rule.nodes, 1.0 + 0j, weighted[k], n)
        return scale * (1.0 - x2p) * total

    return _map_points(pts, evaluate_one, workers)


def solve_ball(spec, data, points, delta=DEFAULT_BOUNDARY_GUARD, workers=1):
    """General-ball solver: center a, radius r, data on ``a + r exp(k pi i/p) dB``.

    Boundary entry k maps the real unit node zeta to
    ``f(a + r exp(k pi i / p) zeta)``.  A point's rotation applies to its
    offset from the center: a RotatedPoint (phi, b) is evaluated at
    ``a + exp(i phi) (b - a)``.  Reduces exactly to :func:`solve_interior`
    for the unit ball.
    """
    rule, weighted = _prepare(spec, data)
    p = spec.order
    n = spec.dim
    r = spec.radius
    center = spec.center_array
    r2p = r ** (2 * p)
    scale = 1.0 / (p * surface_area(n) * r ** (2 * p - n))
    rotations = [_unit_root(-k, p) for k in range(p)]
    pts = [_as_rotated_point(pt, n) for pt in points]
    for pt in pts:
        if float(np.linalg.norm(pt.base - center)) > r * (1.0 - delta):
            raise ValueError(
                "evaluation point lies too close to the boundary sphere; "
                "reduce delta to override"
            )

    def evaluate_one(pt):
        offset = pt.base - center
        z = cmath.exp(1j * pt.angle) * offset.astype(np.complex128)
        off2p = (cmath.exp(2j * pt.angle) * float(offset @ offset)) ** p
        total = 0j
        for k in range(p):
            total += weighted_kernel_sum(rotations[k] * z, rule.nodes, r + 0j, weighted[k], n)
        return scale * (r2p - off2p) * total

    return _map_points(pts, evaluate_one, workers)


def solve_exterior(spec, data, points, delta=DEFAULT_BOUNDARY_GUARD, workers=1):
    """Exterior Dirichlet problem on ``R^n \\ B`` with data on the rotated spheres.

    Points are real vectors with ``|x| >= 1 + delta``.  The solution is the
    Kelvin transform of the corresponding interior solution and decays like
    ``|x|^{2p-n}`` at infinity.
    """
    if not spec.is_unit():
        raise ValueError("solve_exterior requires the unit sphere (center 0, radius 1)")
    rule, weighted = _prepare(spec, data)
    p = spec.order
    n = spec.dim
    scale = -1.0 / (p * surface_area(n))
    rotations = [_unit_root(-k, p) for k in range(p)]
    pts = []
    for pt in points:
        x = np.asarray(pt, dtype=np.float64).reshape(n)
        if float(np.linalg.norm(x)) < 1.0 + delta:
            raise ValueError(
                "exterior evaluation point must satisfy |x| >= 1 + delta; "
                "reduce delta to override"
            )
        pts.append(x)

    def evaluate_one(x):
        z = x.astype(np.complex128)
        x2p = float(x @ x) ** p
        total = 0j
        for k in range(p):
            total += weighted_kernel_sum(z, rule.nodes, rotations[k], weighted[k], n)
        return scale * (1.0 - x2p) * total

    return _map_points(pts, evaluate_one, workers)


def rotated_mean(func, x, r, p, rule=None, quadrature_order=64):
    """Mean of ``func`` over the p rotated spheres of radius r centred at x.

    ``1/(p w_n) * sum_k int_dB func(x + exp(k pi i / p) r zeta) dS(zeta)``;
    for a polyharmonic function of order p on the closed rotated balls this
    reproduces ``func(x)``.
    """
    p = int(p)
    if p < 1:
        raise ValueError("order p must be >= 1")
    if isinstance(func, MultiPoly):
        func = FieldFunction.from_polynomial(func)
    x = np.asarray(x, dtype=np.float64).reshape(func.dim)
    r = float(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    if rule is None:
        rule = _cached_rule(func.dim, quadrature_order)
    elif rule.dim != func.dim:
        raise ValueError("rule dimension does not match the field")
    total = 0j
    for k in range(p):
        shifted = x[None, :] + (_unit_root(k, p) * r) * rule.nodes
        values = func.eval_many(shifted)
        total += complex(np.sum(rule.weights * values))
    return total / (p * surface_area(func.dim))


@dataclass(frozen=True)
class BoundaryResidualReport:
    """Max deviation between the solved field and the data near the boundary."""

    rho: float
    samples: int
    per_k: tuple
    max_residual: float


def boundary_residual(spec, data, rho, samples=32, seed=20260808):
    """Sample ``max_k max_s |u(rho e^{k pi i/p} zeta_s) - f_k(e^{k pi i/p} zeta_s)|``.

    ``rho`` in [0, 1); the residual must shrink as rho -> 1 for continuous
    data once the quadrature resolves the kernel at radius rho.
    """
    rho = float(rho)
    if not 0.0 <= rho < 1.0:
        raise ValueError("rho must lie in [0, 1)")
    n = spec.dim
    p = spec.order
    if n == 2:
        angles = 2.0 * math.pi * (np.arange(samples) + 0.5) / samples
        nodes = np.column_stack([np.cos(angles), np.sin(angles)])
    else:
        rng = np.random.default_rng(seed)
        raw = rng.standard_normal((samples, n))
        nodes = raw / np.linalg.norm(raw, axis=1)[:, None]
    per_k = []
    for k in range(p):
        pts = [RotatedPoint(math.pi * k / p, rho * zeta) for zeta in nodes]
        u_vals = solve_interior(spec, data, pts, delta=0.0)
        f_vals = data.values_at(k, nodes)
        per_k.append(float(np.max(np.abs(u_vals - f_vals))))
    return BoundaryResidualReport(
        rho=rho,
        samples=int(samples),
        per_k=tuple(per_k),
        max_residual=max(per_k),
    )
