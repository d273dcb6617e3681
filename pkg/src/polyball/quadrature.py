"""Deterministic product quadrature on unit spheres in R^n.

Rules are built once, validated against their invariants (unit nodes,
positive weights, total weight equal to the sphere area) and are immutable
afterwards.  The circle uses the equispaced trapezoid rule; higher
dimensions recurse through latitude factors whose nodes are Gauss-Jacobi
points in t = cos(theta) with the surface-measure weight (1 - t^2)^((n-3)/2)
built into the quadrature weight, so polynomial moments are integrated
exactly up to the rule's algebraic degree.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import roots_jacobi


def surface_area(n):
    """Area ``2 pi^(n/2) / Gamma(n/2)`` of the unit sphere in R^n."""
    n = int(n)
    if n < 2:
        raise ValueError("the sphere requires dimension n >= 2")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


class QuadratureRule:
    """Nodes and weights on the unit sphere, in surface-measure units."""

    __slots__ = ("dim", "nodes", "weights")

    def __init__(self, dim, nodes, weights):
        dim = int(dim)
        nodes = np.ascontiguousarray(nodes, dtype=np.float64)
        weights = np.ascontiguousarray(weights, dtype=np.float64)
        if dim < 2:
            raise ValueError("the sphere requires dimension n >= 2")
        if nodes.ndim != 2 or nodes.shape[1] != dim or nodes.shape[0] < 1:
            raise ValueError("nodes must form a nonempty (m, dim) array")
        if weights.shape != (nodes.shape[0],):
            raise ValueError("weights must match the number of nodes")
        norms = np.linalg.norm(nodes, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("all nodes must lie on the unit sphere")
        if np.any(weights <= 0.0):
            raise ValueError("all weights must be strictly positive")
        total = weights.sum()
        area = surface_area(dim)
        if abs(total - area) > 1e-10 * area:
            raise ValueError("weights must sum to the sphere area")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, name, value):
        raise AttributeError("QuadratureRule is immutable")

    def __len__(self):
        return self.nodes.shape[0]

    def dump_csv(self, path):
        """Write the rule as CSV with node components followed by the weight."""
        lines = [",".join([f"x{j + 1}" for j in range(self.dim)] + ["weight"])]
        for node, w in zip(self.nodes, self.weights):
            lines.append(",".join(format(v, ".17g") for v in (*node, w)))
        with open(path, "w", encoding="ascii") as f:
            f.write("\n".join(lines) + "\n")


def _circle(num_nodes):
    theta = 2.0 * math.pi * np.arange(num_nodes) / num_nodes
    nodes = np.column_stack([np.cos(theta), np.sin(theta)])
    weights = np.full(num_nodes, 2.0 * math.pi / num_nodes)
    return nodes, weights


def _product(n, order):
    # recursive latitude x sub-sphere factorization; the base circle gets
    # 2*order azimuth nodes
    if n == 2:
        return _circle(2 * order)
    alpha = (n - 3) / 2.0
    t, v = roots_jacobi(order, alpha, alpha)
    sub_nodes, sub_weights = _product(n - 1, order)
    s = np.sqrt(np.maximum(1.0 - t * t, 0.0))
    m_sub = sub_nodes.shape[0]
    nodes = np.empty((order * m_sub, n))
    weights = np.empty(order * m_sub)
    for i in range(order):
        block = slice(i * m_sub, (i + 1) * m_sub)
        nodes[block, : n - 1] = s[i] * sub_nodes
        nodes[block, n - 1] = t[i]
        weights[block] = v[i] * sub_weights
    return nodes, weights


def unit_sphere_rule(n, order):
    """Product rule on the unit sphere of R^n with convergence knob ``order``.

    n = 2 gives ``order`` equispaced circle nodes (exact for trigonometric
    polynomials of degree < order); n = 3 gives an ``order x 2*order``
    latitude/azimuth grid; higher n recurses one latitude factor per extra
    dimension.  Weights are normalized so they sum to the sphere area.
    """
    n = int(n)
    order = int(order)
    if n < 2:
        raise ValueError("the sphere requires dimension n >= 2")
    if order < 1:
        raise ValueError("order must be >= 1")
    if n == 2:
        nodes, weights = _circle(order)
    else:
        nodes, weights = _product(n, order)
    norms = np.linalg.norm(nodes, axis=1)
    nodes = nodes / norms[:, None]
    weights = weights * (surface_area(n) / weights.sum())
    return QuadratureRule(n, nodes, weights)


def integrate_sphere(rule, func):
    """``sum_i w_i F(node_i)`` with a deterministic pairwise reduction.

    ``func`` may be a FieldFunction (its vectorized path is used) or any
    callable taking one node vector.
    """
    dim = getattr(func, "dim", None)
    if dim is not None and dim != rule.dim:
        raise ValueError(f"field dimension {dim} does not match rule dimension {rule.dim}")
    if hasattr(func, "eval_many"):
        values = func.eval_many(rule.nodes.astype(np.complex128))
    else:
        values = np.array([func(node) for node in rule.nodes], dtype=np.complex128)
    return complex(np.sum(rule.weights * values))
