"""Manufactured polyharmonic solutions for verification.

Harmonic polynomials are generated as real and imaginary parts of powers
``(a . x)^d`` of isotropic directions (``sum a_j^2 = 0``), which are
harmonic because the Laplacian of such a power carries the factor
``a . a``.  This construction is independent of the Almansi machinery it is
used to test.  Coefficients are quarter-integers so all downstream symbolic
arithmetic stays exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .polynomials import MultiPoly, almansi_compose, laplacian, squared_radius

# entries are exact (re, im) rational pairs with sum a_j^2 = 0; the 3-4-5
# style vectors are scaled to unit size so basis coefficients stay O(1)
def _f(re, im=0):
    return (Fraction(re), Fraction(im))


_ISOTROPIC = {
    2: [(_f(1), _f(0, 1))],
    3: [
        (_f(1), _f(0, 1), _f(0)),
        (_f(0), _f(1), _f(0, 1)),
        (_f(1), _f(0), _f(0, 1)),
        (_f(Fraction(3, 5)), _f(Fraction(4, 5)), _f(0, 1)),
    ],
    4: [
        (_f(1), _f(0, 1), _f(0), _f(0)),
        (_f(0), _f(0), _f(1), _f(0, 1)),
        (_f(1), _f(0), _f(0), _f(0, 1)),
        (_f(0), _f(1), _f(0, 1), _f(0)),
        (_f(1), _f(0, Fraction(4, 5)), _f(0, Fraction(3, 5)), _f(0)),
    ],
    5: [
        (_f(1), _f(0, 1), _f(0), _f(0), _f(0)),
        (_f(0), _f(0), _f(1), _f(0, 1), _f(0)),
        (_f(0), _f(0), _f(0), _f(1), _f(0, 1)),
        (_f(1), _f(0), _f(0, 1), _f(0), _f(0)),
        (_f(0), _f(Fraction(3, 5)), _f(0), _f(Fraction(4, 5)), _f(0, 1)),
    ],
}


def isotropic_directions(n):
    """Catalog isotropic vectors of C^n as exact (re, im) rational pairs."""
    if n not in _ISOTROPIC:
        raise ValueError(f"no isotropic catalog for dimension {n}")
    return list(_ISOTROPIC[n])


def harmonic_basis(n, degree):
    """Nonzero harmonic polynomials of exactly the given homogeneous degree."""
    if degree == 0:
        return [MultiPoly.constant(1, n)]
    if degree == 1:
        return [MultiPoly.variable(j, n) for j in range(1, n + 1)]
    basis = []
    for a in isotropic_directions(n):
        terms = {}
        for j, coeff in enumerate(a):
            if coeff[0] or coeff[1]:
                alpha = tuple(1 if i == j else 0 for i in range(n))
                terms[alpha] = coeff
        linear = MultiPoly(n, terms)
        power = linear**degree
        for candidate in (power.real_part(), power.imag_part()):
            if not candidate.is_zero():
                basis.append(candidate)
    return basis


def random_harmonic_poly(n, max_degree, rng):
    """Random harmonic polynomial with exact quarter-integer coefficients."""
    poly = MultiPoly.zero(n)
    for degree in range(max_degree + 1):
        for basis_poly in harmonic_basis(n, degree):
            c = int(rng.integers(-4, 5))
            if c:
                poly = poly + basis_poly * Fraction(c, 4)
    if poly.is_zero():
        poly = MultiPoly.constant(1, n)
    assert laplacian(poly).is_zero()
    return poly


def random_harmonic_stack(n, p, max_degree, rng):
    """A list of p random harmonic polynomials (an Almansi stack)."""
    return [random_harmonic_poly(n, max_degree, rng) for _ in range(p)]


def random_polyharmonic(n, p, max_degree, rng):
    """Random order-p polyharmonic polynomial plus its generating stack."""
    stack = random_harmonic_stack(n, p, max_degree, rng)
    return almansi_compose(stack), stack


def biharmonic_example(n=2):
    """The concrete manufactured solution ``1 + |x|^2 x1``."""
    return MultiPoly.constant(1, n) + squared_radius(n) * MultiPoly.variable(1, n)


def random_interior_points(n, count, rng, max_norm=0.9):
    """Real evaluation points of norm at most ``max_norm``."""
    raw = rng.standard_normal((count, n))
    unit = raw / np.linalg.norm(raw, axis=1)[:, None]
    radii = max_norm * rng.uniform(0.0, 1.0, size=count) ** (1.0 / n)
    return unit * radii[:, None]
