"""polyball: Dirichlet solvers for complex polyharmonic functions on rotated balls.

A polyharmonic function of order p on the unit ball extends holomorphically
to the union of rotated balls ``exp(k pi i / p) B`` and is recovered from
its traces on the rotated spheres by a sum of Poisson-type integrals.  This
package provides that solver (interior, general ball, exterior via the
Kelvin transform) together with the supporting machinery: principal-branch
complex norms and Lie-ball geometry, exact polynomial Laplacians and the
Almansi decomposition, sphere quadrature, rotated-sphere means, a small
expression language for boundary data, and built-in verification suites.
"""

from ._kernels import backend_name
from .geometry import (
    LieBall,
    RotatedPoint,
    canonicalize,
    cnorm,
    cnorm_pow,
    csqrt_principal,
    hermitian_norm,
    lie_norm,
    normalize_angle,
    rotation_factor,
)
from .polynomials import (
    FieldFunction,
    MultiPoly,
    PizzettiTerm,
    almansi_compose,
    almansi_decompose,
    is_polyharmonic,
    kelvin_transform,
    laplacian,
    pizzetti_coefficient,
    pizzetti_mean_series,
    poly_eval,
    squared_radius,
)
from .quadrature import QuadratureRule, integrate_sphere, surface_area, unit_sphere_rule
from .solvers import (
    AlmansiWeights,
    BoundaryData,
    BoundaryResidualReport,
    HarmonicStack,
    ProblemSpec,
    boundary_residual,
    coefficient_a,
    rotated_mean,
    rotated_poisson_kernel,
    solve_ball,
    solve_exterior,
    solve_interior,
    vandermonde_convert,
)

__version__ = "0.1.0"

__all__ = [
    "AlmansiWeights",
    "BoundaryData",
    "BoundaryResidualReport",
    "FieldFunction",
    "HarmonicStack",
    "LieBall",
    "MultiPoly",
    "PizzettiTerm",
    "ProblemSpec",
    "QuadratureRule",
    "RotatedPoint",
    "almansi_compose",
    "almansi_decompose",
    "backend_name",
    "boundary_residual",
    "canonicalize",
    "cnorm",
    "cnorm_pow",
    "coefficient_a",
    "csqrt_principal",
    "hermitian_norm",
    "integrate_sphere",
    "is_polyharmonic",
    "kelvin_transform",
    "laplacian",
    "lie_norm",
    "normalize_angle",
    "pizzetti_coefficient",
    "pizzetti_mean_series",
    "poly_eval",
    "rotated_mean",
    "rotated_poisson_kernel",
    "rotation_factor",
    "solve_ball",
    "solve_exterior",
    "solve_interior",
    "squared_radius",
    "surface_area",
    "unit_sphere_rule",
    "vandermonde_convert",
]
