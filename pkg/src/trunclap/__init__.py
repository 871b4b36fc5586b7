"""Numerics for degenerate elliptic operators built from extremal Hessian eigenvalues.

The operators are the "truncated Laplacians": the sum of the k smallest
(pk_minus) or the k largest (pk_plus) eigenvalues of the Hessian.  The package
provides exact spectral evaluation on symmetric matrices, a catalog of
closed-form barrier functions with analytic derivatives, wide-stencil monotone
finite differences on cut-cell Cartesian grids, a Dirichlet solver, and a
bisection estimator for the generalized principal eigenvalue (the threshold of
the minimum principle).
"""

__version__ = "0.1.0"

from .errors import (
    BracketFailureError,
    ConfigError,
    GridError,
    InvalidInputError,
    UnsupportedDomainError,
)

__all__ = [
    "__version__",
    "InvalidInputError",
    "UnsupportedDomainError",
    "ConfigError",
    "GridError",
    "BracketFailureError",
]
