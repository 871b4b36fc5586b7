"""Central tolerance table.

Values are sized for double precision and the small matrix dimensions used
throughout (n <= 8 in the operator kernel, 2-3 on grids): roughly 100x the
roundoff that accumulates in a Jacobi sweep.
"""

# symmetric eigensolver
EIG_RESIDUAL_TOL = 1e-10     # diagonalization residual, scaled by (1 + max|entry|)
RECONSTRUCTION_TOL = 1e-12   # V diag(w) V^T reproduces the matrix, same scaling
ORTHONORMALITY_TOL = 1e-12   # frame vectors: |<xi_i, xi_j> - delta_ij|

# operator algebra identities on random matrices
IDENTITY_TOL = 1e-10
LOEWNER_TOL = 1e-12

# analytic certifications
CERT_TOL = 1e-8              # default |residual| / sign tolerance
SINGULAR_MARGIN = 1e-8       # sample points must stay this far from singular sets

# grids
INTERIOR_MARGIN_FACTOR = 1e-9   # x h: nodes closer to the boundary count as exterior
THETA_BISECTION_FACTOR = 1e-12  # x h: boundary-crossing bisection tolerance

# solver
BLOWUP_NORM = 1e6
SIGN_VIOLATION_TOL = 1e-8    # relative, for nonpositivity checks of computed solutions
