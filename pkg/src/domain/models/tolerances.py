"""Numerical tolerances shared across the domain.

All problems handled here are at most 32-dimensional and double precision
keeps round-off far below these thresholds.
"""

# Entrywise equality of matrices and vectors.
EPS_EQ = 1e-12

# Hermiticity check on inputs to the eigen-solver.
EPS_HERM = 1e-10

# Eigenvalues below this magnitude count as zero (negativity sums, ranks).
ZERO_CUTOFF = 1e-10

# Unit norm of pure states and unit trace of density matrices.
EPS_NORM = 1e-10

# Smallest eigenvalue a density matrix may carry.
EPS_PSD = 1e-9

# Kraus completeness residual.
EPS_COMPLETENESS = 1e-10

# Margin by which a gain must beat communicated entanglement to be excessive.
EPS_CLS = 1e-9

# Eigenvalues entering entropy sums.
ENTROPY_CUTOFF = 1e-12
