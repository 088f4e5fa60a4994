//! Dense complex linear algebra for small bipartite systems.

mod bipartite;
mod eigen;
mod matrix;

pub use bipartite::{
    partial_trace, partial_transpose, realign, BipartiteShape, DensityMatrix, Subsystem, Validity,
    TOL_HERMITIAN, TOL_MIN_EIGENVALUE, TOL_TRACE,
};
pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, singular_values, trace_norm, HermitianEigen,
    HERMITIAN_INPUT_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL,
};
pub use matrix::{kron, pairwise_sum, ComplexMatrix, ONE, ZERO};
