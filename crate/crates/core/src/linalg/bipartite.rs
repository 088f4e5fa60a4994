//! Bipartite index manipulations. Composite basis order is `|ab> <-> a * dim_b + b`.

use std::fmt;

use super::eigen::hermitian_eigenvalues;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

pub const TOL_HERMITIAN: f64 = 1e-12;
pub const TOL_TRACE: f64 = 1e-12;
pub const TOL_MIN_EIGENVALUE: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteShape {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteShape {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidDimension(format!(
                "local dimensions must be positive, got {dim_a}x{dim_b}"
            )));
        }
        Ok(BipartiteShape { dim_a, dim_b })
    }

    pub fn square(d: usize) -> Result<Self> {
        Self::new(d, d)
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.dim_b + b
    }

    fn check(&self, m: &ComplexMatrix) -> Result<()> {
        if !m.is_square() || m.rows() != self.total() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix does not fit bipartite shape {self}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.dim_a, self.dim_b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced matrix on the subsystem that is *kept* when `traced` is summed out.
pub fn partial_trace(m: &ComplexMatrix, shape: BipartiteShape, traced: Subsystem) -> Result<ComplexMatrix> {
    shape.check(m)?;
    let (da, db) = (shape.dim_a, shape.dim_b);
    Ok(match traced {
        Subsystem::B => ComplexMatrix::from_fn(da, da, |i, k| {
            (0..db).map(|j| m[(shape.index(i, j), shape.index(k, j))]).sum()
        }),
        Subsystem::A => ComplexMatrix::from_fn(db, db, |j, l| {
            (0..da).map(|i| m[(shape.index(i, j), shape.index(i, l))]).sum()
        }),
    })
}

/// Transpose on subsystem A: `out[(i,j),(k,l)] = m[(k,j),(i,l)]`.
pub fn partial_transpose(m: &ComplexMatrix, shape: BipartiteShape) -> Result<ComplexMatrix> {
    shape.check(m)?;
    let (da, db) = (shape.dim_a, shape.dim_b);
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    out[(shape.index(i, j), shape.index(k, l))] = m[(shape.index(k, j), shape.index(i, l))];
                }
            }
        }
    }
    Ok(out)
}

/// Realignment `out[(i,j),(k,l)] = m[(i,k),(j,l)]`, a `dim_a^2 x dim_b^2` matrix.
pub fn realign(m: &ComplexMatrix, shape: BipartiteShape) -> Result<ComplexMatrix> {
    shape.check(m)?;
    let (da, db) = (shape.dim_a, shape.dim_b);
    let mut out = ComplexMatrix::zeros(da * da, db * db);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[(i * da + j, k * db + l)] = m[(shape.index(i, k), shape.index(j, l))];
                }
            }
        }
    }
    Ok(out)
}

/// A bipartite density operator. Construction checks only the shape; call
/// [`DensityMatrix::validate`] for the physical invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    shape: BipartiteShape,
    matrix: ComplexMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validity {
    pub hermiticity_deviation: f64,
    pub trace_re: f64,
    pub trace_im: f64,
    pub min_eigenvalue: f64,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_deviation <= TOL_HERMITIAN
            && (self.trace_re - 1.0).abs() <= TOL_TRACE
            && self.trace_im.abs() <= TOL_TRACE
            && self.min_eigenvalue >= TOL_MIN_EIGENVALUE
    }
}

impl DensityMatrix {
    pub fn new(shape: BipartiteShape, matrix: ComplexMatrix) -> Result<Self> {
        shape.check(&matrix)?;
        Ok(DensityMatrix { shape, matrix })
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.shape.total()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn scaled(&self, s: f64) -> Self {
        DensityMatrix {
            shape: self.shape,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(*self
            .eigenvalues()?
            .last()
            .expect("density matrices are non-empty"))
    }

    pub fn validity(&self) -> Result<Validity> {
        let tr = self.matrix.trace();
        Ok(Validity {
            hermiticity_deviation: self.matrix.hermiticity_deviation(),
            trace_re: tr.re,
            trace_im: tr.im,
            min_eigenvalue: self.min_eigenvalue()?,
        })
    }

    /// Checks Hermiticity, unit trace and positivity at the crate tolerances.
    pub fn validate(&self) -> Result<Validity> {
        let v = self.validity()?;
        if !v.is_valid() {
            return Err(Error::InvalidState(format!(
                "hermiticity drift {:.3e}, trace {:.15}, min eigenvalue {:.3e}",
                v.hermiticity_deviation, v.trace_re, v.min_eigenvalue
            )));
        }
        Ok(v)
    }

    pub fn partial_trace(&self, traced: Subsystem) -> Result<ComplexMatrix> {
        partial_trace(&self.matrix, self.shape, traced)
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose(&self.matrix, self.shape).expect("shape checked at construction")
    }

    pub fn realign(&self) -> ComplexMatrix {
        realign(&self.matrix, self.shape).expect("shape checked at construction")
    }

    /// Places the state into larger local spaces, each local level keeping its index.
    pub fn embed(&self, dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
        if dim_a < self.shape.dim_a || dim_b < self.shape.dim_b {
            return Err(Error::InvalidDimension(format!(
                "cannot embed {} into {dim_a}⊗{dim_b}",
                self.shape
            )));
        }
        let to = BipartiteShape::new(dim_a, dim_b)?;
        let from = self.shape;
        let mut out = ComplexMatrix::zeros(to.total(), to.total());
        for a in 0..from.dim_a {
            for b in 0..from.dim_b {
                for c in 0..from.dim_a {
                    for d in 0..from.dim_b {
                        out[(to.index(a, b), to.index(c, d))] = self.matrix[(from.index(a, b), from.index(c, d))];
                    }
                }
            }
        }
        DensityMatrix::new(to, out)
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::linalg::{kron, trace_norm};

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v: Vec<Complex64> = [h, 0.0, 0.0, h].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        DensityMatrix::new(BipartiteShape::square(2).unwrap(), ComplexMatrix::outer(&v)).unwrap()
    }

    #[test]
    fn partial_trace_of_bell_by_summation() {
        let reduced = bell().partial_trace(Subsystem::A).unwrap();
        // Direct summation: (rho_B)_{jl} = sum_i rho[(i,j),(i,l)].
        let m = bell().into_matrix();
        for j in 0..2 {
            for l in 0..2 {
                let want: Complex64 = (0..2).map(|i| m[(2 * i + j, 2 * i + l)]).sum();
                assert!((reduced[(j, l)] - want).norm() < 1e-15);
            }
        }
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let ra = ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let rb = ComplexMatrix::diag_real(&[0.1, 0.5, 0.4]);
        let rho = DensityMatrix::new(BipartiteShape::new(2, 3).unwrap(), kron(&ra, &rb)).unwrap();
        assert!(rho.partial_trace(Subsystem::B).unwrap().max_abs_diff(&ra) < 1e-15);
        assert!(rho.partial_trace(Subsystem::A).unwrap().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = bell().partial_transpose();
        let vals = hermitian_eigenvalues(&pt).unwrap();
        let want = [0.5, 0.5, 0.5, -0.5];
        for (v, w) in vals.iter().zip(want) {
            assert!((v - w).abs() < 1e-12, "{vals:?}");
        }
        assert!((trace_norm(&pt) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_of_product_transposes_a() {
        let i = Complex64::new(0.0, 0.1);
        let ra = ComplexMatrix::from_vec(
            2,
            2,
            vec![Complex64::new(0.6, 0.0), i, -i, Complex64::new(0.4, 0.0)],
        )
        .unwrap();
        let rb = ComplexMatrix::diag_real(&[0.25, 0.75]);
        let rho = DensityMatrix::new(BipartiteShape::square(2).unwrap(), kron(&ra, &rb)).unwrap();
        let want = kron(&ra.transpose(), &rb);
        assert!(rho.partial_transpose().max_abs_diff(&want) < 1e-15);
        assert!(hermitian_eigenvalues(&want).unwrap().iter().all(|&x| x >= -1e-12));
    }

    #[test]
    fn realign_of_maximally_mixed_two_qubits() {
        let rho = DensityMatrix::new(BipartiteShape::square(2).unwrap(), ComplexMatrix::identity(4).scale(0.25)).unwrap();
        let r = rho.realign();
        // (1/4) vec(I) vec(I)^T
        let vec_i = [1.0, 0.0, 0.0, 1.0];
        for a in 0..4 {
            for b in 0..4 {
                assert!((r[(a, b)].re - 0.25 * vec_i[a] * vec_i[b]).abs() < 1e-15);
            }
        }
        assert!((trace_norm(&r) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn realign_rectangular_dims_and_zero() {
        let shape = BipartiteShape::new(2, 3).unwrap();
        let z = realign(&ComplexMatrix::zeros(6, 6), shape).unwrap();
        assert_eq!((z.rows(), z.cols()), (4, 9));
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let shape = BipartiteShape::square(3).unwrap();
        let m = ComplexMatrix::identity(4);
        assert!(partial_transpose(&m, shape).is_err());
        assert!(realign(&m, shape).is_err());
        assert!(partial_trace(&m, shape, Subsystem::B).is_err());
        assert!(DensityMatrix::new(shape, m).is_err());
        assert!(BipartiteShape::new(0, 2).is_err());
    }

    #[test]
    fn embed_keeps_entries() {
        let e = bell().embed(3, 4).unwrap();
        assert_eq!(e.dim(), 12);
        assert!((e.matrix()[(0, 5)].re - 0.5).abs() < 1e-15);
        assert!((e.trace() - 1.0).abs() < 1e-15);
        assert!(bell().embed(1, 2).is_err());
    }

    #[test]
    fn validate_flags_bad_states() {
        assert!(bell().validate().is_ok());
        let unnormalized = bell().scaled(2.0);
        assert!(unnormalized.validate().is_err());
        let neg = DensityMatrix::new(BipartiteShape::square(2).unwrap(), bell().partial_transpose()).unwrap();
        assert!(neg.validate().is_err());
    }
}
