//! Cyclic Jacobi diagonalization of Hermitian matrices, and the singular
//! values / trace norm built on top of it.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Inputs farther than this from Hermitian are rejected.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the sweep stops.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let n = m.rows();

    // Work on the exactly Hermitian part so rounding noise in the input cannot
    // leak imaginary parts onto the diagonal.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::InvalidState(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p][q]` with a unitary acting on coordinates p, q:
/// `a <- J^dagger a J`, `v <- v J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }

    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Singular values, descending, read off the Hermitian dilation
/// `[[0, M], [M^dagger, 0]]` whose spectrum is `±sigma` padded with zeros.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let (r, c) = (m.rows(), m.cols());
    let n = r + c;
    let dilation = ComplexMatrix::from_fn(n, n, |i, j| {
        if i < r && j >= r {
            m[(i, j - r)]
        } else if i >= r && j < r {
            m[(j, i - r)].conj()
        } else {
            ZERO
        }
    });
    let values = hermitian_eigen(&dilation)
        .expect("Hermitian dilation is Hermitian by construction")
        .values;
    // The k-th largest of the top min(r, c) eigenvalues is sigma_k; clip rounding below zero.
    values
        .into_iter()
        .take(r.min(c))
        .map(|x| if x < 0.0 { 0.0 } else { x })
        .collect()
}

/// Sum of singular values. Hermitian input takes the `sum |lambda|` route.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    if m.is_square() && m.hermiticity_deviation() <= 1e-14 * m.max_abs().max(1.0) {
        if let Ok(values) = hermitian_eigenvalues(m) {
            return values.iter().map(|x| x.abs()).sum();
        }
    }
    singular_values(m).iter().sum()
}
