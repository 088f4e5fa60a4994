#![allow(dead_code)]

use proptest::prelude::*;
use qutrit_unruh::linalg::{BipartiteShape, ComplexMatrix, DensityMatrix};
use qutrit_unruh::Complex64;

pub fn complex_entries(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

pub fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_entries(n * n).prop_map(move |v| {
        let g = ComplexMatrix::from_vec(n, n, v).unwrap();
        &g + &g.adjoint()
    })
}

/// `G G^dagger / tr`, full rank with probability one.
pub fn density(d_a: usize, d_b: usize) -> impl Strategy<Value = DensityMatrix> {
    let n = d_a * d_b;
    complex_entries(n * n).prop_map(move |v| {
        let g = ComplexMatrix::from_vec(n, n, v).unwrap();
        let m = &g * &g.adjoint();
        let t = m.trace().re;
        DensityMatrix::new(BipartiteShape::new(d_a, d_b).unwrap(), m.scale(1.0 / t)).unwrap()
    })
}

pub fn local_density(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_entries(d * d).prop_map(move |v| {
        let g = ComplexMatrix::from_vec(d, d, v).unwrap();
        let m = &g * &g.adjoint();
        let t = m.trace().re;
        m.scale(1.0 / t)
    })
}

/// Random unitary by Gram-Schmidt on the columns of a random matrix.
pub fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_entries(n * n).prop_filter_map("degenerate draw", move |v| {
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| v[i * n + j]).collect()).collect();
        for j in 0..n {
            for k in 0..j {
                let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                let (done, rest) = cols.split_at_mut(j);
                for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * y;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                return None;
            }
            cols[j].iter_mut().for_each(|z| *z /= norm);
        }
        Some(ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]))
    })
}
