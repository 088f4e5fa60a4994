//! Concurrence from the partial-transpose / realignment trace norms, relative
//! entropy of coherence, and von Neumann entropy ("non-local information").
//! Entropies are in bits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, trace_norm, DensityMatrix};

/// Eigenvalues in `[EIGENVALUE_FLOOR, 0)` are rounding noise and count as 0
/// in entropies; anything more negative is an invalid state.
pub const EIGENVALUE_FLOOR: f64 = -1e-12;
/// `is_ppt` accepts partial-transpose eigenvalues down to this.
pub const PPT_TOL: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeasureConventions {
    /// Dimension `m` in the concurrence prefactor `sqrt(2 / (m (m - 1)))`.
    /// Defaults to the smaller local dimension of the measured state.
    pub m_override: Option<usize>,
}

impl MeasureConventions {
    pub fn concurrence_dim(&self, rho: &DensityMatrix) -> usize {
        let shape = rho.shape();
        self.m_override.unwrap_or(shape.dim_a.min(shape.dim_b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Concurrence,
    Coherence,
    Entropy,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Concurrence, Measure::Coherence, Measure::Entropy];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Coherence => "coherence",
            Measure::Entropy => "entropy",
        }
    }

    /// CSV column holding this measure.
    pub fn column(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Coherence => "rel_entropy_coherence",
            Measure::Entropy => "nonlocal_information",
        }
    }

    pub fn evaluate(self, rho: &DensityMatrix, conv: &MeasureConventions) -> Result<f64> {
        match self {
            Measure::Concurrence => concurrence(rho, conv),
            Measure::Coherence => rel_entropy_coherence(rho),
            Measure::Entropy => nonlocal_information(rho),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concurrence" => Ok(Measure::Concurrence),
            "coherence" | "rel_entropy_coherence" => Ok(Measure::Coherence),
            "entropy" | "nonlocal_information" => Ok(Measure::Entropy),
            other => Err(Error::Config(format!("unknown measure `{other}`"))),
        }
    }
}

/// `max{0, sqrt(2/(m(m-1))) (max{||rho^T||, ||rho^R||} - 1)}`.
pub fn concurrence(rho: &DensityMatrix, conv: &MeasureConventions) -> Result<f64> {
    let m = conv.concurrence_dim(rho);
    if m < 2 {
        return Err(Error::InvalidDimension(format!(
            "concurrence prefactor needs m >= 2, got {m}"
        )));
    }
    let pt_norm = trace_norm(&rho.partial_transpose());
    let r_norm = ccnr_value(rho);
    let prefactor = (2.0 / (m * (m - 1)) as f64).sqrt();
    Ok((prefactor * (pt_norm.max(r_norm) - 1.0)).max(0.0))
}

/// `||rho^R||`; above 1 certifies entanglement.
pub fn ccnr_value(rho: &DensityMatrix) -> f64 {
    trace_norm(&rho.realign())
}

/// True iff the partial transpose has no eigenvalue below [`PPT_TOL`].
pub fn is_ppt(rho: &DensityMatrix) -> Result<bool> {
    let vals = hermitian_eigenvalues(&rho.partial_transpose())?;
    Ok(vals.last().is_none_or(|&min| min >= PPT_TOL))
}

/// `-sum p log2 p` over a probability vector, with the rounding floor applied.
pub fn shannon_bits(probabilities: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &p in probabilities {
        if p < EIGENVALUE_FLOOR {
            return Err(Error::InvalidState(format!(
                "eigenvalue {p:.3e} below the {EIGENVALUE_FLOOR:e} floor"
            )));
        }
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    Ok(s)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    shannon_bits(&rho.eigenvalues()?)
}

/// Von Neumann entropy of the joint state, in bits.
pub fn nonlocal_information(rho: &DensityMatrix) -> Result<f64> {
    von_neumann_entropy(rho)
}

/// `S(diag rho) - S(rho)`; clamped at 0 against rounding.
pub fn rel_entropy_coherence(rho: &DensityMatrix) -> Result<f64> {
    let diag: Vec<f64> = rho.matrix().diagonal().iter().map(|z| z.re).collect();
    let value = shannon_bits(&diag)? - von_neumann_entropy(rho)?;
    Ok(if value < 0.0 && value > -1e-10 { 0.0 } else { value })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::linalg::{BipartiteShape, ComplexMatrix};
    use crate::states::{horodecki_state, max_entangled, AlphaParameter};

    const DEFAULT: MeasureConventions = MeasureConventions { m_override: None };

    fn rho_alpha(a: f64) -> DensityMatrix {
        horodecki_state(AlphaParameter::new(a).unwrap())
    }

    #[test]
    fn concurrence_of_maximally_entangled() {
        let bell = max_entangled(2).unwrap();
        assert!((concurrence(&bell, &DEFAULT).unwrap() - 1.0).abs() < 1e-9);
        let psi = max_entangled(3).unwrap();
        assert!((concurrence(&psi, &DEFAULT).unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn concurrence_prefactor_follows_override() {
        let psi = max_entangled(3).unwrap().embed(4, 4).unwrap();
        let c4 = concurrence(&psi, &DEFAULT).unwrap();
        let c3 = concurrence(&psi, &MeasureConventions { m_override: Some(3) }).unwrap();
        assert!((c4 - (2.0f64 / 12.0).sqrt() * 2.0).abs() < 1e-9);
        assert!((c3 - 2.0 / 3f64.sqrt()).abs() < 1e-9);
        assert!(concurrence(&psi, &MeasureConventions { m_override: Some(1) }).is_err());
    }

    #[test]
    fn concurrence_vanishes_on_separable_interval() {
        for k in 0..=10 {
            let a = 2.0 + k as f64 * 0.1;
            assert!(concurrence(&rho_alpha(a), &DEFAULT).unwrap() <= 1e-9, "alpha={a}");
        }
    }

    #[test]
    fn realignment_detects_bound_entanglement() {
        // PPT yet ||rho^R|| > 1 across (3, 4].
        for a in [3.2, 3.5, 4.0] {
            let rho = rho_alpha(a);
            assert!(is_ppt(&rho).unwrap());
            assert!(ccnr_value(&rho) > 1.0);
            assert!(concurrence(&rho, &DEFAULT).unwrap() > 0.0);
        }
    }

    #[test]
    fn ccnr_anchors() {
        let product = {
            let v = [1.0, 0.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0));
            DensityMatrix::new(BipartiteShape::square(2).unwrap(), ComplexMatrix::outer(&v)).unwrap()
        };
        assert!((ccnr_value(&product) - 1.0).abs() < 1e-12);
        assert!((ccnr_value(&max_entangled(3).unwrap()) - 3.0).abs() < 1e-12);
        let mixed = DensityMatrix::new(BipartiteShape::square(2).unwrap(), ComplexMatrix::identity(4).scale(0.25)).unwrap();
        assert!((ccnr_value(&mixed) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ppt_checks() {
        assert!(!is_ppt(&max_entangled(2).unwrap()).unwrap());
        assert!(is_ppt(&rho_alpha(3.5)).unwrap());
        assert!(!is_ppt(&rho_alpha(4.5)).unwrap());
    }

    #[test]
    fn coherence_anchors() {
        let diag = DensityMatrix::new(
            BipartiteShape::new(1, 3).unwrap(),
            ComplexMatrix::diag_real(&[0.2, 0.3, 0.5]),
        )
        .unwrap();
        assert_eq!(rel_entropy_coherence(&diag).unwrap(), 0.0);

        let plus = DensityMatrix::new(
            BipartiteShape::new(1, 2).unwrap(),
            ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap(),
        )
        .unwrap();
        assert!((rel_entropy_coherence(&plus).unwrap() - 1.0).abs() < 1e-12);

        let want = 2.0 / 7.0 * 3f64.log2();
        for a in [2.0, 3.3, 4.5, 5.0] {
            assert!((rel_entropy_coherence(&rho_alpha(a)).unwrap() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn entropy_anchors() {
        assert!(nonlocal_information(&max_entangled(3).unwrap()).unwrap().abs() < 1e-10);
        let mixed = DensityMatrix::new(BipartiteShape::square(3).unwrap(), ComplexMatrix::identity(9).scale(1.0 / 9.0)).unwrap();
        assert!((nonlocal_information(&mixed).unwrap() - 9f64.log2()).abs() < 1e-10);
        let p: f64 = 2.0 / 7.0;
        let q: f64 = 5.0 / 21.0;
        let want = -p * p.log2() - 3.0 * q * q.log2();
        assert!((nonlocal_information(&rho_alpha(5.0)).unwrap() - want).abs() < 1e-10);
        assert!((want - 1.9952366).abs() < 1e-7);
    }

    #[test]
    fn negative_spectrum_is_rejected() {
        let pt = max_entangled(2).unwrap().partial_transpose();
        let bad = DensityMatrix::new(BipartiteShape::square(2).unwrap(), pt).unwrap();
        assert!(nonlocal_information(&bad).is_err());
        assert!(shannon_bits(&[0.5, 0.5 + 1e-13, -1e-13]).is_ok());
    }

    #[test]
    fn measure_names() {
        assert_eq!("entropy".parse::<Measure>().unwrap(), Measure::Entropy);
        assert_eq!(Measure::Coherence.column(), "rel_entropy_coherence");
        assert!("negativity".parse::<Measure>().is_err());
    }
}
