//! The two-qutrit family
//! `rho(alpha) = 2/7 |psi+><psi+| + alpha/7 sigma_+ + (5 - alpha)/7 sigma_-`
//! and reference states.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{BipartiteShape, ComplexMatrix, DensityMatrix};

pub const ALPHA_MIN: f64 = 2.0;
pub const ALPHA_MAX: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaParameter(f64);

impl AlphaParameter {
    pub fn new(value: f64) -> Result<Self> {
        if !(ALPHA_MIN..=ALPHA_MAX).contains(&value) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value,
                min: ALPHA_MIN,
                max: ALPHA_MAX,
            });
        }
        Ok(AlphaParameter(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementClass {
    Separable,
    BoundEntangled,
    FreeEntangled,
}

/// `[2,3]` separable, `(3,4]` bound entangled, `(4,5]` free entangled.
pub fn classify(alpha: AlphaParameter) -> EntanglementClass {
    let a = alpha.value();
    if a <= 3.0 {
        EntanglementClass::Separable
    } else if a <= 4.0 {
        EntanglementClass::BoundEntangled
    } else {
        EntanglementClass::FreeEntangled
    }
}

/// How Rob's qutrit levels are labelled when the family is written down.
///
/// `Swapped01` exchanges Rob's |0> and |1>, giving
/// `psi+ ~ |01> + |10> + |22>`, `sigma_+` on `{00, 12, 21}` and `sigma_-` on
/// `{02, 20, 11}`. That is the state whose accelerated matrix elements are
/// the tabulated closed forms in [`crate::rindler::closed_form_elements`].
/// The two labellings differ by a local unitary, so every measure agrees on
/// them before acceleration; acceleration treats |0> differently from |1>
/// and separates them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RobLabeling {
    AsWritten,
    #[default]
    Swapped01,
}

impl RobLabeling {
    fn map(self, level: usize) -> usize {
        match (self, level) {
            (RobLabeling::AsWritten, l) => l,
            (RobLabeling::Swapped01, 0) => 1,
            (RobLabeling::Swapped01, 1) => 0,
            (RobLabeling::Swapped01, l) => l,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RobLabeling::AsWritten => "as-written",
            RobLabeling::Swapped01 => "swapped",
        }
    }
}

impl fmt::Display for RobLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RobLabeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-written" => Ok(RobLabeling::AsWritten),
            "swapped" => Ok(RobLabeling::Swapped01),
            other => Err(Error::Config(format!(
                "rob-levels must be `as-written` or `swapped`, got `{other}`"
            ))),
        }
    }
}

/// `rho(alpha)` exactly as written, on a 3⊗3 space.
pub fn horodecki_state(alpha: AlphaParameter) -> DensityMatrix {
    initial_state(alpha, RobLabeling::AsWritten)
}

/// `rho(alpha)` with Rob's levels relabelled per `labeling`.
pub fn initial_state(alpha: AlphaParameter, labeling: RobLabeling) -> DensityMatrix {
    let a = alpha.value();
    let shape = BipartiteShape { dim_a: 3, dim_b: 3 };
    let idx = |x: usize, y: usize| shape.index(x, labeling.map(y));

    let mut m = ComplexMatrix::zeros(9, 9);
    let w = 2.0 / 21.0;
    for i in 0..3 {
        for k in 0..3 {
            m[(idx(i, i), idx(k, k))] = Complex64::new(w, 0.0);
        }
    }
    for (x, y) in [(0, 1), (1, 2), (2, 0)] {
        m[(idx(x, y), idx(x, y))] += a / 21.0;
    }
    for (x, y) in [(0, 2), (1, 0), (2, 1)] {
        m[(idx(x, y), idx(x, y))] += (5.0 - a) / 21.0;
    }
    DensityMatrix::new(shape, m).expect("9x9 fits 3⊗3")
}

/// Projector onto `(1/sqrt d) sum_i |ii>`.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "maximally entangled state needs d >= 2, got {d}"
        )));
    }
    let shape = BipartiteShape::square(d)?;
    let amp = 1.0 / (d as f64).sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        v[shape.index(i, i)] = Complex64::new(amp, 0.0);
    }
    DensityMatrix::new(shape, ComplexMatrix::outer(&v))
}
