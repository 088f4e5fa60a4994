//! Uniform acceleration of both qutrits.
//!
//! Each Minkowski level is mapped into region I ⊗ region II, local basis
//! `{0, 1, 2, P}` with the pair state at index 3:
//!
//! ```text
//! |0_k> -> cos²r |0>|0> + cos r sin r (|1>|2> + |2>|1>) + sin²r |P>|P>
//! |1_k> -> cos r |1>|0> + sin r |P>|1>
//! |2_k> -> cos r |2>|0> - sin r |P>|2>
//! ```
//!
//! The phase is dropped. Region II is traced out for both parties, leaving
//! a 4⊗4 state on Alice's and Rob's region-I modes.

use std::f64::consts::FRAC_PI_4;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, pairwise_sum, BipartiteShape, ComplexMatrix, DensityMatrix};
use crate::states::{initial_state, AlphaParameter, RobLabeling};

pub const R_MIN: f64 = 0.0;
pub const R_MAX: f64 = FRAC_PI_4;
/// Index of the pair state |P> in each accelerated local space.
pub const PAIR_LEVEL: usize = 3;
pub const ACCELERATED_DIM: usize = 4;
/// Entries closer than this count as agreeing in [`cross_check`].
pub const CROSS_CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AccelerationParameter(f64);

impl AccelerationParameter {
    pub fn new(r: f64) -> Result<Self> {
        if !(R_MIN..=R_MAX).contains(&r) {
            return Err(Error::OutOfRange {
                name: "r",
                value: r,
                min: R_MIN,
                max: R_MAX,
            });
        }
        Ok(AccelerationParameter(r))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The 16×3 isometry, rows indexed `region_I * 4 + region_II`.
#[derive(Debug, Clone)]
pub struct RindlerIsometry {
    matrix: ComplexMatrix,
}

pub fn rindler_isometry(r: AccelerationParameter) -> RindlerIsometry {
    let (s, c) = r.value().sin_cos();
    let row = |one: usize, two: usize| one * ACCELERATED_DIM + two;
    let p = PAIR_LEVEL;
    let mut v = ComplexMatrix::zeros(16, 3);
    let re = |x: f64| Complex64::new(x, 0.0);

    v[(row(0, 0), 0)] = re(c * c);
    v[(row(1, 2), 0)] = re(c * s);
    v[(row(2, 1), 0)] = re(c * s);
    v[(row(p, p), 0)] = re(s * s);

    v[(row(1, 0), 1)] = re(c);
    v[(row(p, 1), 1)] = re(s);

    v[(row(2, 0), 2)] = re(c);
    v[(row(p, 2), 2)] = re(-s);

    RindlerIsometry { matrix: v }
}

impl RindlerIsometry {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// The 4×3 block of the isometry landing on region-II level `k`.
    /// Tracing region II out of `V rho V^dagger` is `sum_k B_k rho B_k^dagger`.
    pub fn region_two_block(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(ACCELERATED_DIM, 3, |one, m| {
            self.matrix[(one * ACCELERATED_DIM + k, m)]
        })
    }
}

/// Accelerates Alice with `r_a` and Rob with `r_b`, tracing out both region-II modes.
pub fn accelerate(
    rho: &DensityMatrix,
    r_a: AccelerationParameter,
    r_b: AccelerationParameter,
) -> Result<DensityMatrix> {
    let shape = rho.shape();
    if shape.dim_a != 3 || shape.dim_b != 3 {
        return Err(Error::ShapeMismatch(format!(
            "acceleration acts on a 3⊗3 state, got {shape}"
        )));
    }
    let va = rindler_isometry(r_a);
    let vb = rindler_isometry(r_b);
    let blocks_a: Vec<_> = (0..ACCELERATED_DIM).map(|k| va.region_two_block(k)).collect();
    let blocks_b: Vec<_> = (0..ACCELERATED_DIM).map(|k| vb.region_two_block(k)).collect();

    let mut terms = Vec::with_capacity(16);
    for ba in &blocks_a {
        for bb in &blocks_b {
            terms.push(kron(ba, bb).conjugate(rho.matrix())?);
        }
    }
    let out = pairwise_sum(&terms).expect("sixteen terms");
    DensityMatrix::new(BipartiteShape::square(ACCELERATED_DIM)?, out)
}

/// Ordered basis used by the tabulated closed forms (1-based positions).
pub const CLOSED_FORM_BASIS: [&str; 16] = [
    "00", "01", "02", "10", "11", "12", "20", "21", "22", "0P", "1P", "2P", "P0", "P1", "P2", "PP",
];

/// Internal `a * 4 + b` index of a 1-based closed-form basis position.
pub fn closed_form_to_internal(position: usize) -> usize {
    let label = CLOSED_FORM_BASIS[position - 1].as_bytes();
    let level = |ch: u8| match ch {
        b'P' => PAIR_LEVEL,
        digit => (digit - b'0') as usize,
    };
    level(label[0]) * ACCELERATED_DIM + level(label[1])
}

/// Inverse of [`closed_form_to_internal`].
pub fn internal_to_closed_form(index: usize) -> usize {
    (1..=16)
        .find(|&p| closed_form_to_internal(p) == index)
        .expect("index below 16")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormEntry {
    /// Coefficient name `e_{i,j}`.
    pub symbol: (usize, usize),
    /// 1-based position in [`CLOSED_FORM_BASIS`].
    pub row: usize,
    pub col: usize,
    pub value: f64,
    /// Set for the coefficients attached to more than one operator or value.
    pub ambiguous: bool,
}

#[derive(Debug, Clone)]
pub struct ClosedFormElements {
    pub entries: Vec<ClosedFormEntry>,
}

impl ClosedFormElements {
    pub fn at(&self, row: usize, col: usize) -> impl Iterator<Item = &ClosedFormEntry> {
        self.entries
            .iter()
            .filter(move |e| e.row == row && e.col == col)
    }

    pub fn is_ambiguous_position(&self, row: usize, col: usize) -> bool {
        self.at(row, col).any(|e| e.ambiguous)
    }

    /// Positions carrying at least one ambiguous candidate.
    pub fn ambiguous_positions(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .filter(|e| e.ambiguous)
            .map(|e| (e.row, e.col))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Tabulated matrix elements of the accelerated state, keyed to the
/// operator positions they multiply (Hermitian conjugates included).
///
/// They describe the [`RobLabeling::Swapped01`] form of the family. The
/// coefficient `e_{6,10}` multiplies both `|12><0P|` and `|11><P2|`, and
/// `e_{8,13}` multiplies both `|21><P0|` and `|11><2P|` while being given two
/// different values. Every candidate at those positions is kept and flagged.
pub fn closed_form_elements(alpha: AlphaParameter, r: AccelerationParameter) -> ClosedFormElements {
    let a = alpha.value();
    let (s, c) = r.value().sin_cos();
    let (s2, c2) = (s * s, c * c);
    let (s4, c4) = (s2 * s2, c2 * c2);
    let c6 = c4 * c2;
    let d = 21.0;

    let e11 = a / d * c4 * c4;
    let e22 = c6 / d * (2.0 + a * s2);
    let e33 = c6 / d * (5.0 - a * c2);
    let e10_10 = c4 * s2 / d * (7.0 - a * c2);
    let e66 = c4 / d * (a * c2 + s2 * (7.0 + a * s2));
    let e11_11 = c2 * s2 / d * (a * s4 + (9.0 - a) * s2 + 5.0);
    let e24 = 2.0 * c6 / d;
    let e12_12 = c2 * s2 / d * (a * s4 + (12.0 - 2.0 * a) * s2 + a + 2.0);
    let e29 = 2.0 * c4 * c / d;
    let e55 = c4 / d * (a * s4 + 4.0 * s2 - a + 5.0);
    let e99 = c4 / d * (a * s4 + 2.0 * (5.0 - a) * s2 + 2.0);
    let e16_16 = s4 / d * (a * s4 + (14.0 - 2.0 * a) * s2 + (7.0 + a));
    let e6_10 = 2.0 * s2 * c4 / d;
    let e12_15 = 2.0 * s4 * c2 / d;
    let e8_13_first = e6_10;
    let e8_13_second = -2.0 * c2 * c * s2 / d;

    let pos = |label: &str| {
        CLOSED_FORM_BASIS
            .iter()
            .position(|&l| l == label)
            .expect("known label")
            + 1
    };

    let mut entries = Vec::new();
    let mut push = |symbol: (usize, usize), ket: &str, bra: &str, value: f64, ambiguous: bool| {
        let (row, col) = (pos(ket), pos(bra));
        entries.push(ClosedFormEntry { symbol, row, col, value, ambiguous });
        if row != col {
            entries.push(ClosedFormEntry { symbol, row: col, col: row, value, ambiguous });
        }
    };

    push((1, 1), "00", "00", e11, false);
    push((2, 2), "01", "01", e22, false);
    push((3, 3), "02", "02", e33, false);
    push((4, 4), "10", "10", e22, false);
    push((5, 5), "11", "11", e55, false);
    push((6, 6), "12", "12", e66, false);
    push((7, 7), "20", "20", e33, false);
    push((8, 8), "21", "21", e66, false);
    push((9, 9), "22", "22", e99, false);
    push((10, 10), "0P", "0P", e10_10, false);
    push((11, 11), "1P", "1P", e11_11, false);
    push((12, 12), "2P", "2P", e12_12, false);
    push((13, 13), "P0", "P0", e10_10, false);
    push((14, 14), "P1", "P1", e11_11, false);
    push((15, 15), "P2", "P2", e12_12, false);
    push((16, 16), "PP", "PP", e16_16, false);
    push((2, 4), "01", "10", e24, false);
    push((2, 9), "01", "22", e29, false);
    push((4, 9), "10", "22", e29, false);
    push((12, 15), "2P", "P2", e12_15, false);
    push((6, 10), "12", "0P", e6_10, true);
    push((6, 10), "11", "P2", e6_10, true);
    for value in [e8_13_first, e8_13_second] {
        push((8, 13), "21", "P0", value, true);
        push((8, 13), "11", "2P", value, true);
    }

    ClosedFormElements { entries }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    /// 1-based position in [`CLOSED_FORM_BASIS`].
    pub row_index: usize,
    pub col_index: usize,
    pub generic: f64,
    pub closed_form: f64,
    pub abs_diff: f64,
    pub ambiguous: bool,
}

#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    pub alpha: f64,
    pub r: f64,
    pub labeling: RobLabeling,
    pub max_imaginary: f64,
    pub entries: Vec<Discrepancy>,
}

impl DiscrepancyReport {
    /// Discrepancies outside the ambiguity-flagged positions.
    pub fn unexplained(&self) -> impl Iterator<Item = &Discrepancy> {
        self.entries.iter().filter(|d| !d.ambiguous)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["row_index", "col_index", "generic", "closed_form", "abs_diff", "ambiguous_flag"])?;
        for d in &self.entries {
            w.write_record([
                d.row_index.to_string(),
                d.col_index.to_string(),
                format!("{:.15e}", d.generic),
                format!("{:.15e}", d.closed_form),
                format!("{:.3e}", d.abs_diff),
                d.ambiguous.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }
}

/// Compares the generic construction with the closed forms at every one of
/// the 256 positions. A position absent from the closed forms counts as 0.
pub fn cross_check(alpha: AlphaParameter, r: AccelerationParameter, labeling: RobLabeling) -> Result<DiscrepancyReport> {
    let rho = accelerate(&initial_state(alpha, labeling), r, r)?;
    let m = rho.matrix();
    let closed = closed_form_elements(alpha, r);

    let mut entries = Vec::new();
    let mut max_imaginary = 0.0f64;
    for row in 1..=16 {
        for col in 1..=16 {
            let z = m[(closed_form_to_internal(row), closed_form_to_internal(col))];
            max_imaginary = max_imaginary.max(z.im.abs());
            let ambiguous = closed.is_ambiguous_position(row, col);
            let mut candidates: Vec<f64> = closed.at(row, col).map(|e| e.value).collect();
            if candidates.is_empty() {
                candidates.push(0.0);
            }
            for closed_form in candidates {
                let abs_diff = (z.re - closed_form).abs();
                if abs_diff > CROSS_CHECK_TOL {
                    entries.push(Discrepancy {
                        row_index: row,
                        col_index: col,
                        generic: z.re,
                        closed_form,
                        abs_diff,
                        ambiguous,
                    });
                }
            }
        }
    }
    Ok(DiscrepancyReport {
        alpha: alpha.value(),
        r: r.value(),
        labeling,
        max_imaginary,
        entries,
    })
}
