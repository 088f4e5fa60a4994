//! Self-checks run by `sim validate`: analytic anchors, channel completeness,
//! the closed-form cross-check, linear-algebra invariants on seeded random
//! input, and state validity across every figure preset.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::Grid;
use super::presets::{figure_preset, FIGURE_NAMES};
use super::sweep::{grid_points, pipeline_state};
use crate::channels::{ChannelKind, KrausChannel, NoiseStrength};
use crate::error::Result;
use crate::linalg::{hermitian_eigen, partial_transpose, BipartiteShape, ComplexMatrix};
use crate::measures::{concurrence, is_ppt, nonlocal_information, rel_entropy_coherence, MeasureConventions};
use crate::rindler::{cross_check, AccelerationParameter};
use crate::states::{horodecki_state, max_entangled, AlphaParameter, RobLabeling};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

fn alpha_grid() -> Grid {
    super::presets::default_alpha_grid()
}

fn rho(a: f64) -> crate::linalg::DensityMatrix {
    horodecki_state(AlphaParameter::new(a).expect("grid inside range"))
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn channel_completeness() -> Check {
    let mut worst = 0.0f64;
    for step in 0..=10 {
        let g = NoiseStrength::new(step as f64 / 10.0).expect("in range");
        for kind in [ChannelKind::Dephasing, ChannelKind::AmplitudeDamping] {
            for dim in [3, 4] {
                let ch = KrausChannel::new(kind, g, dim).expect("valid dims");
                worst = worst.max(ch.completeness_deviation());
            }
        }
    }
    Check::new(
        "channel completeness",
        worst <= 1e-12,
        format!("max |sum E^dagger E - I| = {worst:.2e}"),
    )
}

fn closed_form_agreement() -> Result<Check> {
    let mut unexplained = 0;
    let mut flagged = 0;
    for &a in alpha_grid().values() {
        for &r in super::presets::default_r_grid().values() {
            let rep = cross_check(AlphaParameter::new(a)?, AccelerationParameter::new(r)?, RobLabeling::Swapped01)?;
            unexplained += rep.unexplained().count();
            flagged += rep.entries.len();
        }
    }
    Ok(Check::new(
        "closed-form cross-check (31x16 grid)",
        unexplained == 0,
        format!("{unexplained} unexplained, {flagged} in the ambiguity-flagged set"),
    ))
}

fn anchors() -> Result<Vec<Check>> {
    let conv = MeasureConventions::default();
    let bell = concurrence(&max_entangled(2)?, &conv)?;
    let psi = concurrence(&max_entangled(3)?, &conv)?;
    let coh_want = 2.0 / 7.0 * 3f64.log2();
    let coh_worst = alpha_grid()
        .values()
        .iter()
        .map(|&a| rel_entropy_coherence(&rho(a)).map(|c| (c - coh_want).abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let s5 = nonlocal_information(&rho(5.0))?;
    let (p, q) = (2.0f64 / 7.0, 5.0f64 / 21.0);
    let s5_want = -p * p.log2() - 3.0 * q * q.log2();
    let sep_worst = alpha_grid()
        .values()
        .iter()
        .filter(|&&a| a <= 3.0)
        .map(|&a| concurrence(&rho(a), &conv))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let mut ppt_ok = true;
    for &a in alpha_grid().values() {
        let ppt = is_ppt(&rho(a))?;
        if (a <= 4.0) != ppt {
            ppt_ok = false;
        }
    }

    Ok(vec![
        Check::new("concurrence of Bell state", (bell - 1.0).abs() <= 1e-9, format!("{bell:.12}")),
        Check::new(
            "concurrence of psi+ (3x3)",
            (psi - 2.0 / 3f64.sqrt()).abs() <= 1e-9,
            format!("{psi:.12}"),
        ),
        Check::new(
            "concurrence zero on separable interval",
            sep_worst <= 1e-9,
            format!("max {sep_worst:.2e} for alpha in [2, 3]"),
        ),
        Check::new(
            "coherence of rho(alpha) at rest",
            coh_worst <= 1e-9,
            format!("max deviation from (2/7) log2 3: {coh_worst:.2e}"),
        ),
        Check::new("entropy of rho(5)", (s5 - s5_want).abs() <= 1e-6, format!("{s5:.9} (expected {s5_want:.9})")),
        Check::new("PPT boundary at alpha = 4", ppt_ok, "PPT exactly for alpha <= 4".into()),
    ])
}

fn linalg_invariants() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pt_worst = 0.0f64;
    let mut eig_worst = 0.0f64;
    for d in [2, 3, 4] {
        let shape = BipartiteShape::square(d)?;
        for _ in 0..100 {
            let m = random_hermitian(&mut rng, d * d);
            let pt = partial_transpose(&m, shape)?;
            let back = partial_transpose(&pt, shape)?;
            pt_worst = pt_worst
                .max(back.max_abs_diff(&m))
                .max((pt.trace() - m.trace()).norm());
        }
        for _ in 0..20 {
            let m = random_hermitian(&mut rng, d * d);
            let eig = hermitian_eigen(&m)?;
            let sum: f64 = eig.values.iter().sum();
            eig_worst = eig_worst.max((sum - m.trace().re).abs());
            for k in 0..m.rows() {
                let v = eig.vector(k);
                for i in 0..m.rows() {
                    let mv: Complex64 = (0..m.rows()).map(|j| m[(i, j)] * v[j]).sum();
                    eig_worst = eig_worst.max((mv - v[i] * eig.values[k]).norm());
                }
            }
        }
    }
    Ok(vec![
        Check::new(
            "partial transpose involution and trace",
            pt_worst <= 1e-12,
            format!("max deviation {pt_worst:.2e}"),
        ),
        Check::new(
            "eigenpair residuals",
            eig_worst <= 1e-9,
            format!("max residual {eig_worst:.2e}"),
        ),
    ])
}

fn preset_validity() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for name in FIGURE_NAMES {
        let cfg = figure_preset(name)?;
        let mut worst_herm = 0.0f64;
        let mut worst_trace = 0.0f64;
        let mut min_eig = f64::INFINITY;
        let mut trace_issue = false;
        for (a, r, g) in grid_points(&cfg) {
            let p = pipeline_state(&cfg, a, r, g)?;
            let v = p.state.validity()?;
            worst_herm = worst_herm.max(v.hermiticity_deviation);
            worst_trace = worst_trace.max((v.trace_re - 1.0).abs());
            min_eig = min_eig.min(v.min_eigenvalue);
            let global = cfg.locality == crate::channels::Locality::Global;
            if (!global && (p.pre_norm_trace - 1.0).abs() > 1e-12) || p.pre_norm_trace > 1.0 + 1e-12 {
                trace_issue = true;
            }
        }
        checks.push(Check::new(
            &format!("{name} state validity"),
            worst_herm <= 1e-12 && worst_trace <= 1e-12 && min_eig >= -1e-10 && !trace_issue,
            format!("herm {worst_herm:.1e}, |tr-1| {worst_trace:.1e}, min eig {min_eig:.1e}"),
        ));
    }
    Ok(checks)
}

/// Runs every check. Errors abort the suite; failed checks are returned.
pub fn run_validation() -> Result<Vec<Check>> {
    let mut checks = vec![channel_completeness(), closed_form_agreement()?];
    checks.extend(anchors()?);
    checks.extend(linalg_invariants()?);
    checks.extend(preset_validity()?);
    Ok(checks)
}
