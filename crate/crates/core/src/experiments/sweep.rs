use rayon::prelude::*;

use super::config::ScenarioConfig;
use crate::channels::{apply_global, apply_multilocal, ChannelKind, KrausChannel, Locality, NoiseStrength};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, TOL_MIN_EIGENVALUE};
use crate::measures::Measure;
use crate::rindler::{accelerate, AccelerationParameter, ACCELERATED_DIM};
use crate::states::{initial_state, AlphaParameter};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub r: f64,
    pub gamma: Option<f64>,
    pub channel: Option<ChannelKind>,
    pub locality: Locality,
    pub concurrence: Option<f64>,
    pub rel_entropy_coherence: Option<f64>,
    pub nonlocal_information: Option<f64>,
    pub pre_norm_trace: f64,
    pub min_eigenvalue: f64,
}

impl SweepRow {
    pub fn measure(&self, m: Measure) -> Option<f64> {
        match m {
            Measure::Concurrence => self.concurrence,
            Measure::Coherence => self.rel_entropy_coherence,
            Measure::Entropy => self.nonlocal_information,
        }
    }

    fn set_measure(&mut self, m: Measure, value: f64) {
        let slot = match m {
            Measure::Concurrence => &mut self.concurrence,
            Measure::Coherence => &mut self.rel_entropy_coherence,
            Measure::Entropy => &mut self.nonlocal_information,
        };
        *slot = Some(value);
    }
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub config: ScenarioConfig,
    pub tool_version: &'static str,
}

/// State after acceleration and noise at one grid point.
#[derive(Debug, Clone)]
pub struct PointState {
    pub state: DensityMatrix,
    pub pre_norm_trace: f64,
}

/// Builds the initial state, accelerates both parties by `r`, then applies
/// the configured channel at `gamma`.
pub fn pipeline_state(cfg: &ScenarioConfig, alpha: f64, r: f64, gamma: Option<f64>) -> Result<PointState> {
    let rho = initial_state(AlphaParameter::new(alpha)?, cfg.rob_levels);
    let r = AccelerationParameter::new(r)?;
    let acc = accelerate(&rho, r, r)?;

    let (kind, gamma) = match (cfg.channel, gamma, cfg.locality) {
        (Some(kind), Some(g), loc) if loc != Locality::None => (kind, NoiseStrength::new(g)?),
        _ => {
            let t = acc.trace();
            return Ok(PointState {
                state: acc,
                pre_norm_trace: t,
            });
        }
    };
    let ch = KrausChannel::new(kind, gamma, ACCELERATED_DIM)?;
    match cfg.locality {
        Locality::MultiLocal => {
            let state = apply_multilocal(&acc, &ch, &ch)?;
            let t = state.trace();
            Ok(PointState {
                state,
                pre_norm_trace: t,
            })
        }
        Locality::Global => {
            let out = apply_global(&acc, &ch, cfg.global_mode)?;
            Ok(PointState {
                state: out.state,
                pre_norm_trace: out.pre_norm_trace,
            })
        }
        Locality::None => unreachable!("handled above"),
    }
}

fn evaluate_point(cfg: &ScenarioConfig, alpha: f64, r: f64, gamma: Option<f64>) -> Result<SweepRow> {
    let point = pipeline_state(cfg, alpha, r, gamma)?;
    let min_eigenvalue = point.state.min_eigenvalue()?;
    if min_eigenvalue < TOL_MIN_EIGENVALUE {
        return Err(Error::InvalidState(format!(
            "minimum eigenvalue {min_eigenvalue:.3e} below {TOL_MIN_EIGENVALUE:e}"
        )));
    }
    let mut row = SweepRow {
        alpha,
        r,
        gamma,
        channel: if gamma.is_some() { cfg.channel } else { None },
        locality: if gamma.is_some() { cfg.locality } else { Locality::None },
        concurrence: None,
        rel_entropy_coherence: None,
        nonlocal_information: None,
        pre_norm_trace: point.pre_norm_trace,
        min_eigenvalue,
    };
    for &m in &cfg.measures {
        row.set_measure(m, m.evaluate(&point.state, &cfg.conventions)?);
    }
    Ok(row)
}

/// Grid points in output order: alpha outermost, gamma innermost.
pub fn grid_points(cfg: &ScenarioConfig) -> Vec<(f64, f64, Option<f64>)> {
    let gammas = cfg.gamma_points();
    let mut points = Vec::with_capacity(cfg.row_count());
    for &a in cfg.alpha.values() {
        for &r in cfg.r.values() {
            for &g in &gammas {
                points.push((a, r, g));
            }
        }
    }
    points
}

/// Evaluates every grid point (in parallel) and returns rows in grid order.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<SweepTable> {
    cfg.validate()?;
    let rows = grid_points(cfg)
        .into_par_iter()
        .map(|(alpha, r, gamma)| {
            evaluate_point(cfg, alpha, r, gamma).map_err(|e| Error::AtGridPoint {
                alpha,
                r,
                gamma,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        rows,
        config: cfg.clone(),
        tool_version: TOOL_VERSION,
    })
}
