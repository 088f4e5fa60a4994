//! Parameter grids for the eight figure presets.
//!
//! | preset | channel            | locality    | swept                      | measures                |
//! |--------|--------------------|-------------|----------------------------|-------------------------|
//! | fig1   | none               | none        | alpha × r                  | concurrence             |
//! | fig2   | none               | none        | alpha × r                  | coherence, entropy      |
//! | fig3   | none               | none        | alpha × r                  | entropy                 |
//! | fig4   | dephasing          | multi-local | r × gamma, alpha ∈ {3.5, 4.5} | coherence, entropy   |
//! | fig5   | amplitude damping  | multi-local | alpha, r ∈ {0, 0.15, 0.3}, gamma = 0.1 | all three   |
//! | fig6   | dephasing          | global      | r × gamma, alpha ∈ {3.5, 4.5} | coherence, entropy   |
//! | fig7   | amplitude damping  | multi-local | r × gamma, alpha ∈ {3.5, 4.5} | coherence, entropy   |
//! | fig8   | amplitude damping  | global      | r × gamma, alpha ∈ {3.5, 4.5} | coherence, entropy   |

use std::f64::consts::FRAC_PI_4;

use super::config::ScenarioConfig;
use super::grid::Grid;
use crate::channels::{ChannelKind, Locality};
use crate::error::{Error, Result};
use crate::measures::Measure;

pub const FIGURE_NAMES: [&str; 8] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

/// alpha in [2, 5], step 0.1.
pub fn default_alpha_grid() -> Grid {
    "2:5:0.1".parse().expect("static grid")
}

/// 16 points on [0, pi/4].
pub fn default_r_grid() -> Grid {
    Grid::linspace(0.0, FRAC_PI_4, 16).expect("static grid")
}

/// gamma in [0, 1], step 0.1.
pub fn default_gamma_grid() -> Grid {
    "0:1:0.1".parse().expect("static grid")
}

fn two_panel_alpha() -> Grid {
    Grid::new(vec![3.5, 4.5]).expect("static grid")
}

fn noisy(channel: ChannelKind, locality: Locality) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::noiseless(two_panel_alpha(), default_r_grid());
    cfg.gamma = Some(default_gamma_grid());
    cfg.channel = Some(channel);
    cfg.locality = locality;
    cfg.measures = vec![Measure::Coherence, Measure::Entropy];
    cfg
}

pub fn figure_preset(name: &str) -> Result<ScenarioConfig> {
    let noiseless = |measures: Vec<Measure>| {
        let mut cfg = ScenarioConfig::noiseless(default_alpha_grid(), default_r_grid());
        cfg.measures = measures;
        cfg
    };
    let cfg = match name {
        "fig1" => noiseless(vec![Measure::Concurrence]),
        "fig2" => noiseless(vec![Measure::Coherence, Measure::Entropy]),
        "fig3" => noiseless(vec![Measure::Entropy]),
        "fig4" => noisy(ChannelKind::Dephasing, Locality::MultiLocal),
        "fig5" => {
            let mut cfg = ScenarioConfig::noiseless(
                default_alpha_grid(),
                Grid::new(vec![0.0, 0.15, 0.3]).expect("static grid"),
            );
            cfg.gamma = Some(Grid::single(0.1).expect("static grid"));
            cfg.channel = Some(ChannelKind::AmplitudeDamping);
            cfg.locality = Locality::MultiLocal;
            cfg
        }
        "fig6" => noisy(ChannelKind::Dephasing, Locality::Global),
        "fig7" => noisy(ChannelKind::AmplitudeDamping, Locality::MultiLocal),
        "fig8" => noisy(ChannelKind::AmplitudeDamping, Locality::Global),
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(cfg)
}
