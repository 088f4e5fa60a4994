use std::collections::BTreeMap;
use std::path::Path;

use super::grid::Grid;
use crate::channels::{ChannelKind, GlobalMode, Locality, NoiseStrength};
use crate::error::{Error, Result};
use crate::measures::{Measure, MeasureConventions};
use crate::rindler::AccelerationParameter;
use crate::states::{AlphaParameter, RobLabeling};

/// One simulation scenario: grids for each parameter plus the noise model
/// and the measures to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub alpha: Grid,
    pub r: Grid,
    /// Ignored (and may be `None`) when `channel` is `None`.
    pub gamma: Option<Grid>,
    pub channel: Option<ChannelKind>,
    pub locality: Locality,
    pub global_mode: GlobalMode,
    pub conventions: MeasureConventions,
    pub measures: Vec<Measure>,
    pub rob_levels: RobLabeling,
}

/// Keys understood in config files; each mirrors a `sim run` flag.
pub const CONFIG_KEYS: [&str; 10] = [
    "alpha",
    "r",
    "gamma",
    "channel",
    "locality",
    "global-mode",
    "m-override",
    "measures",
    "rob-levels",
    "out",
];

impl ScenarioConfig {
    /// Noise-free sweep of all three measures over the given grids.
    pub fn noiseless(alpha: Grid, r: Grid) -> Self {
        ScenarioConfig {
            alpha,
            r,
            gamma: None,
            channel: None,
            locality: Locality::None,
            global_mode: GlobalMode::default(),
            conventions: MeasureConventions::default(),
            measures: Measure::ALL.to_vec(),
            rob_levels: RobLabeling::default(),
        }
    }

    /// The gamma values actually swept; `[None]` without a channel.
    pub fn gamma_points(&self) -> Vec<Option<f64>> {
        match (&self.channel, &self.gamma) {
            (Some(_), Some(g)) => g.values().iter().map(|&x| Some(x)).collect(),
            _ => vec![None],
        }
    }

    pub fn row_count(&self) -> usize {
        let g = match (&self.channel, &self.gamma) {
            (Some(_), Some(g)) => g.len(),
            _ => 1,
        };
        self.alpha.len() * self.r.len() * g
    }

    pub fn validate(&self) -> Result<()> {
        for &a in self.alpha.values() {
            AlphaParameter::new(a)?;
        }
        for &r in self.r.values() {
            AccelerationParameter::new(r)?;
        }
        match (self.channel, self.locality) {
            (None, Locality::None) => {}
            (None, loc) => {
                return Err(Error::Config(format!("locality `{loc}` needs a channel")));
            }
            (Some(ch), Locality::None) => {
                return Err(Error::Config(format!("channel `{ch}` needs locality multi-local or global")));
            }
            (Some(_), _) => {
                let gamma = self
                    .gamma
                    .as_ref()
                    .ok_or_else(|| Error::Config("a noisy channel needs a gamma value or grid".into()))?;
                for &g in gamma.values() {
                    NoiseStrength::new(g)?;
                }
            }
        }
        if let Some(m) = self.conventions.m_override {
            if m < 2 {
                return Err(Error::Config(format!("m-override must be at least 2, got {m}")));
            }
        }
        let mut seen = self.measures.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.measures.len() {
            return Err(Error::Config("measures listed twice".into()));
        }
        Ok(())
    }

    /// Key-value echo, readable back with [`parse_config_text`].
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        line("alpha", self.alpha.to_string());
        line("r", self.r.to_string());
        if let Some(g) = &self.gamma {
            line("gamma", g.to_string());
        }
        line(
            "channel",
            self.channel.map_or("none".to_string(), |c| c.to_string()),
        );
        line("locality", self.locality.to_string());
        line("global-mode", self.global_mode.to_string());
        if let Some(m) = self.conventions.m_override {
            line("m-override", m.to_string());
        }
        line(
            "measures",
            self.measures
                .iter()
                .map(|m| m.as_str())
                .collect::<Vec<_>>()
                .join(","),
        );
        line("rob-levels", self.rob_levels.to_string());
        out
    }
}

/// Parses `key = value` lines; `#` starts a comment. Unknown keys are errors.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
        let key = key.trim().to_string();
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("line {}: unknown key `{key}`", n + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_text(&text)
}

/// Parses a comma-separated measure list.
pub fn parse_measures(s: &str) -> Result<Vec<Measure>> {
    s.split(',')
        .map(|m| m.trim())
        .filter(|m| !m.is_empty())
        .map(str::parse)
        .collect()
}

/// `none` maps to no channel.
pub fn parse_channel(s: &str) -> Result<Option<ChannelKind>> {
    match s {
        "none" => Ok(None),
        other => other.parse().map(Some),
    }
}

/// Builds a config from string settings; missing keys take the defaults of
/// [`ScenarioConfig::noiseless`] over the full alpha and r ranges.
pub fn config_from_settings(settings: &BTreeMap<String, String>) -> Result<ScenarioConfig> {
    let get = |k: &str| settings.get(k).map(String::as_str);
    let mut cfg = ScenarioConfig::noiseless(super::presets::default_alpha_grid(), super::presets::default_r_grid());
    if let Some(v) = get("alpha") {
        cfg.alpha = v.parse()?;
    }
    if let Some(v) = get("r") {
        cfg.r = v.parse()?;
    }
    if let Some(v) = get("gamma") {
        cfg.gamma = Some(v.parse()?);
    }
    if let Some(v) = get("channel") {
        cfg.channel = parse_channel(v)?;
    }
    if let Some(v) = get("locality") {
        cfg.locality = v.parse()?;
    } else if cfg.channel.is_some() {
        cfg.locality = Locality::MultiLocal;
    }
    if let Some(v) = get("global-mode") {
        cfg.global_mode = v.parse()?;
    }
    if let Some(v) = get("m-override") {
        let m = v
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("bad m-override `{v}`")))?;
        cfg.conventions.m_override = Some(m);
    }
    if let Some(v) = get("measures") {
        cfg.measures = parse_measures(v)?;
    }
    if let Some(v) = get("rob-levels") {
        cfg.rob_levels = v.parse()?;
    }
    if cfg.channel.is_some() && cfg.gamma.is_none() {
        cfg.gamma = Some(super::presets::default_gamma_grid());
    }
    cfg.validate()?;
    Ok(cfg)
}
