use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite, strictly increasing list of parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config(format!("grid has non-finite values: {values:?}")));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!("grid must be strictly increasing: {values:?}")));
        }
        Ok(Grid(values))
    }

    pub fn single(value: f64) -> Result<Self> {
        Self::new(vec![value])
    }

    /// `n` evenly spaced points including both ends.
    pub fn linspace(start: f64, stop: f64, n: usize) -> Result<Self> {
        let values = match n {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        };
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn parse_number(token: &str) -> Result<f64> {
    let t = token.trim();
    if let Some(rest) = t.strip_prefix("pi") {
        let scale = if rest.is_empty() {
            1.0
        } else if let Some(div) = rest.strip_prefix('/') {
            1.0 / parse_plain(div)?
        } else {
            return Err(Error::Config(format!("cannot parse number `{t}`")));
        };
        return Ok(PI * scale);
    }
    parse_plain(t)
}

fn parse_plain(t: &str) -> Result<f64> {
    t.parse::<f64>()
        .map_err(|_| Error::Config(format!("cannot parse number `{t}`")))
}

/// Decimal grids such as `2:5:0.1` land on the nearest double of each
/// printed value rather than accumulating `start + i * step` error.
fn snap(x: f64) -> f64 {
    let scaled = x * 1e12;
    if scaled.abs() < 1e15 {
        scaled.round() / 1e12
    } else {
        x
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Accepts a single value, a comma list, `start:stop:step`, or
    /// `start:stop:#count`. Numbers may be written `pi` or `pi/N`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Config("empty grid".into()));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => single
                .split(',')
                .map(parse_number)
                .collect::<Result<Vec<_>>>()
                .and_then(Grid::new),
            [start, stop, step] => {
                let (start, stop) = (parse_number(start)?, parse_number(stop)?);
                if stop < start {
                    return Err(Error::Config(format!("range stop {stop} below start {start}")));
                }
                if let Some(count) = step.trim().strip_prefix('#') {
                    let n = count
                        .parse::<usize>()
                        .map_err(|_| Error::Config(format!("bad point count `{count}`")))?;
                    return Grid::linspace(start, stop, n);
                }
                let step = parse_number(step)?;
                if step.is_nan() || step <= 0.0 {
                    return Err(Error::Config(format!("range step must be positive, got {step}")));
                }
                let span = (stop - start) / step;
                let n = (span + 1e-9).floor() as usize + 1;
                let values = (0..n)
                    .map(|i| {
                        let x = start + i as f64 * step;
                        if (x - stop).abs() <= 1e-9 * stop.abs().max(1.0) {
                            stop
                        } else {
                            snap(x)
                        }
                    })
                    .collect();
                Grid::new(values)
            }
            _ => Err(Error::Config(format!("cannot parse grid `{s}`"))),
        }
    }
}

impl fmt::Display for Grid {
    /// Comma list in shortest round-trip form, re-parseable by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| format!("{v:?}")).collect();
        f.write_str(&parts.join(","))
    }
}
