use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::sweep::{SweepRow, SweepTable};
use crate::channels::Locality;
use crate::error::{Error, Result};
use crate::measures::Measure;

pub const CSV_COLUMNS: [&str; 10] = [
    "alpha",
    "r",
    "gamma",
    "channel",
    "locality",
    "concurrence",
    "rel_entropy_coherence",
    "nonlocal_information",
    "pre_norm_trace",
    "min_eigenvalue",
];

const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

fn row_record(row: &SweepRow) -> [String; 10] {
    [
        format_sig(row.alpha),
        format_sig(row.r),
        opt(row.gamma),
        row.channel.map_or("none".to_string(), |c| c.to_string()),
        row.locality.to_string(),
        opt(row.concurrence),
        opt(row.rel_entropy_coherence),
        opt(row.nonlocal_information),
        format_sig(row.pre_norm_trace),
        format_sig(row.min_eigenvalue),
    ]
}

pub fn write_csv<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in &table.rows {
        w.write_record(row_record(row))?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}

pub fn emit_csv(table: &SweepTable, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(table, BufWriter::new(file))
}

/// Parses a file written by [`emit_csv`].
pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_COLUMNS.iter().copied()) {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let num = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("bad number `{s}` in CSV")))
        }
    };
    let req = |s: &str| -> Result<f64> { num(s)?.ok_or_else(|| Error::Config("missing value in CSV".into())) };
    reader
        .records()
        .map(|rec| {
            let rec = rec?;
            Ok(SweepRow {
                alpha: req(&rec[0])?,
                r: req(&rec[1])?,
                gamma: num(&rec[2])?,
                channel: super::config::parse_channel(&rec[3])?,
                locality: rec[4].parse::<Locality>()?,
                concurrence: num(&rec[5])?,
                rel_entropy_coherence: num(&rec[6])?,
                nonlocal_information: num(&rec[7])?,
                pre_norm_trace: req(&rec[8])?,
                min_eigenvalue: req(&rec[9])?,
            })
        })
        .collect()
}

/// Writes the config echo plus run metadata as a key-value file that
/// `sim run --config` accepts.
pub fn emit_metadata(table: &SweepTable, path: &Path) -> Result<()> {
    let m = table.config.conventions.m_override;
    let text = format!(
        "# qutrit-unruh {}\n# rows: {}\n# concurrence m: {}\n{}",
        table.tool_version,
        table.rows.len(),
        m.map_or("min(local dims) = 4".to_string(), |m| m.to_string()),
        table.config.to_config_text()
    );
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Swept parameters split into continuous axes (4+ points) and series
/// parameters (2-3 points) that become separate panels or curves.
fn axes(table: &SweepTable) -> (Vec<&'static str>, Vec<&'static str>) {
    let cfg = &table.config;
    let gamma_len = match (&cfg.channel, &cfg.gamma) {
        (Some(_), Some(g)) => g.len(),
        _ => 1,
    };
    let mut dims = vec![("alpha", cfg.alpha.len()), ("r", cfg.r.len()), ("gamma", gamma_len)];
    dims.retain(|&(_, n)| n > 1);
    let continuous: Vec<_> = dims.iter().filter(|&&(_, n)| n >= 4).map(|&(c, _)| c).collect();
    let series: Vec<_> = dims.iter().filter(|&&(_, n)| n < 4).map(|&(c, _)| c).collect();
    (continuous, series)
}

/// Python/matplotlib script that reads the sibling CSV and draws one plot
/// per measure: a surface for two continuous axes, lines otherwise.
pub fn plot_script(table: &SweepTable, csv_name: &str) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::Config("cannot plot an empty table".into()));
    }
    let (mut continuous, mut series) = axes(table);
    if continuous.len() > 2 {
        series.extend(continuous.drain(2..));
    }
    if continuous.is_empty() {
        continuous.push(series.pop().unwrap_or("alpha"));
    }
    let measures: Vec<&str> = table.config.measures.iter().map(|m: &Measure| m.column()).collect();
    let list = |v: &[&str]| {
        v.iter()
            .map(|s| format!("\"{s}\""))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let kind = if continuous.len() == 2 { "surface" } else { "line" };

    Ok(format!(
        r#"#!/usr/bin/env python3
# Plots {csv_name}. Requires matplotlib.
import csv
import itertools
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
CSV = os.path.join(HERE, "{csv_name}")
STEM = os.path.splitext(CSV)[0]
AXES = [{axes}]
SERIES = [{series}]
MEASURES = [{measures}]
KIND = "{kind}"


def value(row, col):
    v = row[col]
    return float(v) if v != "" else None


with open(CSV, newline="") as fh:
    rows = list(csv.DictReader(fh))
if not rows:
    sys.exit("no rows in " + CSV)

series_values = [sorted({{row[c] for row in rows}}, key=float) for c in SERIES]
combos = list(itertools.product(*series_values)) or [()]

for measure in MEASURES:
    if KIND == "surface":
        fig = plt.figure(figsize=(5 * len(combos), 4))
        for n, combo in enumerate(combos):
            sel = [r for r in rows if all(r[c] == v for c, v in zip(SERIES, combo))]
            xs = sorted({{value(r, AXES[0]) for r in sel}})
            ys = sorted({{value(r, AXES[1]) for r in sel}})
            grid = {{(value(r, AXES[0]), value(r, AXES[1])): value(r, measure) for r in sel}}
            Z = [[grid.get((x, y)) or 0.0 for x in xs] for y in ys]
            X = [xs for _ in ys]
            Y = [[y] * len(xs) for y in ys]
            ax = fig.add_subplot(1, len(combos), n + 1, projection="3d")
            ax.plot_surface(np.array(X), np.array(Y), np.array(Z), cmap="viridis")
            ax.set_xlabel(AXES[0])
            ax.set_ylabel(AXES[1])
            ax.set_zlabel(measure)
            ax.set_title(", ".join(f"{{c}}={{v}}" for c, v in zip(SERIES, combo)))
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        for combo in combos:
            sel = [r for r in rows if all(r[c] == v for c, v in zip(SERIES, combo))]
            sel.sort(key=lambda r: value(r, AXES[0]))
            label = ", ".join(f"{{c}}={{v}}" for c, v in zip(SERIES, combo)) or None
            ax.plot([value(r, AXES[0]) for r in sel], [value(r, measure) for r in sel], label=label)
        ax.set_xlabel(AXES[0])
        ax.set_ylabel(measure)
        if SERIES:
            ax.legend()
    fig.tight_layout()
    fig.savefig(f"{{STEM}}_{{measure}}.png", dpi=120)
    plt.close(fig)
"#,
        axes = list(&continuous),
        series = list(&series),
        measures = list(&measures),
    ))
}

/// Writes [`plot_script`] to `path`, pointing at the CSV with the same stem.
pub fn emit_plot_script(table: &SweepTable, path: &Path) -> Result<()> {
    let csv_name = path
        .with_extension("csv")
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Config(format!("bad plot script path {}", path.display())))?
        .to_string();
    let script = plot_script(table, &csv_name)?;
    std::fs::write(path, script).map_err(|e| Error::io(path, e))
}
