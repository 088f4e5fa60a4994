use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qutrit_unruh::experiments::{
    config_from_settings, emit_csv, emit_metadata, emit_plot_script, figure_preset, read_config_file, run_scenario,
    validate::run_validation, write_csv, FIGURE_NAMES,
};
use qutrit_unruh::rindler::{cross_check, AccelerationParameter};
use qutrit_unruh::states::{AlphaParameter, RobLabeling};
use qutrit_unruh::Error;

/// Entanglement, coherence and mutual information of accelerated qutrit pairs.
#[derive(Parser)]
#[command(name = "sim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a custom scenario and write a CSV table.
    Run(Box<RunArgs>),
    /// Regenerate one of the figure presets (CSV, plot script, metadata).
    Figure {
        /// fig1 .. fig8
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the built-in self-checks; exits 1 if any fails.
    Validate,
    /// Compare the accelerated state with its closed form, entry by entry.
    Crosscheck {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "swapped")]
        rob_levels: RobLabeling,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Key-value config file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Value, list `a,b,c`, range `start:stop:step` or `start:stop:#n`.
    #[arg(long)]
    alpha: Option<String>,
    /// Same syntax as --alpha; `pi/4` is accepted.
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    /// dephasing, amplitude or none
    #[arg(long)]
    channel: Option<String>,
    /// none, multi-local or global
    #[arg(long)]
    locality: Option<String>,
    /// literal or composed
    #[arg(long)]
    global_mode: Option<String>,
    /// Dimension m in the concurrence prefactor.
    #[arg(long)]
    m_override: Option<String>,
    /// Comma list of concurrence, coherence, entropy.
    #[arg(long)]
    measures: Option<String>,
    /// as-written or swapped
    #[arg(long)]
    rob_levels: Option<String>,
    /// Output CSV; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn settings(&self) -> Result<BTreeMap<String, String>, Error> {
        let mut map = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("alpha", &self.alpha),
            ("r", &self.r),
            ("gamma", &self.gamma),
            ("channel", &self.channel),
            ("locality", &self.locality),
            ("global-mode", &self.global_mode),
            ("m-override", &self.m_override),
            ("measures", &self.measures),
            ("rob-levels", &self.rob_levels),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                map.insert(key.to_string(), v.clone());
            }
        }
        if let Some(out) = &self.out {
            map.insert("out".to_string(), out.display().to_string());
        }
        Ok(map)
    }
}

fn run(args: RunArgs) -> Result<(), Error> {
    let settings = args.settings()?;
    let cfg = config_from_settings(&settings)?;
    let table = run_scenario(&cfg)?;
    match settings.get("out") {
        Some(out) => {
            let path = Path::new(out);
            emit_csv(&table, path)?;
            emit_metadata(&table, &path.with_extension("meta"))?;
            eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
        }
        None => write_csv(&table, std::io::stdout().lock())?,
    }
    Ok(())
}

fn figure(name: &str, out: &Path) -> Result<(), Error> {
    let cfg = figure_preset(name)?;
    std::fs::create_dir_all(out).map_err(|e| Error::Io {
        path: out.to_path_buf(),
        source: e,
    })?;
    let table = run_scenario(&cfg)?;
    let csv = out.join(format!("{name}.csv"));
    emit_csv(&table, &csv)?;
    emit_plot_script(&table, &out.join(format!("{name}.py")))?;
    emit_metadata(&table, &out.join(format!("{name}.meta")))?;
    eprintln!("wrote {} rows to {}", table.rows.len(), csv.display());
    Ok(())
}

fn validate() -> Result<bool, Error> {
    let checks = run_validation()?;
    let mut ok = true;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        ok &= c.passed;
    }
    println!("{}/{} checks passed", checks.iter().filter(|c| c.passed).count(), checks.len());
    Ok(ok)
}

fn crosscheck(alpha: f64, r: f64, labeling: RobLabeling) -> Result<bool, Error> {
    let report = cross_check(AlphaParameter::new(alpha)?, AccelerationParameter::new(r)?, labeling)?;
    let stdout = std::io::stdout();
    report.write_csv(stdout.lock())?;
    let unexplained = report.unexplained().count();
    let _ = stdout.lock().flush();
    eprintln!(
        "{} differing entries, {unexplained} outside the ambiguity-flagged set; max |Im| = {:.2e}",
        report.entries.len(),
        report.max_imaginary
    );
    Ok(unexplained == 0)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_io() {
        return 3;
    }
    let inner = match e {
        Error::AtGridPoint { source, .. } => source.as_ref(),
        other => other,
    };
    match inner {
        Error::Config(_) | Error::UnknownPreset(_) | Error::OutOfRange { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(*args).map(|()| true),
        Command::Figure { name, out } => {
            if !FIGURE_NAMES.contains(&name.as_str()) {
                eprintln!("error: unknown figure `{name}` (expected one of {})", FIGURE_NAMES.join(", "));
                return ExitCode::from(2);
            }
            figure(&name, &out).map(|()| true)
        }
        Command::Validate => validate(),
        Command::Crosscheck { alpha, r, rob_levels } => crosscheck(alpha, r, rob_levels),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
