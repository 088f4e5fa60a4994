//! Parameter sweeps over the full pipeline and their CSV / plot output.

mod config;
mod grid;
mod output;
mod presets;
mod sweep;
pub mod validate;

pub use config::{
    config_from_settings, parse_channel, parse_config_text, parse_measures, read_config_file, ScenarioConfig,
    CONFIG_KEYS,
};
pub use grid::Grid;
pub use output::{
    emit_csv, emit_metadata, emit_plot_script, format_sig, plot_script, read_csv, write_csv, CSV_COLUMNS,
};
pub use presets::{default_alpha_grid, default_gamma_grid, default_r_grid, figure_preset, FIGURE_NAMES};
pub use sweep::{grid_points, pipeline_state, run_scenario, PointState, SweepRow, SweepTable, TOOL_VERSION};
