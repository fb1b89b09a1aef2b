//! Command-line front end: fit, predict, validate, export windows, plot.
//!
//! Exit codes: 0 on success, 1 on data or model errors, 2 on usage errors.

mod commands;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "loadcast",
    version,
    about = "Short-term load forecasting with 12-parameter lagged regression"
)]
pub struct Cli {
    /// Optional TOML config supplying defaults for --split and --window.
    /// Precedence: flags, then config file, then built-in defaults.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the 12-parameter model on a series CSV and write a model file.
    Fit(FitArgs),
    /// Forecast the hour after a series ends, using a fitted model file.
    Predict(PredictArgs),
    /// Evaluate forecast accuracy on held-out data or an embedded fixture.
    Validate(ValidateArgs),
    /// Export the training windows as 13-field text, one window per line.
    Windows(WindowsArgs),
    /// Write an SVG scatter of temperature vs next-hour demand with the
    /// fitted trend line.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Series CSV to fit on.
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    /// Where to write the model JSON.
    #[arg(long = "model-out", value_name = "FILE")]
    pub model_out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Fitted model JSON.
    #[arg(long, value_name = "FILE")]
    pub model: PathBuf,
    /// Series CSV whose last three hours feed the forecast.
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ValidateSource {
    /// Series CSV to split into train/holdout spans.
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,
    /// Embedded (actual, predicted) fixture to evaluate instead,
    /// e.g. `table2_actual_predicted`.
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: ValidateSource,
    /// Fraction of training windows kept for fitting (default 0.8).
    #[arg(long, value_name = "FRACTION", conflicts_with_all = ["fixture", "rolling"])]
    pub split: Option<f64>,
    /// Roll a fixed-width refit window over the series instead of a single
    /// train/holdout split.
    #[arg(long, conflicts_with = "fixture")]
    pub rolling: bool,
    /// Rolling window width in training pairs (default 99).
    #[arg(
        long,
        value_name = "PAIRS",
        requires = "rolling",
        conflicts_with = "fixture"
    )]
    pub window: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WindowsArgs {
    /// Series CSV to window.
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    /// Where to write the text export.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Series CSV to plot.
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    /// Where to write the SVG.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
