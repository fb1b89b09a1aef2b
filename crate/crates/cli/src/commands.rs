//! Subcommand execution over the library API.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use loadcast::dataset;
use loadcast::fixtures::{self, Fixture};
use loadcast::forecast::{self, ValidationReport, DEFAULT_ROLLING_WINDOW};
use loadcast::pipeline::{self, HourlyRecord};
use loadcast::regression::{self, FitMetrics};

use crate::plot;
use crate::{Cli, Command, FitArgs, PlotArgs, PredictArgs, ValidateArgs, WindowsArgs};

const DEFAULT_SPLIT: f64 = 0.8;

/// Optional config file; flags take precedence over these values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    split: Option<f64>,
    window: Option<usize>,
}

fn load_config(path: Option<&Path>) -> Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text =
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

pub fn run(cli: Cli) -> Result<()> {
    let config = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Fit(args) => run_fit(&args),
        Command::Predict(args) => run_predict(&args),
        Command::Validate(args) => run_validate(&args, &config),
        Command::Windows(args) => run_windows(&args),
        Command::Plot(args) => run_plot(&args),
    }
}

fn read_series(path: &Path) -> Result<Vec<HourlyRecord>> {
    dataset::read_series_csv(path).with_context(|| path.display().to_string())
}

fn print_metrics(metrics: &FitMetrics) {
    println!("MaxErr = {:.4}", metrics.max_abs_deviation);
    match metrics.mape_percent {
        Some(mape) => println!("MAPE (%) = {mape:.4}"),
        None => println!("MAPE (%) = undefined (an observed value is zero)"),
    }
    match metrics.r_squared {
        Some(r2) => println!("R^2 = {r2:.4}"),
        None => println!("R^2 = undefined (observed values are constant)"),
    }
}

fn run_fit(args: &FitArgs) -> Result<()> {
    let series = read_series(&args.data)?;
    let report = forecast::fit_series(&series)
        .with_context(|| format!("fitting {}", args.data.display()))?;
    dataset::write_model(&args.model_out, &report.model)
        .with_context(|| format!("writing {}", args.model_out.display()))?;
    println!(
        "fitted 12-parameter model on {} training pairs",
        report.n_pairs
    );
    print_metrics(&report.metrics);
    println!("model written to {}", args.model_out.display());
    Ok(())
}

fn run_predict(args: &PredictArgs) -> Result<()> {
    let model =
        dataset::read_model(&args.model).with_context(|| args.model.display().to_string())?;
    let series = read_series(&args.data)?;
    let forecast = forecast::forecast_next(&model, &series)
        .with_context(|| format!("forecasting from {}", args.data.display()))?;
    println!(
        "target hour = {}",
        dataset::format_timestamp(forecast.target_hour)
    );
    println!("Forecasted load (in MW) = {:.4}", forecast.predicted_load);
    Ok(())
}

fn run_validate(args: &ValidateArgs, config: &FileConfig) -> Result<()> {
    if let Some(name) = &args.source.fixture {
        let fixture = fixtures::load_fixture(name)?;
        let Fixture::Table2(table) = fixture else {
            bail!("fixture `{name}` is not an (actual, predicted) table");
        };
        let (actual, predicted): (Vec<f64>, Vec<f64>) = table.pairs.into_iter().unzip();
        let metrics = regression::metrics_from_predictions(&predicted, &actual)?;
        println!("fixture = {name}");
        println!("{}", ValidationReport::new(metrics));
        return Ok(());
    }

    let data = args
        .source
        .data
        .as_ref()
        .expect("clap guarantees a validate source");
    let series = read_series(data)?;
    if args.rolling {
        let window = args
            .window
            .or(config.window)
            .unwrap_or(DEFAULT_ROLLING_WINDOW);
        let steps = forecast::rolling_refit(&series, window)
            .with_context(|| format!("rolling refit over {}", data.display()))?;
        let predicted: Vec<f64> = steps.iter().map(|s| s.forecast.predicted_load).collect();
        let actual: Vec<f64> = steps.iter().map(|s| s.actual).collect();
        let metrics = regression::metrics_from_predictions(&predicted, &actual)?;
        println!(
            "rolling refit: {} steps, window = {window} pairs",
            steps.len()
        );
        println!("{}", ValidationReport::new(metrics));
    } else {
        let split = args.split.or(config.split).unwrap_or(DEFAULT_SPLIT);
        let metrics = forecast::validate_holdout(&series, split)
            .with_context(|| format!("validating {}", data.display()))?;
        println!("holdout split = {split}");
        println!("{}", ValidationReport::new(metrics));
    }
    Ok(())
}

fn run_windows(args: &WindowsArgs) -> Result<()> {
    let series = read_series(&args.data)?;
    let pairs = pipeline::build_windows(&series)
        .with_context(|| format!("windowing {}", args.data.display()))?;
    dataset::export_training_text(&args.out, &pairs)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {} training windows to {}",
        pairs.len(),
        args.out.display()
    );
    Ok(())
}

fn run_plot(args: &PlotArgs) -> Result<()> {
    let series = read_series(&args.data)?;
    let svg = plot::render(&series).with_context(|| format!("plotting {}", args.data.display()))?;
    dataset::write_atomic(&args.out, svg.as_bytes())
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote plot to {}", args.out.display());
    Ok(())
}
