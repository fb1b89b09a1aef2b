//! Fit, validate, and forecast over hourly series, including rolling refits.

use std::fmt;

use chrono::{DateTime, Duration, Utc};
use thiserror::Error;

use crate::dataset::{format_timestamp, MetricsSummary, ModelFile, MODEL_FORMAT_VERSION};
use crate::matrix::build_design_matrix;
use crate::pipeline::{self, FeatureSchema, HourlyRecord, PipelineError, TrainingPair};
use crate::regression::{self, CoefficientVector, FitMetrics, RegressionError};

/// Fewest training pairs accepted for the 12-feature fit (m >= p + 1).
pub const MIN_TRAINING_PAIRS: usize = 13;
/// Default rolling-refit window, in training pairs.
pub const DEFAULT_ROLLING_WINDOW: usize = 99;
/// Reference error level, in percent, that validation reports compare
/// MAPE against.
pub const MAPE_REFERENCE_PERCENT: f64 = 5.0;

#[derive(Debug, Error)]
pub enum ForecastError {
    #[error("insufficient data: have {have} {what}, need at least {need}")]
    InsufficientData {
        have: usize,
        need: usize,
        what: &'static str,
    },
    #[error("model schema does not match the pipeline feature schema")]
    SchemaMismatch,
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Regression(#[from] RegressionError),
}

/// Result of fitting a series: the persistable model plus in-sample metrics.
#[derive(Debug, Clone)]
pub struct FitReport {
    pub model: ModelFile,
    pub metrics: FitMetrics,
    pub n_pairs: usize,
}

/// A single next-hour prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct Forecast {
    pub target_hour: DateTime<Utc>,
    pub predicted_load: f64,
    /// Identifies the model that produced the value.
    pub model_id: String,
}

/// One rolling-refit step: the window's model, its forecast, and the outcome.
#[derive(Debug, Clone)]
pub struct RollingStep {
    pub forecast: Forecast,
    pub actual: f64,
    /// `forecast - actual`.
    pub error: f64,
    /// Coefficients fitted on this step's window.
    pub model: CoefficientVector,
}

fn fit_coefficients(pairs: &[TrainingPair]) -> Result<CoefficientVector, ForecastError> {
    let rows: Vec<&[f64]> = pairs.iter().map(|p| p.features.as_slice()).collect();
    let targets: Vec<f64> = pairs.iter().map(|p| p.target).collect();
    let design = build_design_matrix(&rows)?;
    Ok(regression::fit_ols(&design, &targets)?)
}

fn metrics_over_pairs(
    model: &CoefficientVector,
    pairs: &[TrainingPair],
) -> Result<FitMetrics, ForecastError> {
    let rows: Vec<&[f64]> = pairs.iter().map(|p| p.features.as_slice()).collect();
    let targets: Vec<f64> = pairs.iter().map(|p| p.target).collect();
    Ok(regression::compute_metrics(model, &rows, &targets)?)
}

fn model_id(model: &ModelFile) -> String {
    format!(
        "ols{}@{}",
        model.coefficients.len(),
        format_timestamp(model.trained_at)
    )
}

/// Builds the lag windows of `series` and fits the 12-parameter model over
/// all of them, with in-sample metrics.
pub fn fit_series(series: &[HourlyRecord]) -> Result<FitReport, ForecastError> {
    let pairs = pipeline::build_windows(series)?;
    if pairs.len() < MIN_TRAINING_PAIRS {
        return Err(ForecastError::InsufficientData {
            have: pairs.len(),
            need: MIN_TRAINING_PAIRS,
            what: "training pairs",
        });
    }
    let coefficients = fit_coefficients(&pairs)?;
    let metrics = metrics_over_pairs(&coefficients, &pairs)?;
    let trained_at = series
        .last()
        .expect("series is nonempty after windowing")
        .timestamp();
    let model = ModelFile {
        format_version: MODEL_FORMAT_VERSION,
        schema: FeatureSchema::standard(),
        intercept: coefficients.intercept,
        coefficients: coefficients.coefficients,
        trained_at,
        training_rows: pairs.len(),
        metrics: MetricsSummary::from_metrics(&metrics),
    };
    Ok(FitReport {
        model,
        metrics,
        n_pairs: pairs.len(),
    })
}

/// Predicts the load for the hour after the series ends.
pub fn forecast_next(
    model: &ModelFile,
    series: &[HourlyRecord],
) -> Result<Forecast, ForecastError> {
    if !model.schema.is_standard() || model.coefficients.len() != model.schema.len() {
        return Err(ForecastError::SchemaMismatch);
    }
    let latest = pipeline::latest_feature_vector(series)?;
    let predicted = regression::predict(&model.coefficient_vector(), &latest.values)?;
    Ok(Forecast {
        target_hour: latest.target_hour(),
        predicted_load: predicted,
        model_id: model_id(model),
    })
}

/// Fits on the earliest `floor(fraction * pairs)` windows and reports metrics
/// over the remaining, later windows.
///
/// The split is by window position in time, so every held-out target lies
/// strictly after every training target.
pub fn validate_holdout(
    series: &[HourlyRecord],
    split_fraction: f64,
) -> Result<FitMetrics, ForecastError> {
    let pairs = pipeline::build_windows(series)?;
    let split = if split_fraction.is_finite() && split_fraction > 0.0 {
        ((split_fraction * pairs.len() as f64).floor() as usize).min(pairs.len())
    } else {
        0
    };
    let (train, test) = pairs.split_at(split);
    if train.len() < MIN_TRAINING_PAIRS {
        return Err(ForecastError::InsufficientData {
            have: train.len(),
            need: MIN_TRAINING_PAIRS,
            what: "training pairs",
        });
    }
    if test.is_empty() {
        return Err(ForecastError::InsufficientData {
            have: 0,
            need: 1,
            what: "held-out pairs",
        });
    }
    let coefficients = fit_coefficients(train)?;
    metrics_over_pairs(&coefficients, test)
}

/// Walks the series refitting on the most recent `window` pairs at each hour
/// and forecasting the next one, recording forecast, actual, and error.
///
/// Each window is refit from scratch; at this problem size a full QR per step
/// costs microseconds.
pub fn rolling_refit(
    series: &[HourlyRecord],
    window: usize,
) -> Result<Vec<RollingStep>, ForecastError> {
    if window < MIN_TRAINING_PAIRS {
        return Err(ForecastError::InsufficientData {
            have: window,
            need: MIN_TRAINING_PAIRS,
            what: "window pairs",
        });
    }
    let pairs = pipeline::build_windows(series)?;
    if pairs.len() < window + 1 {
        return Err(ForecastError::InsufficientData {
            have: pairs.len(),
            need: window + 1,
            what: "training pairs",
        });
    }

    let mut steps = Vec::with_capacity(pairs.len() - window);
    for i in window..pairs.len() {
        let coefficients = fit_coefficients(&pairs[i - window..i])?;
        let next = &pairs[i];
        let predicted = regression::predict(&coefficients, &next.features)?;
        let target_hour = next.anchor + Duration::hours(1);
        steps.push(RollingStep {
            forecast: Forecast {
                target_hour,
                predicted_load: predicted,
                model_id: format!("rolling-w{window}@{}", format_timestamp(next.anchor)),
            },
            actual: next.target,
            error: predicted - next.target,
            model: coefficients,
        });
    }
    Ok(steps)
}

/// Printable evaluation summary; compares MAPE against
/// [`MAPE_REFERENCE_PERCENT`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub metrics: FitMetrics,
    pub n_observations: usize,
}

impl ValidationReport {
    pub fn new(metrics: FitMetrics) -> Self {
        let n_observations = metrics.residuals.len();
        Self {
            metrics,
            n_observations,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "observations = {}", self.n_observations)?;
        writeln!(f, "MaxErr = {:.4}", self.metrics.max_abs_deviation)?;
        match self.metrics.mape_percent {
            Some(mape) => writeln!(f, "MAPE (%) = {mape:.4}")?,
            None => writeln!(f, "MAPE (%) = undefined (an observed value is zero)")?,
        }
        match self.metrics.r_squared {
            Some(r2) => writeln!(f, "R^2 = {r2:.4}")?,
            None => writeln!(f, "R^2 = undefined (observed values are constant)")?,
        }
        match self.metrics.mape_percent {
            Some(mape) if mape > MAPE_REFERENCE_PERCENT => write!(
                f,
                "MAPE reference threshold (%) = {MAPE_REFERENCE_PERCENT:.4} -> EXCEEDED"
            ),
            Some(_) => write!(
                f,
                "MAPE reference threshold (%) = {MAPE_REFERENCE_PERCENT:.4} -> within"
            ),
            None => write!(
                f,
                "MAPE reference threshold (%) = {MAPE_REFERENCE_PERCENT:.4} -> not comparable"
            ),
        }
    }
}
