//! Short-term electrical load forecasting over lagged weather and load
//! features.
//!
//! The model is an ordinary-least-squares multiple regression of next-hour
//! load on twelve regressors: load, temperature, wind speed, and cloud cover,
//! each at the current hour and the two preceding hours. Fits go through a
//! Householder QR factorization and refuse rank-deficient systems rather than
//! picking one of many solutions.
//!
//! Modules:
//! - [`matrix`] / [`regression`]: design matrices, QR fitting, prediction,
//!   and fit metrics (max absolute deviation, MAPE, R²);
//! - [`pipeline`]: hourly records and the sliding 3-hour feature windows;
//! - [`dataset`]: CSV ingestion, model-file persistence, text export;
//! - [`fixtures`]: embedded reference datasets;
//! - [`forecast`]: fit/validate/forecast orchestration and rolling refits.

pub mod dataset;
pub mod fixtures;
pub mod forecast;
pub mod matrix;
pub mod pipeline;
mod qr;
pub mod regression;

pub use dataset::{DatasetError, MetricsSummary, ModelFile, MODEL_FORMAT_VERSION};
pub use forecast::{
    FitReport, Forecast, ForecastError, RollingStep, ValidationReport, DEFAULT_ROLLING_WINDOW,
    MAPE_REFERENCE_PERCENT, MIN_TRAINING_PAIRS,
};
pub use matrix::{build_design_matrix, DesignMatrix};
pub use pipeline::{
    FeatureSchema, FeatureVector, HourlyRecord, PipelineError, RecordError, TrainingPair,
    FEATURE_COUNT, FEATURE_NAMES,
};
pub use regression::{CoefficientVector, FitMetrics, RegressionError};
