//! Ordinary-least-squares fitting, prediction, and fit-quality metrics.

use thiserror::Error;

use crate::matrix::{build_design_matrix, DesignMatrix};
use crate::qr;

#[derive(Debug, Error)]
pub enum RegressionError {
    #[error("no observations supplied")]
    EmptyInput,
    #[error("row {row} has {found} values, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value in row {row}")]
    NonFiniteValue { row: usize },
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(
        "design matrix is rank deficient (estimated rank {rank}, pivot threshold {threshold:e})"
    )]
    RankDeficient { rank: usize, threshold: f64 },
    #[error("regressor has zero variance")]
    DegenerateX,
}

/// Fitted model: intercept plus one coefficient per feature column.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(intercept: f64, coefficients: Vec<f64>) -> Self {
        Self {
            intercept,
            coefficients,
        }
    }

    pub fn feature_count(&self) -> usize {
        self.coefficients.len()
    }
}

/// Fit-quality summary over one evaluation set.
///
/// Residuals follow the `predicted - observed` convention throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct FitMetrics {
    /// Largest absolute residual.
    pub max_abs_deviation: f64,
    /// Mean absolute percentage error; `None` when any observed value is zero.
    pub mape_percent: Option<f64>,
    /// Coefficient of determination; `None` when the observed values have zero
    /// variance (the ratio SS_res/SS_tot is undefined there).
    pub r_squared: Option<f64>,
    /// `predicted[i] - observed[i]`, one entry per observation.
    pub residuals: Vec<f64>,
}

/// Solves `min ||X a - y||_2` by Householder QR.
pub fn fit_ols(x: &DesignMatrix, y: &[f64]) -> Result<CoefficientVector, RegressionError> {
    if y.len() != x.rows() {
        return Err(RegressionError::DimensionMismatch {
            expected: x.rows(),
            found: y.len(),
        });
    }
    if let Some(row) = y.iter().position(|v| !v.is_finite()) {
        return Err(RegressionError::NonFiniteValue { row });
    }
    let solution = qr::solve_least_squares(x.data(), x.rows(), x.cols(), y)?;
    let (intercept, coefficients) = solution
        .split_first()
        .expect("design matrix has at least the intercept column");
    Ok(CoefficientVector::new(*intercept, coefficients.to_vec()))
}

/// Evaluates `intercept + sum_j coefficients[j] * features[j]`.
pub fn predict(model: &CoefficientVector, features: &[f64]) -> Result<f64, RegressionError> {
    if features.len() != model.coefficients.len() {
        return Err(RegressionError::DimensionMismatch {
            expected: model.coefficients.len(),
            found: features.len(),
        });
    }
    let mut value = model.intercept;
    for (coefficient, feature) in model.coefficients.iter().zip(features) {
        value += coefficient * feature;
    }
    Ok(value)
}

/// Metrics for a prediction series against the observed values.
pub fn metrics_from_predictions(
    predicted: &[f64],
    observed: &[f64],
) -> Result<FitMetrics, RegressionError> {
    if observed.is_empty() {
        return Err(RegressionError::EmptyInput);
    }
    if predicted.len() != observed.len() {
        return Err(RegressionError::DimensionMismatch {
            expected: observed.len(),
            found: predicted.len(),
        });
    }

    let residuals: Vec<f64> = predicted.iter().zip(observed).map(|(p, o)| p - o).collect();
    let max_abs_deviation = residuals.iter().fold(0.0_f64, |acc, r| acc.max(r.abs()));

    let m = observed.len() as f64;
    let mape_percent = if observed.iter().all(|&v| v != 0.0) {
        let sum: f64 = residuals
            .iter()
            .zip(observed)
            .map(|(r, o)| (r / o).abs())
            .sum();
        Some(100.0 * sum / m)
    } else {
        None
    };

    let mean = observed.iter().sum::<f64>() / m;
    let ss_tot: f64 = observed.iter().map(|o| (o - mean) * (o - mean)).sum();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let r_squared = if ss_tot == 0.0 {
        None
    } else {
        Some(1.0 - ss_res / ss_tot)
    };

    Ok(FitMetrics {
        max_abs_deviation,
        mape_percent,
        r_squared,
        residuals,
    })
}

/// Predicts every feature row with `model` and summarizes against `y`.
pub fn compute_metrics<S: AsRef<[f64]>>(
    model: &CoefficientVector,
    feature_rows: &[S],
    y: &[f64],
) -> Result<FitMetrics, RegressionError> {
    if feature_rows.len() != y.len() {
        return Err(RegressionError::DimensionMismatch {
            expected: feature_rows.len(),
            found: y.len(),
        });
    }
    let predicted = feature_rows
        .iter()
        .map(|row| predict(model, row.as_ref()))
        .collect::<Result<Vec<f64>, _>>()?;
    metrics_from_predictions(&predicted, y)
}

/// Single-regressor fit `y = b1 + b2 x`, equal to [`fit_ols`] on the
/// one-feature design matrix.
pub fn fit_simple(x: &[f64], y: &[f64]) -> Result<CoefficientVector, RegressionError> {
    if x.len() != y.len() {
        return Err(RegressionError::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x.is_empty() {
        return Err(RegressionError::EmptyInput);
    }
    if x.iter().all(|&v| v == x[0]) {
        return Err(RegressionError::DegenerateX);
    }
    let rows: Vec<[f64; 1]> = x.iter().map(|&v| [v]).collect();
    let design = build_design_matrix(&rows)?;
    fit_ols(&design, y)
}
