//! Design matrices for least-squares fitting.

use crate::regression::RegressionError;

/// Row-major observation matrix whose leading column is all ones, so the
/// first fitted coefficient is the intercept.
///
/// Instances are only produced by [`build_design_matrix`], which guarantees a
/// rectangular shape and finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DesignMatrix {
    /// Number of observations `m`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns `p + 1`, intercept column included.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of feature columns `p` (intercept excluded).
    pub fn feature_count(&self) -> usize {
        self.cols - 1
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    /// One observation row, intercept entry first.
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Builds the `m x (p+1)` design matrix: an all-ones intercept column followed
/// by the feature columns in input order.
pub fn build_design_matrix<S: AsRef<[f64]>>(
    feature_rows: &[S],
) -> Result<DesignMatrix, RegressionError> {
    let first = feature_rows
        .first()
        .ok_or(RegressionError::EmptyInput)?
        .as_ref();
    let width = first.len();
    if width == 0 {
        return Err(RegressionError::EmptyInput);
    }

    let cols = width + 1;
    let mut data = Vec::with_capacity(feature_rows.len() * cols);
    for (index, row) in feature_rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != width {
            return Err(RegressionError::RaggedRows {
                row: index,
                expected: width,
                found: row.len(),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(RegressionError::NonFiniteValue { row: index });
        }
        data.push(1.0);
        data.extend_from_slice(row);
    }

    Ok(DesignMatrix {
        rows: feature_rows.len(),
        cols,
        data,
    })
}
