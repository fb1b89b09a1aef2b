//! CSV ingestion, model persistence, and training-text export.
//!
//! File formats:
//! - series CSV: header `timestamp,load_mw,temp_c,wind_kmh,cloud_pct`, UTF-8,
//!   LF line endings, RFC 3339 timestamps on whole hours;
//! - model file: a JSON document with explicit feature-name schema so a model
//!   can never be applied to reordered features silently;
//! - training text: 13 space-separated fixed-point fields per line (twelve
//!   features, then the target), 4 decimal places.
//!
//! All writers go through a temp-file rename, so a failed write never leaves
//! a partial output behind.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, Write as _};
use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pipeline::{FeatureSchema, HourlyRecord, RecordError, TrainingPair, FEATURE_COUNT};
use crate::regression::{CoefficientVector, FitMetrics};

/// Exact header required on series CSV files.
pub const SERIES_CSV_HEADER: &str = "timestamp,load_mw,temp_c,wind_kmh,cloud_pct";
/// Model file format revision this build reads and writes.
pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("bad header: expected `{SERIES_CSV_HEADER}`, found `{found}`")]
    BadHeader { found: String },
    #[error("line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: &'static str,
        message: String,
    },
    #[error("line {line}: {source}")]
    RangeViolation { line: usize, source: RecordError },
    #[error("line {line}: gap in series: {found} follows {prev}, expected one hour later")]
    GapInSeries {
        line: usize,
        prev: DateTime<Utc>,
        found: DateTime<Utc>,
    },
    #[error(
        "unsupported model format version {found}, this build reads version {MODEL_FORMAT_VERSION}"
    )]
    VersionMismatch { found: i64 },
    #[error("schema mismatch: {reason}")]
    SchemaMismatch { reason: String },
    #[error("malformed model file: {reason}")]
    MalformedFile { reason: String },
    #[error("no training pairs to export")]
    EmptyInput,
    #[error("unknown fixture `{name}`")]
    UnknownFixture { name: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Timestamps in files are written as `2009-06-01T14:00:00Z`.
pub fn format_timestamp(ts: DateTime<Utc>) -> String {
    ts.to_rfc3339_opts(SecondsFormat::Secs, true)
}

mod timestamp_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(ts: &DateTime<Utc>, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_timestamp(*ts))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<DateTime<Utc>, D::Error> {
        let text = String::deserialize(deserializer)?;
        DateTime::parse_from_rfc3339(&text)
            .map(|dt| dt.with_timezone(&Utc))
            .map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Series CSV
// ---------------------------------------------------------------------------

/// Reads and validates a series CSV file.
pub fn read_series_csv(path: &Path) -> Result<Vec<HourlyRecord>, DatasetError> {
    let file = fs::File::open(path)?;
    parse_series_csv(BufReader::new(file))
}

/// Reads a series from any buffered reader; see the module docs for the format.
///
/// Rows are validated against the record invariants and hourly continuity, and
/// returned in file order.
pub fn parse_series_csv<R: BufRead>(reader: R) -> Result<Vec<HourlyRecord>, DatasetError> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(DatasetError::BadHeader {
                found: String::new(),
            })
        }
    };
    if header != SERIES_CSV_HEADER {
        return Err(DatasetError::BadHeader { found: header });
    }

    let mut records: Vec<HourlyRecord> = Vec::new();
    for (index, line) in lines.enumerate() {
        let line = line?;
        let lineno = index + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(DatasetError::ParseError {
                line: lineno,
                column: "row",
                message: format!("expected 5 comma-separated fields, found {}", fields.len()),
            });
        }

        let timestamp = DateTime::parse_from_rfc3339(fields[0])
            .map(|dt| dt.with_timezone(&Utc))
            .map_err(|e| DatasetError::ParseError {
                line: lineno,
                column: "timestamp",
                message: e.to_string(),
            })?;
        let load_mw = parse_field(fields[1], lineno, "load_mw")?;
        let temp_c = parse_field(fields[2], lineno, "temp_c")?;
        let wind_kmh = parse_field(fields[3], lineno, "wind_kmh")?;
        let cloud_pct = parse_field(fields[4], lineno, "cloud_pct")?;

        let record = HourlyRecord::new(timestamp, load_mw, temp_c, wind_kmh, cloud_pct).map_err(
            |source| DatasetError::RangeViolation {
                line: lineno,
                source,
            },
        )?;

        if let Some(prev) = records.last() {
            if record.timestamp() != prev.timestamp() + chrono::Duration::hours(1) {
                return Err(DatasetError::GapInSeries {
                    line: lineno,
                    prev: prev.timestamp(),
                    found: record.timestamp(),
                });
            }
        }
        records.push(record);
    }
    Ok(records)
}

fn parse_field(text: &str, line: usize, column: &'static str) -> Result<f64, DatasetError> {
    text.parse::<f64>().map_err(|e| DatasetError::ParseError {
        line,
        column,
        message: format!("{e}: `{text}`"),
    })
}

/// Renders a series in the CSV format accepted by [`parse_series_csv`].
/// Values round-trip exactly (shortest lossless decimal form).
pub fn render_series_csv(series: &[HourlyRecord]) -> String {
    let mut out = String::with_capacity(32 * (series.len() + 1));
    out.push_str(SERIES_CSV_HEADER);
    out.push('\n');
    for record in series {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_timestamp(record.timestamp()),
            record.load_mw(),
            record.temp_c(),
            record.wind_kmh(),
            record.cloud_pct(),
        );
    }
    out
}

/// Writes a series CSV atomically.
pub fn write_series_csv(path: &Path, series: &[HourlyRecord]) -> Result<(), DatasetError> {
    write_atomic(path, render_series_csv(series).as_bytes())?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

/// Metric summary embedded in a model file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsSummary {
    pub max_abs_deviation: f64,
    pub mape_percent: Option<f64>,
    pub r_squared: Option<f64>,
}

impl MetricsSummary {
    pub fn from_metrics(metrics: &FitMetrics) -> Self {
        Self {
            max_abs_deviation: metrics.max_abs_deviation,
            mape_percent: metrics.mape_percent,
            r_squared: metrics.r_squared,
        }
    }
}

/// Persisted regression model: coefficients plus the feature schema they were
/// fit against and summary training metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format_version: u32,
    pub schema: FeatureSchema,
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    /// End of the training series (models are data-derived, never wall-clock
    /// stamped, so refitting identical data reproduces the file byte for byte).
    #[serde(with = "timestamp_serde")]
    pub trained_at: DateTime<Utc>,
    /// Training pairs the fit used.
    pub training_rows: usize,
    pub metrics: MetricsSummary,
}

impl ModelFile {
    pub fn coefficient_vector(&self) -> CoefficientVector {
        CoefficientVector::new(self.intercept, self.coefficients.clone())
    }
}

fn validate_model(model: &ModelFile) -> Result<(), DatasetError> {
    if model.format_version != MODEL_FORMAT_VERSION {
        return Err(DatasetError::VersionMismatch {
            found: i64::from(model.format_version),
        });
    }
    if model.coefficients.len() != model.schema.len() {
        return Err(DatasetError::SchemaMismatch {
            reason: format!(
                "{} coefficients for {} feature names",
                model.coefficients.len(),
                model.schema.len()
            ),
        });
    }
    if model.schema.len() != FEATURE_COUNT {
        return Err(DatasetError::SchemaMismatch {
            reason: format!(
                "expected {FEATURE_COUNT} features, found {}",
                model.schema.len()
            ),
        });
    }
    for (i, name) in model.schema.names().iter().enumerate() {
        if model.schema.names()[..i].contains(name) {
            return Err(DatasetError::SchemaMismatch {
                reason: format!("duplicate feature name `{name}`"),
            });
        }
    }
    if !model.intercept.is_finite() || model.coefficients.iter().any(|c| !c.is_finite()) {
        return Err(DatasetError::MalformedFile {
            reason: "non-finite coefficient".to_string(),
        });
    }
    Ok(())
}

/// Parses and validates a model document.
pub fn parse_model_json(text: &str) -> Result<ModelFile, DatasetError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DatasetError::MalformedFile {
            reason: e.to_string(),
        })?;
    // Version gates the rest of the schema, so inspect it before the typed
    // deserialization can trip over fields from another revision.
    let version = value
        .get("format_version")
        .and_then(serde_json::Value::as_i64)
        .ok_or_else(|| DatasetError::MalformedFile {
            reason: "missing integer field `format_version`".to_string(),
        })?;
    if version != i64::from(MODEL_FORMAT_VERSION) {
        return Err(DatasetError::VersionMismatch { found: version });
    }
    let model: ModelFile =
        serde_json::from_value(value).map_err(|e| DatasetError::MalformedFile {
            reason: e.to_string(),
        })?;
    validate_model(&model)?;
    Ok(model)
}

pub fn read_model(path: &Path) -> Result<ModelFile, DatasetError> {
    parse_model_json(&fs::read_to_string(path)?)
}

/// Renders the model document. Coefficients are written in their shortest
/// lossless decimal form, so reading the output reproduces them bit-exactly.
pub fn render_model_json(model: &ModelFile) -> Result<String, DatasetError> {
    validate_model(model)?;
    let mut text =
        serde_json::to_string_pretty(model).map_err(|e| DatasetError::MalformedFile {
            reason: e.to_string(),
        })?;
    text.push('\n');
    Ok(text)
}

/// Writes a model file atomically.
pub fn write_model(path: &Path, model: &ModelFile) -> Result<(), DatasetError> {
    write_atomic(path, render_model_json(model)?.as_bytes())?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Training text export
// ---------------------------------------------------------------------------

/// Renders training pairs as text: per line, twelve feature values then the
/// target, space-separated with 4 decimal places.
pub fn render_training_text(pairs: &[TrainingPair]) -> Result<String, DatasetError> {
    if pairs.is_empty() {
        return Err(DatasetError::EmptyInput);
    }
    let mut out = String::with_capacity(pairs.len() * (FEATURE_COUNT + 1) * 8);
    for pair in pairs {
        for value in &pair.features {
            let _ = write!(out, "{value:.4} ");
        }
        let _ = writeln!(out, "{:.4}", pair.target);
    }
    Ok(out)
}

/// Writes the training-text export atomically.
pub fn export_training_text(path: &Path, pairs: &[TrainingPair]) -> Result<(), DatasetError> {
    write_atomic(path, render_training_text(pairs)?.as_bytes())?;
    Ok(())
}

/// Writes through a temp file in the destination directory and renames it in,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
