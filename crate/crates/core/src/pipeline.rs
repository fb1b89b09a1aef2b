//! Hourly observations and the lagged feature windows built from them.
//!
//! Each training pair regresses the load at hour `t+1` on twelve values drawn
//! from hours `t`, `t-1`, and `t-2`: load, temperature, wind, and cloud cover,
//! each at the current and two lagged hours.

use chrono::{DateTime, Duration, Timelike, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Width of the regression feature vector: 4 parameters x 3 hours.
pub const FEATURE_COUNT: usize = 12;
/// Hours of history in each feature window (current hour plus two lags).
pub const WINDOW_HOURS: usize = 3;

/// Canonical feature order; `tm1`/`tm2` are the one- and two-hour lags.
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "load_t",
    "load_tm1",
    "load_tm2",
    "temp_t",
    "temp_tm1",
    "temp_tm2",
    "wind_t",
    "wind_tm1",
    "wind_tm2",
    "cloud_t",
    "cloud_tm1",
    "cloud_tm2",
];

#[derive(Debug, Error, PartialEq)]
pub enum RecordError {
    #[error("{field} is not finite")]
    NonFinite { field: &'static str },
    #[error("load must be positive, got {value} MW")]
    NonPositiveLoad { value: f64 },
    #[error("wind speed must be non-negative, got {value} km/h")]
    NegativeWind { value: f64 },
    #[error("cloud cover must lie in [0, 100], got {value} %")]
    CloudOutOfRange { value: f64 },
    #[error("timestamp {timestamp} is not aligned to a whole hour")]
    UnalignedTimestamp { timestamp: DateTime<Utc> },
}

#[derive(Debug, Error, PartialEq)]
pub enum PipelineError {
    #[error("series has {len} records, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },
    #[error("gap in series: expected {expected} after {prev}, found {found}")]
    NonConsecutiveTimestamps {
        prev: DateTime<Utc>,
        expected: DateTime<Utc>,
        found: DateTime<Utc>,
    },
    #[error("series is not sorted by time: {found} follows {prev}")]
    UnsortedSeries {
        prev: DateTime<Utc>,
        found: DateTime<Utc>,
    },
}

/// One observed hour. Constructed through [`HourlyRecord::new`], which
/// enforces the value ranges and whole-hour timestamp alignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HourlyRecord {
    timestamp: DateTime<Utc>,
    load_mw: f64,
    temp_c: f64,
    wind_kmh: f64,
    cloud_pct: f64,
}

impl HourlyRecord {
    pub fn new(
        timestamp: DateTime<Utc>,
        load_mw: f64,
        temp_c: f64,
        wind_kmh: f64,
        cloud_pct: f64,
    ) -> Result<Self, RecordError> {
        for (field, value) in [
            ("load_mw", load_mw),
            ("temp_c", temp_c),
            ("wind_kmh", wind_kmh),
            ("cloud_pct", cloud_pct),
        ] {
            if !value.is_finite() {
                return Err(RecordError::NonFinite { field });
            }
        }
        if load_mw <= 0.0 {
            return Err(RecordError::NonPositiveLoad { value: load_mw });
        }
        if wind_kmh < 0.0 {
            return Err(RecordError::NegativeWind { value: wind_kmh });
        }
        if !(0.0..=100.0).contains(&cloud_pct) {
            return Err(RecordError::CloudOutOfRange { value: cloud_pct });
        }
        if timestamp.minute() != 0 || timestamp.second() != 0 || timestamp.nanosecond() != 0 {
            return Err(RecordError::UnalignedTimestamp { timestamp });
        }
        Ok(Self {
            timestamp,
            load_mw,
            temp_c,
            wind_kmh,
            cloud_pct,
        })
    }

    pub fn timestamp(&self) -> DateTime<Utc> {
        self.timestamp
    }

    pub fn load_mw(&self) -> f64 {
        self.load_mw
    }

    pub fn temp_c(&self) -> f64 {
        self.temp_c
    }

    pub fn wind_kmh(&self) -> f64 {
        self.wind_kmh
    }

    pub fn cloud_pct(&self) -> f64 {
        self.cloud_pct
    }
}

/// One regression observation: twelve features anchored at hour `t` and the
/// load observed at `t+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingPair {
    /// Feature values in [`FEATURE_NAMES`] order.
    pub features: [f64; FEATURE_COUNT],
    /// Load in MW at `anchor + 1h`.
    pub target: f64,
    /// Hour `t` of the newest features.
    pub anchor: DateTime<Utc>,
}

/// Ordered feature names, binding persisted models to the feature layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureSchema(Vec<String>);

impl FeatureSchema {
    /// The canonical 12-name schema in [`FEATURE_NAMES`] order.
    pub fn standard() -> Self {
        Self(FEATURE_NAMES.iter().map(|s| s.to_string()).collect())
    }

    /// Wraps names as read from a model file; validated at the file boundary.
    pub fn from_names(names: Vec<String>) -> Self {
        Self(names)
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.0.len() == FEATURE_COUNT && self.0.iter().map(String::as_str).eq(FEATURE_NAMES)
    }
}

/// The newest feature window of a series, ready for a next-hour forecast.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    /// Feature values in [`FEATURE_NAMES`] order.
    pub values: [f64; FEATURE_COUNT],
    /// Hour `t` the window is anchored at.
    pub anchor: DateTime<Utc>,
}

impl FeatureVector {
    /// The hour this window forecasts: `anchor + 1h`.
    pub fn target_hour(&self) -> DateTime<Utc> {
        self.anchor + Duration::hours(1)
    }
}

fn check_consecutive(series: &[HourlyRecord]) -> Result<(), PipelineError> {
    for pair in series.windows(2) {
        let prev = pair[0].timestamp();
        let found = pair[1].timestamp();
        let expected = prev + Duration::hours(1);
        if found == expected {
            continue;
        }
        if found <= prev {
            return Err(PipelineError::UnsortedSeries { prev, found });
        }
        return Err(PipelineError::NonConsecutiveTimestamps {
            prev,
            expected,
            found,
        });
    }
    Ok(())
}

/// Features from three consecutive records ordered oldest to newest.
fn feature_window(window: &[HourlyRecord]) -> [f64; FEATURE_COUNT] {
    let (t2, t1, t0) = (&window[0], &window[1], &window[2]);
    [
        t0.load_mw(),
        t1.load_mw(),
        t2.load_mw(),
        t0.temp_c(),
        t1.temp_c(),
        t2.temp_c(),
        t0.wind_kmh(),
        t1.wind_kmh(),
        t2.wind_kmh(),
        t0.cloud_pct(),
        t1.cloud_pct(),
        t2.cloud_pct(),
    ]
}

/// Slides the 3-hour window over a consecutive hourly series, yielding exactly
/// `n - 3` training pairs.
pub fn build_windows(series: &[HourlyRecord]) -> Result<Vec<TrainingPair>, PipelineError> {
    let min = WINDOW_HOURS + 1;
    if series.len() < min {
        return Err(PipelineError::SeriesTooShort {
            len: series.len(),
            min,
        });
    }
    check_consecutive(series)?;

    let mut pairs = Vec::with_capacity(series.len() - WINDOW_HOURS);
    for anchor in (WINDOW_HOURS - 1)..(series.len() - 1) {
        pairs.push(TrainingPair {
            features: feature_window(&series[anchor + 1 - WINDOW_HOURS..=anchor]),
            target: series[anchor + 1].load_mw(),
            anchor: series[anchor].timestamp(),
        });
    }
    Ok(pairs)
}

/// The feature window over the last three records, for forecasting the hour
/// after the series ends.
pub fn latest_feature_vector(series: &[HourlyRecord]) -> Result<FeatureVector, PipelineError> {
    if series.len() < WINDOW_HOURS {
        return Err(PipelineError::SeriesTooShort {
            len: series.len(),
            min: WINDOW_HOURS,
        });
    }
    check_consecutive(series)?;
    let tail = &series[series.len() - WINDOW_HOURS..];
    Ok(FeatureVector {
        values: feature_window(tail),
        anchor: tail[WINDOW_HOURS - 1].timestamp(),
    })
}
