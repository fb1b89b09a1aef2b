//! Reference datasets embedded for tests, evaluation, and demos.
//!
//! These values are frozen; the test suite pins a checksum over them.

use crate::dataset::DatasetError;
use crate::pipeline::FEATURE_COUNT;

/// Six observations of a two-regressor example with a known fitted model.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionExample {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub y: Vec<f64>,
}

/// Columns of 12-parameter feature vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureColumns {
    pub columns: Vec<[f64; FEATURE_COUNT]>,
}

/// Observed next-hour loads alongside a reference model's predictions, in MW.
#[derive(Debug, Clone, PartialEq)]
pub struct ActualPredicted {
    pub pairs: Vec<(f64, f64)>,
}

/// A published next-hour input vector and the load forecast reported for it.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastInput {
    pub features: [f64; FEATURE_COUNT],
    pub forecasted_load_mw: f64,
}

/// Any embedded fixture, as returned by [`load_fixture`].
#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Section2(RegressionExample),
    Table1(FeatureColumns),
    Table2(ActualPredicted),
    Table3(ForecastInput),
}

/// Names accepted by [`load_fixture`].
pub const FIXTURE_NAMES: [&str; 4] = [
    "section2_example",
    "table1_inputs",
    "table2_actual_predicted",
    "table3_forecast_input",
];

const SECTION2_X1: [f64; 6] = [0.2, 0.5, 0.6, 0.8, 1.0, 1.1];
const SECTION2_X2: [f64; 6] = [0.1, 0.3, 0.4, 0.9, 1.1, 1.4];
const SECTION2_Y: [f64; 6] = [0.17, 0.26, 0.28, 0.23, 0.27, 0.24];

/// 12 parameter rows by 10 observation columns, as printed.
const TABLE1_ROWS: [[f64; 10]; FEATURE_COUNT] = [
    [26.0, 26.0, 26.0, 30.0, 25.0, 25.0, 27.0, 27.0, 30.0, 27.0],
    [30.0, 28.0, 25.0, 26.0, 29.0, 25.0, 28.0, 29.0, 25.0, 30.0],
    [25.0, 26.0, 27.0, 26.0, 25.0, 30.0, 25.0, 25.0, 26.0, 27.0],
    [45.0, 40.0, 45.0, 43.0, 42.0, 43.0, 44.0, 42.0, 43.0, 44.0],
    [40.0, 40.0, 41.0, 44.0, 43.0, 42.0, 45.0, 44.0, 44.0, 44.0],
    [42.0, 41.0, 41.0, 40.0, 44.0, 41.0, 42.0, 43.0, 44.0, 45.0],
    [30.0, 26.0, 27.0, 27.0, 30.0, 30.0, 27.0, 30.0, 27.0, 28.0],
    [28.0, 29.0, 29.0, 28.0, 27.0, 29.0, 26.0, 29.0, 25.0, 28.0],
    [29.0, 28.0, 26.0, 26.0, 25.0, 28.0, 26.0, 28.0, 27.0, 28.0],
    [72.0, 74.0, 73.0, 73.0, 71.0, 74.0, 71.0, 72.0, 74.0, 74.0],
    [75.0, 72.0, 75.0, 70.0, 72.0, 74.0, 71.0, 72.0, 71.0, 73.0],
    [70.0, 72.0, 72.0, 73.0, 70.0, 74.0, 73.0, 73.0, 75.0, 73.0],
];

const TABLE2_PAIRS: [(f64, f64); 10] = [
    (26.00, 27.41),
    (25.00, 26.54),
    (30.00, 27.81),
    (27.00, 27.46),
    (25.00, 27.81),
    (30.00, 26.99),
    (29.00, 27.86),
    (30.00, 27.59),
    (26.00, 28.03),
    (26.00, 27.53),
];

const TABLE3_FEATURES: [f64; FEATURE_COUNT] = [
    29.0, 25.0, 28.0, 43.0, 41.0, 42.0, 30.0, 27.0, 28.0, 71.0, 71.0, 75.0,
];
const TABLE3_FORECAST_MW: f64 = 26.8942;

/// The worked two-regressor example.
pub fn section2_example() -> RegressionExample {
    RegressionExample {
        x1: SECTION2_X1.to_vec(),
        x2: SECTION2_X2.to_vec(),
        y: SECTION2_Y.to_vec(),
    }
}

/// The 10 published 12-parameter input columns.
pub fn table1_inputs() -> FeatureColumns {
    let columns = (0..10)
        .map(|col| {
            let mut column = [0.0; FEATURE_COUNT];
            for (row, values) in TABLE1_ROWS.iter().enumerate() {
                column[row] = values[col];
            }
            column
        })
        .collect();
    FeatureColumns { columns }
}

/// The 10 published (actual, predicted) next-hour load pairs.
pub fn table2_actual_predicted() -> ActualPredicted {
    ActualPredicted {
        pairs: TABLE2_PAIRS.to_vec(),
    }
}

/// The published forecast-input column and its reported forecast. The model
/// behind the forecast was fit on an unpublished training set, so the value
/// is reference data, not something this crate can reproduce.
pub fn table3_forecast_input() -> ForecastInput {
    ForecastInput {
        features: TABLE3_FEATURES,
        forecasted_load_mw: TABLE3_FORECAST_MW,
    }
}

/// Looks a fixture up by name; see [`FIXTURE_NAMES`].
pub fn load_fixture(name: &str) -> Result<Fixture, DatasetError> {
    match name {
        "section2_example" => Ok(Fixture::Section2(section2_example())),
        "table1_inputs" => Ok(Fixture::Table1(table1_inputs())),
        "table2_actual_predicted" => Ok(Fixture::Table2(table2_actual_predicted())),
        "table3_forecast_input" => Ok(Fixture::Table3(table3_forecast_input())),
        other => Err(DatasetError::UnknownFixture {
            name: other.to_string(),
        }),
    }
}
