//! Shared helpers for CLI integration tests.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use chrono::{DateTime, Duration, TimeZone, Utc};
use loadcast::dataset::write_series_csv;
use loadcast::pipeline::HourlyRecord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn loadcast_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loadcast"))
}

pub fn run(args: &[&str]) -> Output {
    loadcast_bin()
        .args(args)
        .output()
        .expect("spawn loadcast binary")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

pub fn hour(offset: i64) -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2009, 6, 1, 0, 0, 0).unwrap() + Duration::hours(offset)
}

pub fn record(offset: i64, load: f64, temp: f64, wind: f64, cloud: f64) -> HourlyRecord {
    HourlyRecord::new(hour(offset), load, temp, wind, cloud).unwrap()
}

/// Deterministic synthetic series: random exogenous weather, load following a
/// fixed linear law with a two-hour-lagged term (keeps the design full rank).
pub fn lawful_series(n: usize, seed: u64) -> Vec<HourlyRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let temps: Vec<f64> = (0..n).map(|_| rng.random_range(24.0..44.0)).collect();
    let winds: Vec<f64> = (0..n).map(|_| rng.random_range(5.0..35.0)).collect();
    let clouds: Vec<f64> = (0..n).map(|_| rng.random_range(30.0..90.0)).collect();
    let mut series = Vec::with_capacity(n);
    let mut load = 25.0;
    for i in 0..n {
        series.push(record(i as i64, load, temps[i], winds[i], clouds[i]));
        load = 5.0 + 0.6 * load + 0.1 * temps[i] + 0.15 * winds[i.saturating_sub(2)]
            - 0.02 * clouds[i.saturating_sub(1)];
    }
    series
}

pub fn write_series(path: &Path, series: &[HourlyRecord]) {
    write_series_csv(path, series).expect("write series CSV");
}
