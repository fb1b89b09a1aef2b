//! Shared integration-test helpers: an independent normal-equations oracle
//! and deterministic synthetic data generators.
#![allow(dead_code)]
// Indexed loops spell out the matrix algebra in the oracle.
#![allow(clippy::needless_range_loop)]

use chrono::{DateTime, Duration, TimeZone, Utc};
use loadcast::pipeline::HourlyRecord;
use rand::Rng;

/// Solves the least-squares problem through the normal equations
/// `X^T X a = X^T y` with Gaussian elimination and partial pivoting.
///
/// This is the reference oracle for the production QR path, so it shares no
/// code with it: the design matrix is implicit (intercept prepended here) and
/// the solve is a plain pivoted elimination.
pub fn normal_equations_fit(feature_rows: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let m = feature_rows.len();
    let n = feature_rows[0].len() + 1;
    let entry = |i: usize, j: usize| -> f64 {
        if j == 0 {
            1.0
        } else {
            feature_rows[i][j - 1]
        }
    };

    let mut gram = vec![vec![0.0; n]; n];
    let mut moment = vec![0.0; n];
    for i in 0..m {
        for a in 0..n {
            for b in 0..n {
                gram[a][b] += entry(i, a) * entry(i, b);
            }
            moment[a] += entry(i, a) * y[i];
        }
    }
    gaussian_solve(gram, moment)
}

/// Gaussian elimination with partial pivoting; panics on a singular system.
pub fn gaussian_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let mut pivot = col;
        for row in (col + 1)..n {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        assert!(a[col][col] != 0.0, "singular system in oracle");
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= factor * a[col][c];
            }
            b[row] -= factor * b[col];
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in (row + 1)..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    x
}

pub fn hour(offset: i64) -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2009, 6, 1, 0, 0, 0).unwrap() + Duration::hours(offset)
}

pub fn record(offset: i64, load: f64, temp: f64, wind: f64, cloud: f64) -> HourlyRecord {
    HourlyRecord::new(hour(offset), load, temp, wind, cloud).unwrap()
}

/// Coefficients of [`lawful_series`] in schema order, intercept excluded.
pub const LAW_INTERCEPT: f64 = 5.0;

pub fn law_coefficients() -> [f64; 12] {
    let mut v = [0.0; 12];
    v[0] = 0.6; // load_t
    v[3] = 0.1; // temp_t
    v[8] = 0.15; // wind_tm2
    v[10] = -0.02; // cloud_tm1
    v
}

/// Random exogenous weather with the load following a fixed linear law with
/// zero noise. The law touches a two-hour lag so that recursive generation
/// keeps the lagged design matrix full rank.
pub fn lawful_series(n: usize, seed: u64) -> Vec<HourlyRecord> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let temps: Vec<f64> = (0..n).map(|_| rng.random_range(24.0..44.0)).collect();
    let winds: Vec<f64> = (0..n).map(|_| rng.random_range(5.0..35.0)).collect();
    let clouds: Vec<f64> = (0..n).map(|_| rng.random_range(30.0..90.0)).collect();
    let law = law_coefficients();
    let mut series = Vec::with_capacity(n);
    let mut load = 25.0;
    for i in 0..n {
        series.push(record(i as i64, load, temps[i], winds[i], clouds[i]));
        load = LAW_INTERCEPT
            + law[0] * load
            + law[3] * temps[i]
            + law[8] * winds[i.saturating_sub(2)]
            + law[10] * clouds[i.saturating_sub(1)];
    }
    series
}

/// A structureless valid series: every field random within its legal range.
pub fn random_series<R: Rng>(rng: &mut R, n: usize) -> Vec<HourlyRecord> {
    let start = rng.random_range(-1000..1000);
    (0..n)
        .map(|i| {
            record(
                start + i as i64,
                rng.random_range(0.5..5000.0),
                rng.random_range(-40.0..55.0),
                rng.random_range(0.0..200.0),
                rng.random_range(0.0..=100.0),
            )
        })
        .collect()
}

use rand::SeedableRng as _;
