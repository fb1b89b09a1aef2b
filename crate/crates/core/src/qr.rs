//! Householder QR least-squares solver.
//!
//! Triangularizes the design matrix with Householder reflections and
//! back-substitutes, which stays stable where explicit normal equations
//! would square the condition number.

use crate::regression::RegressionError;

/// Solves `min ||X a - y||_2` for a row-major `m x n` matrix with `m >= n`.
///
/// The numerical rank is read off the triangular factor's diagonal: the fit is
/// refused as [`RegressionError::RankDeficient`] when any `|R_kk|` falls at or
/// below `eps * max(m, n) * max|R_kk|`.
pub(crate) fn solve_least_squares(
    data: &[f64],
    m: usize,
    n: usize,
    y: &[f64],
) -> Result<Vec<f64>, RegressionError> {
    debug_assert_eq!(data.len(), m * n);
    debug_assert_eq!(y.len(), m);

    if m < n {
        // Fewer observations than unknowns: column rank is at most m.
        return Err(RegressionError::RankDeficient {
            rank: m,
            threshold: 0.0,
        });
    }

    let mut r = data.to_vec();
    let mut rhs = y.to_vec();
    let mut v = vec![0.0; m];

    for k in 0..n {
        let mut norm_sq = 0.0;
        for i in k..m {
            let x = r[i * n + k];
            v[i] = x;
            norm_sq += x * x;
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            // Column already zero below (and at) the diagonal; R_kk = 0 and the
            // rank test below rejects the system.
            continue;
        }

        // Reflect onto -sign * norm * e_k; adding sign*norm to the pivot
        // component avoids cancellation.
        let sign = if v[k] >= 0.0 { 1.0 } else { -1.0 };
        v[k] += sign * norm;
        let vtv: f64 = v[k..m].iter().map(|x| x * x).sum();
        let beta = 2.0 / vtv;

        for j in (k + 1)..n {
            let mut proj = 0.0;
            for i in k..m {
                proj += v[i] * r[i * n + j];
            }
            proj *= beta;
            for i in k..m {
                r[i * n + j] -= proj * v[i];
            }
        }
        let mut proj = 0.0;
        for i in k..m {
            proj += v[i] * rhs[i];
        }
        proj *= beta;
        for i in k..m {
            rhs[i] -= proj * v[i];
        }

        // The pivot column's image is known exactly.
        r[k * n + k] = -sign * norm;
        for i in (k + 1)..m {
            r[i * n + k] = 0.0;
        }
    }

    let max_diag = (0..n).fold(0.0_f64, |acc, k| acc.max(r[k * n + k].abs()));
    let threshold = f64::EPSILON * m.max(n) as f64 * max_diag;
    let rank = (0..n).filter(|&k| r[k * n + k].abs() > threshold).count();
    if rank < n {
        return Err(RegressionError::RankDeficient { rank, threshold });
    }

    let mut solution = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for j in (k + 1)..n {
            s -= r[k * n + j] * solution[j];
        }
        solution[k] = s / r[k * n + k];
    }
    Ok(solution)
}
