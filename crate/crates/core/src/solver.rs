//! Tikhonov-regularized least squares via the singular value decomposition.
//!
//! Both the plain operator fit and the staged block fits reduce to
//!
//! ```text
//! min_K  ||F - K P||_F^2 + lambda ||K||_F^2
//! ```
//!
//! solved from the thin SVD `P = U S V^T` with filter factors
//! `s_i / (s_i^2 + lambda)` applied to the singular values. At `lambda = 0`
//! singular values below `RANK_TOL * s_max` are treated as zero, which yields
//! the minimum-norm least-squares solution for rank-deficient `P`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative cutoff under which singular values are treated as zero when
/// `lambda == 0`.
pub const RANK_TOL: f64 = 1e-12;

/// Diagnostics recorded alongside a ridge solve.
#[derive(Debug, Clone, Copy)]
pub struct SolveInfo {
    /// Largest singular value of the past matrix.
    pub sigma_max: f64,
    /// Number of singular values above `RANK_TOL * sigma_max`.
    pub rank: usize,
    /// True when `rank` is below the row count of the past matrix, i.e. the
    /// normal equations do not determine the operator uniquely.
    pub rank_deficient: bool,
}

/// Scale-aware default regularization: `1e-6 * sigma_max(P)^2`.
pub fn default_lambda(past: &DMatrix<f64>) -> f64 {
    if past.is_empty() {
        return 0.0;
    }
    let svd = past.clone().svd(false, false);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    1e-6 * sigma_max * sigma_max
}

/// Solve `min_K ||future - K past||_F^2 + lambda ||K||_F^2`.
///
/// `past` and `future` must have the same column count; the result maps the
/// row space of `past` to the row space of `future`.
pub fn ridge_solve(
    future: &DMatrix<f64>,
    past: &DMatrix<f64>,
    lambda: f64,
) -> Result<(DMatrix<f64>, SolveInfo)> {
    if past.ncols() != future.ncols() {
        return Err(Error::DimensionMismatch {
            context: "ridge solve: future column count".into(),
            expected: past.ncols(),
            got: future.ncols(),
        });
    }
    if past.ncols() == 0 || past.nrows() == 0 || future.nrows() == 0 {
        return Err(Error::Empty("snapshot matrix"));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::Config(format!(
            "lambda must be a finite nonnegative real, got {lambda}"
        )));
    }
    ensure_finite(past, "past snapshot matrix")?;
    ensure_finite(future, "future snapshot matrix")?;

    let svd = past.clone().svd(true, true);
    let u = svd.u.as_ref().expect("SVD with compute_u");
    let v_t = svd.v_t.as_ref().expect("SVD with compute_v");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);

    let cutoff = RANK_TOL * sigma_max;
    let rank = sigma.iter().filter(|&&s| s > cutoff).count();

    // Filter factors: s/(s^2 + lambda); at lambda = 0, 1/s above the cutoff
    // and 0 below it (minimum-norm pseudo-inverse).
    let filtered: Vec<f64> = sigma
        .iter()
        .map(|&s| {
            if lambda == 0.0 {
                if s > cutoff {
                    1.0 / s
                } else {
                    0.0
                }
            } else {
                s / (s * s + lambda)
            }
        })
        .collect();

    // K = F V diag(filtered) U^T, grouped to keep intermediates small.
    let mut fv = future * v_t.transpose();
    for (j, f) in filtered.iter().enumerate() {
        fv.column_mut(j).scale_mut(*f);
    }
    let k = fv * u.transpose();

    let info = SolveInfo {
        sigma_max,
        rank,
        rank_deficient: rank < past.nrows(),
    };
    Ok((k, info))
}

pub(crate) fn ensure_finite(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteMatrix(what.to_string()))
    }
}
