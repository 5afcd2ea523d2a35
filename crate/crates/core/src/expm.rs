//! Dense matrix exponential by scaling and squaring.

use nalgebra::DMatrix;

/// Series truncation tolerance, relative to the accumulated sum.
const SERIES_TOL: f64 = 1e-14;

/// `exp(A)` for a square matrix.
///
/// The input is scaled by `2^-s` until its 1-norm falls below 1/2, the
/// exponential of the scaled matrix is summed as a Taylor series until the
/// next term is below `1e-14` relative to the partial sum, and the result is
/// squared `s` times.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(a.nrows(), a.ncols(), "expm requires a square matrix");
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }

    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings as i32);

    let mut sum = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=120u32 {
        term = (&term * &scaled) / f64::from(k);
        sum += &term;
        if one_norm(&term) <= SERIES_TOL * one_norm(&sum) {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Maximum absolute column sum.
fn one_norm(a: &DMatrix<f64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_of_zero_is_identity() {
        let z = DMatrix::<f64>::zeros(3, 3);
        assert_eq!(expm(&z), DMatrix::identity(3, 3));
    }

    #[test]
    fn exp_of_diagonal() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -2.0, 0.5]));
        let e = expm(&d);
        assert_relative_eq!(e[(0, 0)], 1f64.exp(), epsilon = 1e-13);
        assert_relative_eq!(e[(1, 1)], (-2f64).exp(), epsilon = 1e-13);
        assert_relative_eq!(e[(2, 2)], 0.5f64.exp(), epsilon = 1e-13);
        assert_relative_eq!(e[(0, 1)], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn exp_of_rotation_generator() {
        // exp(theta * [[0,-1],[1,0]]) is the rotation by theta.
        let theta = 0.7;
        let g = DMatrix::from_row_slice(2, 2, &[0.0, -theta, theta, 0.0]);
        let e = expm(&g);
        assert_relative_eq!(e[(0, 0)], theta.cos(), epsilon = 1e-13);
        assert_relative_eq!(e[(0, 1)], -theta.sin(), epsilon = 1e-13);
        assert_relative_eq!(e[(1, 0)], theta.sin(), epsilon = 1e-13);
        assert_relative_eq!(e[(1, 1)], theta.cos(), epsilon = 1e-13);
    }

    #[test]
    fn large_norm_input_uses_squaring() {
        // exp(A)*exp(-A) = I even when scaling kicks in.
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 1.5, -0.5, 2.0]);
        let prod = expm(&a) * expm(&(-a.clone()));
        assert_relative_eq!(prod, DMatrix::identity(2, 2), epsilon = 1e-11);
    }
}
