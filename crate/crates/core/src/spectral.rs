//! Eigendecomposition of real square matrices with complex eigenpairs.
//!
//! Eigenvalues come from the real Schur form. Right eigenvectors are
//! recovered by shifted inverse iteration in complex arithmetic; eigenvalues
//! that agree within a cluster tolerance share start vectors orthogonalized
//! against the vectors already accepted for the cluster, so semisimple
//! repeated eigenvalues get independent eigenvectors while genuinely
//! defective matrices are detected and flagged.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Outcome of a full eigendecomposition.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    /// Eigenvalues, in the order of `vectors`' columns.
    pub values: Vec<C64>,
    /// Right eigenvectors, unit 2-norm, phase-fixed so the largest component
    /// is real and positive.
    pub vectors: DMatrix<C64>,
    /// True when some eigenvector could not be resolved to tolerance, i.e.
    /// the matrix is not diagonalizable within `residual_tol`.
    pub defective: bool,
    /// Worst relative pairing residual `||A v - lambda v|| / scale`.
    pub max_residual: f64,
}

const MAX_SCHUR_ITERS: usize = 200_000;
const INVERSE_ITERS: usize = 6;
const RESIDUAL_TOL: f64 = 1e-8;
const CLUSTER_TOL: f64 = 1e-8;

/// Eigenvalues only (complex, unordered).
pub fn complex_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<C64>> {
    debug_assert_eq!(a.nrows(), a.ncols());
    let schur = a
        .clone()
        .try_schur(f64::EPSILON, MAX_SCHUR_ITERS)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    Ok(schur.complex_eigenvalues().iter().cloned().collect())
}

/// Full eigendecomposition with right eigenvectors.
pub fn eigendecompose(a: &DMatrix<f64>) -> Result<Eigendecomposition> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch {
            context: "eigendecomposition: column count".into(),
            expected: n,
            got: a.ncols(),
        });
    }
    if n == 0 {
        return Err(Error::Empty("matrix"));
    }
    crate::solver::ensure_finite(a, "matrix")?;

    let values = complex_eigenvalues(a)?;
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let ac = a.map(|v| C64::new(v, 0.0));

    let mut vectors = DMatrix::<C64>::zeros(n, n);
    let mut max_residual = 0.0f64;
    let mut defective = false;

    for (i, &lambda) in values.iter().enumerate() {
        // Vectors already accepted for eigenvalues in the same cluster;
        // the new vector is kept orthogonal to them.
        let cluster: Vec<usize> = (0..i)
            .filter(|&j| (values[j] - lambda).norm() <= CLUSTER_TOL * scale)
            .collect();

        let (v, residual) = inverse_iterate(&ac, lambda, scale, i, &cluster, &vectors);
        max_residual = max_residual.max(residual);
        if residual > RESIDUAL_TOL {
            defective = true;
        }
        vectors.set_column(i, &v);
    }

    Ok(Eigendecomposition {
        values,
        vectors,
        defective,
        max_residual,
    })
}

/// One eigenvector by shifted inverse iteration. Returns the (unit,
/// phase-fixed) vector together with its relative pairing residual.
fn inverse_iterate(
    ac: &DMatrix<C64>,
    lambda: C64,
    scale: f64,
    index: usize,
    cluster: &[usize],
    accepted: &DMatrix<C64>,
) -> (DVector<C64>, f64) {
    let n = ac.nrows();
    let orthogonalize = |v: &mut DVector<C64>| {
        for &j in cluster {
            let u = accepted.column(j);
            let proj: C64 = u.iter().zip(v.iter()).map(|(ui, vi)| ui.conj() * vi).sum();
            for r in 0..n {
                v[r] -= proj * u[r];
            }
        }
    };

    // Deterministic start: ones plus an index-dependent basis bump, so
    // repeated eigenvalues explore different directions.
    let mut v = DVector::<C64>::from_element(n, C64::new(1.0, 0.0));
    v[index % n] += C64::new(2.0, 0.0);
    orthogonalize(&mut v);
    if v.norm() < 1e-12 {
        v = DVector::from_fn(n, |r, _| C64::new(if r == index % n { 1.0 } else { 0.1 }, 0.0));
    }
    v /= C64::new(v.norm(), 0.0);

    let mut best: Option<(DVector<C64>, f64)> = None;
    // Off-axis complex shift keeps the shifted matrix invertible even at an
    // exact real eigenvalue of a singular pencil.
    let mut eps = 1e-10 * scale.max(f64::MIN_POSITIVE);
    for _attempt in 0..4 {
        let shift = lambda + C64::new(eps * 0.5, eps);
        let mut shifted = ac.clone();
        for d in 0..n {
            shifted[(d, d)] -= shift;
        }
        let lu = shifted.lu();

        let mut w = v.clone();
        for _ in 0..INVERSE_ITERS {
            let Some(mut next) = lu.solve(&w) else {
                break;
            };
            orthogonalize(&mut next);
            let norm = next.norm();
            if !norm.is_finite() || norm < 1e-300 {
                break;
            }
            next /= C64::new(norm, 0.0);
            w = next;
            let residual = pairing_residual(ac, lambda, &w, scale);
            if best.as_ref().map_or(true, |(_, r)| residual < *r) {
                best = Some((w.clone(), residual));
            }
            if residual < 1e-13 {
                break;
            }
        }
        if best.as_ref().map_or(false, |(_, r)| *r <= RESIDUAL_TOL) {
            break;
        }
        eps *= 100.0;
    }

    let (mut v, residual) = best.unwrap_or_else(|| {
        let r = pairing_residual(ac, lambda, &v, scale);
        (v, r)
    });
    fix_phase(&mut v);
    (v, residual)
}

fn pairing_residual(ac: &DMatrix<C64>, lambda: C64, v: &DVector<C64>, scale: f64) -> f64 {
    let mut r = ac * v;
    for i in 0..r.len() {
        r[i] -= lambda * v[i];
    }
    r.norm() / scale
}

/// Rotate so the largest-magnitude component is real positive; makes the
/// decomposition reproducible across runs.
fn fix_phase(v: &mut DVector<C64>) {
    let mut idx = 0;
    let mut best = 0.0;
    for (i, c) in v.iter().enumerate() {
        let m = c.norm();
        if m > best {
            best = m;
            idx = i;
        }
    }
    if best > 0.0 {
        let phase = v[idx] / C64::new(best, 0.0);
        let correction = phase.conj();
        for c in v.iter_mut() {
            *c *= correction;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sorted_by_modulus(mut vals: Vec<C64>) -> Vec<C64> {
        vals.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
        vals
    }

    #[test]
    fn diagonal_matrix() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.5]);
        let e = eigendecompose(&a).unwrap();
        assert!(!e.defective);
        let vals = sorted_by_modulus(e.values.clone());
        assert_relative_eq!(vals[0].re, 1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1].re, 0.5, epsilon = 1e-12);
        for (i, &lambda) in e.values.iter().enumerate() {
            let v = e.vectors.column(i).clone_owned();
            let ac = a.map(|x| C64::new(x, 0.0));
            let r = (&ac * &v - v.clone() * lambda).norm();
            assert!(r < 1e-10, "pair {i} residual {r}");
        }
    }

    #[test]
    fn rotation_has_unit_complex_pair() {
        let theta = std::f64::consts::FRAC_PI_4;
        let a = DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()]);
        let e = eigendecompose(&a).unwrap();
        assert!(!e.defective);
        let mut args: Vec<f64> = e.values.iter().map(|l| l.arg()).collect();
        args.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_relative_eq!(args[0], -theta, epsilon = 1e-10);
        assert_relative_eq!(args[1], theta, epsilon = 1e-10);
        for l in &e.values {
            assert_relative_eq!(l.norm(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn semisimple_repeated_eigenvalue_gets_independent_vectors() {
        // 2x identity block inside a 3x3: eigenvalue 2 with a 2-d eigenspace.
        let a = DMatrix::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 5.0]);
        let e = eigendecompose(&a).unwrap();
        assert!(!e.defective, "max residual {}", e.max_residual);
        // The two vectors for eigenvalue 2 must not be parallel.
        let idx: Vec<usize> = e
            .values
            .iter()
            .enumerate()
            .filter(|(_, l)| (l.re - 2.0).abs() < 1e-9)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(idx.len(), 2);
        let u = e.vectors.column(idx[0]);
        let w = e.vectors.column(idx[1]);
        let dot: C64 = u.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
        assert!(dot.norm() < 1e-6, "vectors nearly parallel: {}", dot.norm());
    }

    #[test]
    fn jordan_block_is_flagged_defective() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let e = eigendecompose(&a).unwrap();
        assert!(e.defective);
        assert_eq!(e.values.len(), 2);
    }
}
