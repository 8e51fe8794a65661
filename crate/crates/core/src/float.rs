//! Floating-point linear algebra on complex matrices, backed by nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::scalar::C64;

pub type FMatrix = DMatrix<C64>;

/// Default relative tolerance for float kernels and residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

pub fn singular_values(m: &FMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Largest singular value.
pub fn op_norm(m: &FMatrix) -> f64 {
    singular_values(m).into_iter().fold(0.0, f64::max)
}

/// Number of singular values above `tol · scale`, where `scale` is the largest
/// singular value of `reference` (or of `m` itself when omitted).
pub fn numeric_rank(m: &FMatrix, tol: f64, reference: Option<f64>) -> usize {
    let sv = singular_values(m);
    let scale = reference.unwrap_or_else(|| sv.iter().copied().fold(0.0, f64::max));
    if scale == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * scale).count()
}

pub fn kernel_dim(m: &FMatrix, tol: f64, reference: Option<f64>) -> usize {
    m.ncols() - numeric_rank(m, tol, reference)
}

pub fn inverse(m: &FMatrix) -> Option<FMatrix> {
    m.clone().try_inverse()
}

pub fn adjoint(m: &FMatrix) -> FMatrix {
    m.adjoint()
}

/// `‖a − b‖` in operator norm.
pub fn distance(a: &FMatrix, b: &FMatrix) -> f64 {
    op_norm(&(a - b))
}

pub fn is_hermitian(m: &FMatrix, tol: f64) -> bool {
    let scale = op_norm(m).max(1.0);
    op_norm(&(m - m.adjoint())) <= tol * scale
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &FMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Submatrix on the given index sets.
pub fn select(m: &FMatrix, rows: &[usize], cols: &[usize]) -> FMatrix {
    FMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

pub fn real(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

/// Fixed-width scientific notation used in reports, so outputs are reproducible.
pub fn fmt_residual(x: f64) -> String {
    if x == 0.0 {
        "0.0e0".to_string()
    } else {
        format!("{x:.1e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = FMatrix::from_fn(3, 3, |i, j| real((i + 1) as f64 * (j + 1) as f64));
        assert_eq!(numeric_rank(&m, DEFAULT_TOL, None), 1);
        assert_eq!(kernel_dim(&m, DEFAULT_TOL, None), 2);
        assert_eq!(numeric_rank(&FMatrix::zeros(2, 2), DEFAULT_TOL, None), 0);
    }

    #[test]
    fn norms_and_eigenvalues() {
        let m = FMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![real(3.0), real(-1.0)]));
        assert!((op_norm(&m) - 3.0).abs() < 1e-12);
        assert!(is_hermitian(&m, 1e-12));
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
        assert_eq!(fmt_residual(0.0), "0.0e0");
        assert_eq!(fmt_residual(1.234e-12), "1.2e-12");
    }
}
