//! Exact eigenprojectors of operators whose spectrum lies in `i·ℤ`.

use num_traits::{One, Zero};

use crate::error::{GeometryError, Result};
use crate::matrix::{Matrix, OperatorMatrix};
use crate::scalar::{cq, cq_i, Cq};

/// Projectors `P_k` onto the `ik`-eigenspaces, `k ∈ −bound..=bound`, built by
/// Lagrange interpolation. Zero projectors are dropped. Fails if the operator
/// is not diagonalizable with that spectrum.
pub fn eigenprojectors(op: &OperatorMatrix, bound: i64) -> Result<Vec<(i64, OperatorMatrix)>> {
    let n = op.rows();
    let ks: Vec<i64> = (-bound..=bound).collect();
    let shifted: Vec<OperatorMatrix> =
        ks.iter().map(|&k| op.sub(&Matrix::scalar(n, cq_i() * cq(k)))).collect();
    let mut out = Vec::new();
    let mut total = Matrix::zeros(n, n);
    let mut recon = Matrix::zeros(n, n);
    for (a, &k) in ks.iter().enumerate() {
        let mut p = Matrix::identity(n);
        let mut denom = Cq::one();
        for (b, &j) in ks.iter().enumerate() {
            if a == b {
                continue;
            }
            p = p.mul(&shifted[b]);
            denom = denom * cq_i() * cq(k - j);
            if p.is_zero() {
                break;
            }
        }
        if p.is_zero() {
            continue;
        }
        let p = p.scale(&(Cq::one() / denom));
        total = total.add(&p);
        recon = recon.add(&p.scale(&(cq_i() * cq(k))));
        out.push((k, p));
    }
    if total != Matrix::identity(n) || &recon != op {
        return Err(GeometryError::NotDiagonalizable);
    }
    Ok(out)
}

/// Sum of `P_b · A · P_a` over pairs whose eigenvalue index moves by `step`.
pub fn component_by_step(
    a: &OperatorMatrix,
    projectors: &[(i64, OperatorMatrix)],
    step: impl Fn(i64, i64) -> bool,
) -> OperatorMatrix {
    let n = a.rows();
    let mut out = Matrix::zeros(n, n);
    for (ka, pa) in projectors {
        let ap = a.mul(pa);
        if ap.is_zero() {
            continue;
        }
        for (kb, pb) in projectors {
            if step(*ka, *kb) {
                out = out.add(&pb.mul(&ap));
            }
        }
    }
    out
}

/// Dimension of the image of an exact projector.
pub fn projector_rank(p: &OperatorMatrix) -> usize {
    // trace of an idempotent is its rank
    let tr = (0..p.rows()).fold(Cq::zero(), |acc, i| acc + p[(i, i)].clone());
    tr.re.to_integer().try_into().unwrap_or(0)
}
