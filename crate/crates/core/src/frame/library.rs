//! Standard frames used throughout the tests, examples and shipped documents.

use super::{FrameSpec, StructureSpec};
use crate::matrix::Matrix;
use crate::multilinear::form::FormSpinor;
use crate::multilinear::spin::two_form_matrix;
use crate::scalar::{cq, Cq};

/// Complex structure from a list of `J e_i = ±e_j` assignments, 1-based.
pub fn complex_matrix(dim: usize, images: &[(usize, usize, i64)]) -> Matrix<Cq> {
    let mut j: Matrix<Cq> = Matrix::zeros(dim, dim);
    for &(from, to, sign) in images {
        j[(to - 1, from - 1)] = cq(sign);
    }
    j
}

/// `e^13 + e^24` on four dimensions.
pub fn standard_omega() -> Matrix<Cq> {
    two_form_matrix(4, &[(1, 3, 1), (2, 4, 1)])
}

/// Complex structure compatible with [`standard_omega`] and the identity metric.
pub fn standard_complex() -> Matrix<Cq> {
    standard_omega()
}

/// Abelian four-frame with the standard flat Kähler data.
pub fn torus_kahler() -> FrameSpec {
    FrameSpec::abelian(4)
        .named("torus-kahler")
        .with_metric(Matrix::identity(4))
        .with_structure(StructureSpec::Complex(standard_complex()))
        .with_structure(StructureSpec::Symplectic(standard_omega()))
}

/// `[e1, e2] = e3` with `e4` central.
pub fn kodaira_thurston() -> FrameSpec {
    FrameSpec::abelian(4).named("kodaira-thurston").with_bracket(1, 2, 3, cq(1)).with_metric(Matrix::identity(4))
}

/// Integrable invariant complex structure on the Kodaira–Thurston frame: `J e1 = e2`, `J e3 = e4`.
pub fn kodaira_thurston_complex() -> Matrix<Cq> {
    complex_matrix(4, &[(1, 2, 1), (2, 1, -1), (3, 4, 1), (4, 3, -1)])
}

/// Almost-complex structure `J e1 = e3`, `J e2 = e4`; its eigenbundle is not bracket-closed.
pub fn kodaira_thurston_bad_complex() -> Matrix<Cq> {
    complex_matrix(4, &[(1, 3, 1), (3, 1, -1), (2, 4, 1), (4, 2, -1)])
}

/// Closed invariant symplectic form `e^13 + e^24` on the Kodaira–Thurston frame.
pub fn kodaira_thurston_omega() -> Matrix<Cq> {
    standard_omega()
}

/// Abelian six-frame twisted by `H = e^123`.
pub fn abelian6_twisted() -> FrameSpec {
    FrameSpec::abelian(6)
        .named("abelian6-twisted")
        .with_twist(FormSpinor::monomial(6, &[1, 2, 3]))
        .with_metric(Matrix::identity(6))
}

/// Abelian four-frame twisted by `H = e^123`.
pub fn abelian4_twisted() -> FrameSpec {
    FrameSpec::abelian(4)
        .named("abelian-twisted")
        .with_twist(FormSpinor::monomial(4, &[1, 2, 3]))
        .with_metric(Matrix::identity(4))
}

/// `e(2) ⊕ ℝ`: `[e1, e2] = e3`, `[e1, e3] = −e2`, `e4` central.
///
/// Unimodular, non-abelian, and carries the invariant flat Kähler structure
/// `ω = e^14 + e^23` with `J = ω` and `g = 1`.
pub fn hyperelliptic() -> FrameSpec {
    let omega = two_form_matrix(4, &[(1, 4, 1), (2, 3, 1)]);
    FrameSpec::abelian(4)
        .named("hyperelliptic-kahler")
        .with_bracket(1, 2, 3, cq(1))
        .with_bracket(1, 3, 2, cq(-1))
        .with_metric(Matrix::identity(4))
        .with_structure(StructureSpec::Complex(omega.clone()))
        .with_structure(StructureSpec::Symplectic(omega))
}

/// `[e1, e2] = e2` padded to four dimensions; `tr ad(e1) = 1`.
pub fn non_unimodular() -> FrameSpec {
    FrameSpec::abelian(4).named("non-unimodular").with_bracket(1, 2, 2, cq(1))
}

/// Antisymmetric constants that fail Jacobi on `(e1, e2, e3)`.
pub fn jacobi_violating() -> FrameSpec {
    FrameSpec::abelian(4)
        .named("jacobi-violating")
        .with_bracket(1, 2, 3, cq(1))
        .with_bracket(2, 3, 1, cq(1))
        .with_bracket(1, 3, 3, cq(1))
}
