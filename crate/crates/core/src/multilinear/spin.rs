//! `so(T ⊕ T*)` elements and their spin action on forms.
//!
//! A block matrix `[[A, β], [B, -Aᵀ]]` acts on stacked coordinates `(X, ξ)`.
//! Its spin action is
//!
//! ```text
//! ρ ↦ B∧ρ + ι_β ρ − A†ρ + ½ tr(A) ρ
//! ```
//!
//! with `B = Σ_{i<j} B_ij e^i∧e^j`, `ι_β = Σ_{i<j} β_ij ι_i ι_j` (rightmost
//! contraction first) and `A†` the degree-zero derivation extending
//! `ξ ↦ ξ∘A`. These conventions make `[spin(Q), v·] = (Qv)·` hold exactly.

use num_traits::{One, Zero};

use super::form::{operator_from_fn, FormSpinor};
use crate::error::{GeometryError, Result};
use crate::matrix::{Matrix, OperatorMatrix};
use crate::scalar::{cq, Cq, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct SoElement {
    pub a: Matrix<Cq>,
    pub beta: Matrix<Cq>,
    pub b: Matrix<Cq>,
}

fn is_antisymmetric(m: &Matrix<Cq>) -> bool {
    m.is_square() && m.add(&m.transpose()).is_zero()
}

impl SoElement {
    pub fn new(a: Matrix<Cq>, beta: Matrix<Cq>, b: Matrix<Cq>) -> Result<Self> {
        let m = a.rows();
        for blk in [&a, &beta, &b] {
            if blk.rows() != m || blk.cols() != m {
                return Err(GeometryError::DimensionMismatch { expected: m, found: blk.rows() });
            }
        }
        if !is_antisymmetric(&beta) || !is_antisymmetric(&b) {
            return Err(GeometryError::NotSplitAntisymmetric);
        }
        Ok(SoElement { a, beta, b })
    }

    pub fn zero(dim: usize) -> Self {
        let z = Matrix::zeros(dim, dim);
        SoElement { a: z.clone(), beta: z.clone(), b: z }
    }

    pub fn from_b(b: Matrix<Cq>) -> Result<Self> {
        let m = b.rows();
        Self::new(Matrix::zeros(m, m), Matrix::zeros(m, m), b)
    }

    pub fn from_beta(beta: Matrix<Cq>) -> Result<Self> {
        let m = beta.rows();
        Self::new(Matrix::zeros(m, m), beta, Matrix::zeros(m, m))
    }

    pub fn from_endomorphism(a: Matrix<Cq>) -> Result<Self> {
        let m = a.rows();
        Self::new(a, Matrix::zeros(m, m), Matrix::zeros(m, m))
    }

    /// Splits a `2m × 2m` block matrix; fails unless it is split-antisymmetric.
    pub fn from_block(q: &Matrix<Cq>) -> Result<Self> {
        if !q.is_square() || q.rows() % 2 != 0 {
            return Err(GeometryError::NotSplitAntisymmetric);
        }
        let m = q.rows() / 2;
        let lo: Vec<usize> = (0..m).collect();
        let hi: Vec<usize> = (m..2 * m).collect();
        let a = q.select(&lo, &lo);
        let d = q.select(&hi, &hi);
        if !a.transpose().add(&d).is_zero() {
            return Err(GeometryError::NotSplitAntisymmetric);
        }
        Self::new(a, q.select(&lo, &hi), q.select(&hi, &lo))
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn to_block(&self) -> Matrix<Cq> {
        let m = self.dim();
        Matrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
            (true, true) => self.a[(i, j)].clone(),
            (true, false) => self.beta[(i, j - m)].clone(),
            (false, true) => self.b[(i - m, j)].clone(),
            (false, false) => -self.a[(j - m, i - m)].clone(),
        })
    }

    pub fn neg(&self) -> Self {
        SoElement { a: self.a.neg(), beta: self.beta.neg(), b: self.b.neg() }
    }

    pub fn trace_a(&self) -> Cq {
        (0..self.dim()).fold(Cq::zero(), |acc, i| acc + self.a[(i, i)].clone())
    }
}

/// Spin action of an `so(T⊕T*)` element on the form space.
pub fn spin_rep(q: &SoElement) -> OperatorMatrix {
    let m = q.dim();
    let b_form = FormSpinor::two_form(&q.b);
    let half_trace = q.trace_a() * Cq::new(Q::new(1.into(), 2.into()), Q::zero());
    operator_from_fn(m, |rho| {
        let mut out = b_form.wedge(rho);
        for i in 0..m {
            for j in i + 1..m {
                let c = &q.beta[(i, j)];
                if !c.is_zero() {
                    out = out.add(&rho.contract_basis(j).contract_basis(i).scale(c));
                }
            }
        }
        for k in 0..m {
            let inner = rho.contract_basis(k);
            if inner.is_zero() {
                continue;
            }
            for j in 0..m {
                let c = &q.a[(k, j)];
                if !c.is_zero() {
                    out = out.sub(&inner.wedge_covector(j).scale(c));
                }
            }
        }
        out.add(&rho.scale(&half_trace))
    })
}

/// Exponential of the spin action.
///
/// Exact when the action is nilpotent (any pure `B` or pure `β`); otherwise a
/// Taylor polynomial with `term_bound` terms is returned, and without a bound
/// the call fails.
pub fn group_exp(q: &SoElement, term_bound: Option<usize>) -> Result<OperatorMatrix> {
    exp_operator(&spin_rep(q), term_bound)
}

pub fn exp_operator(op: &OperatorMatrix, term_bound: Option<usize>) -> Result<OperatorMatrix> {
    let n = op.rows();
    let limit = match term_bound {
        Some(t) => t,
        None => {
            if !is_nilpotent(op) {
                return Err(GeometryError::NotNilpotent);
            }
            n + 1
        }
    };
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..limit {
        term = term.mul(op).scale(&Cq::new(Q::new(1.into(), (k as i64).into()), Q::zero()));
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    Ok(sum)
}

pub fn is_nilpotent(op: &OperatorMatrix) -> bool {
    let n = op.rows();
    let mut p = op.clone();
    // A nilpotent n×n matrix satisfies p^n = 0; squaring reaches that quickly.
    let mut power = 1;
    while power < n {
        p = p.mul(&p);
        power *= 2;
        if p.is_zero() {
            return true;
        }
    }
    p.is_zero()
}

/// Shear `[[1, 0], [b, 1]]` on stacked coordinates.
pub fn b_shear(b: &Matrix<Cq>) -> Matrix<Cq> {
    let m = b.rows();
    Matrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
        (true, true) | (false, false) if i == j => Cq::one(),
        (false, true) => b[(i - m, j)].clone(),
        _ => Cq::zero(),
    })
}

/// `e^B ∧ ·` for an antisymmetric matrix `B`.
pub fn b_field_exp(b: &Matrix<Cq>) -> Result<OperatorMatrix> {
    group_exp(&SoElement::from_b(b.clone())?, None)
}

/// Integer antisymmetric matrix helper: `pairs` lists `(i, j, c)` meaning `c·e^i∧e^j`, 1-based.
pub fn two_form_matrix(dim: usize, pairs: &[(usize, usize, i64)]) -> Matrix<Cq> {
    let mut m: Matrix<Cq> = Matrix::zeros(dim, dim);
    for &(i, j, c) in pairs {
        m[(i - 1, j - 1)] = m[(i - 1, j - 1)].clone() + cq(c);
        m[(j - 1, i - 1)] = m[(j - 1, i - 1)].clone() - cq(c);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::clifford::{clifford_operator, gv, GeneralizedVector};
    use crate::scalar::Scalar;

    type F = FormSpinor<Cq>;

    #[test]
    fn b_part_on_one() {
        let b = two_form_matrix(4, &[(1, 2, 3), (3, 4, -1)]);
        let op = spin_rep(&SoElement::from_b(b.clone()).unwrap());
        let out = F::apply(&op, &F::one(4));
        assert_eq!(out, F::two_form(&b));
    }

    #[test]
    fn identity_endomorphism_eigenvalues() {
        let op = spin_rep(&SoElement::from_endomorphism(Matrix::identity(4)).unwrap());
        for mask in 0..16u32 {
            let k = mask.count_ones() as i64;
            let out = F::apply(&op, &F::basis(4, mask));
            assert_eq!(out, F::basis(4, mask).scale(&cq(2 - k)));
        }
    }

    #[test]
    fn commutator_law_on_basis() {
        let a = Matrix::from_fn(4, 4, |i, j| cq((i * 3 + j) as i64 % 5 - 2));
        let q = SoElement::new(
            a,
            two_form_matrix(4, &[(1, 3, 2), (2, 4, 1)]),
            two_form_matrix(4, &[(1, 2, -1), (3, 4, 4)]),
        )
        .unwrap();
        let s = spin_rep(&q);
        let block = q.to_block();
        for v in GeneralizedVector::<Cq>::basis(4) {
            let lhs = s.commutator(&clifford_operator(&v));
            let rhs = clifford_operator(&v.transform(&block));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exp_examples() {
        let b = two_form_matrix(4, &[(1, 2, 1)]);
        let e = b_field_exp(&b).unwrap();
        assert_eq!(F::apply(&e, &F::one(4)), F::one(4).add(&F::monomial(4, &[1, 2])));
        let t = Cq::from_q(&crate::scalar::qr(3, 7));
        let bt = b.scale(&t);
        let out = F::apply(&b_field_exp(&bt).unwrap(), &F::monomial(4, &[3, 4]));
        assert_eq!(out, F::monomial(4, &[3, 4]).add(&F::monomial(4, &[1, 2, 3, 4]).scale(&t)));
        let q = SoElement::from_beta(two_form_matrix(4, &[(1, 2, 1), (2, 3, 2)])).unwrap();
        let prod = group_exp(&q, None).unwrap().mul(&group_exp(&q.neg(), None).unwrap());
        assert_eq!(prod, Matrix::identity(16));
    }

    #[test]
    fn non_nilpotent_needs_bound() {
        let q = SoElement::from_endomorphism(Matrix::identity(2)).unwrap();
        assert_eq!(group_exp(&q, None), Err(GeometryError::NotNilpotent));
        assert!(group_exp(&q, Some(6)).is_ok());
    }

    #[test]
    fn rejects_non_split_antisymmetric() {
        let mut q = SoElement::zero(2).to_block();
        q[(0, 0)] = cq(1);
        assert_eq!(SoElement::from_block(&q), Err(GeometryError::NotSplitAntisymmetric));
        let _ = gv(&[0, 0], &[0, 0]);
    }
}
