//! Generalized vectors `X + ξ`, the split pairing and the Clifford action on forms.

use num_traits::Zero;

use super::form::{operator_from_fn, FormSpinor};
use crate::error::{GeometryError, Result};
use crate::matrix::Matrix;
use crate::scalar::{Cq, Q, Scalar};

/// Section of `(T ⊕ T*) ⊗ ℂ` with constant frame coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedVector<S> {
    pub vector: Vec<S>,
    pub covector: Vec<S>,
}

impl<S: Scalar> GeneralizedVector<S> {
    pub fn new(vector: Vec<S>, covector: Vec<S>) -> Self {
        assert_eq!(vector.len(), covector.len(), "vector and covector parts differ in length");
        GeneralizedVector { vector, covector }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![S::zero(); dim], vec![S::zero(); dim])
    }

    /// `e_i`, 1-based.
    pub fn frame_vector(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.vector[i - 1] = S::one();
        v
    }

    /// `e^i`, 1-based.
    pub fn frame_covector(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.covector[i - 1] = S::one();
        v
    }

    /// The `2·dim` basis `e_1..e_m, e^1..e^m`, in stacking order.
    pub fn basis(dim: usize) -> Vec<Self> {
        (0..2 * dim).map(|k| Self::from_stacked(&unit::<S>(2 * dim, k))).collect()
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    /// `(X, ξ)` as one column of length `2·dim`.
    pub fn stacked(&self) -> Vec<S> {
        self.vector.iter().chain(&self.covector).cloned().collect()
    }

    pub fn from_stacked(v: &[S]) -> Self {
        assert!(v.len() % 2 == 0);
        let m = v.len() / 2;
        Self::new(v[..m].to_vec(), v[m..].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let s: Vec<S> =
            self.stacked().into_iter().zip(other.stacked()).map(|(a, b)| a + b).collect();
        Self::from_stacked(&s)
    }

    pub fn scale(&self, c: &S) -> Self {
        let s: Vec<S> = self.stacked().into_iter().map(|a| a * c.clone()).collect();
        Self::from_stacked(&s)
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().chain(&self.covector).all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.vector.iter().map(S::conj).collect(),
            self.covector.iter().map(S::conj).collect(),
        )
    }

    /// Image under a `2m × 2m` block matrix acting on stacked coordinates.
    pub fn transform(&self, m: &Matrix<S>) -> Self {
        Self::from_stacked(&m.mul_vec(&self.stacked()))
    }
}

fn unit<S: Scalar>(n: usize, k: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[k] = S::one();
    v
}

fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(GeometryError::DimensionMismatch { expected: a, found: b })
    }
}

/// `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
pub fn split_pairing<S: Scalar>(u: &GeneralizedVector<S>, v: &GeneralizedVector<S>) -> Result<S> {
    check_same_dim(u.dim(), v.dim())?;
    let dot = |a: &[S], b: &[S]| {
        a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };
    let total = dot(&u.covector, &v.vector) + dot(&v.covector, &u.vector);
    Ok(total * S::from_q(&Q::new(1.into(), 2.into())))
}

/// Gram matrix of the split pairing on stacked coordinates: `½[[0, 1], [1, 0]]`.
pub fn split_pairing_matrix<S: Scalar>(dim: usize) -> Matrix<S> {
    let half = S::from_q(&Q::new(1.into(), 2.into()));
    Matrix::from_fn(2 * dim, 2 * dim, |i, j| {
        if (i < dim) != (j < dim) && i % dim == j % dim {
            half.clone()
        } else {
            S::zero()
        }
    })
}

/// Cartan's action `(X+ξ)·ρ = i_X ρ + ξ∧ρ`.
pub fn clifford_act<S: Scalar>(v: &GeneralizedVector<S>, rho: &FormSpinor<S>) -> Result<FormSpinor<S>> {
    check_same_dim(v.dim(), rho.dim())?;
    Ok(rho.contract(&v.vector).add(&rho.wedge_one_form(&v.covector)))
}

/// Clifford multiplication by `v` as an operator on the form space.
pub fn clifford_operator<S: Scalar>(v: &GeneralizedVector<S>) -> Matrix<S> {
    operator_from_fn(v.dim(), |b| clifford_act(v, b).expect("dimensions agree"))
}

/// Operators of `e_i` (interior products) and `e^i` (wedges), 0-based.
pub fn basis_operators<S: Scalar>(dim: usize) -> (Vec<Matrix<S>>, Vec<Matrix<S>>) {
    let contractions = (0..dim).map(|i| operator_from_fn(dim, |b| b.contract_basis(i))).collect();
    let wedges = (0..dim).map(|i| operator_from_fn(dim, |b| b.wedge_covector(i))).collect();
    (contractions, wedges)
}

/// Top-degree pairing `⟨α, β⟩ = [α ∧ σ(β)]_top`.
pub fn mukai_pairing<S: Scalar>(alpha: &FormSpinor<S>, beta: &FormSpinor<S>) -> Result<S> {
    check_same_dim(alpha.dim(), beta.dim())?;
    Ok(alpha.wedge(&beta.sigma()).top())
}

/// Matrix of the pairing on basis forms: entry `(I, J) = ⟨e^I, e^J⟩`.
pub fn mukai_matrix<S: Scalar>(dim: usize) -> Matrix<S> {
    let n = 1usize << dim;
    let full = n - 1;
    let mut m = Matrix::zeros(n, n);
    for a in 0..n {
        let b = full ^ a;
        let alpha = FormSpinor::<S>::basis(dim, a as u32);
        let beta = FormSpinor::<S>::basis(dim, b as u32);
        m[(a, b)] = mukai_pairing(&alpha, &beta).expect("same dimension");
    }
    m
}

/// Exact generalized vector with integer entries, convenience for tests and examples.
pub fn gv(vector: &[i64], covector: &[i64]) -> GeneralizedVector<Cq> {
    GeneralizedVector::new(
        vector.iter().map(|&v| Cq::from_i64(v)).collect(),
        covector.iter().map(|&v| Cq::from_i64(v)).collect(),
    )
}
