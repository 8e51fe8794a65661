//! Mixed-degree forms on the dual frame, indexed by bitmask.
//!
//! Bit `i` of a mask stands for the covector `e^{i+1}`; the basis form of a
//! mask is the wedge of its covectors in increasing order. The coefficient
//! vector of a form on a frame of dimension `m` has length `2^m` and is
//! indexed by the mask itself.

use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::{parity_sign, Scalar};

pub type Mask = u32;

/// Largest frame dimension whose form space fits comfortably in memory.
pub const MAX_DIM: usize = 12;

pub fn degree(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Sign of `(-1)^(k(k-1)/2)`, the reversal sign on degree `k`.
pub fn reversal_sign(k: usize) -> i64 {
    parity_sign((k * k.saturating_sub(1) / 2) % 2)
}

/// `e^a ∧ e^b = sign · e^(a|b)`, or `None` when they share a covector.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> y).count_ones();
    }
    Some(parity_sign(swaps as usize))
}

/// Sign picked up by moving covector `i` to the front of `mask`.
fn front_sign(i: usize, mask: Mask) -> i64 {
    parity_sign((mask & ((1u32 << i) - 1)).count_ones() as usize)
}

/// Element of the complexified exterior algebra of the dual frame.
#[derive(Clone, PartialEq)]
pub struct FormSpinor<S> {
    dim: usize,
    terms: BTreeMap<Mask, S>,
}

impl<S: Scalar> FormSpinor<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "frame dimension {dim} too large");
        FormSpinor { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::basis(dim, 0)
    }

    pub fn basis(dim: usize, mask: Mask) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(mask, S::one());
        f
    }

    /// Wedge of the listed covectors, 1-based, in the given order.
    pub fn monomial(dim: usize, covectors: &[usize]) -> Self {
        covectors.iter().fold(Self::one(dim), |acc, &i| {
            assert!(i >= 1 && i <= dim, "covector index {i} out of range");
            acc.wedge(&Self::basis(dim, 1 << (i - 1)))
        })
    }

    pub fn covector(dim: usize, coeffs: &[S]) -> Self {
        assert_eq!(coeffs.len(), dim);
        let mut f = Self::zero(dim);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    /// The 2-form `Σ_{i<j} m_ij e^i∧e^j` of an antisymmetric matrix.
    pub fn two_form(m: &Matrix<S>) -> Self {
        let dim = m.rows();
        let mut f = Self::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                f.add_term((1 << i) | (1 << j), m[(i, j)].clone());
            }
        }
        f
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Mask, S)>) -> Self {
        let mut f = Self::zero(dim);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn from_column(dim: usize, column: &[S]) -> Self {
        assert_eq!(column.len(), 1 << dim);
        Self::from_terms(dim, column.iter().enumerate().map(|(m, c)| (m as Mask, c.clone())))
    }

    pub fn to_column(&self) -> Vec<S> {
        let mut v = vec![S::zero(); 1 << self.dim];
        for (&m, c) in &self.terms {
            v[m as usize] = c.clone();
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &S)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: Mask) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of `e^1∧…∧e^m`.
    pub fn top(&self) -> S {
        self.coeff(((1u64 << self.dim) - 1) as Mask)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: Mask, c: S) {
        debug_assert!((mask as u64) < (1u64 << self.dim));
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(S::zero);
        let sum = std::mem::replace(entry, S::zero()) + c;
        if sum.is_zero() {
            self.terms.remove(&mask);
        } else {
            *self.terms.get_mut(&mask).unwrap() = sum;
        }
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "forms over different frames");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(&m, c)| (m, c.clone() * s.clone())))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(&m, c)| (m, c.conj())))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut out = Self::zero(self.dim);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if let Some(s) = wedge_sign(a, b) {
                    out.add_term(a | b, S::from_i64(s) * ca.clone() * cb.clone());
                }
            }
        }
        out
    }

    /// `e^{i+1} ∧ self`, 0-based index.
    pub fn wedge_covector(&self, i: usize) -> Self {
        let bit = 1 << i;
        Self::from_terms(
            self.dim,
            self.terms
                .iter()
                .filter(|(&m, _)| m & bit == 0)
                .map(|(&m, c)| (m | bit, S::from_i64(front_sign(i, m)) * c.clone())),
        )
    }

    /// Interior product with the frame vector `e_{i+1}`, 0-based index.
    pub fn contract_basis(&self, i: usize) -> Self {
        let bit = 1 << i;
        Self::from_terms(
            self.dim,
            self.terms
                .iter()
                .filter(|(&m, _)| m & bit != 0)
                .map(|(&m, c)| (m & !bit, S::from_i64(front_sign(i, m)) * c.clone())),
        )
    }

    /// Interior product `i_X` with a vector of frame components.
    pub fn contract(&self, x: &[S]) -> Self {
        assert_eq!(x.len(), self.dim);
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Self::zero(self.dim), |acc, (i, c)| acc.add(&self.contract_basis(i).scale(c)))
    }

    /// `ξ ∧ self` for a covector of frame components.
    pub fn wedge_one_form(&self, xi: &[S]) -> Self {
        assert_eq!(xi.len(), self.dim);
        xi.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Self::zero(self.dim), |acc, (i, c)| acc.add(&self.wedge_covector(i).scale(c)))
    }

    /// Component of degree `k`.
    pub fn degree_part(&self, k: usize) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().filter(|(&m, _)| degree(m) == k).map(|(&m, c)| (m, c.clone())),
        )
    }

    /// Reversal anti-automorphism: degree `k` picks up `(-1)^(k(k-1)/2)`.
    pub fn sigma(&self) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().map(|(&m, c)| (m, S::from_i64(reversal_sign(degree(m))) * c.clone())),
        )
    }

    /// `Some(k)` when the form is homogeneous of degree `k` (zero counts as degree 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|&m| degree(m));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|&m| degree(m) % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|&m| degree(m) % 2 == 1)
    }

    pub fn apply(op: &Matrix<S>, form: &Self) -> Self {
        Self::from_column(form.dim, &op.mul_vec(&form.to_column()))
    }
}

/// Operator matrix whose column `mask` is `f(e^mask)`.
pub fn operator_from_fn<S: Scalar>(
    dim: usize,
    f: impl Fn(&FormSpinor<S>) -> FormSpinor<S>,
) -> Matrix<S> {
    let n = 1usize << dim;
    let mut m = Matrix::zeros(n, n);
    for col in 0..n {
        let image = f(&FormSpinor::basis(dim, col as Mask));
        for (row, c) in image.terms() {
            m[(row as usize, col)] = c.clone();
        }
    }
    m
}

/// Left multiplication by a fixed form.
pub fn wedge_operator<S: Scalar>(form: &FormSpinor<S>) -> Matrix<S> {
    operator_from_fn(form.dim(), |b| form.wedge(b))
}

/// Reversal as an operator.
pub fn sigma_operator<S: Scalar>(dim: usize) -> Matrix<S> {
    operator_from_fn(dim, FormSpinor::sigma)
}

/// Projector onto forms of degree `k`.
pub fn degree_projector<S: Scalar>(dim: usize, k: usize) -> Matrix<S> {
    operator_from_fn(dim, |b| b.degree_part(k))
}

/// Masks of all basis forms of degree `k`, increasing.
pub fn masks_of_degree(dim: usize, k: usize) -> Vec<usize> {
    (0..1usize << dim).filter(|&m| degree(m as Mask) == k).collect()
}

/// Masks of all basis forms of the given parity (0 even, 1 odd).
pub fn masks_of_parity(dim: usize, parity: usize) -> Vec<usize> {
    (0..1usize << dim).filter(|&m| degree(m as Mask) % 2 == parity).collect()
}

pub fn mask_label(mask: Mask) -> String {
    if mask == 0 {
        return "1".into();
    }
    let idx: Vec<String> = (0..32).filter(|i| mask & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
    format!("e^{}", idx.join(""))
}

impl<S: Scalar> fmt::Debug for FormSpinor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&m, c)| format!("({c:?})·{}", mask_label(m))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, Cq};

    type F = FormSpinor<Cq>;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        // e^3 ∧ e^12 = e^123
        assert_eq!(wedge_sign(0b100, 0b011), Some(1));
        // e^2 ∧ e^13 = -e^123
        assert_eq!(wedge_sign(0b010, 0b101), Some(-1));
    }

    #[test]
    fn monomial_ordering() {
        let a = F::monomial(3, &[2, 1]);
        assert_eq!(a, F::basis(3, 0b011).scale(&cq(-1)));
        assert!(F::monomial(3, &[1, 1]).is_zero());
    }

    #[test]
    fn contraction_is_antiderivation() {
        let a = F::monomial(4, &[1, 3]);
        let b = F::monomial(4, &[2, 4]);
        for i in 0..4 {
            let lhs = a.wedge(&b).contract_basis(i);
            let rhs = a.contract_basis(i).wedge(&b).add(&a.wedge(&b.contract_basis(i)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sigma_on_low_degrees() {
        assert_eq!(F::monomial(3, &[1]).sigma(), F::monomial(3, &[1]));
        assert_eq!(F::monomial(3, &[1, 2]).sigma(), F::monomial(3, &[1, 2]).scale(&cq(-1)));
        assert_eq!(F::monomial(3, &[1, 2, 3]).sigma(), F::monomial(3, &[1, 2, 3]).scale(&cq(-1)));
    }

    #[test]
    fn column_round_trip() {
        let a = F::monomial(3, &[1, 3]).add(&F::one(3).scale(&cq(5)));
        assert_eq!(F::from_column(3, &a.to_column()), a);
    }
}
