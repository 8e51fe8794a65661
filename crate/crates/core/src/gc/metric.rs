use num_traits::Zero;

use crate::error::{GeometryError, Result};
use crate::frame::is_positive_definite;
use crate::matrix::Matrix;
use crate::multilinear::clifford::{split_pairing_matrix, GeneralizedVector};
use crate::multilinear::spin::b_shear;
use crate::scalar::Cq;

/// Generalized metric from a positive-definite `g` and a 2-form `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenMetric {
    g: Matrix<Cq>,
    b: Matrix<Cq>,
    involution: Matrix<Cq>,
}

impl GenMetric {
    pub fn new(g: &Matrix<Cq>, b: &Matrix<Cq>) -> Result<Self> {
        if !g.is_square() || b.rows() != g.rows() || !b.is_square() {
            return Err(GeometryError::DimensionMismatch { expected: g.rows(), found: b.rows() });
        }
        if !is_positive_definite(g) {
            return Err(GeometryError::NotPositiveDefinite);
        }
        if !b.add(&b.transpose()).is_zero() {
            return Err(GeometryError::NotAntisymmetric);
        }
        let m = g.rows();
        let gi = g.inverse().ok_or(GeometryError::Degenerate)?;
        let ul = gi.mul(b).neg();
        let ll = g.sub(&b.mul(&gi).mul(b));
        let lr = b.mul(&gi);
        let involution = Matrix::from_fn(2 * m, 2 * m, |r, c| match (r < m, c < m) {
            (true, true) => ul[(r, c)].clone(),
            (true, false) => gi[(r, c - m)].clone(),
            (false, true) => ll[(r - m, c)].clone(),
            (false, false) => lr[(r - m, c - m)].clone(),
        });
        Ok(GenMetric { g: g.clone(), b: b.clone(), involution })
    }

    /// Recovers `(g, b)` from an involution `G`; checks `G² = 1`, split symmetry
    /// and positivity of `⟨G·,·⟩`.
    pub fn from_involution(big: &Matrix<Cq>) -> Result<Self> {
        let n2 = big.rows();
        if !big.is_square() || n2 % 2 != 0 {
            return Err(GeometryError::DimensionMismatch { expected: 2 * (n2 / 2), found: n2 });
        }
        let m = n2 / 2;
        if big.mul(big) != Matrix::identity(n2) {
            return Err(GeometryError::NotPositiveDefinite);
        }
        let form = split_pairing_matrix::<Cq>(m).mul(big);
        if !is_positive_definite(&form) {
            return Err(GeometryError::NotPositiveDefinite);
        }
        let idx: Vec<usize> = (0..m).collect();
        let upper: Vec<usize> = (m..n2).collect();
        let ur = big.select(&idx, &upper);
        let g = ur.inverse().ok_or(GeometryError::Degenerate)?;
        let b = g.mul(&big.select(&idx, &idx)).neg();
        let metric = Self::new(&g, &b)?;
        if &metric.involution != big {
            return Err(GeometryError::NotPositiveDefinite);
        }
        Ok(metric)
    }

    pub fn g(&self) -> &Matrix<Cq> {
        &self.g
    }

    pub fn b(&self) -> &Matrix<Cq> {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    /// The involution `G` on stacked coordinates.
    pub fn involution(&self) -> &Matrix<Cq> {
        &self.involution
    }

    /// `e^b · diag-swap(g) · e^{−b}` evaluated as a product.
    pub fn three_factor_product(&self) -> Matrix<Cq> {
        let m = self.dim();
        let gi = self.g.inverse().expect("positive-definite");
        let middle = Matrix::from_fn(2 * m, 2 * m, |r, c| match (r < m, c < m) {
            (true, false) => gi[(r, c - m)].clone(),
            (false, true) => self.g[(r - m, c)].clone(),
            _ => Cq::zero(),
        });
        b_shear(&self.b).mul(&middle).mul(&b_shear(&self.b.neg()))
    }

    /// Metric induced on `T` by projecting `C₊`: `g − b g⁻¹ b`.
    pub fn induced_metric(&self) -> Matrix<Cq> {
        let gi = self.g.inverse().expect("positive-definite");
        self.g.sub(&self.b.mul(&gi).mul(&self.b))
    }

    /// Basis `e_i + (b ± g) e_i` of `C±` (frame order).
    pub fn c_basis(&self, positive: bool) -> Vec<GeneralizedVector<Cq>> {
        let graph = if positive { self.b.add(&self.g) } else { self.b.sub(&self.g) };
        (0..self.dim())
            .map(|i| {
                let mut x = vec![Cq::zero(); self.dim()];
                x[i] = num_traits::One::one();
                GeneralizedVector::new(x, graph.column(i))
            })
            .collect()
    }

    pub fn c_plus(&self) -> Vec<GeneralizedVector<Cq>> {
        self.c_basis(true)
    }

    pub fn c_minus(&self) -> Vec<GeneralizedVector<Cq>> {
        self.c_basis(false)
    }

    /// `(g, b) ↦ (g, b + b′)`, realized as conjugation by the shear.
    pub fn b_transform(&self, b_prime: &Matrix<Cq>) -> Result<Self> {
        let s = b_shear(b_prime);
        let conj = s.mul(&self.involution).mul(&b_shear(&b_prime.neg()));
        let out = Self::new(&self.g, &self.b.add(b_prime))?;
        debug_assert_eq!(out.involution, conj);
        Ok(out)
    }
}
