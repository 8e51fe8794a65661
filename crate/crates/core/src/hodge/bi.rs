//! Born–Infeld geometry of a generalized metric: volume element, star and inner product.

use nalgebra::DVector;
use num_complex::Complex;

use crate::error::{GeometryError, Result};
use crate::float::{self, FMatrix};
use crate::frame::FrameSpec;
use crate::gc::GenMetric;
use crate::matrix::OperatorMatrix;
use crate::multilinear::clifford::{clifford_operator, mukai_matrix, GeneralizedVector};
use crate::multilinear::form::sigma_operator;
use crate::scalar::{q_to_f64, C64};

/// Frame, generalized metric and the float operators derived from them.
#[derive(Clone, Debug)]
pub struct BISpace {
    frame: FrameSpec,
    metric: GenMetric,
    orthonormal: Vec<GeneralizedVector<C64>>,
    star: FMatrix,
    sigma_star: FMatrix,
    gram: FMatrix,
    dh: OperatorMatrix,
    dh_float: FMatrix,
}

impl BISpace {
    /// Uses the frame's `g` and `b` (identity and zero when absent).
    pub fn from_frame(frame: &FrameSpec) -> Result<Self> {
        let metric = GenMetric::new(&frame.metric_or_identity(), &frame.b_or_zero())?;
        Self::new(frame, &metric)
    }

    pub fn new(frame: &FrameSpec, metric: &GenMetric) -> Result<Self> {
        let order: Vec<usize> = (0..frame.dim()).collect();
        Self::with_order(frame, metric, &order)
    }

    /// Gram–Schmidt on the graph basis of `C₊` taken in `order`; the last vector
    /// is flipped if the result is negatively oriented.
    pub fn with_order(frame: &FrameSpec, metric: &GenMetric, order: &[usize]) -> Result<Self> {
        let m = frame.dim();
        if metric.dim() != m {
            return Err(GeometryError::DimensionMismatch { expected: m, found: metric.dim() });
        }
        let dh = frame.twisted_d()?;
        let orthonormal = orthonormal_c_plus(metric, order);
        let ops: Vec<FMatrix> = orthonormal.iter().map(|a| clifford_operator(a).to_float()).collect();
        let size = 1usize << m;
        let mut star = FMatrix::identity(size, size);
        for op in &ops {
            star *= op;
        }
        let mut sigma_star = FMatrix::identity(size, size);
        for op in ops.iter().rev() {
            sigma_star *= op;
        }
        let gram = mukai_matrix::<C64>(m).to_float() * &sigma_star;
        let dh_float = dh.to_float();
        Ok(BISpace { frame: frame.clone(), metric: metric.clone(), orthonormal, star, sigma_star, gram, dh, dh_float })
    }

    pub fn frame(&self) -> &FrameSpec {
        &self.frame
    }

    pub fn metric(&self) -> &GenMetric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Oriented orthonormal basis of `C₊` used to build `*`.
    pub fn orthonormal_basis(&self) -> &[GeneralizedVector<C64>] {
        &self.orthonormal
    }

    /// Spin action of `* = a₁⋯a_m`.
    pub fn volume_element(&self) -> &FMatrix {
        &self.star
    }

    /// Spin action of the reversed product `σ(*) = a_m⋯a₁`.
    pub fn sigma_star(&self) -> &FMatrix {
        &self.sigma_star
    }

    /// `G[I][J] = h(e^I, e^J)`, so `h(α, β) = αᵀ G β̄`.
    pub fn gram(&self) -> &FMatrix {
        &self.gram
    }

    pub fn dh(&self) -> &OperatorMatrix {
        &self.dh
    }

    pub fn dh_float(&self) -> &FMatrix {
        &self.dh_float
    }

    /// `(−1)^(m(m−1)/2)`.
    pub fn star_square_sign(&self) -> f64 {
        let m = self.dim();
        if (m * (m - 1) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `‖*² − (−1)^(m(m−1)/2)‖`.
    pub fn star_square_residual(&self) -> f64 {
        let n = self.star.nrows();
        let target = FMatrix::identity(n, n).scale(self.star_square_sign());
        float::distance(&(&self.star * &self.star), &target)
    }

    /// `h(α, β) = [α ∧ σ(σ(*) β̄)]_top` with coefficient vectors in mask order.
    pub fn bi_inner_product(&self, alpha: &[C64], beta: &[C64]) -> C64 {
        let a = DVector::from_column_slice(alpha);
        let b = DVector::from_iterator(beta.len(), beta.iter().map(|z| z.conj()));
        (a.transpose() * &self.gram * b)[(0, 0)]
    }

    /// `h / vol_G`, so that `1` has unit length.
    pub fn normalized_inner_product(&self, alpha: &[C64], beta: &[C64]) -> C64 {
        self.bi_inner_product(alpha, beta) / self.gram[(0, 0)]
    }

    /// `⟨1, σ(*)1⟩`.
    pub fn volume_from_star(&self) -> f64 {
        self.gram[(0, 0)].re
    }

    /// `⋆ρ = σ(σ(*)·ρ)`; only defined here for `b = 0`.
    pub fn hodge_star_operator(&self) -> Result<FMatrix> {
        if !self.metric.b().is_zero() {
            return Err(GeometryError::NonzeroB);
        }
        Ok(sigma_operator::<C64>(self.dim()).to_float() * &self.sigma_star)
    }

    pub fn hodge_star(&self, rho: &[C64]) -> Result<Vec<C64>> {
        let op = self.hodge_star_operator()?;
        Ok((op * DVector::from_column_slice(rho)).iter().copied().collect())
    }

    /// Adjoint with respect to `h`: `T* = Ḡ⁻¹ Tᴴ Ḡ`.
    pub fn gram_adjoint(&self, t: &FMatrix) -> FMatrix {
        let g = self.gram.map(|z| z.conj());
        let gi = float::inverse(&g).expect("Born-Infeld form is nondegenerate");
        gi * t.adjoint() * g
    }
}

/// `det(g + b) / det(g)^{1/2}`.
pub fn bi_volume(metric: &GenMetric) -> f64 {
    let num = metric.g().add(metric.b()).determinant();
    let den = metric.g().determinant();
    q_to_f64(&num.re) / q_to_f64(&den.re).sqrt()
}

fn orthonormal_c_plus(metric: &GenMetric, order: &[usize]) -> Vec<GeneralizedVector<C64>> {
    let g = metric.g().to_float();
    let m = metric.dim();
    let graph = metric.c_plus();
    // coefficients of each orthonormal vector in the graph basis
    let mut coeffs: Vec<DVector<C64>> = Vec::with_capacity(m);
    let pair = |x: &DVector<C64>, y: &DVector<C64>| (x.transpose() * &g * y)[(0, 0)];
    for &i in order {
        let mut v = DVector::from_element(m, Complex::new(0.0, 0.0));
        v[i] = Complex::new(1.0, 0.0);
        for u in &coeffs {
            let p = pair(u, &v);
            v -= u * p;
        }
        let norm = pair(&v, &v).re.sqrt();
        coeffs.push(v.unscale(norm));
    }
    let det = FMatrix::from_fn(m, m, |r, c| coeffs[c][r]).determinant();
    if det.re < 0.0 {
        let last = coeffs.last_mut().expect("nonempty frame");
        *last = -last.clone();
    }
    let graph_f: Vec<GeneralizedVector<C64>> = graph
        .iter()
        .map(|w| GeneralizedVector::new(w.vector.iter().map(|z| z_to_c64(z)).collect(), w.covector.iter().map(|z| z_to_c64(z)).collect()))
        .collect();
    coeffs
        .iter()
        .map(|c| {
            let mut acc = GeneralizedVector::zero(m);
            for (k, w) in graph_f.iter().enumerate() {
                acc = acc.add(&w.scale(&c[k]));
            }
            acc
        })
        .collect()
}

fn z_to_c64(z: &crate::scalar::Cq) -> C64 {
    Complex::new(q_to_f64(&z.re), q_to_f64(&z.im))
}
