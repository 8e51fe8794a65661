//! Adjoint of `d_H`, the Laplacian and its harmonic spaces.

use crate::error::Result;
use crate::float::{self, FMatrix};
use crate::frame::FrameSpec;
use crate::gc::GenMetric;
use crate::matrix::Matrix;
use crate::multilinear::form::{masks_of_degree, masks_of_parity, FormSpinor};
use crate::multilinear::spin::b_field_exp;
use crate::scalar::Cq;

use super::bi::BISpace;

/// The two constructions of `d_H*` and their distance.
#[derive(Clone, Debug)]
pub struct AdjointReport {
    /// `*·d_H·*⁻¹`
    pub formula: FMatrix,
    /// `Ḡ⁻¹ d_Hᴴ Ḡ`
    pub gram: FMatrix,
    pub residual: f64,
}

/// `d_H* = *·d_H·*⁻¹`, compared with the adjoint for `h`. Requires a unimodular frame.
pub fn dh_adjoint(space: &BISpace) -> Result<AdjointReport> {
    space.frame().require_unimodular()?;
    let d = space.dh_float();
    let formula = space.volume_element() * d * space.sigma_star();
    let gram = space.gram_adjoint(d);
    let residual = float::distance(&formula, &gram);
    Ok(AdjointReport { formula, gram, residual })
}

/// `Δ = d d* + d* d` for any operator and its adjoint.
pub fn laplacian_of(d: &FMatrix, d_star: &FMatrix) -> FMatrix {
    d * d_star + d_star * d
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicDims {
    pub even: usize,
    pub odd: usize,
    /// Present when `Δ` preserves degree.
    pub per_degree: Option<Vec<usize>>,
}

impl HarmonicDims {
    pub fn total(&self) -> usize {
        self.even + self.odd
    }
}

/// `Δ_{d_H}` built from the formula adjoint.
pub fn laplacian(space: &BISpace) -> Result<FMatrix> {
    let adj = dh_adjoint(space)?;
    Ok(laplacian_of(space.dh_float(), &adj.formula))
}

/// Kernel dimensions of `Δ` with singular values below `tol · σ_max(Δ)` counted as zero.
pub fn harmonic_dims(space: &BISpace, tol: f64) -> Result<HarmonicDims> {
    let lap = laplacian(space)?;
    Ok(harmonic_dims_of(&lap, space.dim(), tol))
}

pub fn harmonic_dims_of(lap: &FMatrix, dim: usize, tol: f64) -> HarmonicDims {
    let scale = float::op_norm(lap);
    let kernel_on = |idx: &[usize]| {
        let block = float::select(lap, idx, idx);
        float::kernel_dim(&block, tol, Some(scale))
    };
    let even = kernel_on(&masks_of_parity(dim, 0));
    let odd = kernel_on(&masks_of_parity(dim, 1));
    let degrees: Vec<Vec<usize>> = (0..=dim).map(|k| masks_of_degree(dim, k)).collect();
    let mut leak: f64 = 0.0;
    for (a, ia) in degrees.iter().enumerate() {
        for (b, ib) in degrees.iter().enumerate() {
            if a != b {
                leak = leak.max(float::op_norm(&float::select(lap, ib, ia)));
            }
        }
    }
    let per_degree = (leak <= tol * scale.max(1.0)).then(|| degrees.iter().map(|idx| kernel_on(idx)).collect());
    HarmonicDims { even, odd, per_degree }
}

/// `(g, b, H) ↦ (g, b + b′, H − db′)`.
pub fn gauge_transform(frame: &FrameSpec, metric: &GenMetric, b_prime: &Matrix<Cq>) -> Result<(FrameSpec, GenMetric)> {
    let db = frame.d(&FormSpinor::two_form(b_prime));
    let shifted = frame.clone().with_twist(frame.twist.sub(&db)).with_b_field(metric.b().add(b_prime));
    Ok((shifted, metric.b_transform(b_prime)?))
}

#[derive(Clone, Debug)]
pub struct GaugeReport {
    pub before: HarmonicDims,
    pub after: HarmonicDims,
    /// `‖Δ′ e^{b′} − e^{b′} Δ‖ / ‖Δ‖`; zero when `e^{b′}` carries harmonic forms to harmonic forms.
    pub intertwining_residual: f64,
}

impl GaugeReport {
    /// Parity dimensions; per-degree data is not gauge invariant since `e^{b′}` mixes degrees.
    pub fn dims_agree(&self) -> bool {
        (self.before.even, self.before.odd) == (self.after.even, self.after.odd)
    }
}

/// Harmonic dimensions before and after the gauge shift by `b′`.
pub fn gauge_check(frame: &FrameSpec, metric: &GenMetric, b_prime: &Matrix<Cq>, tol: f64) -> Result<GaugeReport> {
    let space = BISpace::new(frame, metric)?;
    let (frame2, metric2) = gauge_transform(frame, metric, b_prime)?;
    let space2 = BISpace::new(&frame2, &metric2)?;
    let lap = laplacian(&space)?;
    let lap2 = laplacian(&space2)?;
    let e = b_field_exp(b_prime)?.to_float();
    let scale = float::op_norm(&lap).max(1.0);
    let intertwining_residual = float::distance(&(&lap2 * &e), &(&e * &lap)) / scale;
    Ok(GaugeReport {
        before: harmonic_dims_of(&lap, space.dim(), tol),
        after: harmonic_dims_of(&lap2, space2.dim(), tol),
        intertwining_residual,
    })
}
