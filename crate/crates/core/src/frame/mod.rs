//! Frames: rational Lie algebras with an invariant twist, metric and 2-form.
//!
//! `[e_i, e_j] = Σ_k c^k_ij e_k`. On the dual basis the Chevalley–Eilenberg
//! differential is `d e^k = −Σ_{i<j} c^k_ij e^i∧e^j`, extended as an odd
//! derivation; as an operator it is `d = −Σ_k Σ_{i<j} c^k_ij ε^i ε^j ι_k`.

pub mod bracket;
pub mod library;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{GeometryError, Result};
use crate::matrix::{Matrix, OperatorMatrix};
use crate::multilinear::form::{operator_from_fn, wedge_operator, FormSpinor};
use crate::scalar::{cq_real, Cq, Q};

pub use bracket::{
    bracket_symmetry_check, courant_bracket, derived_bracket, dorfman_bracket, frame_automorphism_check,
    BracketSymmetryReport,
};

/// Structure constants `c^k_ij` on a `dim`-dimensional algebra, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Cq>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, c: vec![Cq::zero(); dim * dim * dim] }
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.dim + i) * self.dim + j
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_ij`, 0-based.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &Cq {
        &self.c[self.idx(k, i, j)]
    }

    /// Sets `[e_i, e_j] ∋ value·e_k` together with the antisymmetric partner, 0-based.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, value: Cq) {
        let a = self.idx(k, i, j);
        let b = self.idx(k, j, i);
        self.c[a] = value.clone();
        self.c[b] = -value;
    }

    /// Raw assignment without the antisymmetric partner, 0-based.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, value: Cq) {
        let a = self.idx(k, i, j);
        self.c[a] = value;
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn bracket(&self, x: &[Cq], y: &[Cq]) -> Vec<Cq> {
        let m = self.dim;
        let mut out = vec![Cq::zero(); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(k, i, j);
                    if !c.is_zero() {
                        *o = o.clone() + c.clone() * xy.clone();
                    }
                }
            }
        }
        out
    }

    /// First `(i, j, k)` with `c^k_ij ≠ −c^k_ji`.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.dim;
        for k in 0..m {
            for i in 0..m {
                for j in i..m {
                    if !(self.get(k, i, j).clone() + self.get(k, j, i).clone()).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.dim;
        let e = |i: usize| {
            let mut v = vec![Cq::zero(); m];
            v[i] = cq_real(Q::from_integer(1.into()));
            v
        };
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let t1 = self.bracket(&self.bracket(&x, &y), &z);
                    let t2 = self.bracket(&self.bracket(&y, &z), &x);
                    let t3 = self.bracket(&self.bracket(&z, &x), &y);
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !(a.clone() + b.clone() + c.clone()).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `tr ad(e_i)`, 0-based.
    pub fn ad_trace(&self, i: usize) -> Cq {
        (0..self.dim).fold(Cq::zero(), |acc, k| acc + self.get(k, i, k).clone())
    }

    /// Chevalley–Eilenberg differential applied to one form.
    pub fn ce_apply(&self, rho: &FormSpinor<Cq>) -> FormSpinor<Cq> {
        let m = self.dim;
        let mut out = FormSpinor::zero(m);
        for k in 0..m {
            let inner = rho.contract_basis(k);
            if inner.is_zero() {
                continue;
            }
            for i in 0..m {
                for j in i + 1..m {
                    let c = self.get(k, i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let term = inner.wedge_covector(j).wedge_covector(i).scale(&-c.clone());
                    out = out.add(&term);
                }
            }
        }
        out
    }

    pub fn ce_operator(&self) -> OperatorMatrix {
        operator_from_fn(self.dim, |b| self.ce_apply(b))
    }
}

/// Names for the GC structure data a frame document may carry.
#[derive(Clone, Debug, PartialEq)]
pub enum StructureSpec {
    /// Complex structure `J: T → T`.
    Complex(Matrix<Cq>),
    /// Symplectic form, as the antisymmetric matrix used in the block `[[0, ω⁻¹], [−ω, 0]]`.
    Symplectic(Matrix<Cq>),
    /// Full `4n × 4n` block matrix on `T ⊕ T*`.
    Explicit(Matrix<Cq>),
}

impl StructureSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureSpec::Complex(_) => "complex",
            StructureSpec::Symplectic(_) => "symplectic",
            StructureSpec::Explicit(_) => "explicit",
        }
    }
}

/// The ambient invariant geometry.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSpec {
    pub name: String,
    pub constants: StructureConstants,
    pub twist: FormSpinor<Cq>,
    pub metric: Option<Matrix<Cq>>,
    pub b_field: Option<Matrix<Cq>>,
    pub structures: Vec<StructureSpec>,
}

impl FrameSpec {
    pub fn abelian(dim: usize) -> Self {
        assert!(dim > 0 && dim % 2 == 0, "frame dimension must be even and positive");
        FrameSpec {
            name: format!("abelian-{dim}"),
            constants: StructureConstants::zero(dim),
            twist: FormSpinor::zero(dim),
            metric: None,
            b_field: None,
            structures: Vec::new(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    /// `[e_i, e_j] = … + coeff·e_k`, 1-based.
    pub fn with_bracket(mut self, i: usize, j: usize, k: usize, coeff: Cq) -> Self {
        self.constants.set_antisymmetric(i - 1, j - 1, k - 1, coeff);
        self
    }

    pub fn with_twist(mut self, h: FormSpinor<Cq>) -> Self {
        assert_eq!(h.dim(), self.dim());
        self.twist = h;
        self
    }

    pub fn with_metric(mut self, g: Matrix<Cq>) -> Self {
        self.metric = Some(g);
        self
    }

    pub fn with_b_field(mut self, b: Matrix<Cq>) -> Self {
        self.b_field = Some(b);
        self
    }

    pub fn with_structure(mut self, s: StructureSpec) -> Self {
        self.structures.push(s);
        self
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn metric_or_identity(&self) -> Matrix<Cq> {
        self.metric.clone().unwrap_or_else(|| Matrix::identity(self.dim()))
    }

    pub fn b_or_zero(&self) -> Matrix<Cq> {
        self.b_field.clone().unwrap_or_else(|| Matrix::zeros(self.dim(), self.dim()))
    }

    pub fn bracket(&self, x: &[Cq], y: &[Cq]) -> Vec<Cq> {
        self.constants.bracket(x, y)
    }

    pub fn d(&self, rho: &FormSpinor<Cq>) -> FormSpinor<Cq> {
        self.constants.ce_apply(rho)
    }

    pub fn d_twisted(&self, rho: &FormSpinor<Cq>) -> FormSpinor<Cq> {
        self.d(rho).add(&self.twist.wedge(rho))
    }

    fn require_lie_algebra(&self) -> Result<()> {
        if let Some((i, j, k)) = self.constants.antisymmetry_witness() {
            return Err(GeometryError::InvalidFrame(format!(
                "c^{}_{}{} is not antisymmetric",
                k + 1,
                i + 1,
                j + 1
            )));
        }
        if let Some((i, j, k)) = self.constants.jacobi_witness() {
            return Err(GeometryError::InvalidFrame(format!(
                "Jacobi identity fails on (e{}, e{}, e{})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(())
    }

    pub fn ce_differential(&self) -> Result<OperatorMatrix> {
        self.require_lie_algebra()?;
        Ok(self.constants.ce_operator())
    }

    /// `d_H = d + H∧`; requires `dH = 0`.
    pub fn twisted_d(&self) -> Result<OperatorMatrix> {
        let d = self.ce_differential()?;
        let dh = self.d(&self.twist);
        if !dh.is_zero() {
            return Err(GeometryError::TwistNotClosed(format!("dH = {dh:?}")));
        }
        if self.twist.is_zero() {
            return Ok(d);
        }
        Ok(d.add(&wedge_operator(&self.twist)))
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodularity_witness().is_none()
    }

    /// 0-based index of a basis vector whose adjoint map has nonzero trace.
    pub fn unimodularity_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| !self.constants.ad_trace(i).is_zero())
    }

    pub fn require_unimodular(&self) -> Result<()> {
        match self.unimodularity_witness() {
            Some(i) => Err(GeometryError::NotUnimodular(i + 1)),
            None => Ok(()),
        }
    }

    pub fn validate(&self) -> FrameReport {
        validate_frame(self)
    }
}

/// Exact check that a real rational matrix is symmetric positive-definite.
pub fn is_positive_definite(g: &Matrix<Cq>) -> bool {
    if !g.is_square() || g.sub(&g.transpose()).is_zero().then_some(()).is_none() {
        return false;
    }
    if (0..g.rows()).any(|i| (0..g.cols()).any(|j| !g[(i, j)].im.is_zero())) {
        return false;
    }
    (1..=g.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let minor = g.select(&idx, &idx).determinant();
        minor.im.is_zero() && minor.re.is_positive()
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.into(), passed: true, detail: None }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        Check { name: name.into(), passed: false, detail: Some(detail) }
    }

    pub fn from_result(name: &str, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name),
            Err(d) => Self::fail(name, d),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        match &self.detail {
            Some(d) => write!(f, "{:<28} {status}  ({d})", self.name),
            None => write!(f, "{:<28} {status}", self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameReport {
    pub checks: Vec<Check>,
}

impl FrameReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn validate_frame(frame: &FrameSpec) -> FrameReport {
    let mut checks = Vec::new();
    let c = &frame.constants;
    checks.push(Check::from_result(
        "antisymmetry",
        match c.antisymmetry_witness() {
            Some((i, j, k)) => Err(format!("c^{}_{}{} + c^{}_{}{} != 0", k + 1, i + 1, j + 1, k + 1, j + 1, i + 1)),
            None => Ok(()),
        },
    ));
    let jacobi = c.jacobi_witness();
    checks.push(Check::from_result(
        "jacobi",
        match jacobi {
            Some((i, j, k)) => Err(format!("fails on (e{}, e{}, e{})", i + 1, j + 1, k + 1)),
            None => Ok(()),
        },
    ));
    let dh = frame.d(&frame.twist);
    checks.push(Check::from_result(
        "twist closed",
        if jacobi.is_some() {
            Err("skipped: d undefined without Jacobi".into())
        } else if dh.is_zero() {
            Ok(())
        } else {
            Err(format!("dH = {dh:?}"))
        },
    ));
    checks.push(Check::from_result(
        "unimodular",
        match frame.unimodularity_witness() {
            Some(i) => Err(format!("tr ad(e{}) = {}", i + 1, crate::scalar::fmt_cq(&c.ad_trace(i)))),
            None => Ok(()),
        },
    ));
    if let Some(g) = &frame.metric {
        checks.push(Check::from_result(
            "metric positive-definite",
            if is_positive_definite(g) { Ok(()) } else { Err("g is not symmetric positive-definite".into()) },
        ));
    }
    if let Some(b) = &frame.b_field {
        checks.push(Check::from_result(
            "b antisymmetric",
            if b.add(&b.transpose()).is_zero() { Ok(()) } else { Err("b + bᵀ != 0".into()) },
        ));
    }
    FrameReport { checks }
}
