use num_traits::Zero;

use super::spectral::{component_by_step, eigenprojectors};
use crate::error::{GeometryError, Result};
use crate::frame::bracket::dorfman_bracket;
use crate::frame::{FrameSpec, StructureSpec};
use crate::matrix::{Matrix, OperatorMatrix};
use crate::multilinear::clifford::GeneralizedVector;
use crate::multilinear::spin::{b_shear, spin_rep, SoElement};
use crate::scalar::{cq_i, Cq};

/// Orthogonal complex structure on `T ⊕ T*`, stored as a `2m × 2m` block matrix
/// `[[A, β], [B, −Aᵀ]]` on stacked coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GCStructure {
    block: Matrix<Cq>,
}

/// Outcome of testing Courant closure of the `+i` eigenbundle.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    /// Basis indices of an offending pair and `(J − i)[e_a, e_b]`.
    pub witness: Option<(usize, usize, GeneralizedVector<Cq>)>,
}

impl GCStructure {
    /// Checks `J² = −1` and split-orthogonality.
    pub fn new(block: Matrix<Cq>) -> Result<Self> {
        if !block.is_square() || block.rows() % 2 != 0 || (block.rows() / 2) % 2 != 0 {
            return Err(GeometryError::DimensionMismatch { expected: 4, found: block.rows() });
        }
        let n = block.rows();
        if block.mul(&block) != Matrix::identity(n).neg() {
            return Err(GeometryError::NotComplex);
        }
        if SoElement::from_block(&block).is_err() {
            return Err(GeometryError::NotOrthogonal);
        }
        Ok(GCStructure { block })
    }

    /// `[[−J, 0], [0, Jᵀ]]` from a complex structure `J` on `T`.
    pub fn from_complex(j: &Matrix<Cq>) -> Result<Self> {
        let m = j.rows();
        if !j.is_square() || j.mul(j) != Matrix::identity(m).neg() {
            return Err(GeometryError::NotComplex);
        }
        let jt = j.transpose();
        Self::new(Matrix::from_fn(2 * m, 2 * m, |r, c| match (r < m, c < m) {
            (true, true) => -j[(r, c)].clone(),
            (false, false) => jt[(r - m, c - m)].clone(),
            _ => Cq::zero(),
        }))
    }

    /// `[[0, ω⁻¹], [−ω, 0]]` from an invertible antisymmetric `ω`.
    pub fn from_symplectic(omega: &Matrix<Cq>) -> Result<Self> {
        let m = omega.rows();
        if !omega.is_square() || !omega.add(&omega.transpose()).is_zero() {
            return Err(GeometryError::NotAntisymmetric);
        }
        let inv = omega.inverse().ok_or(GeometryError::Degenerate)?;
        Self::new(Matrix::from_fn(2 * m, 2 * m, |r, c| match (r < m, c < m) {
            (true, false) => inv[(r, c - m)].clone(),
            (false, true) => -omega[(r - m, c)].clone(),
            _ => Cq::zero(),
        }))
    }

    pub fn from_spec(spec: &StructureSpec) -> Result<Self> {
        match spec {
            StructureSpec::Complex(j) => Self::from_complex(j),
            StructureSpec::Symplectic(w) => Self::from_symplectic(w),
            StructureSpec::Explicit(b) => Self::new(b.clone()),
        }
    }

    pub fn block(&self) -> &Matrix<Cq> {
        &self.block
    }

    /// Frame dimension `m = 2n`.
    pub fn dim(&self) -> usize {
        self.block.rows() / 2
    }

    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn so_element(&self) -> SoElement {
        SoElement::from_block(&self.block).expect("validated at construction")
    }

    /// Upper-right (bivector) block.
    pub fn beta(&self) -> Matrix<Cq> {
        self.so_element().beta
    }

    /// Spin action on forms; eigenvalues `ik` with `|k| ≤ n`.
    pub fn spin(&self) -> OperatorMatrix {
        spin_rep(&self.so_element())
    }

    /// `n − ½ rank β`.
    pub fn type_of(&self) -> usize {
        self.n() - self.beta().rank() / 2
    }

    /// Basis of the `+i` eigenbundle `E`, exact.
    pub fn eigenbundle(&self) -> Vec<GeneralizedVector<Cq>> {
        let n = self.block.rows();
        self.block
            .sub(&Matrix::scalar(n, cq_i()))
            .kernel()
            .iter()
            .map(|v| GeneralizedVector::from_stacked(v))
            .collect()
    }

    /// `(J − i)w`, zero exactly when `w ∈ E`.
    pub fn eigen_residual(&self, w: &GeneralizedVector<Cq>) -> GeneralizedVector<Cq> {
        let jw = w.transform(&self.block);
        jw.add(&w.scale(&-cq_i()))
    }

    /// Closure of `E` under the Dorfman bracket, tested on all basis pairs.
    pub fn check_integrability(&self, frame: &FrameSpec) -> Result<IntegrabilityReport> {
        if frame.dim() != self.dim() {
            return Err(GeometryError::DimensionMismatch { expected: frame.dim(), found: self.dim() });
        }
        let e = self.eigenbundle();
        for (a, u) in e.iter().enumerate() {
            for (b, v) in e.iter().enumerate() {
                let w = dorfman_bracket(u, v, frame)?;
                let r = self.eigen_residual(&w);
                if !r.is_zero() {
                    return Ok(IntegrabilityReport { integrable: false, witness: Some((a, b, r)) });
                }
            }
        }
        Ok(IntegrabilityReport { integrable: true, witness: None })
    }

    pub fn is_integrable(&self, frame: &FrameSpec) -> Result<bool> {
        Ok(self.check_integrability(frame)?.integrable)
    }

    /// Exact eigenprojectors `U_k` of the spin action.
    pub fn projectors(&self) -> Result<Vec<(i64, OperatorMatrix)>> {
        eigenprojectors(&self.spin(), self.n() as i64)
    }

    /// Part of `d_H` that moves `U_k` by anything other than `±1`.
    ///
    /// Vanishes exactly when the structure is integrable, which gives a second
    /// route to integrability independent of the bracket.
    pub fn off_grading_part(&self, frame: &FrameSpec) -> Result<OperatorMatrix> {
        let dh = frame.twisted_d()?;
        let proj = self.projectors()?;
        Ok(component_by_step(&dh, &proj, |a, b| (b - a).abs() != 1))
    }

    /// Block-diagonal structure on the product of two frames.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (m1, m2) = (self.dim(), other.dim());
        let m = m1 + m2;
        let place_a = |i: usize| if i < m1 { i } else { m + i - m1 };
        let place_b = |i: usize| if i < m2 { m1 + i } else { m + m1 + i - m2 };
        let mut out = Matrix::zeros(2 * m, 2 * m);
        for r in 0..2 * m1 {
            for c in 0..2 * m1 {
                out[(place_a(r), place_a(c))] = self.block[(r, c)].clone();
            }
        }
        for r in 0..2 * m2 {
            for c in 0..2 * m2 {
                out[(place_b(r), place_b(c))] = other.block[(r, c)].clone();
            }
        }
        Self::new(out)
    }

    /// Conjugation by the shear `exp(b′)`.
    pub fn b_transform(&self, b: &Matrix<Cq>) -> Result<Self> {
        if !b.add(&b.transpose()).is_zero() {
            return Err(GeometryError::NotAntisymmetric);
        }
        let s = b_shear(b);
        let s_inv = b_shear(&b.neg());
        Self::new(s.mul(&self.block).mul(&s_inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::library::*;
    use crate::multilinear::clifford::split_pairing;
    use crate::multilinear::spin::two_form_matrix;

    #[test]
    fn complex_structure_basics() {
        let j = GCStructure::from_complex(&standard_complex()).unwrap();
        assert_eq!(j.type_of(), 2);
        let e = j.eigenbundle();
        assert_eq!(e.len(), 4);
        // E = T_{0,1} ⊕ T*_{1,0}: two pure vectors and two pure covectors
        let vectors = e.iter().filter(|w| w.covector.iter().all(Zero::is_zero)).count();
        let covectors = e.iter().filter(|w| w.vector.iter().all(Zero::is_zero)).count();
        assert_eq!((vectors, covectors), (2, 2));
        assert!(GCStructure::from_complex(&Matrix::identity(4)).is_err());
    }

    #[test]
    fn rotation_planes() {
        let j = complex_matrix(4, &[(1, 2, 1), (2, 1, -1), (3, 4, 1), (4, 3, -1)]);
        assert_eq!(GCStructure::from_complex(&j).unwrap().eigenbundle().len(), 4);
    }

    #[test]
    fn symplectic_structure_basics() {
        let w = standard_omega();
        let j = GCStructure::from_symplectic(&w).unwrap();
        assert_eq!(j.type_of(), 0);
        assert_eq!(j.block().mul(j.block()), Matrix::identity(8).neg());
        // E is the graph of X ↦ −i ι_X ω, and (ι_X ω)_j = Σ_i X^i ω_ij
        for v in j.eigenbundle() {
            let iota: Vec<Cq> = w.transpose().mul_vec(&v.vector);
            let expected: Vec<Cq> = iota.into_iter().map(|c| -(c * cq_i())).collect();
            assert_eq!(v.covector, expected);
        }
        let degenerate = two_form_matrix(4, &[(1, 2, 1)]);
        assert_eq!(GCStructure::from_symplectic(&degenerate), Err(GeometryError::Degenerate));
    }

    #[test]
    fn eigenbundle_is_isotropic() {
        for j in [
            GCStructure::from_complex(&standard_complex()).unwrap(),
            GCStructure::from_symplectic(&standard_omega()).unwrap(),
        ] {
            let e = j.eigenbundle();
            for u in &e {
                for v in &e {
                    assert!(split_pairing(u, v).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn integrability_examples() {
        let torus = FrameSpec::abelian(4);
        assert!(GCStructure::from_complex(&standard_complex()).unwrap().is_integrable(&torus).unwrap());
        assert!(GCStructure::from_symplectic(&standard_omega()).unwrap().is_integrable(&torus).unwrap());
        let kt = kodaira_thurston();
        let good = GCStructure::from_complex(&kodaira_thurston_complex()).unwrap();
        assert!(good.is_integrable(&kt).unwrap());
        let bad = GCStructure::from_complex(&kodaira_thurston_bad_complex()).unwrap();
        let report = bad.check_integrability(&kt).unwrap();
        assert!(!report.integrable);
        assert!(!report.witness.unwrap().2.is_zero());
    }

    #[test]
    fn integrability_agrees_with_grading_of_dh() {
        let kt = kodaira_thurston();
        let torus6 = abelian6_twisted();
        let j6 = complex_matrix(6, &[(1, 2, 1), (2, 1, -1), (3, 4, 1), (4, 3, -1), (5, 6, 1), (6, 5, -1)]);
        let cases = vec![
            (kt.clone(), GCStructure::from_complex(&kodaira_thurston_complex()).unwrap()),
            (kt.clone(), GCStructure::from_complex(&kodaira_thurston_bad_complex()).unwrap()),
            (kt.clone(), GCStructure::from_symplectic(&kodaira_thurston_omega()).unwrap()),
            (hyperelliptic(), GCStructure::from_spec(&hyperelliptic().structures[0]).unwrap()),
            (abelian4_twisted(), GCStructure::from_symplectic(&standard_omega()).unwrap()),
            (abelian4_twisted(), GCStructure::from_complex(&standard_complex()).unwrap()),
            (torus6, GCStructure::from_complex(&j6).unwrap()),
        ];
        for (frame, j) in cases {
            let by_bracket = j.is_integrable(&frame).unwrap();
            let by_grading = j.off_grading_part(&frame).unwrap().is_zero();
            assert_eq!(by_bracket, by_grading, "frame {}", frame.name);
        }
    }

    #[test]
    fn eigenbundle_raises_grading_by_one() {
        use crate::multilinear::clifford::clifford_operator;
        for j in [
            GCStructure::from_complex(&standard_complex()).unwrap(),
            GCStructure::from_symplectic(&standard_omega()).unwrap(),
            GCStructure::from_complex(&kodaira_thurston_complex()).unwrap(),
        ] {
            let proj = j.projectors().unwrap();
            let dims: i64 = proj.iter().map(|(_, p)| super::super::spectral::projector_rank(p) as i64).sum();
            assert_eq!(dims, 16);
            for e in j.eigenbundle() {
                let op = clifford_operator(&e);
                let off = component_by_step(&op, &proj, |a, b| b != a + 1);
                assert!(off.is_zero());
            }
        }
    }

    #[test]
    fn b_transform_preserves_type() {
        let b = two_form_matrix(4, &[(1, 2, 3), (2, 4, -1)]);
        let w = GCStructure::from_symplectic(&standard_omega()).unwrap();
        let t = w.b_transform(&b).unwrap();
        assert_eq!(t.type_of(), 0);
        let c = GCStructure::from_complex(&standard_complex()).unwrap();
        assert_eq!(c.b_transform(&b).unwrap().type_of(), 2);
        assert_eq!(c.b_transform(&Matrix::zeros(4, 4)).unwrap(), c);
    }
}
