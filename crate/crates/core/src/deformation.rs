//! The Lie algebroid complex `(∧•E*, d_E)` of an integrable generalized complex
//! structure and its Gerstenhaber bracket.
//!
//! Cochains are forms on `E` written in the basis dual to a chosen basis
//! `E_1, …, E_r`. `E*` is realized as `Ē` through `2⟨·,·⟩`, which makes the dual
//! basis pair to exactly 1.

use crate::error::{GeometryError, Result};
use crate::frame::bracket::dorfman_bracket;
use crate::frame::{FrameSpec, StructureConstants};
use crate::gc::GCStructure;
use crate::hodge::cohomology::block_cohomology;
use crate::matrix::{Matrix, OperatorMatrix};
use crate::multilinear::clifford::{split_pairing, GeneralizedVector};
use crate::multilinear::form::{degree, masks_of_degree, FormSpinor, Mask};
use crate::scalar::{cq, Cq};

pub type Cochain = FormSpinor<Cq>;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidComplex {
    basis: Vec<GeneralizedVector<Cq>>,
    constants: StructureConstants,
    dual_constants: StructureConstants,
    d: OperatorMatrix,
}

/// Coordinates of `w` in `basis`, if it lies in their span.
fn coordinates(basis: &[GeneralizedVector<Cq>], w: &GeneralizedVector<Cq>) -> Option<Vec<Cq>> {
    let cols: Vec<Vec<Cq>> = basis.iter().map(GeneralizedVector::stacked).collect();
    Matrix::from_columns(&cols).solve(&w.stacked())
}

/// Structure constants of the bracket restricted to the span of `basis`.
fn restricted_constants(basis: &[GeneralizedVector<Cq>], frame: &FrameSpec) -> Result<StructureConstants> {
    let r = basis.len();
    let mut c = StructureConstants::zero(r);
    for (a, u) in basis.iter().enumerate() {
        for (b, v) in basis.iter().enumerate() {
            let w = dorfman_bracket(u, v, frame)?;
            let coords = coordinates(basis, &w)
                .ok_or_else(|| GeometryError::NotIntegrable(format!("[E{}, E{}] leaves the span", a + 1, b + 1)))?;
            for (k, x) in coords.into_iter().enumerate() {
                c.set_raw(a, b, k, x);
            }
        }
    }
    Ok(c)
}

impl AlgebroidComplex {
    /// Uses the exact `+i` eigenbundle basis; fails unless the structure is integrable.
    pub fn build(j: &GCStructure, frame: &FrameSpec) -> Result<Self> {
        let report = j.check_integrability(frame)?;
        if let Some((a, b, _)) = report.witness {
            return Err(GeometryError::NotIntegrable(format!("[E{}, E{}] leaves E", a + 1, b + 1)));
        }
        Self::from_basis(j.eigenbundle(), frame)
    }

    /// Any basis of an isotropic, bracket-closed subbundle with `E ∩ Ē = 0`.
    pub fn from_basis(basis: Vec<GeneralizedVector<Cq>>, frame: &FrameSpec) -> Result<Self> {
        let r = basis.len();
        let constants = restricted_constants(&basis, frame)?;
        // θ^b = Σ_a Q_ab Ē_a with 2⟨θ^b, E_c⟩ = δ_bc
        let conj: Vec<GeneralizedVector<Cq>> = basis.iter().map(GeneralizedVector::conj).collect();
        let p = Matrix::from_fn(r, r, |a, b| cq(2) * split_pairing(&conj[a], &basis[b]).expect("same dimension"));
        let q = p.transpose().inverse().ok_or(GeometryError::Degenerate)?;
        let dual: Vec<GeneralizedVector<Cq>> = (0..r)
            .map(|b| (0..r).fold(GeneralizedVector::zero(frame.dim()), |acc, a| acc.add(&conj[a].scale(&q[(a, b)]))))
            .collect();
        let dual_constants = restricted_constants(&dual, frame)?;
        let d = constants.ce_operator();
        Ok(AlgebroidComplex { basis, constants, dual_constants, d })
    }

    pub fn basis(&self) -> &[GeneralizedVector<Cq>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// `d_E` on all of `∧•E*`.
    pub fn differential(&self) -> &OperatorMatrix {
        &self.d
    }

    pub fn is_differential(&self) -> bool {
        self.d.mul(&self.d).is_zero()
    }

    /// Jacobi identity of the restricted bracket.
    pub fn satisfies_jacobi(&self) -> bool {
        self.constants.jacobi_witness().is_none()
    }

    /// `dim H^k(ℰ)`.
    pub fn cohomology(&self, k: usize) -> Result<usize> {
        let r = self.rank();
        if k > r {
            return Err(GeometryError::DegreeOutOfRange { degree: k, max: r });
        }
        Ok(self.all_cohomology()[k])
    }

    pub fn all_cohomology(&self) -> Vec<usize> {
        let r = self.rank();
        let blocks: Vec<Vec<usize>> = (0..=r).map(|k| masks_of_degree(r, k)).collect();
        block_cohomology(&self.d, &blocks)
    }

    pub fn apply_d(&self, a: &Cochain) -> Result<Cochain> {
        self.check(a)?;
        Ok(FormSpinor::apply(&self.d, a))
    }

    fn check(&self, a: &Cochain) -> Result<()> {
        if a.dim() != self.rank() {
            return Err(GeometryError::MismatchedComplex);
        }
        Ok(())
    }

    /// `[θ^i, θ^j]` in the dual basis, as a 1-cochain.
    fn dual_bracket(&self, i: usize, j: usize) -> Cochain {
        let r = self.rank();
        let mut out = FormSpinor::zero(r);
        for k in 0..r {
            let c = self.dual_constants.get(k, i, j);
            out.add_term(1 << k, c.clone());
        }
        out
    }

    fn schouten_monomials(&self, x: Mask, y: Mask) -> Cochain {
        let r = self.rank();
        let xs: Vec<usize> = (0..r).filter(|i| x & (1 << i) != 0).collect();
        let ys: Vec<usize> = (0..r).filter(|i| y & (1 << i) != 0).collect();
        let mut out = FormSpinor::zero(r);
        for (s, &i) in xs.iter().enumerate() {
            for (t, &j) in ys.iter().enumerate() {
                let br = self.dual_bracket(i, j);
                if br.is_zero() {
                    continue;
                }
                let rest_x = FormSpinor::basis(r, x & !(1 << i));
                let rest_y = FormSpinor::basis(r, y & !(1 << j));
                let mut term = br.wedge(&rest_x).wedge(&rest_y);
                if (s + t) % 2 == 1 {
                    term = term.scale(&cq(-1));
                }
                out = out.add(&term);
            }
        }
        out
    }

    /// Schouten extension of the bracket on `Ē ≅ E*`:
    /// `[x₁⋯x_p, y₁⋯y_q] = Σ (−1)^{i+j} [x_i, y_j] x₁⋯x̂_i⋯x_p y₁⋯ŷ_j⋯y_q`.
    pub fn gerstenhaber_bracket(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        self.check(a)?;
        self.check(b)?;
        let mut out = FormSpinor::zero(self.rank());
        for (x, ca) in a.terms() {
            for (y, cb) in b.terms() {
                let term = self.schouten_monomials(x, y);
                if !term.is_zero() {
                    out = out.add(&term.scale(&(ca.clone() * cb.clone())));
                }
            }
        }
        Ok(out)
    }
}

/// Cohomology of the three bidegree pieces of `H²(ℰ)` for a complex structure:
/// bivectors, vector-valued `(0,1)`-forms and `(0,2)`-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct H2Decomposition {
    pub bivectors: usize,
    pub vector_forms: usize,
    pub forms: usize,
}

impl H2Decomposition {
    pub fn total(&self) -> usize {
        self.bivectors + self.vector_forms + self.forms
    }
}

/// Basis of `E = T_{0,1} ⊕ T*_{1,0}` with the vector part first, and its length.
fn split_complex_basis(j: &GCStructure) -> Result<(Vec<GeneralizedVector<Cq>>, usize)> {
    let so = j.so_element();
    if !so.beta.is_zero() || !so.b.is_zero() {
        return Err(GeometryError::NotComplexType);
    }
    let m = j.dim();
    let shifted = j.block().sub(&Matrix::scalar(2 * m, crate::scalar::cq_i()));
    let all: Vec<usize> = (0..2 * m).collect();
    let lift = |cols: &[usize], v: Vec<Cq>| {
        let mut full = vec![cq(0); 2 * m];
        for (i, &c) in cols.iter().enumerate() {
            full[c] = v[i].clone();
        }
        GeneralizedVector::from_stacked(&full)
    };
    let vec_cols: Vec<usize> = (0..m).collect();
    let cov_cols: Vec<usize> = (m..2 * m).collect();
    let vectors: Vec<_> = shifted.select(&all, &vec_cols).kernel().into_iter().map(|v| lift(&vec_cols, v)).collect();
    let covectors: Vec<_> = shifted.select(&all, &cov_cols).kernel().into_iter().map(|v| lift(&cov_cols, v)).collect();
    let nv = vectors.len();
    let mut basis = vectors;
    basis.extend(covectors);
    if basis.len() != m {
        return Err(GeometryError::NotComplexType);
    }
    Ok((basis, nv))
}

pub fn decompose_h2_complex_case(j: &GCStructure, frame: &FrameSpec) -> Result<H2Decomposition> {
    let (basis, nv) = split_complex_basis(j)?;
    if !j.is_integrable(frame)? {
        return Err(GeometryError::NotIntegrable("complex structure".into()));
    }
    let cx = AlgebroidComplex::from_basis(basis, frame)?;
    let r = cx.rank();
    let multivector_degree = |mask: usize| degree((mask >> nv) as Mask);
    for col in 0..1usize << r {
        let s = multivector_degree(col);
        for row in 0..1usize << r {
            if !num_traits::Zero::is_zero(&cx.d[(row, col)]) && multivector_degree(row) != s {
                return Err(GeometryError::NotBigraded);
            }
        }
    }
    let all: Vec<usize> = (0..1usize << r).collect();
    let piece = |s: usize| {
        let block: Vec<usize> = masks_of_degree(r, 2).into_iter().filter(|&m| multivector_degree(m) == s).collect();
        if block.is_empty() {
            return 0;
        }
        block.len() - cx.d.select(&all, &block).rank() - cx.d.select(&block, &all).rank()
    };
    Ok(H2Decomposition { bivectors: piece(2), vector_forms: piece(1), forms: piece(0) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationReport {
    /// `dim H^k(ℰ)` for `k = 0..=2n`.
    pub dims: Vec<usize>,
    pub symmetries: usize,
    pub deformations: usize,
    pub obstructions: usize,
    pub euler_characteristic: i64,
    pub d_squared_zero: bool,
    pub jacobi: bool,
    /// Present for structures of complex type whose `d_E` respects the multivector degree.
    pub h2_split: Option<H2Decomposition>,
}

impl DeformationReport {
    pub fn unobstructed(&self) -> bool {
        self.obstructions == 0
    }
}

pub fn deformation_report(j: &GCStructure, frame: &FrameSpec) -> Result<DeformationReport> {
    let cx = AlgebroidComplex::build(j, frame)?;
    let dims = cx.all_cohomology();
    let euler_characteristic =
        dims.iter().enumerate().map(|(k, &h)| if k % 2 == 0 { h as i64 } else { -(h as i64) }).sum();
    let h2_split = match decompose_h2_complex_case(j, frame) {
        Ok(s) => Some(s),
        Err(GeometryError::NotComplexType | GeometryError::NotBigraded) => None,
        Err(e) => return Err(e),
    };
    Ok(DeformationReport {
        symmetries: dims.get(1).copied().unwrap_or(0),
        deformations: dims.get(2).copied().unwrap_or(0),
        obstructions: dims.get(3).copied().unwrap_or(0),
        dims,
        euler_characteristic,
        d_squared_zero: cx.is_differential(),
        jacobi: cx.satisfies_jacobi(),
        h2_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::library::*;
    use crate::hodge::betti_numbers;
    use crate::scalar::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cochain(rng: &mut ChaCha8Rng, r: usize, k: usize) -> Cochain {
        let terms = masks_of_degree(r, k)
            .into_iter()
            .map(|m| (m as Mask, Cq::new(q(rng.gen_range(-3i64..=3)), q(rng.gen_range(-2i64..=2)))));
        FormSpinor::from_terms(r, terms)
    }

    fn sign(k: usize) -> Cq {
        if k % 2 == 0 {
            cq(1)
        } else {
            cq(-1)
        }
    }

    #[test]
    fn flat_torus_complexes() {
        let torus = FrameSpec::abelian(4);
        let c = GCStructure::from_complex(&standard_complex()).unwrap();
        let cx = AlgebroidComplex::build(&c, &torus).unwrap();
        assert!(cx.differential().is_zero());
        assert_eq!(cx.all_cohomology(), vec![1, 4, 6, 4, 1]);
        let split = decompose_h2_complex_case(&c, &torus).unwrap();
        assert_eq!(split, H2Decomposition { bivectors: 1, vector_forms: 4, forms: 1 });
        let s = GCStructure::from_symplectic(&standard_omega()).unwrap();
        let report = deformation_report(&s, &torus).unwrap();
        assert_eq!(report.deformations, 6);
        assert!(report.h2_split.is_none());
        assert_eq!(decompose_h2_complex_case(&s, &torus), Err(GeometryError::NotComplexType));
    }

    #[test]
    fn complex_torus_report() {
        let c = GCStructure::from_complex(&standard_complex()).unwrap();
        let report = deformation_report(&c, &FrameSpec::abelian(4)).unwrap();
        assert_eq!((report.deformations, report.obstructions), (6, 4));
        assert!(!report.unobstructed());
        assert_eq!(report.euler_characteristic, 0);
    }

    /// For symplectic type, `X ↦ X − i ι_X ω` is an algebroid isomorphism
    /// `T ⊗ ℂ → E`, so `H•(ℰ)` is the de Rham cohomology of the frame.
    #[test]
    fn symplectic_complex_is_de_rham() {
        for (frame, w) in [(kodaira_thurston(), kodaira_thurston_omega()), (FrameSpec::abelian(4), standard_omega())] {
            let s = GCStructure::from_symplectic(&w).unwrap();
            let cx = AlgebroidComplex::build(&s, &frame).unwrap();
            assert!(cx.is_differential());
            assert_eq!(cx.all_cohomology(), betti_numbers(&frame).unwrap());
        }
    }

    #[test]
    fn nilmanifold_complex_structure() {
        let kt = kodaira_thurston();
        let c = GCStructure::from_complex(&kodaira_thurston_complex()).unwrap();
        let report = deformation_report(&c, &kt).unwrap();
        assert!(report.d_squared_zero && report.jacobi);
        assert_eq!(report.euler_characteristic, 0);
        let split = report.h2_split.unwrap();
        assert_eq!(split.total(), report.deformations);
        let bad = GCStructure::from_complex(&kodaira_thurston_bad_complex()).unwrap();
        assert!(matches!(AlgebroidComplex::build(&bad, &kt), Err(GeometryError::NotIntegrable(_))));
    }

    #[test]
    fn twist_breaks_the_bigrading() {
        let frame = abelian4_twisted();
        let c = GCStructure::from_complex(&standard_complex()).unwrap();
        assert_eq!(decompose_h2_complex_case(&c, &frame), Err(GeometryError::NotBigraded));
        let report = deformation_report(&c, &frame).unwrap();
        assert!(report.d_squared_zero && report.jacobi && report.h2_split.is_none());
        assert_eq!(report.euler_characteristic, 0);
    }

    #[test]
    fn dims_do_not_depend_on_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (frame, j) in [
            (kodaira_thurston(), GCStructure::from_complex(&kodaira_thurston_complex()).unwrap()),
            (kodaira_thurston(), GCStructure::from_symplectic(&kodaira_thurston_omega()).unwrap()),
            (hyperelliptic(), GCStructure::from_spec(&hyperelliptic().structures[0]).unwrap()),
        ] {
            let cx = AlgebroidComplex::build(&j, &frame).unwrap();
            let e = j.eigenbundle();
            let change = loop {
                let m = Matrix::from_fn(4, 4, |_, _| Cq::new(q(rng.gen_range(-3i64..=3)), q(rng.gen_range(-1i64..=1))));
                if m.inverse().is_some() {
                    break m;
                }
            };
            let rebased: Vec<_> = (0..4)
                .map(|b| (0..4).fold(GeneralizedVector::zero(4), |acc, a| acc.add(&e[a].scale(&change[(a, b)]))))
                .collect();
            let cx2 = AlgebroidComplex::from_basis(rebased, &frame).unwrap();
            assert!(cx2.is_differential() && cx2.satisfies_jacobi());
            assert_eq!(cx.all_cohomology(), cx2.all_cohomology());
        }
    }

    #[test]
    fn degree_out_of_range() {
        let c = GCStructure::from_complex(&standard_complex()).unwrap();
        let cx = AlgebroidComplex::build(&c, &FrameSpec::abelian(4)).unwrap();
        assert_eq!(cx.cohomology(5), Err(GeometryError::DegreeOutOfRange { degree: 5, max: 4 }));
        assert_eq!(cx.cohomology(0), Ok(1));
    }

    #[test]
    fn bracket_vanishes_on_flat_torus() {
        let c = GCStructure::from_complex(&standard_complex()).unwrap();
        let cx = AlgebroidComplex::build(&c, &FrameSpec::abelian(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_cochain(&mut rng, 4, 1);
        let b = random_cochain(&mut rng, 4, 1);
        assert!(cx.gerstenhaber_bracket(&a, &b).unwrap().is_zero());
        assert_eq!(cx.gerstenhaber_bracket(&a, &FormSpinor::zero(2)), Err(GeometryError::MismatchedComplex));
    }

    #[test]
    fn gerstenhaber_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let kt = kodaira_thurston();
        for j in [
            GCStructure::from_complex(&kodaira_thurston_complex()).unwrap(),
            GCStructure::from_symplectic(&kodaira_thurston_omega()).unwrap(),
        ] {
            let cx = AlgebroidComplex::build(&j, &kt).unwrap();
            let mut nontrivial = false;
            for _ in 0..12 {
                let (p, q, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=2));
                let a = random_cochain(&mut rng, 4, p);
                let b = random_cochain(&mut rng, 4, q);
                let c = random_cochain(&mut rng, 4, s);
                let ab = cx.gerstenhaber_bracket(&a, &b).unwrap();
                nontrivial |= !ab.is_zero();
                // graded antisymmetry with shifted degrees p−1, q−1
                let ba = cx.gerstenhaber_bracket(&b, &a).unwrap();
                assert_eq!(ab, ba.scale(&-sign((p - 1) * (q - 1))));
                // Leibniz: d[a,b] = [da,b] + (−1)^{p−1}[a,db]
                let lhs = cx.apply_d(&ab).unwrap();
                let rhs = cx
                    .gerstenhaber_bracket(&cx.apply_d(&a).unwrap(), &b)
                    .unwrap()
                    .add(&cx.gerstenhaber_bracket(&a, &cx.apply_d(&b).unwrap()).unwrap().scale(&sign(p - 1)));
                assert_eq!(lhs, rhs);
                // graded Jacobi: [a,[b,c]] = [[a,b],c] + (−1)^{(p−1)(q−1)}[b,[a,c]]
                let left = cx.gerstenhaber_bracket(&a, &cx.gerstenhaber_bracket(&b, &c).unwrap()).unwrap();
                let right = cx
                    .gerstenhaber_bracket(&ab, &c)
                    .unwrap()
                    .add(&cx.gerstenhaber_bracket(&b, &cx.gerstenhaber_bracket(&a, &c).unwrap()).unwrap().scale(&sign((p - 1) * (q - 1))));
                assert_eq!(left, right);
            }
            assert!(nontrivial);
            // odd form degree: even shifted degree forces [a, a] = 0
            let a = random_cochain(&mut rng, 4, 1);
            assert!(cx.gerstenhaber_bracket(&a, &a).unwrap().is_zero());
        }
    }
}
