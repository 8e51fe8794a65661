//! Dorfman and Courant brackets of invariant sections of `T ⊕ T*`.
//!
//! The bracket is defined as the derived bracket of `d_H = d + H∧`:
//! `[u, v]·ρ = [[d_H, u·], v·]ρ` with graded commutators. On constant
//! sections this expands to
//!
//! ```text
//! [X+ξ, Y+η] = [X,Y] + i_X dη − i_Y dξ − i_Y i_X H
//! ```
//!
//! [`derived_bracket`] evaluates the defining operator identity and is the
//! reference for [`dorfman_bracket`].

use num_traits::Zero;

use super::FrameSpec;
use crate::error::{GeometryError, Result};
use crate::matrix::{Matrix, OperatorMatrix};
use crate::multilinear::clifford::{clifford_operator, GeneralizedVector};
use crate::multilinear::form::{wedge_operator, FormSpinor, Mask};
use crate::multilinear::spin::b_shear;
use crate::scalar::{Cq, Q};

fn one_form_components(form: &FormSpinor<Cq>, dim: usize) -> Vec<Cq> {
    (0..dim).map(|i| form.coeff(1 << i)).collect()
}

fn check_dims(u: &GeneralizedVector<Cq>, v: &GeneralizedVector<Cq>, frame: &FrameSpec) -> Result<()> {
    for d in [u.dim(), v.dim()] {
        if d != frame.dim() {
            return Err(GeometryError::DimensionMismatch { expected: frame.dim(), found: d });
        }
    }
    Ok(())
}

/// Closed-form Dorfman bracket on constant sections.
pub fn dorfman_bracket(
    u: &GeneralizedVector<Cq>,
    v: &GeneralizedVector<Cq>,
    frame: &FrameSpec,
) -> Result<GeneralizedVector<Cq>> {
    check_dims(u, v, frame)?;
    dorfman_with_twist(u, v, frame, &frame.twist)
}

pub(crate) fn dorfman_with_twist(
    u: &GeneralizedVector<Cq>,
    v: &GeneralizedVector<Cq>,
    frame: &FrameSpec,
    twist: &FormSpinor<Cq>,
) -> Result<GeneralizedVector<Cq>> {
    let m = frame.dim();
    let vector = frame.bracket(&u.vector, &v.vector);
    let xi = FormSpinor::covector(m, &u.covector);
    let eta = FormSpinor::covector(m, &v.covector);
    let covector = frame
        .d(&eta)
        .contract(&u.vector)
        .sub(&frame.d(&xi).contract(&v.vector))
        .sub(&twist.contract(&u.vector).contract(&v.vector));
    Ok(GeneralizedVector::new(vector, one_form_components(&covector, m)))
}

/// Reads off `w` from an operator that should equal Clifford multiplication by `w`.
fn clifford_inverse(op: &OperatorMatrix, dim: usize) -> Result<GeneralizedVector<Cq>> {
    let vector = (0..dim).map(|i| op[(0, 1usize << i)].clone()).collect();
    let covector = (0..dim).map(|i| op[(1usize << i, 0)].clone()).collect();
    let w = GeneralizedVector::new(vector, covector);
    if &clifford_operator(&w) == op {
        Ok(w)
    } else {
        Err(GeometryError::NotGeneralizedVector)
    }
}

fn twisted_operator(frame: &FrameSpec, twist: &FormSpinor<Cq>) -> OperatorMatrix {
    let d = frame.constants.ce_operator();
    if twist.is_zero() {
        d
    } else {
        d.add(&wedge_operator(twist))
    }
}

/// Dorfman bracket computed as `[[d_H, u·], v·]`, acting on every basis spinor.
pub fn derived_bracket(
    u: &GeneralizedVector<Cq>,
    v: &GeneralizedVector<Cq>,
    frame: &FrameSpec,
) -> Result<GeneralizedVector<Cq>> {
    check_dims(u, v, frame)?;
    derived_with_operator(u, v, &twisted_operator(frame, &frame.twist))
}

fn derived_with_operator(
    u: &GeneralizedVector<Cq>,
    v: &GeneralizedVector<Cq>,
    dh: &OperatorMatrix,
) -> Result<GeneralizedVector<Cq>> {
    let uop = clifford_operator(u);
    let vop = clifford_operator(v);
    // d_H and u· are odd: anticommutator; the result is even, v· odd: commutator.
    let inner = dh.anticommutator(&uop);
    clifford_inverse(&inner.commutator(&vop), u.dim())
}

/// Antisymmetrized bracket `½([u,v] − [v,u])`.
pub fn courant_bracket(
    u: &GeneralizedVector<Cq>,
    v: &GeneralizedVector<Cq>,
    frame: &FrameSpec,
) -> Result<GeneralizedVector<Cq>> {
    let a = dorfman_bracket(u, v, frame)?;
    let b = dorfman_bracket(v, u, frame)?;
    let half = Cq::new(Q::new(1.into(), 2.into()), Q::zero());
    Ok(a.add(&b.scale(&-Cq::from(Q::from_integer(1.into())))).scale(&half))
}

/// Outcome of comparing `e^B[u,v]_H` against brackets of the sheared pair.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketSymmetryReport {
    pub b_closed: bool,
    /// `e^B[u,v]_H = [e^B u, e^B v]_H` on all basis pairs.
    pub automorphism: bool,
    /// `e^B[u,v]_H = [e^B u, e^B v]_{H−dB}` on all basis pairs.
    pub intertwines_shifted: bool,
    pub pairs_checked: usize,
    pub shifted_twist: FormSpinor<Cq>,
}

/// Checks how the shear `exp(B)` interacts with the bracket on all basis pairs.
pub fn bracket_symmetry_check(frame: &FrameSpec, b: &Matrix<Cq>) -> Result<BracketSymmetryReport> {
    let m = frame.dim();
    if b.rows() != m || !b.add(&b.transpose()).is_zero() {
        return Err(GeometryError::NotAntisymmetric);
    }
    let shear = b_shear(b);
    let b_form = FormSpinor::two_form(b);
    let db = frame.d(&b_form);
    let shifted = frame.twist.sub(&db);
    let basis = GeneralizedVector::<Cq>::basis(m);
    let mut automorphism = true;
    let mut intertwines = true;
    let mut pairs = 0;
    for u in &basis {
        for v in &basis {
            pairs += 1;
            let lhs = dorfman_with_twist(u, v, frame, &frame.twist)?.transform(&shear);
            let su = u.transform(&shear);
            let sv = v.transform(&shear);
            automorphism &= lhs == dorfman_with_twist(&su, &sv, frame, &frame.twist)?;
            intertwines &= lhs == dorfman_with_twist(&su, &sv, frame, &shifted)?;
        }
    }
    Ok(BracketSymmetryReport {
        b_closed: db.is_zero(),
        automorphism,
        intertwines_shifted: intertwines,
        pairs_checked: pairs,
        shifted_twist: shifted,
    })
}

/// Push-forward of a form under the covector map `ξ ↦ ξ ∘ φ⁻¹`, given as the
/// matrix `φ⁻ᵀ` acting on covector components.
fn push_forward(form: &FormSpinor<Cq>, covector_map: &Matrix<Cq>) -> FormSpinor<Cq> {
    let m = form.dim();
    let images: Vec<FormSpinor<Cq>> =
        (0..m).map(|i| FormSpinor::covector(m, &covector_map.column(i))).collect();
    let mut out = FormSpinor::zero(m);
    for (mask, c) in form.terms() {
        let mut term = FormSpinor::one(m);
        for (i, img) in images.iter().enumerate() {
            if mask & (1 << i) as Mask != 0 {
                term = term.wedge(img);
            }
        }
        out = out.add(&term.scale(c));
    }
    out
}

/// Frame automorphisms `φ` act on `T ⊕ T*` as `(φ, φ⁻ᵀ)`; this checks that they
/// carry `[,]_H` to `[,]_{φ·H}` on all basis pairs. Returns `Ok(false)` if `φ`
/// is not a Lie algebra automorphism.
pub fn frame_automorphism_check(frame: &FrameSpec, phi: &Matrix<Cq>) -> Result<bool> {
    let m = frame.dim();
    let Some(phi_inv) = phi.inverse() else {
        return Err(GeometryError::Degenerate);
    };
    let basis = GeneralizedVector::<Cq>::basis(m);
    for u in basis.iter().take(m) {
        for v in basis.iter().take(m) {
            let lhs = phi.mul_vec(&frame.bracket(&u.vector, &v.vector));
            let rhs = frame.bracket(&phi.mul_vec(&u.vector), &phi.mul_vec(&v.vector));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    let cov = phi_inv.transpose();
    let lift = Matrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
        (true, true) => phi[(i, j)].clone(),
        (false, false) => cov[(i - m, j - m)].clone(),
        _ => Cq::zero(),
    });
    let moved = push_forward(&frame.twist, &cov);
    for u in &basis {
        for v in &basis {
            let lhs = dorfman_with_twist(u, v, frame, &frame.twist)?.transform(&lift);
            let rhs = dorfman_with_twist(&u.transform(&lift), &v.transform(&lift), frame, &moved)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::library::*;
    use crate::multilinear::clifford::gv;
    use crate::multilinear::spin::two_form_matrix;
    use crate::scalar::cq;

    #[test]
    fn abelian_brackets_vanish() {
        let f = FrameSpec::abelian(4);
        for u in GeneralizedVector::<Cq>::basis(4) {
            for v in GeneralizedVector::<Cq>::basis(4) {
                assert!(dorfman_bracket(&u, &v, &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn twisted_abelian_bracket() {
        let f = abelian6_twisted();
        let e1 = GeneralizedVector::frame_vector(6, 1);
        let e2 = GeneralizedVector::frame_vector(6, 2);
        let w = dorfman_bracket(&e1, &e2, &f).unwrap();
        assert_eq!(w, GeneralizedVector::frame_covector(6, 3).scale(&cq(-1)));
        assert_eq!(derived_bracket(&e1, &e2, &f).unwrap(), w);
        assert_eq!(courant_bracket(&e1, &e2, &f).unwrap(), w);
    }

    #[test]
    fn kodaira_thurston_bracket() {
        let f = kodaira_thurston();
        let w = dorfman_bracket(&gv(&[1, 0, 0, 0], &[0; 4]), &gv(&[0, 1, 0, 0], &[0; 4]), &f).unwrap();
        assert_eq!(w, gv(&[0, 0, 1, 0], &[0; 4]));
    }

    #[test]
    fn closed_form_matches_derived_bracket() {
        for f in [kodaira_thurston(), abelian6_twisted(), hyperelliptic()] {
            let basis = GeneralizedVector::<Cq>::basis(f.dim());
            for u in &basis {
                for v in &basis {
                    assert_eq!(dorfman_bracket(u, v, &f).unwrap(), derived_bracket(u, v, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn courant_is_antisymmetric() {
        let f = kodaira_thurston();
        let u = gv(&[1, 2, 0, -1], &[0, 1, 1, 3]);
        assert!(courant_bracket(&u, &u, &f).unwrap().is_zero());
    }

    #[test]
    fn shear_symmetries() {
        let f = kodaira_thurston();
        let closed = two_form_matrix(4, &[(1, 2, 1), (1, 3, 2)]);
        let r = bracket_symmetry_check(&f, &closed).unwrap();
        assert!(r.b_closed && r.automorphism && r.intertwines_shifted);

        let b34 = two_form_matrix(4, &[(3, 4, 1)]);
        let r = bracket_symmetry_check(&f, &b34).unwrap();
        assert!(!r.b_closed);
        assert!(!r.automorphism);
        assert!(r.intertwines_shifted);

        let r = bracket_symmetry_check(&f, &Matrix::zeros(4, 4)).unwrap();
        assert!(r.automorphism);
    }

    #[test]
    fn frame_automorphisms() {
        let f = kodaira_thurston();
        // e1 -> 2e1, e2 -> e2, e3 -> 2e3 is an automorphism of [e1,e2] = e3
        let mut phi = Matrix::identity(4);
        phi[(0, 0)] = cq(2);
        phi[(2, 2)] = cq(2);
        assert!(frame_automorphism_check(&f, &phi).unwrap());
        let mut not_auto = Matrix::identity(4);
        not_auto[(0, 0)] = cq(2);
        assert!(!frame_automorphism_check(&f, &not_auto).unwrap());
        let twisted = abelian6_twisted();
        let mut scale = Matrix::identity(6);
        scale[(0, 0)] = cq(3);
        assert!(frame_automorphism_check(&twisted, &scale).unwrap());
    }
}
