//! `U_{p,q}` bigrading of a generalized Kähler pair, the four-way splitting of
//! `d_H`, the generalized Kähler identities and the Hodge diamond.

use std::collections::BTreeMap;

use crate::error::{GeometryError, Result};
use crate::float::{self, FMatrix};
use crate::gc::spectral::projector_rank;
use crate::gc::GKPair;
use crate::matrix::{Matrix, OperatorMatrix};

use super::bi::BISpace;
use super::cohomology::twisted_betti;
use super::laplace::{dh_adjoint, laplacian_of};

/// Joint eigenprojectors `U_{p,q}` of the spin actions of `J₁` and `J₂`.
#[derive(Clone, Debug)]
pub struct PQGrading {
    pub n: usize,
    pub projectors: BTreeMap<(i64, i64), OperatorMatrix>,
}

impl PQGrading {
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.projectors.keys().copied().collect()
    }

    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.projectors.iter().map(|(&k, p)| (k, projector_rank(p))).collect()
    }

    /// `|p| + |q| ≤ n` and `p + q ≡ n (mod 2)` on the support.
    pub fn support_in_diamond(&self) -> bool {
        let n = self.n as i64;
        self.support().iter().all(|&(p, q)| p.abs() + q.abs() <= n && (p + q - n).rem_euclid(2) == 0)
    }

    /// Idempotent, mutually annihilating and summing to the identity, exactly.
    pub fn is_resolution_of_identity(&self) -> bool {
        let Some(first) = self.projectors.values().next() else { return false };
        let size = first.rows();
        let mut sum = Matrix::zeros(size, size);
        for (a, pa) in &self.projectors {
            if pa.mul(pa) != *pa {
                return false;
            }
            for (b, pb) in &self.projectors {
                if a != b && !pa.mul(pb).is_zero() {
                    return false;
                }
            }
            sum = sum.add(pa);
        }
        sum == Matrix::identity(size)
    }
}

pub fn pq_grading(pair: &GKPair) -> Result<PQGrading> {
    let s1 = pair.j1.spin();
    let s2 = pair.j2.spin();
    if !s1.commutator(&s2).is_zero() {
        return Err(GeometryError::NotCommuting);
    }
    let u1 = pair.j1.projectors()?;
    let u2 = pair.j2.projectors()?;
    let mut projectors = BTreeMap::new();
    for (p, a) in &u1 {
        for (q, b) in &u2 {
            let joint = a.mul(b);
            if !joint.is_zero() {
                projectors.insert((*p, *q), joint);
            }
        }
    }
    Ok(PQGrading { n: pair.n(), projectors })
}

/// `d_H = δ₊ + δ₋ + δ̄₊ + δ̄₋` plus whatever moves `(p, q)` some other way.
#[derive(Clone, Debug)]
pub struct DhSplitting {
    /// `(p, q) → (p − 1, q − 1)`
    pub delta_plus: OperatorMatrix,
    /// `(p, q) → (p − 1, q + 1)`
    pub delta_minus: OperatorMatrix,
    /// `(p, q) → (p + 1, q + 1)`
    pub delta_bar_plus: OperatorMatrix,
    /// `(p, q) → (p + 1, q − 1)`
    pub delta_bar_minus: OperatorMatrix,
    /// Components off the four diagonal steps; zero for integrable pairs.
    pub residual: OperatorMatrix,
}

impl DhSplitting {
    /// `∂̄₁ = δ̄₊ + δ̄₋`
    pub fn dbar1(&self) -> OperatorMatrix {
        self.delta_bar_plus.add(&self.delta_bar_minus)
    }

    /// `∂₁ = δ₊ + δ₋`
    pub fn d1(&self) -> OperatorMatrix {
        self.delta_plus.add(&self.delta_minus)
    }

    /// `∂̄₂ = δ̄₊ + δ₋`
    pub fn dbar2(&self) -> OperatorMatrix {
        self.delta_bar_plus.add(&self.delta_minus)
    }

    /// `∂₂ = δ₊ + δ̄₋`
    pub fn d2(&self) -> OperatorMatrix {
        self.delta_plus.add(&self.delta_bar_minus)
    }

    pub fn sum(&self) -> OperatorMatrix {
        self.delta_plus.add(&self.delta_minus).add(&self.delta_bar_plus).add(&self.delta_bar_minus)
    }
}

/// Exact splitting by sandwiching `d_H` between joint projectors.
pub fn split_dh(grading: &PQGrading, dh: &OperatorMatrix) -> DhSplitting {
    let size = dh.rows();
    let mut parts: [OperatorMatrix; 5] = std::array::from_fn(|_| Matrix::zeros(size, size));
    for (&(p, q), pa) in &grading.projectors {
        let dpa = dh.mul(pa);
        if dpa.is_zero() {
            continue;
        }
        for (&(p2, q2), pb) in &grading.projectors {
            let slot = match (p2 - p, q2 - q) {
                (-1, -1) => 0,
                (-1, 1) => 1,
                (1, 1) => 2,
                (1, -1) => 3,
                _ => 4,
            };
            let piece = pb.mul(&dpa);
            if !piece.is_zero() {
                parts[slot] = parts[slot].add(&piece);
            }
        }
    }
    let [delta_plus, delta_minus, delta_bar_plus, delta_bar_minus, residual] = parts;
    DhSplitting { delta_plus, delta_minus, delta_bar_plus, delta_bar_minus, residual }
}

/// Operator-norm residuals of the identities and the Laplacian chain.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    /// `‖d_H − (δ₊ + δ₋ + δ̄₊ + δ̄₋)‖`
    pub splitting: f64,
    /// `‖δ̄₊* + δ₊‖`
    pub plus: f64,
    /// `‖δ̄₋* − δ₋‖`
    pub minus: f64,
    /// `‖Δ_d − 2Δ_X‖` or `‖Δ_d − 4Δ_X‖` for each first-order piece `X`.
    pub laplacians: Vec<(String, f64)>,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.laplacians.iter().map(|(_, r)| *r).fold(self.splitting.max(self.plus).max(self.minus), f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

pub fn kahler_identities_check(space: &BISpace, split: &DhSplitting) -> Result<IdentityReport> {
    let adj = |t: &OperatorMatrix| -> (FMatrix, FMatrix) {
        let f = t.to_float();
        let a = space.gram_adjoint(&f);
        (f, a)
    };
    let splitting = float::op_norm(&split.residual.to_float());
    let (_, dbp_star) = adj(&split.delta_bar_plus);
    let (_, dbm_star) = adj(&split.delta_bar_minus);
    let plus = float::op_norm(&(dbp_star + split.delta_plus.to_float()));
    let minus = float::op_norm(&(dbm_star - split.delta_minus.to_float()));
    let d_star = dh_adjoint(space)?.formula;
    let lap_d = laplacian_of(space.dh_float(), &d_star);
    let mut laplacians = Vec::new();
    let pieces: [(&str, OperatorMatrix, f64); 8] = [
        ("dbar1", split.dbar1(), 2.0),
        ("d1", split.d1(), 2.0),
        ("dbar2", split.dbar2(), 2.0),
        ("d2", split.d2(), 2.0),
        ("delta_bar_plus", split.delta_bar_plus.clone(), 4.0),
        ("delta_bar_minus", split.delta_bar_minus.clone(), 4.0),
        ("delta_plus", split.delta_plus.clone(), 4.0),
        ("delta_minus", split.delta_minus.clone(), 4.0),
    ];
    for (name, op, factor) in pieces {
        let (f, a) = adj(&op);
        let lap = laplacian_of(&f, &a);
        laplacians.push((name.to_string(), float::distance(&lap_d, &lap.scale(factor))));
    }
    Ok(IdentityReport { splitting, plus, minus, laplacians })
}

/// Outcome of the Betti-parity corollary.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityCheck {
    /// Which Betti numbers the corollary forces to be even.
    pub claim: &'static str,
    pub holds: bool,
}

/// Dimension `4k+2`: both `b^ev` and `b^od` even. Dimension `4k`: types of
/// parity (odd, odd) force `b^ev` even, (even, even) force `b^od` even.
pub fn parity_corollary(dim: usize, types: (usize, usize), b_ev: usize, b_od: usize) -> ParityCheck {
    if dim % 4 == 2 {
        return ParityCheck { claim: "b_ev and b_od even", holds: b_ev % 2 == 0 && b_od % 2 == 0 };
    }
    match (types.0 % 2, types.1 % 2) {
        (1, 1) => ParityCheck { claim: "b_ev even", holds: b_ev % 2 == 0 },
        (0, 0) => ParityCheck { claim: "b_od even", holds: b_od % 2 == 0 },
        _ => ParityCheck { claim: "types of mixed parity", holds: false },
    }
}

#[derive(Clone, Debug)]
pub struct HodgeReport {
    /// `dim ℋ^{p,q}` over the support of the grading.
    pub harmonic: BTreeMap<(i64, i64), usize>,
    pub total: usize,
    /// Exact twisted Betti numbers.
    pub b_even: usize,
    pub b_odd: usize,
    pub conjugation_symmetric: bool,
    /// `(p, q)`-pure forms are closed exactly when co-closed.
    pub closed_iff_coclosed: bool,
    pub types: (usize, usize),
    pub parity: ParityCheck,
}

impl HodgeReport {
    pub fn matches_betti(&self) -> bool {
        self.total == self.b_even + self.b_odd
    }
}

/// Orthonormal basis of the image of an exact projector, as float columns.
fn image_basis(p: &OperatorMatrix) -> FMatrix {
    let pivots = p.rref().pivots;
    let cols: Vec<Vec<_>> = pivots.iter().map(|&j| p.column(j)).collect();
    let b = Matrix::from_columns(&cols).to_float();
    b.qr().q()
}

pub fn hodge_diamond(pair: &GKPair, space: &BISpace, grading: &PQGrading, tol: f64) -> Result<HodgeReport> {
    let d = space.dh_float();
    let d_star = dh_adjoint(space)?.formula;
    let lap = laplacian_of(d, &d_star);
    let lap_scale = float::op_norm(&lap);
    let d_scale = float::op_norm(d);
    let mut harmonic = BTreeMap::new();
    let mut closed_iff_coclosed = true;
    for (&pq, p) in &grading.projectors {
        let basis = image_basis(p);
        let h = float::kernel_dim(&(&lap * &basis), tol, Some(lap_scale));
        let closed = float::kernel_dim(&(d * &basis), tol, Some(d_scale));
        let coclosed = float::kernel_dim(&(&d_star * &basis), tol, Some(d_scale));
        closed_iff_coclosed &= closed == h && coclosed == h;
        harmonic.insert(pq, h);
    }
    let conjugation_symmetric = harmonic.iter().all(|(&(p, q), &h)| harmonic.get(&(-p, -q)).copied().unwrap_or(0) == h);
    let total = harmonic.values().sum();
    let (b_even, b_odd) = twisted_betti(space.frame())?;
    let types = (pair.j1.type_of(), pair.j2.type_of());
    let parity = parity_corollary(space.dim(), types, b_even, b_odd);
    Ok(HodgeReport { harmonic, total, b_even, b_odd, conjugation_symmetric, closed_iff_coclosed, types, parity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::DEFAULT_TOL;
    use crate::frame::library::*;
    use crate::frame::{FrameSpec, StructureSpec};
    use crate::gc::{GCStructure, GenMetric};
    use crate::multilinear::spin::two_form_matrix;
    use crate::scalar::cq;

    fn pair_from(frame: &FrameSpec) -> GKPair {
        let j: Vec<GCStructure> = frame.structures.iter().map(|s| GCStructure::from_spec(s).unwrap()).collect();
        GKPair::new(j[0].clone(), j[1].clone()).unwrap()
    }

    fn setup(frame: &FrameSpec) -> (GKPair, BISpace, PQGrading, DhSplitting) {
        let pair = pair_from(frame);
        let metric = pair.metric().unwrap();
        let space = BISpace::new(frame, &metric).unwrap();
        let grading = pq_grading(&pair).unwrap();
        let split = split_dh(&grading, space.dh());
        (pair, space, grading, split)
    }

    #[test]
    fn torus_grading() {
        let (pair, _, grading, _) = setup(&torus_kahler());
        assert!(grading.support_in_diamond());
        assert!(grading.is_resolution_of_identity());
        let dims = grading.dims();
        assert_eq!(dims.values().sum::<usize>(), 16);
        let expected: Vec<(i64, i64)> =
            vec![(-2, 0), (-1, -1), (-1, 1), (0, -2), (0, 0), (0, 2), (1, -1), (1, 1), (2, 0)];
        assert_eq!(grading.support(), expected);
        assert_eq!(dims[&(2, 0)], 1);
        assert_eq!(dims[&(0, 0)], 4);
        assert_eq!(dims[&(1, 1)], 2);
        // U_{2,0} is the top eigenline of J₁
        let top = pair.j1.projectors().unwrap().into_iter().find(|(k, _)| *k == 2).unwrap().1;
        assert_eq!(top, grading.projectors[&(2, 0)]);
    }

    #[test]
    fn grading_is_orthogonal_for_h() {
        for frame in [torus_kahler(), hyperelliptic()] {
            let (_, space, grading, _) = setup(&frame);
            for (a, pa) in &grading.projectors {
                for (b, pb) in &grading.projectors {
                    if a != b {
                        let m = pa.to_float().transpose() * space.gram() * pb.to_float().map(|z| z.conj());
                        assert!(float::op_norm(&m) < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn splitting_is_exact_for_integrable_pairs() {
        for frame in [torus_kahler(), hyperelliptic()] {
            let (_, space, _, split) = setup(&frame);
            assert!(split.residual.is_zero());
            assert_eq!(&split.sum(), space.dh());
            for op in [&split.delta_plus, &split.delta_minus, &split.delta_bar_plus, &split.delta_bar_minus] {
                assert!(op.mul(op).is_zero());
            }
        }
    }

    #[test]
    fn identities_on_flat_and_curved_frames() {
        for frame in [torus_kahler(), hyperelliptic()] {
            let (_, space, _, split) = setup(&frame);
            let report = kahler_identities_check(&space, &split).unwrap();
            assert!(report.passes(1e-9), "{}: {report:?}", frame.name);
        }
        // the hyperelliptic frame has d ≠ 0, so the identities carry content there
        let (_, _, _, split) = setup(&hyperelliptic());
        assert!(!split.delta_bar_plus.is_zero() || !split.delta_bar_minus.is_zero());
    }

    #[test]
    fn perturbed_metric_breaks_identities() {
        let frame = hyperelliptic();
        let (_, _, _, split) = setup(&frame);
        let g = Matrix::from_rows(vec![
            vec![cq(1), cq(0), cq(0), cq(0)],
            vec![cq(0), cq(2), cq(0), cq(0)],
            vec![cq(0), cq(0), cq(1), cq(0)],
            vec![cq(0), cq(0), cq(0), cq(1)],
        ]);
        let space = BISpace::new(&frame, &GenMetric::new(&g, &Matrix::zeros(4, 4)).unwrap()).unwrap();
        let report = kahler_identities_check(&space, &split).unwrap();
        assert!(report.max_residual() > 1e-3);
    }

    #[test]
    fn torus_diamond() {
        let (pair, space, grading, _) = setup(&torus_kahler());
        let report = hodge_diamond(&pair, &space, &grading, DEFAULT_TOL).unwrap();
        assert_eq!(report.total, 16);
        assert_eq!((report.b_even, report.b_odd), (8, 8));
        assert!(report.matches_betti());
        assert!(report.conjugation_symmetric);
        assert!(report.closed_iff_coclosed);
        assert_eq!(report.types, (2, 0));
        assert_eq!(report.parity, ParityCheck { claim: "b_od even", holds: true });
    }

    #[test]
    fn hyperelliptic_diamond() {
        let (pair, space, grading, _) = setup(&hyperelliptic());
        let report = hodge_diamond(&pair, &space, &grading, DEFAULT_TOL).unwrap();
        assert_eq!(report.total, 8);
        assert!(report.matches_betti());
        assert!(report.conjugation_symmetric);
        assert!(report.closed_iff_coclosed);
        assert!(report.parity.holds);
    }

    #[test]
    fn product_pair_of_type_one_one() {
        let omega2 = two_form_matrix(2, &[(1, 2, 1)]);
        let c = GCStructure::from_complex(&omega2).unwrap();
        let s = GCStructure::from_symplectic(&omega2).unwrap();
        let frame = FrameSpec::abelian(4)
            .with_structure(StructureSpec::Explicit(c.direct_sum(&s).unwrap().block().clone()))
            .with_structure(StructureSpec::Explicit(s.direct_sum(&c).unwrap().block().clone()));
        let (pair, space, grading, split) = setup(&frame);
        assert!(grading.support_in_diamond());
        assert!(split.residual.is_zero());
        let report = hodge_diamond(&pair, &space, &grading, DEFAULT_TOL).unwrap();
        assert_eq!(report.types, (1, 1));
        assert_eq!(report.total, 16);
        assert_eq!(report.parity, ParityCheck { claim: "b_ev even", holds: true });
    }

    #[test]
    fn parity_rules() {
        assert!(parity_corollary(6, (3, 0), 4, 4).holds);
        assert!(!parity_corollary(6, (3, 0), 3, 4).holds);
        assert!(!parity_corollary(4, (1, 1), 3, 2).holds);
        assert!(parity_corollary(4, (2, 0), 3, 2).holds);
    }
}
