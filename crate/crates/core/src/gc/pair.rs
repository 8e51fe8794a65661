use super::metric::GenMetric;
use super::structure::GCStructure;
use crate::error::{GeometryError, Result};
use crate::frame::{Check, FrameSpec};

/// Two commuting generalized complex structures with `G = −J₁J₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct GKPair {
    pub j1: GCStructure,
    pub j2: GCStructure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GKReport {
    pub types: (usize, usize),
    pub checks: Vec<Check>,
    /// Present when `−J₁J₂` is a generalized metric.
    pub metric: Option<GenMetric>,
}

impl GKReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl GKPair {
    pub fn new(j1: GCStructure, j2: GCStructure) -> Result<Self> {
        if j1.dim() != j2.dim() {
            return Err(GeometryError::DimensionMismatch { expected: j1.dim(), found: j2.dim() });
        }
        Ok(GKPair { j1, j2 })
    }

    pub fn dim(&self) -> usize {
        self.j1.dim()
    }

    pub fn n(&self) -> usize {
        self.j1.n()
    }

    pub fn commutes(&self) -> bool {
        self.j1.block().commutator(self.j2.block()).is_zero()
    }

    /// `−J₁J₂` read as a generalized metric.
    pub fn metric(&self) -> Result<GenMetric> {
        if !self.commutes() {
            return Err(GeometryError::NotCommuting);
        }
        GenMetric::from_involution(&self.j1.block().mul(self.j2.block()).neg())
    }

    /// Commutation, metric, integrability of both factors and the type rules.
    pub fn validate(&self, frame: &FrameSpec) -> GKReport {
        let n = self.n();
        let types = (self.j1.type_of(), self.j2.type_of());
        let mut checks = Vec::new();
        checks.push(if self.commutes() {
            Check::pass("commuting")
        } else {
            Check::fail("commuting", "J1 J2 != J2 J1".into())
        });
        let metric = self.metric().ok();
        checks.push(match &metric {
            Some(_) => Check::pass("metric"),
            None => Check::fail("metric", "-J1 J2 is not a generalized metric".into()),
        });
        for (name, j) in [("J1 integrable", &self.j1), ("J2 integrable", &self.j2)] {
            checks.push(match j.check_integrability(frame) {
                Ok(r) if r.integrable => Check::pass(name),
                Ok(r) => {
                    let (a, b, _) = r.witness.expect("witness on failure");
                    Check::fail(name, format!("[E{}, E{}] leaves E", a + 1, b + 1))
                }
                Err(e) => Check::fail(name, e.to_string()),
            });
        }
        let sum = types.0 + types.1;
        checks.push(if sum % 2 == n % 2 {
            Check::pass("type parity")
        } else {
            Check::fail("type parity", format!("{} + {} != {n} mod 2", types.0, types.1))
        });
        checks.push(if sum <= n {
            Check::pass("type bound")
        } else {
            Check::fail("type bound", format!("{} + {} > {n}", types.0, types.1))
        });
        GKReport { types, checks, metric }
    }
}

/// Report-style entry point.
pub fn gk_validate(pair: &GKPair, frame: &FrameSpec) -> GKReport {
    pair.validate(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::library::*;
    use crate::matrix::Matrix;
    use crate::multilinear::spin::two_form_matrix;

    fn torus_pair() -> GKPair {
        GKPair::new(
            GCStructure::from_complex(&standard_complex()).unwrap(),
            GCStructure::from_symplectic(&standard_omega()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn standard_kahler_torus() {
        let pair = torus_pair();
        let report = gk_validate(&pair, &FrameSpec::abelian(4));
        assert!(report.all_passed(), "{:?}", report.checks);
        assert_eq!(report.types, (2, 0));
        let m = report.metric.unwrap();
        assert_eq!(m.g(), &Matrix::identity(4));
        assert!(m.b().is_zero());
        assert!(pair.j1.spin().commutator(&pair.j2.spin()).is_zero());
    }

    #[test]
    fn equal_structures_fail_metric() {
        let j = GCStructure::from_complex(&standard_complex()).unwrap();
        let report = GKPair::new(j.clone(), j).unwrap().validate(&FrameSpec::abelian(4));
        assert!(report.get("commuting").unwrap().passed);
        assert!(!report.get("metric").unwrap().passed);
    }

    #[test]
    fn product_pair_of_type_one_one() {
        let omega2 = two_form_matrix(2, &[(1, 2, 1)]);
        let c = GCStructure::from_complex(&omega2).unwrap();
        let s = GCStructure::from_symplectic(&omega2).unwrap();
        let j1 = c.direct_sum(&s).unwrap();
        let j2 = s.direct_sum(&c).unwrap();
        let report = GKPair::new(j1, j2).unwrap().validate(&FrameSpec::abelian(4));
        assert!(report.all_passed(), "{:?}", report.checks);
        assert_eq!(report.types, (1, 1));
    }

    #[test]
    fn b_transformed_pair_stays_valid() {
        let pair = torus_pair();
        let bp = two_form_matrix(4, &[(1, 2, 1), (2, 3, -2)]);
        let shifted = GKPair::new(pair.j1.b_transform(&bp).unwrap(), pair.j2.b_transform(&bp).unwrap()).unwrap();
        let report = shifted.validate(&FrameSpec::abelian(4));
        assert!(report.all_passed());
        assert_eq!(report.metric.unwrap().b(), &bp);
    }

    #[test]
    fn non_commuting_pair() {
        let j1 = GCStructure::from_complex(&standard_complex()).unwrap();
        let w = two_form_matrix(4, &[(1, 2, 1), (1, 4, 1), (3, 4, 1)]);
        let j2 = GCStructure::from_symplectic(&w).unwrap();
        let report = GKPair::new(j1, j2).unwrap().validate(&FrameSpec::abelian(4));
        assert!(!report.get("commuting").unwrap().passed);
        assert!(!report.all_passed());
    }
}
