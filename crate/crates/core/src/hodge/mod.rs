//! Born–Infeld Hodge theory and the generalized Kähler Hodge decomposition.

pub mod bi;
pub mod cohomology;
pub mod ddj;
pub mod kahler;
pub mod laplace;

pub use bi::{bi_volume, BISpace};
pub use cohomology::{betti_numbers, twisted_betti};
pub use ddj::{ddj_check, lefschetz_check, DdjReport, LefschetzReport};
pub use kahler::{hodge_diamond, kahler_identities_check, pq_grading, split_dh, HodgeReport, IdentityReport, PQGrading};
pub use laplace::{dh_adjoint, gauge_check, harmonic_dims, laplacian, HarmonicDims};
