//! Exterior and Clifford algebra over a frame: forms as spinors for `T ⊕ T*`.

pub mod clifford;
pub mod form;
pub mod spin;

pub use clifford::{
    clifford_act, clifford_operator, mukai_matrix, mukai_pairing, split_pairing, split_pairing_matrix,
    GeneralizedVector,
};
pub use form::{FormSpinor, Mask};
pub use spin::{b_field_exp, b_shear, group_exp, spin_rep, SoElement};

/// Reversal `σ`; degree `k` picks up `(-1)^(k(k-1)/2)`.
pub fn sigma_reverse<S: crate::scalar::Scalar>(rho: &FormSpinor<S>) -> FormSpinor<S> {
    rho.sigma()
}
