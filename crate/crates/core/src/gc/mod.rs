//! Generalized complex structures, generalized metrics and generalized Kähler pairs.

pub mod metric;
pub mod pair;
pub mod spectral;
pub mod structure;

pub use metric::GenMetric;
pub use pair::{gk_validate, GKPair, GKReport};
pub use structure::{GCStructure, IntegrabilityReport};
