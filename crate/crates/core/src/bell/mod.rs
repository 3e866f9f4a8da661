//! Symbolic Bell-label calculus.
//!
//! Every state handled here is a mixture of tensor products of Bell states,
//! so it is fully described by a distribution over label strings. Local
//! Clifford gates permute labels; global phases are dropped, which is exact
//! at the level of density operators.

mod ensemble;
mod label;

pub use ensemble::{BellEnsemble, BellString, SetOutcome};
pub use label::BellLabel;
