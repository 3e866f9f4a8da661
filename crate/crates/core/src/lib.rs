//! Exact simulation of LOCC protocols on Bell states.
//!
//! Two engines are provided: a symbolic calculus over Bell-label strings
//! ([`bell`]) that scales to arbitrary numbers of pairs, and a dense
//! state-vector oracle ([`dense`]) used to certify it on small registers.
//! [`protocols`] runs cloning, preparation, teleportation and distillation
//! on both, and [`measures`] evaluates the associated entanglement figures.

pub mod bell;
pub mod claims;
pub mod dense;
pub mod error;
pub mod format;
pub mod measures;
pub mod protocols;
pub mod tol;

pub use bell::{BellEnsemble, BellLabel, BellString};
pub use dense::{Cut, DenseState, Party, PureBranch, QubitLabel, Role};
pub use error::{Error, Result};
