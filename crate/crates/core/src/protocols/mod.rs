//! LOCC protocols: cloning, ancilla preparation, teleportation,
//! distillation and the σ-family construction, each with a resource ledger.

pub mod cloning;
pub mod ledger;
pub mod ops;
pub mod preparation;
pub mod quasi_pure;
pub mod reduction;
pub mod runner;
pub mod sigma;
pub mod teleport;
pub mod witness;

pub use cloning::{clone_four_1_to_n, clone_pair_1_to_n, clone_pair_mixture, FourInput};
pub use ledger::{ResourceLedger, Step, StepParty};
pub use ops::LoccOp;
pub use preparation::{prepare_rho_m, rho_m, smolin};
pub use quasi_pure::{distill_quasi_pure, prepare_quasi_pure};
pub use runner::{run, Channel, Check, Engine, Protocol, RunDescriptor, RunResult};
pub use sigma::build_sigma_n;
