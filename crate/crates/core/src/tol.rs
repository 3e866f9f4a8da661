//! Numerical tolerances shared by the oracle checks.

/// Circuit identities that hold exactly up to floating-point rounding.
pub const CIRCUIT: f64 = 1e-12;

/// Quantities derived from a Hermitian eigendecomposition.
pub const EIGEN: f64 = 1e-9;

/// Symbolic vs dense agreement, measured in trace distance.
pub const TRACE_DISTANCE: f64 = 1e-10;

/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD: f64 = 1e-10;

/// Probabilities below this are pruned from canonical ensembles.
pub const PRUNE: f64 = 1e-15;

/// Branch weights below this are dropped from dense mixtures.
pub const BRANCH_WEIGHT: f64 = 1e-28;

/// Linearity residual above which a channel is rejected.
pub const CHOI_LINEARITY: f64 = 1e-8;
