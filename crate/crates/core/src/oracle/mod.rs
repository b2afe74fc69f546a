//! Ground truth for everything else: the verifier, exhaustive oracles for
//! tiny instances and generators for extremal instance families.

pub mod brute;
pub mod generate;
pub mod verify;

pub use brute::{brute_force_maxedp, brute_force_realize, OracleError};
pub use generate::{antipodal, double_bundle, one_factor_bundles, GenerateError, Instance};
pub use verify::{shortcut_walk, verify_realization, VerificationReport, Violation, ViolationKind};
