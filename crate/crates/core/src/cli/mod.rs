//! Command implementations behind the `tpair` binary. Commands take file
//! contents and return what to print together with the exit code.

pub mod commands;
pub mod format;

pub use commands::{Family, Outcome, EXIT_FAILED, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION};
pub use format::{emit_demand_file, emit_realization, parse_demand_file, parse_realization_file, DemandFile, ParseError};
