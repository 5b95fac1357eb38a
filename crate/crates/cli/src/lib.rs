//! Batch front end for `latdefect`: JSON configuration files in, JSON reports out.
//!
//! Exit codes: 0 when the command ran, 1 for malformed input, 2 when the
//! input is well formed but outside the hypotheses the command needs.

pub mod codec;
pub mod input;
pub mod recheck;
pub mod report;
pub mod run;

pub use input::{parse_input, ConfigurationDoc, InputDocument, InputError};
pub use recheck::recheck;
pub use report::{Check, RecheckDocument, ReportDocument, VERSION};
pub use run::{run, CliError, Command};
