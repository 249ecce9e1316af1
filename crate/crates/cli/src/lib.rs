//! Library side of the `epolar` command: sweep specification, CSV output and
//! exit-code policy, kept apart from argument parsing so they can be tested.

pub mod sweep;

use epolar::Error;

pub const EXIT_OK: u8 = 0;
/// A verification or hypothesis check failed.
pub const EXIT_FAILED: u8 = 1;
/// Bad arguments, unreadable input or unwritable output.
pub const EXIT_USAGE: u8 = 2;

/// Hypothesis and validation failures are results, everything else is a
/// usage or input problem.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Hypothesis(_) | Error::Validation { .. } => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}
