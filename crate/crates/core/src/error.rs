//! Crate-wide error type.

use std::fmt;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text failed to parse. `column` is 1-based.
    Syntax { column: usize, message: String },
    /// A notation was recognized but is not accepted under the active
    /// convention mode (e.g. `d*` outside CLIP mode). `column` is 1-based.
    NotationDisallowed {
        column: usize,
        notation: &'static str,
        mode: &'static str,
    },
    /// Reconstructed bounds are out of order (lower > upper).
    BoundsReversed { lower: String, upper: String },
    /// A decimal value does not fit in the target binary format.
    /// `upward` records which rounding direction overflowed.
    Overflow { upward: bool },
    /// The operation requires bounded interval sides.
    Unbounded { operation: &'static str },
    /// A value could not be constructed from the given parts.
    InvalidValue { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { column, message } => {
                write!(f, "syntax error at column {column}: {message}")
            }
            Error::NotationDisallowed {
                column,
                notation,
                mode,
            } => write!(
                f,
                "notation `{notation}` at column {column} is not allowed in {mode} mode"
            ),
            Error::BoundsReversed { lower, upper } => {
                write!(f, "lower bound {lower} exceeds upper bound {upper}")
            }
            Error::Overflow { upward } => write!(
                f,
                "value overflows the binary format (rounding {})",
                if *upward { "upward" } else { "downward" }
            ),
            Error::Unbounded { operation } => {
                write!(f, "{operation} requires bounded interval sides")
            }
            Error::InvalidValue { message } => write!(f, "invalid value: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
