//! Compact, guaranteed-enclosing decimal notation for machine intervals.
//!
//! Raw interval results carry binary floating-point bounds whose printed
//! forms repeat a long run of shared digits. This crate renders such
//! intervals in *factored notation* — the shared digits written once, the
//! differing suffixes bracketed, as in `0.61803398874989[46804,50136]` —
//! as well as center-radius and single-number forms, and parses every one
//! of those notations back into a binary interval that is guaranteed to
//! enclose the original set of reals.
//!
//! Enclosure is never lost: the lower bound only ever rounds toward
//! negative infinity and the upper toward positive infinity, on both the
//! decimal and the binary side. Digit counts inside the brackets can be
//! chosen by hand or by the marginal information yield of the next digit,
//! which drops off so quickly that two or three digits are normally plenty.
//!
//! ```
//! use intervalfmt::{parse, render_interval, semantic_interval};
//! use intervalfmt::{BinaryFormat, ConventionMode, RenderOptions, Style};
//!
//! let mode = ConventionMode::Point;
//! let ast = parse("[0.6180339887498946804,0.6180339887498950136]", mode).unwrap();
//! let interval = semantic_interval(&ast, mode, &BinaryFormat::BINARY64).unwrap();
//! let text = render_interval(&interval.outward_decimal(3), Style::Factored,
//!     &RenderOptions::default()).unwrap();
//! assert_eq!(text, "0.61803398874989[468,502]");
//! ```

pub mod binconv;
pub mod decnum;
pub mod error;
pub mod factoring;
pub mod infoyield;
pub mod interval;
pub mod notation;

pub use binconv::{BinaryFloat, BinaryFormat};
pub use decnum::{align, DecimalNumeral, Rounding, Sign};
pub use error::{Error, Result};
pub use factoring::{
    factor, factor_with, normalize_scale, render, render_interval, single_number_numeral,
    unfactor, FactorSign, FactoredForm, RenderOptions, Style,
};
pub use infoyield::{
    analyze, approx_marginal_yield, marginal_yield, select_digits, uncertainty, DigitSelection,
    SelectionPolicy, YieldReport, YieldRow,
};
pub use interval::{BinaryInterval, CenterRadius, DecimalInterval};
pub use notation::{parse, semantic_interval, to_binary_interval, ConventionMode, NotationAst};
