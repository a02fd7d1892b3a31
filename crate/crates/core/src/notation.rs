//! Parser for every supported interval notation.
//!
//! Grammar (ASCII, whitespace permitted around brackets, commas, `+` and
//! scale tokens, never inside numerals):
//!
//! ```text
//! interval   := plain | factored | bracketpt | centered | angle | bare ;
//! plain      := '[' bound ',' bound ']' scale? ;
//! factored   := sign? prefix '[' digits ',' digits ']' scale? ;
//! bracketpt  := '[' numeral ']' ;
//! centered   := numeral '+' '[' signednum ',' signednum ']' ;
//! angle      := '<' numeral ',' numeral '>' ;
//! bare       := numeral scale? suffix? ;      suffix := '*' | '...' | '#' ;
//! scale      := ('x'|'*') '10^' int ;
//! bound      := numeral | 'inf' | '+inf' | '-inf' ;
//! numeral    := sign? digits ('.' digits)? ('e' int)? ;
//! prefix     := digits ('.' digits?)? | '.' digits ;
//! ```
//!
//! A `*` followed by `10^` is a scale token, otherwise a CLIP star suffix.
//! Signs are not accepted inside factored brackets. The CLIP suffixes `*`,
//! `...` and `#` parse only in CLIP mode.

use crate::binconv::BinaryFormat;
use crate::decnum::{self, DecimalNumeral, Rounding};
use crate::error::{Error, Result};
use crate::factoring::{self, FactorSign, FactoredForm};
use crate::interval::{BinaryInterval, DecimalInterval};

/// What a bare numeral denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConventionMode {
    /// The exact real with infinitely many trailing zeros.
    Point,
    /// All printed digits significant: `d` means `[d, d + uld]`.
    Physics,
    /// Single-number interval I/O: `d` means `[d - uld, d + uld]`.
    SingleNumber,
    /// CLIP: `d` is the smallest binary-bounded interval containing d, and
    /// the `d*`, `d...`, `d#` suffixes are accepted.
    Clip,
}

impl ConventionMode {
    pub fn name(&self) -> &'static str {
        match self {
            ConventionMode::Point => "point",
            ConventionMode::Physics => "physics",
            ConventionMode::SingleNumber => "single-number",
            ConventionMode::Clip => "clip",
        }
    }
}

/// One side of a plain bracket: a numeral or an infinity marker.
#[derive(Debug, Clone, PartialEq)]
pub enum PlainBound {
    Finite(DecimalNumeral),
    NegInf,
    PosInf,
}

/// Parsed surface form, before any semantic conversion.
#[derive(Debug, Clone, PartialEq)]
pub enum NotationAst {
    Plain {
        lower: PlainBound,
        upper: PlainBound,
        scale: i64,
    },
    Factored {
        negative: bool,
        prefix: String,
        lower_suffix: String,
        upper_suffix: String,
        scale: i64,
    },
    BracketPoint(DecimalNumeral),
    Bare(DecimalNumeral),
    Star(DecimalNumeral),
    Ellipsis(DecimalNumeral),
    Hash(DecimalNumeral),
    CenterPlus {
        center: DecimalNumeral,
        radius_lower: DecimalNumeral,
        radius_upper: DecimalNumeral,
    },
    Angle {
        center: DecimalNumeral,
        radius: DecimalNumeral,
    },
}

impl NotationAst {
    pub fn variant_name(&self) -> &'static str {
        match self {
            NotationAst::Plain { .. } => "plain",
            NotationAst::Factored { .. } => "factored",
            NotationAst::BracketPoint(_) => "bracket-point",
            NotationAst::Bare(_) => "bare",
            NotationAst::Star(_) => "star",
            NotationAst::Ellipsis(_) => "ellipsis",
            NotationAst::Hash(_) => "hash",
            NotationAst::CenterPlus { .. } => "center-plus",
            NotationAst::Angle { .. } => "angle",
        }
    }
}

/// Parses one interval notation. The convention mode only gates which
/// notations are admissible; bare meaning is resolved in
/// [`semantic_interval`].
pub fn parse(text: &str, mode: ConventionMode) -> Result<NotationAst> {
    let mut s = Scanner {
        bytes: text.as_bytes(),
        pos: 0,
    };
    s.skip_ws();
    let ast = match s.peek() {
        Some(b'[') => s.bracketed()?,
        Some(b'<') => s.angle()?,
        Some(_) => s.prefixed_or_bare(mode)?,
        None => return Err(s.error("empty input")),
    };
    s.skip_ws();
    if let Some(c) = s.peek() {
        return Err(s.error(&format!("unexpected `{}`", c as char)));
    }
    Ok(ast)
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.bytes.get(self.pos + off).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn digit_run(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.bytes[start..self.pos]
    }

    fn numeral(&mut self) -> Result<DecimalNumeral> {
        let (value, end) = decnum::parse_numeral_prefix(self.bytes, self.pos)?;
        self.pos = end;
        Ok(value)
    }

    /// Optional scale token `('x'|'*') '10^' int`, with whitespace allowed
    /// around the pieces. Restores the position when it does not match.
    fn scale_opt(&mut self) -> Result<Option<i64>> {
        let save = self.pos;
        self.skip_ws();
        match self.peek() {
            Some(b'x') | Some(b'X') | Some(b'*') => {
                self.pos += 1;
            }
            _ => {
                self.pos = save;
                return Ok(None);
            }
        }
        self.skip_ws();
        if !(self.peek() == Some(b'1') && self.peek_at(1) == Some(b'0') && self.peek_at(2) == Some(b'^'))
        {
            self.pos = save;
            return Ok(None);
        }
        self.pos += 3;
        self.skip_ws();
        let mut sign = 1i64;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            if self.peek() == Some(b'-') {
                sign = -1;
            }
            self.pos += 1;
        }
        let digits = self.digit_run();
        if digits.is_empty() {
            return Err(self.error("expected exponent digits after 10^"));
        }
        let mut v: i64 = 0;
        for b in digits {
            v = v.saturating_mul(10).saturating_add(i64::from(b - b'0'));
        }
        if v > 100_000 {
            return Err(self.error("scale exponent out of supported range"));
        }
        Ok(Some(sign * v))
    }

    /// `'[' …` — either a plain interval or a bracketed point.
    fn bracketed(&mut self) -> Result<NotationAst> {
        self.expect(b'[')?;
        self.skip_ws();
        let first = self.plain_bound()?;
        self.skip_ws();
        if self.peek() == Some(b']') {
            self.pos += 1;
            let value = match first {
                PlainBound::Finite(d) => d,
                _ => return Err(self.error("a bracketed point needs a finite numeral")),
            };
            return Ok(NotationAst::BracketPoint(value));
        }
        self.expect(b',')?;
        self.skip_ws();
        let second = self.plain_bound()?;
        self.skip_ws();
        self.expect(b']')?;
        let scale = self.scale_opt()?.unwrap_or(0);
        Ok(NotationAst::Plain {
            lower: first,
            upper: second,
            scale,
        })
    }

    fn plain_bound(&mut self) -> Result<PlainBound> {
        let save = self.pos;
        let mut neg = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            neg = self.peek() == Some(b'-');
            self.pos += 1;
        }
        if self.bytes[self.pos..].starts_with(b"inf") {
            self.pos += 3;
            return Ok(if neg {
                PlainBound::NegInf
            } else {
                PlainBound::PosInf
            });
        }
        self.pos = save;
        let value = self.numeral()?;
        // A bound may carry its own power of ten, `5.126 x 10^2` style.
        let scale = self.scale_opt()?.unwrap_or(0);
        Ok(PlainBound::Finite(value.mul_pow10(scale)))
    }

    fn angle(&mut self) -> Result<NotationAst> {
        self.expect(b'<')?;
        self.skip_ws();
        let center = self.numeral()?;
        self.skip_ws();
        self.expect(b',')?;
        self.skip_ws();
        let radius = self.numeral()?;
        self.skip_ws();
        self.expect(b'>')?;
        Ok(NotationAst::Angle { center, radius })
    }

    /// Everything that starts with a sign, digit or dot: factored forms,
    /// centered forms, and bare numerals with optional CLIP suffix.
    fn prefixed_or_bare(&mut self, mode: ConventionMode) -> Result<NotationAst> {
        let mut negative = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            negative = self.peek() == Some(b'-');
            self.pos += 1;
        }
        let core_start = self.pos;
        let int_part = self.digit_run().to_vec();
        let mut frac_part: Vec<u8> = Vec::new();
        let mut saw_dot = false;
        if self.peek() == Some(b'.') && self.peek_at(1).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
            saw_dot = true;
            frac_part = self.digit_run().to_vec();
        } else if self.peek() == Some(b'.') && !int_part.is_empty() {
            // A trailing dot is legal only in a factored prefix: `12.[3,4]`.
            let mut probe = self.pos + 1;
            while matches!(self.bytes.get(probe), Some(b' ') | Some(b'\t')) {
                probe += 1;
            }
            if self.bytes.get(probe) == Some(&b'[') {
                self.pos += 1;
                saw_dot = true;
            }
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(self.error("expected a digit"));
        }
        let after_core = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'[') {
            let prefix: String = std::str::from_utf8(&self.bytes[core_start..after_core])
                .expect("ascii input")
                .to_string();
            return self.factored_tail(negative, prefix);
        }
        self.pos = after_core;
        if int_part.is_empty() || (saw_dot && frac_part.is_empty()) {
            return Err(self.error("expected `[` to open a factored bracket"));
        }
        // From here on this is a numeral; reparse it whole so e-notation and
        // precision anchoring live in one place.
        self.pos = if negative { core_start - 1 } else { core_start };
        let value = self.numeral()?;
        let scale = self.scale_opt()?.unwrap_or(0);
        let value = value.mul_pow10(scale);
        let suffix_col = self.pos + 1;
        let clip_only = |notation: &'static str| -> Result<()> {
            if mode != ConventionMode::Clip {
                return Err(Error::NotationDisallowed {
                    column: suffix_col,
                    notation,
                    mode: mode.name(),
                });
            }
            Ok(())
        };
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                clip_only("d*")?;
                Ok(NotationAst::Star(value))
            }
            Some(b'#') => {
                self.pos += 1;
                clip_only("d#")?;
                Ok(NotationAst::Hash(value))
            }
            Some(b'.') => {
                if self.peek_at(1) == Some(b'.') && self.peek_at(2) == Some(b'.') {
                    self.pos += 3;
                    clip_only("d...")?;
                    Ok(NotationAst::Ellipsis(value))
                } else {
                    Err(self.error("expected `...`"))
                }
            }
            _ => {
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'+') {
                    self.pos += 1;
                    return self.centered_tail(value);
                }
                self.pos = save;
                Ok(NotationAst::Bare(value))
            }
        }
    }

    fn factored_tail(&mut self, negative: bool, prefix: String) -> Result<NotationAst> {
        self.expect(b'[')?;
        self.skip_ws();
        let lower_suffix = self.bracket_digits()?;
        self.skip_ws();
        self.expect(b',')?;
        self.skip_ws();
        let upper_suffix = self.bracket_digits()?;
        self.skip_ws();
        self.expect(b']')?;
        let scale = self.scale_opt()?.unwrap_or(0);
        Ok(NotationAst::Factored {
            negative,
            prefix,
            lower_suffix,
            upper_suffix,
            scale,
        })
    }

    fn bracket_digits(&mut self) -> Result<String> {
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            return Err(self.error("signs are not allowed inside factored brackets"));
        }
        let run = self.digit_run();
        if run.is_empty() {
            return Err(self.error("expected suffix digits"));
        }
        Ok(std::str::from_utf8(run).expect("ascii digits").to_string())
    }

    /// After `numeral '+'`: the `c + [-r,+r]` form. Both
    /// radius terms carry explicit signs.
    fn centered_tail(&mut self, center: DecimalNumeral) -> Result<NotationAst> {
        self.skip_ws();
        self.expect(b'[')?;
        self.skip_ws();
        let radius_lower = self.signed_numeral()?;
        self.skip_ws();
        self.expect(b',')?;
        self.skip_ws();
        let radius_upper = self.signed_numeral()?;
        self.skip_ws();
        self.expect(b']')?;
        Ok(NotationAst::CenterPlus {
            center,
            radius_lower,
            radius_upper,
        })
    }

    fn signed_numeral(&mut self) -> Result<DecimalNumeral> {
        if !matches!(self.peek(), Some(b'+') | Some(b'-')) {
            return Err(self.error("radius terms need an explicit sign"));
        }
        self.numeral()
    }
}

/// The exact decimal interval a notation denotes under a convention mode.
/// Only CLIP bare numerals and `d#` consult the binary format.
pub fn semantic_interval(
    ast: &NotationAst,
    mode: ConventionMode,
    fmt: &BinaryFormat,
) -> Result<DecimalInterval> {
    match ast {
        NotationAst::Plain {
            lower,
            upper,
            scale,
        } => {
            let lo = plain_to_option(lower, *scale);
            let hi = plain_to_option(upper, *scale);
            match (lower, upper, lo, hi) {
                (PlainBound::PosInf, _, _, _) | (_, PlainBound::NegInf, _, _) => {
                    Err(Error::InvalidValue {
                        message: "infinite bound on the wrong side".into(),
                    })
                }
                (_, _, Some(l), Some(u)) => DecimalInterval::new(l, u),
                (_, _, Some(l), None) => Ok(DecimalInterval::unbounded_above(l)),
                (_, _, None, Some(u)) => Ok(DecimalInterval::unbounded_below(u)),
                (_, _, None, None) => Ok(DecimalInterval::unbounded()),
            }
        }
        NotationAst::Factored {
            negative,
            prefix,
            lower_suffix,
            upper_suffix,
            scale,
        } => factoring::unfactor(&FactoredForm {
            sign: if *negative {
                FactorSign::Neg
            } else {
                FactorSign::Pos
            },
            prefix: prefix.clone(),
            lower_suffix: lower_suffix.clone(),
            upper_suffix: upper_suffix.clone(),
            scale: *scale,
        }),
        NotationAst::BracketPoint(d) => Ok(DecimalInterval::point(d.clone())),
        NotationAst::Bare(d) => match mode {
            ConventionMode::Point => Ok(DecimalInterval::point(d.clone())),
            ConventionMode::Physics => {
                DecimalInterval::new(d.clone(), decnum::add(d, &d.uld()))
            }
            ConventionMode::SingleNumber => DecimalInterval::new(
                decnum::sub(d, &d.uld()),
                decnum::add(d, &d.uld()),
            ),
            ConventionMode::Clip => {
                let lo = fmt.from_decimal_directed(d, Rounding::TowardNegInf)?;
                let hi = fmt.from_decimal_directed(d, Rounding::TowardPosInf)?;
                DecimalInterval::new(fmt.to_exact_decimal(&lo), fmt.to_exact_decimal(&hi))
            }
        },
        NotationAst::Star(d) => DecimalInterval::new(
            decnum::sub(d, &d.uld()),
            decnum::add(d, &d.uld()),
        ),
        NotationAst::Ellipsis(d) => {
            DecimalInterval::new(d.clone(), decnum::add(d, &d.uld()))
        }
        NotationAst::Hash(d) => {
            let nearest = fmt.from_decimal_nearest(d)?;
            Ok(DecimalInterval::point(fmt.to_exact_decimal(&nearest)))
        }
        NotationAst::CenterPlus {
            center,
            radius_lower,
            radius_upper,
        } => DecimalInterval::new(
            decnum::add(center, radius_lower),
            decnum::add(center, radius_upper),
        ),
        NotationAst::Angle { center, radius } => {
            if radius.is_negative() {
                return Err(Error::InvalidValue {
                    message: "angle-form radius must be nonnegative".into(),
                });
            }
            DecimalInterval::new(
                decnum::sub(center, radius),
                decnum::add(center, radius),
            )
        }
    }
}

fn plain_to_option(bound: &PlainBound, scale: i64) -> Option<DecimalNumeral> {
    match bound {
        PlainBound::Finite(d) => Some(d.mul_pow10(scale)),
        _ => None,
    }
}

/// Converts a parsed notation to a guaranteed-enclosing binary interval:
/// the exact decimal semantics rounded outward to representable bounds.
pub fn to_binary_interval(
    ast: &NotationAst,
    mode: ConventionMode,
    fmt: &BinaryFormat,
) -> Result<BinaryInterval> {
    let semantic = semantic_interval(ast, mode, fmt)?;
    let (l, u) = match (semantic.lower(), semantic.upper()) {
        (Some(l), Some(u)) => (l, u),
        _ => {
            return Err(Error::Unbounded {
                operation: "binary conversion",
            })
        }
    };
    let lower = fmt.from_decimal_directed(l, Rounding::TowardNegInf)?;
    let upper = fmt.from_decimal_directed(u, Rounding::TowardPosInf)?;
    BinaryInterval::new(fmt, lower, upper)
}
