//! Exact signed decimal numerals with an explicit significant-digit count.
//!
//! A numeral is `sign × 0.d1…dn × 10^exponent`, stored as a digit vector with
//! the most significant digit first. The digit count is part of the value's
//! identity: `0.123` and `0.1230` denote the same real but are different
//! numerals, and the unit of the last decimal (`uld`) differs accordingly.
//! Nothing here ever rounds implicitly; every digit written in is kept until
//! an explicit directed rounding removes it.
//!
//! Positions are powers of ten: the digit with weight `10^p` sits at
//! position `p`. The stored digits cover positions `exponent-1` down to
//! `exponent-n`, so `uld = 10^(exponent-n)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sign of a numeral. Zero is always stored with `Pos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// Rounding directions. `TowardNegInf`/`TowardPosInf` are value-directed
/// (they follow the sign), `NearestTiesEven` breaks exact ties toward an
/// even last digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    TowardNegInf,
    TowardPosInf,
    NearestTiesEven,
}

/// An exact decimal numeral: `sign × 0.d1…dn × 10^exponent`.
#[derive(Debug, Clone)]
pub struct DecimalNumeral {
    sign: Sign,
    digits: Vec<u8>,
    exponent: i64,
}

impl DecimalNumeral {
    /// Builds a numeral from raw parts. Digits must be nonempty and in 0–9.
    /// An all-zero digit string forces the sign positive.
    pub fn from_parts(sign: Sign, digits: Vec<u8>, exponent: i64) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidValue {
                message: "numeral needs at least one digit".into(),
            });
        }
        if let Some(bad) = digits.iter().find(|d| **d > 9) {
            return Err(Error::InvalidValue {
                message: format!("digit value {bad} out of range"),
            });
        }
        let sign = if digits.iter().all(|d| *d == 0) {
            Sign::Pos
        } else {
            sign
        };
        Ok(DecimalNumeral {
            sign,
            digits,
            exponent,
        })
    }

    /// The canonical zero: `+0.0 × 10^0`, one digit.
    pub fn zero() -> Self {
        DecimalNumeral {
            sign: Sign::Pos,
            digits: vec![0],
            exponent: 0,
        }
    }

    /// A zero whose last digit sits at `position`, so that its `uld` is
    /// `10^position`. Used for directed rounding results that collapse to
    /// zero without losing the position information.
    pub(crate) fn zero_at_position(position: i64) -> Self {
        let exponent = position.saturating_add(1).max(1);
        let n = (exponent - position) as usize;
        DecimalNumeral {
            sign: Sign::Pos,
            digits: vec![0; n],
            exponent,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Count of stored digits (significant under the physics convention).
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|d| *d == 0)
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Neg && !self.is_zero()
    }

    /// Position of the last stored digit: `uld = 10^(last_position)`.
    pub fn last_position(&self) -> i64 {
        self.exponent - self.digits.len() as i64
    }

    /// Exponent after discarding stored leading zeros; for `0.051` stored as
    /// `("051", e=0)` this is -1. Zero inputs return the stored exponent.
    pub fn lead_exponent(&self) -> i64 {
        let lz = self.digits.iter().take_while(|d| **d == 0).count();
        if lz == self.digits.len() {
            self.exponent
        } else {
            self.exponent - lz as i64
        }
    }

    /// The digit with weight `10^position`, zero outside the stored range.
    pub fn digit_at(&self, position: i64) -> u8 {
        let idx = self.exponent - 1 - position;
        if idx < 0 || idx >= self.digits.len() as i64 {
            0
        } else {
            self.digits[idx as usize]
        }
    }

    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.sign = out.sign.flip();
        }
        out
    }

    pub fn abs(&self) -> Self {
        let mut out = self.clone();
        out.sign = Sign::Pos;
        out
    }

    /// Shifts the value by a power of ten. Exact; precision is unchanged.
    pub fn mul_pow10(&self, shift: i64) -> Self {
        let mut out = self.clone();
        out.exponent += shift;
        out
    }

    /// The unit of the last decimal: exactly `10^(exponent - n)`.
    pub fn uld(&self) -> DecimalNumeral {
        DecimalNumeral {
            sign: Sign::Pos,
            digits: vec![1],
            exponent: self.last_position() + 1,
        }
    }

    /// The next numeral at the same precision: `self + uld`.
    pub fn successor(&self) -> DecimalNumeral {
        add(self, &self.uld())
    }

    /// Value comparison of the denoted reals; precision plays no role.
    pub fn cmp_value(&self, other: &DecimalNumeral) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if other.sign == Sign::Neg {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (false, true) => {
                return if self.sign == Sign::Neg {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (false, false) => {}
        }
        match (self.sign, other.sign) {
            (Sign::Pos, Sign::Neg) => Ordering::Greater,
            (Sign::Neg, Sign::Pos) => Ordering::Less,
            (s, _) => {
                let mag = cmp_magnitude(self, other);
                if s == Sign::Neg {
                    mag.reverse()
                } else {
                    mag
                }
            }
        }
    }

    /// Directed rounding to `target_precision` significant digits, counted
    /// from the leading nonzero digit. Carry propagation may raise the
    /// exponent (`0.999 → 0.10 × 10^1` at two digits upward).
    pub fn round_directed(&self, target_precision: usize, rounding: Rounding) -> DecimalNumeral {
        debug_assert!(target_precision >= 1);
        let target_precision = target_precision.max(1);
        let pos = self.lead_exponent() - target_precision as i64;
        self.round_at_position(pos, rounding)
    }

    /// Directed rounding so that the result's last digit sits at `position`.
    /// Exact values are returned unchanged apart from zero padding.
    pub fn round_at_position(&self, position: i64, rounding: Rounding) -> DecimalNumeral {
        if self.is_zero() {
            return DecimalNumeral::zero_at_position(position);
        }
        // Value-directed rounding maps to magnitude floor/ceil via the sign.
        let magnitude_up = match (rounding, self.sign) {
            (Rounding::TowardPosInf, Sign::Pos) | (Rounding::TowardNegInf, Sign::Neg) => {
                Some(true)
            }
            (Rounding::TowardNegInf, Sign::Pos) | (Rounding::TowardPosInf, Sign::Neg) => {
                Some(false)
            }
            (Rounding::NearestTiesEven, _) => None,
        };
        let cut = self.exponent - position;
        let n = self.digits.len() as i64;
        if cut >= n {
            // Already at or above the requested precision: pad trailing zeros.
            let mut digits = self.digits.clone();
            digits.resize(cut as usize, 0);
            return DecimalNumeral {
                sign: self.sign,
                digits,
                exponent: self.exponent,
            };
        }
        if cut <= 0 {
            // The whole magnitude sits below the kept range.
            let up = match magnitude_up {
                Some(up) => up,
                None => {
                    // Nearest: the first dropped position holds a digit only
                    // when cut == 0; anything lower is under half an ulp.
                    let d0 = if cut == 0 { self.digits[0] } else { 0 };
                    let rest_nonzero = if cut == 0 {
                        self.digits[1..].iter().any(|d| *d != 0)
                    } else {
                        true
                    };
                    d0 > 5 || (d0 == 5 && rest_nonzero)
                    // an exact half ties to the (even) zero
                }
            };
            if up {
                return DecimalNumeral {
                    sign: self.sign,
                    digits: vec![1],
                    exponent: position + 1,
                };
            }
            return DecimalNumeral::zero_at_position(position);
        }
        let cut = cut as usize;
        let kept = &self.digits[..cut];
        let rest = &self.digits[cut..];
        if rest.iter().all(|d| *d == 0) {
            return DecimalNumeral {
                sign: self.sign,
                digits: kept.to_vec(),
                exponent: self.exponent,
            };
        }
        let up = match magnitude_up {
            Some(up) => up,
            None => {
                let d0 = rest[0];
                let tail_nonzero = rest[1..].iter().any(|d| *d != 0);
                d0 > 5 || (d0 == 5 && (tail_nonzero || kept[cut - 1] % 2 == 1))
            }
        };
        if !up {
            return DecimalNumeral {
                sign: self.sign,
                digits: kept.to_vec(),
                exponent: self.exponent,
            };
        }
        let mut digits = kept.to_vec();
        let mut i = cut;
        loop {
            if i == 0 {
                // Full carry: 9…9 + 1. Keep the precision, raise the exponent.
                let mut carried = vec![0u8; cut];
                carried[0] = 1;
                return DecimalNumeral {
                    sign: self.sign,
                    digits: carried,
                    exponent: self.exponent + 1,
                };
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
        DecimalNumeral {
            sign: self.sign,
            digits,
            exponent: self.exponent,
        }
    }

    /// Exact halving. The result may carry one extra digit when the stored
    /// integer is odd.
    pub fn halve(&self) -> DecimalNumeral {
        if self.is_zero() {
            return self.clone();
        }
        let m = digits_to_big(&self.digits);
        let (digits, exponent) = if (&m % 2u8).is_zero() {
            (big_to_digits(&(m / 2u8), self.digits.len()), self.exponent)
        } else {
            (
                big_to_digits(&(m * 5u8), self.digits.len() + 1),
                self.exponent,
            )
        };
        DecimalNumeral {
            sign: self.sign,
            digits,
            exponent,
        }
    }

    /// Fixed-point rendering without the sign, e.g. `0.0001666` or `51.268`.
    pub fn to_plain_magnitude(&self) -> String {
        if self.is_zero() {
            let e = self.exponent;
            let n = self.digits.len() as i64;
            if e >= 1 && n >= e {
                let mut s = "0".repeat(e as usize);
                if n > e {
                    s.push('.');
                    s.push_str(&"0".repeat((n - e) as usize));
                }
                return s;
            }
            if e > n {
                // Zero whose uld exceeds one: positional form `0e<k>`.
                return format!("0e{}", e - 1);
            }
            return "0".to_string();
        }
        // Leading zeros stored by alignment carry no information once the
        // exponent is adjusted; value and uld survive the strip.
        let lz = self.digits.iter().take_while(|d| **d == 0).count();
        let e = self.exponent - lz as i64;
        let body: String = self.digits[lz..].iter().map(|d| (b'0' + d) as char).collect();
        let n = body.len() as i64;
        if e <= 0 {
            format!("0.{}{}", "0".repeat((-e) as usize), body)
        } else if e >= n {
            format!("{}{}", body, "0".repeat((e - n) as usize))
        } else {
            let split = e as usize;
            format!("{}.{}", &body[..split], &body[split..])
        }
    }

    /// Fixed-point rendering with a leading `-` for negative values.
    pub fn to_plain_string(&self) -> String {
        if self.is_negative() {
            format!("-{}", self.to_plain_magnitude())
        } else {
            self.to_plain_magnitude()
        }
    }

    /// Rendering that preserves the unit of the last decimal: fixed point
    /// whenever every written digit is a stored digit, exponent form as soon
    /// as padding would add digit characters. Re-parsing recovers both the
    /// value and the uld, which single-number notation depends on.
    pub fn to_precision_string(&self) -> String {
        let needs_exp = self.exponent > self.digits.len() as i64;
        if !needs_exp {
            return self.to_plain_string();
        }
        if self.is_zero() {
            return self.to_plain_magnitude();
        }
        let lz = self.digits.iter().take_while(|d| **d == 0).count();
        let sig_digits = &self.digits[lz..];
        let lead = self.exponent - lz as i64;
        let mut s = String::new();
        if self.is_negative() {
            s.push('-');
        }
        s.push((b'0' + sig_digits[0]) as char);
        if sig_digits.len() > 1 {
            s.push('.');
            for d in &sig_digits[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&(lead - 1).to_string());
        s
    }

    /// Display rendering: fixed point unless the exponent would force more
    /// than three leading or trailing zeros, in which case an `e<int>`
    /// suffix is used (`0.5e5` style, all stored digits kept).
    pub fn to_display_string(&self) -> String {
        if self.is_zero() {
            return self.to_plain_string();
        }
        let lead = self.lead_exponent();
        let lz = (self.exponent - lead) as usize;
        let sig = self.digits.len() - lz;
        let needs_exp = lead < -3 || lead > sig as i64 + 3;
        if !needs_exp {
            return self.to_plain_string();
        }
        let sig_digits = &self.digits[lz..];
        let mut s = String::new();
        if self.is_negative() {
            s.push('-');
        }
        s.push((b'0' + sig_digits[0]) as char);
        if sig_digits.len() > 1 {
            s.push('.');
            for d in &sig_digits[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&(lead - 1).to_string());
        s
    }
}

/// Structural equality up to alignment: same denoted real and same
/// last-digit position (hence the same value and the same uld).
impl PartialEq for DecimalNumeral {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal && self.last_position() == other.last_position()
    }
}

impl Eq for DecimalNumeral {}

impl fmt::Display for DecimalNumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display_string())
    }
}

impl FromStr for DecimalNumeral {
    type Err = Error;

    /// Parses `sign? digits ('.' digits)? ('e' int)?`, preserving the
    /// written digit count. Leading zeros are not significant; trailing
    /// zeros are.
    fn from_str(s: &str) -> Result<Self> {
        let (value, used) = parse_numeral_prefix(s.as_bytes(), 0)?;
        if used != s.len() {
            return Err(Error::Syntax {
                column: used + 1,
                message: "trailing characters after numeral".into(),
            });
        }
        Ok(value)
    }
}

/// Parses a numeral starting at byte offset `start`; returns the numeral and
/// the offset one past its end. Shared between `FromStr` and the notation
/// scanner.
pub(crate) fn parse_numeral_prefix(bytes: &[u8], start: usize) -> Result<(DecimalNumeral, usize)> {
    let mut i = start;
    let mut sign = Sign::Pos;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        if bytes[i] == b'-' {
            sign = Sign::Neg;
        }
        i += 1;
    }
    let int_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let int_digits = i - int_start;
    if int_digits == 0 {
        return Err(Error::Syntax {
            column: i + 1,
            message: "expected a digit".into(),
        });
    }
    let mut frac: &[u8] = &[];
    // A '.' starts a fraction only when a digit follows; `5...` must leave
    // the dots alone for the ellipsis suffix.
    if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
        i += 1;
        let frac_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        frac = &bytes[frac_start..i];
    }
    let mut exp_shift: i64 = 0;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        let mut exp_sign = 1i64;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            if bytes[j] == b'-' {
                exp_sign = -1;
            }
            j += 1;
        }
        let d_start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j > d_start {
            let mut v: i64 = 0;
            for b in &bytes[d_start..j] {
                v = v
                    .saturating_mul(10)
                    .saturating_add(i64::from(b - b'0'));
            }
            if v > 100_000 {
                return Err(Error::Syntax {
                    column: d_start + 1,
                    message: "exponent out of supported range".into(),
                });
            }
            exp_shift = exp_sign * v;
            i = j;
        }
        // A bare `e` with no digits is not an exponent; leave it unconsumed.
    }
    let mut all: Vec<u8> = Vec::with_capacity(int_digits + frac.len());
    all.extend(bytes[int_start..int_start + int_digits].iter().map(|b| b - b'0'));
    all.extend(frac.iter().map(|b| b - b'0'));
    let value = numeral_from_written_digits(sign, &all, int_digits as i64 + exp_shift)?;
    Ok((value, i))
}

/// Builds a numeral from written digits anchored so the first written digit
/// has weight `10^(anchor_exponent - 1)`. Strips insignificant leading
/// zeros; keeps every written digit of an all-zero numeral.
pub(crate) fn numeral_from_written_digits(
    sign: Sign,
    written: &[u8],
    anchor_exponent: i64,
) -> Result<DecimalNumeral> {
    let lz = written.iter().take_while(|d| **d == 0).count();
    if lz == written.len() {
        return DecimalNumeral::from_parts(Sign::Pos, written.to_vec(), anchor_exponent);
    }
    DecimalNumeral::from_parts(sign, written[lz..].to_vec(), anchor_exponent - lz as i64)
}

/// Aligns two numerals to a shared exponent and precision by padding with
/// leading and trailing zeros. Values and ulds of equal-position inputs are
/// preserved exactly; only the stored shapes change.
pub fn align(a: &DecimalNumeral, b: &DecimalNumeral) -> (DecimalNumeral, DecimalNumeral) {
    let e = a.exponent.max(b.exponent);
    let last = a.last_position().min(b.last_position());
    let n = (e - last) as usize;
    let pad = |x: &DecimalNumeral| -> DecimalNumeral {
        let lead = (e - x.exponent) as usize;
        let mut digits = vec![0u8; lead];
        digits.extend_from_slice(&x.digits);
        digits.resize(n, 0);
        DecimalNumeral {
            sign: x.sign,
            digits,
            exponent: e,
        }
    };
    (pad(a), pad(b))
}

/// Exact addition of denoted values. The result's precision covers the full
/// aligned span (plus a carry digit when needed); leading zeros beyond the
/// first significant digit are stripped.
pub fn add(a: &DecimalNumeral, b: &DecimalNumeral) -> DecimalNumeral {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return widest_zero(a, b),
        (true, false) => return b.clone(),
        (false, true) => return a.clone(),
        _ => {}
    }
    let (pa, pb) = align(a, b);
    let ma = digits_to_big(&pa.digits);
    let mb = digits_to_big(&pb.digits);
    if a.sign == b.sign {
        let sum = ma + mb;
        let grown = sum >= pow10(pa.digits.len() as u32);
        let n = pa.digits.len() + usize::from(grown);
        let digits = big_to_digits(&sum, n);
        return trim_lead(DecimalNumeral {
            sign: a.sign,
            digits,
            exponent: pa.exponent + i64::from(grown),
        });
    }
    match ma.cmp(&mb) {
        Ordering::Equal => DecimalNumeral::zero_at_position(pa.last_position()),
        Ordering::Greater => trim_lead(DecimalNumeral {
            sign: a.sign,
            digits: big_to_digits(&(ma - mb), pa.digits.len()),
            exponent: pa.exponent,
        }),
        Ordering::Less => trim_lead(DecimalNumeral {
            sign: b.sign,
            digits: big_to_digits(&(mb - ma), pb.digits.len()),
            exponent: pb.exponent,
        }),
    }
}

/// Exact subtraction `a - b`.
pub fn sub(a: &DecimalNumeral, b: &DecimalNumeral) -> DecimalNumeral {
    add(a, &b.negate())
}

fn widest_zero(a: &DecimalNumeral, b: &DecimalNumeral) -> DecimalNumeral {
    DecimalNumeral::zero_at_position(a.last_position().min(b.last_position()))
}

/// Strips stored leading zeros above the first significant digit, keeping
/// value and uld intact. All-zero inputs are returned unchanged.
fn trim_lead(x: DecimalNumeral) -> DecimalNumeral {
    let lz = x.digits.iter().take_while(|d| **d == 0).count();
    if lz == 0 || lz == x.digits.len() {
        return x;
    }
    DecimalNumeral {
        sign: x.sign,
        digits: x.digits[lz..].to_vec(),
        exponent: x.exponent - lz as i64,
    }
}

fn cmp_magnitude(a: &DecimalNumeral, b: &DecimalNumeral) -> Ordering {
    let la = a.lead_exponent();
    let lb = b.lead_exponent();
    if la != lb {
        return la.cmp(&lb);
    }
    // Same leading position: walk positions downward.
    let last = a.last_position().min(b.last_position());
    let mut pos = la - 1;
    while pos >= last {
        let da = a.digit_at(pos);
        let db = b.digit_at(pos);
        if da != db {
            return da.cmp(&db);
        }
        pos -= 1;
    }
    Ordering::Equal
}

pub(crate) fn digits_to_big(digits: &[u8]) -> BigUint {
    BigUint::from_radix_be(digits, 10).expect("digits are validated at construction")
}

/// Renders `value` as exactly `n` digits, left-padded with zeros.
pub(crate) fn big_to_digits(value: &BigUint, n: usize) -> Vec<u8> {
    if value.is_zero() {
        return vec![0; n];
    }
    let raw = value.to_radix_be(10);
    assert!(raw.len() <= n, "value does not fit in {n} digits");
    let mut digits = vec![0u8; n - raw.len()];
    digits.extend_from_slice(&raw);
    digits
}

pub(crate) fn pow10(k: u32) -> BigUint {
    BigUint::from(10u8).pow(k)
}

pub(crate) fn big_one() -> BigUint {
    BigUint::one()
}
