//! Exact, directed conversion between a configurable binary floating-point
//! format and decimal numerals.
//!
//! All decisions are made over exact integers: a decimal `D × 10^t` is
//! compared against significand candidates by cross-multiplying big
//! integers, never by intermediate floating arithmetic. Every finite binary
//! value has a finite decimal expansion, so `to_exact_decimal` is lossless;
//! `from_decimal_directed` returns the closest representable value in the
//! requested direction, which is what makes outward rounding of interval
//! bounds provable.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::decnum::{self, DecimalNumeral, Rounding, Sign};
use crate::error::{Error, Result};

/// A binary floating-point format: significand width in bits (including the
/// leading bit) and the exponent range of the leading bit's weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryFormat {
    pub significand_bits: u32,
    pub min_exponent: i32,
    pub max_exponent: i32,
}

impl BinaryFormat {
    /// The standard 64-bit format: 53 significand bits, exponents -1022..=1023.
    pub const BINARY64: BinaryFormat = BinaryFormat {
        significand_bits: 53,
        min_exponent: -1022,
        max_exponent: 1023,
    };

    /// The standard 32-bit format.
    pub const BINARY32: BinaryFormat = BinaryFormat {
        significand_bits: 24,
        min_exponent: -126,
        max_exponent: 127,
    };

    /// A deliberately small format (8 significand bits) whose floats can be
    /// enumerated exhaustively in tests and self-checks.
    pub const TINY8: BinaryFormat = BinaryFormat {
        significand_bits: 8,
        min_exponent: -8,
        max_exponent: 8,
    };

    pub fn new(significand_bits: u32, min_exponent: i32, max_exponent: i32) -> Result<Self> {
        if !(2..=63).contains(&significand_bits) {
            return Err(Error::InvalidValue {
                message: format!("significand_bits {significand_bits} outside 2..=63"),
            });
        }
        if min_exponent >= max_exponent {
            return Err(Error::InvalidValue {
                message: "min_exponent must be below max_exponent".into(),
            });
        }
        Ok(BinaryFormat {
            significand_bits,
            min_exponent,
            max_exponent,
        })
    }

    fn sig_limit(&self) -> u64 {
        1u64 << self.significand_bits
    }

    fn normal_min_sig(&self) -> u64 {
        1u64 << (self.significand_bits - 1)
    }

    pub fn zero(&self) -> BinaryFloat {
        BinaryFloat {
            sign: Sign::Pos,
            significand: 0,
            exponent: self.min_exponent,
        }
    }

    pub fn max_finite(&self) -> BinaryFloat {
        BinaryFloat {
            sign: Sign::Pos,
            significand: self.sig_limit() - 1,
            exponent: self.max_exponent,
        }
    }

    /// Smallest positive value (a subnormal).
    pub fn min_positive(&self) -> BinaryFloat {
        BinaryFloat {
            sign: Sign::Pos,
            significand: 1,
            exponent: self.min_exponent,
        }
    }

    pub fn is_valid(&self, f: &BinaryFloat) -> bool {
        if f.significand == 0 {
            return f.sign == Sign::Pos && f.exponent == self.min_exponent;
        }
        if f.significand >= self.sig_limit() {
            return false;
        }
        if f.significand < self.normal_min_sig() {
            return f.exponent == self.min_exponent;
        }
        (self.min_exponent..=self.max_exponent).contains(&f.exponent)
    }

    /// The exact decimal expansion of a binary value. Always finite; trailing
    /// zeros of the expansion are trimmed.
    pub fn to_exact_decimal(&self, f: &BinaryFloat) -> DecimalNumeral {
        debug_assert!(self.is_valid(f));
        if f.significand == 0 {
            return DecimalNumeral::zero();
        }
        let q = i64::from(f.exponent) - i64::from(self.significand_bits) + 1;
        let sig = BigUint::from(f.significand);
        // sig × 2^q = sig × 5^(-q) × 10^q for q < 0.
        let (int, dec_shift) = if q >= 0 {
            (sig << (q as u64), 0i64)
        } else {
            (sig * BigUint::from(5u8).pow((-q) as u32), q)
        };
        let mut digits = int.to_radix_be(10);
        let len = digits.len() as i64;
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        DecimalNumeral::from_parts(f.sign, digits, len + dec_shift)
            .expect("expansion digits are valid")
    }

    /// Converts a decimal to the format. `TowardNegInf` returns the greatest
    /// representable value `<= d`, `TowardPosInf` the least `>= d`, and
    /// `NearestTiesEven` the nearest with ties to an even significand.
    /// Values beyond the largest finite magnitude are an overflow error.
    pub fn from_decimal_directed(
        &self,
        d: &DecimalNumeral,
        rounding: Rounding,
    ) -> Result<BinaryFloat> {
        if let Rounding::NearestTiesEven = rounding {
            return self.from_decimal_nearest(d);
        }
        if d.is_zero() {
            return Ok(self.zero());
        }
        let up = matches!(
            (rounding, d.sign()),
            (Rounding::TowardPosInf, Sign::Pos) | (Rounding::TowardNegInf, Sign::Neg)
        );
        let (sig, exponent) = self.magnitude_directed(d, up, rounding)?;
        Ok(BinaryFloat {
            sign: if sig == 0 { Sign::Pos } else { d.sign() },
            significand: sig,
            exponent,
        })
    }

    /// The representable value nearest `d`, ties to an even significand.
    pub fn from_decimal_nearest(&self, d: &DecimalNumeral) -> Result<BinaryFloat> {
        if d.is_zero() {
            return Ok(self.zero());
        }
        let down = self.from_decimal_directed(d, Rounding::TowardNegInf)?;
        let upv = self.from_decimal_directed(d, Rounding::TowardPosInf)?;
        if down == upv {
            return Ok(down);
        }
        let lo = self.to_exact_decimal(&down);
        let hi = self.to_exact_decimal(&upv);
        let dist_lo = decnum::sub(d, &lo).abs();
        let dist_hi = decnum::sub(&hi, d).abs();
        Ok(match dist_lo.cmp_value(&dist_hi) {
            Ordering::Less => down,
            Ordering::Greater => upv,
            Ordering::Equal => {
                if down.significand % 2 == 0 {
                    down
                } else {
                    upv
                }
            }
        })
    }

    /// Directed magnitude conversion for nonzero `d`; `up` is relative to the
    /// magnitude. Returns (significand, exponent).
    fn magnitude_directed(
        &self,
        d: &DecimalNumeral,
        up: bool,
        rounding: Rounding,
    ) -> Result<(u64, i32)> {
        let p = i64::from(self.significand_bits);
        let overflow = || Error::Overflow {
            upward: rounding == Rounding::TowardPosInf,
        };

        // d magnitude = D × 10^t with D the stored digits as an integer.
        let mut dv = decnum::digits_to_big(d.digits());
        let mut t = d.last_position();
        // Shed trailing zeros to keep the big integers small.
        while (&dv % 10u8).is_zero() && !dv.is_zero() {
            dv /= 10u8;
            t += 1;
        }

        let max_dec = self.to_exact_decimal(&self.max_finite());
        if d.abs().cmp_value(&max_dec) == Ordering::Greater {
            return Err(overflow());
        }

        // Binary exponent of the magnitude: 2^ebin <= |d| < 2^(ebin+1).
        let mut ebin = estimate_log2(&dv, t);
        while !value_ge_pow2(&dv, t, ebin) {
            ebin -= 1;
        }
        while value_ge_pow2(&dv, t, ebin + 1) {
            ebin += 1;
        }

        let clamped = ebin.max(i64::from(self.min_exponent));
        let q = clamped - p + 1;
        // |d| / 2^q as an exact fraction.
        let mut num = dv;
        let mut den = decnum::big_one();
        if t >= 0 {
            num *= decnum::pow10(t as u32);
        } else {
            den *= decnum::pow10((-t) as u32);
        }
        if q >= 0 {
            den <<= q as u64;
        } else {
            num <<= (-q) as u64;
        }
        let (quot, rem) = num_integer_div_rem(&num, &den);
        let mut sig = u64::try_from(&quot).map_err(|_| overflow())?;
        if up && !rem.is_zero() {
            sig += 1;
        }
        let mut exponent = clamped;
        if sig == self.sig_limit() {
            sig = self.normal_min_sig();
            exponent += 1;
        }
        if exponent > i64::from(self.max_exponent) {
            return Err(overflow());
        }
        if sig == 0 {
            return Ok((0, self.min_exponent));
        }
        Ok((sig, exponent as i32))
    }

    /// Value comparison of two floats of this format. Valid for any pair of
    /// values satisfying the format invariants: magnitude order is exactly
    /// lexicographic order on (exponent, significand).
    pub fn cmp_value(&self, a: &BinaryFloat, b: &BinaryFloat) -> Ordering {
        let rank = |f: &BinaryFloat| -> i8 {
            if f.significand == 0 {
                0
            } else if f.sign == Sign::Neg {
                -1
            } else {
                1
            }
        };
        let (ra, rb) = (rank(a), rank(b));
        if ra != rb {
            return ra.cmp(&rb);
        }
        if ra == 0 {
            return Ordering::Equal;
        }
        let mag = (a.exponent, a.significand).cmp(&(b.exponent, b.significand));
        if ra < 0 {
            mag.reverse()
        } else {
            mag
        }
    }

    /// C-style hexadecimal rendering, e.g. `0x1.9e3779b97f4a8p-1`. The
    /// fraction is always printed in full so the output is bit-exact.
    pub fn to_hex(&self, f: &BinaryFloat) -> String {
        debug_assert!(self.is_valid(f));
        let neg = f.sign == Sign::Neg && f.significand != 0;
        let sign = if neg { "-" } else { "" };
        if f.significand == 0 {
            return format!("{sign}0x0p+0");
        }
        let frac_bits = self.significand_bits - 1;
        let lead = if f.significand >= self.normal_min_sig() {
            1u8
        } else {
            0u8
        };
        let frac = f.significand & (self.normal_min_sig() - 1);
        let hex_digits = frac_bits.div_ceil(4);
        let shifted = frac << (hex_digits * 4 - frac_bits);
        let mut s = format!("{sign}0x{lead}");
        if hex_digits > 0 {
            s.push('.');
            s.push_str(&format!("{shifted:0width$x}", width = hex_digits as usize));
        }
        s.push_str(&format!("p{:+}", f.exponent));
        s
    }

    /// Parses the rendering produced by [`Self::to_hex`]; bit-exact round trip.
    pub fn parse_hex(&self, s: &str) -> Result<BinaryFloat> {
        let syntax = |message: &str| Error::Syntax {
            column: 1,
            message: message.into(),
        };
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut sign = Sign::Pos;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = Sign::Neg;
            }
            i += 1;
        }
        if !s[i..].starts_with("0x") && !s[i..].starts_with("0X") {
            return Err(syntax("expected 0x prefix"));
        }
        i += 2;
        if i >= bytes.len() || (bytes[i] != b'0' && bytes[i] != b'1') {
            return Err(syntax("expected leading hex bit 0 or 1"));
        }
        let lead = bytes[i] - b'0';
        i += 1;
        let mut frac: u64 = 0;
        let mut frac_hex = 0u32;
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_hexdigit() {
                if frac_hex >= 16 {
                    return Err(syntax("fraction too long"));
                }
                frac = (frac << 4) | u64::from((bytes[i] as char).to_digit(16).unwrap());
                frac_hex += 1;
                i += 1;
            }
            if frac_hex == 0 {
                return Err(syntax("expected hex digits after point"));
            }
        }
        if i >= bytes.len() || (bytes[i] != b'p' && bytes[i] != b'P') {
            return Err(syntax("expected binary exponent marker p"));
        }
        i += 1;
        let exp: i32 = s[i..]
            .parse()
            .map_err(|_| syntax("malformed binary exponent"))?;
        let frac_bits = self.significand_bits - 1;
        // Reject fraction bits beyond the format's precision.
        let total_bits = frac_hex * 4;
        let value_bits = if total_bits <= frac_bits {
            frac << (frac_bits - total_bits)
        } else {
            let drop = total_bits - frac_bits;
            if frac & ((1u64 << drop) - 1) != 0 {
                return Err(syntax("fraction not representable in format"));
            }
            frac >> drop
        };
        let significand = (u64::from(lead) << frac_bits) | value_bits;
        if significand == 0 {
            return Ok(self.zero());
        }
        let f = BinaryFloat {
            sign,
            significand,
            exponent: exp,
        };
        if !self.is_valid(&f) {
            return Err(syntax("value outside format"));
        }
        Ok(f)
    }
}

/// A value of a [`BinaryFormat`]: `sign × significand × 2^(exponent - bits + 1)`.
/// Normalized unless subnormal at the minimum exponent; zero is
/// `(+, 0, min_exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryFloat {
    pub sign: Sign,
    pub significand: u64,
    pub exponent: i32,
}

impl BinaryFloat {
    pub fn is_zero(&self) -> bool {
        self.significand == 0
    }
}

/// Floating-point estimate of floor(log2(D × 10^t)); corrected by exact
/// comparisons afterwards, so it only needs to be close.
fn estimate_log2(d: &BigUint, t: i64) -> i64 {
    let bits = d.bits() as i64;
    bits - 1 + (t as f64 * std::f64::consts::LOG2_10).round() as i64
}

/// Exact test of D × 10^t >= 2^e.
fn value_ge_pow2(d: &BigUint, t: i64, e: i64) -> bool {
    let mut lhs = d.clone();
    let mut rhs = decnum::big_one();
    if t >= 0 {
        lhs *= decnum::pow10(t as u32);
    } else {
        rhs *= decnum::pow10((-t) as u32);
    }
    if e >= 0 {
        rhs <<= e as u64;
    } else {
        lhs <<= (-e) as u64;
    }
    lhs >= rhs
}

fn num_integer_div_rem(num: &BigUint, den: &BigUint) -> (BigUint, BigUint) {
    (num / den, num % den)
}
