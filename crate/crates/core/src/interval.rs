//! Interval values and outward decimal rounding.
//!
//! `outward_decimal` is the soundness-critical operation: it widens an
//! interval so that, after the common leading digits of the two bounds are
//! factored out, exactly `k` suffix digits remain per bound. The lower bound
//! always moves toward negative infinity and the upper toward positive
//! infinity, so the result encloses the input. When the bounds share no
//! leading digits (including the mixed-sign case) each bound is rounded to
//! `k` significant digits of its own magnitude instead.

use std::cmp::Ordering;

use crate::binconv::{BinaryFloat, BinaryFormat};
use crate::decnum::{self, DecimalNumeral, Rounding};
use crate::error::{Error, Result};

/// An ordered pair of binary floats, the raw computational result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryInterval {
    pub lower: BinaryFloat,
    pub upper: BinaryFloat,
}

impl BinaryInterval {
    pub fn new(fmt: &BinaryFormat, lower: BinaryFloat, upper: BinaryFloat) -> Result<Self> {
        if fmt.cmp_value(&lower, &upper) == Ordering::Greater {
            return Err(Error::BoundsReversed {
                lower: fmt.to_hex(&lower),
                upper: fmt.to_hex(&upper),
            });
        }
        Ok(BinaryInterval { lower, upper })
    }

    pub fn point(value: BinaryFloat) -> Self {
        BinaryInterval {
            lower: value,
            upper: value,
        }
    }
}

/// A pair of decimal numerals with `lower <= upper`. Finite bounds are kept
/// aligned (shared exponent and precision). A missing side marks an
/// unbounded interval, rendered as `-inf`/`inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecimalInterval {
    lower: Option<DecimalNumeral>,
    upper: Option<DecimalNumeral>,
}

/// Midpoint and half-width of an interval. `exact` is false when a
/// precision cap forced rounding; the enclosure `[center-radius,
/// center+radius] ⊇ source` holds either way.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterRadius {
    pub center: DecimalNumeral,
    pub radius: DecimalNumeral,
    pub exact: bool,
}

/// Positional facts about a bounded interval. Positions are powers of ten:
/// written digits run from position `anchor - 1` down to `last`, and the
/// two bounds agree on the first `prefix_positions` of them.
/// `prefix_positions == 0` means no usable common prefix: rounding falls
/// back to per-bound significant digits.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Layout {
    pub anchor: i64,
    pub last: i64,
    pub prefix_positions: usize,
}

impl Layout {
    pub fn total_positions(&self) -> usize {
        (self.anchor - self.last) as usize
    }

    pub fn suffix_positions(&self) -> usize {
        self.total_positions() - self.prefix_positions
    }
}

impl DecimalInterval {
    pub fn new(lower: DecimalNumeral, upper: DecimalNumeral) -> Result<Self> {
        if lower.cmp_value(&upper) == Ordering::Greater {
            return Err(Error::BoundsReversed {
                lower: lower.to_plain_string(),
                upper: upper.to_plain_string(),
            });
        }
        Ok(DecimalInterval {
            lower: Some(lower),
            upper: Some(upper),
        })
    }

    pub fn point(value: DecimalNumeral) -> Self {
        DecimalInterval {
            lower: Some(value.clone()),
            upper: Some(value),
        }
    }

    pub fn unbounded_below(upper: DecimalNumeral) -> Self {
        DecimalInterval {
            lower: None,
            upper: Some(upper),
        }
    }

    pub fn unbounded_above(lower: DecimalNumeral) -> Self {
        DecimalInterval {
            lower: Some(lower),
            upper: None,
        }
    }

    pub fn unbounded() -> Self {
        DecimalInterval {
            lower: None,
            upper: None,
        }
    }

    /// Exact decimal image of a binary interval; the bridge along which all
    /// rendering happens, so decimal rounding is the only rounding.
    pub fn from_binary(fmt: &BinaryFormat, interval: &BinaryInterval) -> Self {
        let lower = fmt.to_exact_decimal(&interval.lower);
        let upper = fmt.to_exact_decimal(&interval.upper);
        Self::new(lower, upper).expect("binary interval is ordered")
    }

    pub fn lower(&self) -> Option<&DecimalNumeral> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&DecimalNumeral> {
        self.upper.as_ref()
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }

    pub fn is_point(&self) -> bool {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => l.cmp_value(u) == Ordering::Equal,
            _ => false,
        }
    }

    /// Exact width `upper - lower`; `None` when a side is unbounded.
    pub fn width(&self) -> Option<DecimalNumeral> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => Some(decnum::sub(u, l)),
            _ => None,
        }
    }

    /// True iff `self` contains `other` as a set (exact comparisons).
    pub fn encloses(&self, other: &DecimalInterval) -> bool {
        let lower_ok = match (&self.lower, &other.lower) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a.cmp_value(b) != Ordering::Greater,
        };
        let upper_ok = match (&self.upper, &other.upper) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a.cmp_value(b) != Ordering::Less,
        };
        lower_ok && upper_ok
    }

    pub fn encloses_binary(&self, fmt: &BinaryFormat, other: &BinaryInterval) -> bool {
        self.encloses(&DecimalInterval::from_binary(fmt, other))
    }

    /// Positional layout of the bounds. Computed from `digit_at`, which
    /// reads the true decimal digit of the magnitude at each position, so
    /// the result depends only on values and ulds, never on stored leading
    /// zeros or the arbitrary exponent of a zero bound.
    pub(crate) fn layout(&self) -> Option<Layout> {
        let (l, u) = match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => (l, u),
            _ => return None,
        };
        let lead = match (l.is_zero(), u.is_zero()) {
            (false, false) => l.lead_exponent().max(u.lead_exponent()),
            (true, false) => u.lead_exponent(),
            (false, true) => l.lead_exponent(),
            (true, true) => l.exponent().max(u.exponent()),
        };
        let last = l.last_position().min(u.last_position());
        let anchor = lead.max(0);
        let mixed = l.is_negative() && !u.is_negative() && !u.is_zero();
        let mut prefix_positions = 0usize;
        if !mixed {
            let mut p = anchor - 1;
            while p >= last && l.digit_at(p) == u.digit_at(p) {
                prefix_positions += 1;
                p -= 1;
            }
            // A prefix ending left of the decimal point is only printable
            // when the digits reach the ones place; otherwise the split
            // would drop implied zeros or put the point inside a suffix.
            if (prefix_positions as i64) < anchor && last != 0 {
                prefix_positions = 0;
            }
        }
        Some(Layout {
            anchor,
            last,
            prefix_positions,
        })
    }

    /// Decimal position of the k-th suffix digit: where `outward_decimal`
    /// cuts when a common prefix exists. `None` for unbounded intervals.
    pub fn suffix_position(&self, k: usize) -> Option<i64> {
        self.layout()
            .map(|l| l.anchor - l.prefix_positions as i64 - k as i64)
    }

    /// Number of suffix digits available before outward rounding stops
    /// shortening anything (the pyramid height).
    pub fn suffix_capacity(&self) -> usize {
        let sig = |d: &DecimalNumeral| -> usize {
            let lz = d.digits().iter().take_while(|x| **x == 0).count();
            d.precision() - lz
        };
        let per_bound_max = || {
            self.lower
                .iter()
                .chain(self.upper.iter())
                .map(sig)
                .max()
                .unwrap_or(1)
                .max(1)
        };
        let layout = match self.layout() {
            // Unbounded: the finite side's digits are all there is.
            None => return per_bound_max(),
            Some(l) => l,
        };
        if self.is_point() {
            return 0;
        }
        if layout.prefix_positions > 0 {
            layout.suffix_positions()
        } else {
            per_bound_max()
        }
    }

    /// The tightest enclosing interval whose bounds carry exactly `k` digits
    /// after the common prefix. With no usable prefix each bound gets `k`
    /// significant digits of its own. `k` beyond the available digits pads
    /// with zeros, leaving values unchanged.
    pub fn outward_decimal(&self, k: usize) -> DecimalInterval {
        let k = k.max(1);
        let (l, u) = match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => (l.clone(), u.clone()),
            (l, u) => {
                // Round whichever side exists; unbounded sides pass through.
                return DecimalInterval {
                    lower: l
                        .as_ref()
                        .map(|d| round_significant(d, k, Rounding::TowardNegInf)),
                    upper: u
                        .as_ref()
                        .map(|d| round_significant(d, k, Rounding::TowardPosInf)),
                };
            }
        };
        if self.is_point() {
            return self.clone();
        }
        let mut layout = self.layout().expect("bounded");
        // An upper-bound carry can shorten the common prefix; in that case
        // `k` is re-interpreted against the post-rounding prefix.
        for _ in 0..layout.total_positions() + 2 {
            if layout.prefix_positions == 0 {
                let lower = round_significant(&l, k, Rounding::TowardNegInf);
                let upper = round_significant(&u, k, Rounding::TowardPosInf);
                return DecimalInterval::new(lower, upper).expect("outward keeps order");
            }
            let t = layout.anchor - layout.prefix_positions as i64 - k as i64;
            if t <= layout.last {
                // Requested more digits than exist: zero-pad both bounds.
                let lower = l.round_at_position(t, Rounding::TowardNegInf);
                let upper = u.round_at_position(t, Rounding::TowardPosInf);
                return DecimalInterval::new(lower, upper).expect("padding keeps order");
            }
            let lower = l.round_at_position(t, Rounding::TowardNegInf);
            let upper = u.round_at_position(t, Rounding::TowardPosInf);
            let candidate = DecimalInterval::new(lower, upper).expect("outward keeps order");
            let next = candidate.layout().expect("bounded");
            let suffix = next.anchor - next.prefix_positions as i64 - t;
            if next.prefix_positions > 0 && suffix == k as i64 {
                return candidate;
            }
            layout = next;
        }
        unreachable!("outward rounding converges before exhausting positions");
    }

    /// The nested sequence of progressively shorter representations, from
    /// all available suffix digits down to one. Each row is the outward
    /// rounding of the row before it; re-rounding an already-rounded row
    /// gives the same result as rounding the source except when a carry
    /// flips the prefix regime, and rounding the row is what keeps the
    /// sequence nested in that corner.
    pub fn pyramid(&self) -> Vec<DecimalInterval> {
        if !self.is_bounded() || self.is_point() {
            return vec![self.clone()];
        }
        let kmax = self.suffix_capacity().max(1);
        let mut rows = Vec::with_capacity(kmax);
        let mut current = self.outward_decimal(kmax);
        rows.push(current.clone());
        for k in (1..kmax).rev() {
            current = current.outward_decimal(k);
            rows.push(current.clone());
        }
        rows
    }

    /// Exact midpoint and half-width. Both have finite decimal expansions,
    /// so no rounding is involved.
    pub fn to_center_radius(&self) -> Result<CenterRadius> {
        let (l, u) = self.require_bounded("center-radius extraction")?;
        let center = decnum::add(l, u).halve();
        let radius = decnum::sub(u, l).halve();
        Ok(CenterRadius {
            center,
            radius,
            exact: true,
        })
    }

    /// Center-radius with both components cut at `last_position`: the center
    /// is rounded to nearest and the radius is recomputed as
    /// `max(center-lower, upper-center)` rounded upward, so enclosure holds.
    pub fn to_center_radius_rounded(&self, last_position: i64) -> Result<CenterRadius> {
        let (l, u) = self.require_bounded("center-radius extraction")?;
        let exact = self.to_center_radius()?;
        if exact.center.last_position() >= last_position
            && exact.radius.last_position() >= last_position
        {
            // Already at or coarser than the cap: pad instead of rounding.
            return Ok(CenterRadius {
                center: exact.center.round_at_position(last_position, Rounding::TowardNegInf),
                radius: exact.radius.round_at_position(last_position, Rounding::TowardPosInf),
                exact: true,
            });
        }
        let center = exact
            .center
            .round_at_position(last_position, Rounding::NearestTiesEven);
        let left = decnum::sub(&center, l);
        let right = decnum::sub(u, &center);
        let worst = if left.cmp_value(&right) == Ordering::Greater {
            left
        } else {
            right
        };
        let radius = worst.round_at_position(last_position, Rounding::TowardPosInf);
        Ok(CenterRadius {
            center,
            radius,
            exact: false,
        })
    }

    fn require_bounded(&self, operation: &'static str) -> Result<(&DecimalNumeral, &DecimalNumeral)> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => Ok((l, u)),
            _ => Err(Error::Unbounded { operation }),
        }
    }
}

/// Rounds to `k` significant digits of the bound's own magnitude; exact
/// values are padded rather than altered.
fn round_significant(d: &DecimalNumeral, k: usize, rounding: Rounding) -> DecimalNumeral {
    if d.is_zero() {
        return d.clone();
    }
    d.round_at_position(d.lead_exponent() - k as i64, rounding)
}
