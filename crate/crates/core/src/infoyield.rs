//! Information-theoretic evaluation of digit counts.
//!
//! With a uniform prior over an interval, the uncertainty about a value in
//! it is the base-10 logarithm of the width, measured in dits. Showing one
//! more suffix digit per bound narrows the printable enclosure; the drop in
//! uncertainty is that digit's marginal yield. Yields fall off so fast that
//! two or three bracket digits carry nearly all the information, which is
//! what the default selection policy implements.

use crate::decnum::{DecimalNumeral, Rounding};
use crate::error::{Error, Result};
use crate::factoring::{render_interval, RenderOptions, Style};
use crate::interval::DecimalInterval;

/// Uncertainty of a bounded interval in dits: `log10(width)`. Point
/// intervals report negative infinity, unbounded ones positive infinity.
pub fn uncertainty(interval: &DecimalInterval) -> f64 {
    match interval.width() {
        None => f64::INFINITY,
        Some(w) => log10_numeral(&w),
    }
}

/// `log10` evaluated on an exact numeral without converting the whole value
/// to a float (the exponent may far exceed the double range).
fn log10_numeral(d: &DecimalNumeral) -> f64 {
    if d.is_zero() {
        return f64::NEG_INFINITY;
    }
    let lead = d.lead_exponent();
    let lz = (d.exponent() - lead) as usize;
    let sig: String = d.digits()[lz..]
        .iter()
        .take(32)
        .map(|x| (b'0' + x) as char)
        .collect();
    let mantissa: f64 = format!("0.{sig}").parse().expect("mantissa digits");
    mantissa.log10() + lead as f64
}

/// Uncertainty removed by the k-th suffix digit: the difference between the
/// uncertainties of the (k-1)- and k-digit enclosures. For `k = 1` the
/// reference is the prefix-only enclosure (one uld of the bare prefix).
pub fn marginal_yield(interval: &DecimalInterval, k: usize) -> Result<f64> {
    if !interval.is_bounded() {
        return Err(Error::Unbounded {
            operation: "marginal yield",
        });
    }
    if interval.is_point() {
        return Ok(0.0);
    }
    let kmax = interval.suffix_capacity();
    if k < 1 || k > kmax {
        return Err(Error::InvalidValue {
            message: format!("digit index {k} outside 1..={kmax}"),
        });
    }
    let wider = if k == 1 {
        anchor_enclosure(interval)
    } else {
        interval.outward_decimal(k - 1)
    };
    Ok(uncertainty(&wider) - uncertainty(&interval.outward_decimal(k)))
}

/// Closed-form approximation of the k-th digit's yield:
/// `log10(1 + 10^-k)`, about `10^-k` for large k.
pub fn approx_marginal_yield(k: usize) -> f64 {
    let alpha = 10f64.powi(-(k as i32));
    alpha.ln_1p() / std::f64::consts::LN_10
}

/// The zero-suffix-digit enclosure anchoring the k = 1 yield. With a common
/// prefix this is `[prefix, prefix + uld]`; without one, each bound rounds
/// outward to its enclosing power of ten.
fn anchor_enclosure(interval: &DecimalInterval) -> DecimalInterval {
    let (l, u) = match (interval.lower(), interval.upper()) {
        (Some(l), Some(u)) => (l, u),
        _ => return interval.clone(),
    };
    let layout = interval.layout().expect("bounded");
    if layout.prefix_positions > 0 {
        let t = layout.anchor - layout.prefix_positions as i64;
        return DecimalInterval::new(
            l.round_at_position(t, Rounding::TowardNegInf),
            u.round_at_position(t, Rounding::TowardPosInf),
        )
        .expect("outward keeps order");
    }
    let pow10_out = |d: &DecimalNumeral, r: Rounding| d.round_at_position(d.lead_exponent(), r);
    DecimalInterval::new(
        pow10_out(l, Rounding::TowardNegInf),
        pow10_out(u, Rounding::TowardPosInf),
    )
    .expect("outward keeps order")
}

/// How to pick the bracket digit count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionPolicy {
    /// Three digits, capped at the available count.
    Default,
    /// Smallest k whose next digit would yield less than the threshold.
    Threshold(f64),
    /// One digit: the maximum yield an interval notation can give.
    MaxInfo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitSelection {
    pub k: usize,
    /// Set when the interval is a point and no widening is involved.
    pub exact: bool,
}

pub fn select_digits(interval: &DecimalInterval, policy: SelectionPolicy) -> DigitSelection {
    if interval.is_point() {
        return DigitSelection { k: 1, exact: true };
    }
    let kmax = interval.suffix_capacity().max(1);
    let k = match policy {
        SelectionPolicy::MaxInfo => 1,
        SelectionPolicy::Default => 3.min(kmax),
        SelectionPolicy::Threshold(tau) => {
            let mut chosen = kmax;
            for k in 1..kmax {
                match marginal_yield(interval, k + 1) {
                    Ok(y) if y < tau => {
                        chosen = k;
                        break;
                    }
                    _ => {}
                }
            }
            chosen
        }
    };
    DigitSelection { k, exact: false }
}

/// One row of the digit-by-digit analysis table.
#[derive(Debug, Clone)]
pub struct YieldRow {
    pub k: usize,
    pub rendered: String,
    pub width: DecimalNumeral,
    pub uncertainty: f64,
    pub marginal_yield: f64,
}

#[derive(Debug, Clone)]
pub struct YieldReport {
    /// True for point intervals; the table is then empty.
    pub exact: bool,
    pub rows: Vec<YieldRow>,
}

/// Per-digit widths, uncertainties and yields for every available k.
pub fn analyze(interval: &DecimalInterval, opts: &RenderOptions) -> Result<YieldReport> {
    if !interval.is_bounded() {
        return Err(Error::Unbounded {
            operation: "yield analysis",
        });
    }
    if interval.is_point() {
        return Ok(YieldReport {
            exact: true,
            rows: Vec::new(),
        });
    }
    let kmax = interval.suffix_capacity().max(1);
    let mut rows = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let widened = interval.outward_decimal(k);
        rows.push(YieldRow {
            k,
            rendered: render_interval(&widened, Style::Factored, opts)?,
            width: widened.width().expect("bounded"),
            uncertainty: uncertainty(&widened),
            marginal_yield: marginal_yield(interval, k)?,
        });
    }
    Ok(YieldReport { exact: false, rows })
}
