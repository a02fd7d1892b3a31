//! Factored interval notation and the other output styles.
//!
//! Factoring writes the digits shared by both bounds once: the interval
//! `[0.6180339887498946804, 0.6180339887498950136]` becomes
//! `0.61803398874989[46804,50136]`. This module converts intervals to and
//! from that form, normalizes a shared power of ten out of both bounds, and
//! renders intervals in every supported style.

use std::cmp::Ordering;

use crate::decnum::{self, DecimalNumeral, Rounding, Sign};
use crate::error::{Error, Result};
use crate::interval::{CenterRadius, DecimalInterval};

/// Sign classification of a factored interval. `Mixed` intervals straddle
/// zero and cannot be factored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSign {
    Pos,
    Neg,
    Mixed,
}

/// A factored surface form. `prefix` is the shared leading text of the two
/// bound magnitudes (it may contain one decimal point). For a point
/// interval both suffixes are empty. With an empty prefix the form is
/// plain: the suffix fields then hold complete, signed bound texts.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredForm {
    pub sign: FactorSign,
    pub prefix: String,
    pub lower_suffix: String,
    pub upper_suffix: String,
    pub scale: i64,
}

impl FactoredForm {
    pub fn is_point(&self) -> bool {
        !self.prefix.is_empty() && self.lower_suffix.is_empty() && self.upper_suffix.is_empty()
    }

    pub fn is_plain(&self) -> bool {
        self.prefix.is_empty()
    }
}

/// Output styles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Factored,
    Plain,
    CenterRadiusAngle,
    CenterRadiusPlus,
    SingleNumber,
}

/// Rendering knobs. `allow_bare_zero_prefix` admits forms like
/// `0.[199,201]` whose prefix carries no digits beyond `0.`;
/// `center_last_position` caps center-radius output at a decimal position
/// (`None` renders the exact midpoint and half-width).
#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    pub allow_bare_zero_prefix: bool,
    pub center_last_position: Option<i64>,
}

/// Extracts the maximal common prefix of the aligned bounds.
/// Value-preserving: `unfactor(factor(i)) == i`.
pub fn factor(interval: &DecimalInterval) -> FactoredForm {
    factor_with(interval, &RenderOptions::default())
}

pub fn factor_with(interval: &DecimalInterval, opts: &RenderOptions) -> FactoredForm {
    let (l, u) = match (interval.lower(), interval.upper()) {
        (Some(l), Some(u)) => (l, u),
        (l, u) => {
            return FactoredForm {
                sign: FactorSign::Mixed,
                prefix: String::new(),
                lower_suffix: l.map_or("-inf".to_string(), |d| d.to_display_string()),
                upper_suffix: u.map_or("inf".to_string(), |d| d.to_display_string()),
                scale: 0,
            }
        }
    };
    let sign = if l.is_negative() && !u.is_negative() && !u.is_zero() {
        FactorSign::Mixed
    } else if l.is_negative() {
        FactorSign::Neg
    } else {
        FactorSign::Pos
    };
    if interval.is_point() {
        return FactoredForm {
            sign,
            prefix: l.to_plain_magnitude(),
            lower_suffix: String::new(),
            upper_suffix: String::new(),
            scale: 0,
        };
    }
    let plain = || FactoredForm {
        sign,
        prefix: String::new(),
        lower_suffix: l.to_display_string(),
        upper_suffix: u.to_display_string(),
        scale: 0,
    };
    if sign == FactorSign::Mixed {
        return plain();
    }
    let layout = interval.layout().expect("bounded interval has a layout");
    let np = layout.prefix_positions;
    if np == 0 {
        if opts.allow_bare_zero_prefix && layout.anchor == 0 {
            // Both magnitudes render as 0.xxx; share the bare `0.`.
            return FactoredForm {
                sign,
                prefix: "0.".to_string(),
                lower_suffix: digits_over(l, -1, layout.last),
                upper_suffix: digits_over(u, -1, layout.last),
                scale: 0,
            };
        }
        return plain();
    }
    // Write the shared positions once, then the residual digit runs.
    let split = layout.anchor - np as i64;
    let mut prefix = String::new();
    if layout.anchor == 0 {
        prefix.push_str("0.");
    }
    for p in (split..layout.anchor).rev() {
        prefix.push((b'0' + l.digit_at(p)) as char);
        if p == 0 && split < 0 {
            prefix.push('.');
        }
    }
    if split == 0 && layout.last < 0 {
        // Prefix ends exactly at the decimal point; the suffixes are
        // fractional, so the point belongs to the prefix.
        prefix.push('.');
    }
    FactoredForm {
        sign,
        prefix,
        lower_suffix: digits_over(l, split - 1, layout.last),
        upper_suffix: digits_over(u, split - 1, layout.last),
        scale: 0,
    }
}

/// The magnitude digits of `d` covering positions `from` down to `to`,
/// inclusive, as text.
fn digits_over(d: &DecimalNumeral, from: i64, to: i64) -> String {
    (to..=from)
        .rev()
        .map(|p| (b'0' + d.digit_at(p)) as char)
        .collect()
}

/// Inverse of [`factor`]: reconstructs the interval exactly. Unequal suffix
/// lengths are accepted; the result is validated by bound order, so
/// `0.12[9,11]` is rejected (0.129 > 0.1211).
pub fn unfactor(form: &FactoredForm) -> Result<DecimalInterval> {
    if form.is_point() {
        let magnitude = parse_bound_text(&form.prefix)?
            .ok_or_else(|| Error::InvalidValue {
                message: "point form cannot be unbounded".into(),
            })?;
        let value = match form.sign {
            FactorSign::Neg => magnitude.negate(),
            _ => magnitude,
        };
        return Ok(DecimalInterval::point(value.mul_pow10(form.scale)));
    }
    let (lower, upper) = if form.is_plain() {
        (
            parse_bound_text(&form.lower_suffix)?,
            parse_bound_text(&form.upper_suffix)?,
        )
    } else {
        check_suffix_digits(&form.lower_suffix)?;
        check_suffix_digits(&form.upper_suffix)?;
        let lower_text = format!("{}{}", form.prefix, form.lower_suffix);
        let upper_text = format!("{}{}", form.prefix, form.upper_suffix);
        let lo = parse_bound_text(&lower_text)?.expect("digit text is finite");
        let hi = parse_bound_text(&upper_text)?.expect("digit text is finite");
        match form.sign {
            FactorSign::Neg => (Some(lo.negate()), Some(hi.negate())),
            _ => (Some(lo), Some(hi)),
        }
    };
    let scale = form.scale;
    let lower = lower.map(|d| d.mul_pow10(scale));
    let upper = upper.map(|d| d.mul_pow10(scale));
    match (lower, upper) {
        (Some(l), Some(u)) => DecimalInterval::new(l, u),
        (Some(l), None) => Ok(DecimalInterval::unbounded_above(l)),
        (None, Some(u)) => Ok(DecimalInterval::unbounded_below(u)),
        (None, None) => Ok(DecimalInterval::unbounded()),
    }
}

/// Factors a shared power of ten out of both bounds: the bound of larger
/// magnitude is normalized so its leading digit sits just before the
/// decimal point, and the same scale divides the other bound. Returns the
/// mantissa interval and the extracted scale.
pub fn normalize_scale(interval: &DecimalInterval) -> Result<(DecimalInterval, i64)> {
    let (l, u) = match (interval.lower(), interval.upper()) {
        (Some(l), Some(u)) => (l, u),
        _ => {
            return Err(Error::Unbounded {
                operation: "scale normalization",
            })
        }
    };
    let la = l.abs();
    let ua = u.abs();
    let big = if la.cmp_value(&ua) == Ordering::Greater {
        &la
    } else {
        &ua
    };
    if big.is_zero() {
        return Ok((interval.clone(), 0));
    }
    let scale = big.lead_exponent() - 1;
    let mantissa = DecimalInterval::new(l.mul_pow10(-scale), u.mul_pow10(-scale))
        .expect("shifting both bounds keeps order");
    Ok((mantissa, scale))
}

/// Renders a factored form in the given style. Center-radius and
/// single-number styles reconstruct the interval first.
pub fn render(form: &FactoredForm, style: Style, opts: &RenderOptions) -> Result<String> {
    match style {
        Style::Factored => Ok(render_factored(form)),
        Style::Plain => Ok(render_plain(form)),
        Style::CenterRadiusAngle | Style::CenterRadiusPlus | Style::SingleNumber => {
            render_interval(&unfactor(form)?, style, opts)
        }
    }
}

/// Renders an interval in the given style; the main rendering entry point.
pub fn render_interval(
    interval: &DecimalInterval,
    style: Style,
    opts: &RenderOptions,
) -> Result<String> {
    match style {
        Style::Factored => Ok(render_factored(&factor_with(interval, opts))),
        Style::Plain => Ok(render_plain(&factor_with(interval, opts))),
        Style::CenterRadiusAngle | Style::CenterRadiusPlus => {
            let cr = match opts.center_last_position {
                None => interval.to_center_radius()?,
                Some(pos) => interval.to_center_radius_rounded(pos)?,
            };
            Ok(render_center_radius(&cr, style))
        }
        Style::SingleNumber => {
            let d = single_number_numeral(interval)?;
            Ok(d.to_precision_string())
        }
    }
}

fn scale_suffix(scale: i64) -> String {
    if scale == 0 {
        String::new()
    } else {
        format!(" x 10^{scale}")
    }
}

fn render_factored(form: &FactoredForm) -> String {
    if form.is_point() {
        let sign = if form.sign == FactorSign::Neg { "-" } else { "" };
        return format!("[{}{}]{}", sign, form.prefix, scale_suffix(form.scale));
    }
    if form.is_plain() {
        return format!(
            "[{},{}]{}",
            form.lower_suffix,
            form.upper_suffix,
            scale_suffix(form.scale)
        );
    }
    let sign = if form.sign == FactorSign::Neg { "-" } else { "" };
    format!(
        "{}{}[{},{}]{}",
        sign,
        form.prefix,
        form.lower_suffix,
        form.upper_suffix,
        scale_suffix(form.scale)
    )
}

fn render_plain(form: &FactoredForm) -> String {
    if form.is_point() {
        let sign = if form.sign == FactorSign::Neg { "-" } else { "" };
        return format!("[{}{}]{}", sign, form.prefix, scale_suffix(form.scale));
    }
    if form.is_plain() {
        return format!(
            "[{},{}]{}",
            form.lower_suffix,
            form.upper_suffix,
            scale_suffix(form.scale)
        );
    }
    let sign = if form.sign == FactorSign::Neg { "-" } else { "" };
    format!(
        "[{s}{p}{a},{s}{p}{b}]{sc}",
        s = sign,
        p = form.prefix,
        a = form.lower_suffix,
        b = form.upper_suffix,
        sc = scale_suffix(form.scale)
    )
}

fn render_center_radius(cr: &CenterRadius, style: Style) -> String {
    let c = cr.center.to_plain_string();
    let r = cr.radius.to_plain_magnitude();
    match style {
        Style::CenterRadiusAngle => format!("<{c},{r}>"),
        Style::CenterRadiusPlus => format!("{c} + [-{r},+{r}]"),
        _ => unreachable!(),
    }
}

/// The longest numeral `d` such that `[d - uld, d + uld]` encloses the
/// interval; the single-number rendering rule. Point
/// intervals return the bound at its stored precision.
pub fn single_number_numeral(interval: &DecimalInterval) -> Result<DecimalNumeral> {
    let (l, u) = match (interval.lower(), interval.upper()) {
        (Some(l), Some(u)) => (l, u),
        _ => {
            return Err(Error::Unbounded {
                operation: "single-number rendering",
            })
        }
    };
    if interval.is_point() {
        return Ok(l.clone());
    }
    let width = interval.width().expect("bounded");
    let center = interval.to_center_radius()?.center;
    // Smallest position p with 2 × 10^p >= width; the grid can only get
    // easier to hit as p grows.
    let mut p = width.lead_exponent() - 1;
    if two_at(p).cmp_value(&width) == Ordering::Less {
        p += 1;
    }
    loop {
        let step = one_at(p);
        let lo_c = decnum::sub(u, &step);
        let hi_c = decnum::add(l, &step);
        let lo_g = lo_c.round_at_position(p, Rounding::TowardPosInf);
        let hi_g = hi_c.round_at_position(p, Rounding::TowardNegInf);
        if lo_g.cmp_value(&hi_g) != Ordering::Greater {
            let mut cand = center.round_at_position(p, Rounding::NearestTiesEven);
            if cand.cmp_value(&lo_g) == Ordering::Less {
                cand = lo_g;
            } else if cand.cmp_value(&hi_g) == Ordering::Greater {
                cand = hi_g;
            }
            return Ok(cand);
        }
        p += 1;
    }
}

fn one_at(position: i64) -> DecimalNumeral {
    DecimalNumeral::from_parts(Sign::Pos, vec![1], position + 1).unwrap()
}

fn two_at(position: i64) -> DecimalNumeral {
    DecimalNumeral::from_parts(Sign::Pos, vec![2], position + 1).unwrap()
}

fn check_suffix_digits(s: &str) -> Result<()> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidValue {
            message: format!("bracket suffix `{s}` must be decimal digits"),
        });
    }
    Ok(())
}

/// Parses a bound text as used in plain forms: a numeral, or an infinity
/// marker (`inf`, `+inf`, `-inf`) giving `None`.
fn parse_bound_text(s: &str) -> Result<Option<DecimalNumeral>> {
    match s {
        "inf" | "+inf" => return Ok(None),
        "-inf" => return Ok(None),
        _ => {}
    }
    let text = if let Some(rest) = s.strip_prefix('.') {
        format!("0.{rest}")
    } else if let Some(rest) = s.strip_prefix("-.") {
        format!("-0.{rest}")
    } else if let Some(head) = s.strip_suffix('.') {
        head.to_string()
    } else {
        s.to_string()
    };
    text.parse().map(Some)
}
