//! Acceptance suite: one test per acceptance criterion, each printing a
//! PASS line (run with `--nocapture` to see them). Expected values come
//! from independent oracles computed here, never from the code under test.

use std::cmp::Ordering;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use intervalfmt::{
    decnum, factor, marginal_yield, normalize_scale, parse, render, render_interval,
    semantic_interval, to_binary_interval, uncertainty, BinaryFloat, BinaryFormat,
    BinaryInterval, ConventionMode, DecimalInterval, DecimalNumeral, RenderOptions, Rounding,
    Sign, Style,
};

fn num(s: &str) -> DecimalNumeral {
    s.parse().unwrap()
}

fn ival(l: &str, u: &str) -> DecimalInterval {
    DecimalInterval::new(num(l), num(u)).unwrap()
}

fn ladder_sample() -> DecimalInterval {
    ival("5.1268427635136", "5.1268472635136")
}

fn golden() -> DecimalInterval {
    ival("0.6180339887498946804", "0.6180339887498950136")
}

fn bin_path() -> &'static str {
    env!("CARGO_BIN_EXE_intervalfmt")
}

fn run_cli(args: &[&str], stdin: &str) -> (String, String, i32) {
    let mut child = Command::new(bin_path())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn CLI");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_1_pyramid_reproduction() {
    let start = Instant::now();
    let (stdout, stderr, code) = run_cli(&["pyramid"], "[5.1268427635136,5.1268472635136]\n");
    assert_eq!(code, 0, "stderr: {stderr}");
    let expected = "\
5.12684[27635136,72635136]
5.12684[2763513,7263514]
5.12684[276351,726352]
5.12684[27635,72636]
5.12684[2763,7264]
5.12684[276,727]
5.12684[27,73]
5.12684[2,8]
";
    assert_eq!(stdout, expected, "pyramid rows must match byte for byte");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1: PASS - pyramid emits the eight rows byte-exactly in {elapsed:?}");
}

#[test]
fn criterion_2_full_precision_factoring() {
    let text = render_interval(&golden(), Style::Factored, &RenderOptions::default()).unwrap();
    assert_eq!(text, "0.61803398874989[46804,50136]");
    let (stdout, _, code) = run_cli(
        &["format", "--digits", "full"],
        "[0.6180339887498946804,0.6180339887498950136]\n",
    );
    assert_eq!(code, 0);
    assert_eq!(stdout.trim_end(), "0.61803398874989[46804,50136]");
    println!("criterion 2: PASS - full-precision factored form is exact");
}

#[test]
fn criterion_3_center_radius() {
    let cr = golden().to_center_radius().unwrap();
    assert!(cr.exact);
    assert_eq!(cr.center.to_plain_string(), "0.6180339887498948470");
    assert_eq!(cr.radius.to_plain_string(), "0.0000000000000001666");
    let text =
        render_interval(&golden(), Style::CenterRadiusPlus, &RenderOptions::default()).unwrap();
    assert_eq!(
        text,
        "0.6180339887498948470 + [-0.0000000000000001666,+0.0000000000000001666]"
    );
    println!("criterion 3: PASS - center/radius are exact and the c+[-r,+r] form matches");
}

#[test]
fn criterion_4_information_figures() {
    let i = ladder_sample();
    let u1 = uncertainty(&i.outward_decimal(1));
    assert!((u1 - (-6.0 + 6f64.log10())).abs() < 1e-12, "u1={u1}");
    let u2 = uncertainty(&i.outward_decimal(2));
    assert!((u2 - (-6.0 + 4.6f64.log10())).abs() < 1e-12, "u2={u2}");

    let y2 = marginal_yield(&i, 2).unwrap();
    let expect2 = 6f64.log10() - 4.6f64.log10();
    assert!((y2 - expect2).abs() < 1e-12, "y2={y2}");
    assert!((y2 - 0.115).abs() < 5e-4);

    let y8 = marginal_yield(&i, 8).unwrap();
    assert!(y8 < 1e-6, "y8={y8}");
    let expect8 = (4.500001f64 / 4.5).log10();
    assert!((y8 - expect8).abs() < 1e-12, "y8={y8}");
    println!("criterion 4: PASS - uncertainties and yields match the closed forms within 1e-12");
}

#[test]
fn criterion_5_scale_normalization() {
    let i = ival("5.1268427635136e2", "5.1268472635136e3");
    let (mantissa, scale) = normalize_scale(&i).unwrap();
    assert_eq!(scale, 3);
    assert_eq!(
        mantissa.lower().unwrap().cmp_value(&num("0.51268427635136")),
        Ordering::Equal
    );
    assert_eq!(
        mantissa.upper().unwrap().cmp_value(&num("5.1268472635136")),
        Ordering::Equal
    );
    let mut form = factor(&mantissa.outward_decimal(2));
    form.scale = scale;
    let text = render(&form, Style::Factored, &RenderOptions::default()).unwrap();
    assert_eq!(text, "[0.51,5.2] x 10^3");
    println!("criterion 5: PASS - two-exponent normalization and k=2 rendering match");
}

#[test]
fn criterion_6_single_number() {
    let i = ival("0.12345678", "0.12356789");
    let text = render_interval(&i, Style::SingleNumber, &RenderOptions::default()).unwrap();
    assert_eq!(text, "0.1235");

    let mode = ConventionMode::SingleNumber;
    let ast = parse("0.1235", mode).unwrap();
    let parsed = semantic_interval(&ast, mode, &BinaryFormat::BINARY64).unwrap();
    assert_eq!(
        parsed.lower().unwrap().cmp_value(&num("0.1234")),
        Ordering::Equal
    );
    assert_eq!(
        parsed.upper().unwrap().cmp_value(&num("0.1236")),
        Ordering::Equal
    );
    // Same interval as 0.123[4,6].
    let factored = semantic_interval(&parse("0.123[4,6]", mode).unwrap(), mode, &BinaryFormat::BINARY64)
        .unwrap();
    assert!(parsed.encloses(&factored) && factored.encloses(&parsed));
    println!("criterion 6: PASS - single-number round trip matches 0.1235 and 0.123[4,6]");
}

/// Exact comparison of `sig × 2^(exp-bits+1)` against `D × 10^t` by
/// cross-multiplying big integers; independent of the conversion code.
fn cmp_float_vs_decimal(fmt: &BinaryFormat, f: &BinaryFloat, digits: &BigUint, t: i64) -> Ordering {
    let q = i64::from(f.exponent) - i64::from(fmt.significand_bits) + 1;
    let mut lhs = BigUint::from(f.significand);
    let mut rhs = digits.clone();
    if q >= 0 {
        lhs <<= q as u64;
    } else {
        rhs <<= (-q) as u64;
    }
    if t >= 0 {
        rhs *= BigUint::from(10u8).pow(t as u32);
    } else {
        lhs *= BigUint::from(10u8).pow((-t) as u32);
    }
    lhs.cmp(&rhs)
}

fn decimal_magnitude_parts(d: &DecimalNumeral) -> (BigUint, i64) {
    let digits = BigUint::from_radix_be(d.digits(), 10).unwrap();
    (digits, d.last_position())
}

#[test]
fn criterion_7_clip_semantics() {
    let fmt = BinaryFormat::BINARY64;
    let mode = ConventionMode::Clip;

    let star = semantic_interval(&parse("0.123*", mode).unwrap(), mode, &fmt).unwrap();
    assert_eq!(star.lower().unwrap().cmp_value(&num("0.122")), Ordering::Equal);
    assert_eq!(star.upper().unwrap().cmp_value(&num("0.124")), Ordering::Equal);

    let ell = semantic_interval(&parse("0.123...", mode).unwrap(), mode, &fmt).unwrap();
    assert_eq!(ell.lower().unwrap().cmp_value(&num("0.123")), Ordering::Equal);
    assert_eq!(ell.upper().unwrap().cmp_value(&num("0.124")), Ordering::Equal);

    let hash = to_binary_interval(&parse("0.5#", mode).unwrap(), mode, &fmt).unwrap();
    assert_eq!(hash.lower, hash.upper);
    assert_eq!(fmt.to_hex(&hash.lower), "0x1.0000000000000p-1");

    // Bare CLIP numeral: the two adjacent floats bracketing 0.123, verified
    // against a neighbor-scan oracle (exact comparison plus significand
    // successor).
    let bare = to_binary_interval(&parse("0.123", mode).unwrap(), mode, &fmt).unwrap();
    let d = num("0.123");
    let (digits, t) = decimal_magnitude_parts(&d);
    assert_eq!(
        cmp_float_vs_decimal(&fmt, &bare.lower, &digits, t),
        Ordering::Less
    );
    assert_eq!(
        cmp_float_vs_decimal(&fmt, &bare.upper, &digits, t),
        Ordering::Greater
    );
    assert_eq!(bare.lower.exponent, bare.upper.exponent);
    assert_eq!(
        bare.upper.significand,
        bare.lower.significand + 1,
        "bounds must be adjacent floats"
    );
    println!("criterion 7: PASS - CLIP star/ellipsis/hash/bare semantics verified");
}

/// Every finite nonnegative TINY8 value in increasing order, as raw floats.
fn enumerate_tiny8() -> Vec<BinaryFloat> {
    let fmt = BinaryFormat::TINY8;
    let mut floats = vec![fmt.zero()];
    for sig in 1..128u64 {
        floats.push(BinaryFloat {
            sign: Sign::Pos,
            significand: sig,
            exponent: fmt.min_exponent,
        });
    }
    for exp in fmt.min_exponent..=fmt.max_exponent {
        for sig in 128..256u64 {
            floats.push(BinaryFloat {
                sign: Sign::Pos,
                significand: sig,
                exponent: exp,
            });
        }
    }
    floats
}

#[test]
fn criterion_8_property_suite() {
    let start = Instant::now();

    // (a) Exhaustive reduced-format check of directed conversion against a
    // scan of every float in the format.
    let fmt = BinaryFormat::TINY8;
    let floats = enumerate_tiny8();
    let max_dec = fmt.to_exact_decimal(&fmt.max_finite());
    let (max_digits, max_t) = decimal_magnitude_parts(&max_dec);
    let mut cases = 0u64;
    for value in 1..=9999u32 {
        let digits_vec: Vec<u8> = value
            .to_string()
            .bytes()
            .map(|b| b - b'0')
            .collect();
        for exp in -5..=4i64 {
            let d = DecimalNumeral::from_parts(Sign::Pos, digits_vec.clone(), exp).unwrap();
            let (digits, t) = decimal_magnitude_parts(&d);
            let over_max = {
                let lhs = &digits * BigUint::from(10u8).pow((t - max_t).max(0) as u32);
                let rhs = &max_digits * BigUint::from(10u8).pow((max_t - t).max(0) as u32);
                lhs > rhs
            };
            let down = fmt.from_decimal_directed(&d, Rounding::TowardNegInf);
            let up = fmt.from_decimal_directed(&d, Rounding::TowardPosInf);
            if over_max {
                assert!(down.is_err() && up.is_err(), "overflow expected for {value}e{exp}");
                continue;
            }
            // Oracle: scan the sorted enumeration.
            let pos = floats.partition_point(|f| {
                cmp_float_vs_decimal(&fmt, f, &digits, t) != Ordering::Greater
            });
            let oracle_down = floats[pos - 1];
            let down = down.unwrap();
            let up = up.unwrap();
            assert_eq!(down, oracle_down, "down of {value}e{exp}");
            let exact = cmp_float_vs_decimal(&fmt, &oracle_down, &digits, t) == Ordering::Equal;
            let oracle_up = if exact { oracle_down } else { floats[pos] };
            assert_eq!(up, oracle_up, "up of {value}e{exp}");
            // Tightness holds by construction: the oracle bounds are
            // enumeration neighbors, so nothing representable lies between
            // the converted value and the input.
            cases += 1;
        }
    }

    // (b) Randomized render/parse round trips on the default format.
    let f64fmt = BinaryFormat::BINARY64;
    let mut rng = StdRng::seed_from_u64(0x1A7E57);
    let styles = [
        Style::Factored,
        Style::Plain,
        Style::CenterRadiusAngle,
        Style::CenterRadiusPlus,
        Style::SingleNumber,
    ];
    let mut roundtrips = 0u64;
    for _ in 0..5000 {
        let bin = random_interval(&mut rng, &f64fmt);
        let dec = DecimalInterval::from_binary(&f64fmt, &bin);
        for style in styles {
            for k in [Some(1), Some(2), Some(3), None] {
                let text = render_one(&dec, style, k).unwrap();
                let mode = match style {
                    Style::SingleNumber => ConventionMode::SingleNumber,
                    _ => ConventionMode::Point,
                };
                let ast = parse(&text, mode).unwrap_or_else(|e| {
                    panic!("render output `{text}` failed to parse: {e}")
                });
                let back = semantic_interval(&ast, mode, &f64fmt).unwrap();
                assert!(
                    back.encloses(&dec),
                    "enclosure lost: style {style:?} k {k:?} text `{text}` source `{}`",
                    render_interval(&dec, Style::Plain, &RenderOptions::default()).unwrap()
                );
                roundtrips += 1;
            }
        }
    }
    assert_eq!(roundtrips, 100_000);

    // (c) Pyramid nesting on random intervals.
    for _ in 0..10_000 {
        let bin = random_interval(&mut rng, &f64fmt);
        let dec = DecimalInterval::from_binary(&f64fmt, &bin);
        let rows = dec.pyramid();
        assert!(rows[0].encloses(&dec));
        let mut prev_width = rows[0].width().unwrap();
        for pair in rows.windows(2) {
            assert!(
                pair[1].encloses(&pair[0]),
                "pyramid rows must nest: source `{}` outer `{}` inner `{}`",
                render_interval(&dec, Style::Plain, &RenderOptions::default()).unwrap(),
                render_interval(&pair[1], Style::Plain, &RenderOptions::default()).unwrap(),
                render_interval(&pair[0], Style::Plain, &RenderOptions::default()).unwrap()
            );
            let w = pair[1].width().unwrap();
            assert!(
                prev_width.cmp_value(&w) != Ordering::Greater,
                "widths must not decrease as digits are dropped"
            );
            prev_width = w;
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 8: PASS - {cases} exhaustive reduced-format cases, {roundtrips} round trips, \
         10000 pyramids in {elapsed:?}"
    );
}

fn render_one(dec: &DecimalInterval, style: Style, k: Option<usize>) -> intervalfmt::Result<String> {
    match style {
        Style::Factored | Style::Plain => {
            let widened = match k {
                Some(k) => dec.outward_decimal(k),
                None => dec.clone(),
            };
            render_interval(&widened, style, &RenderOptions::default())
        }
        Style::CenterRadiusAngle | Style::CenterRadiusPlus => {
            let opts = RenderOptions {
                center_last_position: k.and_then(|k| dec.suffix_position(k)),
                ..Default::default()
            };
            render_interval(dec, style, &opts)
        }
        Style::SingleNumber => render_interval(dec, style, &RenderOptions::default()),
    }
}

fn random_float(rng: &mut StdRng, fmt: &BinaryFormat) -> BinaryFloat {
    let exponent = rng.random_range(-60..=60);
    let significand =
        rng.random_range((1u64 << (fmt.significand_bits - 1))..(1u64 << fmt.significand_bits));
    let sign = if rng.random_bool(0.5) { Sign::Neg } else { Sign::Pos };
    BinaryFloat {
        sign,
        significand,
        exponent,
    }
}

fn random_interval(rng: &mut StdRng, fmt: &BinaryFormat) -> BinaryInterval {
    let a = random_float(rng, fmt);
    let b = if rng.random_bool(0.3) {
        let delta = rng.random_range(0..1u64 << 20);
        BinaryFloat {
            sign: a.sign,
            significand: ((a.significand + delta) % (1u64 << fmt.significand_bits))
                .max(1u64 << (fmt.significand_bits - 1)),
            exponent: a.exponent,
        }
    } else {
        random_float(rng, fmt)
    };
    if fmt.cmp_value(&a, &b) == Ordering::Greater {
        BinaryInterval { lower: b, upper: a }
    } else {
        BinaryInterval { lower: a, upper: b }
    }
}

#[test]
fn criterion_9_tightness_mutation() {
    let fmt = BinaryFormat::BINARY64;
    let mut rng = StdRng::seed_from_u64(0x71547);
    let mut applicable = 0u64;
    let mut broken = 0u64;
    for _ in 0..1000 {
        let bin = random_interval(&mut rng, &fmt);
        let dec = DecimalInterval::from_binary(&fmt, &bin);
        for k in 1..=3usize {
            let widened = dec.outward_decimal(k);
            let (l, u) = (widened.lower().unwrap(), widened.upper().unwrap());
            // Increment the lower suffix by one unit.
            let bumped = decnum::add(l, &l.uld());
            if bumped.cmp_value(u) != Ordering::Greater {
                applicable += 1;
                let mutated = DecimalInterval::new(bumped, u.clone()).unwrap();
                if !mutated.encloses(&dec) {
                    broken += 1;
                }
            }
            // Decrement the upper suffix by one unit.
            let dropped = decnum::sub(u, &u.uld());
            if l.cmp_value(&dropped) != Ordering::Greater {
                applicable += 1;
                let mutated = DecimalInterval::new(l.clone(), dropped).unwrap();
                if !mutated.encloses(&dec) {
                    broken += 1;
                }
            }
        }
    }
    assert!(applicable > 0);
    assert_eq!(
        broken, applicable,
        "every applicable mutation must break enclosure"
    );
    println!(
        "criterion 9: PASS - {broken}/{applicable} suffix mutations broke enclosure"
    );
}
