//! Line-oriented command-line front end: format, pyramid, parse, analyze,
//! and a randomized enclosure self-check. Input comes from file arguments
//! or stdin, one interval per line; output order matches input order and
//! processing streams in constant memory.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use intervalfmt::{
    analyze, factor_with, normalize_scale, parse, render, render_interval, select_digits,
    semantic_interval, single_number_numeral, unfactor, BinaryFloat, BinaryFormat,
    BinaryInterval, ConventionMode, DecimalInterval, Error, RenderOptions, Rounding,
    SelectionPolicy, Sign, Style,
};

#[derive(Parser)]
#[command(
    name = "intervalfmt",
    version,
    about = "Render and parse machine intervals in compact, enclosure-preserving decimal notations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Meaning of a bare numeral on input.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Point)]
    mode: ModeArg,

    /// Output style for `format`.
    #[arg(long, global = true, value_enum, default_value_t = StyleArg::Factored)]
    style: StyleArg,

    /// Bracket digits: `auto` (three, capped), `threshold` (yield-driven),
    /// `max-info` (one), `full`, or an explicit count.
    #[arg(long, global = true, default_value = "auto")]
    digits: String,

    /// Marginal-yield cutoff in dits for `--digits threshold`.
    #[arg(long, global = true, default_value_t = 0.005)]
    threshold: f64,

    /// Binary format: `f64`, `f32`, `tiny8`, or `BITS:EMIN:EMAX`.
    #[arg(long = "format", global = true, default_value = "f64")]
    format: String,

    /// Emit one JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Factor a shared power of ten out of both bounds before formatting.
    #[arg(long, global = true)]
    normalize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Re-render each input interval in the selected style.
    Format { inputs: Vec<PathBuf> },
    /// Print the nested widening sequence of each input interval.
    Pyramid { inputs: Vec<PathBuf> },
    /// Parse notations to exact decimal bounds and bit-exact binary bounds.
    Parse { inputs: Vec<PathBuf> },
    /// Digit-by-digit width, uncertainty and information yield.
    Analyze { inputs: Vec<PathBuf> },
    /// Randomized render/parse enclosure self-test; exit 0 iff all pass.
    Check {
        /// Number of random intervals to test.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Check tightness instead: mutated outputs must break enclosure.
        #[arg(long)]
        mutation: bool,
        /// Seed for reproducible runs.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Point,
    Physics,
    Single,
    Clip,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Factored,
    Plain,
    CenterAngle,
    CenterPlus,
    Single,
}

#[derive(Clone, Copy)]
enum DigitSpec {
    Auto,
    Threshold,
    MaxInfo,
    Full,
    Count(usize),
}

struct Config {
    mode: ConventionMode,
    style: Style,
    digits: DigitSpec,
    threshold: f64,
    fmt: BinaryFormat,
    json: bool,
    normalize: bool,
}

fn main() {
    let cli = Cli::parse();
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let code = match run(&cli, &config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn build_config(cli: &Cli) -> anyhow::Result<Config> {
    let digits = match cli.digits.as_str() {
        "auto" => DigitSpec::Auto,
        "threshold" => DigitSpec::Threshold,
        "max-info" => DigitSpec::MaxInfo,
        "full" => DigitSpec::Full,
        other => {
            let k: usize = other
                .parse()
                .ok()
                .filter(|k| *k >= 1)
                .with_context(|| format!("--digits must be auto|threshold|max-info|full|N>=1, got `{other}`"))?;
            DigitSpec::Count(k)
        }
    };
    if cli.threshold.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        bail!("--threshold must be positive");
    }
    let fmt = match cli.format.as_str() {
        "f64" | "double" => BinaryFormat::BINARY64,
        "f32" | "single" => BinaryFormat::BINARY32,
        "tiny8" => BinaryFormat::TINY8,
        custom => {
            let parts: Vec<&str> = custom.split(':').collect();
            if parts.len() != 3 {
                bail!("--format must be f64|f32|tiny8|BITS:EMIN:EMAX, got `{custom}`");
            }
            let bits = parts[0].parse().context("bad significand bits")?;
            let emin = parts[1].parse().context("bad min exponent")?;
            let emax = parts[2].parse().context("bad max exponent")?;
            BinaryFormat::new(bits, emin, emax).map_err(|e| anyhow::anyhow!("{e}"))?
        }
    };
    Ok(Config {
        mode: match cli.mode {
            ModeArg::Point => ConventionMode::Point,
            ModeArg::Physics => ConventionMode::Physics,
            ModeArg::Single => ConventionMode::SingleNumber,
            ModeArg::Clip => ConventionMode::Clip,
        },
        style: match cli.style {
            StyleArg::Factored => Style::Factored,
            StyleArg::Plain => Style::Plain,
            StyleArg::CenterAngle => Style::CenterRadiusAngle,
            StyleArg::CenterPlus => Style::CenterRadiusPlus,
            StyleArg::Single => Style::SingleNumber,
        },
        digits,
        threshold: cli.threshold,
        fmt,
        json: cli.json,
        normalize: cli.normalize,
    })
}

fn run(cli: &Cli, config: &Config) -> anyhow::Result<i32> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match &cli.command {
        Command::Format { inputs } => {
            process_lines(inputs, &mut out, |line, out| cmd_format(line, config, out))?
        }
        Command::Pyramid { inputs } => {
            process_lines(inputs, &mut out, |line, out| cmd_pyramid(line, config, out))?
        }
        Command::Parse { inputs } => {
            process_lines(inputs, &mut out, |line, out| cmd_parse(line, config, out))?
        }
        Command::Analyze { inputs } => {
            process_lines(inputs, &mut out, |line, out| cmd_analyze(line, config, out))?
        }
        Command::Check {
            samples,
            mutation,
            seed,
        } => cmd_check(config, *samples, *mutation, *seed, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

/// Streams lines from the given files (stdin when none), applying `f` to
/// each nonempty line. Diagnostics go to stderr with 1-based line and
/// column; the exit code is 1 when any line failed.
fn process_lines<F>(
    inputs: &[PathBuf],
    out: &mut impl Write,
    mut f: F,
) -> anyhow::Result<i32>
where
    F: FnMut(&str, &mut dyn Write) -> Result<(), Error>,
{
    let mut readers: Vec<Box<dyn Read>> = Vec::new();
    if inputs.is_empty() {
        readers.push(Box::new(io::stdin().lock()));
    } else {
        for path in inputs {
            readers.push(Box::new(
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
            ));
        }
    }
    let mut failed = false;
    let mut line_no = 0u64;
    for reader in readers {
        for line in BufReader::new(reader).lines() {
            let line = line?;
            line_no += 1;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            if let Err(e) = f(text, out) {
                failed = true;
                match error_column(&e) {
                    Some(col) => eprintln!("line {line_no}, col {col}: {e}"),
                    None => eprintln!("line {line_no}: {e}"),
                }
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn error_column(e: &Error) -> Option<usize> {
    match e {
        Error::Syntax { column, .. } | Error::NotationDisallowed { column, .. } => Some(*column),
        _ => None,
    }
}

/// Resolves the configured digit budget for one interval.
fn choose_digits(interval: &DecimalInterval, config: &Config) -> Option<usize> {
    match config.digits {
        DigitSpec::Full => None,
        DigitSpec::Count(k) => Some(k),
        DigitSpec::MaxInfo => Some(select_digits(interval, SelectionPolicy::MaxInfo).k),
        DigitSpec::Auto => Some(select_digits(interval, SelectionPolicy::Default).k),
        DigitSpec::Threshold => {
            Some(select_digits(interval, SelectionPolicy::Threshold(config.threshold)).k)
        }
    }
}

struct Rendered {
    text: String,
    /// The interval the output text denotes.
    denoted: DecimalInterval,
    k: Option<usize>,
}

fn render_with_config(interval: &DecimalInterval, config: &Config) -> Result<Rendered, Error> {
    let opts = RenderOptions::default();
    match config.style {
        Style::Factored | Style::Plain => {
            let (work, scale) = if config.normalize && interval.is_bounded() {
                normalize_scale(interval)?
            } else {
                (interval.clone(), 0)
            };
            let k = choose_digits(&work, config);
            let widened = match k {
                Some(k) => work.outward_decimal(k),
                None => work,
            };
            let mut form = factor_with(&widened, &opts);
            form.scale = scale;
            let text = render(&form, config.style, &opts)?;
            Ok(Rendered {
                text,
                denoted: unfactor(&form)?,
                k,
            })
        }
        Style::CenterRadiusAngle | Style::CenterRadiusPlus => {
            let k = choose_digits(interval, config);
            let cap = k.and_then(|k| interval.suffix_position(k));
            let style_opts = RenderOptions {
                center_last_position: cap,
                ..opts
            };
            let text = render_interval(interval, config.style, &style_opts)?;
            let cr = match cap {
                None => interval.to_center_radius()?,
                Some(pos) => interval.to_center_radius_rounded(pos)?,
            };
            let denoted = DecimalInterval::new(
                intervalfmt::decnum::sub(&cr.center, &cr.radius),
                intervalfmt::decnum::add(&cr.center, &cr.radius),
            )?;
            Ok(Rendered {
                text,
                denoted,
                k,
            })
        }
        Style::SingleNumber => {
            let d = single_number_numeral(interval)?;
            let denoted = DecimalInterval::new(
                intervalfmt::decnum::sub(&d, &d.uld()),
                intervalfmt::decnum::add(&d, &d.uld()),
            )?;
            Ok(Rendered {
                text: d.to_precision_string(),
                denoted,
                k: None,
            })
        }
    }
}

fn bound_strings(interval: &DecimalInterval) -> (String, String) {
    (
        interval
            .lower()
            .map_or("-inf".to_string(), |d| d.to_plain_string()),
        interval
            .upper()
            .map_or("inf".to_string(), |d| d.to_plain_string()),
    )
}

/// Outward binary enclosure of a decimal interval; `None` per side when
/// unbounded or out of the format's range.
fn binary_hex_bounds(interval: &DecimalInterval, fmt: &BinaryFormat) -> (Option<String>, Option<String>) {
    let lower = interval.lower().and_then(|d| {
        fmt.from_decimal_directed(d, Rounding::TowardNegInf)
            .ok()
            .map(|f| fmt.to_hex(&f))
    });
    let upper = interval.upper().and_then(|d| {
        fmt.from_decimal_directed(d, Rounding::TowardPosInf)
            .ok()
            .map(|f| fmt.to_hex(&f))
    });
    (lower, upper)
}

fn style_name(style: Style) -> &'static str {
    match style {
        Style::Factored => "factored",
        Style::Plain => "plain",
        Style::CenterRadiusAngle => "center-angle",
        Style::CenterRadiusPlus => "center-plus",
        Style::SingleNumber => "single-number",
    }
}

fn json_interval(
    input: &str,
    denoted: &DecimalInterval,
    fmt: &BinaryFormat,
    style: &str,
    k: Option<usize>,
) -> serde_json::Value {
    let (lower, upper) = bound_strings(denoted);
    let (hex_lo, hex_hi) = binary_hex_bounds(denoted, fmt);
    serde_json::json!({
        "input": input,
        "lower": lower,
        "upper": upper,
        "binary_lower_hex": hex_lo,
        "binary_upper_hex": hex_hi,
        "style": style,
        "k": k,
    })
}

fn cmd_format(line: &str, config: &Config, out: &mut dyn Write) -> Result<(), Error> {
    let ast = parse(line, config.mode)?;
    let interval = semantic_interval(&ast, config.mode, &config.fmt)?;
    let rendered = render_with_config(&interval, config)?;
    if config.json {
        let v = json_interval(
            line,
            &rendered.denoted,
            &config.fmt,
            style_name(config.style),
            rendered.k,
        );
        writeln!(out, "{v}").map_err(io_error)?;
    } else {
        writeln!(out, "{}", rendered.text).map_err(io_error)?;
    }
    Ok(())
}

fn cmd_pyramid(line: &str, config: &Config, out: &mut dyn Write) -> Result<(), Error> {
    let ast = parse(line, config.mode)?;
    let interval = semantic_interval(&ast, config.mode, &config.fmt)?;
    let opts = RenderOptions::default();
    let rows: Result<Vec<String>, Error> = interval
        .pyramid()
        .iter()
        .map(|row| render_interval(row, Style::Factored, &opts))
        .collect();
    let rows = rows?;
    if config.json {
        let v = serde_json::json!({ "input": line, "rows": rows });
        writeln!(out, "{v}").map_err(io_error)?;
    } else {
        for row in rows {
            writeln!(out, "{row}").map_err(io_error)?;
        }
    }
    Ok(())
}

fn cmd_parse(line: &str, config: &Config, out: &mut dyn Write) -> Result<(), Error> {
    let ast = parse(line, config.mode)?;
    let interval = semantic_interval(&ast, config.mode, &config.fmt)?;
    if config.json {
        let v = json_interval(line, &interval, &config.fmt, ast.variant_name(), None);
        writeln!(out, "{v}").map_err(io_error)?;
    } else {
        let (lower, upper) = bound_strings(&interval);
        let (hex_lo, hex_hi) = binary_hex_bounds(&interval, &config.fmt);
        writeln!(
            out,
            "lower={} upper={} binary_lower={} binary_upper={}",
            lower,
            upper,
            hex_lo.as_deref().unwrap_or("-"),
            hex_hi.as_deref().unwrap_or("-"),
        )
        .map_err(io_error)?;
    }
    Ok(())
}

fn cmd_analyze(line: &str, config: &Config, out: &mut dyn Write) -> Result<(), Error> {
    let ast = parse(line, config.mode)?;
    let interval = semantic_interval(&ast, config.mode, &config.fmt)?;
    let opts = RenderOptions::default();
    let report = analyze(&interval, &opts)?;
    if config.json {
        let rows: Vec<serde_json::Value> = report
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "k": r.k,
                    "form": r.rendered,
                    "width": r.width.to_display_string(),
                    "uncertainty_dits": r.uncertainty,
                    "marginal_yield_dits": r.marginal_yield,
                })
            })
            .collect();
        let v = serde_json::json!({ "input": line, "exact": report.exact, "rows": rows });
        writeln!(out, "{v}").map_err(io_error)?;
        return Ok(());
    }
    if report.exact {
        let text = render_interval(&interval, Style::Factored, &opts)?;
        writeln!(out, "exact point interval {text}; no width to analyze").map_err(io_error)?;
        return Ok(());
    }
    let form_width = report
        .rows
        .iter()
        .map(|r| r.rendered.len())
        .max()
        .unwrap_or(4)
        .max(4);
    writeln!(
        out,
        "{:>3}  {:<fw$}  {:<16}  {:>14}  {:>13}",
        "k",
        "form",
        "width",
        "uncertainty",
        "yield",
        fw = form_width
    )
    .map_err(io_error)?;
    for r in &report.rows {
        writeln!(
            out,
            "{:>3}  {:<fw$}  {:<16}  {:>14.6}  {:>13.5e}",
            r.k,
            r.rendered,
            r.width.to_display_string(),
            r.uncertainty,
            r.marginal_yield,
            fw = form_width
        )
        .map_err(io_error)?;
    }
    Ok(())
}

fn io_error(e: io::Error) -> Error {
    Error::InvalidValue {
        message: format!("i/o failure: {e}"),
    }
}

/// Uniform-ish random float of the format with the exponent clamped to a
/// window around zero, so exact expansions stay short enough to hammer in
/// volume.
fn random_float(rng: &mut StdRng, fmt: &BinaryFormat) -> BinaryFloat {
    let lo = fmt.min_exponent.max(-60);
    let hi = fmt.max_exponent.min(60);
    let exponent = rng.random_range(lo..=hi);
    let min_sig = 1u64 << (fmt.significand_bits - 1);
    let significand = rng.random_range(min_sig..(1u64 << fmt.significand_bits));
    let sign = if rng.random_bool(0.5) { Sign::Neg } else { Sign::Pos };
    BinaryFloat {
        sign,
        significand,
        exponent,
    }
}

fn random_interval(rng: &mut StdRng, fmt: &BinaryFormat) -> BinaryInterval {
    let a = random_float(rng, fmt);
    let b = if rng.random_bool(0.2) {
        // Nearby bound: same exponent, close significand.
        let delta = rng.random_range(0..1u64 << (fmt.significand_bits / 2));
        let sig = (a.significand + delta).min((1u64 << fmt.significand_bits) - 1);
        BinaryFloat {
            sign: a.sign,
            significand: sig,
            exponent: a.exponent,
        }
    } else {
        random_float(rng, fmt)
    };
    if fmt.cmp_value(&a, &b) == std::cmp::Ordering::Greater {
        BinaryInterval { lower: b, upper: a }
    } else {
        BinaryInterval { lower: a, upper: b }
    }
}

fn cmd_check(
    config: &Config,
    samples: u64,
    mutation: bool,
    seed: Option<u64>,
    out: &mut impl Write,
) -> anyhow::Result<i32> {
    let seed = seed.unwrap_or_else(rand::random);
    let mut rng = StdRng::seed_from_u64(seed);
    let fmt = config.fmt;
    let mut checks = 0u64;
    let mut failures = 0u64;

    for _ in 0..samples {
        let bin = random_interval(&mut rng, &fmt);
        let dec = DecimalInterval::from_binary(&fmt, &bin);
        if mutation {
            for k in 1..=3usize {
                let widened = dec.outward_decimal(k);
                for (who, mutated) in mutate_bounds(&widened) {
                    checks += 1;
                    if mutated.encloses(&dec) {
                        failures += 1;
                        report_failure(out, &format!(
                            "mutated {who} bound still encloses: k={k} interval={}",
                            render_interval(&dec, Style::Plain, &RenderOptions::default())
                                .unwrap_or_default()
                        ))?;
                    }
                }
            }
            continue;
        }
        for style in [
            Style::Factored,
            Style::Plain,
            Style::CenterRadiusAngle,
            Style::CenterRadiusPlus,
            Style::SingleNumber,
        ] {
            let ks: &[Option<usize>] = match style {
                Style::SingleNumber => &[None],
                _ => &[Some(1), Some(2), Some(3), None],
            };
            for k in ks {
                checks += 1;
                let line_config = Config {
                    mode: config.mode,
                    style,
                    digits: k.map_or(DigitSpec::Full, DigitSpec::Count),
                    threshold: config.threshold,
                    fmt,
                    json: false,
                    normalize: false,
                };
                let parse_mode = match style {
                    Style::SingleNumber => ConventionMode::SingleNumber,
                    _ => ConventionMode::Point,
                };
                let ok = (|| -> Result<bool, Error> {
                    let rendered = render_with_config(&dec, &line_config)?;
                    let ast = parse(&rendered.text, parse_mode)?;
                    let back = semantic_interval(&ast, parse_mode, &fmt)?;
                    Ok(back.encloses(&dec))
                })();
                match ok {
                    Ok(true) => {}
                    Ok(false) => {
                        failures += 1;
                        report_failure(out, &format!(
                            "enclosure lost: style={} k={k:?} interval={}",
                            style_name(style),
                            render_interval(&dec, Style::Plain, &RenderOptions::default())
                                .unwrap_or_default()
                        ))?;
                    }
                    Err(e) => {
                        failures += 1;
                        report_failure(out, &format!(
                            "round trip failed: style={} k={k:?}: {e}",
                            style_name(style)
                        ))?;
                    }
                }
            }
        }
    }

    writeln!(
        out,
        "{}: {} samples, {} checks, {} failures (seed {})",
        if failures == 0 { "PASS" } else { "FAIL" },
        samples,
        checks,
        failures,
        seed
    )?;
    Ok(if failures == 0 { 0 } else { 1 })
}

/// Shrinks each bound of a widened interval by one unit in its last digit;
/// the results must no longer enclose the source if the widening is tight.
fn mutate_bounds(widened: &DecimalInterval) -> Vec<(&'static str, DecimalInterval)> {
    let (l, u) = match (widened.lower(), widened.upper()) {
        (Some(l), Some(u)) => (l, u),
        _ => return Vec::new(),
    };
    let mut cases = Vec::new();
    let bumped = intervalfmt::decnum::add(l, &l.uld());
    if bumped.cmp_value(u) != std::cmp::Ordering::Greater {
        if let Ok(i) = DecimalInterval::new(bumped, u.clone()) {
            cases.push(("lower", i));
        }
    }
    let dropped = intervalfmt::decnum::sub(u, &u.uld());
    if l.cmp_value(&dropped) != std::cmp::Ordering::Greater {
        if let Ok(i) = DecimalInterval::new(l.clone(), dropped) {
            cases.push(("upper", i));
        }
    }
    cases
}

fn report_failure(out: &mut impl Write, message: &str) -> anyhow::Result<()> {
    writeln!(out, "FAIL {message}")?;
    Ok(())
}
