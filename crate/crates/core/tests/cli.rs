//! End-to-end tests of the command-line interface: output bytes, JSON
//! schema, exit codes, and the format→parse closure property.

use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &str) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_intervalfmt"))
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
fn format_defaults_to_three_bracket_digits() {
    let (out, err, code) = run(
        &["format"],
        "[0.6180339887498946804,0.6180339887498950136]\n",
    );
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "0.61803398874989[468,502]\n");
}

#[test]
fn digit_policies() {
    let input = "[5.1268427635136,5.1268472635136]\n";
    let (out, _, _) = run(&["format", "--digits", "max-info"], input);
    assert_eq!(out.trim_end(), "5.12684[2,8]");
    let (out, _, _) = run(&["format", "--digits", "threshold"], input);
    assert_eq!(out.trim_end(), "5.12684[276,727]");
    let (out, _, _) = run(&["format", "--digits", "threshold", "--threshold", "0.2"], input);
    assert_eq!(out.trim_end(), "5.12684[2,8]");
    let (out, _, _) = run(&["format", "--digits", "1"], input);
    assert_eq!(out.trim_end(), "5.12684[2,8]");
}

#[test]
fn format_point_interval_uses_bracket_point() {
    let (out, _, code) = run(&["format", "--digits", "full"], "[5,5]\n");
    assert_eq!(code, 0);
    assert_eq!(out, "[5]\n");
}

#[test]
fn format_styles() {
    let input = "[0.6180339887498946804,0.6180339887498950136]\n";
    let (out, _, _) = run(&["format", "--style", "center-plus", "--digits", "full"], input);
    assert_eq!(
        out.trim_end(),
        "0.6180339887498948470 + [-0.0000000000000001666,+0.0000000000000001666]"
    );
    let (out, _, _) = run(&["format", "--style", "center-angle", "--digits", "full"], input);
    assert_eq!(
        out.trim_end(),
        "<0.6180339887498948470,0.0000000000000001666>"
    );
    let (out, _, _) = run(&["format", "--style", "single"], "0.123[45678,56789]\n");
    assert_eq!(out.trim_end(), "0.1235");
    // Plain style keeps the positional digit budget: two digits after the
    // fourteen shared ones.
    let (out, _, _) = run(&["format", "--style", "plain", "--digits", "2"], input);
    assert_eq!(out.trim_end(), "[0.6180339887498946,0.6180339887498951]");
}

#[test]
fn format_normalize_factors_out_shared_power() {
    let (out, _, code) = run(
        &["format", "--normalize", "--digits", "2"],
        "[5.1268427635136 x 10^2,5.1268472635136 x 10^3]\n",
    );
    assert_eq!(code, 0);
    assert_eq!(out.trim_end(), "[0.51,5.2] x 10^3");
}

#[test]
fn parse_emits_decimal_and_hex_bounds() {
    let (out, _, code) = run(&["parse"], "0.5\n");
    assert_eq!(code, 0);
    assert_eq!(
        out.trim_end(),
        "lower=0.5 upper=0.5 binary_lower=0x1.0000000000000p-1 binary_upper=0x1.0000000000000p-1"
    );
    let (out, _, _) = run(&["parse", "--mode", "physics"], "0.123\n");
    assert!(out.starts_with("lower=0.123 upper=0.124 "), "{out}");
    let (out, _, _) = run(&["parse", "--mode", "clip"], "0.123...\n");
    assert!(out.starts_with("lower=0.123 upper=0.124 "), "{out}");
}

#[test]
fn json_schema_is_stable() {
    let (out, _, code) = run(&["parse", "--json"], "0.1235\n");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim_end()).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    assert_eq!(
        keys,
        [
            "input",
            "lower",
            "upper",
            "binary_lower_hex",
            "binary_upper_hex",
            "style",
            "k"
        ]
    );
    assert_eq!(obj["style"], "bare");
    assert!(obj["k"].is_null());

    let (out, _, _) = run(
        &["format", "--json"],
        "[0.6180339887498946804,0.6180339887498950136]\n",
    );
    let v: serde_json::Value = serde_json::from_str(out.trim_end()).unwrap();
    assert_eq!(v["style"], "factored");
    assert_eq!(v["k"], 3);
    assert_eq!(v["lower"], "0.61803398874989468");
    assert_eq!(v["upper"], "0.61803398874989502");
    assert!(v["binary_lower_hex"].as_str().unwrap().starts_with("0x1."));
}

#[test]
fn pyramid_single_row_for_point() {
    let (out, _, code) = run(&["pyramid"], "[5]\n");
    assert_eq!(code, 0);
    assert_eq!(out, "[5]\n");
}

#[test]
fn analyze_reports_exact_point() {
    let (out, _, code) = run(&["analyze"], "[0.5,0.5]\n");
    assert_eq!(code, 0);
    assert!(out.contains("exact point interval"), "{out}");

    let (out, _, _) = run(&["analyze"], "[5.1268427635136,5.1268472635136]\n");
    assert!(out.contains("5.12684[27,73]"), "{out}");
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 9); // header + 8 digit rows
}

#[test]
fn per_line_errors_set_exit_code_and_continue() {
    let (out, err, code) = run(&["format"], "[0.1,0.2]\nnot an interval\n[0.3,0.4]\n");
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 2, "good lines still process: {out}");
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("col"), "{err}");
}

#[test]
fn mode_restrictions_are_reported() {
    let (_, err, code) = run(&["parse"], "0.123*\n");
    assert_eq!(code, 1);
    assert!(err.contains("not allowed in point mode"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    let (_, _, code) = run(&["format", "--digits", "zero"], "");
    assert_eq!(code, 2);
    let (_, _, code) = run(&["format", "--digits", "0"], "");
    assert_eq!(code, 2);
    let (_, _, code) = run(&["bogus-subcommand"], "");
    assert_eq!(code, 2);
    let (_, _, code) = run(&["format", "--format", "5"], "");
    assert_eq!(code, 2);
}

#[test]
fn format_output_reparses_in_same_config() {
    let inputs = "[0.6180339887498946804,0.6180339887498950136]\n\
                  [5.1268427635136,5.1268472635136]\n\
                  [-1.234,-1.230]\n\
                  [5,5]\n\
                  [-0.3,0.2]\n";
    for style in ["factored", "plain", "center-angle", "center-plus"] {
        let (formatted, err, code) = run(&["format", "--style", style], inputs);
        assert_eq!(code, 0, "{err}");
        let (_, err, code) = run(&["parse"], &formatted);
        assert_eq!(code, 0, "style {style}: {err}");
    }
    let (formatted, _, _) = run(&["format", "--style", "single"], inputs);
    let (_, err, code) = run(&["parse", "--mode", "single"], &formatted);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn check_command_passes_and_reports() {
    let (out, err, code) = run(&["check", "--samples", "200", "--seed", "7"], "");
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("PASS"), "{out}");
    let (out, _, code) = run(
        &["check", "--samples", "100", "--mutation", "--seed", "7"],
        "",
    );
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS"), "{out}");
    let (out, _, code) = run(
        &["check", "--samples", "150", "--format", "tiny8", "--seed", "3"],
        "",
    );
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS"), "{out}");
}

#[test]
fn custom_binary_format_is_accepted() {
    let (out, _, code) = run(&["parse", "--format", "8:-8:8"], "0.5\n");
    assert_eq!(code, 0);
    assert!(out.contains("binary_lower=0x1.00p-1"), "{out}");
}
