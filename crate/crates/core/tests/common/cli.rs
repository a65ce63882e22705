//! Golden commands, text/JSON parity and random expression text.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::Rng;
use regex::Regex;

use tropdiff::cli::run_command;

const F: &str = "x(1,0) + x(1,1) + x(1,2)";
const G: &str = "x(1,0) - x(1,3)";

/// `(golden file stem, arguments)`.
pub fn golden_commands() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("val", vec!["val", "--set", "{0,1,2,3,7,8}", "4", "9"]),
        ("trop", vec!["trop", "t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2"]),
        (
            "eval",
            vec!["eval", "x(1,2) + t^2*x(1,0) + t", "--set", "{3}"],
        ),
        (
            "solve",
            vec!["solve", "--gen", F, "--gen", G, "--depth", "9"],
        ),
        (
            "initial",
            vec!["initial", "t*x(1,1) + t^2*x(1,3) + t^3", "--set", "{2,3}"],
        ),
        (
            "initial_hugao",
            vec![
                "initial-hugao",
                "t*x(1,1) + t^2*x(1,3) + t^3",
                "--set",
                "{2,3}",
            ],
        ),
        (
            "lift",
            vec![
                "lift",
                "--gen",
                "x(1,0) + x(1,1)",
                "--mult",
                "2*x(1,0)",
                "--set",
                "{0,1}",
            ],
        ),
        (
            "check_basis",
            vec![
                "check-basis",
                "--gen",
                F,
                "--ref-gen",
                F,
                "--ref-gen",
                G,
                "--depth",
                "9",
            ],
        ),
        (
            "theorem_pp",
            vec![
                "theorem-pp",
                "--gen",
                "x(2,1)",
                "--solution",
                "1 | 1",
                "--solution",
                "t | 0",
                "--depth",
                "3",
                "--tmax",
                "1",
                "--pmax",
                "1",
            ],
        ),
        (
            "suppmin",
            vec!["suppmin", "t^2*x(1,0) + x(1,1)", "--depth", "4"],
        ),
        ("matroid_check", vec!["matroid-check", "3"]),
        (
            "qab_audit",
            vec![
                "qab-audit",
                "--gen",
                "x(1,2) + 5*x(1,1) + x(1,0)",
                "--r",
                "3",
            ],
        ),
        ("denef", vec!["denef", "7", "--terms", "5"]),
        ("paper_examples", vec!["paper-examples"]),
    ]
}

pub fn run(args: &[&str]) -> tropdiff::cli::Outcome {
    let mut argv = vec!["tropdiff"];
    argv.extend_from_slice(args);
    run_command(&argv)
}

fn golden_path(stem: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{stem}.{ext}"))
}

/// Compare text and JSON output with the stored files; with
/// `TROPDIFF_BLESS=1` the files are rewritten instead. Returns mismatches.
pub fn golden_mismatches() -> Vec<String> {
    let bless = std::env::var("TROPDIFF_BLESS").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for (stem, args) in golden_commands() {
        let text = run(&args).stdout;
        let mut json_args = vec!["--json"];
        json_args.extend_from_slice(&args);
        let json = run(&json_args).stdout;
        for (ext, out) in [("txt", text), ("json", json)] {
            let path = golden_path(stem, ext);
            if bless {
                std::fs::create_dir_all(path.parent().unwrap()).unwrap();
                std::fs::write(&path, &out).unwrap();
            } else if std::fs::read_to_string(&path).ok().as_deref() != Some(out.as_str()) {
                bad.push(format!("{stem}.{ext}"));
            }
        }
    }
    bad
}

/// Numeric tokens of an output, ignoring exponents written `^k`.
pub fn number_tokens(s: &str) -> BTreeSet<String> {
    let re = Regex::new(r"(\^?)(∞|\d+(?:/\d+)?)").unwrap();
    re.captures_iter(s)
        .filter(|c| c[1].is_empty())
        .map(|c| c[2].to_string())
        .collect()
}

/// Commands whose text output mentions a number that the JSON document
/// lacks, or whose two renderings disagree on the exit code.
pub fn parity_failures() -> Vec<String> {
    let mut bad = Vec::new();
    for (stem, args) in golden_commands() {
        let text = run(&args);
        let mut json_args = vec!["--json"];
        json_args.extend_from_slice(&args);
        let json = run(&json_args);
        if text.code != json.code
            || serde_json::from_str::<serde_json::Value>(&json.stdout).is_err()
        {
            bad.push(format!("{stem}: exit codes or JSON"));
            continue;
        }
        let missing: Vec<String> = number_tokens(&text.stdout)
            .difference(&number_tokens(&json.stdout))
            .cloned()
            .collect();
        if !missing.is_empty() {
            bad.push(format!("{stem}: {missing:?}"));
        }
    }
    bad
}

/// A random sentence of the expression grammar.
pub fn expression(rng: &mut impl Rng, depth: usize) -> String {
    let mut out = term(rng, depth);
    for _ in 0..rng.gen_range(0..3) {
        out.push_str(if rng.gen_bool(0.5) { " + " } else { "-" });
        out.push_str(&term(rng, depth));
    }
    out
}

fn term(rng: &mut impl Rng, depth: usize) -> String {
    let k = rng.gen_range(1..=3);
    let factors: Vec<String> = (0..k).map(|_| factor(rng, depth)).collect();
    factors.join(if rng.gen_bool(0.5) { "*" } else { " * " })
}

fn factor(rng: &mut impl Rng, depth: usize) -> String {
    let base = match rng.gen_range(0..if depth > 0 { 4 } else { 3 }) {
        0 => {
            let sign = if rng.gen_bool(0.3) { "-" } else { "" };
            let n = rng.gen_range(0..20);
            if rng.gen_bool(0.3) {
                format!("{sign}{n}/{}", rng.gen_range(1..7))
            } else {
                format!("{sign}{n}")
            }
        }
        1 => "t".to_string(),
        2 => format!("x({},{})", rng.gen_range(1..=3), rng.gen_range(0..=4)),
        _ => format!("({})", expression(rng, depth - 1)),
    };
    if rng.gen_bool(0.3) {
        format!("{base}^{}", rng.gen_range(0..4))
    } else {
        base
    }
}

/// Parse, print and re-parse one expression; `None` when the tree and the
/// polynomial both survive.
pub fn round_trip_failure(text: &str) -> Option<String> {
    use tropdiff::parse::{parse_expr, parse_poly};
    let tree = match parse_expr(text) {
        Ok(t) => t,
        Err(e) => return Some(format!("{text}: {e}")),
    };
    let printed = tree.to_string();
    match parse_expr(&printed) {
        Ok(again) if again == tree && again.to_string() == printed => {}
        Ok(again) => {
            return Some(format!(
                "{text}: tree changed, printed {printed}, reprinted {again}"
            ))
        }
        Err(e) => return Some(format!("{text}: printed {printed} fails: {e}")),
    }
    let p = parse_poly(text, 64).ok()?;
    let q = parse_poly(&printed, 64).ok()?;
    if p != q {
        return Some(format!("{text}: polynomial changed"));
    }
    let shown = p.to_string();
    match parse_poly(&shown, 64) {
        Ok(r) if r.with_n_vars(p.n_vars().max(r.n_vars())).ok() == Some(p.clone()) => None,
        _ => Some(format!(
            "{text}: polynomial display {shown} does not parse back"
        )),
    }
}
