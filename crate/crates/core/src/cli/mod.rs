//! Command-line front end.
//!
//! [`run_command`] parses an argument vector, dispatches to the library and
//! renders a [`Report`] as text or JSON. Exit codes: `0` success, `1` domain
//! error or failed check, `2` syntax or usage error.

mod pinned;
mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

pub use pinned::{pinned_examples, PinnedCheck};
pub use report::{tuple_text, Report};

use crate::analysis::{
    check_uniform_matroid, coverage_audit, denef_series, supp_min, suppmin_stabilization,
    StabilizationOutcome,
};
use crate::diffalg::{DiffMonomial, DiffPolynomial};
use crate::error::{Error, Result};
use crate::initial::{initial_part, initial_part_hu_gao, lift_initial_combination, LiftPart};
use crate::parse::{parse_expr, parse_natset_noting, parse_poly, parse_series};
use crate::series::{Rational, TruncatedSeries};
use crate::solver::{
    check_basis, solve_diff_ideal, theorem_pp_compare, CandidateUniverse, Discrepancy,
    SolutionReport,
};
use crate::tropical::{tropicalize, NatSet, SolutionStatus};

#[derive(Parser, Debug)]
#[command(
    name = "tropdiff",
    version,
    about = "Exact tropical differential algebra over Q[[t]]"
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficients are known modulo t^N.
    #[arg(long, global = true, default_value_t = 32, value_name = "N")]
    trunc: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct UniverseArgs {
    /// Largest threshold of candidate sets.
    #[arg(long, default_value_t = 3)]
    tmax: usize,
    /// Largest period of candidate sets.
    #[arg(long, default_value_t = 3)]
    pmax: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Val_S(j) for each j.
    Val {
        #[arg(long)]
        set: String,
        #[arg(required = true)]
        j: Vec<u64>,
    },
    /// Tropicalisation of a differential polynomial.
    Trop { poly: String },
    /// trop(P)(S) and the solution test.
    Eval {
        poly: String,
        /// One component per flag, or components separated by '|'.
        #[arg(long, required = true)]
        set: Vec<String>,
    },
    /// Tropical solutions of trop(d^k g), k <= depth, within a universe.
    Solve {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// S-initial part.
    Initial {
        poly: String,
        #[arg(long, required = true)]
        set: Vec<String>,
    },
    /// Initial part keeping the leading powers of t.
    InitialHugao {
        poly: String,
        #[arg(long, required = true)]
        set: Vec<String>,
    },
    /// Build H with In_S(H) = sum of c * x^M * In_S(G) over the pairs.
    Lift {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// `c*x^M` for the matching --gen (default 1).
        #[arg(long = "mult")]
        mults: Vec<String>,
        #[arg(long, required = true)]
        set: Vec<String>,
    },
    /// Compare the solutions of the generators with a reference.
    CheckBasis {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Reference generators.
        #[arg(long = "ref-gen")]
        ref_gens: Vec<String>,
        /// Reference solution tuples, components separated by '|'.
        #[arg(long = "ref-set")]
        ref_sets: Vec<String>,
        #[arg(long, default_value_t = 9)]
        depth: usize,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Three-set comparison: supports of known solutions, tropical
    /// solutions, and points without monomial initial parts.
    TheoremPp {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// A known solution, components separated by '|'.
        #[arg(long = "solution")]
        solutions: Vec<String>,
        #[arg(long, default_value_t = 9)]
        depth: usize,
        #[arg(long = "product-depth", default_value_t = 1)]
        product_depth: usize,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// supp_min of a linear form and of its derivatives up to depth.
    Suppmin {
        poly: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Maximal minors of the band matrix over Q[s].
    MatroidCheck { r: usize },
    /// q_ab witness coverage for the pairs inside {0..r}.
    QabAudit {
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// The series sum_j t^j / prod_{k<=j} (k - phi2).
    Denef {
        #[arg(allow_hyphen_values = true)]
        phi2: String,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Run the pinned reference examples.
    PaperExamples,
}

/// Rendered output and exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Run `tropdiff` with `argv` (including the program name).
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    code: 0,
                },
                ErrorKind::InvalidSubcommand => Outcome {
                    stdout: String::new(),
                    stderr: format!(
                        "error: {}\n",
                        Error::UnknownCommand(argv.get(1).cloned().unwrap_or_default())
                    ),
                    code: 2,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: e.to_string(),
                    code: 2,
                },
            };
        }
    };
    let mut notes = Vec::new();
    let mut report = Report::new(&argv[1..], cli.trunc);
    let result = dispatch(&cli, &mut report, &mut notes);
    let mut stderr: String = notes.iter().map(|n| format!("{n}\n")).collect();
    match result {
        Ok(passed) => Outcome {
            stdout: if cli.json {
                report.json()
            } else {
                report.text()
            },
            stderr,
            code: if passed { 0 } else { 1 },
        },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                stdout: String::new(),
                stderr,
                code: if e.is_syntax() { 2 } else { 1 },
            }
        }
    }
}

fn sets(args: &[String], notes: &mut Vec<String>) -> Result<Vec<NatSet>> {
    let mut out = Vec::new();
    for arg in args {
        for part in arg.split('|') {
            let (s, note) = parse_natset_noting(part.trim())?;
            notes.extend(note);
            out.push(s);
        }
    }
    Ok(out)
}

/// Parse polynomials into a common ring with at least `n` unknowns.
fn polys(texts: &[String], trunc: usize, n: usize) -> Result<Vec<DiffPolynomial>> {
    let parsed: Vec<DiffPolynomial> = texts
        .iter()
        .map(|t| parse_poly(t, trunc))
        .collect::<Result<_>>()?;
    let n = parsed
        .iter()
        .map(DiffPolynomial::n_vars)
        .max()
        .unwrap_or(1)
        .max(n);
    parsed.iter().map(|p| p.with_n_vars(n)).collect()
}

fn widen(p: DiffPolynomial, n: usize) -> Result<DiffPolynomial> {
    if p.n_vars() < n {
        p.with_n_vars(n)
    } else {
        Ok(p)
    }
}

fn universe_meta(report: &mut Report, u: CandidateUniverse) {
    report.meta("universe", u, u.to_string());
}

fn solution_lines(report: &mut Report, title: &str, tuples: &[Vec<NatSet>]) {
    report.line(format!("{title} ({} tuples):", tuples.len()));
    for s in tuples {
        report.line(format!("  {}", tuple_text(s)));
    }
}

fn status_text(st: &SolutionStatus) -> String {
    match st {
        SolutionStatus::Infinite => "solution: yes (value ∞)".into(),
        SolutionStatus::Tie {
            value,
            first,
            second,
        } => {
            format!("solution: yes (minimum {value} attained by {first} and {second})")
        }
        SolutionStatus::Unique { value, minimizer } => {
            format!("solution: no (minimum {value} attained only by {minimizer})")
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational> {
    let c = parse_series(text, 1)?;
    if c.is_exact() && c.trunc_order() == 1 {
        Ok(c.coeffs()[0].clone())
    } else {
        Err(Error::Syntax {
            line: 1,
            column: 1,
            message: format!("expected a rational number, found '{text}'"),
        })
    }
}

/// `c*x^M` as a coefficient and a monomial.
fn parse_multiplier(text: &str, trunc: usize) -> Result<(Rational, DiffMonomial)> {
    let p = parse_poly(text, trunc)?;
    let mut terms = p.terms();
    if let (Some((m, c)), None) = (terms.next(), terms.next()) {
        if c.is_exact() && c.trunc_order() == 1 {
            return Ok((c.coeffs()[0].clone(), m.clone()));
        }
    }
    let _ = parse_expr(text)?;
    Err(Error::Syntax {
        line: 1,
        column: 1,
        message: format!("expected c*x^M with a rational c, found '{text}'"),
    })
}

fn dispatch(cli: &Cli, report: &mut Report, notes: &mut Vec<String>) -> Result<bool> {
    let trunc = cli.trunc;
    if trunc == 0 {
        return Err(Error::EmptyPrecision);
    }
    match &cli.command {
        Command::Val { set, j } => {
            let (s, note) = parse_natset_noting(set)?;
            notes.extend(note);
            let values: Vec<_> = j.iter().map(|&j| (j, s.val_at(j))).collect();
            for (j, v) in &values {
                report.line(format!("Val_S({j}) = {v}"));
            }
            report.result(json!({
                "set": s,
                "values": values.iter().map(|(j, v)| json!({"j": j, "value": v})).collect::<Vec<_>>(),
            }));
        }
        Command::Trop { poly } => {
            let p = parse_poly(poly, trunc)?;
            let t = tropicalize(&p)?;
            report.line(t.to_string());
            report.result(json!({"polynomial": p, "trop": t}));
        }
        Command::Eval { poly, set } => {
            let s = sets(set, notes)?;
            let p = widen(parse_poly(poly, trunc)?, s.len())?;
            let t = tropicalize(&p)?;
            let st = t.solution_status(&s)?;
            report.line(format!("trop(P)(S) = {}", st.value()));
            report.line(status_text(&st));
            report.result(json!({"trop": t, "point": s, "value": st.value(), "status": st}));
        }
        Command::Solve {
            gens,
            depth,
            universe,
        } => {
            let g = polys(gens, trunc, 1)?;
            let u = CandidateUniverse::new(g[0].n_vars(), universe.tmax, universe.pmax);
            let r = solve_diff_ideal(&g, *depth, u)?;
            solution_lines(report, "solutions", &r.solutions);
            report.line(r.claim());
            report.result(json!({"count": r.solutions.len(), "solutions": r.solutions, "claim": r.claim(), "rejections": r.rejections}));
            report.meta("depth", depth, depth.to_string());
            universe_meta(report, u);
        }
        Command::Initial { poly, set } => {
            let s = sets(set, notes)?;
            let p = widen(parse_poly(poly, trunc)?, s.len())?;
            let init = initial_part(&p, &s)?;
            report.line(init.to_string());
            report.result(json!({"initial_part": init, "is_monomial": init.is_monomial()}));
        }
        Command::InitialHugao { poly, set } => {
            let s = sets(set, notes)?;
            let p = widen(parse_poly(poly, trunc)?, s.len())?;
            let init = initial_part_hu_gao(&p, &s)?;
            report.line(init.to_string());
            report.result(json!({"initial_part": init}));
        }
        Command::Lift { gens, mults, set } => {
            let s = sets(set, notes)?;
            let g = polys(gens, trunc, s.len())?;
            let mut parts = Vec::new();
            for (k, gk) in g.into_iter().enumerate() {
                let (alpha, multiplier) = match mults.get(k) {
                    Some(m) => parse_multiplier(m, trunc)?,
                    None => (Rational::from_integer(1.into()), DiffMonomial::one()),
                };
                parts.push(LiftPart {
                    alpha,
                    multiplier,
                    generator: gk,
                });
            }
            let h = lift_initial_combination(&parts, &s)?;
            let init = initial_part(&h, &s)?;
            report.line(format!("H = {h}"));
            report.line(format!("In_S(H) = {init}"));
            report.result(json!({"h": h, "initial_part": init}));
        }
        Command::CheckBasis {
            gens,
            ref_gens,
            ref_sets,
            depth,
            universe,
        } => {
            let all: Vec<String> = gens.iter().chain(ref_gens).cloned().collect();
            let mut ref_tuples = Vec::new();
            for r in ref_sets {
                ref_tuples.push(sets(std::slice::from_ref(r), notes)?);
            }
            let n_ref = ref_tuples.iter().map(Vec::len).max().unwrap_or(1);
            let parsed = polys(&all, trunc, n_ref)?;
            let (g, rg) = parsed.split_at(gens.len());
            let u = CandidateUniverse::new(g[0].n_vars(), universe.tmax, universe.pmax);
            let reference = if rg.is_empty() {
                SolutionReport::from_tuples(u, ref_tuples)
            } else {
                solve_diff_ideal(rg, *depth, u)?
            };
            let check = check_basis(g, &reference, *depth, u)?;
            report.line(format!(
                "basis: {}",
                if check.is_basis { "yes" } else { "no" }
            ));
            for d in &check.discrepancies {
                report.line(match d {
                    Discrepancy::Missing {
                        candidate,
                        rejection,
                    } => format!(
                        "  missing {}: d^{} of generator {} has unique minimizer {} at value {}",
                        tuple_text(candidate),
                        rejection.derivative,
                        rejection.generator,
                        rejection.minimizer,
                        rejection.value
                    ),
                    Discrepancy::Extra { candidate, .. } => {
                        format!("  extra {}", tuple_text(candidate))
                    }
                });
            }
            report.line(check.report.claim());
            report.result(json!({
                "is_basis": check.is_basis,
                "discrepancies": check.discrepancies,
                "claim": check.report.claim(),
            }));
            report.meta("depth", depth, depth.to_string());
            universe_meta(report, u);
        }
        Command::TheoremPp {
            gens,
            solutions,
            depth,
            product_depth,
            universe,
        } => {
            let mut known = Vec::new();
            for sol in solutions {
                known.push(
                    sol.split('|')
                        .map(|c| parse_series(c.trim(), trunc))
                        .collect::<Result<Vec<TruncatedSeries>>>()?,
                );
            }
            let n_sol = known.iter().map(Vec::len).max().unwrap_or(1);
            let g = polys(gens, trunc, n_sol)?;
            let u = CandidateUniverse::new(g[0].n_vars(), universe.tmax, universe.pmax);
            let r = theorem_pp_compare(&g, &known, *depth, u, *product_depth)?;
            solution_lines(report, "(1') supports of known solutions", &r.set1);
            solution_lines(report, "(2') tropical solutions", &r.set2);
            solution_lines(report, "(3') no monomial initial part", &r.set3);
            if r.violations.is_empty() {
                report.line("containments (1') ⊆ (2') ⊆ (3'): hold");
            }
            for v in &r.violations {
                report.line(format!(
                    "containment {} fails at {}",
                    v.containment,
                    tuple_text(&v.candidate)
                ));
            }
            report.line(r.claim.clone());
            report.result(json!({
                "set1": r.set1, "set2": r.set2, "set3": r.set3,
                "sizes": [r.set1.len(), r.set2.len(), r.set3.len()],
                "violations": r.violations, "all_equal": r.all_equal, "claim": r.claim,
            }));
            report.meta("depth", depth, depth.to_string());
            report.meta("product_depth", product_depth, product_depth.to_string());
            universe_meta(report, u);
            return Ok(r.violations.is_empty());
        }
        Command::Suppmin { poly, depth } => {
            let p = parse_poly(poly, trunc)?;
            let sm = supp_min(&p)?;
            report.line(format!("supp_min = {}", set_text(&sm)));
            let st = suppmin_stabilization(&p, *depth)?;
            if *depth > 0 {
                for (k, o) in st.observations.iter().enumerate() {
                    report.line(format!("  k = {k}: {}", set_text(o)));
                }
                report.line(match &st.outcome {
                    StabilizationOutcome::Stabilized { l, k_stable } => {
                        format!(
                            "L = {}, constant for {k_stable} <= k <= {depth}",
                            set_text(l)
                        )
                    }
                    StabilizationOutcome::NotStabilized => {
                        format!("not stabilized within k <= {depth}")
                    }
                });
            }
            report.result(json!({"supp_min": sm, "stabilization": st}));
            report.meta("depth", depth, depth.to_string());
        }
        Command::MatroidCheck { r } => {
            let c = check_uniform_matroid(*r)?;
            for m in &c.minors {
                report.line(format!("rows {:?}: {}", m.rows, m.determinant));
            }
            let name = format!("U(2,{})", r + 1);
            report.line(format!("uniform matroid {name}: {}", c.uniform));
            report.result(
                json!({"matroid": name, "r": c.r, "minors": c.minors, "uniform": c.uniform}),
            );
            return Ok(c.uniform);
        }
        Command::QabAudit { gens, r, depth } => {
            let g = if gens.is_empty() {
                Vec::new()
            } else {
                polys(gens, trunc, 1)?
            };
            let a = coverage_audit(&g, *r, *depth)?;
            for p in &a.pairs {
                report.line(match &p.witness {
                    Some(w) => format!(
                        "{{{},{}}}: d^{} of generator {}, supp_min {}, unique minimizer {}",
                        p.a,
                        p.b,
                        w.derivative,
                        w.generator,
                        set_text(&w.supp_min),
                        w.minimizer
                    ),
                    None => format!("{{{},{}}}: uncovered", p.a, p.b),
                });
            }
            report.line(format!("uncovered pairs: {}", a.uncovered.len()));
            report.line(format!(
                "|G_r| = {}, distinct supp_min = {}, pairs covered from G_r = {}",
                a.g_r_size,
                a.size_three_supp_mins.len(),
                a.covered_by_g_r
            ));
            report.line(format!(
                "counting forces failure: {}",
                a.counting_forces_failure
            ));
            report.result(&a);
            report.meta("depth", depth, depth.to_string());
        }
        Command::Denef { phi2, terms } => {
            let c = parse_rational(phi2)?;
            let s = denef_series(&c, *terms)?;
            let full = s.support().indices.len() == *terms;
            report.line(s.to_string());
            report.line(format!(
                "support: {} of {terms} coefficients nonzero",
                s.support().indices.len()
            ));
            report.result(json!({
                "phi2": crate::series::fmt_rational(&c),
                "coefficients": s.coeffs().iter().map(crate::series::fmt_rational).collect::<Vec<_>>(),
                "terms": terms,
                "nonzero": s.support().indices.len(),
                "full_support": full,
            }));
        }
        Command::PaperExamples => {
            let checks = pinned_examples();
            let failed = checks.iter().filter(|c| !c.ok).count();
            for c in &checks {
                report.line(c.to_string());
            }
            report.line(format!(
                "{} of {} pinned examples match",
                checks.len() - failed,
                checks.len()
            ));
            report.result(json!({"checks": checks, "failed": failed, "total": checks.len()}));
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn set_text<T: std::fmt::Display>(s: &std::collections::BTreeSet<T>) -> String {
    let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}
