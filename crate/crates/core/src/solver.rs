//! Tropical solutions over a bounded universe of eventually periodic sets,
//! the basis checker, and the three-set comparator.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::diffalg::{DiffMonomial, DiffPolynomial, Var};
use crate::error::{Error, Result};
use crate::initial::initial_part;
use crate::series::TruncatedSeries;
use crate::tropical::{trop_supp, tropicalize, NatSet, SolutionStatus, TropDiffPolynomial};

/// All tuples of `n_vars` eventually periodic sets with threshold at most
/// `max_threshold` and period at most `max_period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateUniverse {
    pub n_vars: usize,
    pub max_threshold: usize,
    pub max_period: usize,
}

impl CandidateUniverse {
    pub fn new(n_vars: usize, max_threshold: usize, max_period: usize) -> Self {
        CandidateUniverse {
            n_vars,
            max_threshold,
            max_period,
        }
    }

    /// The distinct sets of one coordinate, in canonical order.
    pub fn sets(&self) -> Vec<NatSet> {
        let mut out = BTreeSet::new();
        for t in 0..=self.max_threshold {
            for p in 0..=self.max_period {
                for transient in 0u64..(1 << t) {
                    for residues in 0u64..(1 << p) {
                        let fin = (0..t as u64).filter(|b| transient >> b & 1 == 1);
                        let res = (0..p as u64).filter(|b| residues >> b & 1 == 1);
                        out.insert(
                            NatSet::new(fin, t as u64, p as u64, res)
                                .expect("residues below period"),
                        );
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Every tuple, in lexicographic order of the coordinate order.
    pub fn tuples(&self) -> Vec<Vec<NatSet>> {
        let sets = self.sets();
        let mut out: Vec<Vec<NatSet>> = vec![Vec::new()];
        for _ in 0..self.n_vars {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    sets.iter().map(move |s| {
                        let mut next = prefix.clone();
                        next.push(s.clone());
                        next
                    })
                })
                .collect();
        }
        out
    }

    pub fn contains(&self, s: &[NatSet]) -> bool {
        s.len() == self.n_vars
            && s.iter()
                .all(|x| x.threshold() <= self.max_threshold && x.period() <= self.max_period)
    }
}

impl fmt::Display for CandidateUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n = {}, T_max = {}, p_max = {}",
            self.n_vars, self.max_threshold, self.max_period
        )
    }
}

/// A tropical polynomial together with where it came from.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// Index of the polynomial or generator in the input list.
    pub generator: usize,
    /// Number of derivatives applied to the generator.
    pub derivative: usize,
    pub polynomial: TropDiffPolynomial,
}

/// Why a candidate is not a solution: the first polynomial with a unique
/// minimizing monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub candidate: Vec<NatSet>,
    pub generator: usize,
    pub derivative: usize,
    pub value: u64,
    pub minimizer: DiffMonomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionReport {
    pub universe: CandidateUniverse,
    pub solutions: Vec<Vec<NatSet>>,
    /// `Some(K)` when the polynomials are `trop(d^k g)` for `k ≤ K`.
    pub verified_depth: Option<usize>,
    pub rejections: Vec<Rejection>,
}

impl SolutionReport {
    /// A reference report listing the given tuples as the solutions.
    pub fn from_tuples(universe: CandidateUniverse, tuples: Vec<Vec<NatSet>>) -> Self {
        SolutionReport {
            universe,
            solutions: tuples,
            verified_depth: None,
            rejections: Vec::new(),
        }
    }

    pub fn claim(&self) -> String {
        match self.verified_depth {
            Some(k) => format!(
                "solutions of trop(d^k g) for every generator g, verified for derivative orders k <= {k} only; \
                 this over-approximates Sol(trop(I)) within the universe ({})",
                self.universe
            ),
            None => format!("exact solution set within the universe ({})", self.universe),
        }
    }

    pub fn rejection_for(&self, s: &[NatSet]) -> Option<&Rejection> {
        self.rejections.iter().find(|r| r.candidate == s)
    }
}

fn check_vars(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::VariableCountMismatch { expected, found })
    }
}

fn run_checks(
    checks: &[Check],
    u: CandidateUniverse,
    depth: Option<usize>,
) -> Result<SolutionReport> {
    for c in checks {
        check_vars(u.n_vars, c.polynomial.n_vars())?;
    }
    let tuples = u.tuples();
    let outcomes: Vec<Option<Rejection>> = tuples
        .par_iter()
        .map(|s| {
            for c in checks {
                if let SolutionStatus::Unique { value, minimizer } =
                    c.polynomial.solution_status(s)?
                {
                    return Ok(Some(Rejection {
                        candidate: s.clone(),
                        generator: c.generator,
                        derivative: c.derivative,
                        value,
                        minimizer,
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let mut report = SolutionReport {
        universe: u,
        solutions: Vec::new(),
        verified_depth: depth,
        rejections: Vec::new(),
    };
    for (s, outcome) in tuples.into_iter().zip(outcomes) {
        match outcome {
            None => report.solutions.push(s),
            Some(r) => report.rejections.push(r),
        }
    }
    Ok(report)
}

/// Exact common solution set of tropical polynomials within the universe.
pub fn solve_system(polys: &[TropDiffPolynomial], u: CandidateUniverse) -> Result<SolutionReport> {
    let checks: Vec<Check> = polys
        .iter()
        .enumerate()
        .map(|(generator, p)| Check {
            generator,
            derivative: 0,
            polynomial: p.clone(),
        })
        .collect();
    run_checks(&checks, u, None)
}

/// `trop(d^k g)` for every generator and `k ≤ depth`.
pub fn derivative_checks(gens: &[DiffPolynomial], depth: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (generator, g) in gens.iter().enumerate() {
        let mut d = g.clone();
        for derivative in 0..=depth {
            checks.push(Check {
                generator,
                derivative,
                polynomial: tropicalize(&d)?,
            });
            d = d.derive(1);
        }
    }
    Ok(checks)
}

/// Solutions within the universe of `trop(d^k g)` for all generators `g` and
/// `k ≤ depth`. This contains `Sol(trop(I))` for the ideal generated.
pub fn solve_diff_ideal(
    gens: &[DiffPolynomial],
    depth: usize,
    u: CandidateUniverse,
) -> Result<SolutionReport> {
    for g in gens {
        check_vars(u.n_vars, g.n_vars())?;
    }
    run_checks(&derivative_checks(gens, depth)?, u, Some(depth))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    /// In the reference but rejected by the generators.
    Missing {
        candidate: Vec<NatSet>,
        rejection: Rejection,
    },
    /// Accepted by the generators but absent from the reference.
    Extra {
        candidate: Vec<NatSet>,
        reference_rejection: Option<Rejection>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisCheck {
    pub is_basis: bool,
    pub discrepancies: Vec<Discrepancy>,
    pub report: SolutionReport,
}

/// Whether the generators cut out exactly the reference solutions within
/// the universe, checking derivatives up to `depth`.
pub fn check_basis(
    gens: &[DiffPolynomial],
    reference: &SolutionReport,
    depth: usize,
    u: CandidateUniverse,
) -> Result<BasisCheck> {
    if reference.universe != u {
        return Err(Error::UniverseMismatch);
    }
    let report = solve_diff_ideal(gens, depth, u)?;
    let ours: BTreeSet<&Vec<NatSet>> = report.solutions.iter().collect();
    let theirs: BTreeSet<&Vec<NatSet>> = reference.solutions.iter().collect();
    let mut discrepancies = Vec::new();
    for s in u.tuples() {
        match (ours.contains(&s), theirs.contains(&s)) {
            (false, true) => {
                let rejection = report.rejection_for(&s).cloned().ok_or_else(|| {
                    Error::InternalInvariantViolation("rejected candidate without a witness".into())
                })?;
                discrepancies.push(Discrepancy::Missing {
                    candidate: s,
                    rejection,
                });
            }
            (true, false) => discrepancies.push(Discrepancy::Extra {
                reference_rejection: reference.rejection_for(&s).cloned(),
                candidate: s,
            }),
            _ => {}
        }
    }
    Ok(BasisCheck {
        is_basis: discrepancies.is_empty(),
        discrepancies,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentViolation {
    /// `"1'⊆2'"` or `"2'⊆3'"`.
    pub containment: &'static str,
    pub candidate: Vec<NatSet>,
}

/// A witness that a candidate lies outside set (3'): a member of the
/// witness family whose initial part is a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialWitness {
    pub candidate: Vec<NatSet>,
    pub generator: usize,
    pub derivative: usize,
    pub multiplier: DiffMonomial,
    pub initial_part: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreeSetReport {
    pub universe: CandidateUniverse,
    pub depth: usize,
    pub product_depth: usize,
    /// Supports of the known solutions.
    pub set1: Vec<Vec<NatSet>>,
    /// Tropical solutions of the derivatives of the generators.
    pub set2: Vec<Vec<NatSet>>,
    /// Points where no witness has a monomial initial part.
    pub set3: Vec<Vec<NatSet>>,
    pub violations: Vec<ContainmentViolation>,
    pub witnesses: Vec<MonomialWitness>,
    pub all_equal: bool,
    pub claim: String,
}

/// Monomials of degree at most `degree` in the given variables.
fn monomials_up_to(vars: &[Var], degree: usize) -> Vec<DiffMonomial> {
    let mut layer = vec![DiffMonomial::one()];
    let mut out = layer.clone();
    for _ in 0..degree {
        let next: BTreeSet<DiffMonomial> = layer
            .iter()
            .flat_map(|m| vars.iter().map(move |&v| m.mul(&DiffMonomial::var(v))))
            .collect();
        out.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    out
}

/// Compare, within the universe, (1') the supports of known solutions,
/// (2') the tropical solutions of `trop(d^k g)` for `k ≤ depth`, and (3')
/// the points at which no `x^M · d^k g` with `deg M ≤ product_depth` has a
/// monomial initial part. The multipliers range over the variables of order
/// at most the largest order among the `d^k g`.
pub fn theorem_pp_compare(
    gens: &[DiffPolynomial],
    known_solutions: &[Vec<TruncatedSeries>],
    depth: usize,
    u: CandidateUniverse,
    product_depth: usize,
) -> Result<ThreeSetReport> {
    for g in gens {
        check_vars(u.n_vars, g.n_vars())?;
    }
    for (index, phi) in known_solutions.iter().enumerate() {
        check_vars(u.n_vars, phi.len())?;
        for (generator, g) in gens.iter().enumerate() {
            if !g.evaluate(phi)?.vanishes() {
                return Err(Error::NotASolution { index, generator });
            }
        }
    }
    let tuples = u.tuples();
    let observed: Vec<_> = known_solutions.iter().map(|phi| trop_supp(phi)).collect();
    let set1: Vec<Vec<NatSet>> = tuples
        .iter()
        .filter(|s| {
            observed
                .iter()
                .any(|obs| obs.iter().zip(s.iter()).all(|(o, c)| o.admits(c)))
        })
        .cloned()
        .collect();

    let set2 = solve_diff_ideal(gens, depth, u)?.solutions;

    let mut family = Vec::new();
    let mut max_order = 0;
    for (generator, g) in gens.iter().enumerate() {
        let mut d = g.clone();
        for derivative in 0..=depth {
            max_order = max_order.max(d.order());
            family.push((generator, derivative, d.clone()));
            d = d.derive(1);
        }
    }
    let vars: Vec<Var> = (1..=u.n_vars)
        .flat_map(|i| (0..=max_order).map(move |j| Var::new(i, j)))
        .collect();
    let multipliers = monomials_up_to(&vars, product_depth);
    let one = TruncatedSeries::one();
    let found: Vec<Option<MonomialWitness>> = tuples
        .par_iter()
        .map(|s| {
            for (generator, derivative, d) in &family {
                for m in &multipliers {
                    let init = initial_part(&d.mul_term(&one, m), s)?;
                    if init.is_monomial() {
                        return Ok(Some(MonomialWitness {
                            candidate: s.clone(),
                            generator: *generator,
                            derivative: *derivative,
                            multiplier: m.clone(),
                            initial_part: init.to_string(),
                        }));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let mut set3 = Vec::new();
    let mut witnesses = Vec::new();
    for (s, w) in tuples.iter().zip(found) {
        match w {
            None => set3.push(s.clone()),
            Some(w) => witnesses.push(w),
        }
    }

    let in2: BTreeSet<&Vec<NatSet>> = set2.iter().collect();
    let in3: BTreeSet<&Vec<NatSet>> = set3.iter().collect();
    let mut violations = Vec::new();
    for s in &set1 {
        if !in2.contains(s) {
            violations.push(ContainmentViolation {
                containment: "1'⊆2'",
                candidate: s.clone(),
            });
        }
    }
    for s in &set2 {
        if !in3.contains(s) {
            violations.push(ContainmentViolation {
                containment: "2'⊆3'",
                candidate: s.clone(),
            });
        }
    }
    let all_equal = set1 == set2 && set2 == set3;
    let claim = if all_equal {
        format!("(1') = (2') = (3'), verified at depth (K = {depth}, product depth = {product_depth}) only")
    } else {
        format!("the three sets differ at depth (K = {depth}, product depth = {product_depth})")
    };
    Ok(ThreeSetReport {
        universe: u,
        depth,
        product_depth,
        set1,
        set2,
        set3,
        violations,
        witnesses,
        all_equal,
        claim,
    })
}
