//! Acceptance criteria 1-12, one test each. Every test prints a single
//! `criterion N: PASS|FAIL` line. Arithmetic is exact, so every tolerance is
//! zero.

mod common;

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::Rng;

use common::cli::{expression, golden_mismatches, parity_failures, round_trip_failure, run};
use tropdiff::analysis::{
    band_matrix, check_uniform_matroid, coverage_audit, denef_series, determinant, PolyMatrix,
    UniPoly,
};
use tropdiff::diffalg::{DiffMonomial, DiffPolynomial, ResiduePolynomial, Var};
use tropdiff::initial::{
    initial_part, initial_part_hu_gao, lift_initial_combination, q_sub, LiftPart,
};
use tropdiff::parse::{parse_natset, parse_poly};
use tropdiff::series::{rat, ratio, Rational, TruncatedSeries, Valuation};
use tropdiff::solver::{
    check_basis, solve_system, theorem_pp_compare, CandidateUniverse, SolutionReport,
};
use tropdiff::tropical::{trop_supp, tropicalize, NatSet, TropDiffPolynomial, TropValue};
use tropdiff::Error;

const TOLERANCE: u32 = 0;

fn verdict(n: u32, what: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} ({what}; tolerance {TOLERANCE}, exact arithmetic)");
    for f in failures {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:#?}");
}

fn expect(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn set(s: &str) -> NatSet {
    parse_natset(s).unwrap()
}

fn poly(s: &str) -> DiffPolynomial {
    parse_poly(s, 32).unwrap()
}

const F: &str = "x(1,0) + x(1,1) + x(1,2)";
const G: &str = "x(1,0) - x(1,3)";

fn section4_universe() -> CandidateUniverse {
    CandidateUniverse::new(1, 3, 3)
}

/// `∅`, `ℤ≥0` and the three complements of residue classes mod 3.
fn five_sets() -> Vec<NatSet> {
    let mut v = vec![
        NatSet::empty(),
        NatSet::naturals(),
        NatSet::complement_of_progression(0, 3),
        NatSet::complement_of_progression(1, 3),
        NatSet::complement_of_progression(2, 3),
    ];
    v.sort();
    v
}

/// Solution of `x + x' + x'' = 0` with `x(0) = a0`, `x'(0) = a1`, known
/// modulo `t^n`, from `a_{j+2} = -(a_j + (j+1) a_{j+1}) / ((j+2)(j+1))`.
fn recurrence_solution(a0: i64, a1: i64, n: usize) -> TruncatedSeries {
    let mut a = vec![rat(a0), rat(a1)];
    for j in 0..n.saturating_sub(2) {
        let jj = j as i64;
        let next = -(&a[j] + rat(jj + 1) * &a[j + 1]) / rat((jj + 2) * (jj + 1));
        a.push(next);
    }
    a.truncate(n);
    TruncatedSeries::new(a, n)
}

fn recurrence_solutions() -> Vec<TruncatedSeries> {
    (-2..=2)
        .flat_map(|a0| (-2..=2).map(move |a1| recurrence_solution(a0, a1, 32)))
        .collect()
}

#[test]
fn criterion_01_val_pinned() {
    let s = set("{0,1,2,3,7,8}");
    let mut f = Vec::new();
    expect(&mut f, s.val_at(4) == TropValue::Finite(3), || {
        format!("Val_S(4) = {}", s.val_at(4))
    });
    expect(&mut f, s.val_at(9) == TropValue::Infinite, || {
        format!("Val_S(9) = {}", s.val_at(9))
    });
    verdict(1, "Val_S(4) = 3, Val_S(9) = ∞", &f);
}

#[test]
fn criterion_02_tropicalisation_pinned() {
    let t = tropicalize(&poly("t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2")).unwrap();
    let mut f = Vec::new();
    expect(&mut f, t.to_string() == "min{1+3x12+x23, 2x13}", || {
        format!("got {t}")
    });
    let expected = TropDiffPolynomial::new(2)
        .with_term(
            DiffMonomial::from_pairs([(Var::new(1, 2), 3), (Var::new(2, 3), 1)]),
            TropValue::Finite(1),
        )
        .with_term(
            DiffMonomial::from_pairs([(Var::new(1, 3), 2)]),
            TropValue::Finite(0),
        );
    expect(&mut f, t == expected, || format!("structure {t:?}"));
    verdict(2, "trop(t x12^3 x23 + (1+t^2) x13^2)", &f);
}

#[test]
fn criterion_03_solution_characterisation() {
    let phi = TropDiffPolynomial::new(1)
        .with_term(DiffMonomial::var(Var::new(1, 2)), TropValue::Finite(0))
        .with_term(DiffMonomial::var(Var::new(1, 0)), TropValue::Finite(2))
        .with_term(DiffMonomial::one(), TropValue::Finite(1));
    let u = CandidateUniverse::new(1, 4, 3);
    let got = solve_system(&[phi], u).unwrap().solutions;
    let expected: Vec<Vec<NatSet>> = u
        .tuples()
        .into_iter()
        .filter(|s| !s[0].contains(2) && s[0].contains(3))
        .collect();
    let mut f = Vec::new();
    expect(&mut f, !expected.is_empty(), || {
        "no candidate has 2 ∉ S, 3 ∈ S".into()
    });
    expect(&mut f, got == expected, || {
        format!("{} solutions, expected {}", got.len(), expected.len())
    });
    verdict(
        3,
        "solutions of x12 ⊕ 2⊙x10 ⊕ 1 over T_max = 4, p_max = 3",
        &f,
    );
}

#[test]
fn criterion_04_initial_parts_pinned() {
    let p = poly("t*x(1,1) + t^2*x(1,3) + t^3");
    let s = [set("{2,3}")];
    let mut f = Vec::new();
    let init = initial_part(&p, &s).unwrap().to_string();
    expect(&mut f, init == "x(1,1) + x(1,3)", || {
        format!("In_S(P) = {init}")
    });
    let hg = initial_part_hu_gao(&p, &s).unwrap().to_string();
    expect(&mut f, hg == "t*x(1,1) + t^2*x(1,3)", || {
        format!("Hu-Gao = {hg}")
    });
    let d = initial_part(&p.derive(1), &s).unwrap().to_string();
    expect(&mut f, d == "x(1,1) + 2*x(1,3)", || {
        format!("In_S(dP) = {d}, expected x(1,1) + 2*x(1,3)")
    });
    expect(&mut f, d != "x(1,2) + x(1,4)", || {
        "In_S(dP) equals the shifted initial part".into()
    });
    let z = initial_part(&poly("t*x(1,4) + t^2*x(1,5)"), &[set("{1,2,3}")]).unwrap();
    expect(&mut f, z.is_zero(), || format!("In_{{1,2,3}} = {z}"));
    verdict(4, "pinned initial parts", &f);
}

/// `min` over terms of `ν(c) + Σ e·Val_{S_i}(j)`, straight from `val_at`.
fn trop_value_oracle(p: &DiffPolynomial, s: &[NatSet]) -> TropValue {
    let mut best = TropValue::Infinite;
    for (m, c) in p.terms() {
        let mut v = match c.valuation() {
            Valuation::Finite(nu) => TropValue::Finite(nu),
            _ => continue,
        };
        for (var, e) in m.iter() {
            v = v.odot(s[var.i - 1].val_at(var.j as u64).times(u64::from(e)));
        }
        best = best.oplus(v);
    }
    best
}

#[test]
fn criterion_05_property_suites() {
    const CASES: usize = 1000;
    let mut f = Vec::new();

    let mut rng = common::rng(5_001);
    for case in 0..CASES {
        let q = common::poly(&mut rng, 2, 3);
        let s = [common::natset(&mut rng), common::natset(&mut rng)];
        let out = q_sub(&q, &s).unwrap();
        if trop_value_oracle(&q, &s).is_infinite() {
            continue;
        }
        let vals: Vec<u64> = out
            .terms()
            .filter_map(|(_, c)| c.valuation().value().finite())
            .collect();
        expect(&mut f, vals.iter().min() == Some(&0), || {
            format!("unit coefficient, case {case}: {q} at {s:?}")
        });
    }

    let mut rng = common::rng(5_002);
    for case in 0..CASES {
        let a = common::poly(&mut rng, 1, 3);
        let b = common::poly(&mut rng, 1, 3);
        let s = [common::natset(&mut rng)];
        let lhs = initial_part(&a.mul(&b).unwrap(), &s).unwrap();
        let rhs = initial_part(&a, &s)
            .unwrap()
            .mul(&initial_part(&b, &s).unwrap())
            .unwrap();
        expect(&mut f, lhs == rhs, || {
            format!("multiplicativity, case {case}: {a} and {b}")
        });
    }

    let mut rng = common::rng(5_003);
    for case in 0..CASES {
        let q = common::poly(&mut rng, 2, 2);
        let a = rng.gen_range(0..6);
        let s = [common::natset(&mut rng), common::natset(&mut rng)];
        let shifted = q.scale(&TruncatedSeries::monomial(rat(1), a));
        let same = initial_part(&shifted, &s).unwrap() == initial_part(&q, &s).unwrap();
        expect(&mut f, same, || {
            format!("t^a invariance, case {case}: {q}, a = {a}")
        });
    }

    let mut rng = common::rng(5_004);
    for case in 0..CASES {
        let s = [common::natset(&mut rng)];
        let k = rng.gen_range(1..=3);
        let parts: Vec<LiftPart> = (0..k)
            .map(|_| LiftPart {
                alpha: ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
                multiplier: common::monomial(&mut rng, 1, 2),
                generator: common::poly(&mut rng, 1, 2),
            })
            .collect();
        match lift_initial_combination(&parts, &s) {
            Ok(h) => {
                let mut target = ResiduePolynomial::zero(1);
                for part in &parts {
                    let init = initial_part(&part.generator, &s).unwrap();
                    target = target
                        .add(&init.mul_term(&part.alpha, &part.multiplier))
                        .unwrap();
                }
                let got = initial_part(&h, &s).unwrap();
                expect(&mut f, got == target, || {
                    format!("lifting, case {case}: In_S(H) = {got}, target {target}")
                });
            }
            Err(Error::InfiniteTropValue { .. }) => {}
            Err(e) => f.push(format!("lifting, case {case}: {e}")),
        }
    }

    let mut rng = common::rng(5_005);
    for case in 0..CASES {
        let a = common::poly(&mut rng, 2, 3);
        let b = common::poly(&mut rng, 2, 3);
        let lhs = a.mul(&b).unwrap().derive(1);
        let rhs = a
            .derive(1)
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.derive(1)).unwrap())
            .unwrap();
        expect(&mut f, lhs == rhs, || {
            format!("Leibniz, case {case}: {a} and {b}")
        });
        let phi = [
            common::truncated_series(&mut rng, 12),
            common::truncated_series(&mut rng, 12),
        ];
        let direct = a.derive(1).evaluate(&phi).unwrap();
        let via = a.evaluate(&phi).unwrap().derive(1);
        expect(&mut f, direct.agrees_with(&via), || {
            format!("evaluation commutes with d, case {case}: {a}")
        });
    }

    verdict(
        5,
        "unit coefficient, multiplicativity, t^a invariance, lifting, Leibniz; 1000 cases each",
        &f,
    );
}

#[test]
fn criterion_06_worked_example() {
    let u = section4_universe();
    let f_poly = poly(F);
    let mut f = Vec::new();
    let mut observed: BTreeSet<NatSet> = BTreeSet::new();
    for phi in recurrence_solutions() {
        let residual = f_poly.evaluate(std::slice::from_ref(&phi)).unwrap();
        expect(&mut f, residual.vanishes(), || {
            format!("recurrence solution fails: {residual}")
        });
        let supp = &trop_supp(std::slice::from_ref(&phi))[0];
        observed.extend(u.sets().into_iter().filter(|c| supp.admits(c)));
    }
    let observed: Vec<NatSet> = observed.into_iter().collect();
    expect(&mut f, observed == five_sets(), || {
        format!(
            "trop(Sol(I)) ∩ U = {:?}",
            observed.iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    });
    let reference =
        SolutionReport::from_tuples(u, five_sets().into_iter().map(|s| vec![s]).collect());
    let with_g = check_basis(&[poly(F), poly(G)], &reference, 9, u).unwrap();
    expect(&mut f, with_g.is_basis, || {
        format!("{{f, g}}: {:?}", with_g.discrepancies)
    });
    let alone = check_basis(&[poly(F)], &reference, 9, u).unwrap();
    expect(&mut f, !alone.is_basis, || {
        "{f} alone reported as a basis".into()
    });
    verdict(6, "x + x' + x'' = 0 over T_max = 3, p_max = 3, K = 9", &f);
}

#[test]
fn criterion_07_three_sets() {
    let mut f = Vec::new();
    let known: Vec<Vec<TruncatedSeries>> = recurrence_solutions()
        .into_iter()
        .map(|s| vec![s])
        .collect();
    let r = theorem_pp_compare(&[poly(F), poly(G)], &known, 9, section4_universe(), 1).unwrap();
    expect(&mut f, r.violations.is_empty(), || {
        format!("linear example: {:?}", r.violations)
    });
    expect(
        &mut f,
        r.all_equal && r.set1 == r.set2 && r.set2 == r.set3,
        || {
            format!(
                "linear example: |1'| = {}, |2'| = {}, |3'| = {}",
                r.set1.len(),
                r.set2.len(),
                r.set3.len()
            )
        },
    );

    let u = CandidateUniverse::new(2, 1, 1);
    let indicator = |s: &NatSet| {
        let c: Vec<i64> = (0..32).map(|n| i64::from(s.contains(n))).collect();
        TruncatedSeries::from_ints(&c, 32)
    };
    let known: Vec<Vec<TruncatedSeries>> = u
        .sets()
        .iter()
        .flat_map(|s| [0, 1].map(|c| vec![indicator(s), TruncatedSeries::poly_ints(&[c])]))
        .collect();
    let r = theorem_pp_compare(&[poly("x(2,1)")], &known, 3, u, 1).unwrap();
    expect(&mut f, r.violations.is_empty(), || {
        format!("x21: {:?}", r.violations)
    });
    expect(
        &mut f,
        r.all_equal && r.set1 == r.set2 && r.set2 == r.set3,
        || {
            format!(
                "x21: |1'| = {}, |2'| = {}, |3'| = {}",
                r.set1.len(),
                r.set2.len(),
                r.set3.len()
            )
        },
    );
    verdict(
        7,
        "(1') = (2') = (3') for the linear example and for x21",
        &f,
    );
}

#[test]
fn criterion_08_matroid() {
    let mut f = Vec::new();
    for r in 2..=8 {
        let c = check_uniform_matroid(r).unwrap();
        expect(
            &mut f,
            c.uniform && c.minors.len() == (r + 1) * r / 2,
            || format!("r = {r}"),
        );
        // Independent route: expand each minor along its first column.
        let a = band_matrix(r).unwrap();
        for m in &c.minors {
            let sub: PolyMatrix = m.rows.iter().map(|&k| a[k].clone()).collect();
            expect(&mut f, cofactor_det(&sub) == m.determinant, || {
                format!("r = {r}, rows {:?}", m.rows)
            });
        }
    }
    expect(&mut f, determinant(&[]) == UniPoly::one(), || {
        "empty determinant".into()
    });
    verdict(8, "band matrix minors nonzero for 2 <= r <= 8", &f);
}

fn cofactor_det(m: &[Vec<UniPoly>]) -> UniPoly {
    if m.is_empty() {
        return UniPoly::one();
    }
    let mut total = UniPoly::zero();
    for i in 0..m.len() {
        if m[i][0].is_zero() {
            continue;
        }
        let minor: PolyMatrix = m
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = &m[i][0] * &cofactor_det(&minor);
        total = if i % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

#[test]
fn criterion_09_coverage_audit() {
    const DEPTH: usize = 20;
    const R_LIMIT: usize = 30;
    let mut f = Vec::new();
    let mut rng = common::rng(9_001);
    for instance in 0..6 {
        let s = ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let base = DiffPolynomial::from_terms(
            1,
            [
                (DiffMonomial::var(Var::new(1, 2)), TruncatedSeries::one()),
                (
                    DiffMonomial::var(Var::new(1, 1)),
                    TruncatedSeries::constant(s.clone()),
                ),
                (DiffMonomial::var(Var::new(1, 0)), TruncatedSeries::one()),
            ],
        )
        .unwrap();
        let combos: Vec<DiffPolynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut g = DiffPolynomial::zero(1);
                for k in 0..=3 {
                    let c = TruncatedSeries::constant(rat(rng.gen_range(-2..=2)));
                    g = g.add(&base.derive(k).scale(&c)).unwrap();
                }
                if g.is_zero() {
                    base.clone()
                } else {
                    g
                }
            })
            .collect();
        for gens in [vec![base.clone()], combos] {
            let mut bound = None;
            for r in 2..=R_LIMIT {
                let report = coverage_audit(&gens, r, DEPTH).unwrap();
                let distinct = report.size_three_supp_mins.len();
                expect(
                    &mut f,
                    3 * distinct >= report.covered_by_g_r && report.inequality_holds,
                    || {
                        format!(
                            "instance {instance}, r = {r}: {distinct} supp_min for {} pairs",
                            report.covered_by_g_r
                        )
                    },
                );
                if !report.uncovered.is_empty() {
                    bound = Some(r);
                    break;
                }
            }
            let shown: Vec<String> = gens.iter().map(ToString::to_string).collect();
            match bound {
                Some(r) => println!("  s = {s}, G = {shown:?}: first uncovered pair at r = {r}"),
                None => f.push(format!(
                    "s = {s}, G = {shown:?}: every pair covered up to r = {R_LIMIT}"
                )),
            }
        }
    }
    verdict(
        9,
        "coverage audit on finite G inside <x12 + s x11 + x10>, K = 20",
        &f,
    );
}

#[test]
fn criterion_10_denef_series() {
    let mut f = Vec::new();
    expect(
        &mut f,
        denef_series(&rat(2), 5) == Err(Error::NaturalPole { k: 2 }),
        || format!("phi2 = 2 gave {:?}", denef_series(&rat(2), 5)),
    );
    match denef_series(&rat(7), 5) {
        Ok(phi1) => {
            let phi = [phi1.clone(), TruncatedSeries::constant(rat(7))];
            for text in ["t*x(1,1) - (x(2,0) + t)*x(1,0) - 1", "x(2,1)"] {
                let r = parse_poly(text, 5).unwrap().evaluate(&phi).unwrap();
                expect(&mut f, r.vanishes(), || format!("{text} leaves {r}"));
            }
            let nonzero = phi1.coeffs().iter().filter(|c| !c.is_zero()).count();
            expect(&mut f, nonzero == 5 && phi1.trunc_order() == 5, || {
                format!("support of {phi1}")
            });
            // 1 / prod_{k<=j} (k - 7), recomputed by hand.
            let mut denom = Rational::from_integer(1.into());
            for (j, c) in phi1.coeffs().iter().enumerate() {
                denom *= rat(j as i64 - 7);
                expect(&mut f, *c == denom.recip(), || {
                    format!("coefficient {j} = {c}")
                });
            }
        }
        Err(e) => f.push(format!("phi2 = 7: {e}")),
    }
    verdict(10, "natural pole at phi2 = 2, full support at phi2 = 7", &f);
}

/// Solution test on explicit membership windows, independent of `val_at`.
fn window_is_solution(p: &TropDiffPolynomial, s: &[NatSet], window: usize) -> bool {
    let bits: Vec<Vec<bool>> = s
        .iter()
        .map(|c| (0..window as u64).map(|n| c.contains(n)).collect())
        .collect();
    let val = |i: usize, j: usize| -> Option<u64> {
        (j..window)
            .find(|&n| bits[i - 1][n])
            .map(|n| (n - j) as u64)
    };
    let mut values: Vec<u64> = Vec::new();
    for (m, a) in p.terms() {
        let mut total = Some(a);
        for (v, e) in m.iter() {
            total = total.zip(val(v.i, v.j)).map(|(t, x)| t + u64::from(e) * x);
        }
        values.extend(total);
    }
    match values.iter().min() {
        None => true,
        Some(min) => values.iter().filter(|&v| v == min).count() >= 2,
    }
}

/// Universe enumerated from raw descriptions and deduplicated by a window
/// long enough to separate distinct sets.
fn universe_oracle(t_max: usize, p_max: usize) -> usize {
    let lcm = (1..=p_max.max(1)).fold(1, num_integer_lcm);
    let window = (t_max + 2 * lcm + 1) as u64;
    let mut seen = BTreeSet::new();
    for t in 0..=t_max {
        for p in 0..=p_max {
            for fin in 0u32..(1 << t) {
                let res_count = if p == 0 { 1 } else { 1u32 << p };
                for res in 0..res_count {
                    let member = |n: u64| -> bool {
                        if (n as usize) < t {
                            fin >> n & 1 == 1
                        } else {
                            p > 0 && res >> (n as usize % p) & 1 == 1
                        }
                    };
                    seen.insert((0..window).map(member).collect::<Vec<bool>>());
                }
            }
        }
    }
    seen.len()
}

fn num_integer_lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

#[test]
fn criterion_11_brute_force_oracle() {
    let mut f = Vec::new();
    let mut rng = common::rng(11_001);
    for (t, p) in [(0, 0), (2, 1), (3, 3), (4, 2)] {
        let u = CandidateUniverse::new(1, t, p);
        let n = universe_oracle(t, p);
        expect(&mut f, u.sets().len() == n, || {
            format!("universe ({t}, {p}): {} sets, oracle {n}", u.sets().len())
        });
    }
    for instance in 0..200 {
        let n_vars = rng.gen_range(1..=2);
        let (t_max, p_max) = if n_vars == 1 {
            (rng.gen_range(0..=4), rng.gen_range(0..=3))
        } else {
            (rng.gen_range(0..=2), rng.gen_range(0..=2))
        };
        let u = CandidateUniverse::new(n_vars, t_max, p_max);
        let system: Vec<TropDiffPolynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut p = TropDiffPolynomial::new(n_vars);
                for _ in 0..rng.gen_range(1..=4) {
                    let m = common::monomial(&mut rng, n_vars, 3);
                    p = p.with_term(m, TropValue::Finite(rng.gen_range(0..4)));
                }
                p
            })
            .collect();
        let order = system
            .iter()
            .map(TropDiffPolynomial::order)
            .max()
            .unwrap_or(0);
        let window = t_max + 2 * p_max + order + 1;
        let expected: Vec<Vec<NatSet>> = u
            .tuples()
            .into_iter()
            .filter(|s| system.iter().all(|p| window_is_solution(p, s, window)))
            .collect();
        let got = solve_system(&system, u).unwrap().solutions;
        expect(&mut f, got == expected, || {
            let shown: Vec<String> = system.iter().map(ToString::to_string).collect();
            format!(
                "instance {instance}: {shown:?} over ({t_max}, {p_max}): {} vs oracle {}",
                got.len(),
                expected.len()
            )
        });
    }
    verdict(
        11,
        "solve_system against the window oracle, 200 instances",
        &f,
    );
}

#[test]
fn criterion_12_cli() {
    let mut f = Vec::new();
    let out = run(&["paper-examples"]);
    expect(&mut f, out.code == 0, || {
        let bad: Vec<&str> = out
            .stdout
            .lines()
            .filter(|l| l.starts_with("MISMATCH"))
            .collect();
        format!("paper-examples exited {}: {bad:?}", out.code)
    });
    f.extend(
        golden_mismatches()
            .into_iter()
            .map(|m| format!("golden {m} differs")),
    );
    f.extend(parity_failures().into_iter().map(|m| format!("parity {m}")));
    let mut rng = common::rng(12_001);
    for _ in 0..1000 {
        let text = expression(&mut rng, 2);
        if let Some(e) = round_trip_failure(&text) {
            f.push(format!("round trip: {e}"));
        }
    }
    verdict(
        12,
        "paper-examples, golden parity, parser round trip on 1000 expressions",
        &f,
    );
}
