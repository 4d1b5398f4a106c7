//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::time::Instant;

use cadkit::engine::{eccad_projection, implicit_ec, solve, verify_invariance, Algorithm, CadResult};
use cadkit::heuristics::{projection_ndrr, projection_sotd, sotd, Problem};
use cadkit::lifting::{check_structure, nullified_on_cell, Cad, Cell};
use cadkit::projection::{excl_p, full_projection, ProjectionSet};
use cadkit::realalg::ndrr;
use cadkit::{Polynomial, Rational, RealAlgebraic};
use common::*;
use num_traits::{Signed, Zero};
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(pr: &Problem, alg: Algorithm) -> Result<CadResult, String> {
    solve(&pr.formula, alg, false).map_err(|e| e.to_string())
}

/// Stack over `base`: the cells of the next level sharing its index.
fn stack_over<'a>(cad: &'a Cad, base: &Cell) -> Vec<&'a Cell> {
    let k = base.level();
    cad.level_cells(k + 1).iter().filter(|c| c.index[..k] == base.index[..]).collect()
}

fn is_int(v: &RealAlgebraic, n: i64) -> bool {
    *v == RealAlgebraic::from_int(n)
}

fn criterion_1(results: &mut Vec<(String, CadResult)>) -> Outcome {
    let pr = circle_hyperbola();
    let (full, ec) = match (run(&pr, Algorithm::Full), run(&pr, Algorithm::Ec)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return outcome(false, format!("solver error: {:?} {:?}", a.err(), b.err())),
    };
    let got = [full.cell_count(), ec.cell_count(), full.cad.level_cells(1).len(), ec.cad.level_cells(1).len()];
    let pass = got == [83, 53, 15, 13];
    let d = format!("full {} (83), ec {} (53), line {} (15) / {} (13)", got[0], got[1], got[2], got[3]);
    results.push(("circle-hyperbola full".into(), full));
    results.push(("circle-hyperbola ec".into(), ec));
    outcome(pass, d)
}

fn criterion_2(results: &mut Vec<(String, CadResult)>) -> Outcome {
    let targets = [[83, 69, 53], [317, 145, 105], [695, 237, 157]];
    let mut ordered = true;
    let mut exact = 0;
    let mut rows = Vec::new();
    let mut misses = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        let pr = pairs(k + 1, false);
        let mut counts = [0usize; 3];
        for (j, alg) in [Algorithm::Full, Algorithm::Ec, Algorithm::Tticad].into_iter().enumerate() {
            match run(&pr, alg) {
                Ok(r) => {
                    counts[j] = r.cell_count();
                    results.push((format!("pairs{} {}", k + 1, alg), r));
                }
                Err(e) => return outcome(false, format!("pairs{} {}: {}", k + 1, alg, e)),
            }
            if counts[j] == t[j] {
                exact += 1;
            } else {
                misses.push(format!("pairs{} {} {} vs {}", k + 1, alg, counts[j], t[j]));
            }
        }
        ordered &= counts[2] <= counts[1] && counts[1] <= counts[0];
        rows.push(format!("{}/{}/{}", counts[0], counts[1], counts[2]));
    }
    let mut d = format!("full/ec/tticad {}; ordering {}; exact {}/9", rows.join(", "), if ordered { "holds" } else { "BROKEN" }, exact);
    if !misses.is_empty() {
        d.push_str(&format!(" (target mismatch: {})", misses.join("; ")));
    }
    outcome(ordered, d)
}

fn criterion_3(results: &mut Vec<(String, CadResult)>) -> Outcome {
    let pr = nullified_fibre();
    let full = run(&pr, Algorithm::Full);
    let ec = run(&pr, Algorithm::Ec);
    let (full, ec) = match (full, ec) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return outcome(false, format!("FAIL reported: {:?} {:?}", a.err(), b.err())),
    };
    let (nf, ne) = (full.cell_count(), ec.cell_count());
    let null_cells = full.cad.nullifications.len() + ec.cad.nullifications.len();
    results.push(("nullified-fibre full".into(), full));
    results.push(("nullified-fibre ec".into(), ec));
    outcome(
        nf == 557 && ne == 165,
        format!("full {} (557), ec {} (165), no FAIL, {} nullification record(s)", nf, ne, null_cells),
    )
}

fn criterion_4(results: &mut Vec<(String, CadResult)>) -> Outcome {
    let pr = excl_rescue();
    let o = &pr.order;
    let ec = match run(&pr, Algorithm::Ec) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("FAIL reported: {}", e)),
    };
    let cad = &ec.cad;
    let f = p("z+y*w", o);
    let base = cad.level_cells(3);
    let nullified: Vec<&Cell> = base.iter().filter(|c| nullified_on_cell(&f, c)).collect();
    let polys = pr.formula.all_polys();
    let ep = eccad_projection(&f, &polys[1..], 4).expect("projection");
    let excl: Vec<Polynomial> = excl_p(&ep.basis, &ep.designated, 3).polys();
    let zp1 = p("z+1", o);
    let rescued = nullified.iter().all(|c| c.is_nonzero_constant_on(&zp1));

    let origin = base.iter().find(|c| c.sample.coords.iter().all(|v| is_int(v, 0)));
    let below = base.iter().find(|c| {
        is_int(&c.sample.coords[0], 0)
            && is_int(&c.sample.coords[1], 0)
            && c.sample.coords[2].as_rational().is_some_and(|z| *z < Rational::from_integer((-1).into()))
    });
    let (s0, s1) = match (origin, below) {
        (Some(a), Some(b)) => (stack_over(cad, a).len(), stack_over(cad, b).len()),
        _ => return outcome(false, "cells x=y=z=0 or x=y=0, z<-1 not found"),
    };
    let excl_ok = excl.len() == 1 && excl[0] == zp1;
    let pass = ec.cell_count() == 467 && base.len() == 169 && nullified.len() == 5 && excl_ok && rescued && s0 == 3 && s1 == 1;
    let names: Vec<String> = excl.iter().map(|q| q.to_string_with(o)).collect();
    let d = format!(
        "ec {} (467), base {} (169), f nullified on {} base cells (5), ExclP {{{}}}, constant there: {}, stacks {} (3) and {} (1)",
        ec.cell_count(),
        base.len(),
        nullified.len(),
        names.join(", "),
        rescued,
        s0,
        s1
    );
    results.push(("excl-rescue ec".into(), ec));
    outcome(pass, d)
}

fn criterion_5(results: &mut Vec<(String, CadResult)>) -> Outcome {
    let targets = [83, 183, 283];
    let mut got = Vec::new();
    let mut refused = true;
    for (k, t) in targets.iter().enumerate() {
        let pr = pairs(k + 1, true);
        refused &= implicit_ec(&pr.formula).is_err() && solve(&pr.formula, Algorithm::Ec, false).is_err();
        match run(&pr, Algorithm::Tticad) {
            Ok(r) => {
                got.push((r.cell_count(), *t));
                results.push((format!("relaxed pairs{} tticad", k + 1), r));
            }
            Err(e) => return outcome(false, format!("relaxed pairs{}: {}", k + 1, e)),
        }
    }
    let pass = refused && got.iter().all(|(a, b)| a == b);
    let v: Vec<String> = got.iter().map(|(a, b)| format!("{} ({})", a, b)).collect();
    outcome(pass, format!("tticad {}; implicit EC refused: {}", v.join(", "), refused))
}

fn proptest_run<S: proptest::strategy::Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn criterion_6(results: &[(String, CadResult)]) -> Outcome {
    let mut bad = Vec::new();
    let mut points = 0;
    let mut violations = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        let rep = verify_invariance(r, 5, 0x5eed + i as u64);
        points += rep.points_checked;
        violations += rep.violations.len();
        if !rep.ok() {
            bad.push(format!("{}: {} violation(s), first {:?}", name, rep.violations.len(), rep.violations[0]));
        }
        let s = check_structure(&r.cad);
        if !s.is_empty() {
            bad.push(format!("{}: structure {}", name, s[0]));
        }
    }
    let props = [
        ("resultant-gcd", proptest_run(resultant_gcd_strategy(), prop_resultant_gcd)),
        ("sturm-isolation", proptest_run(arb_univariate(), prop_sturm_vs_isolation)),
        ("total order", proptest_run(total_order_strategy(), prop_total_order)),
    ];
    for (n, r) in &props {
        if let Err(e) = r {
            bad.push(format!("property {}: {}", n, e));
        }
    }
    let d = format!(
        "{} CADs, {} random points, {} violations; 3 properties x 1000 cases{}",
        results.len(),
        points,
        violations,
        if bad.is_empty() { String::new() } else { format!("; problems: {}", bad.join("; ")) }
    );
    outcome(bad.is_empty(), d)
}

/// sotd read off the printed expanded form: every term's exponents summed.
fn sotd_from_text(s: &str, vars: &[&str]) -> u64 {
    let s = s.replace(' ', "").replace('-', "+-");
    let mut total = 0;
    for term in s.split('+').filter(|t| !t.is_empty()) {
        for factor in term.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u64>().expect("integer exponent")),
                None => (factor, 1),
            };
            if vars.contains(&base.trim_start_matches('-')) {
                total += exp;
            }
        }
    }
    total
}

/// Distinct real roots of univariate polynomials by scanning a rational grid
/// of step `1/den` over `[-r, r]`: exact zeros plus strict sign changes of
/// the product. Valid when roots are further apart than the step.
fn grid_root_count(polys: &[Polynomial], r: i64, den: i64) -> usize {
    let val = |k: i64| -> Rational {
        let x = Rational::new(k.into(), den.into());
        polys.iter().fold(Rational::from_integer(1.into()), |acc, q| acc * q.eval(&[x.clone()]))
    };
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for k in -r * den..=r * den {
        let v = val(k);
        if v.is_zero() {
            count += 1;
            prev = None;
        } else {
            let pos = v.is_positive();
            if prev.is_some_and(|s| s != pos) {
                count += 1;
            }
            prev = Some(pos);
        }
    }
    count
}

fn criterion_7() -> Outcome {
    let pr = circle_hyperbola();
    let o = &pr.order;
    let polys = pr.formula.all_polys();
    let full: ProjectionSet = full_projection(&polys, 2);
    let ec = eccad_projection(&polys[0], &polys[1..], 2).expect("projection").projection;
    let mut bad = Vec::new();
    let mut vals = Vec::new();
    for (name, set) in [("full", &full), ("ec", &ec)] {
        let texts: Vec<String> = set.all_polys().iter().map(|q| q.to_string_with(o)).collect();
        let oracle: u64 = texts.iter().map(|t| sotd_from_text(t, &["x", "y"])).sum();
        let got = projection_sotd(set);
        if got != oracle {
            bad.push(format!("{} sotd {} vs {}", name, got, oracle));
        }
        let line = set.level_polys(0);
        let line1: Vec<Polynomial> = line.iter().map(|q| q.permute_vars(&[0, 0], 1)).collect();
        let grid = grid_root_count(&line1, 3, 64);
        let n = projection_ndrr(set);
        if n != grid || n != ndrr(&line) {
            bad.push(format!("{} ndrr {} vs grid {}", name, n, grid));
        }
        vals.push(format!("{} sotd {} ndrr {}", name, got, n));
    }
    if projection_ndrr(&full) != 7 {
        bad.push("full ndrr is not 7".into());
    }
    if sotd(&polys) != 6 {
        bad.push("input sotd is not 6".into());
    }
    if let Err(e) = proptest_run(greedy_strategy(), prop_greedy_blocks) {
        bad.push(format!("greedy blocks: {}", e));
    }
    let mut d = format!("{}; greedy respects 1000 random block partitions", vals.join(", "));
    if !bad.is_empty() {
        d.push_str(&format!("; problems: {}", bad.join("; ")));
    }
    outcome(bad.is_empty(), d)
}

fn main() {
    let mut results: Vec<(String, CadResult)> = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, title: &str, t: Instant, o: Outcome| {
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {} {}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            n,
            title,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    };
    let t = Instant::now();
    let o = criterion_1(&mut results);
    report(1, "circle and hyperbola", t, o);
    let t = Instant::now();
    let o = criterion_2(&mut results);
    report(2, "circle/hyperbola pairs", t, o);
    let t = Instant::now();
    let o = criterion_3(&mut results);
    report(3, "nullification on a line", t, o);
    let t = Instant::now();
    let o = criterion_4(&mut results);
    report(4, "excluded projection rescue", t, o);
    let t = Instant::now();
    let o = criterion_5(&mut results);
    report(5, "clauses without equations", t, o);
    let t = Instant::now();
    let o = criterion_6(&results);
    report(6, "invariance and properties", t, o);
    let t = Instant::now();
    let o = criterion_7();
    report(7, "formulation measures", t, o);
    if failed > 0 {
        println!("{} criterion(s) failed", failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
