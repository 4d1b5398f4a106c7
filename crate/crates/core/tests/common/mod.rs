//! Problems and property checks shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use cadkit::engine::{Clause, Constraint, FormulaSequence, Relop};
use cadkit::heuristics::{greedy_order, respects_blocks, sotd, Problem};
use cadkit::polyarith::{gcd, resultant, squarefree_finest_basis};
use cadkit::realalg::{compare, isolate_roots, ndrr, sign_at, sturm_root_count};
use cadkit::{Polynomial, Rational, RealAlgebraic, VarOrder};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn p(s: &str, o: &VarOrder) -> Polynomial {
    Polynomial::parse(s, o).unwrap()
}

fn clause(o: &VarOrder, cons: &[(&str, Relop)], ec: Option<usize>) -> Clause {
    let cs = cons.iter().map(|(s, r)| Constraint::new(p(s, o), *r).unwrap()).collect();
    Clause::new(cs, ec).unwrap()
}

fn problem(o: VarOrder, clauses: Vec<Clause>) -> Problem {
    Problem { formula: FormulaSequence::new(clauses).unwrap(), order: o }
}

/// Circle and hyperbola: x^2+y^2-4 = 0 and xy-1 < 0.
pub fn circle_hyperbola() -> Problem {
    let o = VarOrder::new(["x", "y"]).unwrap();
    let c = clause(&o, &[("x^2+y^2-4", Relop::Eq), ("x*y-1", Relop::Lt)], Some(0));
    problem(o, vec![c])
}

const PAIRS: [(&str, &str); 3] = [
    ("x^2+y^2-1", "x*y-1/4"),
    ("(x-4)^2+(y-1)^2-1", "(x-4)*(y-1)-1/4"),
    ("(x+4)^2+(y+1)^2-1", "(x+4)*(y+1)-1/4"),
];

/// Disjunction of the first `k` clauses f_i = 0 and g_i < 0. When `relaxed`
/// the first clause reads f_1 < 0 and has no equation.
pub fn pairs(k: usize, relaxed: bool) -> Problem {
    let o = VarOrder::new(["x", "y"]).unwrap();
    let clauses = PAIRS[..k]
        .iter()
        .enumerate()
        .map(|(i, (f, g))| {
            if relaxed && i == 0 {
                clause(&o, &[(f, Relop::Lt), (g, Relop::Lt)], None)
            } else {
                clause(&o, &[(f, Relop::Eq), (g, Relop::Lt)], Some(0))
            }
        })
        .collect();
    problem(o, clauses)
}

/// x+y+z+w = 0 and zy - x^2 w < 0; g is nullified on the line x = y = 0.
pub fn nullified_fibre() -> Problem {
    let o = VarOrder::new(["x", "y", "z", "w"]).unwrap();
    let c = clause(&o, &[("x+y+z+w", Relop::Eq), ("z*y-x^2*w", Relop::Lt)], Some(0));
    problem(o, vec![c])
}

/// z+yw = 0, yx+1 < 0, w(z+1)+1 < 0; the equation is nullified where y = z = 0.
pub fn excl_rescue() -> Problem {
    let o = VarOrder::new(["x", "y", "z", "w"]).unwrap();
    let c = clause(&o, &[("z+y*w", Relop::Eq), ("y*x+1", Relop::Lt), ("w*(z+1)+1", Relop::Lt)], Some(0));
    problem(o, vec![c])
}

// ---- strategies ----

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Polynomial in `nvars` variables with up to `terms` terms of degree at most
/// `deg` in each variable and small integer coefficients.
pub fn arb_poly(nvars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), -6i64..=6), 1..=terms)
        .prop_map(move |ts| Polynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (e, rat(c)))))
}

/// Non-constant univariate polynomial built from linear and quadratic factors,
/// so that real roots (rational and irrational) are common. Degree at most 8.
pub fn arb_univariate() -> impl Strategy<Value = Polynomial> {
    let factor = prop_oneof![
        (1i64..=3, -6i64..=6).prop_map(|(a, b)| vec![rat(b), rat(a)]),
        (-4i64..=4, -6i64..=6).prop_map(|(b, c)| vec![rat(c), rat(b), rat(1)]),
    ];
    (prop::collection::vec(factor, 1..=4), -3i64..=3).prop_map(|(fs, shift)| {
        let mut acc = Polynomial::one(1);
        for f in fs {
            acc = &acc * &Polynomial::from_univariate(1, 0, &f);
        }
        // an occasional constant shift breaks the factored structure
        if shift != 0 && acc.degree(0) > 1 {
            acc = &acc + &Polynomial::from_int(1, shift);
        }
        acc
    })
}

/// A real algebraic number: a rational or a root of a random univariate polynomial.
pub fn arb_real() -> impl Strategy<Value = RealAlgebraic> {
    prop_oneof![
        (-20i64..=20, 1i64..=4).prop_map(|(n, d)| RealAlgebraic::Rational(Rational::new(n.into(), d.into()))),
        (arb_univariate(), any::<prop::sample::Index>()).prop_filter_map("has real roots", |(q, i)| {
            let roots = isolate_roots(&q).ok()?;
            (!roots.is_empty()).then(|| roots[i.index(roots.len())].clone())
        }),
    ]
}

// ---- properties ----

/// res_y(a, b) vanishes exactly when a and b share a factor involving y.
pub fn prop_resultant_gcd((a, b): (Polynomial, Polynomial)) -> Result<(), TestCaseError> {
    let r = resultant(&a, &b, 1).unwrap();
    prop_assert_eq!(r.is_zero(), gcd(&a, &b).involves(1));
    Ok(())
}

/// Pairs with positive degree in y, half of them given a random common factor.
pub fn resultant_gcd_strategy() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (arb_poly(2, 2, 4), arb_poly(2, 2, 4), arb_poly(2, 1, 3), any::<bool>())
        .prop_map(|(a, b, c, shared)| if shared && !c.is_zero() { (&a * &c, &b * &c) } else { (a, b) })
        .prop_filter("positive degree in y", |(a, b)| a.degree(1) > 0 && b.degree(1) > 0)
}

/// The Sturm count equals the number of isolated roots; intervals are
/// ordered, disjoint and each brackets one root.
pub fn prop_sturm_vs_isolation(q: Polynomial) -> Result<(), TestCaseError> {
    let n = sturm_root_count(&q).unwrap();
    let roots = isolate_roots(&q).unwrap();
    prop_assert_eq!(n, roots.len());
    for r in &roots {
        prop_assert_eq!(sign_at(&q, r), 0);
        let (lo, hi) = r.interval();
        if lo == hi {
            prop_assert!(q.eval(&[lo]).numer() == &BigInt::from(0));
        } else {
            let s = cadkit::polyarith::squarefree_part(&q);
            let (a, b) = (s.eval(&[lo]), s.eval(&[hi]));
            prop_assert!(&a * &b < rat(0), "no sign change on an isolating interval");
        }
    }
    for w in roots.windows(2) {
        prop_assert!(w[0].interval().1 <= w[1].interval().0, "intervals overlap");
    }
    Ok(())
}

/// compare is reflexive, antisymmetric and transitive.
pub fn prop_total_order((a, b, c): (RealAlgebraic, RealAlgebraic, RealAlgebraic)) -> Result<(), TestCaseError> {
    prop_assert_eq!(compare(&a, &a), Ordering::Equal);
    let ab = compare(&a, &b);
    prop_assert_eq!(ab, compare(&b, &a).reverse());
    let bc = compare(&b, &c);
    let ac = compare(&a, &c);
    if ab != Ordering::Greater && bc != Ordering::Greater {
        prop_assert!(ac != Ordering::Greater);
    }
    if ab == Ordering::Less && bc == Ordering::Less {
        prop_assert_eq!(ac, Ordering::Less);
    }
    if ab == Ordering::Equal {
        prop_assert_eq!(ac, bc);
    }
    // agrees with disjoint isolating intervals
    let ((alo, ahi), (blo, bhi)) = (a.interval(), b.interval());
    if ahi < blo {
        prop_assert_eq!(ab, Ordering::Less);
    }
    if bhi < alo {
        prop_assert_eq!(ab, Ordering::Greater);
    }
    Ok(())
}

pub fn total_order_strategy() -> impl Strategy<Value = (RealAlgebraic, RealAlgebraic, RealAlgebraic)> {
    (arb_real(), arb_real(), arb_real())
}

/// sotd adds over concatenation, is renaming invariant and bounds the
/// number of non-constant polynomials.
pub fn prop_sotd((a, b): (Vec<Polynomial>, Vec<Polynomial>)) -> Result<(), TestCaseError> {
    let both: Vec<Polynomial> = a.iter().chain(&b).cloned().collect();
    prop_assert_eq!(sotd(&both), sotd(&a) + sotd(&b));
    let renamed: Vec<Polynomial> = both.iter().map(|q| q.permute_vars(&[2, 0, 1], 3)).collect();
    prop_assert_eq!(sotd(&renamed), sotd(&both));
    prop_assert!(sotd(&both) >= both.iter().filter(|q| !q.is_constant()).count() as u64);
    Ok(())
}

pub fn sotd_strategy() -> impl Strategy<Value = (Vec<Polynomial>, Vec<Polynomial>)> {
    (prop::collection::vec(arb_poly(3, 3, 5), 0..4), prop::collection::vec(arb_poly(3, 3, 5), 0..4))
}

/// ndrr is bounded by the degree sum, unchanged by scaling an element and by
/// passing to the finest squarefree basis.
pub fn prop_ndrr((s, k, num, den): (Vec<Polynomial>, prop::sample::Index, i64, i64)) -> Result<(), TestCaseError> {
    let base = ndrr(&s);
    let degrees: u32 = s.iter().map(|q| q.degree(0)).sum();
    prop_assert!(base as u32 <= degrees);
    let mut scaled = s.clone();
    let i = k.index(s.len());
    scaled[i] = scaled[i].scale(&Rational::new(num.into(), den.into()));
    prop_assert_eq!(ndrr(&scaled), base);
    let basis = squarefree_finest_basis(s.iter());
    prop_assert_eq!(ndrr(&basis.polys), base);
    Ok(())
}

pub fn ndrr_strategy() -> impl Strategy<Value = (Vec<Polynomial>, prop::sample::Index, i64, i64)> {
    (prop::collection::vec(arb_univariate(), 1..4), any::<prop::sample::Index>(), (-5i64..=5).prop_filter("nonzero", |n| *n != 0), 1i64..=5)
}

/// An ordered partition of `0..n` into non-empty blocks.
pub fn arb_blocks(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n.saturating_sub(1)))
        .prop_map(|(perm, cuts)| {
            let mut blocks = vec![vec![perm[0]]];
            for (v, cut) in perm[1..].iter().zip(cuts) {
                if cut {
                    blocks.push(vec![*v]);
                } else {
                    blocks.last_mut().unwrap().push(*v);
                }
            }
            blocks
        })
}

/// greedy_order keeps every block contiguous and the blocks in order.
pub fn prop_greedy_blocks((polys, blocks): (Vec<Polynomial>, Vec<Vec<usize>>)) -> Result<(), TestCaseError> {
    let o = VarOrder::new(["x", "y", "z"]).unwrap();
    let chosen = greedy_order(&polys, &o, Some(&blocks));
    prop_assert!(respects_blocks(&chosen, &o, &blocks), "{} vs {:?}", chosen, blocks);
    Ok(())
}

pub fn greedy_strategy() -> impl Strategy<Value = (Vec<Polynomial>, Vec<Vec<usize>>)> {
    (prop::collection::vec(arb_poly(3, 1, 3), 1..3), arb_blocks(3))
}
