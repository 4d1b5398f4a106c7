use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CadResult, Obligation};
use crate::lifting::{locate_sample_in, random_point_in, Cell};
use crate::realalg::SamplePoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub cell_index: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub cells_checked: usize,
    pub points_checked: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Signs that an obligation requires to be constant on the cell, evaluated at `s`.
fn guarded_signs(obs: &[Obligation], s: &mut SamplePoint, at_sample: Option<&[Vec<i8>]>) -> Vec<Vec<i8>> {
    obs.iter()
        .enumerate()
        .map(|(k, ob)| {
            let mut out: Vec<i8> = ob.always.iter().map(|p| s.sign_of(p)).collect();
            let active = match (&ob.when_zero, at_sample) {
                (None, _) => false,
                // whether the conditional polys are guarded is decided at the stored sample
                (Some(_), Some(stored)) => stored[k].len() > ob.always.len(),
                (Some(f), None) => s.sign_of(f) == 0,
            };
            if active {
                out.extend(ob.conditional.iter().map(|p| s.sign_of(p)));
            }
            out
        })
        .collect()
}

fn check_cell(r: &CadResult, i: usize, c: &Cell, samples: usize, seed: u64) -> (usize, Vec<Violation>) {
    let mut out = Vec::new();
    let mut bad = |m: String| out.push(Violation { cell_index: c.index.clone(), message: m });
    if let Err(e) = locate_sample_in(&r.cad, c, &c.sample) {
        bad(format!("stored sample misplaced: {}", e));
    }
    let mut s = c.sample.clone();
    let stored = guarded_signs(&r.obligations, &mut s, None);
    let truth = &r.truth[i];
    if c.dimension() == 0 {
        return (0, out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut points = 0;
    for _ in 0..samples {
        let mut pt = match random_point_in(&r.cad, c, &mut rng) {
            Ok(pt) => pt,
            Err(e) => {
                bad(format!("cannot re-lift: {}", e));
                break;
            }
        };
        points += 1;
        if guarded_signs(&r.obligations, &mut pt, Some(&stored)) != stored {
            bad("sign changes inside the cell".into());
        }
        let t: Vec<bool> = r
            .formula
            .clauses()
            .iter()
            .map(|cl| cl.constraints().iter().all(|k| k.relop.holds(pt.sign_of(&k.poly))))
            .collect();
        if &t != truth {
            bad("truth value changes inside the cell".into());
        }
    }
    (points, out)
}

/// Re-samples every positive-dimensional cell at `samples` random points and
/// checks guaranteed signs and clause truth against the stored sample. Also
/// checks that every stored sample lies in its own cell.
pub fn verify_invariance(r: &CadResult, samples: usize, seed: u64) -> VerifyReport {
    let parts: Vec<(usize, Vec<Violation>)> =
        r.cad.cells().par_iter().enumerate().map(|(i, c)| check_cell(r, i, c, samples, seed)).collect();
    let mut rep = VerifyReport { cells_checked: parts.len(), ..Default::default() };
    for (n, v) in parts {
        rep.points_checked += n;
        rep.violations.extend(v);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::polyarith::{Polynomial, VarOrder};

    fn example_one(o: &VarOrder) -> FormulaSequence {
        let f = Polynomial::parse("x^2+y^2-4", o).unwrap();
        let g = Polynomial::parse("x*y-1", o).unwrap();
        let c = Clause::new(vec![Constraint::new(f, Relop::Eq).unwrap(), Constraint::new(g, Relop::Lt).unwrap()], Some(0))
            .unwrap();
        FormulaSequence::new(vec![c]).unwrap()
    }

    #[test]
    fn example_one_passes() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let r = solve(&example_one(&o), Algorithm::Ec, false).unwrap();
        let rep = verify_invariance(&r, 5, 1);
        assert!(rep.ok(), "{:?}", rep.violations);
        assert!(rep.points_checked > 0);
    }

    #[test]
    fn moved_sample_is_caught() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let mut r = solve(&example_one(&o), Algorithm::Ec, false).unwrap();
        // move a sector sample onto the neighbouring section
        let cells = r.cad.cells_mut();
        let i = cells.iter().position(|c| c.index[1] == 1 && c.stack_info(1).sections > 0).unwrap();
        let moved = cells[i + 1].sample.clone();
        cells[i].sample = moved;
        assert!(!verify_invariance(&r, 5, 1).ok());
    }

    #[test]
    fn univariate_checks_sectors() {
        let o = VarOrder::new(["x"]).unwrap();
        let c = Clause::new(vec![Constraint::new(Polynomial::parse("x^2-2", &o).unwrap(), Relop::Lt).unwrap()], None).unwrap();
        let phi = FormulaSequence::new(vec![c]).unwrap();
        let r = solve(&phi, Algorithm::Full, false).unwrap();
        let rep = verify_invariance(&r, 5, 3);
        assert!(rep.ok());
        assert_eq!(rep.points_checked, 3 * 5);
    }
}
