//! Re-lifting through stored stacks: random points of a cell and checks that a
//! point sits where its cell index says.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use super::delineate::stack_roots;
use super::{Cad, Cell};
use crate::polyarith::Rational;
use crate::realalg::{compare_at, gap_between, lower_end, upper_end, RealAlgebraic, SamplePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureViolation {
    /// A stack polynomial vanishes identically over the point's base.
    Nullified { level: usize },
    /// The stack over the point has a different number of sections.
    SectionCount { level: usize, expected: usize, found: usize },
    /// The coordinate lies in a different stack position.
    Position { level: usize, expected: usize, found: usize },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::Nullified { level } => write!(f, "stack polynomial nullified at level {}", level + 1),
            StructureViolation::SectionCount { level, expected, found } => {
                write!(f, "level {}: expected {} sections, found {}", level + 1, expected, found)
            }
            StructureViolation::Position { level, expected, found } => {
                write!(f, "level {}: expected stack position {}, found {}", level + 1, expected, found)
            }
        }
    }
}

fn roots_over(cell: &Cell, k: usize, pt: &mut [RealAlgebraic]) -> Result<Vec<RealAlgebraic>, StructureViolation> {
    let info = cell.stack_info(k);
    let roots = stack_roots(&info.polys, &info.groups, pt).map_err(|_| StructureViolation::Nullified { level: k })?;
    if roots.len() != info.sections {
        return Err(StructureViolation::SectionCount { level: k, expected: info.sections, found: roots.len() });
    }
    Ok(roots.into_iter().map(|(r, _)| r).collect())
}

fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn random_in_sector<R: Rng>(pt: &mut [RealAlgebraic], roots: &mut [RealAlgebraic], s: usize, rng: &mut R) -> Rational {
    let m = roots.len();
    if m == 0 {
        return frac(rng.gen_range(-40..=40), 4);
    }
    if s == 0 {
        let (b, _) = lower_end(&roots[0]);
        return b - frac(rng.gen_range(1..=16), 4);
    }
    if s == m {
        let (b, _) = upper_end(&roots[m - 1]);
        return b + frac(rng.gen_range(1..=16), 4);
    }
    let (left, right) = roots.split_at_mut(s);
    let (lo, _, hi, _) = gap_between(pt, &mut left[s - 1], &mut right[0]);
    if lo == hi {
        return lo;
    }
    let u = frac(rng.gen_range(1..1024), 1024);
    &lo + (&hi - &lo) * u
}

/// A random point of `cell`, built by re-isolating each stored stack over the
/// partial point. Fails if the stacks do not line up with the cell index.
pub fn random_point<R: Rng>(cell: &Cell, rng: &mut R) -> Result<SamplePoint, StructureViolation> {
    random_point_with(cell, rng, |_| None)
}

/// Like [`random_point`], but stacks over prefixes made of sections only are
/// read from the CAD (the section samples of the cell's siblings) instead of
/// being isolated again.
pub fn random_point_in<R: Rng>(cad: &Cad, cell: &Cell, rng: &mut R) -> Result<SamplePoint, StructureViolation> {
    random_point_with(cell, rng, |k| sibling_sections(cad, cell, k))
}

/// Section coordinates of the stack at level `k` over the cell's base, when
/// the base prefix consists of sections only (so it is the stored sample's).
fn sibling_sections(cad: &Cad, cell: &Cell, k: usize) -> Option<Vec<RealAlgebraic>> {
    if !cell.index[..k].iter().all(|j| j % 2 == 0) {
        return None;
    }
    let cells = cad.level_cells(k + 1);
    let prefix = &cell.index[..k];
    let start = cells.partition_point(|c| &c.index[..k] < prefix);
    let end = cells.partition_point(|c| &c.index[..k] <= prefix);
    let roots: Vec<RealAlgebraic> =
        cells[start..end].iter().filter(|c| c.index[k] % 2 == 0).map(|c| c.sample.coords[k].clone()).collect();
    (roots.len() == cell.stack_info(k).sections).then_some(roots)
}

fn random_point_with<R: Rng>(
    cell: &Cell,
    rng: &mut R,
    known: impl Fn(usize) -> Option<Vec<RealAlgebraic>>,
) -> Result<SamplePoint, StructureViolation> {
    let mut pt: Vec<RealAlgebraic> = Vec::with_capacity(cell.level());
    for k in 0..cell.level() {
        let mut roots = match known(k) {
            Some(r) => r,
            None => roots_over(cell, k, &mut pt)?,
        };
        let j = cell.index[k];
        let c = if j % 2 == 0 {
            roots.swap_remove(j / 2 - 1)
        } else {
            RealAlgebraic::Rational(random_in_sector(&mut pt, &mut roots, (j - 1) / 2, rng))
        };
        pt.push(c);
    }
    Ok(SamplePoint::new(pt))
}

/// Checks that every coordinate of `point` occupies the stack position given
/// by `cell`'s index.
pub fn locate_sample(cell: &Cell, point: &SamplePoint) -> Result<(), StructureViolation> {
    locate_with(cell, point, |_| None)
}

/// Like [`locate_sample`], reading stacks over section-only prefixes from the CAD.
pub fn locate_sample_in(cad: &Cad, cell: &Cell, point: &SamplePoint) -> Result<(), StructureViolation> {
    locate_with(cell, point, |k| sibling_sections(cad, cell, k))
}

fn locate_with(
    cell: &Cell,
    point: &SamplePoint,
    known: impl Fn(usize) -> Option<Vec<RealAlgebraic>>,
) -> Result<(), StructureViolation> {
    let mut pt: Vec<RealAlgebraic> = Vec::with_capacity(cell.level());
    for k in 0..cell.level() {
        let mut roots = match known(k) {
            Some(r) => r,
            None => roots_over(cell, k, &mut pt)?,
        };
        let mut c = point.coords[k].clone();
        let mut pos = 2 * roots.len() + 1;
        for (i, r) in roots.iter_mut().enumerate() {
            match compare_at(&mut pt, &mut c, r) {
                Ordering::Less => {
                    pos = 2 * i + 1;
                    break;
                }
                Ordering::Equal => {
                    pos = 2 * i + 2;
                    break;
                }
                Ordering::Greater => {}
            }
        }
        if pos != cell.index[k] {
            return Err(StructureViolation::Position { level: k, expected: cell.index[k], found: pos });
        }
        pt.push(c);
    }
    Ok(())
}
