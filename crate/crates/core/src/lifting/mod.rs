//! Cells, stacks and the lifting phase: the base decomposition of the line,
//! stack generation over a cell, and the full sign-invariant CAD.

mod delineate;
mod sampling;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::polyarith::{Polynomial, VarOrder};
use crate::projection::{full_projection, ProjectionSet};
use crate::realalg::{
    compare_at, is_nullified_at, sample_above, sample_below, sample_between, RealAlgebraic, SamplePoint,
};
use delineate::{delineating_set, stack_roots};

pub use sampling::{locate_sample, locate_sample_in, random_point, random_point_in, StructureViolation};

/// Lifting polynomials used for one stack and the number of sections it got.
/// Each group contributes only the roots common to all its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackInfo {
    pub polys: Vec<Polynomial>,
    pub groups: Vec<Vec<Polynomial>>,
    pub sections: usize,
}

/// A cell with its Collins index and sample point.
///
/// Index entries are 1-based; even entries are sections, odd ones sectors.
#[derive(Clone, Debug)]
pub struct Cell {
    pub index: Vec<usize>,
    pub sample: SamplePoint,
    /// Coordinates constant over the whole cell.
    fixed: Vec<bool>,
    /// Stack data for each level of the cell's tower.
    stacks: Vec<Arc<StackInfo>>,
}

impl Cell {
    /// The single cell of `R^0`.
    pub fn root() -> Self {
        Cell { index: Vec::new(), sample: SamplePoint::default(), fixed: Vec::new(), stacks: Vec::new() }
    }

    pub fn level(&self) -> usize {
        self.index.len()
    }

    pub fn dimension(&self) -> usize {
        self.index.iter().filter(|&&j| j % 2 == 1).count()
    }

    pub fn is_section_at(&self, k: usize) -> bool {
        self.index[k] % 2 == 0
    }

    /// True when coordinate `k` takes a single value over the cell.
    pub fn is_fixed(&self, k: usize) -> bool {
        self.fixed[k]
    }

    pub fn stack_info(&self, k: usize) -> &StackInfo {
        &self.stacks[k]
    }

    pub fn index_string(&self) -> String {
        let parts: Vec<String> = self.index.iter().map(|j| j.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Whether `q` (in the cell's variables) is a nonzero constant over the
    /// cell: it is a nonzero constant, or it involves only fixed coordinates
    /// and does not vanish at the sample.
    pub fn is_nonzero_constant_on(&self, q: &Polynomial) -> bool {
        if let Some(c) = q.constant_value() {
            return !num_traits::Zero::is_zero(&c);
        }
        let involved_fixed = (0..q.nvars()).all(|i| !q.involves(i) || (i < self.level() && self.fixed[i]));
        involved_fixed && self.sample.clone().sign_of(q) != 0
    }
}

/// Nullification observed while lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nullification {
    pub poly: Polynomial,
    pub cell_index: Vec<usize>,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    /// A polynomial vanishes identically over a positive-dimensional cell.
    Nullified,
    /// The excluded projection polynomials are not constant on the cell.
    ExclNotConstant,
}

/// Evidence that the input is not well oriented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub poly: Polynomial,
    pub cell_index: Vec<usize>,
    pub reason: FailReason,
}

impl Failure {
    pub fn describe(&self, order: &VarOrder) -> String {
        let idx: Vec<String> = self.cell_index.iter().map(|j| j.to_string()).collect();
        let what = match self.reason {
            FailReason::Nullified => "nullified on positive-dimensional cell",
            FailReason::ExclNotConstant => "excluded projection polynomial not constant on cell",
        };
        format!("{} ({}): {}", what, idx.join(","), self.poly.to_string_with(order))
    }
}

/// One or more failures; the first is the lexicographically least cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CadFailure {
    pub failures: Vec<Failure>,
}

impl fmt::Display for CadFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not well oriented ({} failure(s))", self.failures.len())
    }
}

/// How to treat nullification on positive-dimensional cells in the top level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NullPolicy {
    /// Always FAIL.
    Strict,
    /// Omit nullified top-level polynomials (they are identically zero on the
    /// cylinder, so sign invariance is unaffected); FAIL below the top.
    OmitTopLevel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftOptions {
    pub policy: NullPolicy,
    pub all_failures: bool,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { policy: NullPolicy::Strict, all_failures: false }
    }
}

/// A CAD of `R^k` kept level by level (`levels[i]` is the CAD of `R^(i+1)`).
#[derive(Clone, Debug)]
pub struct Cad {
    levels: Vec<Vec<Cell>>,
    pub projection: ProjectionSet,
    pub nullifications: Vec<Nullification>,
}

impl Cad {
    pub(crate) fn from_levels(levels: Vec<Vec<Cell>>, projection: ProjectionSet, nullifications: Vec<Nullification>) -> Self {
        Cad { levels, projection, nullifications }
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Cells of the top level, sorted by index.
    pub fn cells(&self) -> &[Cell] {
        self.levels.last().map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn cell_count(&self) -> usize {
        self.cells().len()
    }

    /// Cells of `R^k`, `1 <= k <= dim`.
    pub fn level_cells(&self, k: usize) -> &[Cell] {
        &self.levels[k - 1]
    }

    pub(crate) fn push_level(&mut self, cells: Vec<Cell>) {
        self.levels.push(cells);
    }

    pub fn cells_mut(&mut self) -> &mut Vec<Cell> {
        self.levels.last_mut().expect("non-empty CAD")
    }

    /// Human-readable summary of the recorded nullifications, one line per polynomial.
    pub fn warnings(&self, order: &VarOrder) -> Vec<String> {
        let mut out: Vec<(Polynomial, usize, usize)> = Vec::new();
        for n in &self.nullifications {
            match out.iter_mut().find(|(p, _, _)| *p == n.poly) {
                Some(e) => {
                    if n.dimension == 0 {
                        e.1 += 1
                    } else {
                        e.2 += 1
                    }
                }
                None => out.push((n.poly.clone(), usize::from(n.dimension == 0), usize::from(n.dimension > 0))),
            }
        }
        out.iter()
            .map(|(p, zero, pos)| {
                format!(
                    "{} nullified over {} zero-dimensional and {} positive-dimensional cell(s)",
                    p.to_string_with(order),
                    zero,
                    pos
                )
            })
            .collect()
    }
}

/// Error from [`generate_stack`] when a polynomial vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullifiedInStack(pub Polynomial);

/// Stack over `base` for polynomials whose main variable is `x_(k+1)`,
/// `k = base.level()`.
pub fn generate_stack(base: &Cell, polys: &[Polynomial]) -> Result<Vec<Cell>, NullifiedInStack> {
    generate_stack_with(base, polys, &[])
}

/// Like [`generate_stack`], with extra sections at the common roots of each group.
pub(crate) fn generate_stack_with(
    base: &Cell,
    polys: &[Polynomial],
    groups: &[Vec<Polynomial>],
) -> Result<Vec<Cell>, NullifiedInStack> {
    let v = base.level();
    let mut pt = base.sample.coords.clone();
    let all: Vec<Polynomial> = polys.iter().chain(groups.iter().flatten()).cloned().collect();
    let mut roots = stack_roots(polys, groups, &mut pt).map_err(|i| NullifiedInStack(all[i].clone()))?;
    let info = Arc::new(StackInfo { polys: polys.to_vec(), groups: groups.to_vec(), sections: roots.len() });
    let mut stacks = base.stacks.clone();
    stacks.push(info);
    let m = roots.len();
    let mut coords: Vec<(RealAlgebraic, bool, Vec<usize>)> = Vec::with_capacity(2 * m + 1);
    if m == 0 {
        coords.push((RealAlgebraic::from_int(0), false, Vec::new()));
    } else {
        coords.push((RealAlgebraic::Rational(sample_below(&roots[0].0)), false, Vec::new()));
        for i in 0..m {
            if i > 0 {
                let (left, right) = roots.split_at_mut(i);
                let s = sample_between(&mut pt, &mut left[i - 1].0, &mut right[0].0);
                coords.push((RealAlgebraic::Rational(s), false, Vec::new()));
            }
            coords.push((roots[i].0.clone(), true, roots[i].1.clone()));
        }
        coords.push((RealAlgebraic::Rational(sample_above(&roots[m - 1].0)), false, Vec::new()));
    }
    let cells = coords
        .into_iter()
        .enumerate()
        .map(|(j, (c, section, vanishing))| {
            let mut index = base.index.clone();
            index.push(j + 1);
            let mut fixed = base.fixed.clone();
            fixed.push(section && vanishing.iter().any(|&pi| (0..v).all(|i| !all[pi].involves(i) || base.fixed[i])));
            let mut coords = pt.clone();
            coords.push(c);
            Cell { index, sample: SamplePoint::new(coords), fixed, stacks: stacks.clone() }
        })
        .collect();
    Ok(cells)
}

/// Decomposition of the line by the real roots of univariate polynomials.
pub fn base_cad(univ: &[Polynomial]) -> Vec<Cell> {
    let polys: Vec<Polynomial> = univ.iter().filter(|p| !p.is_constant()).cloned().collect();
    generate_stack(&Cell::root(), &polys).expect("non-constant univariate polynomials are never nullified")
}

/// True iff every coefficient of `p` in the next variable vanishes at the cell's sample.
pub fn nullified_on_cell(p: &Polynomial, c: &Cell) -> bool {
    let mut pt = c.sample.coords.clone();
    is_nullified_at(p, &mut pt)
}

/// What to lift with over one cell.
#[derive(Clone, Debug, Default)]
pub(crate) struct Lifting {
    pub polys: Vec<Polynomial>,
    pub groups: Vec<Vec<Polynomial>>,
    pub nulls: Vec<Nullification>,
}

/// Lifts over every base cell with a per-cell lifting set. Failures are
/// reported for the least cell (or all cells when requested).
pub(crate) fn lift_level<F>(
    bases: &[Cell],
    all_failures: bool,
    lifting: F,
) -> Result<(Vec<Cell>, Vec<Nullification>), CadFailure>
where
    F: Fn(&Cell) -> Result<Lifting, Failure> + Sync,
{
    let results: Vec<Result<(Vec<Cell>, Vec<Nullification>), Failure>> = bases
        .par_iter()
        .map(|c| {
            let Lifting { polys, groups, nulls } = lifting(c)?;
            let stack = generate_stack_with(c, &polys, &groups).map_err(|NullifiedInStack(p)| Failure {
                poly: p,
                cell_index: c.index.clone(),
                reason: FailReason::Nullified,
            })?;
            Ok((stack, nulls))
        })
        .collect();
    let mut cells = Vec::new();
    let mut nulls = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok((s, n)) => {
                cells.extend(s);
                nulls.extend(n);
            }
            Err(f) => {
                failures.push(f);
                if !all_failures {
                    break;
                }
            }
        }
    }
    if failures.is_empty() {
        Ok((cells, nulls))
    } else {
        Err(CadFailure { failures })
    }
}

/// Splits `polys` into those usable for lifting over `c` and the nullified
/// ones. Over a point a nullified polynomial is dropped on the final level
/// and replaced by its delineating set below it, which keeps the lower CAD
/// order-invariant. On the final level `may_omit` also drops polynomials
/// nullified over positive-dimensional cells; otherwise those FAIL.
fn filter_nullified(c: &Cell, polys: &[Polynomial], is_final: bool, may_omit: bool) -> Result<Lifting, Failure> {
    let mut pt = c.sample.coords.clone();
    let mut out = Lifting::default();
    for p in polys {
        if !is_nullified_at(p, &mut pt) {
            out.polys.push(p.clone());
            continue;
        }
        let dim = c.dimension();
        if dim > 0 && !may_omit {
            return Err(Failure { poly: p.clone(), cell_index: c.index.clone(), reason: FailReason::Nullified });
        }
        if dim == 0 && !is_final {
            let d = delineating_set(p, &mut pt);
            if !d.is_empty() {
                out.groups.push(d);
            }
        }
        out.nulls.push(Nullification { poly: p.clone(), cell_index: c.index.clone(), dimension: dim });
    }
    Ok(out)
}

/// Builds the CAD of `R^upto` from the first `upto` levels of a projection
/// set. `final_top` says whether level `upto` is the last one lifted (only
/// sign-invariance needed there) or a base for a further lift.
pub(crate) fn lift_projection(proj: ProjectionSet, upto: usize, opts: LiftOptions, final_top: bool) -> Result<Cad, CadFailure> {
    let mut cad = Cad::from_levels(Vec::new(), proj, Vec::new());
    if upto == 0 {
        return Ok(cad);
    }
    let base = base_cad(&cad.projection.level_polys(0));
    cad.push_level(base);
    for k in 1..upto {
        let polys = cad.projection.level_polys(k);
        let is_final = final_top && k + 1 == upto;
        let may_omit = is_final && opts.policy == NullPolicy::OmitTopLevel;
        let (cells, nulls) =
            lift_level(cad.level_cells(k), opts.all_failures, |c| filter_nullified(c, &polys, is_final, may_omit))?;
        cad.nullifications.extend(nulls);
        cad.push_level(cells);
    }
    Ok(cad)
}

/// Sign-invariant CAD of `R^n` by McCallum projection.
pub fn cad_full(polys: &[Polynomial], nvars: usize, opts: LiftOptions) -> Result<Cad, CadFailure> {
    lift_projection(full_projection(polys, nvars), nvars, opts, true)
}

/// Structural checks: stack parity, consecutive indices, equal base samples
/// within a stack and strictly increasing coordinates. Returns violations.
pub fn check_structure(cad: &Cad) -> Vec<String> {
    let mut out = Vec::new();
    for k in 1..=cad.dim() {
        let cells = cad.level_cells(k);
        let mut start = 0;
        while start < cells.len() {
            let prefix = &cells[start].index[..k - 1];
            let mut end = start;
            while end < cells.len() && &cells[end].index[..k - 1] == prefix {
                end += 1;
            }
            let stack = &cells[start..end];
            if stack.len() % 2 == 0 {
                out.push(format!("stack over {:?} has even size {}", prefix, stack.len()));
            }
            for (j, c) in stack.iter().enumerate() {
                if c.index[k - 1] != j + 1 {
                    out.push(format!("cell {} out of sequence", c.index_string()));
                }
                if c.stack_info(k - 1).sections * 2 + 1 != stack.len() {
                    out.push(format!("cell {} records a different stack size", c.index_string()));
                }
            }
            if k > 1 {
                let parents = cad.level_cells(k - 1);
                match parents.binary_search_by(|p| p.index.as_slice().cmp(prefix)) {
                    Ok(pi) => {
                        for c in stack {
                            if !same_prefix(&parents[pi].sample, &c.sample) {
                                out.push(format!("cell {} does not lie over its base sample", c.index_string()));
                            }
                        }
                    }
                    Err(_) => out.push(format!("stack over {:?} has no base cell", prefix)),
                }
            }
            for w in stack.windows(2) {
                let mut pt = w[0].sample.coords[..k - 1].to_vec();
                let mut a = w[0].sample.coords[k - 1].clone();
                let mut b = w[1].sample.coords[k - 1].clone();
                if compare_at(&mut pt, &mut a, &mut b) != Ordering::Less {
                    out.push(format!("samples of {} and {} not increasing", w[0].index_string(), w[1].index_string()));
                }
            }
            start = end;
        }
    }
    out
}

/// Whether the coordinates of `base` equal the leading coordinates of `s`.
fn same_prefix(base: &SamplePoint, s: &SamplePoint) -> bool {
    let k = base.level();
    let mut pt: Vec<RealAlgebraic> = Vec::new();
    for i in 0..k {
        let mut a = base.coords[i].clone();
        let mut b = s.coords[i].clone();
        if compare_at(&mut pt, &mut a, &mut b) != Ordering::Equal {
            return false;
        }
        pt.push(b);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::Rational;

    fn p(s: &str, o: &VarOrder) -> Polynomial {
        Polynomial::parse(s, o).unwrap()
    }

    fn q(s: &str) -> Rational {
        crate::polyarith::parse_rational(s).unwrap()
    }

    #[test]
    fn base_examples() {
        let o = VarOrder::new(["x"]).unwrap();
        let cells = base_cad(&[p("x^2-4", &o)]);
        let samples: Vec<RealAlgebraic> = cells.iter().map(|c| c.sample.coords[0].clone()).collect();
        let want: Vec<RealAlgebraic> = [-3, -2, 0, 2, 3].iter().map(|&v| RealAlgebraic::from_int(v)).collect();
        assert_eq!(samples, want);
        assert_eq!(base_cad(&[p("x^2-4", &o), p("x", &o), p("x^4-4*x^2+1", &o)]).len(), 15);
        assert_eq!(base_cad(&[]).len(), 1);
    }

    #[test]
    fn stacks_over_points() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let circle = p("x^2+y^2-4", &o);
        let base = base_cad(&[p("x^2-9", &o), p("x^2-4", &o), p("x", &o)]);
        let over = |x: &str| {
            let c = base.iter().find(|c| c.sample.coords[0] == RealAlgebraic::Rational(q(x))).unwrap();
            generate_stack(c, &[circle.clone()]).unwrap().len()
        };
        assert_eq!(over("-3"), 1);
        assert_eq!(over("0"), 5);
        assert_eq!(over("-2"), 3);
    }

    #[test]
    fn nullification_examples() {
        let o = VarOrder::new(["x", "y", "z", "w"]).unwrap();
        let zero = Cell {
            index: vec![2, 2, 2],
            sample: SamplePoint::rational(&[q("0"), q("0"), q("0")]),
            fixed: vec![true; 3],
            stacks: Vec::new(),
        };
        assert!(nullified_on_cell(&p("z*y - x^2*w", &o), &zero));
        assert!(nullified_on_cell(&p("z + y*w", &o), &zero));
        let o2 = VarOrder::new(["x", "y"]).unwrap();
        for c in base_cad(&[p("x", &o2)]) {
            assert!(!nullified_on_cell(&p("x^2+y^2-4", &o2), &c));
        }
    }

    #[test]
    fn example_one_full_cad() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let cad = cad_full(&[p("x^2+y^2-4", &o), p("x*y-1", &o)], 2, LiftOptions::default()).unwrap();
        assert_eq!(cad.level_cells(1).len(), 15);
        assert_eq!(cad.cell_count(), 83);
        assert!(check_structure(&cad).is_empty());
    }
}
