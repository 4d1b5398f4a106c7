//! Problem formulation measures (sotd, ndrr), greedy variable ordering and
//! ranking of candidate formulations.

mod enumerate;

use std::fmt;

use rayon::prelude::*;

use crate::engine::{eccad_projection, implicit_ec, tticad_projection, Algorithm, Clause, EngineError, FormulaSequence};
use crate::polyarith::{squarefree_finest_basis, Polynomial, VarOrder};
use crate::projection::{full_projection, mccallum_p, ProjectionSet};
use crate::realalg;

pub use enumerate::{enumerate_formulations, parse_blocks, Dimensions, Enumeration};

/// Sum over all polynomials and monomials of the monomial's total degree.
pub fn sotd<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> u64 {
    polys.into_iter().map(|p| p.sum_of_total_degrees()).sum()
}

/// Number of distinct real roots of univariate polynomials.
pub fn ndrr<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> usize {
    realalg::ndrr(polys)
}

/// sotd summed over every level of a projection set.
pub fn projection_sotd(p: &ProjectionSet) -> u64 {
    sotd(&p.all_polys())
}

/// ndrr of the level-1 polynomials of a projection set.
pub fn projection_ndrr(p: &ProjectionSet) -> usize {
    ndrr(&p.level_polys(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Sotd,
    Ndrr,
}

impl Measure {
    fn value(self, m: &Measures) -> f64 {
        match self {
            Measure::Sotd => m.sotd as f64,
            Measure::Ndrr => m.ndrr as f64,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Sotd => "sotd",
            Measure::Ndrr => "ndrr",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureSpec {
    Single(Measure),
    /// Later measures break ties of earlier ones.
    Lexicographic(Vec<Measure>),
    /// Each measure is divided by its maximum over the candidates, then weighted.
    Weighted(Vec<(Measure, f64)>),
}

impl MeasureSpec {
    pub fn weighted(weights: Vec<(Measure, f64)>) -> Result<Self, String> {
        if weights.is_empty() || weights.iter().any(|(_, w)| !w.is_finite() || *w < 0.0) {
            return Err("weights must be finite and non-negative".into());
        }
        if weights.iter().all(|(_, w)| *w == 0.0) {
            return Err("weights must not all be zero".into());
        }
        Ok(MeasureSpec::Weighted(weights))
    }

    /// Parses `sotd`, `ndrr`, `sotd,ndrr` (lexicographic) or `weighted:w1,w2`
    /// (weights for sotd and ndrr).
    pub fn parse(s: &str) -> Result<Self, String> {
        let one = |t: &str| match t.trim() {
            "sotd" => Ok(Measure::Sotd),
            "ndrr" => Ok(Measure::Ndrr),
            other => Err(format!("unknown measure '{}'", other)),
        };
        if let Some(w) = s.strip_prefix("weighted:") {
            let ws: Vec<f64> = w
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad weight '{}'", t)))
                .collect::<Result<_, _>>()?;
            if ws.len() != 2 {
                return Err("weighted needs two weights (sotd, ndrr)".into());
            }
            return MeasureSpec::weighted(vec![(Measure::Sotd, ws[0]), (Measure::Ndrr, ws[1])]);
        }
        let ms: Vec<Measure> = s.split(',').map(one).collect::<Result<_, _>>()?;
        Ok(if ms.len() == 1 { MeasureSpec::Single(ms[0]) } else { MeasureSpec::Lexicographic(ms) })
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Single(m) => write!(f, "{}", m),
            MeasureSpec::Lexicographic(ms) => {
                let v: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                write!(f, "{} (lexicographic)", v.join(","))
            }
            MeasureSpec::Weighted(ws) => {
                let v: Vec<String> = ws.iter().map(|(m, w)| format!("{}*{}/max", w, m)).collect();
                write!(f, "weighted {}", v.join(" + "))
            }
        }
    }
}

/// A formula sequence together with the names of its variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub order: VarOrder,
    pub formula: FormulaSequence,
}

impl Problem {
    /// Constraints of all clauses, numbered consecutively.
    fn flat_constraints(&self) -> Vec<(usize, usize)> {
        self.formula
            .clauses()
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| (0..c.constraints().len()).map(move |k| (ci, k)))
            .collect()
    }

    /// The problem as given.
    pub fn as_formulation(&self) -> Formulation {
        let mut split = Vec::new();
        let mut ec = Vec::new();
        let mut next = 0;
        for c in self.formula.clauses() {
            let n = c.constraints().len();
            split.push((next..next + n).collect());
            ec.push(c.designated_ec().map(|k| next + k));
            next += n;
        }
        Formulation { order: self.order.clone(), clause_split: split, ec_choice: ec }
    }
}

/// Variable order, clauses as blocks of constraint numbers (counted across
/// the problem's clauses) and the designated equation of each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formulation {
    pub order: VarOrder,
    pub clause_split: Vec<Vec<usize>>,
    pub ec_choice: Vec<Option<usize>>,
}

impl Formulation {
    /// The problem rewritten under this formulation, in its variable order.
    pub fn apply(&self, problem: &Problem) -> Result<FormulaSequence, EngineError> {
        let flat = problem.flat_constraints();
        let (_, map) = problem.order.permuted(self.order.names()).map_err(|e| EngineError::Input(e.to_string()))?;
        let n = problem.order.len();
        if self.clause_split.len() != self.ec_choice.len() {
            return Err(EngineError::Input("one designation per clause required".into()));
        }
        let mut seen = vec![false; flat.len()];
        let mut clauses = Vec::new();
        for (block, ec) in self.clause_split.iter().zip(&self.ec_choice) {
            let mut cons = Vec::new();
            let mut designated = None;
            for (k, &i) in block.iter().enumerate() {
                let &(ci, j) = flat.get(i).ok_or_else(|| EngineError::Input(format!("no constraint {}", i + 1)))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(EngineError::Input(format!("constraint {} used twice", i + 1)));
                }
                let mut c = problem.formula.clauses()[ci].constraints()[j].clone();
                c.poly = c.poly.permute_vars(&map, n);
                cons.push(c);
                if *ec == Some(i) {
                    designated = Some(k);
                }
            }
            if ec.is_some() && designated.is_none() {
                return Err(EngineError::Input("designated equation outside its clause".into()));
            }
            clauses.push(Clause::new(cons, designated)?);
        }
        if seen.iter().any(|s| !s) {
            return Err(EngineError::Input("formulation leaves constraints out".into()));
        }
        FormulaSequence::new(clauses)
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order {}; clauses", self.order.names().join("<"))?;
        for (block, ec) in self.clause_split.iter().zip(&self.ec_choice) {
            let v: Vec<String> =
                block.iter().map(|&i| if *ec == Some(i) { format!("{}*", i + 1) } else { (i + 1).to_string() }).collect();
            write!(f, " ({})", v.join(","))?;
        }
        Ok(())
    }
}

/// Projection set of a formulated problem under the operator of `algorithm`.
pub fn formulation_projection(phi: &FormulaSequence, algorithm: Algorithm) -> Result<ProjectionSet, EngineError> {
    let n = phi.nvars();
    match algorithm {
        Algorithm::Full => Ok(full_projection(&phi.all_polys(), n)),
        Algorithm::Ec => {
            let f = implicit_ec(phi)?;
            let g: Vec<Polynomial> = phi.all_polys().into_iter().filter(|p| !p.same_up_to_constant(&f)).collect();
            Ok(eccad_projection(&f, &g, n)?.projection)
        }
        Algorithm::Tticad => Ok(tticad_projection(phi).projection),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measures {
    pub sotd: u64,
    pub ndrr: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScoreRow {
    pub formulation: Formulation,
    /// Measures of the projection set, or why the formulation is not usable.
    pub measures: Result<Measures, String>,
    pub score: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ranking {
    pub best: usize,
    pub rows: Vec<ScoreRow>,
}

impl Ranking {
    pub fn best(&self) -> &Formulation {
        &self.rows[self.best].formulation
    }
}

fn measure(problem: &Problem, fm: &Formulation, algorithm: Algorithm) -> Result<Measures, String> {
    let phi = fm.apply(problem).map_err(|e| e.to_string())?;
    let proj = formulation_projection(&phi, algorithm).map_err(|e| e.to_string())?;
    Ok(Measures { sotd: projection_sotd(&proj), ndrr: projection_ndrr(&proj) })
}

/// Scores every candidate by the measures of its projection set and returns
/// the minimizer. Ties go to the earlier candidate.
pub fn rank_formulations(
    cands: &[Formulation],
    problem: &Problem,
    algorithm: Algorithm,
    spec: &MeasureSpec,
) -> Result<Ranking, EngineError> {
    if cands.is_empty() {
        return Err(EngineError::Input("no candidate formulations".into()));
    }
    let measures: Vec<Result<Measures, String>> = cands.par_iter().map(|fm| measure(problem, fm, algorithm)).collect();
    let ok: Vec<&Measures> = measures.iter().filter_map(|m| m.as_ref().ok()).collect();
    if ok.is_empty() {
        let why = measures.iter().find_map(|m| m.as_ref().err()).cloned().unwrap_or_default();
        return Err(EngineError::Input(format!("no usable formulation: {}", why)));
    }
    let maxima: Vec<(Measure, f64)> = [Measure::Sotd, Measure::Ndrr]
        .iter()
        .map(|&m| (m, ok.iter().map(|x| m.value(x)).fold(0.0, f64::max)))
        .collect();
    let max_of = |m: Measure| maxima.iter().find(|(k, _)| *k == m).map_or(0.0, |(_, v)| *v);
    let score = |m: &Measures| -> f64 {
        match spec {
            MeasureSpec::Single(k) => k.value(m),
            MeasureSpec::Lexicographic(ks) => ks[0].value(m),
            MeasureSpec::Weighted(ws) => ws
                .iter()
                .map(|(k, w)| {
                    let top = max_of(*k);
                    if top == 0.0 {
                        0.0
                    } else {
                        w * k.value(m) / top
                    }
                })
                .sum(),
        }
    };
    let key = |m: &Measures| -> Vec<f64> {
        match spec {
            MeasureSpec::Lexicographic(ks) => ks.iter().map(|k| k.value(m)).collect(),
            _ => vec![score(m)],
        }
    };
    let mut best: Option<(usize, Vec<f64>)> = None;
    let mut rows = Vec::with_capacity(cands.len());
    for (i, (fm, m)) in cands.iter().zip(measures).enumerate() {
        let s = m.as_ref().ok().map(score);
        if let Ok(mv) = &m {
            let k = key(mv);
            if best.as_ref().map_or(true, |(_, b)| k.partial_cmp(b) == Some(std::cmp::Ordering::Less)) {
                best = Some((i, k));
            }
        }
        rows.push(ScoreRow { formulation: fm.clone(), measures: m, score: s });
    }
    Ok(Ranking { best: best.expect("at least one usable candidate").0, rows })
}

/// One McCallum projection step eliminating `v` from `set`, computed with `v`
/// moved to the top of the remaining variables. `rest` lists the remaining
/// variables other than `v`.
fn project_out(set: &[Polynomial], v: usize, rest: &[usize], n: usize) -> Vec<Polynomial> {
    // new position of each variable: rest in order, then v, then eliminated ones
    let mut perm = vec![usize::MAX; n];
    for (i, &r) in rest.iter().enumerate() {
        perm[r] = i;
    }
    perm[v] = rest.len();
    let mut next = rest.len() + 1;
    for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
        *p = next;
        next += 1;
    }
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let top = rest.len();
    let moved: Vec<Polynomial> = set.iter().map(|p| p.permute_vars(&perm, n)).collect();
    let (inside, outside): (Vec<Polynomial>, Vec<Polynomial>) = moved.into_iter().partition(|p| p.involves(top));
    let basis = squarefree_finest_basis(inside.iter());
    let mut out: Vec<Polynomial> = outside.iter().filter(|p| !p.is_constant()).map(|p| p.normalized()).collect();
    out.extend(basis.contents);
    out.extend(mccallum_p(&basis.polys, top).polys());
    let out = squarefree_finest_basis(out.iter());
    let mut res: Vec<Polynomial> = out.polys.into_iter().chain(out.contents).collect();
    res = res.into_iter().map(|p| p.permute_vars(&inv, n)).collect();
    res.sort();
    res.dedup();
    res
}

/// Greedy variable order: repeatedly eliminates the variable whose one-step
/// McCallum projection has the least sotd. With blocks (an ordered partition,
/// lowest block first) only variables of the highest remaining block compete.
/// Ties keep the given order, so the later variable is eliminated first.
pub fn greedy_order(polys: &[Polynomial], order: &VarOrder, blocks: Option<&[Vec<usize>]>) -> VarOrder {
    let n = order.len();
    let mut blocks: Vec<Vec<usize>> = match blocks {
        Some(b) => b.iter().map(|blk| { let mut s = blk.clone(); s.sort(); s }).collect(),
        None => vec![(0..n).collect()],
    };
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut set: Vec<Polynomial> = polys.iter().filter(|p| !p.is_constant()).cloned().collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    while let Some(block) = blocks.last_mut() {
        if block.is_empty() {
            blocks.pop();
            continue;
        }
        let mut best: Option<(u64, usize, Vec<Polynomial>)> = None;
        for &v in block.iter().rev() {
            let rest: Vec<usize> = remaining.iter().copied().filter(|&r| r != v).collect();
            let proj = project_out(&set, v, &rest, n);
            let s = sotd(&proj);
            if best.as_ref().map_or(true, |(b, _, _)| s < *b) {
                best = Some((s, v, proj));
            }
        }
        let (_, v, proj) = best.expect("non-empty block");
        block.retain(|&x| x != v);
        remaining.retain(|&x| x != v);
        chosen.push(v);
        set = proj;
    }
    chosen.reverse();
    let names: Vec<&str> = chosen.iter().map(|&i| order.name(i)).collect();
    VarOrder::new(names).expect("permutation of a valid order")
}

/// True when `order` lists the variables of each block contiguously and the
/// blocks in their given order.
pub fn respects_blocks(order: &VarOrder, original: &VarOrder, blocks: &[Vec<usize>]) -> bool {
    let mut pos = 0;
    for b in blocks {
        let mut names: Vec<&str> = b.iter().map(|&i| original.name(i)).collect();
        let mut got: Vec<&str> = match order.names().get(pos..pos + b.len()) {
            Some(s) => s.iter().map(|s| s.as_str()).collect(),
            None => return false,
        };
        names.sort();
        got.sort();
        if names != got {
            return false;
        }
        pos += b.len();
    }
    pos == order.len()
}
