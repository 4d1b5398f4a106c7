use super::{dedup, EngineError, FormulaSequence};
use crate::lifting::{
    base_cad, lift_level, lift_projection, nullified_on_cell, Cad, Cell, FailReason, Failure, LiftOptions, Lifting,
    NullPolicy, Nullification,
};
use crate::polyarith::{squarefree_finest_basis, Polynomial};
use crate::projection::{excl_p, project_down, reduced_p_f, tticad_p, EcStructure, Provenance, ProjectionSet, TaggedSet};

/// Top-level inputs split into lower-level polynomials (contents and
/// polynomials free of the main variable) and the basis of the rest.
struct TopSplit {
    contents: Vec<Polynomial>,
    basis: Vec<Polynomial>,
}

fn split_top(polys: &[Polynomial], top: usize) -> TopSplit {
    let mut contents = Vec::new();
    let mut inside = Vec::new();
    for p in polys.iter().filter(|p| !p.is_constant()) {
        if p.involves(top) {
            inside.push(p.clone());
        } else {
            contents.push(p.clone());
        }
    }
    let basis = squarefree_finest_basis(inside.iter());
    contents.extend(basis.contents);
    TopSplit { contents, basis: basis.polys }
}

/// Basis elements dividing some polynomial of `e`. Falls back to the whole
/// basis when no element does (the designated polynomials are then free of
/// the main variable and give no reduction).
fn designated_part(basis: &[Polynomial], e: &[Polynomial]) -> Vec<Polynomial> {
    let f: Vec<Polynomial> =
        basis.iter().filter(|b| e.iter().any(|p| p.div_exact(b).is_some())).cloned().collect();
    if f.is_empty() {
        basis.to_vec()
    } else {
        f
    }
}

/// Projection set whose lower levels come from `lower` (all below the top
/// variable) and whose top level is `top_basis`.
fn assemble(nvars: usize, lower: &TaggedSet, top_basis: &[Polynomial]) -> ProjectionSet {
    let mut raw = vec![TaggedSet::new(); nvars];
    for (q, t) in lower.iter() {
        raw[q.main_var().expect("non-constant")].insert(q, *t);
    }
    let mut proj = project_down(raw, nvars, nvars - 1);
    let mut top = TaggedSet::new();
    for b in top_basis {
        top.insert(b, Provenance::Input);
    }
    proj.set_level(nvars - 1, top);
    proj
}

fn univariate_cad(f: &[Polynomial]) -> Cad {
    let basis = squarefree_finest_basis(f.iter()).polys;
    let mut proj = ProjectionSet::empty(1);
    let mut level = TaggedSet::new();
    for b in &basis {
        level.insert(b, Provenance::Input);
    }
    proj.set_level(0, level);
    Cad::from_levels(vec![base_cad(&basis)], proj, Vec::new())
}

fn check_ec(f: &Polynomial, nvars: usize) -> Result<(), EngineError> {
    if f.is_constant() {
        return Err(EngineError::Input("equational constraint is constant".into()));
    }
    if f.nvars() != nvars {
        return Err(EngineError::Input("equational constraint over a different variable set".into()));
    }
    Ok(())
}

/// Data of an equational-constraint projection: the set itself, the top-level
/// basis `B` and its designated part `F`.
pub struct EcProjection {
    pub projection: ProjectionSet,
    pub basis: Vec<Polynomial>,
    pub designated: Vec<Polynomial>,
}

/// `C ∪ P_F(B)` projected down to the line, with `B` as the top level.
pub fn eccad_projection(f: &Polynomial, g: &[Polynomial], nvars: usize) -> Result<EcProjection, EngineError> {
    check_ec(f, nvars)?;
    let top = nvars - 1;
    let mut a = vec![f.clone()];
    a.extend(g.iter().cloned());
    if nvars == 1 {
        let cad = univariate_cad(&[f.clone()]);
        let basis = cad.projection.level_polys(0);
        return Ok(EcProjection { projection: cad.projection, basis: basis.clone(), designated: basis });
    }
    let split = split_top(&a, top);
    let designated = designated_part(&split.basis, &[f.clone()]);
    let mut lower = TaggedSet::new();
    for c in &split.contents {
        lower.insert(c, Provenance::Content);
    }
    lower.extend(&reduced_p_f(&designated, &split.basis, top));
    let projection = assemble(nvars, &lower, &split.basis);
    Ok(EcProjection { projection, basis: split.basis, designated })
}

/// CAD invariant with respect to the equational constraint `f = 0`: `f` is
/// sign-invariant everywhere and every `g` on the sections of `f`.
pub fn eccad(f: &Polynomial, g: &[Polynomial], nvars: usize, all_failures: bool) -> Result<Cad, EngineError> {
    if nvars == 1 {
        check_ec(f, nvars)?;
        return Ok(univariate_cad(&[f.clone()]));
    }
    let ep = eccad_projection(f, g, nvars)?;
    let (b, fset) = (ep.basis, ep.designated);
    lift_top(ep.projection, nvars, all_failures, |c| lifting_set_inner(c, &b, &fset))
}

/// Builds the lower CAD (any warning is a FAIL) and then the final lift with
/// a per-cell lifting set.
fn lift_top<F>(proj: ProjectionSet, nvars: usize, all_failures: bool, lifting: F) -> Result<Cad, EngineError>
where
    F: Fn(&Cell) -> Result<(Vec<Polynomial>, Vec<Nullification>), Failure> + Sync,
{
    let opts = LiftOptions { policy: NullPolicy::Strict, all_failures };
    let mut cad = lift_projection(proj, nvars - 1, opts, false).map_err(EngineError::Fail)?;
    let lifting = |c: &Cell| lifting(c).map(|(polys, nulls)| Lifting { polys, groups: Vec::new(), nulls });
    let (cells, nulls) = lift_level(cad.level_cells(nvars - 1), all_failures, lifting).map_err(EngineError::Fail)?;
    cad.nullifications.extend(nulls);
    cad.push_level(cells);
    Ok(cad)
}

/// Polynomials to lift with over `c`, for basis `a` with designated part `e`.
pub fn lifting_set(c: &Cell, a: &[Polynomial], e: &[Polynomial]) -> Result<Vec<Polynomial>, Failure> {
    lifting_set_inner(c, a, e).map(|(l, _)| l)
}

fn lifting_set_inner(c: &Cell, a: &[Polynomial], e: &[Polynomial]) -> Result<(Vec<Polynomial>, Vec<Nullification>), Failure> {
    let null_e: Vec<&Polynomial> = e.iter().filter(|p| nullified_on_cell(p, c)).collect();
    if null_e.is_empty() {
        return Ok((e.to_vec(), Vec::new()));
    }
    let dim = c.dimension();
    let note = |p: &Polynomial| Nullification { poly: p.clone(), cell_index: c.index.clone(), dimension: dim };
    if dim > 0 {
        let excl = excl_p(a, e, c.level());
        if excl.iter().any(|(q, _)| !c.is_nonzero_constant_on(q)) {
            return Err(Failure { poly: null_e[0].clone(), cell_index: c.index.clone(), reason: FailReason::ExclNotConstant });
        }
    }
    let mut keep = Vec::new();
    let mut nulls = Vec::new();
    for p in a {
        if null_e.contains(&p) {
            nulls.push(note(p));
        } else if nullified_on_cell(p, c) {
            if dim > 0 {
                return Err(Failure { poly: p.clone(), cell_index: c.index.clone(), reason: FailReason::Nullified });
            }
            nulls.push(note(p));
        } else {
            keep.push(p.clone());
        }
    }
    Ok((keep, nulls))
}

/// Per-clause top-level data of a truth-table invariant projection.
pub struct TticadProjection {
    pub projection: ProjectionSet,
    pub bases: Vec<Vec<Polynomial>>,
    pub designated: Vec<Vec<Polynomial>>,
}

fn designated_sets(phi: &FormulaSequence) -> Vec<Vec<Polynomial>> {
    phi.clauses()
        .iter()
        .map(|c| match c.ec_poly() {
            Some(f) => vec![f.clone()],
            None => c.polys(),
        })
        .collect()
}

/// `C ∪ P_𝓕(𝓑)` projected down to the line, with `⋃ B_i` as the top level.
pub fn tticad_projection(phi: &FormulaSequence) -> TticadProjection {
    let n = phi.nvars();
    let e = designated_sets(phi);
    if n == 1 {
        let all: Vec<Polynomial> = e.iter().flatten().cloned().collect();
        let cad = univariate_cad(&all);
        let basis = cad.projection.level_polys(0);
        let t = e.len();
        return TticadProjection { projection: cad.projection, bases: vec![basis.clone(); t], designated: vec![basis; t] };
    }
    let top = n - 1;
    let mut lower = TaggedSet::new();
    let mut bases = Vec::new();
    let mut designated = Vec::new();
    for (clause, ei) in phi.clauses().iter().zip(&e) {
        let split = split_top(&clause.polys(), top);
        for c in &split.contents {
            lower.insert(c, Provenance::Content);
        }
        designated.push(designated_part(&split.basis, ei));
        bases.push(split.basis);
    }
    let s = EcStructure::new(bases.clone(), designated.clone());
    lower.extend(&tticad_p(&s, top));
    let all_top = dedup(bases.iter().flatten().cloned());
    TticadProjection { projection: assemble(n, &lower, &all_top), bases, designated }
}

/// Truth-table invariant CAD for a sequence of clauses, each with or without
/// a designated equational constraint.
pub fn tticad(phi: &FormulaSequence, all_failures: bool) -> Result<Cad, EngineError> {
    let n = phi.nvars();
    if n == 1 {
        let all: Vec<Polynomial> = designated_sets(phi).into_iter().flatten().collect();
        return Ok(univariate_cad(&all));
    }
    let tp = tticad_projection(phi);
    let (bases, designated) = (tp.bases, tp.designated);
    lift_top(tp.projection, n, all_failures, |c| {
        let mut polys = Vec::new();
        let mut nulls: Vec<Nullification> = Vec::new();
        for (b, f) in bases.iter().zip(&designated) {
            let (l, nl) = lifting_set_inner(c, b, f)?;
            polys.extend(l);
            for x in nl {
                if !nulls.iter().any(|y| y.poly == x.poly) {
                    nulls.push(x);
                }
            }
        }
        let polys = dedup(polys);
        // a polynomial kept for one clause may be nullified and dropped by another
        let polys = polys.into_iter().filter(|p| !nulls.iter().any(|x| x.poly == *p)).collect();
        Ok((polys, nulls))
    })
}
