//! Projection operators: McCallum `P`, the equational-constraint operator
//! `P_F`, the truth-table operator `P_E(A)` with cross resultants, the
//! excluded set, and repeated projection.

use std::fmt;

use rayon::prelude::*;

use crate::polyarith::{
    discriminant, gcd, is_nonzero_constant, resultant, squarefree_finest_basis, Basis, Polynomial, VarOrder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Input,
    Coefficient,
    Discriminant,
    Resultant,
    CrossResultant,
    Content,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Input => "input",
            Provenance::Coefficient => "coefficient",
            Provenance::Discriminant => "discriminant",
            Provenance::Resultant => "resultant",
            Provenance::CrossResultant => "cross-resultant",
            Provenance::Content => "content",
        };
        f.write_str(s)
    }
}

/// Polynomials up to constant multiples, constants dropped, first tag kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaggedSet {
    items: Vec<(Polynomial, Provenance)>,
}

impl TaggedSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the normalized form of `p`; returns false for constants and duplicates.
    pub fn insert(&mut self, p: &Polynomial, tag: Provenance) -> bool {
        if p.is_constant() {
            return false;
        }
        let n = p.normalized();
        if self.items.iter().any(|(q, _)| *q == n) {
            return false;
        }
        self.items.push((n, tag));
        true
    }

    pub fn extend(&mut self, other: &TaggedSet) {
        for (p, t) in &other.items {
            self.insert(p, *t);
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        let n = p.normalized();
        self.items.iter().any(|(q, _)| *q == n)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Polynomial, Provenance)> {
        self.items.iter()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.items.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn tag_of(&self, p: &Polynomial) -> Option<Provenance> {
        let n = p.normalized();
        self.items.iter().find(|(q, _)| *q == n).map(|(_, t)| *t)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &TaggedSet) -> TaggedSet {
        TaggedSet { items: self.items.iter().filter(|(p, _)| !other.contains(p)).cloned().collect() }
    }

    pub fn is_subset_of(&self, other: &TaggedSet) -> bool {
        self.items.iter().all(|(p, _)| other.contains(p))
    }

    /// Canonical order (sorted by polynomial).
    pub fn sorted(mut self) -> TaggedSet {
        self.items.sort();
        self
    }
}

/// Coefficients from the leading one down, stopping at the first one that
/// cannot vanish together with those already taken: a nonzero constant, or a
/// coefficient making the set univariate in one variable with constant gcd.
/// That last coefficient is not kept; it is nonzero wherever the others vanish.
pub fn necessary_coefficients(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for c in p.coefficients(v) {
        if c.is_zero() {
            continue;
        }
        if is_nonzero_constant(&c) {
            break;
        }
        out.push(c);
        if out.len() > 1 && no_common_zero(&out) {
            out.pop();
            break;
        }
    }
    out
}

fn no_common_zero(cs: &[Polynomial]) -> bool {
    let Some(u) = cs[0].main_var() else { return true };
    if !cs.iter().all(|c| c.is_univariate_in(u)) {
        return false;
    }
    cs[1..].iter().fold(cs[0].clone(), |g, c| gcd(&g, c)).is_constant()
}

fn pair_resultants(pairs: &[(&Polynomial, &Polynomial)], v: usize) -> Vec<Polynomial> {
    pairs.par_iter().map(|(a, b)| resultant(a, b, v).expect("both polynomials involve the variable")).collect()
}

fn coeffs_and_disc(b: &Polynomial, v: usize, out: &mut TaggedSet) {
    for c in necessary_coefficients(b, v) {
        out.insert(&c, Provenance::Coefficient);
    }
    if b.degree(v) >= 2 {
        out.insert(&discriminant(b, v).expect("degree checked"), Provenance::Discriminant);
    }
}

/// Polynomials of the set that do not involve `v` pass through unchanged.
fn split_by_var<'a>(set: &'a [Polynomial], v: usize, out: &mut TaggedSet) -> Vec<&'a Polynomial> {
    let mut inside = Vec::new();
    for p in set {
        if p.involves(v) {
            inside.push(p);
        } else {
            out.insert(p, Provenance::Content);
        }
    }
    inside
}

/// McCallum projection of a set of polynomials with main variable `v`.
pub fn mccallum_p(b: &[Polynomial], v: usize) -> TaggedSet {
    let mut out = TaggedSet::new();
    let inside = split_by_var(b, v, &mut out);
    for p in &inside {
        coeffs_and_disc(p, v, &mut out);
    }
    let mut pairs = Vec::new();
    for i in 0..inside.len() {
        for j in i + 1..inside.len() {
            pairs.push((inside[i], inside[j]));
        }
    }
    for r in pair_resultants(&pairs, v) {
        out.insert(&r, Provenance::Resultant);
    }
    out
}

/// `P(F) ∪ {res(f, g) : f ∈ F, g ∈ B \ F}`.
pub fn reduced_p_f(f: &[Polynomial], b: &[Polynomial], v: usize) -> TaggedSet {
    let mut out = mccallum_p(f, v);
    let fnorm: Vec<Polynomial> = f.iter().map(|p| p.normalized()).collect();
    let others: Vec<Polynomial> = b.iter().filter(|g| !fnorm.contains(&g.normalized())).cloned().collect();
    let mut rest = TaggedSet::new();
    let others_in = split_by_var(&others, v, &mut rest);
    let mut pairs = Vec::new();
    for fp in f.iter().filter(|p| p.involves(v)) {
        for g in &others_in {
            pairs.push((fp, *g));
        }
    }
    for r in pair_resultants(&pairs, v) {
        out.insert(&r, Provenance::Resultant);
    }
    out.extend(&rest);
    out
}

/// Per-clause bases `A_i` with designated subsets `E_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcStructure {
    pub a: Vec<Vec<Polynomial>>,
    pub e: Vec<Vec<Polynomial>>,
}

impl EcStructure {
    pub fn new(a: Vec<Vec<Polynomial>>, e: Vec<Vec<Polynomial>>) -> Self {
        assert_eq!(a.len(), e.len(), "one designated subset per clause");
        assert!(!a.is_empty(), "at least one clause");
        EcStructure { a, e }
    }
}

/// `⋃ P_{E_i}(A_i) ∪ RES×(E)`.
pub fn tticad_p(s: &EcStructure, v: usize) -> TaggedSet {
    let mut out = TaggedSet::new();
    for (a, e) in s.a.iter().zip(&s.e) {
        out.extend(&reduced_p_f(e, a, v));
    }
    let mut pairs = Vec::new();
    for i in 0..s.e.len() {
        for j in i + 1..s.e.len() {
            for f in s.e[i].iter().filter(|p| p.involves(v)) {
                for g in s.e[j].iter().filter(|p| p.involves(v)) {
                    if f.normalized() != g.normalized() {
                        pairs.push((f, g));
                    }
                }
            }
        }
    }
    for r in pair_resultants(&pairs, v) {
        out.insert(&r, Provenance::CrossResultant);
    }
    out
}

/// `P(A \ E) \ P_E(A)`.
pub fn excl_p(a: &[Polynomial], e: &[Polynomial], v: usize) -> TaggedSet {
    let enorm: Vec<Polynomial> = e.iter().map(|p| p.normalized()).collect();
    let rest: Vec<Polynomial> = a.iter().filter(|p| !enorm.contains(&p.normalized())).cloned().collect();
    mccallum_p(&rest, v).difference(&reduced_p_f(e, a, v))
}

/// Projection polynomials grouped by main variable: `levels[k]` holds the
/// basis of level `k + 1` (main variable `x_(k+1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSet {
    nvars: usize,
    levels: Vec<TaggedSet>,
}

impl ProjectionSet {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Polynomials with main variable `v` (0-based).
    pub fn level(&self, v: usize) -> &TaggedSet {
        &self.levels[v]
    }

    pub fn level_polys(&self, v: usize) -> Vec<Polynomial> {
        self.levels[v].polys()
    }

    pub(crate) fn set_level(&mut self, v: usize, s: TaggedSet) {
        self.levels[v] = s;
    }

    pub fn total_len(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn all_polys(&self) -> Vec<Polynomial> {
        self.levels.iter().flat_map(|l| l.polys()).collect()
    }

    /// Text listing, one block per level from the top.
    pub fn dump(&self, order: &VarOrder) -> String {
        let mut s = String::new();
        for v in (0..self.nvars).rev() {
            s.push_str(&format!("level {} ({}):\n", v + 1, order.name(v)));
            for (p, t) in self.levels[v].iter() {
                s.push_str(&format!("  [{}] {}\n", t, p.to_string_with(order)));
            }
        }
        s
    }
}

/// Repeated McCallum projection. Each level is replaced by its finest
/// squarefree basis; contents and projection polynomials go to the level of
/// their own main variable.
pub fn full_projection(top: &[Polynomial], nvars: usize) -> ProjectionSet {
    let mut raw: Vec<TaggedSet> = vec![TaggedSet::new(); nvars];
    for p in top {
        if let Some(v) = p.main_var() {
            raw[v].insert(p, Provenance::Input);
        }
    }
    project_down(raw, nvars, nvars)
}

/// Runs the projection from level `from` (exclusive upper bound) down to 1
/// over pre-seeded raw levels.
pub(crate) fn project_down(mut raw: Vec<TaggedSet>, nvars: usize, from: usize) -> ProjectionSet {
    let mut levels: Vec<TaggedSet> = vec![TaggedSet::new(); nvars];
    for v in (0..from).rev() {
        let (basis, tags) = basis_of(&raw[v]);
        for c in &basis.contents {
            raw[c.main_var().expect("non-constant content")].insert(c, Provenance::Content);
        }
        let mut level = TaggedSet::new();
        for (b, t) in basis.polys.iter().zip(tags) {
            level.insert(b, t);
        }
        if v > 0 {
            for (q, t) in mccallum_p(&basis.polys, v).iter() {
                raw[q.main_var().expect("non-constant")].insert(q, *t);
            }
        }
        levels[v] = level;
    }
    ProjectionSet { nvars, levels }
}

/// Finest squarefree basis, each element tagged like the first raw polynomial it divides.
pub(crate) fn basis_of(raw: &TaggedSet) -> (Basis, Vec<Provenance>) {
    let polys = raw.polys();
    let basis = squarefree_finest_basis(polys.iter());
    let tags = basis
        .polys
        .iter()
        .map(|b| raw.iter().find(|(r, _)| r.div_exact(b).is_some()).map(|(_, t)| *t).unwrap_or(Provenance::Input))
        .collect();
    (basis, tags)
}

impl ProjectionSet {
    pub(crate) fn empty(nvars: usize) -> Self {
        ProjectionSet { nvars, levels: vec![TaggedSet::new(); nvars] }
    }
}
