//! Formulae, the equational-constraint and truth-table invariant algorithms,
//! truth evaluation and invariance checking.

mod algorithms;
mod verify;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::lifting::{Cad, CadFailure, Cell, LiftOptions, NullPolicy};
use crate::polyarith::Polynomial;

pub use algorithms::{eccad, eccad_projection, lifting_set, tticad, tticad_projection};
pub use verify::{verify_invariance, VerifyReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Fail(CadFailure),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relop {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relop {
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Relop::Eq => sign == 0,
            Relop::Ne => sign != 0,
            Relop::Lt => sign < 0,
            Relop::Le => sign <= 0,
            Relop::Gt => sign > 0,
            Relop::Ge => sign >= 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relop::Eq => "=",
            Relop::Ne => "!=",
            Relop::Lt => "<",
            Relop::Le => "<=",
            Relop::Gt => ">",
            Relop::Ge => ">=",
        }
    }
}

impl FromStr for Relop {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "=" | "==" => Relop::Eq,
            "!=" | "<>" | "≠" => Relop::Ne,
            "<" => Relop::Lt,
            "<=" | "≤" => Relop::Le,
            ">" => Relop::Gt,
            ">=" | "≥" => Relop::Ge,
            other => return Err(EngineError::Input(format!("unknown relation '{}'", other))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub poly: Polynomial,
    pub relop: Relop,
}

impl Constraint {
    pub fn new(poly: Polynomial, relop: Relop) -> Result<Self, EngineError> {
        if poly.is_zero() {
            return Err(EngineError::Input("constraint polynomial is zero".into()));
        }
        Ok(Constraint { poly, relop })
    }
}

/// A conjunction of constraints, optionally with a designated equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    constraints: Vec<Constraint>,
    designated_ec: Option<usize>,
}

impl Clause {
    pub fn new(constraints: Vec<Constraint>, designated_ec: Option<usize>) -> Result<Self, EngineError> {
        if constraints.is_empty() {
            return Err(EngineError::Input("empty clause".into()));
        }
        if let Some(i) = designated_ec {
            match constraints.get(i) {
                Some(c) if c.relop == Relop::Eq => {}
                Some(_) => return Err(EngineError::Input(format!("designated constraint {} is not an equation", i))),
                None => return Err(EngineError::Input(format!("designated constraint {} out of range", i))),
            }
        }
        Ok(Clause { constraints, designated_ec })
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn designated_ec(&self) -> Option<usize> {
        self.designated_ec
    }

    pub fn ec_poly(&self) -> Option<&Polynomial> {
        self.designated_ec.map(|i| &self.constraints[i].poly)
    }

    /// Same clause with a different designation.
    pub fn with_ec(&self, designated_ec: Option<usize>) -> Result<Self, EngineError> {
        Clause::new(self.constraints.clone(), designated_ec)
    }

    /// Distinct constraint polynomials, in order of appearance.
    pub fn polys(&self) -> Vec<Polynomial> {
        dedup(self.constraints.iter().map(|c| c.poly.clone()))
    }

    pub fn holds_at(&self, signs: &[i8]) -> bool {
        self.constraints.iter().zip(signs).all(|(c, &s)| c.relop.holds(s))
    }
}

/// A non-empty sequence of clauses over a common set of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaSequence {
    clauses: Vec<Clause>,
    nvars: usize,
}

impl FormulaSequence {
    pub fn new(clauses: Vec<Clause>) -> Result<Self, EngineError> {
        let Some(first) = clauses.first() else {
            return Err(EngineError::Input("no clauses".into()));
        };
        let nvars = first.constraints[0].poly.nvars();
        if clauses.iter().flat_map(|c| &c.constraints).any(|c| c.poly.nvars() != nvars) {
            return Err(EngineError::Input("polynomials over different variable sets".into()));
        }
        if nvars == 0 {
            return Err(EngineError::Input("no variables".into()));
        }
        Ok(FormulaSequence { clauses, nvars })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn all_polys(&self) -> Vec<Polynomial> {
        dedup(self.clauses.iter().flat_map(|c| c.polys()))
    }
}

pub(crate) fn dedup(polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in polys {
        if !out.iter().any(|q| q.same_up_to_constant(&p)) {
            out.push(p);
        }
    }
    out
}

/// Product of the designated equations of all clauses.
pub fn implicit_ec(phi: &FormulaSequence) -> Result<Polynomial, EngineError> {
    let mut prod = Polynomial::one(phi.nvars());
    for (i, c) in phi.clauses().iter().enumerate() {
        match c.ec_poly() {
            Some(f) => prod = &prod * f,
            None => return Err(EngineError::Input(format!("no implicit EC exists: clause {} has no equational constraint", i + 1))),
        }
    }
    Ok(prod)
}

/// Truth of a clause at the cell's sample point.
pub fn evaluate_truth(c: &Cell, clause: &Clause) -> bool {
    let mut s = c.sample.clone();
    clause.constraints().iter().all(|k| k.relop.holds(s.sign_of(&k.poly)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Full,
    Ec,
    Tticad,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Full => "full",
            Algorithm::Ec => "ec",
            Algorithm::Tticad => "tticad",
        })
    }
}

/// Sign guarantee of a result: `always` is sign-invariant on every cell and
/// `conditional` on the cells where `when_zero` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub always: Vec<Polynomial>,
    pub when_zero: Option<Polynomial>,
    pub conditional: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct CadResult {
    pub algorithm: Algorithm,
    pub cad: Cad,
    pub formula: FormulaSequence,
    /// Per cell, the truth value of each clause.
    pub truth: Vec<Vec<bool>>,
    pub obligations: Vec<Obligation>,
}

impl CadResult {
    fn build(algorithm: Algorithm, cad: Cad, formula: FormulaSequence, obligations: Vec<Obligation>) -> Self {
        let truth = cad
            .cells()
            .par_iter()
            .map(|c| formula.clauses().iter().map(|cl| evaluate_truth(c, cl)).collect())
            .collect();
        CadResult { algorithm, cad, formula, truth, obligations }
    }

    pub fn cell_count(&self) -> usize {
        self.cad.cell_count()
    }

    /// Truth of the disjunction of all clauses on cell `i`.
    pub fn disjunction(&self, i: usize) -> bool {
        self.truth[i].iter().any(|&t| t)
    }
}

/// Runs one of the three algorithms on a formula sequence. The full CAD
/// tolerates top-level nullification; the other two follow their FAIL rules.
pub fn solve(phi: &FormulaSequence, algorithm: Algorithm, all_failures: bool) -> Result<CadResult, EngineError> {
    let n = phi.nvars();
    match algorithm {
        Algorithm::Full => {
            let polys = phi.all_polys();
            let opts = LiftOptions { policy: NullPolicy::OmitTopLevel, all_failures };
            let cad = crate::lifting::cad_full(&polys, n, opts).map_err(EngineError::Fail)?;
            let ob = Obligation { always: polys, when_zero: None, conditional: Vec::new() };
            Ok(CadResult::build(algorithm, cad, phi.clone(), vec![ob]))
        }
        Algorithm::Ec => {
            let f = implicit_ec(phi)?;
            let g: Vec<Polynomial> =
                phi.all_polys().into_iter().filter(|p| !p.same_up_to_constant(&f)).collect();
            let cad = eccad(&f, &g, n, all_failures)?;
            let ob = Obligation { always: vec![f.clone()], when_zero: Some(f), conditional: g };
            Ok(CadResult::build(algorithm, cad, phi.clone(), vec![ob]))
        }
        Algorithm::Tticad => {
            let cad = tticad(phi, all_failures)?;
            let obligations = phi
                .clauses()
                .iter()
                .map(|c| match c.ec_poly() {
                    Some(f) => Obligation {
                        always: vec![f.clone()],
                        when_zero: Some(f.clone()),
                        conditional: c.polys().into_iter().filter(|p| !p.same_up_to_constant(f)).collect(),
                    },
                    None => Obligation { always: c.polys(), when_zero: None, conditional: Vec::new() },
                })
                .collect();
            Ok(CadResult::build(algorithm, cad, phi.clone(), obligations))
        }
    }
}
