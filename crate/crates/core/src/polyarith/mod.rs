//! Exact sparse multivariate polynomial arithmetic over the rationals.

mod basis;
mod gcd;
mod parse;
mod poly;
mod resultant;

pub use basis::{coprime_refine, squarefree_finest_basis, Basis};
pub use gcd::{content_in, content_primitive, gcd, gcd_many, primitive_in, squarefree_decomposition, squarefree_part};
pub(crate) use gcd::is_nonzero_constant;
pub use parse::parse_rational;
pub(crate) use poly::fmt_rational;
pub use poly::{Monomial, PolyDisplay, Polynomial, Rational, Term};
pub use resultant::{determinant, discriminant, resultant, resultant_general, sylvester_matrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not in main variable")]
    NotInMainVariable,
    #[error("degree too low")]
    DegreeTooLow,
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("invalid variable order: {0}")]
    BadOrder(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Variables in ascending order: `names[0]` is `x_1`, the last one is projected first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(PolyError::BadOrder("no variables".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') || n.chars().next().unwrap().is_ascii_digit() {
                return Err(PolyError::BadOrder(format!("bad variable name '{}'", n)));
            }
            if names[..i].contains(n) {
                return Err(PolyError::BadOrder(format!("duplicate variable '{}'", n)));
            }
        }
        Ok(VarOrder { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Main variable name of `p`, if any.
    pub fn mvar_name(&self, p: &Polynomial) -> Option<&str> {
        p.main_var().map(|v| self.name(v))
    }

    /// Reorders to `new_names` (a permutation of this order); returns the new order
    /// and the index map `old index -> new index`.
    pub fn permuted(&self, new_names: &[String]) -> Result<(VarOrder, Vec<usize>), PolyError> {
        let order = VarOrder::new(new_names)?;
        if order.len() != self.len() {
            return Err(PolyError::BadOrder("permutation has the wrong length".into()));
        }
        let map = self
            .names
            .iter()
            .map(|n| order.index_of(n).ok_or_else(|| PolyError::BadOrder(format!("missing variable '{}'", n))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((order, map))
    }
}

impl std::fmt::Display for VarOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.names.join(" < "))
    }
}
