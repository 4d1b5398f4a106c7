//! Problem files: variables, named polynomials, clauses, task and options.

use std::collections::BTreeMap;
use std::path::Path;

use cadkit::engine::{Algorithm, Clause, Constraint, FormulaSequence, Relop};
use cadkit::heuristics::Problem;
use cadkit::{Polynomial, VarOrder};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// Variables in ascending order.
    pub variables: Vec<String>,
    #[serde(default)]
    pub polynomials: BTreeMap<String, String>,
    pub formula: Vec<ClauseSpec>,
    #[serde(default)]
    pub task: Option<String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClauseSpec {
    pub constraints: Vec<ConstraintSpec>,
    /// Index of the designated equation within `constraints`.
    #[serde(default)]
    pub ec: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    /// A polynomial name, or polynomial text.
    pub poly: String,
    pub relop: String,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
    /// "json" or "text".
    #[serde(default)]
    pub format: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub problem: Problem,
    /// Every polynomial of the formula under the name it was given.
    pub names: Vec<(String, Polynomial)>,
    pub task: Option<Algorithm>,
    pub options: Options,
}

pub fn parse_algorithm(s: &str) -> Result<Algorithm, CliError> {
    match s {
        "full" => Ok(Algorithm::Full),
        "ec" => Ok(Algorithm::Ec),
        "tticad" => Ok(Algorithm::Tticad),
        other => Err(CliError::Input(format!("unknown task '{}' (full, ec or tticad)", other))),
    }
}

impl ProblemFile {
    pub fn from_str(src: &str) -> Result<Self, CliError> {
        serde_json::from_str(src).map_err(|e| CliError::Input(format!("problem file: {}", e)))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {}", path.display(), e)))?;
        Self::from_str(&src)
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let input = |m: String| CliError::Input(m);
        let order = VarOrder::new(&self.variables).map_err(|e| input(e.to_string()))?;
        let mut defined: BTreeMap<&str, Polynomial> = BTreeMap::new();
        for (name, text) in &self.polynomials {
            let p = Polynomial::parse(text, &order).map_err(|e| input(format!("polynomial '{}': {}", name, e)))?;
            defined.insert(name, p);
        }
        let mut names: Vec<(String, Polynomial)> = Vec::new();
        let mut clauses = Vec::new();
        if self.formula.is_empty() {
            return Err(input("formula has no clauses".into()));
        }
        for (ci, cs) in self.formula.iter().enumerate() {
            let mut cons = Vec::new();
            for k in &cs.constraints {
                let p = match defined.get(k.poly.as_str()) {
                    Some(p) => p.clone(),
                    None => Polynomial::parse(&k.poly, &order).map_err(|e| {
                        input(format!("clause {}: '{}' is neither a defined name nor a polynomial ({})", ci + 1, k.poly, e))
                    })?,
                };
                let relop: Relop = k.relop.parse().map_err(|e: cadkit::engine::EngineError| input(e.to_string()))?;
                if !names.iter().any(|(n, _)| *n == k.poly) {
                    names.push((k.poly.clone(), p.clone()));
                }
                cons.push(Constraint::new(p, relop).map_err(|e| input(format!("clause {}: {}", ci + 1, e)))?);
            }
            clauses.push(Clause::new(cons, cs.ec).map_err(|e| input(format!("clause {}: {}", ci + 1, e)))?);
        }
        let formula = FormulaSequence::new(clauses).map_err(|e| input(e.to_string()))?;
        let task = self.task.as_deref().map(parse_algorithm).transpose()?;
        if let Some(f) = &self.options.format {
            if f != "json" && f != "text" {
                return Err(input(format!("unknown format '{}' (json or text)", f)));
            }
        }
        Ok(Loaded { problem: Problem { order, formula }, names, task, options: self.options.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = r#"{
        "variables": ["x", "y"],
        "polynomials": {"f": "x^2+y^2-4", "g": "x*y-1"},
        "formula": [{"constraints": [{"poly": "f", "relop": "="}, {"poly": "g", "relop": "<"}], "ec": 0}],
        "task": "ec",
        "options": {"seed": 3}
    }"#;

    #[test]
    fn loads_named_polynomials() {
        let l = ProblemFile::from_str(SRC).unwrap().load().unwrap();
        assert_eq!(l.names.len(), 2);
        assert_eq!(l.task, Some(Algorithm::Ec));
        assert_eq!(l.options.seed, Some(3));
        assert_eq!(l.problem.formula.clauses()[0].designated_ec(), Some(0));
    }

    #[test]
    fn inline_polynomials_and_errors() {
        let src = r#"{"variables": ["x"], "formula": [{"constraints": [{"poly": "x^2-2", "relop": "<"}]}]}"#;
        let l = ProblemFile::from_str(src).unwrap().load().unwrap();
        assert_eq!(l.names[0].0, "x^2-2");
        let bad = r#"{"variables": ["x"], "formula": [{"constraints": [{"poly": "h", "relop": "<"}]}]}"#;
        assert!(ProblemFile::from_str(bad).unwrap().load().is_err());
        let bad_ec = r#"{"variables": ["x"], "formula": [{"constraints": [{"poly": "x", "relop": "<"}], "ec": 0}]}"#;
        assert!(ProblemFile::from_str(bad_ec).unwrap().load().is_err());
        assert!(ProblemFile::from_str(r#"{"variables": ["x"], "formula": [], "extra": 1}"#).is_err());
    }
}
