//! Candidate formulations: variable orders, clause splits and EC designations.

use super::{Formulation, Problem};
use crate::engine::Relop;
use crate::polyarith::VarOrder;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Dimensions {
    pub order: bool,
    pub ec: bool,
    pub split: bool,
}

impl Dimensions {
    pub fn all() -> Self {
        Dimensions { order: true, ec: true, split: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub formulations: Vec<Formulation>,
    /// Number of candidates before the limit was applied.
    pub total: u128,
}

impl Enumeration {
    pub fn truncated(&self) -> bool {
        (self.formulations.len() as u128) < self.total
    }

    pub fn warning(&self) -> Option<String> {
        self.truncated()
            .then(|| format!("candidate list truncated to {} of {} formulations", self.formulations.len(), self.total))
    }
}

/// Parses blocks such as `x;y,z` (lowest block first) into variable indices.
pub fn parse_blocks(s: &str, order: &VarOrder) -> Result<Vec<Vec<usize>>, String> {
    let mut seen = vec![false; order.len()];
    let mut blocks = Vec::new();
    for part in s.split(';') {
        let mut b = Vec::new();
        for name in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i = order.index_of(name).ok_or_else(|| format!("unknown variable '{}' in blocks", name))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(format!("variable '{}' appears in two blocks", name));
            }
            b.push(i);
        }
        if b.is_empty() {
            return Err("empty block".into());
        }
        blocks.push(b);
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(format!("variable '{}' is in no block", order.name(i)));
    }
    Ok(blocks)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Permutations of `items` in lexicographic order of positions, up to `limit`.
fn permutations(items: &[usize], limit: usize) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    let mut out = Vec::new();
    loop {
        if out.len() >= limit {
            return out;
        }
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next permutation
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else { return out };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).expect("successor exists");
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
}

fn orders(problem: &Problem, blocks: &[Vec<usize>], limit: usize) -> (Vec<VarOrder>, u128) {
    let total = blocks.iter().fold(1u128, |a, b| a.saturating_mul(factorial(b.len())));
    let per_block: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| permutations(b, limit)).collect();
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for choices in &per_block {
        let mut next = Vec::new();
        'fill: for a in &acc {
            for c in choices {
                if next.len() >= limit {
                    break 'fill;
                }
                let mut v = a.clone();
                v.extend(c);
                next.push(v);
            }
        }
        acc = next;
    }
    let out = acc
        .into_iter()
        .map(|perm| VarOrder::new(perm.iter().map(|&i| problem.order.name(i))).expect("permutation"))
        .collect();
    (out, total)
}

/// Set partitions of `items` via restricted growth strings, the unsplit one first.
fn partitions(items: &[usize], limit: usize) -> Vec<Vec<Vec<usize>>> {
    let n = items.len();
    let mut rgs = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        if out.len() >= limit {
            return out;
        }
        let nb = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nb];
        for (k, &b) in rgs.iter().enumerate() {
            blocks[b].push(items[k]);
        }
        out.push(blocks);
        // increment the string, keeping rgs[k] <= 1 + max(rgs[..k])
        let mut k = n;
        loop {
            if k <= 1 {
                return out;
            }
            k -= 1;
            let m = rgs[..k].iter().max().copied().unwrap_or(0);
            if rgs[k] <= m {
                rgs[k] += 1;
                for r in rgs[k + 1..].iter_mut() {
                    *r = 0;
                }
                break;
            }
        }
    }
}

fn bell(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("non-empty")];
        for v in &row {
            let x = next.last().expect("non-empty").saturating_add(*v);
            next.push(x);
        }
        row = next;
    }
    row[0]
}

/// Candidate formulations varying the chosen dimensions, the problem's own
/// formulation first. At most `limit` are returned.
pub fn enumerate_formulations(
    problem: &Problem,
    dims: Dimensions,
    blocks: Option<&[Vec<usize>]>,
    limit: usize,
) -> Enumeration {
    let limit = limit.max(1);
    let base = problem.as_formulation();
    let (orders, n_orders) = if dims.order {
        let all = vec![(0..problem.order.len()).collect::<Vec<_>>()];
        orders(problem, blocks.unwrap_or(&all), limit)
    } else {
        (vec![base.order.clone()], 1)
    };
    let is_eq: Vec<bool> = problem
        .formula
        .clauses()
        .iter()
        .flat_map(|c| c.constraints().iter().map(|k| k.relop == Relop::Eq))
        .collect();

    // per original clause: its ways of being split, each block with its EC options
    let mut per_clause: Vec<Vec<Vec<(Vec<usize>, Vec<Option<usize>>)>>> = Vec::new();
    let mut total = n_orders;
    for (block, ec) in base.clause_split.iter().zip(&base.ec_choice) {
        let splits = if dims.split { partitions(block, limit) } else { vec![vec![block.clone()]] };
        let mut n_clause: u128 = 0;
        let mut ways = Vec::new();
        for s in splits {
            let mut n_way: u128 = 1;
            let mut way = Vec::new();
            for b in s {
                let eqs: Vec<usize> = b.iter().copied().filter(|&i| is_eq[i]).collect();
                let opts: Vec<Option<usize>> = if dims.ec && !eqs.is_empty() {
                    eqs.into_iter().map(Some).collect()
                } else if b == *block {
                    vec![*ec]
                } else if let Some(e) = ec.filter(|e| b.contains(e)) {
                    vec![Some(e)]
                } else {
                    vec![eqs.first().copied()]
                };
                n_way = n_way.saturating_mul(opts.len() as u128);
                way.push((b, opts));
            }
            n_clause = n_clause.saturating_add(n_way);
            ways.push(way);
        }
        if dims.split {
            // partitions beyond the limit were not generated
            let missing = bell(block.len()).saturating_sub(ways.len() as u128);
            n_clause = n_clause.saturating_add(missing);
        }
        total = total.saturating_mul(n_clause);
        per_clause.push(ways);
    }

    // expand clause-level choices into (split, ec) pairs
    let mut shapes: Vec<(Vec<Vec<usize>>, Vec<Option<usize>>)> = vec![(Vec::new(), Vec::new())];
    for ways in &per_clause {
        let mut next = Vec::new();
        'clause: for (sp, ec) in &shapes {
            for way in ways {
                let mut partial = vec![(sp.clone(), ec.clone())];
                for (b, opts) in way {
                    let mut grown = Vec::new();
                    for (s2, e2) in &partial {
                        for o in opts {
                            if grown.len() >= limit {
                                break;
                            }
                            let mut s3 = s2.clone();
                            s3.push(b.clone());
                            let mut e3 = e2.clone();
                            e3.push(*o);
                            grown.push((s3, e3));
                        }
                    }
                    partial = grown;
                }
                for x in partial {
                    if next.len() >= limit {
                        break 'clause;
                    }
                    next.push(x);
                }
            }
        }
        shapes = next;
    }

    let mut formulations = Vec::new();
    'all: for o in &orders {
        for (s, e) in &shapes {
            if formulations.len() >= limit {
                break 'all;
            }
            formulations.push(Formulation { order: o.clone(), clause_split: s.clone(), ec_choice: e.clone() });
        }
    }
    Enumeration { formulations, total }
}
