use super::gcd::{content_primitive, gcd, squarefree_decomposition};
use super::Polynomial;

/// Pairwise coprime, squarefree polynomials, each primitive in its main
/// variable, together with the non-constant contents stripped on the way.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Basis {
    pub polys: Vec<Polynomial>,
    pub contents: Vec<Polynomial>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Polynomial> {
        self.polys.iter()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        let n = p.normalized();
        self.polys.iter().any(|q| *q == n)
    }

    /// Elements whose main variable is `v`.
    pub fn with_main_var(&self, v: usize) -> Vec<Polynomial> {
        self.polys.iter().filter(|p| p.main_var() == Some(v)).cloned().collect()
    }

    /// Elements dividing `p`.
    pub fn divisors_of(&self, p: &Polynomial) -> Vec<Polynomial> {
        self.polys.iter().filter(|b| p.div_exact(b).is_some()).cloned().collect()
    }
}

/// Squarefree decomposition of each primitive part followed by pairwise-gcd
/// refinement until the set is coprime. Constants are dropped; non-constant
/// contents (taken in each polynomial's own main variable) are returned
/// separately.
pub fn squarefree_finest_basis<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Basis {
    let mut contents: Vec<Polynomial> = Vec::new();
    let mut pieces: Vec<Polynomial> = Vec::new();
    for p in polys {
        let Some(v) = p.main_var() else { continue };
        let (c, prim) = content_primitive(p, v).expect("non-constant");
        if !c.is_constant() {
            push_unique(&mut contents, c.normalized());
        }
        for f in squarefree_decomposition(&prim, v) {
            if !f.is_constant() {
                push_unique(&mut pieces, f.normalized());
            }
        }
    }
    Basis { polys: coprime_refine(pieces), contents: sorted(contents) }
}

fn push_unique(v: &mut Vec<Polynomial>, p: Polynomial) {
    if !v.contains(&p) {
        v.push(p);
    }
}

fn sorted(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
    v.sort();
    v
}

/// Refines squarefree polynomials into a pairwise coprime set with the same
/// squarefree product.
pub fn coprime_refine(mut work: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut done: Vec<Polynomial> = Vec::new();
    'outer: while let Some(a) = work.pop() {
        for i in 0..done.len() {
            let g = gcd(&a, &done[i]);
            if g.is_constant() {
                continue;
            }
            let b = done.swap_remove(i);
            for q in [a.div_exact(&g).expect("gcd divides"), b.div_exact(&g).expect("gcd divides"), g] {
                let q = q.normalized();
                if !q.is_constant() && !work.contains(&q) && !done.contains(&q) {
                    work.push(q);
                }
            }
            continue 'outer;
        }
        done.push(a);
    }
    done.sort();
    done
}
