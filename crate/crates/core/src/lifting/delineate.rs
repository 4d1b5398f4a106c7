//! Stacks over points where a projection polynomial vanishes identically.

use crate::polyarith::Polynomial;
use crate::realalg::{is_nullified_at, merged_roots, RealAlgebraic};

/// For `p` nullified over the point `pt`, polynomials whose common roots in
/// the next variable are exactly where the order of `p` along the fibre rises
/// above its minimum. These are the lowest-order partial derivatives in the
/// point's variables that do not vanish identically there. Empty when the
/// order is constant along the fibre.
pub(crate) fn delineating_set(p: &Polynomial, pt: &mut [RealAlgebraic]) -> Vec<Polynomial> {
    let k = pt.len();
    let mut layer = vec![p.clone()];
    loop {
        let mut next: Vec<Polynomial> = Vec::new();
        for q in &layer {
            for i in 0..k {
                let d = q.derivative(i).normalized();
                if !d.is_zero() && !next.contains(&d) {
                    next.push(d);
                }
            }
        }
        if next.is_empty() {
            return Vec::new();
        }
        let live: Vec<Polynomial> = next.iter().filter(|d| !is_nullified_at(d, pt)).cloned().collect();
        if !live.is_empty() {
            // a live derivative free of the next variable is a nonzero constant on the fibre
            if live.iter().any(|d| !d.involves(k)) {
                return Vec::new();
            }
            return live;
        }
        layer = next;
    }
}

/// Roots of the stack: every root of `polys`, and the common roots of each
/// group. Indices refer to `polys` followed by the group members.
pub(crate) fn stack_roots(
    polys: &[Polynomial],
    groups: &[Vec<Polynomial>],
    pt: &mut [RealAlgebraic],
) -> Result<Vec<(RealAlgebraic, Vec<usize>)>, usize> {
    let mut all = polys.to_vec();
    let mut owner: Vec<Option<usize>> = vec![None; polys.len()];
    for (gi, g) in groups.iter().enumerate() {
        all.extend(g.iter().cloned());
        owner.extend(std::iter::repeat(Some(gi)).take(g.len()));
    }
    let roots = merged_roots(&all, pt)?;
    Ok(roots
        .into_iter()
        .filter(|(_, idx)| {
            idx.iter().any(|&i| owner[i].is_none())
                || groups.iter().enumerate().any(|(gi, g)| idx.iter().filter(|&&i| owner[i] == Some(gi)).count() == g.len())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::VarOrder;

    #[test]
    fn order_jump_on_fibre() {
        let o = VarOrder::new(["x", "y", "z"]).unwrap();
        let r = Polynomial::parse("(y+x^2)*z + x^2*(x+y)", &o).unwrap();
        let mut origin = vec![RealAlgebraic::from_int(0), RealAlgebraic::from_int(0)];
        assert_eq!(delineating_set(&r, &mut origin), vec![Polynomial::parse("z+x^2", &o).unwrap()]);
        // order 1 all along the fibre over (1, -1)
        let mut other = vec![RealAlgebraic::from_int(1), RealAlgebraic::from_int(-1)];
        assert!(is_nullified_at(&r, &mut other));
        let d = delineating_set(&r, &mut other);
        assert_eq!(d.len(), 2);
        assert!(stack_roots(&[], &[d], &mut other).unwrap().is_empty());
    }

    #[test]
    fn groups_keep_common_roots_only() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let p = |s: &str| Polynomial::parse(s, &o).unwrap();
        let mut pt = vec![RealAlgebraic::from_int(0)];
        let roots = stack_roots(&[p("y-3")], &[vec![p("y^2-1"), p("y-1")]], &mut pt).unwrap();
        let vals: Vec<RealAlgebraic> = roots.into_iter().map(|(r, _)| r).collect();
        assert_eq!(vals, vec![RealAlgebraic::from_int(1), RealAlgebraic::from_int(3)]);
    }
}
