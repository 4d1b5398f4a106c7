//! Dense univariate polynomials over Q (ascending coefficients) and Sturm-based
//! root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyarith::Rational;

pub type UPoly = Vec<Rational>;

pub fn trim(p: &mut UPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn sign_at(p: &[Rational], x: &Rational) -> i8 {
    sign(&eval(p, x))
}

pub fn derivative(p: &[Rational]) -> UPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect()
}

/// Euclidean remainder over Q.
pub fn rem(a: &[Rational], b: &[Rational]) -> UPoly {
    let db = degree(b).expect("division by zero");
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    let lb = &b[db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / lb;
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        r[dr] = Rational::zero();
        trim(&mut r);
    }
    r
}

/// Exact quotient over Q (remainder ignored).
pub fn quo(a: &[Rational], b: &[Rational]) -> UPoly {
    let db = degree(b).expect("division by zero");
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else { return Vec::new() };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![Rational::zero(); da - db + 1];
    let lb = &b[db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / lb;
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        r[dr] = Rational::zero();
        q[dr - db] = f;
        trim(&mut r);
    }
    q
}

/// Scales to coprime integer coefficients with a positive leading coefficient.
pub fn primitive(p: &[Rational]) -> UPoly {
    let mut out: UPoly = p.to_vec();
    trim(&mut out);
    if out.is_empty() {
        return out;
    }
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in &out {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    let mut f = Rational::new(l, g);
    if out.last().unwrap().is_negative() {
        f = -f;
    }
    for c in &mut out {
        *c = &*c * &f;
    }
    out
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> UPoly {
    let mut x = primitive(a);
    let mut y = primitive(b);
    while !y.is_empty() {
        let r = primitive(&rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

pub fn squarefree_part(p: &[Rational]) -> UPoly {
    let g = gcd(p, &derivative(p));
    primitive(&quo(p, &g))
}

/// Sturm sequence `p, p', -rem(p, p'), ...` (each term scaled by a positive rational).
pub fn sturm_chain(p: &[Rational]) -> Vec<UPoly> {
    let p0 = primitive(p);
    let p1 = primitive(&derivative(&p0));
    let mut chain = vec![p0, p1];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        if degree(&chain[n - 1]) == Some(0) {
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(positive_scaled(&r.iter().map(|c| -c).collect::<UPoly>()));
    }
    chain
}

/// Like [`primitive`] but keeps the sign of every coefficient.
pub fn positive_scaled(p: &[Rational]) -> UPoly {
    let q = primitive(p);
    match degree(p) {
        Some(d) if p[d].is_negative() => q.iter().map(|c| -c).collect(),
        _ => q,
    }
}

pub fn variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn variations_at(chain: &[UPoly], x: &Rational) -> usize {
    variations(chain.iter().map(|p| sign_at(p, x)))
}

pub fn variations_at_infinity(chain: &[UPoly], positive: bool) -> usize {
    variations(chain.iter().map(|p| {
        let d = degree(p).unwrap_or(0);
        let s = sign(&p[d]);
        if !positive && d % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Power of two strictly greater than the absolute value of every root.
pub fn root_bound(p: &[Rational]) -> Rational {
    let d = degree(p).expect("nonzero polynomial");
    let lc = p[d].abs();
    let mut m = Rational::zero();
    for c in &p[..d] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    let cauchy = m + Rational::one();
    let mut b = Rational::one();
    while b <= cauchy {
        b = b * Rational::from_integer(2.into());
    }
    b
}

/// An isolated real root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolatedRoot {
    Exact(Rational),
    /// Root in the open interval, polynomial nonzero at both ends.
    Interval(Rational, Rational),
}

/// Isolates the distinct real roots of `p` (any nonzero polynomial), ascending.
/// Rational roots are always reported exactly.
pub fn isolate(p: &[Rational]) -> Vec<IsolatedRoot> {
    let mut p = p.to_vec();
    trim(&mut p);
    match degree(&p) {
        None | Some(0) => return Vec::new(),
        _ => {}
    }
    let q = squarefree_part(&p);
    let chain = sturm_chain(&q);
    let b = root_bound(&q);
    let mut out = Vec::new();
    let lo = -b.clone();
    let v_lo = variations_at(&chain, &lo);
    let v_hi = variations_at(&chain, &b);
    // stack of (a, b, V(a), V(b), b_is_root)
    let mut work = vec![(lo, b, v_lo, v_hi, false, false)];
    while let Some((a, bb, va, vb, a_root, b_root)) = work.pop() {
        let count = va - vb - usize::from(b_root);
        if count == 0 {
            continue;
        }
        if count == 1 && !a_root && !b_root {
            out.push(IsolatedRoot::Interval(a, bb));
            continue;
        }
        let m = (&a + &bb) / Rational::from_integer(2.into());
        let vm = variations_at(&chain, &m);
        let m_root = sign_at(&q, &m) == 0;
        if m_root {
            out.push(IsolatedRoot::Exact(m.clone()));
        }
        // push right half first so the left half is processed first
        work.push((m.clone(), bb, vm, vb, m_root, b_root));
        work.push((a, m, va, vm, a_root, m_root));
    }
    out.sort_by(|x, y| lower(x).cmp(lower(y)));
    let lc_abs = q[degree(&q).unwrap()].abs();
    out.into_iter().map(|r| detect_rational(&q, r, &lc_abs)).collect()
}

fn lower(r: &IsolatedRoot) -> &Rational {
    match r {
        IsolatedRoot::Exact(x) => x,
        IsolatedRoot::Interval(a, _) => a,
    }
}

/// Bisects an isolating interval once; returns the new root description.
pub fn refine_once(q: &[Rational], a: &Rational, b: &Rational) -> IsolatedRoot {
    let m = (a + b) / Rational::from_integer(2.into());
    let sm = sign_at(q, &m);
    if sm == 0 {
        return IsolatedRoot::Exact(m);
    }
    if sm == sign_at(q, a) {
        IsolatedRoot::Interval(m, b.clone())
    } else {
        IsolatedRoot::Interval(a.clone(), m)
    }
}

/// A rational root `r/s` of an integer polynomial has `s | lc`, so it is a
/// multiple of `1/|lc|`; once the interval is narrower than that, at most one
/// candidate remains.
fn detect_rational(q: &[Rational], r: IsolatedRoot, lc_abs: &Rational) -> IsolatedRoot {
    let (mut a, mut b) = match r {
        IsolatedRoot::Exact(_) => return r,
        IsolatedRoot::Interval(a, b) => (a, b),
    };
    let step = lc_abs.recip();
    while &b - &a >= step {
        match refine_once(q, &a, &b) {
            IsolatedRoot::Exact(x) => return IsolatedRoot::Exact(x),
            IsolatedRoot::Interval(x, y) => {
                a = x;
                b = y;
            }
        }
    }
    let k = (&a * lc_abs).floor() + Rational::one();
    let cand = k / lc_abs;
    if cand > a && cand < b && sign_at(q, &cand) == 0 {
        IsolatedRoot::Exact(cand)
    } else {
        IsolatedRoot::Interval(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> UPoly {
        v.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }

    #[test]
    fn sturm_of_x2_minus_2() {
        let chain = sturm_chain(&q(&[-2, 0, 1]));
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[1], q(&[0, 1]));
        assert_eq!(variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true), 2);
    }

    #[test]
    fn isolate_finds_exact_rationals() {
        let r = isolate(&q(&[-4, 0, 1]));
        assert_eq!(r, vec![IsolatedRoot::Exact(Rational::from_integer((-2).into())), IsolatedRoot::Exact(Rational::from_integer(2.into()))]);
        // 3x - 1 has the non-dyadic root 1/3
        let r = isolate(&q(&[-1, 3]));
        assert_eq!(r, vec![IsolatedRoot::Exact(Rational::new(1.into(), 3.into()))]);
        assert!(isolate(&q(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn isolates_quartic() {
        let r = isolate(&q(&[1, 0, -4, 0, 1]));
        assert_eq!(r.len(), 4);
        for root in &r {
            match root {
                IsolatedRoot::Interval(a, b) => assert!(sign_at(&q(&[1, 0, -4, 0, 1]), a) * sign_at(&q(&[1, 0, -4, 0, 1]), b) < 0),
                IsolatedRoot::Exact(_) => panic!("irrational roots"),
            }
        }
    }
}
