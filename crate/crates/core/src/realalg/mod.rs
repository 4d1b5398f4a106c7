//! Real algebraic numbers, Sturm-based root isolation and exact sign
//! determination at sample points whose coordinates may be algebraic.
//!
//! A coordinate `x_k` of a sample point is either a rational or a root of a
//! polynomial in `x_1..x_k` specialized at the earlier coordinates. Zero tests
//! are exact (gcd over the coordinate tower); interval arithmetic is only used
//! to separate values already known to be nonzero.

mod interval;
pub mod upoly;

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::polyarith::{fmt_rational, squarefree_finest_basis, Polynomial, Rational, VarOrder};
use interval::{interval_eval, Interval};
use upoly::IsolatedRoot;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealAlgError {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial is not univariate")]
    NotUnivariate,
}

/// Irrational (or not yet recognised as rational) coordinate: the unique root
/// of `poly` in the open interval `(lo, hi)`.
///
/// `poly` has main variable `x_k` where `k` is the coordinate's position and
/// may involve earlier coordinates; at those coordinates its leading
/// coefficient is nonzero, it is squarefree and nonzero at both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgRoot {
    poly: Polynomial,
    lo: Rational,
    hi: Rational,
    sign_lo: i8,
}

impl AlgRoot {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    fn var(&self) -> usize {
        self.poly.main_var().expect("defining polynomial is not constant")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealAlgebraic {
    Rational(Rational),
    Root(AlgRoot),
}

impl RealAlgebraic {
    pub fn from_int(v: i64) -> Self {
        RealAlgebraic::Rational(Rational::from_integer(v.into()))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealAlgebraic::Rational(q) => Some(q),
            RealAlgebraic::Root(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlgebraic::Rational(_))
    }

    /// Isolating interval; degenerate for rationals.
    pub fn interval(&self) -> (Rational, Rational) {
        match self {
            RealAlgebraic::Rational(q) => (q.clone(), q.clone()),
            RealAlgebraic::Root(r) => (r.lo.clone(), r.hi.clone()),
        }
    }

    /// Defining polynomial in variable `var` of an `nvars`-variable ring.
    pub fn defpoly(&self, var: usize, nvars: usize) -> Polynomial {
        match self {
            RealAlgebraic::Rational(q) => {
                let d = q.denom().clone();
                let n = q.numer().clone();
                Polynomial::from_univariate(nvars, var, &[Rational::from_integer(-n), Rational::from_integer(d)])
            }
            RealAlgebraic::Root(r) => r.poly.clone(),
        }
    }

    /// `{"rational": q}` or `{"defpoly": .., "interval": [lo, hi]}` components,
    /// as strings.
    pub fn serialize_parts(&self, order: &VarOrder) -> SerializedValue {
        match self {
            RealAlgebraic::Rational(q) => SerializedValue::Rational(fmt_rational(q)),
            RealAlgebraic::Root(r) => SerializedValue::Algebraic {
                defpoly: r.poly.to_string_with(order),
                interval: (fmt_rational(&r.lo), fmt_rational(&r.hi)),
            },
        }
    }

    /// Floating point approximation (plots and diagnostics only).
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            RealAlgebraic::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            RealAlgebraic::Root(r) => ((&r.lo + &r.hi) / Rational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SerializedValue {
    Rational(String),
    Algebraic { defpoly: String, interval: (String, String) },
}

/// Point in `R^k`, coordinate `i` being the value of `x_(i+1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SamplePoint {
    pub coords: Vec<RealAlgebraic>,
}

impl SamplePoint {
    pub fn new(coords: Vec<RealAlgebraic>) -> Self {
        SamplePoint { coords }
    }

    pub fn rational(values: &[Rational]) -> Self {
        SamplePoint { coords: values.iter().cloned().map(RealAlgebraic::Rational).collect() }
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn extended(&self, c: RealAlgebraic) -> SamplePoint {
        let mut coords = self.coords.clone();
        coords.push(c);
        SamplePoint { coords }
    }

    /// Exact sign of `p` (involving only `x_1..x_k`) at this point.
    pub fn sign_of(&mut self, p: &Polynomial) -> i8 {
        sign_at_point(p, &mut self.coords)
    }

    pub fn is_zero(&mut self, p: &Polynomial) -> bool {
        is_zero_at(p, &mut self.coords)
    }

    /// Rational coordinates when every coordinate is rational.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|c| c.as_rational().cloned()).collect()
    }
}

/// Result of isolating the roots of `p(s, x_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootsAt {
    Roots(Vec<RealAlgebraic>),
    Nullified,
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

fn sign_of_rational(x: &Rational) -> i8 {
    upoly::sign(x)
}

/// Substitutes the rational coordinates of `pt` into `p`.
pub(crate) fn specialize(p: &Polynomial, pt: &[RealAlgebraic]) -> Polynomial {
    let mut q = p.clone();
    for (i, c) in pt.iter().enumerate() {
        if let RealAlgebraic::Rational(x) = c {
            if q.involves(i) {
                q = q.substitute(i, x);
            }
        }
    }
    q
}

/// Exact test `p(pt) == 0`; `p` may only involve variables below `pt.len()`.
pub(crate) fn is_zero_at(p: &Polynomial, pt: &mut [RealAlgebraic]) -> bool {
    let p = specialize(p, pt);
    let Some(v) = p.main_var() else { return p.is_zero() };
    assert!(v < pt.len(), "polynomial involves a variable beyond the point");
    let (prefix, rest) = pt.split_at_mut(v);
    let RealAlgebraic::Root(root) = &rest[0] else { unreachable!("rational coordinates were substituted") };
    let t = truncate_at(&p, v, prefix);
    if t.is_zero() {
        return true;
    }
    if t.degree(v) == 0 {
        return false;
    }
    let g = gcd_at(&root.poly, &t, v, prefix);
    if g.degree(v) == 0 {
        return false;
    }
    let (lo, hi) = (root.lo.clone(), root.hi.clone());
    let s_lo = sign_at_point(&g.substitute(v, &lo), prefix);
    let s_hi = sign_at_point(&g.substitute(v, &hi), prefix);
    s_lo * s_hi < 0
}

/// Exact sign of `p` at `pt`.
pub(crate) fn sign_at_point(p: &Polynomial, pt: &mut [RealAlgebraic]) -> i8 {
    let p = specialize(p, pt);
    if let Some(c) = p.constant_value() {
        return sign_of_rational(&c);
    }
    if is_zero_at(&p, pt) {
        return 0;
    }
    let involved: Vec<usize> = (0..pt.len()).filter(|&i| p.involves(i)).collect();
    loop {
        let iv = interval_eval(&p, pt);
        if iv.lo.is_positive() {
            return 1;
        }
        if iv.hi.is_negative() {
            return -1;
        }
        for &i in &involved {
            refine_coord(pt, i);
        }
    }
}

fn refine_coord(pt: &mut [RealAlgebraic], i: usize) {
    let (prefix, rest) = pt.split_at_mut(i);
    refine_value(prefix, &mut rest[0]);
}

/// Halves the isolating interval of a coordinate whose prefix is `prefix`.
fn refine_value(prefix: &mut [RealAlgebraic], c: &mut RealAlgebraic) {
    let RealAlgebraic::Root(r) = c else { return };
    let v = prefix.len();
    let m = (&r.lo + &r.hi) / two();
    let s = sign_at_point(&r.poly.substitute(v, &m), prefix);
    if s == 0 {
        *c = RealAlgebraic::Rational(m);
    } else if s == r.sign_lo {
        r.lo = m;
    } else {
        r.hi = m;
    }
}

/// Drops leading coefficients (in `x_v`) that vanish at `prefix`.
fn truncate_at(p: &Polynomial, v: usize, prefix: &mut [RealAlgebraic]) -> Polynomial {
    let mut coeffs = p.coeffs_in(v);
    while let Some(c) = coeffs.last() {
        if c.is_zero() || is_zero_at(c, prefix) {
            coeffs.pop();
        } else {
            break;
        }
    }
    if coeffs.len() == p.degree(v) as usize + 1 {
        return p.clone();
    }
    Polynomial::from_coeffs(p.nvars(), v, &coeffs)
}

/// Reduces the degree in every algebraic coordinate below that of its
/// defining polynomial. The value at the point is multiplied by a positive
/// factor.
fn reduce_tower(p: &Polynomial, prefix: &[RealAlgebraic]) -> Polynomial {
    let mut p = p.clone();
    for j in (0..prefix.len()).rev() {
        if let RealAlgebraic::Root(r) = &prefix[j] {
            if p.degree(j) >= r.poly.degree(j) {
                p = p.prem_even(&r.poly, j);
            }
        }
    }
    p
}

/// Gcd in `x_v` of `a(prefix, x_v)` and `b(prefix, x_v)`, returned with a
/// leading coefficient nonzero at `prefix`.
fn gcd_at(a: &Polynomial, b: &Polynomial, v: usize, prefix: &mut [RealAlgebraic]) -> Polynomial {
    let mut r0 = truncate_at(a, v, prefix);
    let mut r1 = truncate_at(b, v, prefix);
    if r0.degree(v) < r1.degree(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        if r1.is_zero() {
            return r0.positive_normalized();
        }
        if r1.degree(v) == 0 {
            return Polynomial::one(a.nvars());
        }
        let r = reduce_tower(&r0.prem_even(&r1, v), prefix);
        let r = truncate_at(&r, v, prefix);
        r0 = r1;
        r1 = r.positive_normalized();
    }
}

/// Isolates the distinct real roots of `p(pt, x_v)` with `v = pt.len()`.
pub(crate) fn isolate_at(p: &Polynomial, pt: &mut [RealAlgebraic]) -> RootsAt {
    let v = pt.len();
    let n = p.nvars();
    let p = specialize(p, pt);
    let t = truncate_at(&p, v, pt);
    if t.is_zero() {
        return RootsAt::Nullified;
    }
    if t.degree(v) == 0 {
        return RootsAt::Roots(Vec::new());
    }
    let t = reduce_tower(&t, pt).positive_normalized();
    if t.is_univariate_in(v) {
        return RootsAt::Roots(isolate_univariate(&t.univariate_coeffs(v), v, n));
    }
    let g = gcd_at(&t, &t.derivative(v), v, pt);
    let q = if g.degree(v) > 0 {
        let q = reduce_tower(&t.pquo(&g, v), pt);
        truncate_at(&q, v, pt).positive_normalized()
    } else {
        t
    };
    if q.is_univariate_in(v) {
        return RootsAt::Roots(isolate_univariate(&q.univariate_coeffs(v), v, n));
    }
    RootsAt::Roots(isolate_nested(&q, v, pt))
}

fn isolate_univariate(coeffs: &[Rational], v: usize, nvars: usize) -> Vec<RealAlgebraic> {
    let q = upoly::squarefree_part(coeffs);
    upoly::isolate(&q)
        .into_iter()
        .map(|r| match r {
            IsolatedRoot::Exact(x) => RealAlgebraic::Rational(x),
            IsolatedRoot::Interval(lo, hi) => {
                let sign_lo = upoly::sign_at(&q, &lo);
                RealAlgebraic::Root(AlgRoot { poly: Polynomial::from_univariate(nvars, v, &q), lo, hi, sign_lo })
            }
        })
        .collect()
}

/// Sturm bisection for a polynomial squarefree at `pt` whose coefficients
/// involve algebraic coordinates.
fn isolate_nested(q: &Polynomial, v: usize, pt: &mut [RealAlgebraic]) -> Vec<RealAlgebraic> {
    let chain = sturm_at(q, v, pt);
    let bound = root_bound_at(q, v, pt);
    let variations = |x: &Rational, pt: &mut [RealAlgebraic]| -> usize {
        upoly::variations(chain.iter().map(|s| sign_at_point(&s.substitute(v, x), pt)).collect::<Vec<_>>())
    };
    let lo = -bound.clone();
    let v_lo = variations(&lo, pt);
    let v_hi = variations(&bound, pt);
    let mut out: Vec<RealAlgebraic> = Vec::new();
    let mut work = vec![(lo, bound, v_lo, v_hi, false, false)];
    while let Some((a, b, va, vb, a_root, b_root)) = work.pop() {
        let count = va - vb - usize::from(b_root);
        if count == 0 {
            continue;
        }
        if count == 1 && !a_root && !b_root {
            let sign_lo = sign_at_point(&q.substitute(v, &a), pt);
            out.push(RealAlgebraic::Root(AlgRoot { poly: q.clone(), lo: a, hi: b, sign_lo }));
            continue;
        }
        let m = (&a + &b) / two();
        let vm = variations(&m, pt);
        let m_root = sign_at_point(&q.substitute(v, &m), pt) == 0;
        if m_root {
            out.push(RealAlgebraic::Rational(m.clone()));
        }
        work.push((m.clone(), b, vm, vb, m_root, b_root));
        work.push((a, m, va, vm, a_root, m_root));
    }
    out.sort_by(|x, y| x.interval().0.cmp(&y.interval().0));
    out
}

fn sturm_at(q: &Polynomial, v: usize, pt: &mut [RealAlgebraic]) -> Vec<Polynomial> {
    let mut chain = vec![q.clone(), q.derivative(v).positive_normalized()];
    loop {
        let k = chain.len();
        if chain[k - 1].degree(v) == 0 {
            break;
        }
        let r = reduce_tower(&chain[k - 2].prem_even(&chain[k - 1], v), pt);
        let r = truncate_at(&r, v, pt);
        if r.is_zero() {
            break;
        }
        chain.push((-r).positive_normalized());
    }
    chain
}

/// Power of two bounding all roots of `q(pt, x_v)`.
fn root_bound_at(q: &Polynomial, v: usize, pt: &mut [RealAlgebraic]) -> Rational {
    let coeffs = q.coeffs_in(v);
    let lc = coeffs.last().unwrap().clone();
    let involved: Vec<usize> = (0..pt.len()).filter(|&i| q.involves(i)).collect();
    let lc_iv = loop {
        let iv = interval_eval(&lc, pt);
        if iv.lo.is_positive() || iv.hi.is_negative() {
            break iv;
        }
        for &i in &involved {
            refine_coord(pt, i);
        }
    };
    let lc_min = lc_iv.lo.abs().min(lc_iv.hi.abs());
    let mut m = Rational::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        let iv: Interval = interval_eval(c, pt);
        let mag = iv.lo.abs().max(iv.hi.abs());
        let r = mag / &lc_min;
        if r > m {
            m = r;
        }
    }
    let cauchy = m + Rational::one();
    let mut b = Rational::one();
    while b <= cauchy {
        b *= two();
    }
    b
}

/// Exact order of two values of coordinate `prefix.len()`.
pub(crate) fn compare_at(prefix: &mut [RealAlgebraic], a: &mut RealAlgebraic, b: &mut RealAlgebraic) -> Ordering {
    match (&*a, &*b) {
        (RealAlgebraic::Rational(x), RealAlgebraic::Rational(y)) => x.cmp(y),
        (RealAlgebraic::Rational(x), RealAlgebraic::Root(_)) => {
            let x = x.clone();
            compare_rational(prefix, &x, b)
        }
        (RealAlgebraic::Root(_), RealAlgebraic::Rational(y)) => {
            let y = y.clone();
            compare_rational(prefix, &y, a).reverse()
        }
        (RealAlgebraic::Root(_), RealAlgebraic::Root(_)) => compare_roots(prefix, a, b),
    }
}

/// Order of the rational `x` relative to `c`; tightens `c`'s interval.
fn compare_rational(prefix: &mut [RealAlgebraic], x: &Rational, c: &mut RealAlgebraic) -> Ordering {
    let RealAlgebraic::Root(r) = c else {
        return x.cmp(c.as_rational().unwrap());
    };
    if *x <= r.lo {
        return Ordering::Less;
    }
    if *x >= r.hi {
        return Ordering::Greater;
    }
    let v = prefix.len();
    let s = sign_at_point(&r.poly.substitute(v, x), prefix);
    if s == 0 {
        *c = RealAlgebraic::Rational(x.clone());
        Ordering::Equal
    } else if s == r.sign_lo {
        r.lo = x.clone();
        Ordering::Less
    } else {
        r.hi = x.clone();
        Ordering::Greater
    }
}

fn compare_roots(prefix: &mut [RealAlgebraic], a: &mut RealAlgebraic, b: &mut RealAlgebraic) -> Ordering {
    let mut checked = false;
    loop {
        let (RealAlgebraic::Root(ra), RealAlgebraic::Root(rb)) = (&*a, &*b) else {
            return compare_at(prefix, a, b);
        };
        if ra.hi <= rb.lo {
            return Ordering::Less;
        }
        if rb.hi <= ra.lo {
            return Ordering::Greater;
        }
        if !checked {
            checked = true;
            if same_value(prefix, a, b) {
                return Ordering::Equal;
            }
        }
        refine_value(prefix, a);
        refine_value(prefix, b);
    }
}

/// True when the root `a` is the root of `b`'s polynomial isolated by `b`.
fn same_value(prefix: &mut [RealAlgebraic], a: &mut RealAlgebraic, b: &mut RealAlgebraic) -> bool {
    let RealAlgebraic::Root(rb) = &*b else { unreachable!() };
    let mut ext: Vec<RealAlgebraic> = prefix.to_vec();
    ext.push(a.clone());
    if !is_zero_at(&rb.poly, &mut ext) {
        return false;
    }
    let (lo, hi) = (rb.lo.clone(), rb.hi.clone());
    // a is a root of b's polynomial, so it differs from both endpoints
    compare_rational(prefix, &lo, a) == Ordering::Less && compare_rational(prefix, &hi, a) == Ordering::Greater
}

/// Distinct sorted roots of several polynomials at a point, each tagged with
/// the indices of the polynomials vanishing there. Returns the index of the
/// first nullified polynomial as an error.
pub(crate) fn merged_roots(polys: &[Polynomial], pt: &mut [RealAlgebraic]) -> Result<Vec<(RealAlgebraic, Vec<usize>)>, usize> {
    let mut out: Vec<(RealAlgebraic, Vec<usize>)> = Vec::new();
    for (pi, p) in polys.iter().enumerate() {
        let roots = match isolate_at(p, pt) {
            RootsAt::Nullified => return Err(pi),
            RootsAt::Roots(r) => r,
        };
        'roots: for mut r in roots {
            // insertion by binary search on exact order
            let (mut lo, mut hi) = (0usize, out.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                match compare_at(pt, &mut r, &mut out[mid].0) {
                    Ordering::Less => hi = mid,
                    Ordering::Greater => lo = mid + 1,
                    Ordering::Equal => {
                        out[mid].1.push(pi);
                        continue 'roots;
                    }
                }
            }
            out.insert(lo, (r, vec![pi]));
        }
    }
    Ok(out)
}

/// Rational strictly between two consecutive distinct values of coordinate
/// `prefix.len()`, preferring integers and then dyadics of small height.
pub(crate) fn sample_between(prefix: &mut [RealAlgebraic], a: &mut RealAlgebraic, b: &mut RealAlgebraic) -> Rational {
    let (lo, lo_incl, hi, hi_incl) = gap_between(prefix, a, b);
    simplest_between(&lo, lo_incl, &hi, hi_incl)
}

/// Refines `a < b` until a rational gap separates them; returns the gap's
/// ends with flags telling whether each end itself lies strictly between.
pub(crate) fn gap_between(
    prefix: &mut [RealAlgebraic],
    a: &mut RealAlgebraic,
    b: &mut RealAlgebraic,
) -> (Rational, bool, Rational, bool) {
    loop {
        let (lo, lo_incl) = upper_end(a);
        let (hi, hi_incl) = lower_end(b);
        if lo < hi || (lo == hi && lo_incl && hi_incl) {
            return (lo, lo_incl, hi, hi_incl);
        }
        refine_value(prefix, a);
        refine_value(prefix, b);
    }
}

/// True when every coefficient of `p` in `x_v`, `v = pt.len()`, vanishes at `pt`.
pub(crate) fn is_nullified_at(p: &Polynomial, pt: &mut [RealAlgebraic]) -> bool {
    let v = pt.len();
    let q = specialize(p, pt);
    truncate_at(&q, v, pt).is_zero()
}

/// Sample below every value: the largest integer below `a`.
pub(crate) fn sample_below(a: &RealAlgebraic) -> Rational {
    let (x, incl) = lower_end(a);
    let f = x.floor();
    if incl || f < x {
        f
    } else {
        f - Rational::one()
    }
}

/// Sample above every value: the smallest integer above `a`.
pub(crate) fn sample_above(a: &RealAlgebraic) -> Rational {
    let (x, incl) = upper_end(a);
    let c = x.ceil();
    if incl || c > x {
        c
    } else {
        c + Rational::one()
    }
}

/// Rational bound above the value; `true` if the bound itself lies above it.
pub(crate) fn upper_end(a: &RealAlgebraic) -> (Rational, bool) {
    match a {
        RealAlgebraic::Rational(x) => (x.clone(), false),
        RealAlgebraic::Root(r) => (r.hi.clone(), true),
    }
}

pub(crate) fn lower_end(a: &RealAlgebraic) -> (Rational, bool) {
    match a {
        RealAlgebraic::Rational(x) => (x.clone(), false),
        RealAlgebraic::Root(r) => (r.lo.clone(), true),
    }
}

fn simplest_between(lo: &Rational, lo_incl: bool, hi: &Rational, hi_incl: bool) -> Rational {
    let inside = |x: &Rational| (x > lo || (lo_incl && x == lo)) && (x < hi || (hi_incl && x == hi));
    let zero = Rational::zero();
    if inside(&zero) {
        return zero;
    }
    // the gap lies on one side of 0: take the grid point nearest to 0
    let positive = !lo.is_negative();
    let mut scale = Rational::one();
    loop {
        let cand = if positive {
            let c = (lo * &scale).floor() / &scale;
            if c < *lo || (c == *lo && !lo_incl) { c + scale.recip() } else { c }
        } else {
            let c = (hi * &scale).ceil() / &scale;
            if c > *hi || (c == *hi && !hi_incl) { c - scale.recip() } else { c }
        };
        if inside(&cand) {
            return cand;
        }
        scale *= two();
    }
}

// ---- univariate public interface ----

fn univariate_parts(p: &Polynomial) -> Result<(usize, Vec<Rational>), RealAlgError> {
    if p.is_zero() {
        return Err(RealAlgError::IdenticallyZero);
    }
    let Some(v) = p.main_var() else { return Err(RealAlgError::Constant) };
    if !p.is_univariate_in(v) {
        return Err(RealAlgError::NotUnivariate);
    }
    Ok((v, p.univariate_coeffs(v)))
}

/// Sturm sequence of a nonconstant univariate polynomial, each term scaled
/// by a positive rational to integer coefficients.
pub fn sturm_chain(p: &Polynomial) -> Result<Vec<Polynomial>, RealAlgError> {
    let (v, c) = univariate_parts(p)?;
    let n = p.nvars();
    let chain = upoly::sturm_chain(&upoly::positive_scaled(&c));
    Ok(chain.iter().map(|s| Polynomial::from_univariate(n, v, s)).collect())
}

/// Number of distinct real roots by Sturm's theorem.
pub fn sturm_root_count(p: &Polynomial) -> Result<usize, RealAlgError> {
    let (_, c) = univariate_parts(p)?;
    let chain = upoly::sturm_chain(&upoly::squarefree_part(&c));
    Ok(upoly::variations_at_infinity(&chain, false) - upoly::variations_at_infinity(&chain, true))
}

/// Distinct real roots of a univariate polynomial, ascending.
pub fn isolate_roots(p: &Polynomial) -> Result<Vec<RealAlgebraic>, RealAlgError> {
    if let Some(c) = p.constant_value() {
        return if c.is_zero() { Err(RealAlgError::IdenticallyZero) } else { Ok(Vec::new()) };
    }
    let (v, c) = univariate_parts(p)?;
    Ok(isolate_univariate(&c, v, p.nvars()))
}

/// Point on which a univariate value `a` of variable `v` can be queried.
fn standalone_point(a: &RealAlgebraic, v: usize) -> Vec<RealAlgebraic> {
    let mut pt = vec![RealAlgebraic::from_int(0); v];
    pt.push(a.clone());
    pt
}

fn value_var(a: &RealAlgebraic) -> Option<usize> {
    match a {
        RealAlgebraic::Root(r) => Some(r.var()),
        RealAlgebraic::Rational(_) => None,
    }
}

/// Exact sign of the univariate `g` at `a`.
pub fn sign_at(g: &Polynomial, a: &RealAlgebraic) -> i8 {
    if let Some(c) = g.constant_value() {
        return sign_of_rational(&c);
    }
    let gv = g.main_var().unwrap();
    assert!(g.is_univariate_in(gv), "sign_at expects a univariate polynomial");
    match a {
        RealAlgebraic::Rational(x) => sign_of_rational(&g.eval_univariate(gv, x)),
        RealAlgebraic::Root(r) => {
            let av = r.var();
            let g = align(g, gv, av, r.poly.nvars());
            let mut pt = standalone_point(a, av);
            sign_at_point(&g, &mut pt)
        }
    }
}

/// Renames the single variable `from` of a univariate polynomial to `to`.
fn align(g: &Polynomial, from: usize, to: usize, nvars: usize) -> Polynomial {
    let n = nvars.max(g.nvars()).max(to + 1);
    let g = if g.nvars() < n { g.extend_vars(n) } else { g.clone() };
    if from == to {
        return g;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(from, to);
    g.permute_vars(&perm, n)
}

fn align_value(a: &RealAlgebraic, to: usize, nvars: usize) -> RealAlgebraic {
    match a {
        RealAlgebraic::Rational(_) => a.clone(),
        RealAlgebraic::Root(r) => RealAlgebraic::Root(AlgRoot { poly: align(&r.poly, r.var(), to, nvars), ..r.clone() }),
    }
}

/// Exact order of two univariate real algebraic numbers.
pub fn compare(a: &RealAlgebraic, b: &RealAlgebraic) -> Ordering {
    let v = value_var(a).or(value_var(b)).unwrap_or(0);
    let n = [a, b]
        .iter()
        .filter_map(|x| match x {
            RealAlgebraic::Root(r) => Some(r.poly.nvars()),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let mut a = align_value(a, v, n);
    let mut b = align_value(b, v, n);
    let mut prefix = vec![RealAlgebraic::from_int(0); v];
    compare_at(&mut prefix, &mut a, &mut b)
}

/// Roots of `p(s, x_k)` where `k = s.level()`; `p` may involve `x_1..x_(k+1)`.
pub fn isolate_roots_at_point(p: &Polynomial, s: &mut SamplePoint) -> RootsAt {
    isolate_at(p, &mut s.coords)
}

/// Number of distinct real roots of the product of univariate polynomials.
pub fn ndrr<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> usize {
    let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_constant()).collect();
    let basis = squarefree_finest_basis(polys.iter().copied());
    let mut total = 0;
    for b in basis.iter() {
        total += sturm_root_count(b).expect("univariate polynomial");
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, o: &VarOrder) -> Polynomial {
        Polynomial::parse(s, o).unwrap()
    }

    fn q(s: &str) -> Rational {
        crate::polyarith::parse_rational(s).unwrap()
    }

    fn root_in(s: &str, o: &VarOrder, lo: &str, hi: &str) -> RealAlgebraic {
        isolate_roots(&p(s, o))
            .unwrap()
            .into_iter()
            .find(|r| {
                let (a, b) = r.interval();
                a >= q(lo) && b <= q(hi)
            })
            .expect("root in range")
    }

    #[test]
    fn sturm_chain_example() {
        let o = VarOrder::new(["x"]).unwrap();
        let c = sturm_chain(&p("x^2-2", &o)).unwrap();
        assert_eq!(c, vec![p("x^2-2", &o), p("x", &o), p("1", &o)]);
        assert_eq!(sturm_root_count(&p("x^2-2", &o)).unwrap(), 2);
        assert_eq!(sturm_root_count(&p("x^2+1", &o)).unwrap(), 0);
        assert_eq!(sturm_root_count(&p("x", &o)).unwrap(), 1);
        assert!(sturm_chain(&p("3", &o)).is_err());
    }

    #[test]
    fn isolation_examples() {
        let o = VarOrder::new(["x"]).unwrap();
        let r = isolate_roots(&p("x^2-4", &o)).unwrap();
        assert_eq!(r, vec![RealAlgebraic::from_int(-2), RealAlgebraic::from_int(2)]);
        assert_eq!(isolate_roots(&p("x^4-4*x^2+1", &o)).unwrap().len(), 4);
        assert!(isolate_roots(&p("x^2+1", &o)).unwrap().is_empty());
        assert_eq!(isolate_roots(&Polynomial::zero(1)), Err(RealAlgError::IdenticallyZero));
    }

    #[test]
    fn sign_and_compare_examples() {
        let o = VarOrder::new(["x"]).unwrap();
        let sqrt2 = root_in("x^2-2", &o, "0", "4");
        assert_eq!(sign_at(&p("x^2-2", &o), &sqrt2), 0);
        assert_eq!(sign_at(&p("x-3/2", &o), &sqrt2), -1);
        assert_eq!(sign_at(&p("x^2-3", &o), &RealAlgebraic::from_int(-2)), 1);
        let r32 = RealAlgebraic::Rational(q("3/2"));
        assert_eq!(compare(&sqrt2, &r32), Ordering::Less);
        assert_eq!(compare(&RealAlgebraic::from_int(-2), &RealAlgebraic::from_int(-2)), Ordering::Equal);
        let sqrt3 = root_in("x^2-3", &o, "0", "4");
        assert_eq!(compare(&sqrt3, &sqrt2), Ordering::Greater);
        let other_sqrt2 = root_in("x^4-4", &o, "0", "4");
        assert_eq!(compare(&other_sqrt2, &sqrt2), Ordering::Equal);
    }

    #[test]
    fn roots_at_points() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let circle = p("x^2+y^2-4", &o);
        let mut s = SamplePoint::rational(&[q("-3")]);
        assert_eq!(isolate_roots_at_point(&circle, &mut s), RootsAt::Roots(vec![]));
        let mut s = SamplePoint::rational(&[q("-2")]);
        assert_eq!(isolate_roots_at_point(&circle, &mut s), RootsAt::Roots(vec![RealAlgebraic::from_int(0)]));
        let o4 = VarOrder::new(["x", "y", "z", "w"]).unwrap();
        let mut s = SamplePoint::rational(&[q("0"), q("0"), q("0")]);
        assert_eq!(isolate_roots_at_point(&p("z*y - x^2*w", &o4), &mut s), RootsAt::Nullified);
    }

    #[test]
    fn nested_point_queries() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        // x = sqrt(2); circle x^2+y^2-4 has roots y = +-sqrt(2)
        let sqrt2 = root_in("x^2-2", &o, "0", "4");
        let mut s = SamplePoint::new(vec![sqrt2.clone()]);
        let RootsAt::Roots(r) = isolate_roots_at_point(&p("x^2+y^2-4", &o), &mut s) else { panic!() };
        assert_eq!(r.len(), 2);
        // hyperbola x*y - 1 at sqrt(2): y = 1/sqrt(2), a genuinely nested root
        let RootsAt::Roots(h) = isolate_roots_at_point(&p("x*y^2 - 1", &o), &mut s) else { panic!() };
        assert_eq!(h.len(), 2);
        let mut pt = s.extended(h[1].clone());
        assert_eq!(pt.sign_of(&p("x*y^2-1", &o)), 0);
        assert_eq!(pt.sign_of(&p("2*y^2*x - x*y^2 - 1", &o)), 0);
        assert_eq!(pt.sign_of(&p("y - x", &o)), -1);
        // y = 2^(-1/4), so y^4 = 1/2 while 2y > x
        assert_eq!(pt.sign_of(&p("2*y^4 - 1", &o)), 0);
        assert_eq!(pt.sign_of(&p("2*y - x", &o)), 1);
        assert_eq!(pt.sign_of(&p("y + x", &o)), 1);
    }

    #[test]
    fn nested_isolation_with_algebraic_coefficients() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let sqrt2 = root_in("x^2-2", &o, "0", "4");
        let mut s = SamplePoint::new(vec![sqrt2]);
        // roots of y^2 - x*y - 1 at x = sqrt2: (sqrt2 +- sqrt6)/2
        let RootsAt::Roots(r) = isolate_roots_at_point(&p("y^2 - x*y - 1", &o), &mut s) else { panic!() };
        assert_eq!(r.len(), 2);
        assert!((r[0].to_f64() + 0.5176).abs() < 0.1 || r[0].interval().0 < q("0"));
        // (y - x)^2 is a double root: squarefree reduction gives one root
        let RootsAt::Roots(d) = isolate_roots_at_point(&p("y^2 - 2*x*y + 2", &o), &mut s) else { panic!() };
        assert_eq!(d.len(), 1);
        let mut pt = s.extended(d[0].clone());
        assert_eq!(pt.sign_of(&p("y - x", &o)), 0);
        // nullified at x = sqrt2
        assert_eq!(isolate_roots_at_point(&p("(x^2-2)*y + x^2 - 2", &o), &mut s), RootsAt::Nullified);
    }

    #[test]
    fn merging_and_samples() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let mut pt: Vec<RealAlgebraic> = vec![RealAlgebraic::from_int(0)];
        let polys = vec![p("y^2-2", &o), p("y^2-y-2", &o), p("y-1", &o)];
        let mut m = merged_roots(&polys, &mut pt).unwrap();
        assert_eq!(m.len(), 5);
        // -sqrt2 < -1 < 1 < sqrt2 < 2
        assert_eq!(m[1].0, RealAlgebraic::from_int(-1));
        assert_eq!(m[2], (RealAlgebraic::from_int(1), vec![2]));
        let (a, b) = m.split_at_mut(1);
        let s = sample_between(&mut pt, &mut a[0].0, &mut b[0].0);
        assert_eq!(s, q("-5/4"));
        assert_eq!(sample_below(&m[0].0), q("-2"));
        assert_eq!(sample_above(&m[4].0), q("3"));
    }

    #[test]
    fn ndrr_examples() {
        let o = VarOrder::new(["x"]).unwrap();
        assert_eq!(ndrr(&[p("x^2+1", &o)]), 0);
        assert_eq!(ndrr(&[p("x^2-4", &o), p("x", &o), p("x^4-4*x^2+1", &o)]), 7);
        assert_eq!(ndrr(&[p("x^2-1", &o), p("x-1", &o)]), 2);
    }

    #[test]
    fn simplest_prefers_integers() {
        assert_eq!(simplest_between(&q("-3/2"), false, &q("5/2"), false), q("0"));
        assert_eq!(simplest_between(&q("3/2"), false, &q("7/2"), false), q("2"));
        assert_eq!(simplest_between(&q("1/3"), false, &q("2/3"), false), q("1/2"));
        assert_eq!(simplest_between(&q("-2/3"), false, &q("-1/3"), false), q("-1/2"));
        assert_eq!(simplest_between(&q("1"), true, &q("1"), true), q("1"));
        assert_eq!(simplest_between(&q("1"), false, &q("2"), false), q("3/2"));
    }
}
