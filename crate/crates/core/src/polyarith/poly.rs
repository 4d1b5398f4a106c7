use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, VarOrder};

pub type Rational = BigRational;

/// Exponent vector, one entry per variable of the order (index 0 is x_1).
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exps: Monomial,
    pub coeff: Rational,
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in descending lexicographic order with the highest
/// variable most significant, so two equal polynomials always have identical
/// term vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Term>,
}

pub(crate) fn cmp_monomial(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| {
            for (a, b) in self.terms.iter().zip(other.terms.iter()) {
                let o = cmp_monomial(&a.exps, &b.exps).then_with(|| a.coeff.cmp(&b.coeff));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.terms.len().cmp(&other.terms.len())
        })
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![Term { exps: vec![0; nvars], coeff: c }] }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    /// The polynomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, i, 1, Rational::one())
    }

    /// `c * x_i^e`.
    pub fn monomial(nvars: usize, i: usize, e: u32, c: Rational) -> Self {
        assert!(i < nvars, "variable index out of range");
        if c.is_zero() {
            return Self::zero(nvars);
        }
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Polynomial { nvars, terms: vec![Term { exps, coeff: c }] }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: HashMap<Monomial, Rational> = HashMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            *map.entry(exps).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, map: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Term { exps, coeff })
            .collect();
        terms.sort_by(|a, b| cmp_monomial(&b.exps, &a.exps));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].exps.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].coeff.is_one()
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].coeff.clone())
        } else {
            None
        }
    }

    /// Leading term coefficient under the internal term order.
    pub fn leading_coeff_rational(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn leading_monomial(&self) -> Option<&[u32]> {
        self.terms.first().map(|t| t.exps.as_slice())
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.exps[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exps.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.exps[var] > 0)
    }

    /// Greatest variable present, `None` for constants.
    pub fn main_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.involves(v))
    }

    /// Level in the sense of CAD: 0 for constants, `k` when the main variable is `x_k`.
    pub fn level(&self) -> usize {
        self.main_var().map_or(0, |v| v + 1)
    }

    pub fn is_univariate_in(&self, var: usize) -> bool {
        self.terms.iter().all(|t| t.exps.iter().enumerate().all(|(i, &e)| i == var || e == 0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|t| Term { exps: t.exps.clone(), coeff: &t.coeff * c }).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `x_var^e`.
    pub fn shift(&self, var: usize, e: u32) -> Self {
        if e == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        for t in &mut terms {
            t.exps[var] += e;
        }
        // shifting one variable keeps the lexicographic order intact
        Polynomial { nvars: self.nvars, terms }
    }

    /// Coefficients in `var`, indexed by degree (ascending).
    pub fn coeffs_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree(var) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); d + 1];
        for t in &self.terms {
            let e = t.exps[var] as usize;
            let mut exps = t.exps.clone();
            exps[var] = 0;
            buckets[e].push(Term { exps, coeff: t.coeff.clone() });
        }
        buckets
            .into_iter()
            .map(|mut terms| {
                terms.sort_by(|a, b| cmp_monomial(&b.exps, &a.exps));
                Polynomial { nvars: self.nvars, terms }
            })
            .collect()
    }

    /// Coefficients of `var^d, var^(d-1), ..., var^0`, leading first.
    pub fn coefficients(&self, var: usize) -> Vec<Polynomial> {
        let mut c = self.coeffs_in(var);
        c.reverse();
        c
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for t in &c.terms {
                debug_assert_eq!(t.exps[var], 0);
                let mut exps = t.exps.clone();
                exps[var] = e as u32;
                terms.push(Term { exps, coeff: t.coeff.clone() });
            }
        }
        terms.sort_by(|a, b| cmp_monomial(&b.exps, &a.exps));
        Polynomial { nvars, terms }
    }

    /// Leading coefficient with respect to `var`.
    pub fn lc(&self, var: usize) -> Polynomial {
        let d = self.degree(var);
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter(|t| t.exps[var] == d)
            .map(|t| {
                let mut exps = t.exps.clone();
                exps[var] = 0;
                Term { exps, coeff: t.coeff.clone() }
            })
            .collect();
        let mut p = Polynomial { nvars: self.nvars, terms };
        p.terms.sort_by(|a, b| cmp_monomial(&b.exps, &a.exps));
        p
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|t| t.exps[var] > 0).map(|t| {
            let mut exps = t.exps.clone();
            let e = exps[var];
            exps[var] -= 1;
            (exps, &t.coeff * Rational::from_integer(BigInt::from(e)))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Substitutes the rational value `v` for `x_var`.
    pub fn substitute(&self, var: usize, v: &Rational) -> Self {
        if !self.involves(var) {
            return self.clone();
        }
        let d = self.degree(var) as usize;
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Rational::one());
        for i in 1..=d {
            let next = &powers[i - 1] * v;
            powers.push(next);
        }
        let terms = self.terms.iter().map(|t| {
            let mut exps = t.exps.clone();
            let e = exps[var] as usize;
            exps[var] = 0;
            (exps, &t.coeff * &powers[e])
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Substitutes several variables at once.
    pub fn substitute_many(&self, values: &[(usize, Rational)]) -> Self {
        values.iter().fold(self.clone(), |p, (var, v)| p.substitute(*var, v))
    }

    /// Evaluates at a point giving a value for every variable.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Evaluates a univariate polynomial in `var` at `v`, panicking otherwise.
    pub fn eval_univariate(&self, var: usize, v: &Rational) -> Rational {
        let c = self.coeffs_in(var);
        let mut acc = Rational::zero();
        for coeff in c.iter().rev() {
            acc = acc * v + coeff.constant_value().expect("not univariate");
        }
        acc
    }

    /// Dense coefficient list of a polynomial univariate in `var` (ascending).
    pub fn univariate_coeffs(&self, var: usize) -> Vec<Rational> {
        self.coeffs_in(var).iter().map(|c| c.constant_value().expect("not univariate")).collect()
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Rational]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(e, c)| {
            let mut exps = vec![0; nvars];
            exps[var] = e as u32;
            (exps, c.clone())
        });
        Self::from_terms(nvars, terms)
    }

    /// Moves a polynomial to an order with more (or the same) variables, keeping indices.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exps = t.exps.clone();
                exps.resize(nvars, 0);
                Term { exps, coeff: t.coeff.clone() }
            })
            .collect();
        Polynomial { nvars, terms }
    }

    /// Renames variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize], nvars: usize) -> Self {
        let terms = self.terms.iter().map(|t| {
            let mut exps = vec![0; nvars];
            for (i, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    exps[perm[i]] = e;
                }
            }
            (exps, t.coeff.clone())
        });
        Self::from_terms(nvars, terms)
    }

    /// Splits off the rational content: returns `(c, q)` with `self = c * q`,
    /// `q` having coprime integer coefficients and a positive leading term.
    pub fn rational_content(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for t in &self.terms {
            num_gcd = num_gcd.gcd(t.coeff.numer());
            den_lcm = den_lcm.lcm(t.coeff.denom());
        }
        let mut c = Rational::new(num_gcd, den_lcm);
        if self.terms[0].coeff.is_negative() {
            c = -c;
        }
        let q = Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|t| Term { exps: t.exps.clone(), coeff: &t.coeff / &c }).collect(),
        };
        (c, q)
    }

    /// Canonical representative up to a nonzero rational multiple.
    pub fn normalized(&self) -> Polynomial {
        self.rational_content().1
    }

    /// Scales by a positive rational so the coefficients are coprime integers.
    /// The sign is preserved, unlike [`normalized`](Self::normalized).
    pub fn positive_normalized(&self) -> Polynomial {
        let (c, q) = self.rational_content();
        if c.is_negative() {
            -q
        } else {
            q
        }
    }

    /// True when `self = c * other` for a nonzero rational `c`.
    pub fn same_up_to_constant(&self, other: &Polynomial) -> bool {
        self.normalized() == other.normalized()
    }

    /// Integer coefficients of a polynomial already in normalized form.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.terms.iter().map(|t| if t.coeff.is_integer() { Some(t.coeff.to_integer()) } else { None }).collect()
    }

    /// Pseudo-remainder: `lc_var(b)^(deg a - deg b + 1) * a = q*b + r`.
    pub fn prem(&self, b: &Polynomial, var: usize) -> Polynomial {
        self.pseudo_division(b, var, false).1
    }

    /// Pseudo-quotient matching [`prem`](Self::prem).
    pub fn pquo(&self, b: &Polynomial, var: usize) -> Polynomial {
        self.pseudo_division(b, var, false).0
    }

    /// Pseudo-remainder scaled by an even power of `lc_var(b)`, so its sign at any
    /// point where the leading coefficient is nonzero agrees with the true remainder.
    pub fn prem_even(&self, b: &Polynomial, var: usize) -> Polynomial {
        self.pseudo_division(b, var, true).1
    }

    fn pseudo_division(&self, b: &Polynomial, var: usize, even: bool) -> (Polynomial, Polynomial) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.degree(var);
        let da = self.degree(var);
        if self.is_zero() || da < db {
            return (Polynomial::zero(self.nvars), self.clone());
        }
        let lcb = b.lc(var);
        let mut e = da - db + 1;
        if even && e % 2 == 1 {
            e += 1;
        }
        let mut q = Polynomial::zero(self.nvars);
        let mut r = self.clone();
        while !r.is_zero() && r.degree(var) >= db {
            let dr = r.degree(var);
            let t = r.lc(var).shift(var, dr - db);
            q = &(&q * &lcb) + &t;
            r = &(&r * &lcb) - &(&t * b);
            e -= 1;
        }
        if e > 0 {
            let f = lcb.pow(e);
            q = &q * &f;
            r = &r * &f;
        }
        (q, r)
    }

    /// Exact division; `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Polynomial) -> Option<Polynomial> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = b.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let lt_b = &b.terms[0];
        let mut q: HashMap<Monomial, Rational> = HashMap::new();
        let mut r = self.clone();
        while !r.is_zero() {
            let lt_r = &r.terms[0];
            if lt_r.exps.iter().zip(lt_b.exps.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let exps: Monomial = lt_r.exps.iter().zip(lt_b.exps.iter()).map(|(a, b)| a - b).collect();
            let coeff = &lt_r.coeff / &lt_b.coeff;
            let t = Polynomial { nvars: self.nvars, terms: vec![Term { exps: exps.clone(), coeff: coeff.clone() }] };
            r = &r - &(&t * b);
            *q.entry(exps).or_insert_with(Rational::zero) += coeff;
        }
        Some(Polynomial::from_map(self.nvars, q))
    }

    /// Sum of the total degrees of all monomials.
    pub fn sum_of_total_degrees(&self) -> u64 {
        self.terms.iter().map(|t| t.exps.iter().map(|&e| e as u64).sum::<u64>()).sum()
    }

    pub fn display<'a>(&'a self, order: &'a VarOrder) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names: order.names() }
    }

    pub fn to_string_with(&self, order: &VarOrder) -> String {
        self.display(order).to_string()
    }

    pub fn parse(src: &str, order: &VarOrder) -> Result<Polynomial, PolyError> {
        super::parse::parse_polynomial(src, order)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match cmp_monomial(&self.terms[i].exps, &rhs.terms[j].exps) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + &rhs.terms[j].coeff;
                    if !c.is_zero() {
                        out.push(Term { exps: self.terms[i].exps.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|t| Term { exps: t.exps.clone(), coeff: -&t.coeff }).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut map: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let exps: Monomial = a.exps.iter().zip(b.exps.iter()).map(|(x, y)| x + y).collect();
                *map.entry(exps).or_insert_with(Rational::zero) += &a.coeff * &b.coeff;
            }
        }
        Polynomial::from_map(self.nvars, map)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.poly.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for i in 0..t.exps.len() {
                match t.exps[i] {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    e => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            let cstr = fmt_rational(&abs);
            if factors.is_empty() {
                write!(f, "{}", cstr)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", cstr, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
