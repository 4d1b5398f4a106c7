use num_traits::{One, Signed, Zero};

use super::RealAlgebraic;
use crate::polyarith::{Polynomial, Rational};

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rational::one());
        }
        let lo_e = num_traits::pow(self.lo.clone(), e as usize);
        let hi_e = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 {
            return Interval { lo: lo_e, hi: hi_e };
        }
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: Rational::zero(), hi: lo_e.max(hi_e) }
        } else {
            Interval { lo: lo_e.clone().min(hi_e.clone()), hi: lo_e.max(hi_e) }
        }
    }
}

fn coord_interval(c: &RealAlgebraic) -> Interval {
    let (lo, hi) = c.interval();
    Interval { lo, hi }
}

/// Enclosure of `p` over the box of coordinate intervals.
pub(crate) fn interval_eval(p: &Polynomial, pt: &[RealAlgebraic]) -> Interval {
    let boxes: Vec<Option<Interval>> =
        (0..p.nvars()).map(|i| if i < pt.len() && p.involves(i) { Some(coord_interval(&pt[i])) } else { None }).collect();
    let mut acc = Interval::point(Rational::zero());
    for t in p.terms() {
        let mut term = Interval::point(Rational::one());
        for (i, &e) in t.exps.iter().enumerate() {
            if e > 0 {
                let b = boxes[i].as_ref().expect("polynomial involves a variable beyond the point");
                term = term.mul(&b.pow(e));
            }
        }
        acc = acc.add(&term.scale(&t.coeff));
    }
    acc
}
