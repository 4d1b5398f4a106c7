//! Text grammar for polynomials: rational literals, variable names, `+ - * / ^`
//! and parentheses. Division is only allowed by constants.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, Polynomial, Rational, VarOrder};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    order: &'a VarOrder,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .constant_value()
                    .ok_or_else(|| PolyError::Parse("division by a non-constant".into()))?;
                if c.is_zero() {
                    return Err(PolyError::Parse("division by zero".into()));
                }
                acc = acc.scale(&c.recip());
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Op('('))) {
                // juxtaposition, e.g. `2x` or `x(y+1)`
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(PolyError::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let n = self.order.len();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(n, Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .order
                    .index_of(&name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable '{}'", name)))?;
                Ok(Polynomial::var(n, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(PolyError::Parse(format!("unexpected token {:?}", t))),
            None => Err(PolyError::Parse("unexpected end of input".into())),
        }
    }
}

pub(crate) fn parse_polynomial(src: &str, order: &VarOrder) -> Result<Polynomial, PolyError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, order };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parses a rational literal such as `-3`, `7/4` or `0`.
pub fn parse_rational(src: &str) -> Result<Rational, PolyError> {
    let s = src.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let bad = || PolyError::Parse(format!("bad rational '{}'", src));
    let v = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(body.parse().map_err(|_| bad())?),
    };
    Ok(if neg { -v } else { v })
}
