use num_traits::Zero;

use super::{PolyError, Polynomial};

/// Greatest common divisor in `Q[x_1..x_n]`, normalized (coprime integer
/// coefficients, positive leading term). `gcd(0, 0) = 0`.
///
/// Recursive primitive PRS on the greatest variable present.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let va = a.main_var().unwrap();
    let vb = b.main_var().unwrap();
    let v = va.max(vb);
    if !a.involves(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree(v) < q.degree(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = p.prem(&q, v);
        if r.is_zero() {
            break q;
        }
        if !r.involves(v) {
            break Polynomial::one(n);
        }
        p = q;
        q = primitive_in(&r, v);
    };
    (&c * &primitive_in(&g, v)).normalized()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Polynomial>, nvars: usize) -> Polynomial {
    let mut g = Polynomial::zero(nvars);
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Normalized gcd of the coefficients of `p` with respect to `v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    if !p.involves(v) {
        return p.normalized();
    }
    let coeffs = p.coeffs_in(v);
    gcd_many(coeffs.iter().filter(|c| !c.is_zero()), p.nvars())
}

/// Primitive part with respect to `v`, normalized.
pub fn primitive_in(p: &Polynomial, v: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Splits `p` into `(content, primitive)` with respect to `v` so that
/// `content * primitive == p` exactly; the primitive part is normalized and
/// the content carries every rational factor.
pub fn content_primitive(p: &Polynomial, v: usize) -> Result<(Polynomial, Polynomial), PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if v >= p.nvars() {
        return Err(PolyError::UnknownVariable(v));
    }
    let c = content_in(p, v);
    let prim = p.div_exact(&c).expect("content divides");
    let (r, prim) = prim.rational_content();
    Ok((c.scale(&r), prim))
}

/// Yun's squarefree factorization of a polynomial primitive in `v`:
/// returns `(a_1, a_2, ...)` with `p ~ a_1 * a_2^2 * ...`, each `a_i` squarefree
/// and pairwise coprime. Constant factors appear as `1`.
pub fn squarefree_decomposition(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let n = p.nvars();
    if !p.involves(v) {
        return vec![p.normalized()];
    }
    let dp = p.derivative(v);
    let c = gcd(p, &dp);
    let mut w = p.div_exact(&c).expect("gcd divides");
    let mut y = dp.div_exact(&c).expect("gcd divides");
    let mut z = &y - &w.derivative(v);
    let mut out = Vec::new();
    loop {
        if !w.involves(v) {
            break;
        }
        let g = gcd(&w, &z);
        out.push(g.clone());
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = &y - &w.derivative(v);
    }
    if out.is_empty() {
        out.push(Polynomial::one(n));
    }
    out
}

/// Squarefree part of a polynomial with respect to its main variable
/// (after removing the content in that variable).
pub fn squarefree_part(p: &Polynomial) -> Polynomial {
    match p.main_var() {
        None => Polynomial::one(p.nvars()),
        Some(v) => {
            let prim = primitive_in(p, v);
            let g = gcd(&prim, &prim.derivative(v));
            prim.div_exact(&g).expect("gcd divides").normalized()
        }
    }
}

pub(crate) fn is_nonzero_constant(p: &Polynomial) -> bool {
    p.constant_value().map(|c| !c.is_zero()).unwrap_or(false)
}
