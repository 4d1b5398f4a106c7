use num_traits::{One, Zero};

use super::{PolyError, Polynomial, Rational};

/// Resultant with respect to `v`, equal to the Sylvester determinant.
///
/// Computed with the subresultant remainder sequence over `Q[other vars]`.
pub fn resultant(p: &Polynomial, q: &Polynomial, v: usize) -> Result<Polynomial, PolyError> {
    if p.degree(v) == 0 || q.degree(v) == 0 {
        return Err(PolyError::NotInMainVariable);
    }
    Ok(subresultant(p, q, v))
}

/// Like [`resultant`] but also defined when one input is free of `v`
/// (`res(p, c) = c^deg p` for `c` free of `v`).
pub fn resultant_general(p: &Polynomial, q: &Polynomial, v: usize) -> Polynomial {
    let n = p.nvars();
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero(n);
    }
    let (dp, dq) = (p.degree(v), q.degree(v));
    match (dp, dq) {
        (0, 0) => Polynomial::one(n),
        (0, _) => p.pow(dq),
        (_, 0) => q.pow(dp),
        _ => subresultant(p, q, v),
    }
}

fn subresultant(p: &Polynomial, q: &Polynomial, v: usize) -> Polynomial {
    let n = p.nvars();
    let mut a = p.clone();
    let mut b = q.clone();
    let mut s = Polynomial::one(n);
    if a.degree(v) < b.degree(v) {
        std::mem::swap(&mut a, &mut b);
        if a.degree(v) % 2 == 1 && b.degree(v) % 2 == 1 {
            s = -s;
        }
    }
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let da = a.degree(v);
        let db = b.degree(v);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.prem(&b, v);
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc(v);
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact")
        };
        if b.is_zero() {
            return Polynomial::zero(n);
        }
        if b.degree(v) == 0 {
            let da = a.degree(v);
            // h <- h^(1 - deg a) * lc(b)^deg a, with lc(b) = b
            let res = if da == 0 {
                h
            } else {
                b.pow(da).div_exact(&h.pow(da - 1)).expect("exact")
            };
            return &s * &res;
        }
    }
}

/// `(-1)^(d(d-1)/2) * res(p, dp/dv) / lc(p)` with `d = deg_v p >= 2`.
pub fn discriminant(p: &Polynomial, v: usize) -> Result<Polynomial, PolyError> {
    let d = p.degree(v);
    if d < 2 {
        return Err(PolyError::DegreeTooLow);
    }
    let r = subresultant(p, &p.derivative(v), v);
    let q = r.div_exact(&p.lc(v)).expect("leading coefficient divides resultant");
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(q.scale(&sign))
}

/// Sylvester matrix of `p` and `q` in `v` (coefficient polynomials).
pub fn sylvester_matrix(p: &Polynomial, q: &Polynomial, v: usize) -> Vec<Vec<Polynomial>> {
    let n = p.nvars();
    let (m, k) = (p.degree(v) as usize, q.degree(v) as usize);
    let size = m + k;
    let pc = p.coefficients(v);
    let qc = q.coefficients(v);
    let mut rows = Vec::with_capacity(size);
    for i in 0..k {
        let mut row = vec![Polynomial::zero(n); size];
        for (j, c) in pc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Polynomial::zero(n); size];
        for (j, c) in qc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
pub fn determinant(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let size = m.len();
    if size == 0 {
        return Polynomial::one(nvars);
    }
    let mut sign = Rational::one();
    let mut prev = Polynomial::one(nvars);
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    if sign.is_zero() {
        Polynomial::zero(nvars)
    } else {
        d.scale(&sign)
    }
}
