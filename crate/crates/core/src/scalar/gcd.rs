//! Greatest common divisors and exact division in `Z[t, Q]`.
//!
//! The bivariate gcd views each polynomial as univariate in a main variable
//! with coefficients in `Z[y]` and runs the subresultant PRS there; contents
//! in `Z[y]` use a primitive PRS over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly, Var};

/// Dense univariate polynomial over `Z`, lowest degree first, no trailing zeros.
type UPoly = Vec<BigInt>;
/// Dense polynomial in a main variable with `UPoly` coefficients.
type RPoly = Vec<UPoly>;

fn u_trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn u_deg(a: &UPoly) -> usize {
    a.len().saturating_sub(1)
}

fn u_is_one(a: &UPoly) -> bool {
    a.len() == 1 && a[0].is_one()
}

fn u_add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => BigInt::zero(),
        })
        .collect();
    u_trim(&mut out);
    out
}

fn u_neg(a: &UPoly) -> UPoly {
    a.iter().map(|c| -c).collect()
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    u_add(a, &u_neg(b))
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(&mut out);
    out
}

fn u_scale(a: &UPoly, c: &BigInt) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x * c).collect();
    u_trim(&mut out);
    out
}

fn u_pow(a: &UPoly, e: usize) -> UPoly {
    let mut acc = vec![BigInt::one()];
    for _ in 0..e {
        acc = u_mul(&acc, a);
    }
    acc
}

fn int_content(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_scalar(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

/// Exact division over `Z`; `None` if `b` does not divide `a`.
fn u_div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = u_deg(b);
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = u_deg(&r);
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let s = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + s] -= &qc * c;
        }
        q[s] = qc;
        u_trim(&mut r);
    }
    if r.is_empty() {
        u_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = u_deg(b);
    if a.len() <= db {
        return a.clone();
    }
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = a.len() - db;
    while !r.is_empty() && r.len() > db {
        let dr = u_deg(&r);
        let lr = r[dr].clone();
        let s = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + s] -= &lr * c;
        }
        u_trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb, steps);
        r = u_scale(&r, &f);
    }
    r
}

fn u_primitive(a: &UPoly) -> UPoly {
    let c = int_content(a);
    if c.is_zero() || c.is_one() {
        return a.clone();
    }
    u_div_scalar(a, &c)
}

fn u_normalize_sign(a: UPoly) -> UPoly {
    match a.last() {
        Some(c) if c.is_negative() => u_neg(&a),
        _ => a,
    }
}

/// Gcd in `Z[y]`, with positive leading coefficient.
fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_normalize_sign(b.clone());
    }
    if b.is_empty() {
        return u_normalize_sign(a.clone());
    }
    let ca = int_content(a);
    let cb = int_content(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let (mut x, mut y) = (u_div_scalar(a, &ca), u_div_scalar(b, &cb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(_) = u_div_exact(&x, &y) {
        return u_normalize_sign(u_scale(&y, &c));
    }
    loop {
        let r = u_prem(&x, &y);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![c];
        }
        x = y;
        y = u_primitive(&r);
    }
    u_normalize_sign(u_scale(&y, &c))
}

fn r_trim(a: &mut RPoly) {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
}

fn r_content(a: &RPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        g = u_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn r_div_u_exact(a: &RPoly, c: &UPoly) -> RPoly {
    if u_is_one(c) {
        return a.clone();
    }
    a.iter()
        .map(|x| u_div_exact(x, c).expect("content division is exact"))
        .collect()
}

fn r_prem(a: &RPoly, b: &RPoly) -> RPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        return a.clone();
    }
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = a.len() - db;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        for c in r.iter_mut() {
            *c = u_mul(c, &lb);
        }
        for (i, c) in b.iter().enumerate() {
            r[i + s] = u_sub(&r[i + s], &u_mul(&lr, c));
        }
        r_trim(&mut r);
        steps -= 1;
    }
    if steps > 0 && !r.is_empty() {
        let f = u_pow(&lb, steps);
        for c in r.iter_mut() {
            *c = u_mul(c, &f);
        }
    }
    r
}

/// Exact division in `Z[y][x]`; `None` when `b` does not divide `a`.
fn r_div_exact(a: &RPoly, b: &RPoly) -> Option<RPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q: RPoly = vec![Vec::new(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let qc = u_div_exact(&r[dr], &b[db])?;
        let s = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + s] = u_sub(&r[i + s], &u_mul(&qc, c));
        }
        q[s] = qc;
        r_trim(&mut r);
    }
    if r.is_empty() {
        r_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Subresultant PRS gcd in `Z[y][x]`.
fn r_gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let (mut x, mut y) = if a.len() >= b.len() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let cx = r_content(&x);
    let cy = r_content(&y);
    let d = u_gcd(&cx, &cy);
    x = r_div_u_exact(&x, &cx);
    y = r_div_u_exact(&y, &cy);
    if y.len() == 1 {
        return vec![d];
    }
    if let Some(_) = r_div_exact(&x, &y) {
        return y.into_iter().map(|c| u_mul(&c, &d)).collect();
    }
    let mut g: UPoly = vec![BigInt::one()];
    let mut h: UPoly = vec![BigInt::one()];
    loop {
        let delta = x.len() - y.len();
        let r = r_prem(&x, &y);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![d];
        }
        x = y;
        let divisor = u_mul(&g, &u_pow(&h, delta));
        y = r_div_u_exact(&r, &divisor);
        g = x.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => u_div_exact(&u_pow(&g, delta), &u_pow(&h, delta - 1)).expect("subresultant h update is exact"),
        };
    }
    let cy = r_content(&y);
    let y = r_div_u_exact(&y, &cy);
    y.into_iter().map(|c| u_mul(&c, &d)).collect()
}

fn normalize_sign(p: Poly) -> Poly {
    if p.leading_sign() < 0 {
        p.neg()
    } else {
        p
    }
}

/// Gcd in `Z[t, Q]`, normalized to a positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    if a.is_one() || b.is_one() {
        return Poly::one();
    }
    let ca = a.content();
    let cb = b.content();
    let gc = ca.gcd(&cb);
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let gm = Monomial::new(ma.t.min(mb.t), ma.q.min(mb.q));
    let scale = Poly::monomial(gm, gc);
    let a1 = a.div_scalar_exact(&ca).div_monomial(ma);
    let b1 = b.div_scalar_exact(&cb).div_monomial(mb);
    if a1.is_constant() || b1.is_constant() {
        return scale;
    }
    if a1 == b1 || a1 == b1.neg() {
        return normalize_sign(a1.mul(&scale));
    }
    let main = choose_main(&a1, &b1);
    let da = a1.to_dense(main);
    let db = b1.to_dense(main);
    let g = r_gcd(&da, &db);
    let g = Poly::from_dense(main, &g);
    let g = g.div_scalar_exact(&g.content());
    normalize_sign(g.mul(&scale))
}

fn choose_main(a: &Poly, b: &Poly) -> Var {
    let t = a.degree_in(Var::T).min(b.degree_in(Var::T));
    let q = a.degree_in(Var::Q).min(b.degree_in(Var::Q));
    if t == 0 {
        Var::T
    } else if q == 0 {
        Var::Q
    } else if t <= q {
        Var::T
    } else {
        Var::Q
    }
}

/// Exact quotient `a / b` in `Z[t, Q]`, or `None` if `b` does not divide `a`.
pub fn div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(Poly::zero());
    }
    if b.is_one() {
        return Some(a.clone());
    }
    if let Some(c) = b.constant_value() {
        if a.terms().iter().all(|(_, x)| (x % &c).is_zero()) {
            return Some(a.div_scalar_exact(&c));
        }
        return None;
    }
    if b.len() == 1 {
        let (m, c) = &b.terms()[0];
        let ok = a
            .terms()
            .iter()
            .all(|(k, x)| k.t >= m.t && k.q >= m.q && (x % c).is_zero());
        return ok.then(|| a.div_monomial(*m).div_scalar_exact(c));
    }
    let main = Var::T;
    let q = r_div_exact(&a.to_dense(main), &b.to_dense(main))?;
    Some(Poly::from_dense(main, &q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(a, b, c)| (Monomial::new(a, b), BigInt::from(c))))
    }

    #[test]
    fn univariate_gcd() {
        // (1+y)(2-y) and (1+y)(3+y^2)
        let a = u_mul(&vec![1.into(), 1.into()], &vec![2.into(), (-1).into()]);
        let b = u_mul(&vec![1.into(), 1.into()], &vec![3.into(), 0.into(), 1.into()]);
        assert_eq!(u_gcd(&a, &b), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn bivariate_gcd_recovers_common_factor() {
        let f = p(&[(0, 0, 1), (0, 2, -2), (2, 4, -1), (0, 4, 1)]); // 1-2Q^2+(1-t^2)Q^4
        let g1 = p(&[(1, 0, 3), (0, 1, 1), (0, 0, -5)]);
        let g2 = p(&[(2, 1, 1), (0, 3, 7), (1, 0, 2)]);
        let a = f.mul(&g1).scale(&BigInt::from(6));
        let b = f.mul(&g2).scale(&BigInt::from(4));
        let g = gcd(&a, &b);
        assert_eq!(g, normalize_sign(f.scale(&BigInt::from(2))));
    }

    #[test]
    fn gcd_with_monomials_and_constants() {
        let a = p(&[(1, 2, 4), (0, 3, 6)]);
        let b = p(&[(0, 1, 2)]);
        assert_eq!(gcd(&a, &b), p(&[(0, 1, 2)]));
        assert_eq!(gcd(&a, &Poly::constant(3.into())), Poly::one());
    }

    #[test]
    fn exact_division() {
        let f = p(&[(0, 0, 1), (0, 2, 1)]);
        let g = p(&[(1, 0, 1), (0, 1, -3)]);
        let fg = f.mul(&g);
        assert_eq!(div_exact(&fg, &f), Some(g.clone()));
        assert_eq!(div_exact(&fg, &p(&[(0, 0, 1), (0, 1, 1)])), None);
    }
}
