//! Sparse bivariate polynomials with integer coefficients in `t` and `Q`.
//!
//! Terms are kept strictly descending under the graded lexicographic order
//! with `t > Q`, with no zero coefficients, so structural equality is
//! polynomial equality.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent pair of a monomial `t^t * Q^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub t: u32,
    pub q: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, q: 0 };

    pub fn new(t: u32, q: u32) -> Self {
        Monomial { t, q }
    }

    pub fn degree(self) -> u32 {
        self.t + self.q
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.t + other.t, self.q + other.q)
    }

    fn divides(self, other: Monomial) -> bool {
        self.t <= other.t && self.q <= other.q
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.t.cmp(&other.t))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which indeterminate is treated as the main variable in recursive views.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::T => Poly::monomial(Monomial::new(1, 0), BigInt::one()),
            Var::Q => Poly::monomial(Monomial::new(0, 1), BigInt::one()),
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut v: Vec<(Monomial, BigInt)> = terms.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| match v {
                Var::T => m.t,
                Var::Q => m.q,
            })
            .max()
            .unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, (m, _)| Monomial::new(acc.t.min(m.t), acc.q.min(m.q)))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| {
                    debug_assert!((x % c).is_zero());
                    (*m, x / c)
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Divides by a monomial dividing every term.
    pub fn div_monomial(&self, m: Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    debug_assert!(m.divides(*k));
                    (Monomial::new(k.t - m.t, k.q - m.q), c.clone())
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Poly {
                terms: self.terms.iter().map(|(k, x)| (k.mul(*m), x * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let dt = (self.degree_in(Var::T) + other.degree_in(Var::T) + 1) as usize;
        let dq = (self.degree_in(Var::Q) + other.degree_in(Var::Q) + 1) as usize;
        let mut buf = vec![BigInt::zero(); dt * dq];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let idx = (ma.t + mb.t) as usize * dq + (ma.q + mb.q) as usize;
                buf[idx] += ca * cb;
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> = buf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::new((i / dq) as u32, (i % dq) as u32), c))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn deriv(&self, v: Var) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| match v {
            Var::T if m.t > 0 => Some((Monomial::new(m.t - 1, m.q), c * BigInt::from(m.t))),
            Var::Q if m.q > 0 => Some((Monomial::new(m.t, m.q - 1), c * BigInt::from(m.q))),
            _ => None,
        });
        Poly::from_terms(terms)
    }

    /// `-1` if the leading coefficient is negative, `1` otherwise.
    pub fn leading_sign(&self) -> i32 {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => -1,
            _ => 1,
        }
    }

    /// Dense recursive view: `out[i][j]` is the coefficient of `main^i other^j`.
    pub fn to_dense(&self, main: Var) -> Vec<Vec<BigInt>> {
        let (dm, do_) = match main {
            Var::T => (self.degree_in(Var::T), self.degree_in(Var::Q)),
            Var::Q => (self.degree_in(Var::Q), self.degree_in(Var::T)),
        };
        let mut out = vec![vec![BigInt::zero(); do_ as usize + 1]; dm as usize + 1];
        for (m, c) in &self.terms {
            let (i, j) = match main {
                Var::T => (m.t, m.q),
                Var::Q => (m.q, m.t),
            };
            out[i as usize][j as usize] = c.clone();
        }
        for row in out.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while out.last().is_some_and(|r| r.is_empty()) {
            out.pop();
        }
        out
    }

    pub fn from_dense(main: Var, dense: &[Vec<BigInt>]) -> Poly {
        let terms = dense.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| {
                let m = match main {
                    Var::T => Monomial::new(i as u32, j as u32),
                    Var::Q => Monomial::new(j as u32, i as u32),
                };
                (m, c.clone())
            })
        });
        Poly::from_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(a, b, c)| (Monomial::new(a, b), BigInt::from(c))))
    }

    #[test]
    fn grlex_orders_t_above_q() {
        assert!(Monomial::new(1, 0) > Monomial::new(0, 1));
        assert!(Monomial::new(0, 2) > Monomial::new(1, 0));
        let x = p(&[(0, 0, 1), (0, 2, 1), (1, 0, 1)]);
        assert_eq!(x.leading().unwrap().0, Monomial::new(0, 2));
    }

    #[test]
    fn from_terms_cancels() {
        let x = p(&[(1, 1, 3), (1, 1, -3), (0, 0, 2)]);
        assert_eq!(x, Poly::constant(BigInt::from(2)));
        assert!(p(&[(2, 0, 1), (2, 0, -1)]).is_zero());
    }

    #[test]
    fn mul_matches_schoolbook() {
        // (1 - Q)(1 + Q) = 1 - Q^2
        let a = p(&[(0, 0, 1), (0, 1, -1)]);
        let b = p(&[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(a.mul(&b), p(&[(0, 0, 1), (0, 2, -1)]));
        let c = p(&[(1, 0, 2), (0, 3, 1), (0, 0, -1)]);
        assert_eq!(c.pow(2), c.mul(&c));
    }

    #[test]
    fn dense_round_trip() {
        let a = p(&[(3, 1, 4), (0, 5, -2), (1, 0, 7)]);
        assert_eq!(Poly::from_dense(Var::T, &a.to_dense(Var::T)), a);
        assert_eq!(Poly::from_dense(Var::Q, &a.to_dense(Var::Q)), a);
    }
}
