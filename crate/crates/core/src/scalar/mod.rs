//! Exact arithmetic in the rational function field `Q(t, Q)`.
//!
//! The indeterminate `Q` stands for `e^{-t/2}`. That substitution only ever
//! happens in [`Scalar::eval`]; inside the field `t` and `Q` are independent,
//! so every identity between exponential polynomials becomes an equality of
//! reduced fractions. The derivation [`Scalar::d_dt`] is the one induced by
//! `d/dt Q = -Q/2`.
//!
//! Values are stored as `num / den` with `num, den` in `Z[t, Q]`, coprime,
//! and `den` having a positive leading coefficient under graded lex order
//! with `t > Q`. Equality is therefore structural.

mod eval;
pub(crate) mod gcd;
mod parse;
pub mod poly;
mod render;

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use eval::{decimal_digits, decimal_string, float_to_rational, rational_to_float, Real};
pub(crate) use eval::rational_decimal_string;
pub use poly::{Monomial, Poly, Var};

use crate::error::ScalarError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn t() -> Self {
        Scalar::from_poly(Poly::var(Var::T))
    }

    #[allow(non_snake_case)]
    pub fn Q() -> Self {
        Scalar::from_poly(Poly::var(Var::Q))
    }

    /// `E = Q^2`, i.e. `e^{-t}`.
    pub fn e() -> Self {
        Scalar::from_poly(Poly::monomial(Monomial::new(0, 2), BigInt::one()))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Scalar::from_poly(Poly::constant(n.into()))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
        }
        .fix_sign()
    }

    pub fn frac<A: Into<BigInt>, B: Into<BigInt>>(a: A, b: B) -> Self {
        Scalar::from_rational(&BigRational::new(a.into(), b.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// `t^a Q^b` with integer `b` (negative powers of `Q` allowed).
    pub fn monomial(t_exp: u32, q_exp: i32) -> Self {
        if q_exp >= 0 {
            Scalar::from_poly(Poly::monomial(Monomial::new(t_exp, q_exp as u32), BigInt::one()))
        } else {
            Scalar {
                num: Poly::monomial(Monomial::new(t_exp, 0), BigInt::one()),
                den: Poly::monomial(Monomial::new(0, (-q_exp) as u32), BigInt::one()),
            }
        }
    }

    /// Reduces `num / den` to canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero {
                numerator: Scalar::from_poly(num).to_string(),
                denominator: "0".into(),
            });
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = gcd::gcd(&num, &den);
        if g.is_one() {
            return Scalar { num, den }.fix_sign();
        }
        let num = gcd::div_exact(&num, &g).expect("gcd divides numerator");
        let den = gcd::div_exact(&den, &g).expect("gcd divides denominator");
        Scalar { num, den }.fix_sign()
    }

    fn fix_sign(self) -> Self {
        if self.den.leading_sign() < 0 {
            Scalar { num: self.num.neg(), den: self.den.neg() }
        } else {
            self
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value as a rational number, if it is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero {
                numerator: self.to_string(),
                denominator: rhs.to_string(),
            });
        }
        Ok(self * &rhs.recip_unchecked())
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().checked_div(self)
    }

    fn recip_unchecked(&self) -> Scalar {
        Scalar { num: self.den.clone(), den: self.num.clone() }.fix_sign()
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // a^k / b^k stays reduced when a / b is.
        Ok(Scalar { num: base.num.pow(k), den: base.den.pow(k) }.fix_sign())
    }

    pub fn powi(&self, e: u32) -> Scalar {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self * &Scalar::from_int(c)
    }

    /// The derivation with `D(t) = 1`, `D(Q) = -Q/2`.
    pub fn d_dt(&self) -> Scalar {
        let two_d = |p: &Poly| -> Poly {
            // 2 D p = 2 dp/dt - Q dp/dQ
            let dt = p.deriv(Var::T).scale(&BigInt::from(2));
            let dq = p.deriv(Var::Q).mul_monomial(Monomial::new(0, 1));
            dt.sub(&dq)
        };
        if self.is_zero() {
            return Scalar::zero();
        }
        let half = Scalar::frac(1, 2);
        if self.den.is_constant() {
            return &Scalar::reduce(two_d(&self.num), self.den.clone()) * &half;
        }
        let num = two_d(&self.num).mul(&self.den).sub(&self.num.mul(&two_d(&self.den)));
        let den = self.den.mul(&self.den);
        &Scalar::reduce(num, den) * &half
    }

    /// Partial derivative with respect to `Q`, treating `t` as independent.
    pub fn d_dq(&self) -> Scalar {
        let num = self
            .num
            .deriv(Var::Q)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.deriv(Var::Q)));
        Scalar::reduce(num, self.den.mul(&self.den))
    }

    /// Partial derivative with respect to `t`, treating `Q` as independent.
    pub fn d_dt_partial(&self) -> Scalar {
        let num = self
            .num
            .deriv(Var::T)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.deriv(Var::T)));
        Scalar::reduce(num, self.den.mul(&self.den))
    }

    /// Substitutes `t -> t_val`, `Q -> q_val`.
    pub fn substitute(&self, t_val: &Scalar, q_val: &Scalar) -> Result<Scalar, ScalarError> {
        let num = subs_poly(&self.num, t_val, q_val);
        let den = subs_poly(&self.den, t_val, q_val);
        if den.is_zero() {
            return Err(ScalarError::Pole {
                value: self.to_string(),
                point: format!("t = {t_val}, Q = {q_val}"),
            });
        }
        Ok(&num * &den.recip_unchecked())
    }

    /// Substitutes only `Q`.
    pub fn subs_q(&self, q_val: &Scalar) -> Result<Scalar, ScalarError> {
        self.substitute(&Scalar::t(), q_val)
    }

    /// Value at a rational point `(t, Q)`.
    pub fn at(&self, t_val: &BigRational, q_val: &BigRational) -> Result<BigRational, ScalarError> {
        let s = self.substitute(&Scalar::from_rational(t_val), &Scalar::from_rational(q_val))?;
        Ok(s.as_rational().expect("constant after full substitution"))
    }
}

fn subs_poly(p: &Poly, t_val: &Scalar, q_val: &Scalar) -> Scalar {
    let dt = p.degree_in(Var::T) as usize;
    let dq = p.degree_in(Var::Q) as usize;
    let mut tp = vec![Scalar::one()];
    for i in 0..dt {
        tp.push(&tp[i] * t_val);
    }
    let mut qp = vec![Scalar::one()];
    for i in 0..dq {
        qp.push(&qp[i] * q_val);
    }
    p.terms()
        .iter()
        .map(|(m, c)| &(&tp[m.t as usize] * &qp[m.q as usize]) * &Scalar::from_int(c.clone()))
        .sum()
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        let num = a.num.add(&b.num);
        if a.den.is_one() {
            return Scalar { num, den: a.den.clone() };
        }
        return Scalar::reduce(num, a.den.clone());
    }
    if a.den.is_one() {
        return Scalar { num: a.num.mul(&b.den).add(&b.num), den: b.den.clone() };
    }
    if b.den.is_one() {
        return Scalar { num: b.num.mul(&a.den).add(&a.num), den: a.den.clone() };
    }
    let g = gcd::gcd(&a.den, &b.den);
    if g.is_one() {
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        return Scalar { num, den: a.den.mul(&b.den) }.fix_sign();
    }
    let ad = gcd::div_exact(&a.den, &g).expect("gcd divides");
    let bd = gcd::div_exact(&b.den, &g).expect("gcd divides");
    let num = a.num.mul(&bd).add(&b.num.mul(&ad));
    if num.is_zero() {
        return Scalar::zero();
    }
    let den = a.den.mul(&bd);
    let g2 = gcd::gcd(&num, &g);
    if g2.is_one() {
        return Scalar { num, den }.fix_sign();
    }
    Scalar {
        num: gcd::div_exact(&num, &g2).expect("gcd divides"),
        den: gcd::div_exact(&den, &g2).expect("gcd divides"),
    }
    .fix_sign()
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar { num: a.num.mul(&b.num), den: Poly::one() };
    }
    let g1 = gcd::gcd(&a.num, &b.den);
    let g2 = gcd::gcd(&b.num, &a.den);
    let cut = |p: &Poly, g: &Poly| {
        if g.is_one() {
            p.clone()
        } else {
            gcd::div_exact(p, g).expect("gcd divides")
        }
    };
    let num = cut(&a.num, &g1).mul(&cut(&b.num, &g2));
    let den = cut(&a.den, &g2).mul(&cut(&b.den, &g1));
    Scalar { num, den }.fix_sign()
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        add_impl(self, rhs)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        add_impl(self, &-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        mul_impl(self, rhs)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; see [`Scalar::checked_div`].
    fn div(self, rhs: &Scalar) -> Scalar {
        match self.checked_div(rhs) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_int(n)
    }
}

impl From<&BigRational> for Scalar {
    fn from(r: &BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn field_examples() {
        let q = Scalar::Q();
        assert_eq!(&q + &q, s("2*Q"));
        assert_eq!(s("1 - Q^2") / s("1 - Q"), s("1 + Q"));
        assert_eq!(q.pow(-2).unwrap(), s("1/Q^2"));
        assert_eq!(s("1/Q^2").denominator(), &Poly::monomial(Monomial::new(0, 2), 1.into()));
    }

    #[test]
    fn division_by_zero_reports_operands() {
        let err = Scalar::t().checked_div(&(&Scalar::Q() - &Scalar::Q())).unwrap_err();
        match err {
            ScalarError::DivisionByZero { numerator, denominator } => {
                assert_eq!(numerator, "t");
                assert_eq!(denominator, "0");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn derivation_rules() {
        assert_eq!(Scalar::Q().d_dt(), s("-Q/2"));
        assert_eq!(s("1 - Q^2").d_dt(), s("Q^2"));
        assert_eq!(s("1/(1 + Q^2)").d_dt(), s("Q^2/(1 + Q^2)^2"));
        assert_eq!(s("t^3").d_dt(), s("3*t^2"));
        assert_eq!(Scalar::from_int(7).d_dt(), Scalar::zero());
    }

    #[test]
    fn canonical_denominator_sign() {
        let a = s("1/(-1 + Q)");
        assert_eq!(a, s("-1/(1 - Q)"));
        assert!(a.denominator().leading_sign() > 0);
    }

    #[test]
    fn substitution_and_limits() {
        let g1 = s("-t*Q^2/(1 - Q^2)");
        assert_eq!(g1.subs_q(&Scalar::zero()).unwrap(), Scalar::zero());
        let err = g1.subs_q(&Scalar::one());
        assert!(matches!(err, Err(ScalarError::Pole { .. })));
    }
}
