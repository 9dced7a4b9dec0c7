//! Arbitrary-precision evaluation at `t = t0`, `Q = e^{-t0/2}`.
//!
//! Polynomials are evaluated with `64 + coefficient bits + 8 * degree` guard
//! bits above the requested precision, then the quotient is rounded to the
//! requested precision.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Poly, Scalar, Var};
use crate::error::ScalarError;

/// Arbitrary-precision binary float used for numeric output.
pub type Real = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    let wp = p.max(n.bits() as usize + 64);
    let (sign, digits) = n.to_u64_digits();
    let radix = BigFloat::from_u64(1 << 32, wp).mul(&BigFloat::from_u64(1 << 32, wp), wp, RM);
    let mut acc = BigFloat::from_u64(0, wp);
    for d in digits.iter().rev() {
        acc = acc.mul(&radix, wp, RM).add(&BigFloat::from_u64(*d, wp), wp, RM);
    }
    if sign == IntSign::Minus {
        acc = acc.neg();
    }
    let mut out = acc;
    out.set_precision(p, RM).expect("precision change");
    out
}

/// Correctly rounded conversion of a rational to `p` bits.
pub fn rational_to_float(r: &BigRational, p: usize) -> Real {
    let wp = p + 64;
    let n = bigint_to_float(r.numer(), wp);
    let d = bigint_to_float(r.denom(), wp);
    n.div(&d, p, RM)
}

/// Exact rational value of a finite float.
pub fn float_to_rational(x: &Real) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    let mut m = BigInt::zero();
    for w in words.iter().rev() {
        m = (m << 64) + BigInt::from(*w);
    }
    if sign == Sign::Neg {
        m = -m;
    }
    let shift = exp as i64 - 64 * words.len() as i64;
    Some(if shift >= 0 {
        BigRational::from_integer(m << shift as usize)
    } else {
        BigRational::new(m, BigInt::one() << (-shift) as usize)
    })
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

fn floor_log10(r: &BigRational) -> i64 {
    let r = r.abs();
    let mut k = r.numer().to_string().len() as i64 - r.denom().to_string().len() as i64;
    let ten_k = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(pow10(k as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-k) as u32))
        }
    };
    while ten_k(k) > r {
        k -= 1;
    }
    while ten_k(k + 1) <= r {
        k += 1;
    }
    k
}

/// Decimal rendering with `digits` significant digits, rounded half to even.
///
/// Plain notation for decimal exponents in `[-6, 21)`, scientific otherwise.
pub fn decimal_string(x: &Real, digits: usize) -> String {
    let Some(r) = float_to_rational(x) else {
        return "NaN".into();
    };
    rational_decimal_string(&r, digits)
}

pub(crate) fn rational_decimal_string(r: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let mut k = floor_log10(&a);
    let shift = digits as i64 - 1 - k;
    let scaled = if shift >= 0 {
        &a * BigRational::from_integer(pow10(shift as u32))
    } else {
        &a / BigRational::from_integer(pow10((-shift) as u32))
    };
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = &rem * 2;
    let mut n = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    };
    if n.to_string().len() > digits {
        n /= 10;
        k += 1;
    }
    let ds = n.to_string();
    let sign = if negative { "-" } else { "" };
    let body = if (-6..21).contains(&k) {
        if k >= 0 {
            let k = k as usize;
            if k + 1 >= ds.len() {
                format!("{}{}", ds, "0".repeat(k + 1 - ds.len()))
            } else {
                format!("{}.{}", &ds[..k + 1], &ds[k + 1..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-k - 1) as usize), ds)
        }
    } else if ds.len() == 1 {
        format!("{ds}e{k}")
    } else {
        format!("{}.{}e{k}", &ds[..1], &ds[1..])
    };
    format!("{sign}{body}")
}

/// Number of decimal digits reported for a given binary precision.
pub fn decimal_digits(precision_bits: usize) -> usize {
    // two guard digits below the binary precision
    ((precision_bits as f64) * std::f64::consts::LOG10_2).floor() as usize - 2
}

fn eval_poly(p: &Poly, tp: &[BigFloat], qp: &[BigFloat], wp: usize) -> BigFloat {
    let mut acc = BigFloat::from_u64(0, wp);
    for (m, c) in p.terms() {
        let c = bigint_to_float(c, wp);
        let term = c.mul(&tp[m.t as usize], wp, RM).mul(&qp[m.q as usize], wp, RM);
        acc = acc.add(&term, wp, RM);
    }
    acc
}

fn powers(x: &BigFloat, n: u32, wp: usize) -> Vec<BigFloat> {
    let mut v = vec![BigFloat::from_u64(1, wp)];
    for i in 0..n as usize {
        let next = v[i].mul(x, wp, RM);
        v.push(next);
    }
    v
}

impl Scalar {
    /// Numeric value at `t = t0`, `Q = exp(-t0/2)`.
    pub fn eval(&self, t0: &Real, precision_bits: usize) -> Result<Real, ScalarError> {
        if precision_bits < 53 {
            return Err(ScalarError::Precision(precision_bits));
        }
        let (num, den) = (self.numerator(), self.denominator());
        let coeff_bits = num
            .terms()
            .iter()
            .chain(den.terms())
            .map(|(_, c)| c.bits())
            .max()
            .unwrap_or(0) as usize;
        let deg = [num.degree_in(Var::T), num.degree_in(Var::Q), den.degree_in(Var::T), den.degree_in(Var::Q)]
            .into_iter()
            .max()
            .unwrap_or(0) as usize;
        let wp = precision_bits + 64 + coeff_bits + 8 * deg;
        let mut cc = consts();
        let mut t = t0.clone();
        t.set_precision(wp, RM).expect("precision change");
        let half = BigFloat::from_u64(2, wp);
        let q = t.neg().div(&half, wp, RM).exp(wp, RM, &mut cc);
        let t_deg = num.degree_in(Var::T).max(den.degree_in(Var::T));
        let q_deg = num.degree_in(Var::Q).max(den.degree_in(Var::Q));
        let tp = powers(&t, t_deg, wp);
        let qp = powers(&q, q_deg, wp);
        let n = eval_poly(num, &tp, &qp, wp);
        let d = eval_poly(den, &tp, &qp, wp);
        if d.is_zero() {
            return Err(ScalarError::Pole { value: self.to_string(), point: format!("t = {}", short(t0)) });
        }
        Ok(n.div(&d, precision_bits, RM))
    }

    pub fn eval_rational(&self, t0: &BigRational, precision_bits: usize) -> Result<Real, ScalarError> {
        let t = rational_to_float(t0, precision_bits + 64);
        self.eval(&t, precision_bits)
    }

    pub fn eval_f64(&self, t0: f64) -> Result<f64, ScalarError> {
        let v = self.eval(&BigFloat::from_f64(t0, 128), 128)?;
        Ok(float_to_rational(&v).and_then(|r| r.to_f64()).unwrap_or(f64::NAN))
    }
}

fn short(x: &Real) -> String {
    decimal_string(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        let zero = BigFloat::from_u64(0, 128);
        assert_eq!(float_to_rational(&Scalar::Q().eval(&zero, 128).unwrap()), Some(BigRational::one()));
        let mut cc = consts();
        let ln2 = BigFloat::from_u64(2, 256).ln(256, RM, &mut cc);
        let v = s("1 - Q^2").eval(&ln2, 128).unwrap();
        let err = float_to_rational(&v).unwrap() - BigRational::new(1.into(), 2.into());
        assert!(err.abs() < BigRational::new(1.into(), BigInt::one() << 120));
    }

    #[test]
    fn pole_detected() {
        let zero = BigFloat::from_u64(0, 128);
        assert!(matches!(s("1/(1 - Q)").eval(&zero, 128), Err(ScalarError::Pole { .. })));
        assert!(matches!(s("Q").eval(&zero, 32), Err(ScalarError::Precision(32))));
    }

    #[test]
    fn decimal_rendering() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(rational_decimal_string(&r(1, 3), 5), "0.33333");
        assert_eq!(rational_decimal_string(&r(-2, 3), 3), "-0.667");
        assert_eq!(rational_decimal_string(&r(125, 1), 2), "120");
        assert_eq!(rational_decimal_string(&r(135, 1), 2), "140");
        assert_eq!(rational_decimal_string(&r(999, 1000), 2), "1.0");
        assert_eq!(rational_decimal_string(&r(1, 10_000_000), 3), "1.00e-7");
        assert_eq!(rational_decimal_string(&r(0, 1), 3), "0");
    }

    #[test]
    fn float_rational_round_trip() {
        let x = rational_to_float(&BigRational::new(3.into(), 8.into()), 64);
        assert_eq!(float_to_rational(&x), Some(BigRational::new(3.into(), 8.into())));
        let y = rational_to_float(&BigRational::from_integer(BigInt::from(7) << 200), 64);
        assert_eq!(float_to_rational(&y), Some(BigRational::from_integer(BigInt::from(7) << 200)));
    }
}
