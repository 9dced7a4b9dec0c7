//! Pochhammer symbols, Laguerre and Charlier polynomials, terminating
//! hypergeometric sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{float_to_rational, rational_to_float, Real, Scalar};

/// Exact rational parameter of a Pochhammer symbol or hypergeometric sum.
pub type RationalParam = BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

pub fn pochhammer_scalar(a: &Scalar, k: u32) -> Scalar {
    if let Some(r) = a.as_rational() {
        return Scalar::from_rational(&pochhammer(&r, k));
    }
    let mut acc = Scalar::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc = &acc * &x;
        x = &x + &Scalar::one();
    }
    acc
}

/// Coefficients (ascending in `x`) of `L_n^{(alpha)}(x)`.
pub fn laguerre_poly(n: u32, alpha: &Scalar) -> Vec<Scalar> {
    let n_fact = BigRational::from_integer(factorial(n));
    let minus_n = BigRational::from_integer(-BigInt::from(n));
    (0..=n)
        .map(|j| {
            let c = pochhammer(&minus_n, j) / (BigRational::from_integer(factorial(j)) * &n_fact);
            let shifted = alpha + &Scalar::from_int(j + 1);
            &Scalar::from_rational(&c) * &pochhammer_scalar(&shifted, n - j)
        })
        .collect()
}

/// `L_n^{(alpha)}(x)`.
pub fn laguerre(n: u32, alpha: &Scalar, x: &Scalar) -> Scalar {
    poly_eval(&laguerre_poly(n, alpha), x)
}

/// `L_n^{(alpha)}(x)` for integer `alpha`, the common case.
pub fn laguerre_int(n: u32, alpha: i64, x: &Scalar) -> Scalar {
    laguerre(n, &Scalar::from_int(alpha), x)
}

pub fn poly_eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
}

/// Formal derivative of an ascending coefficient list.
pub fn poly_derivative(coeffs: &[Scalar]) -> Vec<Scalar> {
    coeffs.iter().enumerate().skip(1).map(|(j, c)| c.scale_int(j as i64)).collect()
}

fn nonpositive_integer(a: &BigRational) -> Option<u64> {
    if a.is_integer() && !a.is_positive() {
        a.numer().abs().to_u64()
    } else {
        None
    }
}

/// Terminating `pFq(upper; lower; z)`.
///
/// The sum stops at the smallest `m0` with `-m0` among the upper parameters.
/// A lower parameter `-j` is admissible as long as `j >= m0`, since then
/// `(-j)_m` stays nonzero over the whole sum.
pub fn hyper_pfq(upper: &[RationalParam], lower: &[RationalParam], z: &BigRational) -> Result<BigRational> {
    let m0 = upper.iter().filter_map(nonpositive_integer).min().ok_or(Error::NonTerminating)?;
    if let Some(b) = lower.iter().find(|b| nonpositive_integer(b).is_some_and(|j| j < m0)) {
        return Err(Error::LowerPole(b.to_string()));
    }
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for m in 0..m0 {
        let mf = BigRational::from_integer(m.into());
        for a in upper {
            term *= a + &mf;
        }
        for b in lower {
            term /= b + &mf;
        }
        term *= z;
        term /= &mf + BigRational::one();
        sum += &term;
    }
    Ok(sum)
}

/// Charlier polynomial `C_n(x, a) = 2F0(-n, -x; ; -1/a)`.
pub fn charlier(n: u32, x: i64, a: &BigRational) -> Result<BigRational> {
    if a.is_zero() {
        return Err(Error::ZeroCharlierParameter);
    }
    let upper = [BigRational::from_integer(-BigInt::from(n)), BigRational::from_integer((-x).into())];
    hyper_pfq(&upper, &[], &-a.recip())
}

/// One sample of `|L_j^{(1)}(x)| <= (j+1) e^{x/2}` at working precision.
#[derive(Debug, Clone)]
pub struct BoundSample {
    pub j: u32,
    pub x: BigRational,
    pub lhs: Real,
    pub rhs: Real,
    pub holds: bool,
}

/// `|L_j^{(1)}(x)|` exactly, `(j+1) e^{x/2}` through the numeric layer as the
/// value of `(j+1)/Q` at `t = x`.
pub fn laguerre_bound(j: u32, x: &BigRational, precision_bits: usize) -> Result<BoundSample> {
    let l = laguerre_int(j, 1, &Scalar::from_rational(x)).as_rational().expect("rational argument").abs();
    let rhs = Scalar::monomial(0, -1).scale_int(j as i64 + 1).eval_rational(x, precision_bits)?;
    let bound = float_to_rational(&rhs).expect("finite bound");
    Ok(BoundSample {
        j,
        x: x.clone(),
        lhs: rational_to_float(&l, precision_bits),
        rhs,
        holds: l <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(0, 1), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(0, 1), 3), rat(0, 1));
        assert_eq!(pochhammer(&rat(-3, 1), 2), rat(6, 1));
        assert_eq!(pochhammer(&rat(-5, 1), 3) / BigRational::from_integer(factorial(3)), rat(-10, 1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn laguerre_small() {
        let x = s("t");
        assert_eq!(laguerre_int(0, 1, &x), Scalar::one());
        assert_eq!(laguerre_int(1, 1, &x), s("2 - t"));
        assert_eq!(laguerre_int(2, 1, &x), s("3 - 3*t + t^2/2"));
    }

    #[test]
    fn charlier_and_pfq() {
        assert_eq!(charlier(0, 3, &rat(1, 2)).unwrap(), rat(1, 1));
        assert_eq!(charlier(2, 1, &rat(0, 1)), Err(Error::ZeroCharlierParameter));
        assert_eq!(hyper_pfq(&[rat(-1, 1), rat(2, 1)], &[rat(3, 1)], &rat(1, 1)).unwrap(), rat(1, 3));
        assert_eq!(hyper_pfq(&[rat(1, 2)], &[], &rat(1, 1)), Err(Error::NonTerminating));
        assert!(matches!(hyper_pfq(&[rat(-3, 1)], &[rat(-1, 1)], &rat(1, 1)), Err(Error::LowerPole(_))));
        assert!(hyper_pfq(&[rat(-3, 1)], &[rat(-3, 1)], &rat(1, 1)).is_ok());
    }

    #[test]
    fn bound_small() {
        let b = laguerre_bound(3, &rat(5, 1), 128).unwrap();
        assert!(b.holds);
        assert!(laguerre_bound(0, &rat(0, 1), 128).unwrap().holds);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }
}
