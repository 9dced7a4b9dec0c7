//! Truncated formal power series over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::SeriesError;
use crate::scalar::Scalar;
use crate::specfun::{binomial, pochhammer};

/// `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Scalar>,
}

impl Series {
    /// Pads with zeros or truncates so that the order is exactly `order`.
    pub fn new(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Scalar) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        Series::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Scalar::one(), order)
    }

    /// The variable `z`.
    pub fn z(order: usize) -> Self {
        Series::new(vec![Scalar::zero(), Scalar::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the order is not implied, so this
    /// panics there.
    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot raise truncation order {} to {order}", self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.order();
        Series::from_fn(n, |i| if i < k { Scalar::zero() } else { self.coeffs[i - k].clone() })
    }

    /// Divides by `z^k`; the low coefficients must vanish. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Series, SeriesError> {
        if let Some(c) = self.coeffs[..k.min(self.coeffs.len())].iter().find(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroConstant(c.to_string()));
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    pub fn derivative(&self) -> Series {
        let n = self.order();
        Series::from_fn(n.saturating_sub(1), |k| {
            self.coeffs.get(k + 1).map(|c| c.scale_int(k as i64 + 1)).unwrap_or_else(Scalar::zero)
        })
    }

    /// Applies a map to every coefficient.
    pub fn map(&self, f: impl FnMut(&Scalar) -> Scalar) -> Series {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn mul_to(&self, rhs: &Series, order: usize) -> Series {
        Series::from_fn(order, |k| {
            (0..=k)
                .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[k - i].is_zero())
                .map(|i| &self.coeffs[i] * &rhs.coeffs[k - i])
                .sum()
        })
    }

    pub fn recip(&self) -> Result<Series, SeriesError> {
        let c0 = &self.coeffs[0];
        let inv0 = c0.recip().map_err(|_| SeriesError::NotInvertible(c0.to_string()))?;
        let mut out = vec![inv0.clone()];
        for k in 1..=self.order() {
            let s: Scalar = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero())
                .map(|i| &self.coeffs[i] * &out[k - i])
                .sum();
            out.push(-(&s * &inv0));
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, rhs: &Series) -> Result<Series, SeriesError> {
        let n = self.order().min(rhs.order());
        Ok(self.truncate(n).mul_to(&rhs.truncate(n).recip()?, n))
    }

    pub fn powi(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order());
        let mut base = self.clone();
        let mut e = e;
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

    /// `outer(inner(z))`, truncated to the common order.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(inner.coeffs[0].to_string()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul_to(&inner, n);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse by Newton iteration, checked by composing back.
    pub fn revert(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(self.coeffs[0].to_string()));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(SeriesError::ZeroLinear);
        }
        let f1_inv = self.coeffs[1].recip()?;
        let mut g = Series::new(vec![Scalar::zero(), f1_inv], 1);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let f = self.truncate(prec);
            let g_ext = Series::new(g.coeffs, prec);
            let residual = &f.compose(&g_ext)? - &Series::z(prec);
            // residual = O(z^{old+1}), so slope terms above z^{prec-1} never matter
            let slope = f.derivative().compose(&g_ext.truncate(prec - 1))?;
            let slope = Series::new(slope.coeffs, prec);
            g = &g_ext - &residual.div(&slope)?;
        }
        if self.compose(&g)? != Series::z(n) {
            return Err(SeriesError::RevertCheck(n));
        }
        Ok(g)
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtConstant(self.coeffs[0].to_string()));
        }
        let half = Scalar::frac(1, 2);
        let mut g = vec![Scalar::one()];
        for k in 1..=self.order() {
            let s: Scalar = (1..k).map(|i| &g[i] * &g[k - i]).sum();
            g.push(&(&self.coeffs[k] - &s) * &half);
        }
        Ok(Series { coeffs: g })
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(self.coeffs[0].to_string()));
        }
        let mut e = vec![Scalar::one()];
        for k in 1..=self.order() {
            let s: Scalar = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero())
                .map(|i| &self.coeffs[i].scale_int(i as i64) * &e[k - i])
                .sum();
            e.push(&s * &Scalar::frac(1, k as i64));
        }
        Ok(Series { coeffs: e })
    }

    /// `self^a` for rational `a`, when the constant term is 1.
    pub fn pow_rational(&self, a: &BigRational) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtConstant(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let w = &Series::one(n) - self;
        binomial_series(a, n).compose(&w)
    }
}

/// `(1 - z)^a = sum_m (-a)_m / m! z^m`.
pub fn binomial_series(a: &BigRational, order: usize) -> Series {
    let minus_a = -a;
    let mut fact = BigRational::one();
    Series::from_fn(order, |m| {
        if m > 0 {
            fact *= BigRational::from_integer(BigInt::from(m));
        }
        Scalar::from_rational(&(pochhammer(&minus_a, m as u32) / &fact))
    })
}

/// Taylor expansion of `(1 - sqrt(1-w)) / (1 + sqrt(1-w))`.
pub fn alpha_series(order: usize) -> Series {
    let root = (&Series::one(order) - &Series::z(order)).sqrt().expect("constant term 1");
    let num = &Series::one(order) - &root;
    let den = &Series::one(order) + &root;
    num.div(&den).expect("constant term 2")
}

/// `p_n = sum_{k=0}^n C(2n, n-k) r_k`.
pub fn brown_transform(r: &Series) -> Series {
    Series::from_fn(r.order(), |n| {
        (0..=n)
            .filter(|&k| !r.coeffs[k].is_zero())
            .map(|k| &r.coeffs[k] * &Scalar::from_int(binomial(2 * n as i64, (n - k) as i64)))
            .sum()
    })
}

/// Compositional inverse from the Lagrange coefficient formula
/// `[z^n] g = (1/n) [w^{n-1}] (w / f(w))^n`. Quadratic in the number of
/// powers taken, so kept for cross-checking [`Series::revert`].
pub fn lagrange_revert(f: &Series) -> Result<Series, SeriesError> {
    let n = f.order();
    let h = f.shift_down(1)?.recip()?;
    let mut coeffs = vec![Scalar::zero()];
    let mut power = Series::one(n - 1);
    for k in 1..=n {
        power = &power * &h;
        coeffs.push(&power.coeffs[k - 1] * &Scalar::frac(1, k as i64));
    }
    Ok(Series { coeffs })
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::from_fn(n, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::from_fn(n, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_to(rhs, self.order().min(rhs.order()))
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map(|c| -c)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64], order: usize) -> Series {
        Series::new(v.iter().map(|&x| Scalar::from_int(x)).collect(), order)
    }

    #[test]
    fn arithmetic() {
        let a = ints(&[1, 1], 4);
        let b = ints(&[1, -1], 5);
        assert_eq!(&a * &b, ints(&[1, 0, -1], 4));
        assert_eq!((&a * &b).order(), 4);
        assert_eq!(Series::one(5).div(&b).unwrap(), ints(&[1, 1, 1, 1, 1, 1], 5));
        assert_eq!(a.powi(3), ints(&[1, 3, 3, 1], 4));
        assert!(Series::z(3).recip().is_err());
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = ints(&[1, 2, 3], 2);
        let b = ints(&[1, 1, 1, 1, 1], 4);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn compose_examples() {
        let geo = ints(&[1, 1, 1, 1, 1], 4);
        let half_z = Series::new(vec![Scalar::zero(), Scalar::frac(1, 2)], 4);
        let want = Series::from_fn(4, |k| Scalar::frac(1, 1 << k));
        assert_eq!(geo.compose(&half_z).unwrap(), want);
        assert!(geo.compose(&geo).is_err());
    }

    #[test]
    fn revert_catalan() {
        let f = ints(&[0, 1, -1], 6);
        assert_eq!(f.revert().unwrap(), ints(&[0, 1, 1, 2, 5, 14, 42], 6));
        assert_eq!(ints(&[0, 0, 1], 3).revert(), Err(SeriesError::ZeroLinear));
    }

    #[test]
    fn revert_mobius_pair() {
        let f = ints(&[0, 1, 1, 1, 1, 1, 1], 6);
        assert_eq!(f.revert().unwrap(), ints(&[0, 1, -1, 1, -1, 1, -1], 6));
    }

    #[test]
    fn alpha_series_head() {
        let a = alpha_series(4);
        assert!(a.coeff(0).is_zero());
        assert_eq!(a.coeff(1), &Scalar::frac(1, 4));
    }

    #[test]
    fn sqrt_and_binomial_agree() {
        let f = ints(&[1, -1], 6);
        assert_eq!(f.sqrt().unwrap(), binomial_series(&BigRational::new(1.into(), 2.into()), 6));
        assert_eq!(f.pow_rational(&BigRational::from_integer(3.into())).unwrap(), ints(&[1, -3, 3, -1], 6));
        assert!(ints(&[2, 1], 3).sqrt().is_err());
    }

    #[test]
    fn brown_unit_vectors() {
        let p = brown_transform(&ints(&[1], 5));
        assert_eq!(p, Series::from_fn(5, |n| Scalar::from_int(binomial(2 * n as i64, n as i64))));
        let p = brown_transform(&ints(&[0, 1], 5));
        assert_eq!(p, Series::from_fn(5, |n| Scalar::from_int(binomial(2 * n as i64, n as i64 - 1))));
    }
}
