//! Moments, free cumulants and alternating star cumulants of the free
//! unitary Brownian motion, and the Taylor coefficients `a_n` of the local
//! inverse of `chi_t` around `z = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_range, Result};
use crate::ncpart::MomentOracle;
use crate::scalar::{Poly, Scalar};
use crate::series::Series;
use crate::specfun::{binomial, factorial, laguerre_int, laguerre_poly, pochhammer, poly_eval};
use crate::table::{Check, CoeffTable, Provenance};

pub const MAX_G: usize = 10;
pub const MAX_A: usize = 10;
pub const MAX_H: usize = 5;

/// `phi(u_{c t}^k)` for the integer time multiplier `c`:
/// `Q^{c|k|} L_{|k|-1}^{(1)}(c|k| t) / |k|`.
pub fn moment_fubm(k: i64, time_scale: u32) -> Scalar {
    if k == 0 {
        return Scalar::one();
    }
    let k = k.unsigned_abs();
    let ck = k * time_scale as u64;
    let x = Scalar::t().scale_int(ck as i64);
    let q = Scalar::monomial(0, ck as i32);
    &(&q * &laguerre_int(k as u32 - 1, 1, &x)) * &Scalar::frac(1, k as i64)
}

/// Moment oracle of `u_{c t}`.
#[derive(Debug, Clone, Copy)]
pub struct FubmOracle {
    pub time_scale: u32,
}

impl FubmOracle {
    pub const UNIT: FubmOracle = FubmOracle { time_scale: 1 };
}

impl MomentOracle for FubmOracle {
    fn positive_moment(&self, m: u64) -> Scalar {
        moment_fubm(m as i64, self.time_scale)
    }
}

/// `kappa_n(u_t) = Q^n (-n t)^{n-1} / n!`.
pub fn free_cumulant_fubm(n: u32) -> Scalar {
    let c = BigRational::new(num_traits::pow(BigInt::from(-(n as i64)), n as usize - 1), factorial(n));
    &Scalar::from_rational(&c) * &Scalar::monomial(n - 1, n as i32)
}

fn poly_terms(s: &Scalar) -> Vec<(u32, u32, BigRational)> {
    assert!(s.is_polynomial(), "expected a polynomial in t and Q, got {s}");
    let d = s.denominator().constant_value().expect("constant denominator");
    s.numerator()
        .terms()
        .iter()
        .map(|(m, c)| (m.t, m.q, BigRational::new(c.clone(), d.clone())))
        .collect()
}

/// Antiderivative of `t^a E^b e^{n t}`, multiplied back by `E^n`.
fn integrate_term(a: u32, b: u32, n: u32) -> Scalar {
    if b == n {
        return &Scalar::monomial(a + 1, 2 * n as i32) * &Scalar::frac(1, a as i64 + 1);
    }
    // e^{ct} sum_i (-1)^i a!/(a-i)! t^{a-i} / c^{i+1}, c = n - b
    let c = BigRational::from_integer(BigInt::from(n as i64 - b as i64));
    let mut acc = Scalar::zero();
    let mut falling = BigRational::one();
    let mut cpow = c.clone();
    for i in 0..=a {
        let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let coef = &sign * &falling / &cpow;
        acc = &acc + &(&Scalar::from_rational(&coef) * &Scalar::monomial(a - i, 0));
        falling *= BigRational::from_integer(BigInt::from(a - i));
        cpow *= &c;
    }
    &acc * &Scalar::monomial(0, 2 * b as i32)
}

/// Alternating star cumulants `g_n = kappa_{2n}(u_t, u_t*, ...)`, `n = 1..=N`,
/// from the ODE `g_n' + n g_n = -n sum_{m=1}^{n-1} g_m g_{n-m}`, `g_n(0) = 0`.
pub fn g_table(n_max: usize) -> Result<CoeffTable> {
    check_range("N", n_max, 1, MAX_G)?;
    let mut g: Vec<Scalar> = vec![Scalar::from_poly(Poly::one()) - Scalar::e()];
    for n in 2..=n_max as u32 {
        let s: Scalar = (1..n as usize).map(|m| &g[m - 1] * &g[n as usize - m - 1]).sum();
        let rhs = s.scale_int(-(n as i64));
        let mut particular = Scalar::zero();
        for (a, q, c) in poly_terms(&rhs) {
            assert!(q % 2 == 0, "odd power of Q in g recursion");
            particular = &particular + &(&Scalar::from_rational(&c) * &integrate_term(a, q / 2, n));
        }
        let at_zero = particular.at(&BigRational::zero(), &BigRational::one())?;
        let gn = &particular - &(&Scalar::from_rational(&at_zero) * &Scalar::monomial(0, 2 * n as i32));
        g.push(gn);
    }
    Ok(CoeffTable::new("g", Provenance::ClosedForm, 1, g))
}

/// `h_0 = Q` and `h_{n-1} = [(1/n) g_n' - sum_{j=1}^{n-2} h_j h_{n-1-j}] / (2Q)`,
/// giving `h_0..=h_N`.
pub fn h_table(n_max: usize) -> Result<CoeffTable> {
    check_range("N", n_max, 1, MAX_H)?;
    let g = g_table(n_max + 1)?;
    let mut h = vec![Scalar::Q()];
    let two_q = Scalar::Q().scale_int(2);
    for n in 2..=n_max + 1 {
        let dg = &g.get(n).expect("g entry").d_dt() * &Scalar::frac(1, n as i64);
        let s: Scalar = (1..=n.saturating_sub(2)).map(|j| &h[j] * &h[n - 1 - j]).sum();
        h.push((&dg - &s).checked_div(&two_q)?);
    }
    Ok(CoeffTable::new("h", Provenance::ClosedForm, 0, h))
}

/// `P_{k-1}^{(n)}(t) = sum_{m=0}^{k-1} (-2)^m (2n)_m / m! L_{k-1-m}^{(m+1)}(2kt)`.
pub fn p_poly(k: u32, n: u32) -> Scalar {
    let x = Scalar::t().scale_int(2 * k as i64);
    let two_n = BigRational::from_integer(BigInt::from(2 * n));
    (0..k)
        .map(|m| {
            let c = pochhammer(&two_n, m) * BigRational::from_integer(num_traits::pow(BigInt::from(-2), m as usize))
                / BigRational::from_integer(factorial(m));
            &Scalar::from_rational(&c) * &laguerre_int(k - 1 - m, m as i64 + 1, &x)
        })
        .sum()
}

/// Closed form `a_n = 2 (-1)^n / n sum_{k=1}^n C(2n, n-k) E^k P_{k-1}^{(n)}`.
pub fn a_closed_form(n: u32) -> Scalar {
    let sum: Scalar = (1..=n)
        .map(|k| {
            let c = Scalar::from_int(binomial(2 * n as i64, (n - k) as i64));
            &(&c * &Scalar::monomial(0, 2 * k as i32)) * &p_poly(k, n)
        })
        .sum();
    let sign = if n % 2 == 0 { 2 } else { -2 };
    &sum * &Scalar::frac(sign, n as i64)
}

/// `chi_t(1 + w)` as a series in `w`.
pub fn chi_series(order: usize) -> Series {
    let one = Series::one(order);
    let w = Series::z(order);
    let z = &one + &w;
    let tw = w.scale(&Scalar::t());
    let exp_tz = tw.exp().expect("zero constant term").scale(&Scalar::monomial(0, -2));
    let z2 = &z * &z;
    let one_minus_z2 = &one - &z2;
    let den = &(&one + &z) - &(&(&one - &z) * &exp_tz);
    let num = &(&z2 * &one_minus_z2) * &exp_tz;
    num.div(&(&den * &den)).expect("den(1) = 2")
}

/// `a_1..=a_N` by reverting `w -> chi_t(1 + w)`.
pub fn a_table_oracle(n_max: usize) -> Result<CoeffTable> {
    check_range("N", n_max, 1, MAX_A)?;
    let inv = chi_series(n_max).revert()?;
    Ok(CoeffTable::new("a", Provenance::Oracle, 1, inv.coeffs()[1..].to_vec()))
}

pub fn a_table_closed(n_max: usize) -> Result<CoeffTable> {
    check_range("N", n_max, 1, MAX_A)?;
    Ok(CoeffTable::new("a", Provenance::ClosedForm, 1, (1..=n_max as u32).map(a_closed_form).collect()))
}

/// Both routes for `a_n`, with the comparison.
pub fn a_table(n_max: usize) -> Result<(CoeffTable, CoeffTable, Check)> {
    let closed = a_table_closed(n_max)?;
    let oracle = a_table_oracle(n_max)?;
    let check = Check::all_equal(
        format!("a_n closed form = reversion of chi_t, n <= {n_max}"),
        closed.entries.iter().zip(&oracle.entries).map(|(a, b)| (a.n, &a.value, &b.value)),
    );
    Ok((closed, oracle, check))
}

/// `int_0^inf x^p e^{-k x} poly(x) dx` for a polynomial with Scalar coefficients.
pub(crate) fn laplace_moment(poly_x: &[Scalar], p: u32, k: u32) -> Scalar {
    poly_x
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let m = p + j as u32;
            let v = BigRational::new(factorial(m), num_traits::pow(BigInt::from(k), m as usize + 1));
            c * &Scalar::from_rational(&v)
        })
        .sum()
}

/// Coefficients in `x` of `poly(a + b x)`.
pub(crate) fn compose_linear(poly: &[Scalar], a: &Scalar, b: &Scalar) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); poly.len()];
    let mut bpow = vec![Scalar::one()];
    for i in 1..poly.len() {
        bpow.push(&bpow[i - 1] * b);
    }
    for (j, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut apow = Scalar::one();
        for i in (0..=j).rev() {
            // term C(j, i) a^{j-i} b^i x^i
            let coef = &(&Scalar::from_int(binomial(j as i64, i as i64)) * &apow) * &bpow[i];
            out[i] = &out[i] + &(c * &coef);
            apow = &apow * a;
        }
    }
    out
}

/// Coefficients in `x` of `L_{k-1}^{(1)}(2k(t + x))`.
pub(crate) fn shifted_moment_poly(k: u32) -> Vec<Scalar> {
    let l = laguerre_poly(k - 1, &Scalar::one());
    let two_k = Scalar::from_int(2 * k as i64);
    compose_linear(&l, &(&Scalar::t() * &two_k), &two_k)
}

/// `(1/Gamma(2n)) int_0^inf e^{-x} x^{2n-1} L_{k-1}^{(1)}(2kt + 2x) dx`.
pub fn p_poly_gamma_integral(k: u32, n: u32) -> Scalar {
    let l = laguerre_poly(k - 1, &Scalar::one());
    let x = compose_linear(&l, &Scalar::t().scale_int(2 * k as i64), &Scalar::from_int(2));
    &laplace_moment(&x, 2 * n - 1, 1) * &Scalar::from_rational(&BigRational::new(BigInt::one(), factorial(2 * n - 1)))
}

/// Exact comparison of a printed integral representation with its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralRepReport {
    pub n: u32,
    pub k: u32,
    pub target: Scalar,
    pub printed: Scalar,
    /// `target / printed`; one exactly when the printed form holds.
    pub ratio: Scalar,
}

impl IntegralRepReport {
    pub(crate) fn from_parts(n: u32, k: u32, target: Scalar, printed: Scalar) -> Self {
        let ratio = target.checked_div(&printed).unwrap_or_else(|_| Scalar::zero());
        IntegralRepReport { n, k, target, printed, ratio }
    }

    pub fn exact_match(&self) -> bool {
        self.target == self.printed
    }
}

/// `E^k P_{k-1}^{(n)} / n` against `2 k t^{2n}/(2n)! int_0^inf x^{2n-1} phi(u_{2(t+x)}^k) dx`.
pub fn integral_rep_check(n: u32, k: u32) -> IntegralRepReport {
    let target = &(&Scalar::monomial(0, 2 * k as i32) * &p_poly(k, n)) * &Scalar::frac(1, n as i64);
    // phi(u_{2s}^k) = e^{-ks} L_{k-1}^{(1)}(2ks) / k with s = t + x
    let integral = &(&laplace_moment(&shifted_moment_poly(k), 2 * n - 1, k) * &Scalar::monomial(0, 2 * k as i32))
        * &Scalar::frac(1, k as i64);
    let prefactor = &Scalar::from_rational(&BigRational::new(BigInt::from(2 * k), factorial(2 * n)))
        * &Scalar::monomial(2 * n, 0);
    IntegralRepReport::from_parts(n, k, target, &prefactor * &integral)
}

/// `-(1/n) g_n'` against `(1/4)[2 a_n + sum_{m=1}^{n-1} a_m a_{n-m}]`.
pub fn eac_check(g: &CoeffTable, a: &CoeffTable, n_max: usize) -> Vec<Check> {
    (1..=n_max)
        .map(|n| {
            let lhs = &g.get(n).expect("g entry").d_dt() * &Scalar::frac(-1, n as i64);
            let an = a.get(n).expect("a entry");
            let conv: Scalar = (1..n).map(|m| a.get(m).unwrap() * a.get(n - m).unwrap()).sum();
            let rhs = &(&an.scale_int(2) + &conv) * &Scalar::frac(1, 4);
            Check::equal(format!("g/a relation at n = {n}"), &lhs, &rhs)
        })
        .collect()
}

/// `g_n'` reconstructed from the `a` sequence: `-(n/4)[2 a_n + sum a_m a_{n-m}]`.
pub fn g_prime_from_a(a: &CoeffTable) -> CoeffTable {
    let vals: Vec<Scalar> = a
        .entries
        .iter()
        .map(|e| {
            let n = e.n;
            let conv: Scalar = (1..n).map(|m| a.get(m).unwrap() * a.get(n - m).unwrap()).sum();
            &(&e.value.scale_int(2) + &conv) * &Scalar::frac(-(n as i64), 4)
        })
        .collect();
    CoeffTable::new("g'", a.provenance, 1, vals)
}

/// Leading behaviour `g_n|_{Q=0}`.
pub fn haar_limit(s: &Scalar) -> Result<Scalar> {
    Ok(s.subs_q(&Scalar::zero())?)
}

/// `s_k(t) = e^{kt} phi(u_t^k) = L_{k-1}^{(1)}(kt) / k`.
pub fn s_coefficient(k: u32) -> Scalar {
    let l = laguerre_poly(k - 1, &Scalar::one());
    &poly_eval(&l, &Scalar::t().scale_int(k as i64)) * &Scalar::frac(1, k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpart::{alternating_word, enumerate_nc, mixed_cumulant, mobius_to_top};

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn moments() {
        assert_eq!(moment_fubm(0, 1), Scalar::one());
        assert_eq!(moment_fubm(1, 1), s("Q"));
        assert_eq!(moment_fubm(2, 1), s("(1 - t)*Q^2"));
        assert_eq!(moment_fubm(-2, 1), s("(1 - t)*Q^2"));
        assert_eq!(moment_fubm(3, 1), s("(1 - 3*t + 3*t^2/2)*Q^3"));
        assert_eq!(moment_fubm(1, 2), s("Q^2"));
    }

    #[test]
    fn free_cumulants_small() {
        assert_eq!(free_cumulant_fubm(1), s("Q"));
        assert_eq!(free_cumulant_fubm(2), s("-t*Q^2"));
    }

    #[test]
    fn free_cumulant_four_by_mobius() {
        let k4 = mixed_cumulant(&FubmOracle::UNIT, &[1, 1, 1, 1]).unwrap();
        assert_eq!(k4, free_cumulant_fubm(4));
        assert_eq!(enumerate_nc(4).unwrap().len(), mobius_to_top(4).unwrap().len());
    }

    #[test]
    fn g_small() {
        let g = g_table(3).unwrap();
        assert_eq!(g.get(1).unwrap(), &s("1 - Q^2"));
        assert_eq!(g.get(2).unwrap(), &s("-1 + 4*Q^2 - (3 + 2*t)*Q^4"));
        let k4 = mixed_cumulant(&FubmOracle::UNIT, &alternating_word(4)).unwrap();
        assert_eq!(g.get(2).unwrap(), &k4);
    }

    #[test]
    fn h_small() {
        let h = h_table(1).unwrap();
        assert_eq!(h.get(0).unwrap(), &s("Q"));
        assert_eq!(h.get(1).unwrap(), &s("Q*(-1 + (1 + t)*Q^2)"));
    }

    #[test]
    fn p_poly_examples() {
        assert_eq!(p_poly(1, 3), Scalar::one());
        assert_eq!(p_poly(2, 2), s("-6 - 4*t"));
    }

    #[test]
    fn a_one_and_two() {
        let (closed, oracle, check) = a_table(2).unwrap();
        assert_eq!(oracle.get(1).unwrap(), &s("-2*Q^2"));
        assert_eq!(closed.get(1), oracle.get(1));
        assert!(check.passed, "{check:?}");
    }
}
