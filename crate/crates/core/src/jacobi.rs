//! The free Jacobi process `J_t` with a single projection of trace 1/2:
//! its moment series `M_t`, the inverse `F_t` of `z M_t` (coefficients
//! `b_n`), the inverse of `M_t - 1` (coefficients `c_n`), and `S_t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Result};
use crate::fubm::{compose_linear, laplace_moment, moment_fubm, s_coefficient, FubmOracle};
use crate::ncpart::{cumulants_from_moments, mixed_cumulant};
use crate::scalar::Scalar;
use crate::series::{alpha_series, binomial_series, Series};
use crate::specfun::{binomial, factorial, hyper_pfq, laguerre_int, laguerre_poly, pochhammer, rat};
use crate::table::{Check, CoeffTable, Finding, Provenance};

pub const MAX_M: usize = 12;
pub const MAX_BC: usize = 8;
pub const MAX_KAPPA: usize = 6;

/// `U(z) = sum_{k>=1} phi(u_{ct}^k) z^k`.
pub fn u_series(order: usize, time_scale: u32) -> Series {
    Series::from_fn(order, |k| if k == 0 { Scalar::zero() } else { moment_fubm(k as i64, time_scale) })
}

/// `M_t(z) = (1-z)^{-1/2} [1 + 2 U_{2t}(alpha(z))]`.
pub fn m_series_closed(order: usize) -> Result<Series> {
    check_range("order", order, 1, MAX_M)?;
    let u_alpha = u_series(order, 2).compose(&alpha_series(order))?;
    let inner = &Series::one(order) + &u_alpha.scale(&Scalar::from_int(2));
    Ok(&binomial_series(&rat(-1, 2), order) * &inner)
}

/// Moments of `(u_{2t} + u_{2t}^* + 2)/4` by multinomial expansion.
pub fn m_series_oracle(order: usize) -> Result<Series> {
    check_range("order", order, 1, MAX_M)?;
    let moments: Vec<Scalar> = (0..=order as i64).map(|k| moment_fubm(k, 2)).collect();
    Ok(Series::from_fn(order, |n| {
        let mut acc = Scalar::zero();
        for a in 0..=n {
            for b in 0..=n - a {
                let c = n - a - b;
                let multi = factorial(n as u32) / (factorial(a as u32) * factorial(b as u32) * factorial(c as u32));
                let w = Scalar::from_int(multi * (BigInt::one() << c));
                acc = &acc + &(&w * &moments[(a as i64 - b as i64).unsigned_abs() as usize]);
            }
        }
        &acc * &Scalar::from_rational(&BigRational::new(BigInt::one(), BigInt::one() << (2 * n)))
    }))
}

pub fn m_series(order: usize) -> Result<(Series, Series, Check)> {
    let a = m_series_closed(order)?;
    let b = m_series_oracle(order)?;
    let check = Check::all_equal(
        format!("Jacobi moment series, closed form = multinomial oracle, order {order}"),
        (0..=order).map(|k| (k, a.coeff(k), b.coeff(k))),
    );
    Ok((a, b, check))
}

/// `F_t`, the compositional inverse of `w_t = z M_t`.
pub fn f_series(order: usize) -> Result<Series> {
    check_range("order", order, 1, MAX_BC)?;
    let m = m_series_closed(order)?;
    Ok(m.shift_up(1).revert()?)
}

/// `[U_{2t}]^m` coefficient `j`: `(m/j) L_{j-m}^{(m)}(2jt) E^j`, zero for `j < m`.
pub fn u_power_closed(m: u32, j: u32) -> Scalar {
    if j < m {
        return Scalar::zero();
    }
    let x = Scalar::t().scale_int(2 * j as i64);
    &(&laguerre_int(j - m, m as i64, &x) * &Scalar::monomial(0, 2 * j as i32)) * &Scalar::frac(m as i64, j as i64)
}

pub fn u_power_check(m: u32, order: usize) -> Check {
    let p = u_series(order, 2).powi(m);
    let closed: Vec<Scalar> = (0..=order as u32).map(|j| u_power_closed(m, j)).collect();
    Check::all_equal(format!("U^{m} closed form, order {order}"), (0..=order).map(|j| (j, p.coeff(j), &closed[j])))
}

/// `Q_j^{(n)}(t) = (1/j) sum_{m=1}^j (n)_m/(m-1)! (-2)^m L_{j-m}^{(m)}(2jt)`, `Q_0 = 1`.
pub fn q_poly(j: u32, n: u32) -> Scalar {
    if j == 0 {
        return Scalar::one();
    }
    let x = Scalar::t().scale_int(2 * j as i64);
    let nn = BigRational::from_integer(n.into());
    let sum: Scalar = (1..=j)
        .map(|m| {
            let c = pochhammer(&nn, m) * BigRational::from_integer(num_traits::pow(BigInt::from(-2), m as usize))
                / BigRational::from_integer(factorial(m - 1));
            &Scalar::from_rational(&c) * &laguerre_int(j - m, m as i64, &x)
        })
        .sum();
    &sum * &Scalar::frac(1, j as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BVariant {
    /// Pochhammer base `(1-n)/2`.
    AsPrinted,
    /// Pochhammer base `(-1-n)/2`.
    Corrected,
}

/// Closed-form double sum for `b_n`.
pub fn b_closed(n: u32, variant: BVariant) -> Scalar {
    let base = match variant {
        BVariant::AsPrinted => rat(1 - n as i64, 2),
        BVariant::Corrected => rat(-1 - n as i64, 2),
    };
    let mut total = Scalar::zero();
    for j in 0..n {
        let c = pochhammer(&base, n - 1 - j)
            / BigRational::from_integer(factorial(n - 1 - j) * (BigInt::one() << (2 * j)));
        let inner: Scalar = (0..=j)
            .map(|k| {
                let b = Scalar::from_int(binomial(2 * j as i64, (j - k) as i64));
                &(&q_poly(k, n) * &b) * &Scalar::monomial(0, 2 * k as i32)
            })
            .sum();
        total = &total + &(&Scalar::from_rational(&c) * &inner);
    }
    &total * &Scalar::frac(1, n as i64)
}

/// `b_1..=b_N`: the reversion oracle, each closed-form variant, and the verdict.
pub fn b_table(n_max: usize) -> Result<(CoeffTable, Vec<(BVariant, CoeffTable)>, Finding)> {
    let f = f_series(n_max)?;
    let oracle = CoeffTable::new("b", Provenance::Oracle, 1, f.coeffs()[1..].to_vec());
    let mut variants = Vec::new();
    let mut evidence = Vec::new();
    let mut holds = |v: BVariant| -> bool {
        let vals: Vec<Scalar> = (1..=n_max as u32).map(|n| b_closed(n, v)).collect();
        let mut ok = true;
        for (i, x) in vals.iter().enumerate() {
            let diff = x - oracle.get(i + 1).unwrap();
            if !diff.is_zero() {
                ok = false;
                evidence.push(format!("{v:?} n = {}: closed - oracle = {diff}", i + 1));
            }
        }
        variants.push((v, CoeffTable::new("b", Provenance::ClosedForm, 1, vals)));
        ok
    };
    let printed = holds(BVariant::AsPrinted);
    let corrected = holds(BVariant::Corrected);
    let resolution = match (printed, corrected) {
        (true, _) => "printed Pochhammer base (1-n)/2 agrees with the reversion oracle".to_string(),
        (false, true) => "Pochhammer base must be (-1-n)/2: the Brown factor is sqrt(1-z), not 1/sqrt(1-z)".to_string(),
        (false, false) => "neither Pochhammer base reproduces the reversion oracle".to_string(),
    };
    let finding = Finding { topic: "b_n Pochhammer base".into(), as_printed_holds: printed, resolution, evidence };
    Ok((oracle, variants, finding))
}

/// `(1/j) L_{j-m}^{(m)}(jt)` times the candidate factor `m` versus the
/// `m`-fold convolution of `s_k = L_{k-1}^{(1)}(kt)/k`.
pub fn convolution_identity_check(m: u32, j: u32) -> (Check, Scalar) {
    let s = Series::from_fn(j as usize, |k| if k == 0 { Scalar::zero() } else { s_coefficient(k as u32) });
    let lhs = s.powi(m).coeff(j as usize).clone();
    let printed = &laguerre_int(j - m, m as i64, &Scalar::t().scale_int(j as i64)) * &Scalar::frac(1, j as i64);
    let ratio = lhs.checked_div(&printed).unwrap_or_else(|_| Scalar::zero());
    let corrected = printed.scale_int(m as i64);
    (Check::equal(format!("s-convolution m = {m}, j = {j}"), &lhs, &corrected), ratio)
}

/// `-(1/k) d/dt s_k` against `sum_{j=1}^{k-1} s_j s_{k-j}`; returns the check
/// of `-(2/k) s_k' = sum s_j s_{k-j}` and the ratio printed-lhs / sum.
pub fn s_derivative_check(k: u32) -> (Check, Scalar) {
    let lhs = &s_coefficient(k).d_dt() * &Scalar::frac(-1, k as i64);
    let sum: Scalar = (1..k).map(|j| &s_coefficient(j) * &s_coefficient(k - j)).sum();
    let ratio = lhs.checked_div(&sum).unwrap_or_else(|_| Scalar::zero());
    (Check::equal(format!("s-derivative relation k = {k}"), &lhs.scale_int(2), &sum), ratio)
}

/// `E^k Q_k^{(n)} / n` against `-2 t^{n+1}/n! int_0^inf x^n phi(u_{2(t+x)}^k) dx`.
pub fn q_integral_rep_check(n: u32, k: u32) -> crate::fubm::IntegralRepReport {
    let target = &(&Scalar::monomial(0, 2 * k as i32) * &q_poly(k, n)) * &Scalar::frac(1, n as i64);
    let l = laguerre_poly(k - 1, &Scalar::one());
    let two_k = Scalar::from_int(2 * k as i64);
    let poly_x = compose_linear(&l, &(&Scalar::t() * &two_k), &two_k);
    let integral = &(&laplace_moment(&poly_x, n, k) * &Scalar::monomial(0, 2 * k as i32)) * &Scalar::frac(1, k as i64);
    let prefactor =
        &Scalar::from_rational(&BigRational::new(BigInt::from(-2), factorial(n))) * &Scalar::monomial(n + 1, 0);
    crate::fubm::IntegralRepReport::from_parts(n, k, target, &prefactor * &integral)
}

/// Direct inner sum `sum_{j=k}^{n-1} ((1-n)/2)_{n-1-j} / (4^j (n-1-j)!) C(2j, j-k)`
/// against `4^{1-n} C(2n-2, n-1-k) 3F2(1-k-n, 1+k-n, (1-n)/2; 1-n, 3/2-n; 1)`.
pub fn hyper_remark_check(n: u32, k: u32) -> Result<Check> {
    let ni = n as i64;
    let ki = k as i64;
    let base = rat(1 - ni, 2);
    let direct: BigRational = (k..n)
        .map(|j| {
            pochhammer(&base, n - 1 - j) * BigRational::from_integer(binomial(2 * j as i64, j as i64 - ki))
                / BigRational::from_integer(factorial(n - 1 - j) * (BigInt::one() << (2 * j)))
        })
        .sum();
    let prefactor = BigRational::new(binomial(2 * ni - 2, ni - 1 - ki), BigInt::one() << (2 * (n - 1)));
    let f = if k == 0 {
        hyper_pfq(&[rat(1 - ni, 1), base.clone()], &[rat(3 - 2 * ni, 2)], &rat(1, 1))?
    } else {
        hyper_pfq(&[rat(1 - ki - ni, 1), rat(1 + ki - ni, 1), base.clone()], &[rat(1 - ni, 1), rat(3 - 2 * ni, 2)], &rat(1, 1))?
    };
    let closed = prefactor * f;
    let name = format!("hypergeometric form of the b_n inner sum, n = {n}, k = {k}");
    Ok(if direct == closed {
        Check::new(name, true, None)
    } else {
        Check::new(name, false, Some(format!("direct - closed = {}", direct - closed)))
    })
}

fn h_poly_signed(m: u32, n: u32, two_t: i64) -> Scalar {
    let mut deriv = (&Scalar::one() + &Scalar::e()).pow(-(n as i64)).expect("1 + Q^2 is nonzero");
    let nn = BigRational::from_integer(n.into());
    let mut total = Scalar::zero();
    for k in 0..=m {
        let c = BigRational::from_integer(binomial(m as i64, k as i64) * num_traits::pow(BigInt::from(two_t), k as usize))
            * pochhammer(&nn, m - k);
        total = &total + &(&(&Scalar::from_rational(&c) * &Scalar::monomial(k, 0)) * &deriv);
        if k < m {
            deriv = deriv.d_dt();
        }
    }
    let sign = if m % 2 == 0 { 1 } else { -1 };
    &total * &Scalar::from_rational(&BigRational::new(sign.into(), factorial(m)))
}

/// Taylor coefficients of `G_{n,t}`:
/// `H_m^{(n)} = (-1)^m/m! sum_k C(m,k) (n)_{m-k} (-2t)^k D^k (1+Q^2)^{-n}`.
///
/// Each `d/dt` of `e^{-jt}` brings down `-j`, hence `(-2t)^k`.
pub fn h_poly(m: u32, n: u32) -> Scalar {
    h_poly_signed(m, n, -2)
}

/// The same sum with `(2t)^k` in place of `(-2t)^k`.
pub fn h_poly_printed(m: u32, n: u32) -> Scalar {
    h_poly_signed(m, n, 2)
}

/// `G_{n,t}(z) = 1/[(1+z)^n (1 + e^{-t(1+2z)})^n]` expanded directly.
pub fn g_nt_series(n: u32, order: usize) -> Series {
    let z = Series::z(order);
    let one = Series::one(order);
    let exp = z.scale(&Scalar::t().scale_int(-2)).exp().expect("zero constant term").scale(&Scalar::e());
    let den = &(&one + &z) * &(&one + &exp);
    den.powi(n).recip().expect("constant term 2^n")
}

pub fn h_lemma_check(n: u32, order: usize) -> Check {
    let g = g_nt_series(n, order);
    let hs: Vec<Scalar> = (0..=order as u32).map(|m| h_poly(m, n)).collect();
    Check::all_equal(
        format!("H coefficients of G_(n,t), n = {n}, order {order}"),
        (0..=order).map(|m| (m, g.coeff(m), &hs[m])),
    )
}

/// Whether the `(2t)^k` form of the coefficients reproduces `G_{n,t}`.
pub fn h_sign_finding(n_max: u32, order: usize) -> Finding {
    let mut evidence = Vec::new();
    for n in 1..=n_max {
        let g = g_nt_series(n, order);
        for m in 0..=order as u32 {
            let diff = &h_poly_printed(m, n) - g.coeff(m as usize);
            if !diff.is_zero() {
                evidence.push(format!("n = {n}, m = {m}: (2t)^k form - Taylor coefficient = {diff}"));
            }
        }
    }
    let holds = evidence.is_empty();
    Finding {
        topic: "H_m^(n) sign of 2t".into(),
        as_printed_holds: holds,
        resolution: if holds {
            "(2t)^k form matches the direct expansion".into()
        } else {
            "the factor is (-2t)^k: each t-derivative of e^(-jt) contributes -j".into()
        },
        evidence,
    }
}

/// `d_j^{(n)} = sum_k (-n-1)_k/k! (2n+1)_{j-k}/(j-k)!` as printed.
pub fn d_coef_printed(j: u32, n: u32) -> BigRational {
    d_coef_signed(j, n, false)
}

/// Coefficients of `(1-z)^{n+1}/(1+z)^{2n+1}`: the printed sum with
/// `(-1)^{j-k}` on the second factor.
pub fn d_coef(j: u32, n: u32) -> BigRational {
    d_coef_signed(j, n, true)
}

fn d_coef_signed(j: u32, n: u32, alternate: bool) -> BigRational {
    let a = rat(-(n as i64) - 1, 1);
    let b = rat(2 * n as i64 + 1, 1);
    (0..=j)
        .map(|k| {
            let term = pochhammer(&a, k) * pochhammer(&b, j - k) / BigRational::from_integer(factorial(k) * factorial(j - k));
            if alternate && (j - k) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

fn v_poly_with(j: u32, n: u32, h: fn(u32, u32) -> Scalar) -> Scalar {
    let two_n = Scalar::from_int(BigInt::one() << n);
    if j == 0 {
        return &two_n * &h(0, n);
    }
    let x = Scalar::t().scale_int(2 * j as i64);
    let sum: Scalar = (1..=j).map(|m| &h(m, n).scale_int(m as i64) * &laguerre_int(j - m, m as i64, &x)).sum();
    &(&(&two_n * &sum) * &Scalar::monomial(0, 2 * j as i32)) * &Scalar::frac(1, j as i64)
}

/// `V_0 = 2^n H_0^{(n)}`, `V_j = 2^n E^j/j sum_{m=1}^j m H_m^{(n)} L_{j-m}^{(m)}(2jt)`.
pub fn v_poly(j: u32, n: u32) -> Scalar {
    v_poly_with(j, n, h_poly)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CVariant {
    /// Inner sum `sum_k d_{j-k} V_j`, with `d` and `H` as printed.
    AsPrinted,
    /// Inner sum `sum_k d_{j-k} V_k`, with `d` and `H` as printed.
    Cauchy,
    /// Cauchy pairing with the alternating `d` and the `(-2t)^k` form of `H`.
    Corrected,
}

impl CVariant {
    pub const ALL: [CVariant; 3] = [CVariant::AsPrinted, CVariant::Cauchy, CVariant::Corrected];
}

pub fn c_closed(n: u32, variant: CVariant) -> Scalar {
    let (h, d): (fn(u32, u32) -> Scalar, fn(u32, u32) -> BigRational) = match variant {
        CVariant::AsPrinted | CVariant::Cauchy => (h_poly_printed, d_coef_printed),
        CVariant::Corrected => (h_poly, d_coef),
    };
    let v: Vec<Scalar> = (0..n).map(|j| v_poly_with(j, n, h)).collect();
    let mut total = Scalar::zero();
    for j in 0..n {
        let inner: Scalar = (0..=j)
            .map(|k| {
                let dd = Scalar::from_rational(&d(j - k, n));
                let vv = match variant {
                    CVariant::AsPrinted => &v[j as usize],
                    CVariant::Cauchy | CVariant::Corrected => &v[k as usize],
                };
                &dd * vv
            })
            .sum();
        total = &total + &(&Scalar::from_int(binomial(2 * n as i64 - 2, (n - 1 - j) as i64)) * &inner);
    }
    &total * &Scalar::from_rational(&BigRational::new(BigInt::one(), BigInt::from(n) << (2 * (n - 1))))
}

/// `c_1..=c_N` from reverting `M_t - 1`.
pub fn c_table_oracle(n_max: usize) -> Result<CoeffTable> {
    check_range("N", n_max, 1, MAX_BC + 1)?;
    let m = m_series_closed(n_max)?;
    let inv = (&m - &Series::one(n_max)).revert()?;
    Ok(CoeffTable::new("c", Provenance::Oracle, 1, inv.coeffs()[1..].to_vec()))
}

pub fn c_table(n_max: usize) -> Result<(CoeffTable, Vec<(CVariant, CoeffTable)>, Finding)> {
    check_range("N", n_max, 1, MAX_BC)?;
    let oracle = c_table_oracle(n_max)?;
    let mut variants = Vec::new();
    let mut evidence = Vec::new();
    let mut matching = Vec::new();
    for v in CVariant::ALL {
        let vals: Vec<Scalar> = (1..=n_max as u32).map(|n| c_closed(n, v)).collect();
        let first_bad = vals.iter().enumerate().find(|(i, x)| *x != oracle.get(i + 1).unwrap());
        match first_bad {
            None => matching.push(v),
            Some((i, x)) => {
                let o = oracle.get(i + 1).unwrap();
                evidence.push(format!("{v:?}: first mismatch at n = {}, closed - oracle = {}", i + 1, x - o));
            }
        }
        variants.push((v, CoeffTable::new("c", Provenance::ClosedForm, 1, vals)));
    }
    let as_printed_holds = matching.contains(&CVariant::AsPrinted);
    let resolution = if matching.is_empty() {
        "no variant reproduces the reversion oracle".to_string()
    } else {
        format!("variants matching the reversion oracle: {matching:?}")
    };
    let finding = Finding { topic: "c_n closed form".into(), as_printed_holds, resolution, evidence };
    Ok((oracle, variants, finding))
}

/// `S_t(z) = c_1 + sum_{n>=1} (c_{n+1} + c_n) z^n` to order `N`.
pub fn s_series(n_max: usize) -> Result<Series> {
    check_range("N", n_max, 0, MAX_BC)?;
    let c = c_table_oracle(n_max + 1)?;
    Ok(Series::from_fn(n_max, |n| {
        if n == 0 {
            c.get(1).unwrap().clone()
        } else {
            c.get(n + 1).unwrap() + c.get(n).unwrap()
        }
    }))
}

pub fn s_transform(n_max: usize) -> Result<CoeffTable> {
    let s = s_series(n_max)?;
    Ok(CoeffTable::new("S", Provenance::Oracle, 0, s.into_coeffs()))
}

/// `R_t(z) = z / F_t(z) - 1`.
pub fn r_series(order: usize) -> Result<Series> {
    let f = f_series(order + 1)?;
    let ratio = f.shift_down(1)?.recip()?;
    Ok(&ratio - &Series::one(order))
}

/// `R_t(z S_t(z)) = z` and `z S_t(z) = (1+z) (M_t - 1)^{-1}(z)`.
pub fn s_transform_checks(order: usize) -> Result<Vec<Check>> {
    let s = s_series(order)?;
    let zs = s.shift_up(1);
    let r = r_series(order)?;
    let composed = r.compose(&zs)?;
    let z = Series::z(order);
    let inv = (&m_series_closed(order)? - &Series::one(order)).revert()?;
    let rhs = &(&Series::one(order) + &z) * &inv;
    Ok(vec![
        Check::all_equal(format!("R_t(z S_t(z)) = z, order {order}"), (0..=order).map(|k| (k, composed.coeff(k), z.coeff(k)))),
        Check::all_equal(
            format!("z S_t(z) = (1+z) (M_t - 1)^(-1)(z), order {order}"),
            (0..=order).map(|k| (k, zs.coeff(k), rhs.coeff(k))),
        ),
    ])
}

/// Free cumulants of `J_t` by three routes: `R_t`, Möbius inversion of the
/// moments, and the star-cumulant sum at doubled time. The third route is
/// skipped above `star_max`.
pub fn jacobi_free_cumulants(n_max: usize, star_max: usize) -> Result<(CoeffTable, Vec<Check>)> {
    check_range("N", n_max, 1, MAX_KAPPA)?;
    let r = r_series(n_max)?;
    let via_r: Vec<Scalar> = r.coeffs()[1..].to_vec();
    let moments = m_series_oracle(n_max)?.into_coeffs();
    let via_mobius = cumulants_from_moments(&moments)?;
    let oracle = FubmOracle { time_scale: 2 };
    let mut checks = vec![Check::all_equal(
        format!("kappa_n(J_t): R-transform = Möbius inversion, n <= {n_max}"),
        (1..=n_max).map(|n| (n, &via_r[n - 1], &via_mobius[n - 1])),
    )];
    let star_n = n_max.min(star_max);
    let mut via_star = Vec::new();
    for n in 1..=star_n {
        let mut acc = Scalar::zero();
        for bits in 0u32..(1 << n) {
            let word: Vec<i64> = (0..n).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect();
            acc = &acc + &mixed_cumulant(&oracle, &word)?;
        }
        acc = &acc * &Scalar::from_rational(&BigRational::new(BigInt::one(), BigInt::one() << (2 * n)));
        if n == 1 {
            acc = &acc + &Scalar::frac(1, 2);
        }
        via_star.push(acc);
    }
    checks.push(Check::all_equal(
        format!("kappa_n(J_t): star-cumulant sum = Möbius inversion, n <= {star_n}"),
        (1..=star_n).map(|n| (n, &via_star[n - 1], &via_mobius[n - 1])),
    ));
    Ok((CoeffTable::new("kappa(J)", Provenance::Oracle, 1, via_r), checks))
}
