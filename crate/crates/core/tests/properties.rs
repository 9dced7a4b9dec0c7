use freeprob::fubm::FubmOracle;
use freeprob::ncpart::{enumerate_nc, ks_lhs, ks_rhs, mobius, moment_from_cumulants, MomentOracle, NCPartition};
use freeprob::scalar::{float_to_rational, rational_to_float};
use freeprob::series::{alpha_series, binomial_series, brown_transform, lagrange_revert};
use freeprob::verify::brown_identity_check;
use freeprob::{Scalar, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn poly(max_t: u32, max_q: u32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((0..=max_t, 0..=max_q, -5i64..=5), 1..5)
        .prop_map(|terms| terms.into_iter().map(|(a, b, c)| Scalar::monomial(a, b as i32).scale_int(c)).sum())
}

/// `1 + (nonnegative terms)`: positive for `t > 0`.
fn positive_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((0..=2u32, 0..=3i32, 0i64..=4), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::one(), |acc, (a, b, c)| &acc + &Scalar::monomial(a, b).scale_int(c))
    })
}

fn smooth_scalar() -> impl Strategy<Value = Scalar> {
    (poly(3, 4), positive_poly()).prop_map(|(n, d)| &n / &d)
}

fn any_scalar() -> impl Strategy<Value = Scalar> {
    (poly(3, 4), poly(2, 3).prop_filter("nonzero", |d| !d.is_zero()), any::<bool>())
        .prop_map(|(n, d, flip)| if flip { &n / &d } else { &(&n / &d) * &Scalar::monomial(0, -1) })
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn time() -> impl Strategy<Value = BigRational> {
    prop::sample::select(vec![(1, 2), (1, 1), (2, 1), (3, 1), (7, 4)]).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(a in any_scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn multiply_then_divide(a in any_scalar(), b in any_scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a);
    }

    #[test]
    fn field_laws(a in any_scalar(), b in any_scalar(), c in any_scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn d_dt_is_a_derivation(a in any_scalar(), b in any_scalar()) {
        let lhs = (&a * &b).d_dt();
        let rhs = &(&a.d_dt() * &b) + &(&a * &b.d_dt());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_multiplicative(a in smooth_scalar(), b in smooth_scalar(), t in time()) {
        let bits = 128;
        let ev = |x: &Scalar| float_to_rational(&x.eval_rational(&t, bits).unwrap()).unwrap();
        let prod = ev(&(&a * &b));
        let separate = ev(&a) * ev(&b);
        let scale = prod.abs().max(separate.abs());
        let ulp = BigRational::new(BigInt::from(1), BigInt::from(1) << bits);
        prop_assert!((&prod - &separate).abs() <= ulp * BigInt::from(4) * scale);
    }

    #[test]
    fn eval_matches_central_difference(a in smooth_scalar(), t in time()) {
        let bits = 256;
        let h = BigRational::new(1.into(), BigInt::from(1) << 24);
        let ev = |x: &Scalar, at: &BigRational| float_to_rational(&x.eval(&rational_to_float(at, bits + 64), bits).unwrap()).unwrap();
        let fd = (ev(&a, &(&t + &h)) - ev(&a, &(&t - &h))) / (&h * BigInt::from(2));
        let d = ev(&a.d_dt(), &t);
        let tol = BigRational::new(1.into(), BigInt::from(10).pow(9)) * d.abs().max(BigRational::from_integer(1.into()));
        prop_assert!((&fd - &d).abs() < tol, "fd {} vs {}", fd, d);
    }
}

fn revertible(order: usize) -> impl Strategy<Value = Series> {
    (small_rational().prop_filter("nonzero", |r| !r.is_zero()), prop::collection::vec(poly(1, 2), order - 1))
        .prop_map(move |(lead, rest)| {
            let mut coeffs = vec![Scalar::zero(), Scalar::from_rational(&lead)];
            coeffs.extend(rest);
            Series::new(coeffs, order)
        })
}

fn no_constant(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(poly(1, 1), order).prop_map(move |rest| {
        Series::new(std::iter::once(Scalar::zero()).chain(rest).collect(), order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn revert_is_an_involution(f in revertible(6)) {
        let g = f.revert().unwrap();
        prop_assert_eq!(g.revert().unwrap(), f.clone());
        prop_assert_eq!(f.compose(&g).unwrap(), Series::z(6));
    }

    #[test]
    fn revert_matches_lagrange(f in revertible(6)) {
        prop_assert_eq!(f.revert().unwrap(), lagrange_revert(&f).unwrap());
    }

    #[test]
    fn compose_is_associative(
        f in prop::collection::vec(poly(1, 1), 6).prop_map(|c| Series::new(c, 5)),
        g in no_constant(5),
        h in no_constant(5),
    ) {
        let left = f.compose(&g.compose(&h).unwrap()).unwrap();
        let right = f.compose(&g).unwrap().compose(&h).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn brown_identity_random(r in prop::collection::vec(small_rational(), 7)) {
        let r = Series::new(r.iter().map(Scalar::from_rational).collect(), 6);
        let check = brown_identity_check("random", &r).unwrap();
        prop_assert!(check.passed, "{:?}", check);
        // p_2 = C(4,2) r_0 + C(4,1) r_1 + C(4,0) r_2
        let p = brown_transform(&r);
        let direct = &(&r.coeff(0).scale_int(6) + &r.coeff(1).scale_int(4)) + r.coeff(2);
        prop_assert_eq!(p.coeff(2), &direct);
    }
}

#[test]
fn alpha_series_head() {
    let a = alpha_series(4);
    assert_eq!(a.coeff(0), &Scalar::zero());
    assert_eq!(a.coeff(1), &Scalar::frac(1, 4));
    // 4z / (1+z)^2
    let z = Series::z(4);
    let inv_sq = binomial_series(&BigRational::from_integer((-2).into()), 4).compose(&z.scale(&Scalar::from_int(-1))).unwrap();
    let inv = &z.scale(&Scalar::from_int(4)) * &inv_sq;
    assert_eq!(a.compose(&inv).unwrap(), Series::z(4));
}

fn partition_below(n: usize) -> impl Strategy<Value = (NCPartition, NCPartition)> {
    (any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(move |(i, j)| {
        let all = enumerate_nc(n).unwrap();
        let rho = all[i.index(all.len())].clone();
        let below: Vec<_> = all.into_iter().filter(|p| p.leq(&rho).unwrap()).collect();
        (below[j.index(below.len())].clone(), rho)
    })
}

/// Random composition of `n` as an interval partition.
fn interval_partition(n: usize) -> impl Strategy<Value = NCPartition> {
    prop::collection::vec(any::<bool>(), n - 1).prop_map(move |cuts| {
        let mut blocks = vec![vec![1]];
        for (i, cut) in cuts.into_iter().enumerate() {
            if cut {
                blocks.push(Vec::new());
            }
            blocks.last_mut().unwrap().push(i + 2);
        }
        NCPartition::from_blocks(n, &blocks).unwrap()
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![1i64, -1]), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mobius_defining_relation((pi, rho) in (1usize..=7).prop_flat_map(partition_below)) {
        let sum: i64 = pi.coarsenings(Some(&rho)).iter().map(|tau| mobius(tau, &rho).unwrap()).sum();
        prop_assert_eq!(sum, if pi == rho { 1 } else { 0 });
    }

    #[test]
    fn moments_from_cumulants(w in word(8)) {
        let net: i64 = w.iter().sum();
        let m = moment_from_cumulants(&FubmOracle::UNIT, &w).unwrap();
        prop_assert_eq!(m, FubmOracle::UNIT.moment(net));
    }

    #[test]
    fn product_formula((sigma, w) in (1usize..=6).prop_flat_map(|n| (interval_partition(n), prop::collection::vec(prop::sample::select(vec![1i64, -1]), n)))) {
        prop_assert_eq!(ks_lhs(&FubmOracle::UNIT, &sigma, &w).unwrap(), ks_rhs(&FubmOracle::UNIT, &sigma, &w).unwrap());
    }
}

#[test]
fn product_formula_alternating() {
    for n in 1..=6 {
        let w: Vec<i64> = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        for sigma in enumerate_nc(n).unwrap().into_iter().filter(NCPartition::is_interval) {
            assert_eq!(ks_lhs(&FubmOracle::UNIT, &sigma, &w).unwrap(), ks_rhs(&FubmOracle::UNIT, &sigma, &w).unwrap(), "{sigma}");
        }
    }
}
