//! Fixed inputs shared by the benchmarks.

use freeprob::{Scalar, Series};

/// Pairs of rational functions whose sum or quotient needs a nontrivial gcd.
pub fn gcd_pairs() -> Vec<(Scalar, Scalar)> {
    let raw = [
        ("t*Q^2/(1 - Q^2)", "(1 + t)*Q^3/(1 - Q^2)^2"),
        ("(1 - Q^2)^3/(1 + t*Q)", "(1 - Q^4)/(1 + t*Q)^2"),
        ("(2 - 6*t + 3*t^2)*Q^3/(1 - 2*Q^2 + (1 - t^2)*Q^4)", "t*Q^3*(3*t - 2)/(2*(1 - 2*Q^2 + (1 - t^2)*Q^4))"),
    ];
    raw.iter().map(|(a, b)| (a.parse().expect("literal"), b.parse().expect("literal"))).collect()
}

/// `z - z^2 + t z^3 - Q z^4 + ...` truncated at `order`.
pub fn revert_input(order: usize) -> Series {
    Series::from_fn(order, |k| match k {
        0 => Scalar::zero(),
        1 => Scalar::one(),
        k if k % 2 == 0 => Scalar::monomial(0, k as i32 / 2).scale_int(-1),
        k => Scalar::monomial(k as u32 / 2, 0),
    })
}
