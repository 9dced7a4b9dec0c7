//! Textual form: integers, `/`, explicit `*`, `^`, variables `t` and `Q`.
//!
//! Terms are grouped by ascending power of `Q`, each group's `t`-polynomial
//! in ascending degree, e.g. `(-1 + 4*Q^2 - (3 + 2*t)*Q^4)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Poly, Scalar};

struct Chunk {
    negative: bool,
    body: String,
}

fn factors(coeff: &BigInt, t_exp: u32, q_exp: u32) -> Vec<String> {
    let mut out = Vec::new();
    if !coeff.is_one() || (t_exp == 0 && q_exp == 0) {
        out.push(coeff.to_string());
    }
    match t_exp {
        0 => {}
        1 => out.push("t".into()),
        k => out.push(format!("t^{k}")),
    }
    match q_exp {
        0 => {}
        1 => out.push("Q".into()),
        k => out.push(format!("Q^{k}")),
    }
    out
}

fn join(chunks: &[Chunk]) -> String {
    let mut s = String::new();
    for (i, c) in chunks.iter().enumerate() {
        match (i, c.negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&c.body);
    }
    s
}

fn chunks(p: &Poly) -> Vec<Chunk> {
    let mut groups: BTreeMap<u32, Vec<(u32, BigInt)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        groups.entry(m.q).or_default().push((m.t, c.clone()));
    }
    let mut out = Vec::new();
    for (q, mut terms) in groups {
        terms.sort_by_key(|(t, _)| *t);
        if q == 0 || terms.len() == 1 {
            for (t, c) in terms {
                out.push(Chunk { negative: c.is_negative(), body: factors(&c.abs(), t, q).join("*") });
            }
            continue;
        }
        let negative = terms[0].1.is_negative();
        let inner: Vec<Chunk> = terms
            .iter()
            .map(|(t, c)| {
                let c = if negative { -c } else { c.clone() };
                Chunk { negative: c.is_negative(), body: factors(&c.abs(), *t, 0).join("*") }
            })
            .collect();
        let qpart = if q == 1 { "Q".to_string() } else { format!("Q^{q}") };
        out.push(Chunk { negative, body: format!("({})*{qpart}", join(&inner)) });
    }
    out
}

/// Renders a polynomial, reporting whether it has several additive terms.
fn render_poly(p: &Poly) -> (String, bool) {
    if p.is_zero() {
        return ("0".into(), false);
    }
    let c = chunks(p);
    (join(&c), c.len() > 1)
}

/// Renders `num/den`. The stored denominator has a positive grlex-leading
/// coefficient; for display the sign is moved so that the denominator's first
/// printed term is positive, giving `-t*Q^2/(1 - Q^2)` rather than
/// `t*Q^2/(-1 + Q^2)`. Parsing either form yields the same value.
pub(super) fn render(x: &Scalar) -> String {
    if x.denominator().is_one() {
        let (num, num_multi) = render_poly(x.numerator());
        return if num_multi { format!("({num})") } else { num };
    }
    let flip = chunks(x.denominator()).first().is_some_and(|c| c.negative);
    let (num_p, den_p) = if flip {
        (x.numerator().neg(), x.denominator().neg())
    } else {
        (x.numerator().clone(), x.denominator().clone())
    };
    let (num, num_multi) = render_poly(&num_p);
    let num = if num_multi { format!("({num})") } else { num };
    let (den, den_multi) = render_poly(&den_p);
    let den_single_factor = !den_multi && !den.contains('*');
    if den_single_factor {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}
