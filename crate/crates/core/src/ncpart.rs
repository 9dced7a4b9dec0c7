//! Noncrossing partitions, their Möbius function, and free cumulants of
//! words in a unitary and its adjoint computed by brute force over NC(n).

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{check_range, Error, Result};
use crate::scalar::Scalar;

pub const MAX_ENUM: usize = 12;
pub const MAX_CUMULANT: usize = 10;

/// A noncrossing partition of `{1, ..., n}`, stored as the label of each
/// element's block with blocks numbered in order of their minima.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCPartition {
    labels: Vec<u8>,
}

impl NCPartition {
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let invalid = || Error::InvalidPartition(format!("{blocks:?}"), n);
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(invalid());
            }
            for &x in block {
                if x == 0 || x > n || raw[x - 1] != usize::MAX {
                    return Err(invalid());
                }
                raw[x - 1] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(invalid());
        }
        let p = NCPartition { labels: canonical(&raw) };
        if p.is_crossing() {
            return Err(invalid());
        }
        Ok(p)
    }

    /// `0_n`: all singletons.
    pub fn bottom(n: usize) -> Self {
        NCPartition { labels: (0..n as u8).collect() }
    }

    /// `1_n`: a single block.
    pub fn top(n: usize) -> Self {
        NCPartition { labels: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Blocks as sorted 1-based element lists, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    fn is_crossing(&self) -> bool {
        let l = &self.labels;
        let n = l.len();
        for a in 0..n {
            for b in a + 1..n {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..n {
                    if l[c] != l[a] {
                        continue;
                    }
                    if (c + 1..n).any(|d| l[d] == l[b]) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Whether every block is a set of consecutive integers.
    pub fn is_interval(&self) -> bool {
        self.labels.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// Reverse refinement order: every block of `self` lies inside a block of `rho`.
    pub fn leq(&self, rho: &NCPartition) -> Result<bool> {
        same_size(self, rho)?;
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (a, b) in self.labels.iter().zip(&rho.labels) {
            let slot = &mut image[*a as usize];
            if *slot == u8::MAX {
                *slot = *b;
            } else if *slot != *b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least upper bound in NC(n).
    pub fn join(&self, rho: &NCPartition) -> Result<NCPartition> {
        same_size(self, rho)?;
        let n = self.n();
        let mut uf: Vec<usize> = (0..n).collect();
        for part in [self, rho] {
            let mut first = HashMap::new();
            for (i, &l) in part.labels.iter().enumerate() {
                let root = *first.entry(l).or_insert(i);
                union(&mut uf, root, i);
            }
        }
        loop {
            let raw: Vec<usize> = (0..n).map(|i| find(&mut uf, i)).collect();
            let p = NCPartition { labels: canonical(&raw) };
            match p.first_crossing() {
                None => return Ok(p),
                Some((a, b)) => union(&mut uf, a, b),
            }
        }
    }

    fn first_crossing(&self) -> Option<(usize, usize)> {
        let l = &self.labels;
        let n = l.len();
        for a in 0..n {
            for b in a + 1..n {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..n {
                    if l[c] == l[a] && (c + 1..n).any(|d| l[d] == l[b]) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// All noncrossing partitions `tau` with `self <= tau <= bound`.
    pub fn coarsenings(&self, bound: Option<&NCPartition>) -> Vec<NCPartition> {
        let mut out = Vec::new();
        let mut gen = Coarsen {
            pi: &self.labels,
            rho: bound.map(|r| r.labels.as_slice()),
            tau_of_block: vec![u8::MAX; self.num_blocks()],
            tau_rho: Vec::new(),
            stack: Vec::new(),
            labels: vec![0; self.n()],
        };
        gen.run(0, &mut out);
        out
    }
}

struct Coarsen<'a> {
    pi: &'a [u8],
    rho: Option<&'a [u8]>,
    tau_of_block: Vec<u8>,
    tau_rho: Vec<u8>,
    stack: Vec<u8>,
    labels: Vec<u8>,
}

impl Coarsen<'_> {
    fn run(&mut self, i: usize, out: &mut Vec<NCPartition>) {
        if i == self.pi.len() {
            out.push(NCPartition { labels: self.labels.clone() });
            return;
        }
        let b = self.pi[i] as usize;
        let assigned = self.tau_of_block[b];
        if assigned != u8::MAX {
            let Some(pos) = self.stack.iter().rposition(|&t| t == assigned) else { return };
            let popped = self.stack.split_off(pos + 1);
            self.labels[i] = assigned;
            self.run(i + 1, out);
            self.stack.extend(popped);
            return;
        }
        let r = self.rho.map_or(0, |r| r[i]);
        // open a new block of tau
        let fresh = self.tau_rho.len() as u8;
        self.tau_rho.push(r);
        self.tau_of_block[b] = fresh;
        self.stack.push(fresh);
        self.labels[i] = fresh;
        self.run(i + 1, out);
        self.stack.pop();
        self.tau_rho.pop();
        // or merge into an open block
        for pos in (0..self.stack.len()).rev() {
            let t = self.stack[pos];
            if self.tau_rho[t as usize] != r {
                continue;
            }
            let popped = self.stack.split_off(pos + 1);
            self.tau_of_block[b] = t;
            self.labels[i] = t;
            self.run(i + 1, out);
            self.stack.extend(popped);
        }
        self.tau_of_block[b] = u8::MAX;
    }
}

fn canonical(raw: &[usize]) -> Vec<u8> {
    let mut seen: HashMap<usize, u8> = HashMap::new();
    raw.iter()
        .map(|x| {
            let next = seen.len() as u8;
            *seen.entry(*x).or_insert(next)
        })
        .collect()
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}

fn same_size(a: &NCPartition, b: &NCPartition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

impl fmt::Display for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

impl fmt::Debug for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All of NC(n), `1 <= n <= 12`, in lexicographic order of block labels.
pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>> {
    check_range("n", n, 1, MAX_ENUM)?;
    let mut all = NCPartition::bottom(n).coarsenings(None);
    all.sort();
    Ok(all)
}

pub fn catalan(n: u32) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k as u64 + 1) / (k as u64 + 2))
}

thread_local! {
    static MOBIUS_MEMO: RefCell<HashMap<(NCPartition, NCPartition), i64>> = RefCell::new(HashMap::new());
}

/// Möbius function of the interval `[pi, rho]` in NC(n).
pub fn mobius(pi: &NCPartition, rho: &NCPartition) -> Result<i64> {
    if !pi.leq(rho)? {
        return Err(Error::NotLeq(pi.to_string(), rho.to_string()));
    }
    Ok(mobius_rec(pi, rho))
}

// mu(pi, rho) = -sum_{pi < tau <= rho} mu(tau, rho)
fn mobius_rec(pi: &NCPartition, rho: &NCPartition) -> i64 {
    if pi == rho {
        return 1;
    }
    let key = (pi.clone(), rho.clone());
    if let Some(v) = MOBIUS_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let v = -pi
        .coarsenings(Some(rho))
        .iter()
        .filter(|tau| *tau != pi)
        .map(|tau| mobius_rec(tau, rho))
        .sum::<i64>();
    MOBIUS_MEMO.with(|m| m.borrow_mut().insert(key, v));
    v
}

/// `(pi, mu(pi, 1_n))` for every pi in NC(n), cached per `n`.
pub fn mobius_to_top(n: usize) -> Result<Arc<Vec<(NCPartition, i64)>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(NCPartition, i64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("mobius cache").get(&n) {
        return Ok(v.clone());
    }
    let top = NCPartition::top(n);
    let table: Vec<(NCPartition, i64)> =
        enumerate_nc(n)?.into_iter().map(|p| { let m = mobius_rec(&p, &top); (p, m) }).collect();
    let table = Arc::new(table);
    cache.lock().expect("mobius cache").insert(n, table.clone());
    Ok(table)
}

/// Moments `phi(u^m)` of a unitary whose law is invariant under conjugation.
pub trait MomentOracle {
    /// `phi(u^m)` for `m >= 1`.
    fn positive_moment(&self, m: u64) -> Scalar;

    fn moment(&self, m: i64) -> Scalar {
        if m == 0 {
            Scalar::one()
        } else {
            self.positive_moment(m.unsigned_abs())
        }
    }
}

/// Haar unitary: `phi(u^m) = delta_{m,0}`.
pub struct HaarOracle;

impl MomentOracle for HaarOracle {
    fn positive_moment(&self, _m: u64) -> Scalar {
        Scalar::zero()
    }
}

impl<F: Fn(u64) -> Scalar> MomentOracle for F {
    fn positive_moment(&self, m: u64) -> Scalar {
        self(m)
    }
}

/// Free cumulant `kappa_n(u^{e_1}, ..., u^{e_n})`; entries are net powers,
/// so products of `u` and `u*` collapse by unitarity.
pub fn mixed_cumulant(oracle: &dyn MomentOracle, word: &[i64]) -> Result<Scalar> {
    check_range("word length", word.len(), 1, MAX_CUMULANT)?;
    let n = word.len();
    // group Möbius weights by the multiset of nonzero block powers
    let mut grouped: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
    for (p, mu) in mobius_to_top(n)?.iter() {
        let mut net = vec![0i64; p.num_blocks()];
        for (i, &l) in p.labels().iter().enumerate() {
            net[l as usize] += word[i];
        }
        let mut key: Vec<u64> = net.iter().filter(|&&e| e != 0).map(|e| e.unsigned_abs()).collect();
        key.sort_unstable();
        *grouped.entry(key).or_insert(0) += mu;
    }
    let mut moments: HashMap<u64, Scalar> = HashMap::new();
    let mut total = Scalar::zero();
    for (key, c) in grouped {
        if c == 0 {
            continue;
        }
        let mut term = Scalar::from_int(c);
        for m in key {
            let phi = moments.entry(m).or_insert_with(|| oracle.positive_moment(m));
            term = &term * &*phi;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Left side of the product formula: the cumulant whose entries are the
/// products of the word over the blocks of the interval partition `sigma`.
pub fn ks_lhs(oracle: &dyn MomentOracle, sigma: &NCPartition, word: &[i64]) -> Result<Scalar> {
    if !sigma.is_interval() {
        return Err(Error::NotInterval(sigma.to_string()));
    }
    if sigma.n() != word.len() {
        return Err(Error::SizeMismatch(sigma.n(), word.len()));
    }
    let products: Vec<i64> = sigma.blocks().iter().map(|b| b.iter().map(|&i| word[i - 1]).sum()).collect();
    mixed_cumulant(oracle, &products)
}

/// `sum_{pi : pi v sigma = 1_n} prod_{V in pi} kappa_{|V|}(word|_V)`.
pub fn ks_rhs(oracle: &dyn MomentOracle, sigma: &NCPartition, word: &[i64]) -> Result<Scalar> {
    if !sigma.is_interval() {
        return Err(Error::NotInterval(sigma.to_string()));
    }
    let n = word.len();
    if sigma.n() != n {
        return Err(Error::SizeMismatch(sigma.n(), n));
    }
    check_range("word length", n, 1, MAX_CUMULANT)?;
    let top = NCPartition::top(n);
    let mut kappa: HashMap<Vec<i64>, Scalar> = HashMap::new();
    let mut total = Scalar::zero();
    for pi in enumerate_nc(n)? {
        if pi.join(sigma)? != top {
            continue;
        }
        let mut term = Scalar::one();
        for block in pi.blocks() {
            let sub: Vec<i64> = block.iter().map(|&i| word[i - 1]).collect();
            if !kappa.contains_key(&sub) {
                let k = mixed_cumulant(oracle, &sub)?;
                kappa.insert(sub.clone(), k);
            }
            term = &term * &kappa[&sub];
            if term.is_zero() {
                break;
            }
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Moment of the word from its cumulants: `sum_{pi in NC(n)} prod_V kappa(word|_V)`.
pub fn moment_from_cumulants(oracle: &dyn MomentOracle, word: &[i64]) -> Result<Scalar> {
    check_range("word length", word.len(), 1, MAX_CUMULANT)?;
    let mut kappa: HashMap<Vec<i64>, Scalar> = HashMap::new();
    let mut total = Scalar::zero();
    for pi in enumerate_nc(word.len())? {
        let mut term = Scalar::one();
        for block in pi.blocks() {
            let sub: Vec<i64> = block.iter().map(|&i| word[i - 1]).collect();
            if !kappa.contains_key(&sub) {
                let k = mixed_cumulant(oracle, &sub)?;
                kappa.insert(sub.clone(), k);
            }
            term = &term * &kappa[&sub];
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Free cumulants `kappa_1..=kappa_N` of a single variable from its moments
/// `m_0..=m_N` by Möbius inversion over NC(n).
pub fn cumulants_from_moments(moments: &[Scalar]) -> Result<Vec<Scalar>> {
    let n_max = moments.len().saturating_sub(1);
    check_range("N", n_max, 1, MAX_CUMULANT)?;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut grouped: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (p, mu) in mobius_to_top(n)?.iter() {
            let mut sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
            sizes.sort_unstable();
            *grouped.entry(sizes).or_insert(0) += mu;
        }
        let k: Scalar = grouped
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(sizes, c)| sizes.iter().fold(Scalar::from_int(c), |acc, &b| &acc * &moments[b]))
            .sum();
        out.push(k);
    }
    Ok(out)
}

/// `(+1, -1, +1, ...)` of length `n`.
pub fn alternating_word(n: usize) -> Vec<i64> {
    (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, blocks: &[&[usize]]) -> NCPartition {
        NCPartition::from_blocks(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn catalan_counts() {
        for n in 1..=10 {
            assert_eq!(enumerate_nc(n).unwrap().len() as u64, catalan(n as u32), "n = {n}");
        }
        assert!(enumerate_nc(0).is_err());
        assert!(enumerate_nc(13).is_err());
    }

    #[test]
    fn rejects_crossing() {
        assert!(NCPartition::from_blocks(4, &[vec![1, 3], vec![2, 4]]).is_err());
        assert!(NCPartition::from_blocks(3, &[vec![1, 2]]).is_err());
    }

    #[test]
    fn join_examples() {
        let a = p(4, &[&[1, 3], &[2], &[4]]);
        let b = p(4, &[&[1], &[3], &[2, 4]]);
        assert_eq!(a.join(&b).unwrap(), NCPartition::top(4));
        assert_eq!(NCPartition::bottom(4).join(&a).unwrap(), a);
        assert!(a.join(&NCPartition::top(3)).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&NCPartition::bottom(2), &NCPartition::top(2)).unwrap(), -1);
        assert_eq!(mobius(&NCPartition::bottom(4), &NCPartition::top(4)).unwrap(), -5);
        let a = p(3, &[&[1, 2], &[3]]);
        assert_eq!(mobius(&a, &a).unwrap(), 1);
        assert!(mobius(&NCPartition::top(3), &a).is_err());
    }

    #[test]
    fn display_blocks() {
        assert_eq!(p(4, &[&[1, 4], &[2, 3]]).to_string(), "{{1,4},{2,3}}");
    }
}
