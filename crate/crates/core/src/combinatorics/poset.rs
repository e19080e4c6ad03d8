use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use super::downset::{biguint_mod, forward_dp, ModTally, Tally, DEFAULT_STATE_BUDGET};
use crate::error::{Error, Result};

pub const BRUTE_LIMIT: usize = 10;

/// A finite strict partial order on `0..n`, stored as its full relation matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    lt: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    DownsetDp,
}

impl Poset {
    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            lt: vec![false; n * n],
        }
    }

    pub fn chain(n: usize) -> Self {
        Self::from_relations(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Transitive closure of the given pairs (0-based). Fails on cycles.
    pub fn from_relations(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut lt = vec![false; n * n];
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::pre(format!("relation {a} < {b} out of range for n = {n}")));
            }
            lt[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !lt[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if lt[k * n + j] {
                        lt[i * n + j] = true;
                    }
                }
            }
        }
        if (0..n).any(|i| lt[i * n + i]) {
            return Err(Error::pre("relations contain a cycle"));
        }
        Ok(Poset { n, lt })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a * self.n + b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).filter(move |&b| self.lt(a, b)).map(move |b| (a, b)))
    }

    pub fn num_relations(&self) -> usize {
        self.lt.iter().filter(|&&x| x).count()
    }

    /// `b` covers `a`.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.relations().filter(|&(a, b)| self.covers(a, b)).collect()
    }

    /// Number of elements covering `a`.
    pub fn upper_cover_count(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| self.covers(a, b)).count()
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        !(0..self.n).any(|b| self.lt(a, b))
    }

    /// Length of the longest chain, in elements.
    pub fn height(&self) -> usize {
        let mut best = vec![1usize; self.n];
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| (0..self.n).filter(|&b| self.lt(b, a)).count());
        for &a in &order {
            for b in 0..self.n {
                if self.lt(b, a) {
                    best[a] = best[a].max(best[b] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn reversed(&self) -> Self {
        let n = self.n;
        let mut lt = vec![false; n * n];
        for (a, b) in self.relations() {
            lt[b * n + a] = true;
        }
        Poset { n, lt }
    }

    /// Predecessor masks as words, one row per element.
    fn pred_words(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64).max(1);
        (0..self.n)
            .map(|b| {
                let mut row = vec![0u64; words];
                for a in 0..self.n {
                    if self.lt(a, b) {
                        row[a / 64] |= 1 << (a % 64);
                    }
                }
                row
            })
            .collect()
    }

    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        let mut pos = vec![0; self.n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        self.relations().all(|(a, b)| pos[a] < pos[b])
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; {:?})", self.n, self.relations().collect::<Vec<_>>())
    }
}

pub const LABELED_LIMIT: usize = 5;

/// Every strict partial order on `0..n` (19 for n = 3, 219 for n = 4).
pub fn all_labeled_posets(n: usize) -> Result<Vec<Poset>> {
    if n > LABELED_LIMIT {
        return Err(Error::SizeLimit {
            what: "labeled poset enumeration",
            got: n,
            limit: LABELED_LIMIT,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut lt = vec![false; n * n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lt[a * n + b] = true;
            }
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| !(lt[a * n + b] && lt[b * n + a])));
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| !lt[a * n + b] || (0..n).all(|c| !lt[b * n + c] || lt[a * n + c]))
        });
        if antisym && transitive {
            out.push(Poset { n, lt });
        }
    }
    Ok(out)
}

/// A random order: relations i < j between elements of a random
/// permutation, each kept with probability `density`, then closed.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((order[i], order[j]));
            }
        }
    }
    Poset::from_relations(n, rel).expect("relations follow a linear order")
}

pub fn count_linear_extensions(p: &Poset, method: Method) -> Result<BigUint> {
    match method {
        Method::Brute => brute(p),
        Method::DownsetDp => downset_count(p, BigUint::one(), DEFAULT_STATE_BUDGET),
    }
}

pub fn count_linear_extensions_budget(p: &Poset, budget: usize) -> Result<BigUint> {
    downset_count(p, BigUint::one(), budget)
}

pub fn count_linear_extensions_mod(p: &Poset, prime: u64) -> Result<u64> {
    Ok(downset_count(p, ModTally::one(prime), DEFAULT_STATE_BUDGET)?.value)
}

/// Exact count, reduced at the end (cross-check for the modular DP).
pub fn count_linear_extensions_exact_mod(p: &Poset, prime: u64) -> Result<u64> {
    Ok(biguint_mod(&count_linear_extensions(p, Method::DownsetDp)?, prime))
}

fn brute(p: &Poset) -> Result<BigUint> {
    if p.n > BRUTE_LIMIT {
        return Err(Error::SizeLimit {
            what: "brute-force linear extension count",
            got: p.n,
            limit: BRUTE_LIMIT,
        });
    }
    // Heap's algorithm over all n! orders.
    let n = p.n;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut total = 0u64;
    if p.is_linear_extension(&perm) {
        total += 1;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if p.is_linear_extension(&perm) {
                total += 1;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(BigUint::from(total))
}

fn downset_count<W: Tally>(p: &Poset, one: W, budget: usize) -> Result<W> {
    let n = p.n;
    if n == 0 {
        return Ok(one);
    }
    let preds = p.pred_words();
    if n <= 64 {
        let preds: Vec<u64> = preds.iter().map(|r| r[0]).collect();
        forward_dp(0u64, one, n, budget, |&s, out| {
            for (x, &pm) in preds.iter().enumerate() {
                if s & (1 << x) == 0 && s & pm == pm {
                    out.push((s | (1 << x), 1));
                }
            }
        })
    } else {
        let words = preds[0].len();
        forward_dp(vec![0u64; words], one, n, budget, |s, out| {
            for (x, pm) in preds.iter().enumerate() {
                let placed = s[x / 64] & (1 << (x % 64)) != 0;
                if !placed && s.iter().zip(pm).all(|(a, b)| a & b == *b) {
                    let mut t = s.clone();
                    t[x / 64] |= 1 << (x % 64);
                    out.push((t, 1));
                }
            }
        })
    }
}

/// Count with a per-level filter: the element placed at level `t` (value t+1)
/// must satisfy `allowed(t, x)`.
pub fn count_linear_extensions_filtered(
    p: &Poset,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<BigUint> {
    let n = p.n;
    if n > 64 {
        return Err(Error::SizeLimit {
            what: "filtered linear extension count",
            got: n,
            limit: 64,
        });
    }
    let preds: Vec<u64> = p.pred_words().iter().map(|r| r[0]).collect();
    forward_dp(0u64, BigUint::one(), n, DEFAULT_STATE_BUDGET, |&s, out| {
        let level = s.count_ones() as usize;
        for (x, &pm) in preds.iter().enumerate() {
            if s & (1 << x) == 0 && s & pm == pm && allowed(level, x) {
                out.push((s | (1 << x), 1));
            }
        }
    })
}
