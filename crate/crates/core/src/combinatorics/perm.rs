use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;

use super::blockseq::{count_blockseq_ideal, count_blockseq_ideal_mod, BlockSequence};
use super::poset::Poset;
use crate::error::{Error, Result};

/// A sequence of integers, possibly with repeats and gaps.
pub type GeneralizedSequence = Vec<i64>;

/// One-line permutation of 1..n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn reverse(n: usize) -> Self {
        Permutation((1..=n as u32).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// 0-based position of each value: `pos[v - 1]`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }

    pub fn inverse(&self) -> Self {
        Permutation(self.positions().into_iter().map(|i| i as u32 + 1).collect())
    }

    pub fn num_inversions(&self) -> usize {
        inversions(self).len()
    }

    /// Value pairs (a, b) with a < b and b to the left of a.
    pub fn value_inversions(&self) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.0[i] > self.0[j] {
                    out.insert((self.0[j], self.0[i]));
                }
            }
        }
        out
    }

    /// All permutations of 1..n in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Order-isomorphic permutation; equal values are ranked left to right.
pub fn relabel(seq: &[i64]) -> Permutation {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_by_key(|&i| (seq[i], i));
    let mut out = vec![0u32; seq.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Permutation(out)
}

/// Position pairs (i, j), 1-based with i < j, where σ(i) > σ(j).
pub fn inversions(s: &Permutation) -> BTreeSet<(usize, usize)> {
    let e = s.entries();
    let mut out = BTreeSet::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] > e[j] {
                out.insert((i + 1, j + 1));
            }
        }
    }
    out
}

/// τ ≤ σ in the weak order: every value inversion of τ is one of σ.
pub fn bruhat_leq(tau: &Permutation, sigma: &Permutation) -> Result<bool> {
    if tau.len() != sigma.len() {
        return Err(Error::LengthMismatch {
            left: tau.len(),
            right: sigma.len(),
        });
    }
    Ok(tau.value_inversions().is_subset(&sigma.value_inversions()))
}

/// The poset P_σ: values a < b related when a also sits left of b.
pub fn poset_from_permutation(s: &Permutation) -> Poset {
    let pos = s.positions();
    let n = s.len();
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    let rel: Vec<(usize, usize)> = pairs.filter(|&(a, b)| pos[a] < pos[b]).collect();
    Poset::from_relations(n, rel).expect("P_σ is acyclic")
}

/// Permutation whose P_σ is the product order on the points.
pub fn permutation_from_points(points: &[(i64, i64)]) -> Result<Permutation> {
    let mut seen = HashSet::new();
    for &p in points {
        if !seen.insert(p) {
            return Err(Error::DuplicatePoint(p.0, p.1));
        }
    }
    let n = points.len();
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by_key(|&i| (points[i].0, points[i].1));
    let mut by_y: Vec<usize> = (0..n).collect();
    by_y.sort_by_key(|&i| (points[i].1, points[i].0));
    let mut value = vec![0u32; n];
    for (r, &i) in by_y.iter().enumerate() {
        value[i] = r as u32 + 1;
    }
    // The point with the k-th smallest x is the element with label k; its
    // position in σ is its y-rank.
    let mut out = vec![0u32; n];
    for (label, &i) in by_x.iter().enumerate() {
        out[value[i] as usize - 1] = label as u32 + 1;
    }
    Ok(Permutation(out))
}

/// |{τ : τ ≤ σ}|.
pub fn count_bruhat_ideal(s: &Permutation) -> Result<BigUint> {
    count_blockseq_ideal(&BlockSequence::from_permutation(s))
}

pub fn count_bruhat_ideal_mod(s: &Permutation, p: u64) -> Result<u64> {
    count_blockseq_ideal_mod(&BlockSequence::from_permutation(s), p)
}

/// Every τ ≤ σ, by DFS over inversion-removing adjacent swaps.
pub fn enumerate_bruhat_ideal(s: &Permutation, limit: usize) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack = vec![s.0.clone()];
    seen.insert(s.0.clone());
    while let Some(t) = stack.pop() {
        for i in 0..t.len().saturating_sub(1) {
            if t[i] > t[i + 1] {
                let mut u = t.clone();
                u.swap(i, i + 1);
                if seen.insert(u.clone()) {
                    if seen.len() > limit {
                        return Err(Error::SizeLimit {
                            what: "Bruhat ideal enumeration",
                            got: seen.len(),
                            limit,
                        });
                    }
                    stack.push(u);
                }
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().map(Permutation).collect();
    out.sort();
    Ok(out)
}
