use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::downset::{forward_dp, ModTally, Tally, DEFAULT_STATE_BUDGET};
use super::perm::{relabel, Permutation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Item {
    Single(i64),
    /// `len` consecutive increasing values starting at `first`, in consecutive positions.
    Block { first: i64, len: u64 },
}

impl Item {
    pub fn first(&self) -> i64 {
        match *self {
            Item::Single(v) => v,
            Item::Block { first, .. } => first,
        }
    }

    pub fn len(&self) -> u64 {
        match *self {
            Item::Single(_) => 1,
            Item::Block { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One past the largest value.
    pub fn end(&self) -> i64 {
        self.first() + self.len() as i64
    }

    pub fn shifted(&self, by: i64) -> Item {
        match *self {
            Item::Single(v) => Item::Single(v + by),
            Item::Block { first, len } => Item::Block { first: first + by, len },
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BlockSequence {
    pub items: Vec<Item>,
}

impl BlockSequence {
    pub fn new(items: Vec<Item>) -> Self {
        BlockSequence { items }
    }

    pub fn from_permutation(s: &Permutation) -> Self {
        BlockSequence {
            items: s.entries().iter().map(|&v| Item::Single(v as i64)).collect(),
        }
    }

    pub fn from_values(v: &[i64]) -> Self {
        BlockSequence {
            items: v.iter().map(|&x| Item::Single(x)).collect(),
        }
    }

    /// Total expanded length.
    pub fn len(&self) -> u64 {
        self.items.iter().map(|i| i.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn expand(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for it in &self.items {
            out.extend(it.first()..it.end());
        }
        out
    }

    pub fn min_value(&self) -> Option<i64> {
        self.items.iter().filter(|i| !i.is_empty()).map(|i| i.first()).min()
    }

    pub fn max_value(&self) -> Option<i64> {
        self.items.iter().filter(|i| !i.is_empty()).map(|i| i.end() - 1).max()
    }

    /// Expanded values are pairwise distinct.
    pub fn has_distinct_values(&self) -> bool {
        let mut ranges: Vec<(i64, i64)> = self
            .items
            .iter()
            .filter(|i| !i.is_empty())
            .map(|i| (i.first(), i.end()))
            .collect();
        ranges.sort();
        ranges.windows(2).all(|w| w[0].1 <= w[1].0)
    }

    /// Replace values by their ranks while keeping blocks as blocks.
    pub fn normalized(&self) -> BlockSequence {
        let mut order: Vec<usize> = (0..self.items.len()).collect();
        order.sort_by_key(|&i| (self.items[i].first(), i));
        let mut start = vec![0i64; self.items.len()];
        let mut next = 1i64;
        for &i in &order {
            start[i] = next;
            next += self.items[i].len() as i64;
        }
        let items = self
            .items
            .iter()
            .zip(&start)
            .map(|(it, &s)| match it {
                Item::Single(_) => Item::Single(s),
                Item::Block { len, .. } => Item::Block { first: s, len: *len },
            })
            .collect();
        BlockSequence { items }
    }

    pub fn to_permutation(&self) -> Permutation {
        relabel(&self.expand())
    }

    /// Items ranked by first value, blocks written "[r]": the shape
    /// "[7] [4] [1] 6 5 3 2" of σ₁ at p = 2.
    pub fn rank_pattern(&self) -> String {
        let mut firsts: Vec<i64> = self.items.iter().map(|i| i.first()).collect();
        firsts.sort_unstable();
        self.items
            .iter()
            .map(|it| {
                let r = firsts.partition_point(|&f| f < it.first()) + 1;
                match it {
                    Item::Block { .. } => format!("[{r}]"),
                    Item::Single(_) => r.to_string(),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Drop empty blocks.
    pub fn compact(mut self) -> Self {
        self.items.retain(|i| !i.is_empty());
        self
    }
}

impl fmt::Display for BlockSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|it| match *it {
                Item::Single(v) => v.to_string(),
                Item::Block { first, len } => format!("[{first}:{len}]"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for BlockSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockSequence({self})")
    }
}

/// Size of the weak-order ideal below the expansion of `seq`.
///
/// Each block is a chain of P_σ, so a state records how many elements of every
/// item have been placed; only prefixes of a block can be placed.
pub fn count_blockseq_ideal(seq: &BlockSequence) -> Result<BigUint> {
    blockseq_dp(seq, BigUint::one(), DEFAULT_STATE_BUDGET)
}

pub fn count_blockseq_ideal_mod(seq: &BlockSequence, p: u64) -> Result<u64> {
    Ok(blockseq_dp(seq, ModTally::one(p), DEFAULT_STATE_BUDGET)?.value)
}

pub fn count_blockseq_ideal_budget(seq: &BlockSequence, budget: usize) -> Result<BigUint> {
    blockseq_dp(seq, BigUint::one(), budget)
}

fn blockseq_dp<W: Tally>(seq: &BlockSequence, one: W, budget: usize) -> Result<W> {
    let seq = seq.clone().compact();
    if !seq.has_distinct_values() {
        return Err(Error::pre("block sequence values are not distinct"));
    }
    let items = &seq.items;
    let firsts: Vec<i64> = items.iter().map(|i| i.first()).collect();
    let lens: Vec<u64> = items.iter().map(|i| i.len()).collect();
    if lens.iter().any(|&l| l > u32::MAX as u64) {
        return Err(Error::SizeLimit {
            what: "block length",
            got: usize::MAX,
            limit: u32::MAX as usize,
        });
    }
    let total = seq.len() as usize;
    forward_dp(vec![0u32; items.len()], one, total, budget, |c, out| {
        for i in 0..items.len() {
            if c[i] as u64 == lens[i] {
                continue;
            }
            let v = firsts[i] + c[i] as i64;
            // every element to the left with a smaller value must already be placed
            let ok = (0..i).all(|j| {
                let need = (v - firsts[j]).clamp(0, lens[j] as i64) as u32;
                c[j] >= need
            });
            if ok {
                let mut t = c.clone();
                t[i] += 1;
                out.push((t, 1));
            }
        }
    })
}
