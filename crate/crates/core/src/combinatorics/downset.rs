//! Level-by-level forward DP over order ideals.
//!
//! The caller supplies a start state and a successor function; every state at
//! level `t` is an ideal of size `t` (or some compressed encoding of one). The
//! weight of a state is the number of ways to reach it, so after the last level
//! the single remaining weight is the number of linear extensions.

use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub const DEFAULT_STATE_BUDGET: usize = 50_000_000;

/// A commutative monoid of path weights.
pub trait Tally: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, other: &Self, factor: u64);
}

impl Tally for BigUint {
    fn zero_like(&self) -> Self {
        BigUint::zero()
    }

    fn add_scaled(&mut self, other: &Self, factor: u64) {
        if factor == 1 {
            *self += other;
        } else if factor != 0 {
            *self += other * factor;
        }
    }
}

/// A residue modulo a fixed prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModTally {
    pub value: u64,
    pub p: u64,
}

impl ModTally {
    pub fn one(p: u64) -> Self {
        ModTally { value: 1 % p, p }
    }
}

impl Tally for ModTally {
    fn zero_like(&self) -> Self {
        ModTally { value: 0, p: self.p }
    }

    fn add_scaled(&mut self, other: &Self, factor: u64) {
        let f = (factor % self.p) as u128;
        self.value = ((self.value as u128 + other.value as u128 * f) % self.p as u128) as u64;
    }
}

/// Runs the DP for `levels` steps and returns the total weight left at the end.
///
/// `successors(state, out)` pushes `(next_state, multiplicity)` pairs.
pub fn forward_dp<K, W, F>(
    start: K,
    one: W,
    levels: usize,
    budget: usize,
    mut successors: F,
) -> Result<W>
where
    K: Hash + Eq + Clone,
    W: Tally,
    F: FnMut(&K, &mut Vec<(K, u64)>),
{
    let zero = one.zero_like();
    let mut cur: FxHashMap<K, W> = FxHashMap::default();
    cur.insert(start, one);
    let mut buf = Vec::new();
    for _ in 0..levels {
        let mut next: FxHashMap<K, W> = FxHashMap::default();
        for (state, w) in cur.iter() {
            buf.clear();
            successors(state, &mut buf);
            for (s, mult) in buf.drain(..) {
                next.entry(s)
                    .or_insert_with(|| zero.clone())
                    .add_scaled(w, mult);
            }
            if next.len() + cur.len() > budget {
                return Err(Error::StateBudget { budget });
            }
        }
        cur = next;
        if cur.is_empty() {
            return Ok(zero);
        }
    }
    let mut total = zero;
    for w in cur.values() {
        total.add_scaled(w, 1);
    }
    Ok(total)
}

pub fn biguint_mod(x: &BigUint, p: u64) -> u64 {
    (x % p).to_u64().unwrap()
}
