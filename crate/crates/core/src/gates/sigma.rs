//! The initial and final sections σ₁ and σ_{m+1}.

use crate::combinatorics::blockseq::{count_blockseq_ideal_mod, BlockSequence, Item};
use crate::error::{Error, Result};

use super::concrete::BruhatGate;

/// N = 2p² − 2p wires.
pub fn wire_count(p: u64) -> usize {
    (2 * p * p - 2 * p) as usize
}

fn sigma1_items(p: u64, doubled: bool) -> Vec<Item> {
    let len = p * p * p - 1;
    let r = (p * p - p) as usize;
    let per = if doubled { 2 } else { 1 };
    // values from the bottom: B_r, pair r, B_{r−1}, …, pair 1, B_0
    let mut blocks = vec![0i64; r + 1];
    let mut pairs = vec![0i64; r + 1];
    let mut v = 1i64;
    for j in (0..=r).rev() {
        blocks[j] = v;
        v += len as i64;
        if j > 0 {
            pairs[j] = v;
            v += per;
        }
    }
    let mut items: Vec<Item> = blocks.iter().map(|&first| Item::Block { first, len }).collect();
    for &lo in &pairs[1..] {
        for k in (0..per).rev() {
            items.push(Item::Single(lo + k));
        }
    }
    items
}

/// p² − p + 1 blocks of p³ − 1 values in decreasing ranges, then the N
/// variables as decreasing pairs, pair i lying between blocks i and i−1.
pub fn build_sigma1(p: u64) -> BlockSequence {
    BlockSequence::new(sigma1_items(p, true))
}

/// σ₁ before each variable is duplicated.
pub fn build_sigma1_undoubled(p: u64) -> BlockSequence {
    BlockSequence::new(sigma1_items(p, false))
}

pub fn sigma1_gate(p: u64) -> BruhatGate {
    let body = build_sigma1(p);
    let n = wire_count(p);
    let total = body.items.len();
    BruhatGate {
        body,
        wires: n,
        inputs: Vec::new(),
        outputs: (total - n..total).collect(),
        penultimate: Some(total - n - 1),
    }
}

/// (N, …, 1) with dividers N+1, …, N+p−1 after each group of 2p − 1 wires.
pub fn build_sigma_final(p: u64) -> BlockSequence {
    let n = wire_count(p) as i64;
    let group = (2 * p - 1) as usize;
    let mut items = Vec::new();
    let mut divider = n + 1;
    for (i, v) in (1..=n).rev().enumerate() {
        items.push(Item::Single(v));
        if (i + 1) % group == 0 && divider < n + p as i64 {
            items.push(Item::Single(divider));
            divider += 1;
        }
    }
    BlockSequence::new(items)
}

pub fn sigma_final_gate(p: u64) -> BruhatGate {
    let body = build_sigma_final(p);
    let inputs = body
        .items
        .iter()
        .enumerate()
        .filter(|(_, it)| it.first() <= wire_count(p) as i64)
        .map(|(i, _)| i)
        .collect();
    BruhatGate {
        body,
        wires: wire_count(p),
        inputs,
        outputs: Vec::new(),
        penultimate: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaRow {
    pub v: Vec<bool>,
    pub residue: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub p: u64,
    pub rows: Vec<LemmaRow>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.residue == r.expected)
    }
}

fn require_two(p: u64) -> Result<()> {
    if p != 2 {
        return Err(Error::SizeLimit {
            what: "direct counting of the boundary sections (prime)",
            got: p as usize,
            limit: 2,
        });
    }
    Ok(())
}

fn vectors(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << n).map(move |x| (0..n).map(|i| x >> i & 1 == 1).collect())
}

/// σ₁ ⋊ (∅, v) is 1 mod p exactly when each pair carries one TRUE.
pub fn verify_init_lemma(p: u64) -> Result<LemmaReport> {
    require_two(p)?;
    let g = sigma1_gate(p);
    let n = g.wires;
    let mut rows = Vec::new();
    for v in vectors(n) {
        let residue = count_blockseq_ideal_mod(&g.evaluate(&[], &v)?, p)?;
        let one_per_pair = v.chunks(2).all(|c| c[0] != c[1]);
        rows.push(LemmaRow {
            v,
            residue,
            expected: u64::from(one_per_pair),
        });
    }
    Ok(LemmaReport { p, rows })
}

/// For v with p² − p TRUE wires, σ_{m+1} ⋊ (v, ∅) is −1 mod p when the last
/// wire is TRUE and 0 otherwise.
pub fn verify_testing_lemma(p: u64) -> Result<LemmaReport> {
    require_two(p)?;
    let g = sigma_final_gate(p);
    let n = g.wires;
    let want = (p * p - p) as usize;
    let mut rows = Vec::new();
    for v in vectors(n).filter(|v| v.iter().filter(|&&b| b).count() == want) {
        let residue = count_blockseq_ideal_mod(&g.evaluate(&v, &[])?, p)?;
        let expected = if v[n - 1] { p - 1 } else { 0 };
        rows.push(LemmaRow { v, residue, expected });
    }
    Ok(LemmaReport { p, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::blockseq::count_blockseq_ideal;

    #[test]
    fn printed_shapes() {
        assert_eq!(build_sigma1(2).rank_pattern(), "[7] [4] [1] 6 5 3 2");
        assert_eq!(build_sigma1_undoubled(2).rank_pattern(), "[5] [3] [1] 4 2");
        assert_eq!(build_sigma1(2).len(), 25);
        assert_eq!(build_sigma_final(2).expand(), vec![4, 3, 2, 5, 1]);
        for p in [2, 3, 5] {
            let g = sigma1_gate(p);
            assert_eq!(g.outputs.len(), (2 * p * p - 2 * p) as usize);
            g.check_invariants().unwrap();
            let f = sigma_final_gate(p);
            f.check_invariants().unwrap();
            assert_eq!(f.body.items.len(), f.inputs.len() + p as usize - 1);
        }
    }

    #[test]
    fn lemma_examples() {
        let init = verify_init_lemma(2).unwrap();
        assert!(init.passed());
        let row = |v: &[u8]| init.rows.iter().find(|r| r.v == v.iter().map(|&b| b == 1).collect::<Vec<_>>()).unwrap().residue;
        assert_eq!(row(&[1, 0, 1, 0]), 1);
        assert_eq!(row(&[1, 1, 0, 0]), 0);
        assert_eq!(row(&[0, 0, 0, 0]), 0);
        let t = verify_testing_lemma(2).unwrap();
        assert!(t.passed());
        assert_eq!(t.rows.len(), 6);
        let s = sigma_final_gate(2).evaluate(&[true, false, false, true], &[]).unwrap();
        assert_eq!(count_blockseq_ideal(&s).unwrap(), 3u32.into());
    }
}
