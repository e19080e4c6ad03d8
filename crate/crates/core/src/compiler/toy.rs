//! Small random frameworks, the state correspondence, and the sum
//! decomposition of the ideal size over circuit states.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::emit::flatten;
use super::BruhatFramework;
use crate::combinatorics::blockseq::{count_blockseq_ideal, BlockSequence, Item};
use crate::combinatorics::perm::{bruhat_leq, count_bruhat_ideal, relabel, Permutation};
use crate::error::{Error, Result};
use crate::gates::BruhatGate;

/// Role of one position of the flattened σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    /// s_{i+1}, 0-based.
    Separator(usize),
    /// x_{gap, wire}: output `wire` of section `gap`, sitting right of separator `gap`.
    Variable { gap: usize, wire: usize },
    Stable,
}

/// States v₁..v_m, one bit per wire.
pub type StateTuple = Vec<Vec<bool>>;

fn toy_section<R: Rng + ?Sized>(rng: &mut R, nin: usize, nout: usize, stable: usize) -> BruhatGate {
    // stable units may be blocks of two
    let lens: Vec<u64> = (0..stable).map(|_| if rng.gen_bool(0.25) { 2 } else { 1 }).collect();
    let body_len = nin + stable;
    let mut slots: Vec<usize> = (0..body_len).collect();
    slots.shuffle(rng);
    let mut input_pos: Vec<usize> = slots[..nin].to_vec();
    input_pos.sort();
    // rank order of stable units and outputs above the inputs
    let units = stable + nout;
    let mut ranks: Vec<usize> = (0..units).collect();
    ranks.shuffle(rng);
    let unit_len = |u: usize| if u < stable { lens[u] } else { 1 };
    let mut order: Vec<usize> = (0..units).collect();
    order.sort_by_key(|&u| ranks[u]);
    let mut first = vec![0i64; units];
    let mut next = nin as i64 + 1;
    for &u in &order {
        first[u] = next;
        next += unit_len(u) as i64;
    }
    // outputs decrease left to right
    let mut out_firsts: Vec<i64> = first[stable..].to_vec();
    out_firsts.sort_by(|a, b| b.cmp(a));

    let mut items = Vec::with_capacity(body_len + nout);
    let mut inputs = Vec::new();
    let mut stable_iter = 0..stable;
    for pos in 0..body_len {
        if let Ok(w) = input_pos.binary_search(&pos) {
            inputs.push(items.len());
            items.push(Item::Single((nin - w) as i64));
        } else {
            let u = stable_iter.next().unwrap();
            items.push(match lens[u] {
                1 => Item::Single(first[u]),
                len => Item::Block { first: first[u], len },
            });
        }
    }
    let outputs = (items.len()..items.len() + nout).collect();
    items.extend(out_firsts.into_iter().map(Item::Single));
    BruhatGate {
        body: BlockSequence::new(items),
        wires: nin.max(nout),
        inputs,
        outputs,
        penultimate: None,
    }
}

/// A framework with m separators, N wires per gap and up to `max_stable`
/// stable units per section.
pub fn random_toy_framework<R: Rng + ?Sized>(
    rng: &mut R,
    n_wires: usize,
    m: usize,
    max_stable: usize,
) -> Result<BruhatFramework> {
    let mut sections = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let nin = if i == 0 { 0 } else { n_wires };
        let nout = if i == m { 0 } else { n_wires };
        let stable = rng.gen_range(0..=max_stable);
        sections.push(toy_section(rng, nin, nout, stable));
    }
    BruhatFramework::from_sections(2, n_wires.div_ceil(2), n_wires, sections)
}

fn sigma_of(f: &BruhatFramework) -> Result<(Vec<i64>, Vec<Element>, Permutation)> {
    let (values, roles) = flatten(f)?;
    let sigma = relabel(&values);
    Ok((values, roles, sigma))
}

fn check_states(f: &BruhatFramework, states: &StateTuple) -> Result<()> {
    if states.len() != f.separators() {
        return Err(Error::LengthMismatch {
            left: states.len(),
            right: f.separators(),
        });
    }
    if let Some(v) = states.iter().find(|v| v.len() != f.n_wires) {
        return Err(Error::LengthMismatch {
            left: v.len(),
            right: f.n_wires,
        });
    }
    Ok(())
}

/// The largest τ with the given states: every FALSE variable of gap i moves
/// immediately left of s_i, keeping its order.
pub fn tau_given_states(f: &BruhatFramework, states: &StateTuple) -> Result<Permutation> {
    check_states(f, states)?;
    let (values, roles, _) = sigma_of(f)?;
    let mut moved: Vec<Vec<i64>> = vec![Vec::new(); f.separators()];
    for (v, r) in values.iter().zip(&roles) {
        if let Element::Variable { gap, wire } = *r {
            if !states[gap][wire] {
                moved[gap].push(*v);
            }
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (v, r) in values.iter().zip(&roles) {
        match *r {
            Element::Separator(i) => {
                out.extend_from_slice(&moved[i]);
                out.push(*v);
            }
            Element::Variable { gap, wire } if !states[gap][wire] => {}
            _ => out.push(*v),
        }
    }
    Ok(relabel(&out))
}

/// a_ij = 1 iff x_ij lies strictly between s_i and s_{i+1} in τ.
pub fn bruhat_states_of_tau(f: &BruhatFramework, tau: &Permutation) -> Result<StateTuple> {
    let (values, roles, sigma) = sigma_of(f)?;
    if !bruhat_leq(tau, &sigma)? {
        return Err(Error::pre("τ is not below σ"));
    }
    let rank = |v: i64| sigma.entries()[values.iter().position(|&x| x == v).unwrap()] as usize;
    let pos = tau.positions();
    let mut sep_pos = vec![0usize; f.separators()];
    for (v, r) in values.iter().zip(&roles) {
        if let Element::Separator(i) = *r {
            sep_pos[i] = pos[rank(*v) - 1];
        }
    }
    let mut states = vec![vec![false; f.n_wires]; f.separators()];
    for (v, r) in values.iter().zip(&roles) {
        if let Element::Variable { gap, wire } = *r {
            let q = pos[rank(*v) - 1];
            let upper = sep_pos.get(gap + 1).copied().unwrap_or(usize::MAX);
            states[gap][wire] = sep_pos[gap] < q && q < upper;
        }
    }
    Ok(states)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub ext: BigUint,
    pub sum: BigUint,
    pub terms: usize,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.ext == self.sum
    }
}

/// ext(σ) against Σ over state tuples of ∏ ext(σ_i ⋊ (v_{i−1}, v_i)).
pub fn verify_sum_decomposition(f: &BruhatFramework) -> Result<DecompositionReport> {
    let bits = f.n_wires * f.separators();
    if bits > 20 {
        return Err(Error::SizeLimit {
            what: "state tuples (bits)",
            got: bits,
            limit: 20,
        });
    }
    let (_, _, sigma) = sigma_of(f)?;
    let ext = count_bruhat_ideal(&sigma)?;
    let n = f.n_wires;
    let mut sum = BigUint::zero();
    for x in 0..1u64 << bits {
        let states: StateTuple = (0..f.separators())
            .map(|i| (0..n).map(|j| x >> (i * n + j) & 1 == 1).collect())
            .collect();
        let mut prod = BigUint::one();
        for i in 0..f.num_sections() {
            let vin: &[bool] = if i == 0 { &[] } else { &states[i - 1] };
            let vout: &[bool] = if i == f.separators() { &[] } else { &states[i] };
            prod *= count_blockseq_ideal(&f.section(i).evaluate(vin, vout)?)?;
        }
        sum += prod;
    }
    Ok(DecompositionReport {
        ext,
        sum,
        terms: 1 << bits,
    })
}
