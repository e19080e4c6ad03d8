//! Parametrized gates: bodies whose blocks carry symbolic lengths z1..z6, and
//! the count polynomial g(z) of a parametrized sequence.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use rustc_hash::FxHashMap;

use crate::combinatorics::blockseq::{BlockSequence, Item};
use crate::error::{Error, Result};
use crate::polyalg::{falling_binomial_poly, MultiPoly};

pub const PENULTIMATE_VAR: u8 = 6;
pub const DEFAULT_IDEAL_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Plain,
    Input(usize),
    Output(usize),
    Inserted,
}

/// One symbol of a collapsed body: a single element, or a block of symbolic
/// length `z_var` when `var` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sym {
    pub rank: Ratio<i64>,
    pub var: Option<u8>,
    pub role: Role,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ParamGate {
    pub syms: Vec<Sym>,
    pub wires: usize,
}

/// Per parametrized block of one ideal element τ*: the run of larger elements
/// immediately to its left and the run of smaller elements immediately to its
/// right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjacencyProfile {
    pub runs: Vec<(u8, u8, u8)>,
}

impl ParamGate {
    /// Parse tokens like `2 3:z1 12 4:z2 1 ...`: a rank, optionally tagged with
    /// the block variable. The `wires` smallest singles are the inputs and the
    /// last `wires` symbols are the outputs.
    pub fn parse(text: &str, wires: usize) -> Result<Self> {
        let mut syms = Vec::new();
        for tok in text.split_whitespace() {
            let (rank, var) = match tok.split_once(':') {
                Some((r, v)) => {
                    let var = v
                        .strip_prefix('z')
                        .and_then(|d| d.parse::<u8>().ok())
                        .filter(|&d| (1..=6).contains(&d))
                        .ok_or_else(|| Error::parse(0, format!("bad block token {tok}")))?;
                    (r, Some(var))
                }
                None => (tok, None),
            };
            let rank: i64 = rank.parse().map_err(|_| Error::parse(0, format!("bad rank {tok}")))?;
            syms.push(Sym {
                rank: Ratio::from_integer(rank),
                var,
                role: Role::Plain,
            });
        }
        let mut g = ParamGate { syms, wires };
        g.assign_roles()?;
        Ok(g)
    }

    fn assign_roles(&mut self) -> Result<()> {
        let k = self.wires;
        let n = self.syms.len();
        if n < 2 * k + 1 {
            return Err(Error::pre("body too short for its wires"));
        }
        let mut singles: Vec<usize> = (0..n).filter(|&i| self.syms[i].var.is_none()).collect();
        singles.sort_by_key(|&i| self.syms[i].rank);
        let mut inputs: Vec<usize> = singles[..k].to_vec();
        inputs.sort();
        for (w, &i) in inputs.iter().enumerate() {
            self.syms[i].role = Role::Input(w);
        }
        for w in 0..k {
            let i = n - k + w;
            if self.syms[i].var.is_some() || self.syms[i].role != Role::Plain {
                return Err(Error::pre("outputs must be plain singles"));
            }
            self.syms[i].role = Role::Output(w);
        }
        if self.syms[n - k - 1].var != Some(PENULTIMATE_VAR) {
            return Err(Error::pre("the penultimate block z6 must precede the outputs"));
        }
        Ok(())
    }

    pub fn penultimate_index(&self) -> usize {
        self.syms.iter().position(|s| s.var == Some(PENULTIMATE_VAR)).expect("penultimate block")
    }

    pub fn num_singles(&self) -> usize {
        self.syms.iter().filter(|s| s.var.is_none()).count()
    }

    /// Gate invariants: inputs smallest and decreasing, outputs last and
    /// decreasing, penultimate block below every output.
    pub fn check_invariants(&self) -> bool {
        let k = self.wires;
        let n = self.syms.len();
        let inputs: Vec<&Sym> = self.syms.iter().filter(|s| matches!(s.role, Role::Input(_))).collect();
        let max_in = inputs.iter().map(|s| s.rank).max().unwrap();
        let others_above = self
            .syms
            .iter()
            .filter(|s| !matches!(s.role, Role::Input(_)))
            .all(|s| s.rank > max_in);
        let in_dec = inputs.windows(2).all(|w| w[0].rank > w[1].rank);
        let outs = &self.syms[n - k..];
        let out_dec = outs.windows(2).all(|w| w[0].rank > w[1].rank);
        let pen = &self.syms[n - k - 1];
        let pen_below = outs.iter().all(|o| o.rank > pen.rank);
        inputs.len() == k && others_above && in_dec && out_dec && pen.var == Some(PENULTIMATE_VAR) && pen_below
    }

    /// φ ⋊ (v_in, v_out): drop inputs carrying 0 and outputs carrying 1.
    pub fn semi(&self, vin: &[bool], vout: &[bool]) -> ParamGate {
        let syms = self
            .syms
            .iter()
            .filter(|s| match s.role {
                Role::Input(w) => vin[w],
                Role::Output(w) => !vout[w],
                _ => true,
            })
            .cloned()
            .collect();
        ParamGate { syms, wires: self.wires }
    }

    /// L: a new global minimum immediately left of the penultimate block.
    pub fn insert_l(&self) -> ParamGate {
        let mut g = self.clone();
        let min = g.syms.iter().map(|s| s.rank).min().unwrap();
        let at = g.penultimate_index();
        g.syms.insert(
            at,
            Sym {
                rank: min - 1,
                var: None,
                role: Role::Inserted,
            },
        );
        g
    }

    /// R: at the very end, a value just above the penultimate block and below
    /// everything else above it.
    pub fn insert_r(&self) -> ParamGate {
        let mut g = self.clone();
        let pr = g.syms[g.penultimate_index()].rank;
        let next = g.syms.iter().map(|s| s.rank).filter(|&r| r > pr).min().unwrap_or(pr + 2);
        g.syms.push(Sym {
            rank: (pr + next) / 2,
            var: None,
            role: Role::Inserted,
        });
        g
    }

    /// Expand with concrete block lengths (`lengths[v]` for z_v; index 0 unused).
    pub fn instantiate(&self, lengths: &[u64; 7]) -> BlockSequence {
        let mut order: Vec<usize> = (0..self.syms.len()).collect();
        order.sort_by_key(|&i| self.syms[i].rank);
        let mut first = vec![0i64; self.syms.len()];
        let mut next = 1i64;
        for &i in &order {
            first[i] = next;
            next += self.sym_len(i, lengths) as i64;
        }
        let items = (0..self.syms.len())
            .map(|i| match self.syms[i].var {
                None => Item::Single(first[i]),
                Some(_) => Item::Block {
                    first: first[i],
                    len: self.sym_len(i, lengths),
                },
            })
            .collect();
        BlockSequence::new(items)
    }

    fn sym_len(&self, i: usize, lengths: &[u64; 7]) -> u64 {
        self.syms[i].var.map_or(1, |v| lengths[v as usize])
    }
}

impl fmt::Display for ParamGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<usize> = (0..self.syms.len()).collect();
        order.sort_by_key(|&i| self.syms[i].rank);
        let mut rank = vec![0; self.syms.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r + 1;
        }
        let parts: Vec<String> = self
            .syms
            .iter()
            .zip(&rank)
            .map(|(s, r)| match s.var {
                Some(v) => format!("{r}:z{v}"),
                None => r.to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for ParamGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamGate({self})")
    }
}

/// Profiles of every τ* below the collapsed body, with multiplicities.
pub fn adjacency_profiles(g: &ParamGate, budget: usize) -> Result<HashMap<AdjacencyProfile, u64>> {
    let n = g.syms.len();
    if n > 32 {
        return Err(Error::SizeLimit {
            what: "collapsed body",
            got: n,
            limit: 32,
        });
    }
    // base values by rank
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| g.syms[i].rank);
    let mut val = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        val[i] = r;
    }
    // P_σ over values: a before b in every τ* when a < b and a sits left of b
    let mut pos_of_val = vec![0usize; n];
    for i in 0..n {
        pos_of_val[val[i]] = i;
    }
    let preds: Vec<u32> = (0..n)
        .map(|b| (0..b).filter(|&a| pos_of_val[a] < pos_of_val[b]).fold(0u32, |m, a| m | 1 << a))
        .collect();
    let params: Vec<(usize, u8)> = (0..n).filter_map(|i| g.syms[i].var.map(|v| (val[i], v))).collect();
    // chain condition: parametrized blocks increase in both position and value
    let mut by_pos: Vec<usize> = (0..n).filter(|&i| g.syms[i].var.is_some()).collect();
    by_pos.sort();
    if by_pos.windows(2).any(|w| val[w[0]] > val[w[1]]) {
        return Err(Error::pre("parametrized blocks must increase in position and value"));
    }

    let mut profiles: FxHashMap<Vec<(u8, u8, u8)>, u64> = FxHashMap::default();
    let mut seq = Vec::with_capacity(n);
    let mut visited = 0usize;
    extend(&preds, n, 0, &mut seq, &params, &mut profiles, &mut visited, budget)?;
    Ok(profiles
        .into_iter()
        .map(|(runs, c)| (AdjacencyProfile { runs }, c))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    preds: &[u32],
    n: usize,
    placed: u32,
    seq: &mut Vec<usize>,
    params: &[(usize, u8)],
    out: &mut FxHashMap<Vec<(u8, u8, u8)>, u64>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    if seq.len() == n {
        *visited += 1;
        if *visited > budget {
            return Err(Error::SizeLimit {
                what: "Bruhat ideal of the collapsed body",
                got: *visited,
                limit: budget,
            });
        }
        let mut pos = vec![0usize; n];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        let runs = params
            .iter()
            .map(|&(x, var)| {
                let p = pos[x];
                let left = seq[..p].iter().rev().take_while(|&&y| y > x).count();
                let right = seq[p + 1..].iter().take_while(|&&y| y < x).count();
                (var, left as u8, right as u8)
            })
            .collect();
        *out.entry(runs).or_insert(0) += 1;
        return Ok(());
    }
    for x in 0..n {
        if placed & (1 << x) == 0 && placed & preds[x] == preds[x] {
            seq.push(x);
            extend(preds, n, placed | 1 << x, seq, params, out, visited, budget)?;
            seq.pop();
        }
    }
    Ok(())
}

/// Σ_{h≤ℓ} Σ_{j≤r} C(z+h+j−2, h)·C(z+j−2, j).
pub fn block_factor(var: u8, left: u8, right: u8) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for h in 0..=left as i64 {
        for j in 0..=right as i64 {
            let a = falling_binomial_poly(var as usize, h + j - 2, h as u32);
            let b = falling_binomial_poly(var as usize, j - 2, j as u32);
            acc = &acc + &(&a * &b);
        }
    }
    acc
}

/// The count polynomial g with ext(φ[x → z]) = g(z) for all block lengths ≥ 1.
pub fn ext_polynomial(g: &ParamGate) -> Result<MultiPoly> {
    ext_polynomial_budget(g, DEFAULT_IDEAL_BUDGET)
}

pub fn ext_polynomial_budget(g: &ParamGate, budget: usize) -> Result<MultiPoly> {
    let profiles = adjacency_profiles(g, budget)?;
    let mut keys: Vec<_> = profiles.into_iter().collect();
    keys.sort();
    let mut factors: HashMap<(u8, u8, u8), MultiPoly> = HashMap::new();
    let mut total = MultiPoly::zero();
    for (profile, mult) in keys {
        let mut term = MultiPoly::constant(crate::polyalg::int(mult as i64));
        for &key in &profile.runs {
            let f = factors.entry(key).or_insert_with(|| block_factor(key.0, key.1, key.2));
            term = &term * f;
        }
        total = &total + &term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::count_blockseq_ideal;
    use crate::polyalg::int;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn eval(p: &MultiPoly, lengths: &[u64; 7]) -> BigInt {
        let pt: [BigRational; 7] = std::array::from_fn(|i| int(lengths[i] as i64));
        p.eval_rational(&pt).to_integer()
    }

    #[test]
    fn constant_gate() {
        let g = ParamGate::parse("3 1 2:z6 5 4", 2).unwrap();
        let poly = ext_polynomial(&g.semi(&[true, true], &[false, false])).unwrap();
        assert!(!poly.uses_var(6) || poly.num_terms() > 0);
        for len in 1..4 {
            let mut l = [0u64; 7];
            l[6] = len;
            let direct = count_blockseq_ideal(&g.instantiate(&l)).unwrap();
            assert_eq!(eval(&poly, &l), BigInt::from(direct));
        }
        let plain = ParamGate {
            syms: g.syms.iter().filter(|s| s.var.is_none()).cloned().collect(),
            wires: 2,
        };
        let poly = ext_polynomial(&plain).unwrap();
        assert_eq!(poly, MultiPoly::constant(int(4)));
    }

    #[test]
    fn run_reading_matches_direct_counts() {
        let g = ParamGate::parse("2 3:z1 9 4:z2 1 5:z3 8 6:z6 10 7", 2).unwrap();
        assert!(g.check_invariants());
        let poly = ext_polynomial(&g).unwrap();
        for a in 1..=3 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for d in 1..=2 {
                        let l = [0, a, b, c, 0, 0, d];
                        let direct = count_blockseq_ideal(&g.instantiate(&l)).unwrap();
                        assert_eq!(eval(&poly, &l), BigInt::from(direct), "{l:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_chain_blocks() {
        let g = ParamGate::parse("2 5:z1 9 4:z2 1 8:z6 10 6", 2).unwrap();
        assert!(ext_polynomial(&g).is_err());
    }

    #[test]
    fn insertions() {
        let g = ParamGate::parse("1 2:z6 3", 1).unwrap();
        assert_eq!(g.insert_l().to_string(), "2 1 3:z6 4");
        assert_eq!(g.insert_r().to_string(), "1 2:z6 4 3");
        assert_eq!(g.insert_r().insert_r().to_string(), "1 2:z6 5 4 3");
        assert_eq!(g.insert_l().insert_l().to_string(), "3 2 1 4:z6 5");
    }
}
