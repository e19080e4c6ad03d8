//! Gates with concrete block lengths: ⋊, restriction, coupling and the
//! L/M/R insertions.

use std::fmt;

use crate::combinatorics::blockseq::{BlockSequence, Item};
use crate::error::{Error, Result};

use super::param::{ParamGate, Role};

#[derive(Clone, PartialEq, Eq)]
pub struct BruhatGate {
    pub body: BlockSequence,
    pub wires: usize,
    /// Item indices of the inputs, in wire (position) order.
    pub inputs: Vec<usize>,
    /// Item indices of the outputs, in wire order.
    pub outputs: Vec<usize>,
    pub penultimate: Option<usize>,
}

impl BruhatGate {
    pub fn from_param(g: &ParamGate, lengths: &[u64; 7]) -> BruhatGate {
        let body = g.instantiate(lengths);
        let mut inputs = vec![0; g.wires];
        let mut outputs = vec![0; g.wires];
        for (i, s) in g.syms.iter().enumerate() {
            match s.role {
                Role::Input(w) => inputs[w] = i,
                Role::Output(w) => outputs[w] = i,
                _ => {}
            }
        }
        BruhatGate {
            body,
            wires: g.wires,
            inputs,
            outputs,
            penultimate: Some(g.penultimate_index()),
        }
    }

    pub fn len(&self) -> u64 {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn penultimate_len(&self) -> u64 {
        self.penultimate.map_or(0, |i| self.body.items[i].len())
    }

    /// |φ| − k ≡ 0 mod p³.
    pub fn is_balanced(&self, p: u64) -> bool {
        (self.len() - self.wires as u64).is_multiple_of(p * p * p)
    }

    /// Values tile 1..|φ|, inputs are the smallest values in decreasing order,
    /// outputs are the last items in decreasing order, and the penultimate block
    /// sits right before the outputs below all of them.
    pub fn check_invariants(&self) -> Result<()> {
        let items = &self.body.items;
        let mut ranges: Vec<(i64, i64)> = items.iter().filter(|i| !i.is_empty()).map(|i| (i.first(), i.end())).collect();
        ranges.sort();
        let mut next = 1;
        for (a, b) in ranges {
            if a != next {
                return Err(Error::pre(format!("values do not tile 1..{}", self.len())));
            }
            next = b;
        }
        let single = |i: usize| matches!(items[i], Item::Single(_));
        let nin = self.inputs.len();
        for (w, &i) in self.inputs.iter().enumerate() {
            if !single(i) || items[i].first() != (nin - w) as i64 {
                return Err(Error::pre("inputs must be the smallest values in decreasing order"));
            }
        }
        if self.inputs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::pre("inputs out of position order"));
        }
        let nout = self.outputs.len();
        for (w, &i) in self.outputs.iter().enumerate() {
            if i != items.len() - nout + w || !single(i) {
                return Err(Error::pre("outputs must be the last items"));
            }
        }
        if self.outputs.windows(2).any(|w| items[w[0]].first() <= items[w[1]].first()) {
            return Err(Error::pre("outputs must decrease"));
        }
        if let Some(pen) = self.penultimate {
            if pen + nout + 1 != items.len() {
                return Err(Error::pre("penultimate block must precede the outputs"));
            }
            let top = items[pen].end() - 1;
            if self.outputs.iter().any(|&o| items[o].first() <= top) {
                return Err(Error::pre("penultimate block must lie below the outputs"));
            }
        }
        Ok(())
    }

    /// φ ⋊ (v_in, v_out).
    pub fn evaluate(&self, vin: &[bool], vout: &[bool]) -> Result<BlockSequence> {
        if vin.len() != self.inputs.len() {
            return Err(Error::LengthMismatch {
                left: vin.len(),
                right: self.inputs.len(),
            });
        }
        if vout.len() != self.outputs.len() {
            return Err(Error::LengthMismatch {
                left: vout.len(),
                right: self.outputs.len(),
            });
        }
        let mut drop = vec![false; self.body.items.len()];
        for (&i, &b) in self.inputs.iter().zip(vin) {
            drop[i] = !b;
        }
        for (&i, &b) in self.outputs.iter().zip(vout) {
            drop[i] = b;
        }
        let items = self
            .body
            .items
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(it, _)| *it)
            .collect();
        Ok(BlockSequence::new(items))
    }

    /// φ∘: a block of `len` values above max(φ) prepended.
    pub fn restrict(&self, len: u64) -> BruhatGate {
        let top = self.body.max_value().unwrap_or(0);
        let mut items = Vec::with_capacity(self.body.items.len() + 1);
        items.push(Item::Block { first: top + 1, len });
        items.extend_from_slice(&self.body.items);
        let bump = |v: &Vec<usize>| v.iter().map(|i| i + 1).collect();
        BruhatGate {
            body: BlockSequence::new(items),
            wires: self.wires,
            inputs: bump(&self.inputs),
            outputs: bump(&self.outputs),
            penultimate: self.penultimate.map(|i| i + 1),
        }
    }

    /// φ ∧ ψ: ψ∘ (restriction block of `restriction_len`) replaces the
    /// penultimate block of φ, and ψ's outputs follow φ's.
    pub fn couple(&self, psi: &BruhatGate, restriction_len: u64) -> Result<BruhatGate> {
        let pen = self.penultimate.ok_or_else(|| Error::pre("coupling needs a penultimate block"))?;
        if psi.penultimate.is_none() {
            return Err(Error::pre("coupling needs a penultimate block"));
        }
        self.check_invariants()?;
        psi.check_invariants()?;
        let y = self.body.items[pen].first();
        let inner = psi.restrict(restriction_len);
        let n_inner = inner.body.items.len();
        let inner_out_start = n_inner - inner.outputs.len();

        let mut placed: Vec<(Item, (i64, i64))> = Vec::new();
        let mut map_outer = vec![usize::MAX; self.body.items.len()];
        let mut map_inner = vec![usize::MAX; n_inner];
        for (i, it) in self.body.items[..pen].iter().enumerate() {
            map_outer[i] = placed.len();
            placed.push((*it, (it.first(), 0)));
        }
        let mut is_input = vec![false; n_inner];
        for &i in &inner.inputs {
            is_input[i] = true;
        }
        let key_inner = |i: usize, it: &Item| if is_input[i] { (0, it.first()) } else { (y, it.first()) };
        for (i, it) in inner.body.items[..inner_out_start].iter().enumerate() {
            map_inner[i] = placed.len();
            placed.push((*it, key_inner(i, it)));
        }
        for (i, it) in self.body.items.iter().enumerate().skip(pen + 1) {
            map_outer[i] = placed.len();
            placed.push((*it, (it.first(), 0)));
        }
        for (i, it) in inner.body.items.iter().enumerate().skip(inner_out_start) {
            map_inner[i] = placed.len();
            placed.push((*it, key_inner(i, it)));
        }

        let mut order: Vec<usize> = (0..placed.len()).collect();
        order.sort_by_key(|&i| placed[i].1);
        let mut first = vec![0i64; placed.len()];
        let mut next = 1i64;
        for &i in &order {
            first[i] = next;
            next += placed[i].0.len() as i64;
        }
        let items = placed
            .iter()
            .zip(&first)
            .map(|((it, _), &f)| match it {
                Item::Single(_) => Item::Single(f),
                Item::Block { len, .. } => Item::Block { first: f, len: *len },
            })
            .collect();
        let inputs = self.inputs.iter().map(|&i| map_outer[i]).chain(inner.inputs.iter().map(|&i| map_inner[i])).collect();
        let outputs = self
            .outputs
            .iter()
            .map(|&i| map_outer[i])
            .chain(inner.outputs.iter().map(|&i| map_inner[i]))
            .collect();
        let g = BruhatGate {
            body: BlockSequence::new(items),
            wires: self.wires + psi.wires,
            inputs,
            outputs,
            penultimate: inner.penultimate.map(|i| map_inner[i]),
        };
        g.check_invariants()?;
        Ok(g)
    }

    /// L: a new global minimum immediately left of the penultimate block.
    pub fn insert_l(&self) -> Result<BruhatGate> {
        let pen = self.penultimate.ok_or_else(|| Error::pre("no penultimate block"))?;
        let mut g = self.clone();
        let lo = self.body.min_value().unwrap_or(1);
        g.body.items.insert(pen, Item::Single(lo - 1));
        g.body = g.body.normalized();
        let shift = |v: &mut Vec<usize>| v.iter_mut().filter(|i| **i >= pen).for_each(|i| *i += 1);
        shift(&mut g.inputs);
        shift(&mut g.outputs);
        g.penultimate = Some(pen + 1);
        Ok(g)
    }

    /// M: the penultimate block grows by one.
    pub fn insert_m(&self) -> Result<BruhatGate> {
        self.resize_penultimate(1)
    }

    pub fn insert_m_inverse(&self) -> Result<BruhatGate> {
        if self.penultimate_len() == 0 {
            return Err(Error::pre("penultimate block is empty"));
        }
        self.resize_penultimate(-1)
    }

    fn resize_penultimate(&self, by: i64) -> Result<BruhatGate> {
        let pen = self.penultimate.ok_or_else(|| Error::pre("no penultimate block"))?;
        let mut g = self.clone();
        let Item::Block { first, len } = g.body.items[pen] else {
            return Err(Error::pre("penultimate item is not a block"));
        };
        let top = first + len as i64;
        for it in g.body.items.iter_mut() {
            if it.first() >= top {
                *it = it.shifted(by);
            }
        }
        g.body.items[pen] = Item::Block {
            first,
            len: (len as i64 + by) as u64,
        };
        Ok(g)
    }

    /// R: one more than the penultimate maximum, appended at the very end.
    pub fn insert_r(&self) -> Result<BruhatGate> {
        let pen = self.penultimate.ok_or_else(|| Error::pre("no penultimate block"))?;
        let mut g = self.clone();
        let v = self.body.items[pen].end();
        for it in g.body.items.iter_mut() {
            if it.first() >= v {
                *it = it.shifted(1);
            }
        }
        g.body.items.push(Item::Single(v));
        Ok(g)
    }
}

impl fmt::Display for BruhatGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

impl fmt::Debug for BruhatGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BruhatGate({}; in {:?}, out {:?}, pen {:?})",
            self.body, self.inputs, self.outputs, self.penultimate
        )
    }
}
