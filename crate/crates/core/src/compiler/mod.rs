//! Bruhat circuit frameworks: sections σ₁..σ_{m+1} joined by separators.

mod emit;
mod toy;

use std::collections::HashMap;

pub use emit::{
    compile_end_to_end, compile_framework, emit_sigma, flatten, revalidate, walk, Manifest, RevalidationReport,
};
pub use toy::{
    bruhat_states_of_tau, random_toy_framework, tau_given_states, verify_sum_decomposition, DecompositionReport,
    Element, StateTuple,
};

use crate::circuit::{parallelize, GateKind, Layer, RigidCircuit};
use crate::error::{Error, Result};
use crate::gates::{concrete_gate, sigma1_gate, sigma_final_gate, wire_count, BruhatGate};
use crate::numtheory::is_prime;

pub const MIN_PRIME: u64 = 11;

/// A framework stored as a table of distinct section bodies plus the section
/// sequence, so sections repeated across layers are kept once.
#[derive(Debug, Clone)]
pub struct BruhatFramework {
    pub p: u64,
    /// Pairs k of the source circuit (informational).
    pub k: usize,
    /// Wires per gap.
    pub n_wires: usize,
    table: Vec<BruhatGate>,
    sections: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkSummary {
    pub n: u128,
    pub separators: usize,
    pub distinct_sections: usize,
}

impl BruhatFramework {
    pub fn from_sections(p: u64, k: usize, n_wires: usize, sections: Vec<BruhatGate>) -> Result<Self> {
        let f = BruhatFramework {
            p,
            k,
            n_wires,
            sections: (0..sections.len() as u32).collect(),
            table: sections,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn num_sections(&self) -> usize {
        self.sections.len()
    }

    /// Number of separators m.
    pub fn separators(&self) -> usize {
        self.sections.len() - 1
    }

    pub fn section(&self, i: usize) -> &BruhatGate {
        &self.table[self.sections[i] as usize]
    }

    pub fn distinct_sections(&self) -> usize {
        self.table.len()
    }

    /// Positions contributed by section i: σ_i without its outputs.
    pub fn segment_len(&self, i: usize) -> u128 {
        let s = self.section(i);
        (s.len() - s.outputs.len() as u64) as u128
    }

    /// Values owned by section i: σ_i without its inputs.
    pub fn owned_len(&self, i: usize) -> u128 {
        let s = self.section(i);
        (s.len() - s.inputs.len() as u64) as u128
    }

    pub fn len(&self) -> u128 {
        (0..self.num_sections()).map(|i| self.segment_len(i)).sum::<u128>() + self.separators() as u128
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (position offset, segment length) for every section, 0-based.
    pub fn section_offsets(&self) -> Vec<(u128, u128)> {
        let mut out = Vec::with_capacity(self.num_sections());
        let mut pos = 0u128;
        for i in 0..self.num_sections() {
            let len = self.segment_len(i);
            out.push((pos, len));
            pos += len + 1;
        }
        out
    }

    /// Separator values s₁ < … < s_m.
    pub fn separator_values(&self) -> Vec<u128> {
        let mut out = Vec::with_capacity(self.separators());
        let mut base = 0u128;
        for i in 0..self.separators() {
            base += self.owned_len(i) + 1;
            out.push(base);
        }
        out
    }

    /// Check every distinct section and the wiring between consecutive ones.
    /// Together with the value tiling of each section this makes the flattened
    /// sequence a permutation without materializing it.
    pub fn validate(&self) -> Result<FrameworkSummary> {
        let last = self.num_sections().checked_sub(1).ok_or_else(|| Error::pre("framework has no sections"))?;
        for g in &self.table {
            g.check_invariants()?;
        }
        for i in 0..=last {
            let s = self.section(i);
            let want_in = if i == 0 { 0 } else { self.n_wires };
            let want_out = if i == last { 0 } else { self.n_wires };
            if s.inputs.len() != want_in || s.outputs.len() != want_out {
                return Err(Error::pre(format!(
                    "section {} has {} inputs and {} outputs, expected {want_in} and {want_out}",
                    i + 1,
                    s.inputs.len(),
                    s.outputs.len()
                )));
            }
        }
        let seps = self.separator_values();
        let offs = self.section_offsets();
        let mono = seps.windows(2).all(|w| w[0] < w[1]) && offs.windows(2).all(|w| w[0].0 < w[1].0);
        if !mono {
            return Err(Error::pre("separators are not increasing"));
        }
        Ok(FrameworkSummary {
            n: self.len(),
            separators: self.separators(),
            distinct_sections: self.table.len(),
        })
    }

    /// Every middle section has |σ_i| − (p³ − 1) − N ≡ 0 mod p³.
    pub fn gate_sections_balanced(&self) -> bool {
        let cube = self.p * self.p * self.p;
        (1..self.num_sections().saturating_sub(1)).all(|i| {
            let s = self.section(i);
            s.len() >= cube - 1 + s.wires as u64 && (s.len() - (cube - 1) - s.wires as u64).is_multiple_of(cube)
        })
    }
}

fn check_assembly_input(c: &RigidCircuit, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < MIN_PRIME {
        return Err(Error::pre(format!("p = {p} is below {MIN_PRIME}")));
    }
    if p as usize <= c.pairs() {
        return Err(Error::pre(format!("p = {p} must exceed k = {}", c.pairs())));
    }
    Ok(())
}

/// The simple gates of one layer, top wire first.
fn layer_gates(layer: Layer, wires: usize) -> Vec<GateKind> {
    let mut out = Vec::new();
    let mut w = 1;
    while w <= wires {
        if layer.kind != GateKind::Identity && w == layer.position {
            out.push(layer.kind);
            w += 2;
        } else {
            out.push(GateKind::Identity);
            w += 1;
        }
    }
    out
}

/// g₁ ∧ (g₂ ∧ (… ∧ g_r)), restricted.
fn layer_section(gates: &[GateKind], simple: &HashMap<GateKind, BruhatGate>, p: u64) -> Result<BruhatGate> {
    let r = p * p * p - 1;
    let mut acc = simple[gates.last().unwrap()].clone();
    for kind in gates[..gates.len() - 1].iter().rev() {
        acc = simple[kind].couple(&acc, r)?;
    }
    Ok(acc.restrict(r))
}

fn normalize_layer(l: Layer) -> Layer {
    if l.kind == GateKind::Identity {
        Layer::new(GateKind::Identity, 1)
    } else {
        l
    }
}

/// Build the framework mirroring the mod-p parallel circuit C_p.
pub fn assemble(c: &RigidCircuit, p: u64) -> Result<BruhatFramework> {
    check_assembly_input(c, p)?;
    let cp = parallelize(c, p)?;
    let n = wire_count(p);
    debug_assert_eq!(cp.wires(), n);
    let mut simple = HashMap::new();
    for kind in GateKind::ALL {
        simple.insert(kind, concrete_gate(kind, p)?);
    }
    let mut table = vec![sigma1_gate(p)];
    let mut index: HashMap<Layer, u32> = HashMap::new();
    let mut sections = vec![0u32];
    for &layer in cp.layers() {
        let key = normalize_layer(layer);
        let id = match index.get(&key) {
            Some(&id) => id,
            None => {
                let g = layer_section(&layer_gates(key, n), &simple, p)?;
                table.push(g);
                let id = table.len() as u32 - 1;
                index.insert(key, id);
                id
            }
        };
        sections.push(id);
    }
    table.push(sigma_final_gate(p));
    sections.push(table.len() as u32 - 1);
    let f = BruhatFramework {
        p,
        k: c.pairs(),
        n_wires: n,
        table,
        sections,
    };
    f.validate()?;
    if !f.gate_sections_balanced() {
        return Err(Error::pre("a gate section is not balanced"));
    }
    Ok(f)
}

/// Exact length of `assemble(c, p)` computed from gate sizes alone.
pub fn estimate_length(c: &RigidCircuit, p: u64) -> Result<u128> {
    check_assembly_input(c, p)?;
    let cp = parallelize(c, p)?;
    let n = wire_count(p) as u128;
    let cube = (p * p * p) as u128;
    let mut size = HashMap::new();
    for kind in GateKind::ALL {
        size.insert(kind, concrete_gate(kind, p)?.len() as u128);
    }
    let sigma1 = (p * p - p + 1) as u128 * (cube - 1) + n;
    let mut total = sigma1 - n;
    for l in cp.layers() {
        let (gate, rest) = match l.kind {
            GateKind::Identity => (0, n),
            kind => (size[&kind], n - 2),
        };
        let section = gate + rest * size[&GateKind::Identity] + cube - 1;
        total += section - n;
    }
    // σ_{m+1} keeps its inputs in place
    total += n + p as u128 - 1;
    total += cp.layers().len() as u128 + 1;
    Ok(total)
}
