//! Specialized rigid circuits over F₂ wire states.

mod cnf;
mod parallel;
mod reduce;
mod route;

use std::fmt;
use std::str::FromStr;

pub use cnf::{sat_count, CnfFormula};
pub use parallel::parallelize;
pub use reduce::{reduce_3sat, reduce_3sat_traced, ReductionTrace};
pub use route::Router;

use crate::error::{Error, Result};

pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Identity,
    Swap,
    AndOr,
    TestEq,
}

impl GateKind {
    pub const ALL: [GateKind; 4] = [GateKind::Identity, GateKind::Swap, GateKind::AndOr, GateKind::TestEq];

    pub fn wires(self) -> usize {
        match self {
            GateKind::Identity => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Identity => "identity",
            GateKind::Swap => "swap",
            GateKind::AndOr => "andor",
            GateKind::TestEq => "testeq",
        }
    }

    /// Whether the gate relates input bits `vin` to output bits `vout`.
    pub fn relates(self, vin: &[bool], vout: &[bool]) -> bool {
        match self {
            GateKind::Identity => vin == vout,
            GateKind::Swap => vin[0] == vout[1] && vin[1] == vout[0],
            GateKind::AndOr => vout[0] == (vin[0] && vin[1]) && vout[1] == (vin[0] || vin[1]),
            GateKind::TestEq => vin[0] == vin[1] && vin == vout,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identity" | "id" => Ok(GateKind::Identity),
            "swap" => Ok(GateKind::Swap),
            "andor" => Ok(GateKind::AndOr),
            "testeq" => Ok(GateKind::TestEq),
            _ => Err(Error::parse(0, format!("unknown gate kind {s}"))),
        }
    }
}

/// One circuit layer: a single simple gate at `position` (1-based top wire),
/// every other wire passing through an Identity gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layer {
    pub kind: GateKind,
    pub position: usize,
}

impl Layer {
    pub fn new(kind: GateKind, position: usize) -> Self {
        Layer { kind, position }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircuitState {
    pub bits: Vec<bool>,
}

impl CircuitState {
    /// (a₁, ¬a₁, …, a_k, ¬a_k).
    pub fn paired(assignment: &[bool]) -> Self {
        CircuitState {
            bits: assignment.iter().flat_map(|&a| [a, !a]).collect(),
        }
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(CircuitState),
    ShortOut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Satisfying,
    NotSatisfying,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidCircuit {
    wires: usize,
    layers: Vec<Layer>,
}

impl RigidCircuit {
    pub fn new(wires: usize, layers: Vec<Layer>) -> Result<Self> {
        if wires == 0 || !wires.is_multiple_of(2) {
            return Err(Error::pre(format!("wire count {wires} must be positive and even")));
        }
        for l in &layers {
            if l.position == 0 || l.position + l.kind.wires() - 1 > wires {
                return Err(Error::pre(format!("{} at position {} does not fit {wires} wires", l.kind, l.position)));
            }
        }
        Ok(RigidCircuit { wires, layers })
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    /// Number of variable pairs k.
    pub fn pairs(&self) -> usize {
        self.wires / 2
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Number of circuit states m (layers + 1).
    pub fn states(&self) -> usize {
        self.layers.len() + 1
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let wires = header
            .strip_prefix("circuit")
            .and_then(|r| r.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::parse(ln, "expected \"circuit <wires>\""))?;
        let mut layers = Vec::new();
        for (ln, line) in lines {
            let mut parts = line.split_whitespace();
            let kind: GateKind = parts
                .next()
                .unwrap()
                .parse()
                .map_err(|_| Error::parse(ln, format!("unknown gate in {line:?}")))?;
            let position = parts
                .next()
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(ln, "expected a position"))?;
            layers.push(Layer::new(kind, position));
        }
        RigidCircuit::new(wires, layers).map_err(|e| Error::parse(ln, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("circuit {}\n", self.wires);
        for l in &self.layers {
            s.push_str(&format!("{} {}\n", l.kind, l.position));
        }
        s
    }
}

pub fn apply_gate(state: &CircuitState, layer: Layer) -> Step {
    let mut bits = state.bits.clone();
    let q = layer.position - 1;
    match layer.kind {
        GateKind::Identity => {}
        GateKind::Swap => bits.swap(q, q + 1),
        GateKind::AndOr => {
            let (a, b) = (bits[q], bits[q + 1]);
            bits[q] = a && b;
            bits[q + 1] = a || b;
        }
        GateKind::TestEq => {
            if bits[q] != bits[q + 1] {
                return Step::ShortOut;
            }
        }
    }
    Step::Next(CircuitState { bits })
}

/// All states v₁..v_m of a run, or `None` if the circuit shorts out.
pub fn trace(c: &RigidCircuit, assignment: &[bool]) -> Option<Vec<CircuitState>> {
    let mut states = vec![CircuitState::paired(assignment)];
    for &l in c.layers() {
        match apply_gate(states.last().unwrap(), l) {
            Step::Next(s) => states.push(s),
            Step::ShortOut => return None,
        }
    }
    Some(states)
}

pub fn evaluate(c: &RigidCircuit, assignment: &[bool]) -> Result<Outcome> {
    if assignment.len() != c.pairs() {
        return Err(Error::LengthMismatch {
            left: assignment.len(),
            right: c.pairs(),
        });
    }
    let mut state = CircuitState::paired(assignment);
    for &l in c.layers() {
        match apply_gate(&state, l) {
            Step::Next(s) => state = s,
            Step::ShortOut => return Ok(Outcome::NotSatisfying),
        }
    }
    Ok(if *state.bits.last().unwrap() {
        Outcome::Satisfying
    } else {
        Outcome::NotSatisfying
    })
}

pub fn assignment_bits(x: u64, k: usize) -> Vec<bool> {
    (0..k).map(|i| x >> i & 1 == 1).collect()
}

/// ext(C): satisfying paired initial assignments.
pub fn count_satisfying(c: &RigidCircuit) -> Result<u64> {
    use rayon::prelude::*;
    let k = c.pairs();
    if k > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            what: "satisfying-assignment enumeration",
            got: k,
            limit: ENUMERATION_LIMIT,
        });
    }
    let total = (0..1u64 << k)
        .into_par_iter()
        .filter(|&x| matches!(evaluate(c, &assignment_bits(x, k)), Ok(Outcome::Satisfying)))
        .count();
    Ok(total as u64)
}
