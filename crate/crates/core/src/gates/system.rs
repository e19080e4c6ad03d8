//! Equation systems for parametrized gates and their verification at the
//! fixture points.

use std::fmt;

use num_rational::BigRational;

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, rational_mod};
use crate::polyalg::{int, MultiPoly, NVARS};

use super::fixtures::{fixture, Point};
use super::param::{ext_polynomial, ParamGate, PENULTIMATE_VAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    Zero,
    NonZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    /// Input and output bits, or `None` for the balance equation.
    pub slot: Option<(Vec<bool>, Vec<bool>)>,
    pub kind: ConstraintKind,
    pub poly: MultiPoly,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.kind {
            ConstraintKind::Zero => "= 0",
            ConstraintKind::NonZero => "!= 0",
        };
        write!(f, "{}: {} {rel}", self.label, self.poly)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    L,
    R,
}

pub fn bits(s: &str) -> Vec<bool> {
    s.bytes().map(|b| b == b'1').collect()
}

pub fn bit_string(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// The insertion-congruence slots, in order, for two-wire gates.
pub const TL_SLOTS: [(&str, &str); 5] = [("10", "11"), ("01", "11"), ("00", "01"), ("00", "10"), ("00", "11")];

/// Truth-table slots with equal TRUE counts on both sides, lexicographic.
pub const TRUTH_SLOTS: [(&str, &str); 6] = [("00", "00"), ("01", "01"), ("01", "10"), ("10", "01"), ("10", "10"), ("11", "11")];

/// Memoized polynomial source for one parametrized gate.
pub struct SlotPolys<'a> {
    gate: &'a ParamGate,
}

impl<'a> SlotPolys<'a> {
    pub fn new(gate: &'a ParamGate) -> Self {
        SlotPolys { gate }
    }

    /// ext of the modified gate ⋊ (vin, vout) with z6 := −1 + mshift.
    fn g(&self, vin: &[bool], vout: &[bool], ops: &[Op], mshift: i64) -> Result<MultiPoly> {
        let mut phi = self.gate.clone();
        for op in ops {
            phi = match op {
                Op::L => phi.insert_l(),
                Op::R => phi.insert_r(),
            };
        }
        let poly = ext_polynomial(&phi.semi(vin, vout))?;
        Ok(poly.substitute(PENULTIMATE_VAR as usize, &int(mshift - 1)))
    }

    pub fn plain(&self, vin: &[bool], vout: &[bool]) -> Result<MultiPoly> {
        self.g(vin, vout, &[], 0)
    }

    /// −2·M + L + R.
    pub fn first_order(&self, vin: &[bool], vout: &[bool]) -> Result<MultiPoly> {
        let m = self.g(vin, vout, &[], 1)?;
        let l = self.g(vin, vout, &[Op::L], 0)?;
        let r = self.g(vin, vout, &[Op::R], 0)?;
        Ok(&(&l + &r) - &m.scale(&int(2)))
    }

    /// 2M² − 4LM − 4RM + L² + 2LR + R².
    pub fn second_order(&self, vin: &[bool], vout: &[bool]) -> Result<MultiPoly> {
        let terms: [(i64, &[Op], i64); 6] = [
            (2, &[], 2),
            (-4, &[Op::L], 1),
            (-4, &[Op::R], 1),
            (1, &[Op::L, Op::L], 0),
            (2, &[Op::L, Op::R], 0),
            (1, &[Op::R, Op::R], 0),
        ];
        let mut acc = MultiPoly::zero();
        for (c, ops, m) in terms {
            acc = &acc + &self.g(vin, vout, ops, m)?.scale(&int(c));
        }
        Ok(acc)
    }

    /// Σz₁..z₅ + #singles − k − 1, i.e. |φ| − k with z6 = −1.
    pub fn balance(&self) -> MultiPoly {
        let c = self.gate.num_singles() as i64 - self.gate.wires as i64 - 1;
        let mut acc = MultiPoly::constant(int(c));
        for s in &self.gate.syms {
            if let Some(v) = s.var.filter(|&v| v != PENULTIMATE_VAR) {
                acc = &acc + &MultiPoly::var(v as usize);
            }
        }
        acc
    }
}

fn slot(vin: &str, vout: &str) -> Option<(Vec<bool>, Vec<bool>)> {
    Some((bits(vin), bits(vout)))
}

/// The 12 constraints (2 for Identity) for the registered body of `kind`.
pub fn generate_equation_system(kind: GateKind) -> Result<Vec<Constraint>> {
    equation_system_for(&fixture(kind).body, kind)
}

/// Constraints for an arbitrary body read as a gate of `kind`: balance, the
/// insertion congruences, then the truth-table slots.
pub fn equation_system_for(gate: &ParamGate, kind: GateKind) -> Result<Vec<Constraint>> {
    let sp = SlotPolys::new(gate);
    let mut out = vec![Constraint {
        label: "(1) balance".into(),
        slot: None,
        kind: ConstraintKind::Zero,
        poly: sp.balance(),
    }];
    if kind == GateKind::Identity {
        out[0].label = "(7) balance".into();
        out.push(Constraint {
            label: "(8) 0,1".into(),
            slot: slot("0", "1"),
            kind: ConstraintKind::Zero,
            poly: sp.first_order(&[false], &[true])?,
        });
        return Ok(out);
    }
    if gate.wires != 2 {
        return Err(Error::pre("two-wire gate body expected"));
    }
    for (i, (a, b)) in TL_SLOTS.iter().enumerate() {
        let (vin, vout) = (bits(a), bits(b));
        let poly = if i < 4 {
            sp.first_order(&vin, &vout)?
        } else {
            sp.second_order(&vin, &vout)?
        };
        out.push(Constraint {
            label: format!("({}) {a},{b}", i + 2),
            slot: slot(a, b),
            kind: ConstraintKind::Zero,
            poly,
        });
    }
    for (a, b) in TRUTH_SLOTS {
        let (vin, vout) = (bits(a), bits(b));
        let g = sp.plain(&vin, &vout)?;
        let rel = kind.relates(&vin, &vout);
        let (ckind, poly) = match kind {
            GateKind::Swap => (ConstraintKind::Zero, if rel { &g - &MultiPoly::one() } else { g }),
            _ if rel => (ConstraintKind::NonZero, g),
            _ => (ConstraintKind::Zero, g),
        };
        out.push(Constraint {
            label: format!("tt {a},{b}"),
            slot: slot(a, b),
            kind: ckind,
            poly,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotResult {
    pub label: String,
    pub kind: ConstraintKind,
    /// Exact value at the point.
    pub value: BigRational,
    pub residue: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionReport {
    pub kind: GateKind,
    pub p: u64,
    pub point: Point,
    pub slots: Vec<SlotResult>,
}

impl SolutionReport {
    pub fn all_equalities_hold(&self) -> bool {
        self.slots.iter().filter(|s| s.kind == ConstraintKind::Zero).all(|s| s.holds)
    }

    pub fn passed(&self) -> bool {
        self.slots.iter().all(|s| s.holds)
    }

    /// (label, exact value, residue) of every "not 0" slot.
    pub fn inequation_values(&self) -> Vec<(&str, &BigRational, u64)> {
        self.slots
            .iter()
            .filter(|s| s.kind == ConstraintKind::NonZero)
            .map(|s| (s.label.as_str(), &s.value, s.residue))
            .collect()
    }
}

fn full_point(z: &Point) -> [BigRational; NVARS] {
    std::array::from_fn(|i| if (1..=5).contains(&i) { z[i - 1].clone() } else { int(-1) })
}

/// Evaluate the system at `z` mod p. Equalities use the primitive integer
/// form, so they are meaningful for every p that does not divide a
/// denominator of `z`.
pub fn verify_point(kind: GateKind, system: &[Constraint], z: &Point, p: u64) -> Result<SolutionReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let full = full_point(z);
    let mut residues = [0u64; NVARS];
    for (r, x) in residues.iter_mut().zip(&full) {
        *r = rational_mod(x.numer(), x.denom(), p)?;
    }
    let mut slots = Vec::with_capacity(system.len());
    for c in system {
        let value = c.poly.eval_rational(&full);
        let (residue, holds) = match c.kind {
            ConstraintKind::Zero => {
                let r = c.poly.eval_primitive_mod(&residues, p);
                (r, r == 0)
            }
            ConstraintKind::NonZero => {
                let r = rational_mod(value.numer(), value.denom(), p)?;
                (r, r != 0)
            }
        };
        slots.push(SlotResult {
            label: c.label.clone(),
            kind: c.kind,
            value,
            residue,
            holds,
        });
    }
    Ok(SolutionReport {
        kind,
        p,
        point: z.clone(),
        slots,
    })
}

/// Check the registered system at the fixture's working point mod p.
pub fn verify_solution(kind: GateKind, p: u64) -> Result<SolutionReport> {
    let f = fixture(kind);
    if p < f.min_prime {
        return Err(Error::pre(format!("p = {p} is not admissible for {kind} (needs p >= {})", f.min_prime)));
    }
    let system = generate_equation_system(kind)?;
    let z = f.working_point().cloned().unwrap_or_else(|| std::array::from_fn(|_| int(0)));
    verify_point(kind, &system, &z, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::fixtures::printed_system;

    #[test]
    fn identity_system_is_trivial() {
        let sys = generate_equation_system(GateKind::Identity).unwrap();
        assert_eq!(sys.len(), 2);
        assert!(sys.iter().all(|c| c.poly.is_zero()));
    }

    #[test]
    fn swap_system_matches_printed_up_to_scale() {
        let sys = generate_equation_system(GateKind::Swap).unwrap();
        assert_eq!(sys.len(), 12);
        let printed = printed_system(GateKind::Swap).unwrap();
        for c in &sys {
            let key = c.label.split(' ').nth(1).unwrap();
            let pc = printed.iter().find(|p| p.slot == key).unwrap();
            if key == "10,11" {
                continue;
            }
            assert!(c.poly.proportional_to(&pc.poly).is_some(), "{}", c.label);
        }
        let r = verify_solution(GateKind::Swap, 2).unwrap();
        assert!(r.passed());
        for s in &r.slots {
            assert_eq!(s.value, int(0), "{}", s.label);
        }
    }
}
