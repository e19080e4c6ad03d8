//! Bruhat logic gates: parametrized bodies, concrete gates, equation systems
//! and the boundary sections.

mod concrete;
mod fixtures;
mod param;
mod search;
mod sigma;
mod system;

pub use concrete::BruhatGate;
pub use fixtures::{
    concrete_gate, concrete_lengths, fixture, fixtures, parse_fixtures, parse_rational, printed_system,
    GateSolutionFixture, Point, PrintedConstraint,
};
pub use param::{
    adjacency_profiles, block_factor, ext_polynomial, ext_polynomial_budget, AdjacencyProfile, ParamGate, Role, Sym,
    DEFAULT_IDEAL_BUDGET, PENULTIMATE_VAR,
};
pub use search::{
    enumerate_candidates, equations_only, eval_at_residues, point_residues, search_solutions_mod_p,
    search_system_mod_p, SEARCH_PRIME_LIMIT,
};
pub use sigma::{
    build_sigma1, build_sigma1_undoubled, build_sigma_final, sigma1_gate, sigma_final_gate, verify_init_lemma,
    verify_testing_lemma, wire_count, LemmaReport, LemmaRow,
};
pub use system::{
    bit_string, bits, equation_system_for, generate_equation_system, verify_point, verify_solution, Constraint,
    ConstraintKind, SlotPolys, SlotResult, SolutionReport, TL_SLOTS, TRUTH_SLOTS,
};

use crate::circuit::GateKind;
use crate::combinatorics::count_blockseq_ideal_mod;
use crate::error::Result;

/// Direct count of every slot of a restricted concrete gate mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteCheck {
    pub kind: GateKind,
    pub p: u64,
    /// (v_in, v_out, residue, expected to be nonzero)
    pub slots: Vec<(Vec<bool>, Vec<bool>, u64, bool)>,
}

impl ConcreteCheck {
    /// Nonzero exactly on the relation, and 1 there for Swap and Identity.
    pub fn passed(&self) -> bool {
        self.slots.iter().all(|(_, _, r, rel)| match (rel, self.kind) {
            (true, GateKind::Swap | GateKind::Identity) => *r == 1,
            (true, _) => *r != 0,
            (false, _) => *r == 0,
        })
    }
}

/// Count φ∘ ⋊ (v_in, v_out) for the concrete gate at p and every bit pattern.
/// Only small p are feasible.
pub fn verify_concrete_gate(kind: GateKind, p: u64) -> Result<ConcreteCheck> {
    let phi = concrete_gate(kind, p)?.restrict(p * p * p - 1);
    let k = phi.wires;
    let mut slots = Vec::new();
    for x in 0..1u32 << (2 * k) {
        let b: Vec<bool> = (0..2 * k).map(|i| x >> (2 * k - 1 - i) & 1 == 1).collect();
        let (vin, vout) = b.split_at(k);
        let r = count_blockseq_ideal_mod(&phi.evaluate(vin, vout)?, p)?;
        slots.push((vin.to_vec(), vout.to_vec(), r, kind.relates(vin, vout)));
    }
    Ok(ConcreteCheck { kind, p, slots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concrete_swap_and_identity_at_two() {
        assert!(verify_concrete_gate(GateKind::Swap, 2).unwrap().passed());
        assert!(verify_concrete_gate(GateKind::Identity, 2).unwrap().passed());
    }
}
