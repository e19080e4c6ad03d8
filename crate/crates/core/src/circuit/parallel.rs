use super::{GateKind, RigidCircuit, Router};
use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// The mod-p parallel circuit C_p.
///
/// Copy c (0-based) occupies wires 2pc..2pc+2p as a₁,¬a₁,…,a_p,¬a_p, with the
/// original circuit on its first 2k wires and a_{k+1..p} forced equal to a₁.
/// Copies are chained c ↔ c+1 on every original positive wire. Every AndOr and
/// TestEq is routed to wires 1–2 and back; the copy outputs end up in the last
/// p−1 positions.
pub fn parallelize(c: &RigidCircuit, p: u64) -> Result<RigidCircuit> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let k = c.pairs();
    let p = p as usize;
    if p <= k {
        return Err(Error::pre(format!("p = {p} must exceed the number of pairs k = {k}")));
    }
    let copies = p - 1;
    let wires = 2 * p * copies;
    let slot = |copy: usize, wire: usize| 2 * p * copy + wire;
    let mut r = Router::new(wires);

    let at_top = |r: &mut Router, kind: GateKind, x: usize, y: usize, reps: usize| {
        let ux = r.move_to(x, 0);
        let uy = r.move_to(y, 1);
        for _ in 0..reps {
            r.gate_at(kind, 0);
        }
        r.unwind(&uy);
        r.unwind(&ux);
    };

    for copy in 0..copies {
        for i in k..p {
            at_top(&mut r, GateKind::TestEq, slot(copy, 0), slot(copy, 2 * i), p - 1);
        }
    }
    for copy in 0..copies.saturating_sub(1) {
        for i in 0..k {
            at_top(&mut r, GateKind::TestEq, slot(copy, 2 * i), slot(copy + 1, 2 * i), p - 1);
        }
    }

    for layer in c.layers() {
        let q = layer.position - 1;
        match layer.kind {
            GateKind::Identity => r.layers.push(*layer),
            GateKind::Swap => {
                for copy in 0..copies {
                    r.gate_at(GateKind::Swap, slot(copy, q));
                }
            }
            kind => {
                for copy in 0..copies {
                    at_top(&mut r, kind, slot(copy, q), slot(copy, q + 1), 1);
                }
            }
        }
    }

    let out = 2 * k - 1;
    for (j, copy) in (0..copies).rev().enumerate() {
        r.move_to(slot(copy, out), wires - 1 - j);
    }
    RigidCircuit::new(wires, r.layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{count_satisfying, trace, assignment_bits, Layer};

    #[test]
    fn identity_at_p2() {
        let c = RigidCircuit::new(2, vec![Layer::new(GateKind::Identity, 1)]).unwrap();
        let cp = parallelize(&c, 2).unwrap();
        assert_eq!(cp.wires(), 4);
        assert_eq!(count_satisfying(&cp).unwrap(), 1);
    }

    #[test]
    fn two_wire_gates_act_on_top() {
        let c = RigidCircuit::new(4, vec![Layer::new(GateKind::AndOr, 3), Layer::new(GateKind::Swap, 2)]).unwrap();
        let cp = parallelize(&c, 3).unwrap();
        for l in cp.layers() {
            if matches!(l.kind, GateKind::AndOr | GateKind::TestEq) {
                assert_eq!(l.position, 1);
            }
        }
        assert_eq!(count_satisfying(&cp).unwrap(), count_satisfying(&c).unwrap());
        let pc = 6;
        for x in 0..1u64 << (cp.pairs()) {
            if let Some(states) = trace(&cp, &assignment_bits(x, cp.pairs())) {
                if *states.last().unwrap().bits.last().unwrap() {
                    assert!(states.iter().all(|s| s.popcount() == pc));
                }
            }
        }
    }

    #[test]
    fn rejects_small_prime() {
        let c = RigidCircuit::new(4, vec![]).unwrap();
        assert!(parallelize(&c, 2).is_err());
        assert!(parallelize(&c, 4).is_err());
    }
}
