use lecount::circuit::*;

fn circ(wires: usize, layers: &[(GateKind, usize)]) -> RigidCircuit {
    RigidCircuit::new(wires, layers.iter().map(|&(k, p)| Layer::new(k, p)).collect()).unwrap()
}

#[test]
fn gate_examples() {
    let s = CircuitState { bits: vec![true, false] };
    let next = |k| apply_gate(&s, Layer::new(k, 1));
    assert_eq!(next(GateKind::Swap), Step::Next(CircuitState { bits: vec![false, true] }));
    assert_eq!(next(GateKind::AndOr), Step::Next(CircuitState { bits: vec![false, true] }));
    assert_eq!(next(GateKind::TestEq), Step::ShortOut);
}

#[test]
fn evaluation_examples() {
    let id = circ(2, &[(GateKind::Identity, 1)]);
    assert_eq!(evaluate(&id, &[false]).unwrap(), Outcome::Satisfying);
    assert_eq!(evaluate(&id, &[true]).unwrap(), Outcome::NotSatisfying);
    assert!(evaluate(&id, &[true, true]).is_err());
    let sw = circ(2, &[(GateKind::Swap, 1)]);
    assert_eq!(evaluate(&sw, &[true]).unwrap(), Outcome::Satisfying);
    assert_eq!(count_satisfying(&circ(4, &[(GateKind::TestEq, 1)])).unwrap(), 0);
}

fn formula(u: usize, clauses: &[[i32; 3]]) -> CnfFormula {
    CnfFormula::new(u, clauses.to_vec()).unwrap()
}

#[test]
fn reduction_examples() {
    let cases = [
        (formula(1, &[[1, 1, 1]]), 1),
        (formula(1, &[[1, -1, 1]]), 2),
        (formula(3, &[[1, 2, 3], [-1, -2, -3]]), 6),
    ];
    for (f, want) in cases {
        assert_eq!(sat_count(&f).unwrap(), want);
        let c = reduce_3sat(&f).unwrap();
        assert_eq!(count_satisfying(&c).unwrap(), want, "{f:?}");
    }
    let f = formula(3, &[[1, 2, 3], [-1, -2, -3]]);
    assert_eq!(reduce_3sat(&f).unwrap().wires(), 6 * f.clauses.len());
    assert!(reduce_3sat(&formula(2, &[])).is_err());
}

#[test]
fn reduction_trace_phases() {
    let f = formula(4, &[[1, -2, 3], [2, 3, -4], [-1, -3, 4]]);
    let (c, t) = reduce_3sat_traced(&f).unwrap();
    assert_eq!(t.literal_pairs.len(), 3);
    assert_eq!(t.phase_layers.iter().sum::<usize>(), c.layers().len());
    assert_eq!(count_satisfying(&c).unwrap(), sat_count(&f).unwrap());
}

#[test]
fn layer_count_is_quadratic() {
    let mut prev = 0;
    for v in 1..=6 {
        let clauses: Vec<[i32; 3]> = (0..v).map(|j| [1 + j % 3, -(1 + (j + 1) % 3), 1 + (j + 2) % 3]).collect();
        let c = reduce_3sat(&CnfFormula::new(3, clauses).unwrap()).unwrap();
        let layers = c.layers().len();
        assert!(layers <= 40 * (v * v) as usize, "v = {v}: {layers}");
        assert!(layers > prev);
        prev = layers;
    }
}

#[test]
fn dimacs_round_trip() {
    let text = "c sample\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
    let f = CnfFormula::parse_dimacs(text).unwrap();
    assert_eq!(f.clauses, vec![[1, -2, 3], [-1, 2, -3]]);
    assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    let err = CnfFormula::parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap_err();
    assert!(err.to_string().contains("line"), "{err}");
}

#[test]
fn parallel_identity_circuit() {
    let c = circ(2, &[(GateKind::Identity, 1)]);
    let c2 = parallelize(&c, 2).unwrap();
    assert_eq!(c2.wires(), 4);
    assert_eq!(count_satisfying(&c2).unwrap(), 1);
    assert!(parallelize(&c, 4).is_err());
    assert!(parallelize(&circ(4, &[]), 2).is_err());
}

#[test]
fn parallel_circuits_keep_counts() {
    let circuits = [
        circ(2, &[(GateKind::Swap, 1)]),
        circ(4, &[(GateKind::AndOr, 1), (GateKind::Swap, 3)]),
        circ(4, &[(GateKind::AndOr, 2), (GateKind::AndOr, 3), (GateKind::Swap, 1)]),
        circ(4, &[(GateKind::TestEq, 2), (GateKind::Swap, 3)]),
    ];
    for c in &circuits {
        for p in [3u64, 5] {
            let cp = parallelize(c, p).unwrap();
            assert_eq!(cp.wires(), (2 * p * (p - 1)) as usize);
            assert_eq!(count_satisfying(&cp).unwrap(), count_satisfying(c).unwrap(), "{c:?} p={p}");
            for l in cp.layers() {
                if matches!(l.kind, GateKind::AndOr | GateKind::TestEq) {
                    assert_eq!(l.position, 1);
                }
            }
        }
    }
}

#[test]
fn conservation_on_reduced_circuits() {
    let f = formula(3, &[[1, -2, 3], [-1, 2, 2]]);
    let c = reduce_3sat(&f).unwrap();
    let k = c.pairs();
    for x in 0..1u64 << k {
        if let Some(states) = trace(&c, &assignment_bits(x, k)) {
            assert!(states.iter().all(|s| s.popcount() == k));
        }
    }
}
