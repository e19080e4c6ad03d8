use super::{CnfFormula, GateKind, RigidCircuit, Router};
use crate::error::{Error, Result};

/// Which wires the reduction used for what.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    /// For each clause and slot: (pair index, variable, negated).
    pub literal_pairs: Vec<[(usize, usize, bool); 3]>,
    /// Pairs added for variables that occur in no clause.
    pub free_pairs: Vec<(usize, usize)>,
    /// Logical wire carrying each clause value after evaluation.
    pub clause_wires: Vec<usize>,
    /// Number of layers spent on each phase: copies, clauses, conjunction, output.
    pub phase_layers: [usize; 4],
}

/// Parsimonious reduction from #3SAT to #RigidCircuit.
pub fn reduce_3sat(f: &CnfFormula) -> Result<RigidCircuit> {
    Ok(reduce_3sat_traced(f)?.0)
}

pub fn reduce_3sat_traced(f: &CnfFormula) -> Result<(RigidCircuit, ReductionTrace)> {
    if f.clauses.is_empty() {
        return Err(Error::pre("formula has no clauses"));
    }
    let v = f.clauses.len();
    let mut literal_pairs = Vec::with_capacity(v);
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); f.num_vars + 1];
    for (j, c) in f.clauses.iter().enumerate() {
        let mut row = [(0, 0, false); 3];
        for (s, &lit) in c.iter().enumerate() {
            let pair = 3 * j + s;
            let var = lit.unsigned_abs() as usize;
            row[s] = (pair, var, lit < 0);
            occurrences[var].push(pair);
        }
        literal_pairs.push(row);
    }
    // every variable needs a pair, even one that never occurs
    let mut free_pairs = Vec::new();
    for var in 1..=f.num_vars {
        if occurrences[var].is_empty() {
            free_pairs.push((var, 3 * v + free_pairs.len()));
        }
    }
    let wires = 2 * (3 * v + free_pairs.len());
    let mut r = Router::new(wires);
    let mut phase_layers = [0usize; 4];

    // copies of one variable must agree on both wires of the pair
    for occ in &occurrences {
        for w in occ.windows(2) {
            for side in 0..2 {
                let (a, b) = (2 * w[0] + side, 2 * w[1] + side);
                let used = r.bring_adjacent(a, b);
                r.gate(GateKind::TestEq, a, b);
                r.unwind(&used);
            }
        }
    }
    phase_layers[0] = r.layers.len();

    let mut clause_wires = Vec::with_capacity(v);
    for row in &literal_pairs {
        let lit = |s: usize| 2 * row[s].0 + usize::from(row[s].2);
        let (l1, l2, l3) = (lit(0), lit(1), lit(2));
        r.bring_adjacent(l1, l2);
        r.gate(GateKind::AndOr, l1, l2);
        // l2 now carries l1 ∨ l2
        r.bring_adjacent(l2, l3);
        r.gate(GateKind::AndOr, l2, l3);
        clause_wires.push(l3);
    }
    phase_layers[1] = r.layers.len() - phase_layers[0];

    let acc = clause_wires[0];
    for &c in &clause_wires[1..] {
        r.bring_adjacent(acc, c);
        // the top output is the conjunction
        r.gate(GateKind::AndOr, acc, c);
    }
    phase_layers[2] = r.layers.len() - phase_layers[0] - phase_layers[1];

    r.move_to(acc, wires - 1);
    phase_layers[3] = r.layers.len() - phase_layers[0] - phase_layers[1] - phase_layers[2];
    let circuit = RigidCircuit::new(wires, r.layers)?;
    Ok((
        circuit,
        ReductionTrace {
            literal_pairs,
            free_pairs,
            clause_wires,
            phase_layers,
        },
    ))
}
