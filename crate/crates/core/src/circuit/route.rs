use super::{GateKind, Layer};

/// Tracks which logical wire sits at each physical position while emitting
/// layers; routing uses adjacent Swap gates only.
#[derive(Debug, Clone)]
pub struct Router {
    at: Vec<usize>,
    pos: Vec<usize>,
    pub layers: Vec<Layer>,
}

impl Router {
    /// Logical wire i starts at position i (0-based).
    pub fn new(wires: usize) -> Self {
        Router {
            at: (0..wires).collect(),
            pos: (0..wires).collect(),
            layers: Vec::new(),
        }
    }

    pub fn position(&self, wire: usize) -> usize {
        self.pos[wire]
    }

    pub fn wire_at(&self, position: usize) -> usize {
        self.at[position]
    }

    /// Swap the wires at 0-based positions q and q+1.
    pub fn swap(&mut self, q: usize) {
        let (a, b) = (self.at[q], self.at[q + 1]);
        self.at.swap(q, q + 1);
        self.pos[a] = q + 1;
        self.pos[b] = q;
        self.layers.push(Layer::new(GateKind::Swap, q + 1));
    }

    /// Bubble `wire` to position `target`, returning the swaps used.
    pub fn move_to(&mut self, wire: usize, target: usize) -> Vec<usize> {
        let mut used = Vec::new();
        while self.pos[wire] > target {
            let q = self.pos[wire] - 1;
            self.swap(q);
            used.push(q);
        }
        while self.pos[wire] < target {
            let q = self.pos[wire];
            self.swap(q);
            used.push(q);
        }
        used
    }

    /// Place `b` immediately right of `a`.
    pub fn bring_adjacent(&mut self, a: usize, b: usize) -> Vec<usize> {
        let mut used = Vec::new();
        loop {
            let (pa, pb) = (self.pos[a], self.pos[b]);
            if pb == pa + 1 {
                return used;
            }
            let q = if pb > pa { pb - 1 } else { pb };
            self.swap(q);
            used.push(q);
        }
    }

    /// Undo a list of swaps in reverse order.
    pub fn unwind(&mut self, used: &[usize]) {
        for &q in used.iter().rev() {
            self.swap(q);
        }
    }

    /// Apply a two-wire gate to `a` (top) and `b`, which must be adjacent.
    pub fn gate(&mut self, kind: GateKind, a: usize, b: usize) {
        assert_eq!(self.pos[b], self.pos[a] + 1, "gate wires must be adjacent");
        self.layers.push(Layer::new(kind, self.pos[a] + 1));
    }

    /// Record a two-wire gate at a fixed position without routing.
    pub fn gate_at(&mut self, kind: GateKind, q: usize) {
        self.layers.push(Layer::new(kind, q + 1));
    }
}
