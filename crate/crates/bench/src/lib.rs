//! Seeded workloads shared by the benchmarks.

use lecount::combinatorics::{random_poset, Permutation, Poset};
use lecount::incidence::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn posets(seed: u64, count: usize, n: usize, density: f64) -> Vec<Poset> {
    let mut r = rng(seed);
    (0..count).map(|_| random_poset(&mut r, n, density)).collect()
}

pub fn permutation(seed: u64, n: usize) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(&mut rng(seed));
    Permutation::new(v).expect("shuffled identity")
}

/// A random simple graph with `m` edges, capped at the complete graph.
pub fn graph(seed: u64, n: usize, m: usize) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::empty(n);
    let target = m.min(n * n.saturating_sub(1) / 2);
    while g.num_edges() < target {
        let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).expect("checked above");
        }
    }
    g
}
