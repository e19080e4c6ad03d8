//! Incidence posets of graphs, the J_p gadget and its reduced state graph,
//! G_p(P), and recovery of ext(P) from residues of ext(G_p(P)).

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::downset::biguint_mod;
use crate::combinatorics::poset::{count_linear_extensions, Method, Poset};
use crate::error::{Error, Result};
use crate::numtheory::{binomial, binomial_mod, crt_combine, factorial, is_prime, mod_pow, primes_between, ResidueSystem};

pub const SUBSET_LIMIT: usize = 24;

/// A simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::pre(format!("edge {u}-{v} out of range for {} vertices", self.n)));
        }
        if u == v {
            return Err(Error::pre(format!("loop at vertex {u}")));
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(Error::pre(format!("repeated edge {u}-{v}")));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }
}

/// Vertices `0..n` above edges `n..n+m`, edges in `Graph::edges` order.
pub fn incidence_poset(g: &Graph) -> Poset {
    let n = g.n;
    let rel = g
        .edges()
        .enumerate()
        .flat_map(|(i, (u, v))| [(n + i, u), (n + i, v)]);
    Poset::from_relations(n + g.num_edges(), rel).expect("incidence relations are acyclic")
}

trait Weight: Clone + Send + Sync {
    fn cleared(&self) -> Self;
    fn mul_add(&mut self, a: &Self, b: &Self);
}

impl Weight for BigUint {
    fn cleared(&self) -> Self {
        BigUint::zero()
    }
    fn mul_add(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }
}

#[derive(Clone, Copy)]
struct Zp(u32, u32);

impl Weight for Zp {
    fn cleared(&self) -> Self {
        Zp(0, self.1)
    }
    fn mul_add(&mut self, a: &Self, b: &Self) {
        let p = self.1 as u64;
        self.0 = ((self.0 as u64 + a.0 as u64 * b.0 as u64) % p) as u32;
    }
}

/// f[S] = Σ_{v∈S} f[S∖v] · t! · C(u(S) + |S| − 1, t), t = |N(v) ∖ S|.
fn subset_dp<W: Weight>(g: &Graph, one: W, weight: impl Fn(usize, usize) -> W) -> Result<W> {
    let n = g.n;
    if n > SUBSET_LIMIT {
        return Err(Error::SizeLimit {
            what: "incidence subset DP (vertices)",
            got: n,
            limit: SUBSET_LIMIT,
        });
    }
    let adj = g.adjacency_masks();
    let m = g.num_edges();
    let maxdeg = adj.iter().map(|a| a.count_ones() as usize).max().unwrap_or(0);
    let table: Vec<Vec<W>> = (0..=maxdeg).map(|t| (0..=m + n).map(|k| weight(t, k)).collect()).collect();
    let full = 1usize << n;
    let mut u = vec![0u16; full];
    let mut f = vec![one.cleared(); full];
    f[0] = one;
    for s in 1..full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        u[s] = u[rest] + (adj[low] & !(s as u64)).count_ones() as u16;
        let k = s.count_ones() as usize;
        let base = u[s] as usize + k - 1;
        let mut acc = f[0].cleared();
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let t = (adj[v] & !(s as u64)).count_ones() as usize;
            acc.mul_add(&f[s & !(1 << v)], &table[t][base]);
        }
        f[s] = acc;
    }
    Ok(f[full - 1].clone())
}

/// ext(I_G) by the subset recurrence.
pub fn count_ext_incidence(g: &Graph) -> Result<BigUint> {
    subset_dp(g, BigUint::one(), |t, k| factorial(t as u64) * binomial(k as u64, t as u64))
}

/// ext(I_G) mod p by the subset recurrence.
pub fn count_ext_incidence_mod(g: &Graph, p: u64) -> Result<u64> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    let one = Zp(1 % p as u32, p as u32);
    let r = subset_dp(g, one, |t, k| {
        let f = (1..=t as u64).fold(1, |acc, i| acc * i % p);
        Zp((f * binomial_mod(k as u64, t as u64, p) % p) as u32, p as u32)
    })?;
    Ok(r.0 as u64)
}

/// ext(I_G) by the generic downset counter.
pub fn count_ext_incidence_generic(g: &Graph) -> Result<BigUint> {
    count_linear_extensions(&incidence_poset(g), Method::DownsetDp)
}

/// K_{p−1,p−1} on y_1..y_{p−1} (vertices `0..p−1`) and z_1..z_{p−1}
/// (vertices `p−1..2p−2`), plus z_{p−1} joined to every other z_i.
pub fn build_jp(p: u64) -> Result<Graph> {
    if p < 3 {
        return Err(Error::pre(format!("J_p needs p ≥ 3, got {p}")));
    }
    let h = p as usize - 1;
    let mut g = Graph::empty(2 * h);
    for y in 0..h {
        for z in 0..h {
            g.add_edge(y, h + z)?;
        }
    }
    for z in 0..h - 1 {
        g.add_edge(h + z, 2 * h - 1)?;
    }
    Ok(g)
}

/// J_p(a, b, c): a of the y_i, b of z_1..z_{p−2}, and c = [z_{p−1} present].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JpState {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl JpState {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        JpState { a, b, c }
    }

    pub fn top(p: u64) -> Self {
        JpState::new(p - 1, p - 2, 1)
    }

    /// Vertices and edges deleted from J_p to reach this state.
    pub fn ell(&self, p: u64) -> u64 {
        let (a, b, c) = (self.a, self.b, self.c);
        p * p - p - 1 - (a * b + (a + b) * c) + (p - 1 - a) + (p - 2 - b) + (1 - c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deletion {
    Y,
    Z,
    Last,
}

/// Weight of the 𝒢′ edge deleting one vertex of the given kind from `s`.
pub fn jp_edge_weight(p: u64, s: JpState, kind: Deletion) -> BigUint {
    let (mult, t) = match kind {
        Deletion::Y => (s.a, s.b + s.c),
        Deletion::Z => (s.b, s.a + s.c),
        Deletion::Last => (s.c, s.a + s.b),
    };
    if mult == 0 {
        return BigUint::zero();
    }
    BigUint::from(mult) * factorial(t) * binomial(s.ell(p) + t, t)
}

#[derive(Debug, Clone)]
pub struct JpRecurrence {
    pub p: u64,
    pub total: BigUint,
    /// Weighted path sum from the top state into each state, indexed [a][b][c].
    pub inflow: Vec<Vec<[BigUint; 2]>>,
}

impl JpRecurrence {
    pub fn inflow_at(&self, s: JpState) -> &BigUint {
        &self.inflow[s.a as usize][s.b as usize][s.c as usize]
    }

    pub fn residue(&self) -> u64 {
        biguint_mod(&self.total, self.p)
    }

    /// States with c = 1, (a+2)(p−b−2) > p and (p−a−2)(b+2) > p whose
    /// inflow is nonzero mod p.
    pub fn vanishing_violations(&self) -> Vec<JpState> {
        let p = self.p as i64;
        let mut bad = Vec::new();
        for a in 0..p {
            for b in 0..p - 1 {
                if (a + 2) * (p - b - 2) > p && (p - a - 2) * (b + 2) > p {
                    let s = JpState::new(a as u64, b as u64, 1);
                    if biguint_mod(self.inflow_at(s), self.p) != 0 {
                        bad.push(s);
                    }
                }
            }
        }
        bad
    }
}

/// ext(I_{J_p}) as the weighted path sum over 𝒢′ from J_p to the empty graph.
pub fn count_jp_recurrence(p: u64) -> Result<JpRecurrence> {
    if p < 3 {
        return Err(Error::pre(format!("J_p needs p ≥ 3, got {p}")));
    }
    let (na, nb) = (p as usize, p as usize - 1);
    let mut inflow = vec![vec![[BigUint::zero(), BigUint::zero()]; nb]; na];
    inflow[na - 1][nb - 1][1] = BigUint::one();
    // every deletion lowers a + b + c by one
    for level in (1..=na + nb - 1).rev() {
        for a in 0..na {
            for c in 0..2 {
                let Some(b) = level.checked_sub(a + c).filter(|&b| b < nb) else { continue };
                let w = inflow[a][b][c].clone();
                if w.is_zero() {
                    continue;
                }
                let s = JpState::new(a as u64, b as u64, c as u64);
                if a > 0 {
                    inflow[a - 1][b][c] += &w * jp_edge_weight(p, s, Deletion::Y);
                }
                if b > 0 {
                    inflow[a][b - 1][c] += &w * jp_edge_weight(p, s, Deletion::Z);
                }
                if c > 0 {
                    inflow[a][b][0] += &w * jp_edge_weight(p, s, Deletion::Last);
                }
            }
        }
    }
    Ok(JpRecurrence {
        p,
        total: inflow[0][0][0].clone(),
        inflow,
    })
}

/// G_p(P) with the vertex layout: elements of P first, then J_p.
#[derive(Debug, Clone)]
pub struct GpGraph {
    pub graph: Graph,
    pub p: u64,
    /// Upper cover count v_x of each element.
    pub covers: Vec<usize>,
}

impl GpGraph {
    pub fn y(&self, i: usize) -> usize {
        self.covers.len() + i
    }
}

/// J_p above the Hasse diagram of P, each x padded with p−1−v_x edges to
/// the y_i, targets taken round-robin.
pub fn build_gp(p: &Poset, prime: u64) -> Result<GpGraph> {
    build_gp_rotated(p, prime, 0)
}

/// As `build_gp`, with the round-robin cursor advanced by `shift` before
/// each element, giving a different valid padding.
pub fn build_gp_rotated(p: &Poset, prime: u64, shift: usize) -> Result<GpGraph> {
    let jp = build_jp(prime)?;
    let n = p.len();
    let h = prime as usize - 1;
    let covers: Vec<usize> = (0..n).map(|x| p.upper_cover_count(x)).collect();
    if let Some(x) = (0..n).find(|&x| covers[x] > h) {
        return Err(Error::pre(format!(
            "element {} is covered {} times, more than p − 1 = {h}",
            x + 1,
            covers[x]
        )));
    }
    let mut g = Graph::empty(n + jp.num_vertices());
    for (a, b) in p.hasse_edges() {
        g.add_edge(a, b)?;
    }
    for (u, v) in jp.edges() {
        g.add_edge(n + u, n + v)?;
    }
    let mut cursor = 0;
    for x in 0..n {
        cursor += shift;
        for _ in 0..h - covers[x] {
            g.add_edge(x, n + cursor % h)?;
            cursor += 1;
        }
    }
    Ok(GpGraph { graph: g, p: prime, covers })
}

/// ext(J_p) mod p via the 𝒢′ recurrence.
pub fn jp_residue(p: u64) -> Result<u64> {
    Ok(count_jp_recurrence(p)?.residue())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceCongruence {
    pub prime: u64,
    /// ext(G_p(P)) mod p.
    pub lhs: u64,
    /// (−1)^{|P|} · ext(P) · ext(J_p) mod p.
    pub product_rhs: u64,
    /// (−1)^{|P|+1} · 8 · ext(P) mod p.
    pub printed_rhs: u64,
    pub jp_residue: u64,
    pub ext_p: BigUint,
}

impl IncidenceCongruence {
    /// ext(G_p(P)) ≡ (−1)^{|P|} ext(P) ext(J_p).
    pub fn holds(&self) -> bool {
        self.lhs == self.product_rhs
    }

    /// ext(G_p(P)) ≡ (−1)^{|P|+1} · 8 · ext(P).
    pub fn printed_holds(&self) -> bool {
        self.lhs == self.printed_rhs
    }
}

fn sign(n: usize, x: u64, p: u64) -> u64 {
    if n % 2 == 1 {
        (p - x % p) % p
    } else {
        x % p
    }
}

pub fn congruence_check_incidence(p: &Poset, prime: u64) -> Result<IncidenceCongruence> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    let n = p.len();
    let gp = build_gp(p, prime)?;
    let ext_p = count_linear_extensions(p, Method::DownsetDp)?;
    let e = biguint_mod(&ext_p, prime);
    let jp = jp_residue(prime)?;
    Ok(IncidenceCongruence {
        prime,
        lhs: count_ext_incidence_mod(&gp.graph, prime)?,
        product_rhs: sign(n, e * jp, prime),
        printed_rhs: sign(n + 1, 8 * e, prime),
        jp_residue: jp,
        ext_p,
    })
}

/// Primes p ≥ 5 between n and n², extended past n² until their product
/// exceeds n!. At p = 3 the gadget count vanishes mod 3.
pub fn incidence_recovery_primes(n: usize) -> Vec<u64> {
    let bound = factorial(n as u64);
    let mut out = Vec::new();
    let mut prod = BigUint::one();
    for q in primes_between(n as u64, (n * n) as u64).into_iter().filter(|&q| q >= 5) {
        if prod > bound {
            break;
        }
        out.push(q);
        prod *= q;
    }
    let mut q = out.last().map_or((n as u64 + 1).max(5), |&l| l + 1);
    while prod <= bound {
        if is_prime(q) {
            out.push(q);
            prod *= q;
        }
        q += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceRecovery {
    pub ext: BigUint,
    /// (p, ext(G_p(P)) mod p, ext(J_p) mod p, ext(P) mod p)
    pub residues: Vec<(u64, u64, u64, u64)>,
    pub modulus: BigUint,
}

pub fn recover_ext_incidence(p: &Poset) -> Result<IncidenceRecovery> {
    recover_ext_incidence_with_primes(p, &incidence_recovery_primes(p.len()))
}

/// ext(P) from residues of ext(G_p(P)): each residue is divided by
/// (−1)^{|P|} ext(J_p) mod p and the quotients are combined by CRT.
pub fn recover_ext_incidence_with_primes(p: &Poset, primes: &[u64]) -> Result<IncidenceRecovery> {
    let n = p.len();
    if let Some(&q) = primes.iter().find(|&&q| (q as usize) <= n || !is_prime(q)) {
        return Err(Error::pre(format!("{q} is not a prime above n = {n}")));
    }
    let residues: Vec<(u64, u64, u64, u64)> = primes
        .par_iter()
        .map(|&q| {
            let jp = jp_residue(q)?;
            let f = sign(n, jp, q);
            if f == 0 {
                return Err(Error::NotInvertible {
                    value: "ext(J_p)".into(),
                    modulus: q,
                });
            }
            let r = count_ext_incidence_mod(&build_gp(p, q)?.graph, q)?;
            Ok((q, r, jp, r * mod_pow(f, q - 2, q) % q))
        })
        .collect::<Result<_>>()?;
    let (ext, modulus) = crt_combine(&ResidueSystem::new(residues.iter().map(|r| (r.3, r.0)).collect())?)?;
    if modulus <= factorial(n as u64) {
        return Err(Error::pre(format!(
            "prime product {modulus} does not exceed {n}! so ext(P) is not determined"
        )));
    }
    Ok(IncidenceRecovery { ext, residues, modulus })
}

/// Height-2 poset on V(H): x < y for every edge between x ∈ X and y ∉ X.
pub fn modes_poset(h: &Graph, x: &[usize]) -> Result<Poset> {
    let mut in_x = vec![false; h.n];
    for &v in x {
        if v >= h.n {
            return Err(Error::pre(format!("vertex {v} out of range")));
        }
        in_x[v] = true;
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| in_x[u] && in_x[v]) {
        return Err(Error::pre(format!("X is not independent: edge {u}-{v}")));
    }
    let rel = h.edges().filter(|&(u, v)| in_x[u] != in_x[v]).map(|(u, v)| if in_x[u] { (u, v) } else { (v, u) });
    Poset::from_relations(h.n, rel)
}

/// The vertex–edge incidence graph of G on V ∪ E, with the vertex side as X.
pub fn medial_graph(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n;
    let mut h = Graph::empty(n + g.num_edges());
    for (i, (u, v)) in g.edges().enumerate() {
        h.add_edge(u, n + i).unwrap();
        h.add_edge(v, n + i).unwrap();
    }
    (h, (0..n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_incidence_counts() {
        assert_eq!(count_ext_incidence(&Graph::empty(3)).unwrap(), BigUint::from(6u32));
        let k2 = Graph::path(2);
        assert_eq!(count_ext_incidence(&k2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_ext_incidence(&Graph::path(3)).unwrap(), BigUint::from(16u32));
        assert_eq!(count_ext_incidence_generic(&Graph::path(3)).unwrap(), BigUint::from(16u32));
        assert_eq!(count_ext_incidence_mod(&Graph::path(3), 5).unwrap(), 1);
    }

    #[test]
    fn incidence_poset_shape() {
        let p = incidence_poset(&Graph::path(2));
        assert_eq!(p.len(), 3);
        assert!(p.lt(2, 0) && p.lt(2, 1));
        assert_eq!(incidence_poset(&Graph::empty(4)).num_relations(), 0);
        assert_eq!(incidence_poset(&Graph::path(3)).height(), 2);
    }

    #[test]
    fn graph_rejects_loops_and_repeats() {
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn jp_shape() {
        let j3 = build_jp(3).unwrap();
        assert_eq!((j3.num_vertices(), j3.num_edges()), (4, 5));
        for p in [3u64, 5, 7] {
            let j = build_jp(p).unwrap();
            let h = p as usize - 1;
            assert_eq!(j.num_edges(), h * h + h - 1);
            assert!((0..h).all(|y| j.degree(y) == h));
            assert!((h..2 * h).all(|z| j.degree(z) >= p as usize));
        }
        assert_eq!(build_jp(5).unwrap().num_edges(), 19);
    }

    #[test]
    fn ell_at_the_corners() {
        let p = 5;
        assert_eq!(JpState::top(p).ell(p), 0);
        assert_eq!(JpState::new(0, 0, 0).ell(p), p * p - p - 1 + 2 * p - 2);
        // ℓ ≡ (a+2)(p−b−2) + (1−c)(a+b+1) mod p; removing z_{p−1} deletes
        // one vertex and a+b edges
        for a in 0..p {
            for b in 0..p - 1 {
                for c in 0..2 {
                    let s = JpState::new(a, b, c);
                    let want = ((a + 2) as i64 * (p - b - 2) as i64 + (1 - c as i64) * (a + b + 1) as i64)
                        .rem_euclid(p as i64);
                    assert_eq!((s.ell(p) % p) as i64, want, "{s:?}");
                }
            }
        }
    }

    #[test]
    fn figure_weights_at_five() {
        let s = JpState::new(4, 3, 1);
        assert_eq!(jp_edge_weight(5, s, Deletion::Y), BigUint::from(96u32));
        assert_eq!(jp_edge_weight(5, s, Deletion::Z), BigUint::from(360u32));
    }

    #[test]
    fn recurrence_matches_subset_dp_at_three() {
        let r = count_jp_recurrence(3).unwrap();
        assert_eq!(r.total, BigUint::from(5760u32));
        assert_eq!(r.total, count_ext_incidence(&build_jp(3).unwrap()).unwrap());
    }

    #[test]
    fn gp_shape() {
        let diamond = Poset::from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let gp = build_gp(&diamond, 3).unwrap();
        assert_eq!(gp.graph.num_vertices(), 4 + 4);
        assert_eq!(gp.covers, vec![2, 1, 1, 0]);
        // 4 Hasse edges, 5 in J_3, padding 0 + 1 + 1 + 2
        assert_eq!(gp.graph.num_edges(), 4 + 5 + 4);
        assert!(gp.graph.has_edge(3, gp.y(0)) && gp.graph.has_edge(3, gp.y(1)));
        assert!(build_gp(&Poset::antichain(1), 3).is_ok());
        let star = Poset::from_relations(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(build_gp(&star, 3).is_err());
    }

    #[test]
    fn recovery_primes() {
        assert_eq!(incidence_recovery_primes(3), vec![5, 7]);
        assert_eq!(incidence_recovery_primes(1), vec![5]);
        assert_eq!(incidence_recovery_primes(2), vec![5]);
        assert_eq!(incidence_recovery_primes(4), vec![5, 7]);
        assert_eq!(incidence_recovery_primes(5), vec![7, 11, 13]);
    }

    #[test]
    fn modes_of_the_medial_graph() {
        let (h, x) = medial_graph(&Graph::path(2));
        let p = modes_poset(&h, &x).unwrap();
        assert_eq!(count_linear_extensions(&p, Method::DownsetDp).unwrap(), BigUint::from(2u32));
        assert_eq!(modes_poset(&Graph::path(3), &[]).unwrap().num_relations(), 0);
        assert!(modes_poset(&Graph::path(3), &[0, 1]).is_err());
    }
}
