//! Poset to height-2 poset: Q, Q_p, selective counts ext_A, the coloring
//! count f_p(A), and recovery of ext(P) from residues of ext(Q_p).
//!
//! Element layout: in Q, x_i is `i` and x_i′ is `n + i`. Q_p appends the
//! pendants x_{ij} as `2n + i(p−2) + j`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::downset::{biguint_mod, forward_dp, ModTally, Tally, DEFAULT_STATE_BUDGET};
use crate::combinatorics::poset::{count_linear_extensions, count_linear_extensions_filtered, Method, Poset};
use crate::error::{Error, Result};
use crate::numtheory::{binomial, crt_combine, factorial, is_prime, mod_pow, require_prime, ResidueSystem};

pub fn build_q(p: &Poset) -> Poset {
    let n = p.len();
    let rel = (0..n)
        .map(|i| (i, n + i))
        .chain(p.relations().map(|(i, j)| (i, n + j)));
    Poset::from_relations(2 * n, rel).expect("Q is acyclic")
}

pub fn build_qp(p: &Poset, prime: u64) -> Result<Poset> {
    require_prime(prime)?;
    let n = p.len();
    let pend = prime as usize - 2;
    let q = build_q(p);
    let rel = q
        .relations()
        .chain((0..n).flat_map(|i| (0..pend).map(move |j| (2 * n + i * pend + j, n + i))))
        .collect::<Vec<_>>();
    Poset::from_relations(prime as usize * n, rel)
}

#[derive(Debug, Clone)]
pub struct HeightTwoInstance {
    pub p: Poset,
    pub q: Poset,
    pub qp: Poset,
    pub prime: u64,
}

impl HeightTwoInstance {
    pub fn new(p: &Poset, prime: u64) -> Result<Self> {
        Ok(HeightTwoInstance {
            p: p.clone(),
            q: build_q(p),
            qp: build_qp(p, prime)?,
            prime,
        })
    }
}

/// Linear extensions of Q (from `build_q`) whose values on X′ are exactly `a`
/// (1-based values).
pub fn ext_a(q: &Poset, a: &[usize]) -> Result<BigUint> {
    let m = q.len();
    if m % 2 == 1 || a.len() != m / 2 {
        return Err(Error::pre(format!("A must have {} elements", m / 2)));
    }
    let mut in_a = vec![false; m + 1];
    for &v in a {
        if v == 0 || v > m {
            return Err(Error::pre(format!("value {v} outside 1..={m}")));
        }
        in_a[v] = true;
    }
    let n = m / 2;
    count_linear_extensions_filtered(q, |t, x| (x >= n) == in_a[t + 1])
}

/// ∏_k C(a_k − 1 + k(p−2), p−2) for A sorted ascending.
pub fn f_p(a: &[usize], p: u64) -> BigUint {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .enumerate()
        .map(|(i, &ak)| binomial(ak as u64 - 1 + (i as u64 + 1) * (p - 2), p - 2))
        .product()
}

/// All n-subsets of 1..=2n in lexicographic order.
pub fn half_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            if m - v + 1 < n - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, m, n, cur, out);
            cur.pop();
        }
    }
    rec(1, 2 * n, n, &mut cur, &mut out);
    out
}

fn even_set(n: usize) -> Vec<usize> {
    (1..=n).map(|k| 2 * k).collect()
}

/// Orderings of Q_p with the p−2 pendants under each x_i′ tracked by count,
/// i.e. ext(Q_p) / ((p−2)!)^n.
fn compressed_paths<W: Tally>(p: &Poset, prime: u64, one: W) -> Result<W> {
    let n = p.len();
    if 2 * n > 64 {
        return Err(Error::SizeLimit {
            what: "compressed Q_p count (elements of Q)",
            got: 2 * n,
            limit: 64,
        });
    }
    let pend = prime as u8 - 2;
    let q = build_q(p);
    let preds: Vec<u64> = (0..2 * n)
        .map(|b| (0..2 * n).filter(|&a| q.lt(a, b)).fold(0u64, |m, a| m | 1 << a))
        .collect();
    let levels = prime as usize * n;
    forward_dp((0u64, vec![0u8; n]), one, levels, DEFAULT_STATE_BUDGET, |(s, c), out| {
        for x in 0..2 * n {
            let free = s & (1 << x) == 0 && s & preds[x] == preds[x];
            if free && (x < n || c[x - n] == pend) {
                out.push(((s | 1 << x, c.clone()), 1));
            }
        }
        for i in 0..n {
            if c[i] < pend {
                let mut c2 = c.clone();
                c2[i] += 1;
                out.push(((*s, c2), 1));
            }
        }
    })
}

/// ext(Q_p) by the downset counter with pendant compression.
pub fn count_qp(p: &Poset, prime: u64) -> Result<BigUint> {
    require_prime(prime)?;
    let paths = compressed_paths(p, prime, BigUint::one())?;
    Ok(paths * factorial(prime - 2).pow(p.len() as u32))
}

/// ext(Q_p) mod p by the compressed counter.
pub fn count_qp_mod(p: &Poset, prime: u64) -> Result<u64> {
    require_prime(prime)?;
    let paths = compressed_paths(p, prime, ModTally::one(prime))?.value;
    let mult = mod_pow(biguint_mod(&factorial(prime - 2), prime), p.len() as u64, prime);
    Ok(paths * mult % prime)
}

/// ext(Q_p) by the plain downset counter on all pn elements.
pub fn count_qp_uncompressed(p: &Poset, prime: u64) -> Result<BigUint> {
    count_linear_extensions(&build_qp(p, prime)?, Method::DownsetDp)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub ext_qp: BigUint,
    pub formula: BigUint,
    /// Σ_A ext_A(Q), to compare with ext(Q).
    pub sum_ext_a: BigUint,
    pub ext_q: BigUint,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.ext_qp == self.formula && self.sum_ext_a == self.ext_q
    }
}

/// ext(Q_p) = ((p−2)!)^n Σ_A ext_A(Q) f_p(A), both sides computed independently.
pub fn exact_identity_check(p: &Poset, prime: u64) -> Result<IdentityReport> {
    require_prime(prime)?;
    let n = p.len();
    let q = build_q(p);
    let subsets = half_subsets(n);
    let terms: Vec<(BigUint, BigUint)> = subsets
        .par_iter()
        .map(|a| Ok((ext_a(&q, a)?, f_p(a, prime))))
        .collect::<Result<_>>()?;
    let mut sum = BigUint::zero();
    let mut sum_ext_a = BigUint::zero();
    for (e, f) in &terms {
        sum += e * f;
        sum_ext_a += e;
    }
    Ok(IdentityReport {
        ext_qp: count_qp(p, prime)?,
        formula: factorial(prime - 2).pow(n as u32) * sum,
        sum_ext_a,
        ext_q: count_linear_extensions(&q, Method::DownsetDp)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub prime: u64,
    /// ext(Q_p) mod p.
    pub lhs: u64,
    /// (−1)^n ext_{2,4,…,2n}(Q) mod p.
    pub rhs: u64,
    pub ext_even: BigUint,
    pub ext_p: BigUint,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.ext_even == self.ext_p
    }
}

fn signed_residue(x: &BigUint, negate: bool, p: u64) -> u64 {
    let r = biguint_mod(x, p);
    if negate {
        (p - r) % p
    } else {
        r
    }
}

/// ext(Q_p) ≡ (−1)^n ext_{2,4,…,2n}(Q) mod p, and ext_{2,4,…,2n}(Q) = ext(P).
pub fn congruence_check(p: &Poset, prime: u64) -> Result<CongruenceReport> {
    require_prime(prime)?;
    let n = p.len();
    let ext_even = ext_a(&build_q(p), &even_set(n))?;
    Ok(CongruenceReport {
        prime,
        lhs: count_qp_mod(p, prime)?,
        rhs: signed_residue(&ext_even, n % 2 == 1, prime),
        ext_even,
        ext_p: count_linear_extensions(p, Method::DownsetDp)?,
    })
}

/// Smallest primes above n whose product exceeds n!.
pub fn recovery_primes(n: usize) -> Vec<u64> {
    let bound = factorial(n as u64);
    let mut out = Vec::new();
    let mut prod = BigUint::one();
    let mut q = n as u64 + 1;
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
pub struct Recovery {
    pub ext: BigUint,
    /// (p, ext(Q_p) mod p, ext(P) mod p)
    pub residues: Vec<(u64, u64, u64)>,
    pub modulus: BigUint,
}

/// ext(P) from the residues of ext(Q_p) alone, combined by CRT.
pub fn recover_ext_height2(p: &Poset) -> Result<Recovery> {
    recover_with_primes(p, &recovery_primes(p.len()))
}

pub fn recover_with_primes(p: &Poset, primes: &[u64]) -> Result<Recovery> {
    let n = p.len();
    if let Some(&q) = primes.iter().find(|&&q| q as usize <= n) {
        return Err(Error::pre(format!("prime {q} must exceed n = {n}")));
    }
    let residues: Vec<(u64, u64, u64)> = primes
        .par_iter()
        .map(|&q| {
            let r = count_qp_mod(p, q)?;
            let e = if n % 2 == 1 { (q - r) % q } else { r };
            Ok((q, r, e))
        })
        .collect::<Result<_>>()?;
    let (ext, modulus) = crt_combine(&ResidueSystem::new(residues.iter().map(|&(q, _, e)| (e, q)).collect())?)?;
    if modulus <= factorial(n as u64) {
        return Err(Error::pre(format!(
            "prime product {modulus} does not exceed {n}! so ext(P) is not determined"
        )));
    }
    Ok(Recovery { ext, residues, modulus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_of_a_chain() {
        let q = build_q(&Poset::chain(2));
        assert_eq!(q.hasse_edges(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(q.height(), 2);
        assert_eq!(build_q(&Poset::chain(1)).num_relations(), 1);
    }

    #[test]
    fn qp_sizes() {
        for (n, p) in [(2, 3), (3, 5)] {
            let qp = build_qp(&Poset::antichain(n), p).unwrap();
            assert_eq!(qp.len(), n * p as usize);
            assert_eq!(qp.height(), 2);
        }
    }

    #[test]
    fn ext_a_examples() {
        let q = build_q(&Poset::chain(2));
        assert_eq!(ext_a(&q, &[2, 4]).unwrap(), BigUint::one());
        assert!(ext_a(&q, &[1, 4]).unwrap().is_zero());
    }

    #[test]
    fn f_p_examples() {
        assert_eq!(f_p(&[2], 3), BigUint::from(2u32));
        assert_eq!(f_p(&[2, 4], 5), BigUint::from(336u32));
        assert_eq!(biguint_mod(&f_p(&[3, 4], 5), 5), 0);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(half_subsets(3).len(), 20);
        assert_eq!(half_subsets(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn compression_matches_plain_counter() {
        for (poset, p) in [(Poset::chain(2), 3), (Poset::antichain(2), 3), (Poset::chain(2), 5)] {
            assert_eq!(count_qp(&poset, p).unwrap(), count_qp_uncompressed(&poset, p).unwrap());
        }
    }

    #[test]
    fn recovery_primes_cover_n_factorial() {
        assert_eq!(recovery_primes(3), vec![5, 7]);
        assert_eq!(recovery_primes(1), vec![2]);
        assert_eq!(recovery_primes(0), vec![2]);
    }
}
