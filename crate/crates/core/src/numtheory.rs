//! Primes, binomials mod p, rational residues and CRT.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sieve of Eratosthenes up to and including `n`.
pub fn sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Primes strictly between `k` and `hi`.
pub fn primes_between(k: u64, hi: u64) -> Vec<u64> {
    if hi == 0 {
        return Vec::new();
    }
    sieve(hi - 1).into_iter().filter(|&p| p > k).collect()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Whether the primes strictly between k and k² multiply to at least 2^k k!.
pub fn check_primes_product(k: u64) -> Result<bool> {
    if !(4..=40).contains(&k) {
        return Err(Error::pre(format!("k = {k} outside 4..=40")));
    }
    let prod: BigUint = primes_between(k, k * k)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * p);
    let bound = (BigUint::one() << k as usize) * factorial(k);
    Ok(prod >= bound)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    // n, k < p here, so the denominator is invertible
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

/// C(n, k) mod p by Lucas' theorem, digit by digit in base p.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc % p
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// (p-1)! mod p, computed directly.
pub fn wilson_residue(p: u64) -> u64 {
    (1..p).fold(1u64, |acc, i| ((acc as u128 * i as u128) % p as u128) as u64) % p
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigInt, m: u64) -> Option<u64> {
    let m_big = BigInt::from(m);
    let a = a.mod_floor(&m_big);
    let g = a.extended_gcd(&m_big);
    if !g.gcd.is_one() {
        return None;
    }
    g.x.mod_floor(&m_big).to_u64()
}

/// a / b reduced modulo the prime p.
pub fn rational_mod(a: &BigInt, b: &BigInt, p: u64) -> Result<u64> {
    let inv = mod_inverse(b, p).ok_or_else(|| Error::NotInvertible {
        value: b.to_string(),
        modulus: p,
    })?;
    let a = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    Ok(((a as u128 * inv as u128) % p as u128) as u64)
}

pub fn int_mod(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Residue of a (possibly negative) i64.
pub fn signed_mod(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSystem {
    pub pairs: Vec<(u64, u64)>,
}

impl ResidueSystem {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self> {
        for (i, &(r, m)) in pairs.iter().enumerate() {
            if m == 0 || r >= m {
                return Err(Error::pre(format!("residue {r} not reduced modulo {m}")));
            }
            if pairs[..i].iter().any(|&(_, m2)| m2.gcd(&m) != 1) {
                return Err(Error::InconsistentModuli);
            }
        }
        Ok(ResidueSystem { pairs })
    }
}

/// Combine residues into the unique value modulo the product of the moduli.
pub fn crt_combine(rs: &ResidueSystem) -> Result<(BigUint, BigUint)> {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, m) in &rs.pairs {
        let mb = BigInt::from(m);
        if !modulus.gcd(&mb).is_one() {
            return Err(Error::InconsistentModuli);
        }
        // value + modulus * t ≡ r (mod m)
        let inv = mod_inverse(&modulus, m).ok_or(Error::InconsistentModuli)?;
        let diff = (BigInt::from(r) - &value).mod_floor(&mb);
        let t = (diff * BigInt::from(inv)).mod_floor(&mb);
        value += &modulus * t;
        modulus *= mb;
        value = value.mod_floor(&modulus);
    }
    debug_assert!(!value.is_negative());
    Ok((value.to_biguint().unwrap(), modulus.to_biguint().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_examples() {
        assert_eq!(primes_between(4, 16), vec![5, 7, 11, 13]);
        assert_eq!(primes_between(2, 4), vec![3]);
        assert_eq!(primes_between(3, 9), vec![5, 7]);
    }

    #[test]
    fn primes_product_small_k() {
        let prod: u64 = primes_between(4, 16).iter().product();
        assert_eq!(prod, 5005);
        for k in 4..=40 {
            assert!(check_primes_product(k).unwrap(), "k = {k}");
        }
        assert!(check_primes_product(3).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(14, 7), BigUint::from(3432u32));
        assert_eq!(binomial_mod(14, 7, 2), 0);
        assert_eq!(binomial_mod(4, 3, 5), 4);
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn lucas_matches_exact() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 0..=60u64 {
                for k in 0..=n {
                    let exact = binomial(n, k) % p;
                    assert_eq!(exact.to_u64().unwrap(), binomial_mod(n, k, p));
                }
            }
        }
    }

    #[test]
    fn wilson() {
        assert_eq!(wilson_residue(5), 4);
        assert_eq!(wilson_residue(2), 1);
        assert_eq!(wilson_residue(13), 12);
    }

    #[test]
    fn rational_residues() {
        let r = rational_mod(&BigInt::from(-8), &BigInt::from(3), 11).unwrap();
        assert_eq!(r, 1);
        assert_eq!((3 * r) % 11, signed_mod(-8, 11));
        assert_eq!(rational_mod(&BigInt::from(1), &BigInt::from(1), 7).unwrap(), 1);
        let x = rational_mod(&BigInt::from(7), &BigInt::from(3), 11).unwrap();
        assert_eq!(3 * x % 11, 7);
        assert!(rational_mod(&BigInt::from(1), &BigInt::from(22), 11).is_err());
    }

    #[test]
    fn crt_examples() {
        let rs = ResidueSystem::new(vec![(1, 3), (2, 5)]).unwrap();
        assert_eq!(crt_combine(&rs).unwrap(), (BigUint::from(7u32), BigUint::from(15u32)));
        let rs = ResidueSystem::new(vec![(0, 2)]).unwrap();
        assert_eq!(crt_combine(&rs).unwrap().0, BigUint::zero());

        let rs = ResidueSystem::new(vec![(4, 5), (6, 7), (10, 11)]).unwrap();
        let (v, m) = crt_combine(&rs).unwrap();
        assert_eq!(m, BigUint::from(385u32));
        let scan: Vec<u64> = (0..385).filter(|x| x % 5 == 4 && x % 7 == 6 && x % 11 == 10).collect();
        assert_eq!(scan, vec![v.to_u64().unwrap()]);

        assert!(ResidueSystem::new(vec![(1, 3), (2, 3)]).is_err());
    }
}
