use lecount::numtheory::*;
use num_bigint::{BigInt, BigUint};

#[test]
fn prime_windows() {
    assert_eq!(primes_between(4, 16), vec![5, 7, 11, 13]);
    assert_eq!(primes_between(2, 4), vec![3]);
    assert_eq!(primes_between(3, 9), vec![5, 7]);
    let prod: u64 = primes_between(4, 16).iter().product();
    assert_eq!(prod, 5005);
    for k in [4, 5, 10, 40] {
        assert!(check_primes_product(k).unwrap());
    }
    assert!(check_primes_product(3).is_err());
    assert!(check_primes_product(41).is_err());
}

#[test]
fn binomial_examples() {
    assert_eq!(binomial(4, 2), BigUint::from(6u32));
    assert_eq!(binomial(3, 5), BigUint::from(0u32));
    assert_eq!(binomial_mod(14, 7, 2), 0);
    assert_eq!(binomial(14, 7), BigUint::from(3432u32));
    assert_eq!(binomial_mod(4, 3, 5), 4);
}

#[test]
fn wilson_and_rationals() {
    assert_eq!(wilson_residue(5), 4);
    assert_eq!(wilson_residue(2), 1);
    assert_eq!(wilson_residue(13), 12);
    let r = |a: i64, b: i64, p| rational_mod(&BigInt::from(a), &BigInt::from(b), p);
    assert_eq!(r(-8, 3, 11).unwrap(), 1);
    assert_eq!(r(1, 1, 7).unwrap(), 1);
    let x = r(7, 3, 11).unwrap();
    assert_eq!(3 * x % 11, 7);
    assert!(r(1, 11, 11).is_err());
}

#[test]
fn crt_examples() {
    let (v, m) = crt_combine(&ResidueSystem::new(vec![(1, 3), (2, 5)]).unwrap()).unwrap();
    assert_eq!((v, m), (BigUint::from(7u32), BigUint::from(15u32)));
    let (v, m) = crt_combine(&ResidueSystem::new(vec![(0, 2)]).unwrap()).unwrap();
    assert_eq!((v, m), (BigUint::from(0u32), BigUint::from(2u32)));
    let pairs = vec![(4, 5), (6, 7), (10, 11)];
    let (v, _) = crt_combine(&ResidueSystem::new(pairs.clone()).unwrap()).unwrap();
    let brute = (0u32..385).find(|x| pairs.iter().all(|&(r, q)| u64::from(*x) % q == r)).unwrap();
    assert_eq!(v, BigUint::from(brute));
    assert!(ResidueSystem::new(vec![(1, 5), (2, 5)]).is_err());
    assert!(ResidueSystem::new(vec![(7, 5)]).is_err());
}

#[test]
fn product_of_binomials_is_a_sign() {
    for p in [3u64, 5, 7, 11] {
        for n in 1..=5u64 {
            let prod = (1..=n).fold(1u64, |acc, k| acc * binomial_mod(k * p - 1, p - 2, p) % p);
            let want = if n % 2 == 0 { 1 } else { p - 1 };
            assert_eq!(prod, want, "p={p} n={n}");
        }
    }
}
