use lecount::combinatorics::*;
use lecount::height2::*;
use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn ext(p: &Poset) -> BigUint {
    count_linear_extensions(p, Method::DownsetDp).unwrap()
}

#[test]
fn q_shapes() {
    let q1 = build_q(&Poset::chain(1));
    assert_eq!(q1.relations().collect::<Vec<_>>(), vec![(0, 1)]);
    let q = build_q(&Poset::chain(2));
    let mut rel: Vec<_> = q.relations().collect();
    rel.sort();
    assert_eq!(rel, vec![(0, 2), (0, 3), (1, 3)]);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let p = random_poset(&mut rng, 5, 0.4);
        let q = build_q(&p);
        assert!(q.height() <= 2);
        assert_eq!(q.hasse_edges().len(), 5 + p.num_relations());
    }
}

#[test]
fn qp_shapes() {
    let p4 = Poset::from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let inst = HeightTwoInstance::new(&p4, 3).unwrap();
    assert_eq!(inst.qp.len(), 12);
    // one pendant under each x_i′
    for i in 0..4 {
        assert!(inst.qp.lt(8 + i, 4 + i));
    }
    for (n, p) in [(2, 3), (3, 5)] {
        let qp = build_qp(&Poset::antichain(n), p).unwrap();
        assert_eq!(qp.len(), p as usize * n);
        assert_eq!(qp.height(), 2);
    }
    assert!(build_qp(&Poset::chain(2), 4).is_err());
}

#[test]
fn selective_counts() {
    let q = build_q(&Poset::chain(2));
    assert_eq!(ext_a(&q, &[2, 4]).unwrap(), big(1));
    assert!(ext_a(&q, &[1, 4]).unwrap().is_zero());
    assert!(ext_a(&q, &[2]).is_err());
    for n in 0..=4 {
        for p in all_labeled_posets(n).unwrap() {
            let q = build_q(&p);
            let even: Vec<usize> = (1..=n).map(|i| 2 * i).collect();
            assert_eq!(ext_a(&q, &even).unwrap(), ext(&p));
            let total: BigUint = half_subsets(n).iter().map(|a| ext_a(&q, a).unwrap()).sum();
            assert_eq!(total, ext(&q));
        }
    }
}

#[test]
fn coloring_products() {
    assert_eq!(f_p(&[2], 3), big(2));
    assert_eq!(f_p(&[2, 4], 5), big(336));
    assert_eq!(f_p(&[2, 4], 5) % 5u32, big(1));
    // a_k = 2k + 1 gives the factor C(kp, p − 2)
    for p in [5u64, 7] {
        assert!((f_p(&[3], p) % p).is_zero());
        assert!((f_p(&[2, 5], p) % p).is_zero());
    }
}

#[test]
fn compressed_count_matches_plain() {
    for p in all_labeled_posets(2).unwrap() {
        assert_eq!(count_qp(&p, 3).unwrap(), count_qp_uncompressed(&p, 3).unwrap());
    }
    let c3 = Poset::chain(3);
    assert_eq!(count_qp(&c3, 5).unwrap(), count_qp_uncompressed(&c3, 5).unwrap());
    assert_eq!(count_qp_mod(&c3, 5).unwrap(), (count_qp(&c3, 5).unwrap() % 5u32).try_into().unwrap());
}

#[test]
fn identity_examples() {
    for p in [Poset::chain(2), Poset::antichain(2)] {
        let r = exact_identity_check(&p, 3).unwrap();
        assert!(r.holds(), "{r:?}");
    }
    for p in all_labeled_posets(3).unwrap() {
        assert!(exact_identity_check(&p, 5).unwrap().holds());
        assert!(congruence_check(&p, 5).unwrap().holds());
    }
}

#[test]
fn recovery() {
    assert_eq!(recovery_primes(3), vec![5, 7]);
    assert_eq!(recover_ext_height2(&Poset::chain(3)).unwrap().ext, big(1));
    assert_eq!(recover_ext_height2(&Poset::antichain(3)).unwrap().ext, big(6));
    assert!(recover_with_primes(&Poset::antichain(3), &[5]).is_err());
    assert!(recover_with_primes(&Poset::antichain(3), &[3, 5, 7]).is_err());
}

#[test]
fn recovery_on_random_four_element_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let p = random_poset(&mut rng, 4, 0.35);
        let r = recover_ext_height2(&p).unwrap();
        assert_eq!(r.ext, count_linear_extensions(&p, Method::Brute).unwrap(), "{p:?}");
    }
}
