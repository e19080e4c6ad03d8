use lecount::combinatorics::blockseq::{BlockSequence, Item};
use lecount::combinatorics::*;
use lecount::numtheory::binomial;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(v: &[u32]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn diamond() -> Poset {
    Poset::from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn relabel_examples() {
    assert_eq!(relabel(&[7, 7, 5, 3, 3, 5]), perm(&[5, 6, 3, 1, 2, 4]));
    assert_eq!(relabel(&[1, 2, 3]), perm(&[1, 2, 3]));
    assert_eq!(relabel(&[9, 4]), perm(&[2, 1]));
    let p = perm(&[3, 1, 4, 2]);
    let as_seq: Vec<i64> = p.entries().iter().map(|&v| v as i64).collect();
    assert_eq!(relabel(&as_seq), p);
}

#[test]
fn linear_extension_examples() {
    for m in [Method::Brute, Method::DownsetDp] {
        assert_eq!(count_linear_extensions(&Poset::chain(3), m).unwrap(), big(1));
        assert_eq!(count_linear_extensions(&Poset::antichain(3), m).unwrap(), big(6));
        assert_eq!(count_linear_extensions(&diamond(), m).unwrap(), big(2));
    }
    assert_eq!(count_linear_extensions_mod(&Poset::antichain(3), 5).unwrap(), 1);
    assert_eq!(count_linear_extensions_mod(&Poset::chain(4), 7).unwrap(), 1);
    assert_eq!(count_linear_extensions_mod(&diamond(), 2).unwrap(), 0);
    assert!(count_linear_extensions(&Poset::antichain(11), Method::Brute).is_err());
}

#[test]
fn reversal_preserves_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = random_poset(&mut rng, 7, 0.3);
        assert_eq!(
            count_linear_extensions(&p, Method::DownsetDp).unwrap(),
            count_linear_extensions(&p.reversed(), Method::DownsetDp).unwrap()
        );
    }
}

#[test]
fn inversion_examples() {
    assert!(inversions(&Permutation::identity(4)).is_empty());
    assert_eq!(inversions(&perm(&[2, 1, 3])).into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
    assert_eq!(inversions(&perm(&[3, 2, 1])).len(), 3);
}

#[test]
fn weak_order_is_a_partial_order_on_s4() {
    let all = Permutation::all(4);
    let leq = |a: &Permutation, b: &Permutation| bruhat_leq(a, b).unwrap();
    for a in &all {
        assert!(leq(a, a));
        assert!(leq(&Permutation::identity(4), a));
        for b in &all {
            if a != b && leq(a, b) {
                assert!(!leq(b, a));
            }
            for c in &all {
                if leq(a, b) && leq(b, c) {
                    assert!(leq(a, c));
                }
            }
        }
    }
}

#[test]
fn permutation_posets() {
    let chain = poset_from_permutation(&Permutation::identity(4));
    assert_eq!(chain, Poset::chain(4));
    assert_eq!(poset_from_permutation(&Permutation::reverse(4)), Poset::antichain(4));
    let p = poset_from_permutation(&perm(&[2, 1, 3]));
    let mut rel: Vec<_> = p.relations().collect();
    rel.sort();
    assert_eq!(rel, vec![(0, 2), (1, 2)]);
}

#[test]
fn points_round_trip() {
    assert_eq!(permutation_from_points(&[(1, 1), (2, 2)]).unwrap(), perm(&[1, 2]));
    assert_eq!(permutation_from_points(&[(1, 2), (2, 1)]).unwrap(), perm(&[2, 1]));
    assert!(permutation_from_points(&[(1, 1), (1, 1)]).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    use rand::Rng;
    for _ in 0..30 {
        let mut pts = Vec::new();
        while pts.len() < 6 {
            let pt = (rng.gen_range(0..5), rng.gen_range(0..5));
            if !pts.contains(&pt) {
                pts.push(pt);
            }
        }
        let rel = (0..6).flat_map(|i| (0..6).map(move |j| (i, j)));
        let product: Vec<_> = rel
            .filter(|&(i, j)| i != j && pts[i].0 <= pts[j].0 && pts[i].1 <= pts[j].1)
            .collect();
        let p = Poset::from_relations(6, product).unwrap();
        let s = permutation_from_points(&pts).unwrap();
        assert_eq!(count_bruhat_ideal(&s).unwrap(), count_linear_extensions(&p, Method::Brute).unwrap());
    }
}

#[test]
fn bruhat_ideal_examples() {
    assert_eq!(count_bruhat_ideal(&Permutation::identity(5)).unwrap(), big(1));
    assert_eq!(count_bruhat_ideal(&perm(&[3, 2, 1])).unwrap(), big(6));
    assert_eq!(count_bruhat_ideal(&perm(&[2, 1, 3])).unwrap(), big(2));
    assert_eq!(enumerate_bruhat_ideal(&Permutation::identity(3), 10).unwrap(), vec![Permutation::identity(3)]);
    let mut two = enumerate_bruhat_ideal(&perm(&[2, 1]), 10).unwrap();
    two.sort_by(|a, b| a.entries().cmp(b.entries()));
    assert_eq!(two, vec![perm(&[1, 2]), perm(&[2, 1])]);
    let s = perm(&[3, 1, 2]);
    assert_eq!(big(enumerate_bruhat_ideal(&s, 10).unwrap().len() as u64), count_bruhat_ideal(&s).unwrap());
    assert!(enumerate_bruhat_ideal(&Permutation::reverse(5), 100).is_err());
}

#[test]
fn block_sequences() {
    let single = BlockSequence::new(vec![Item::Block { first: 1, len: 5000 }]);
    assert_eq!(count_blockseq_ideal(&single).unwrap(), big(1));
    for b in 1..=4u64 {
        for c in 1..=4u64 {
            let s = BlockSequence::new(vec![Item::Block { first: 100, len: c }, Item::Block { first: 1, len: b }]);
            assert_eq!(count_blockseq_ideal(&s).unwrap(), binomial(b + c, b));
            assert_eq!(count_bruhat_ideal(&s.to_permutation()).unwrap(), binomial(b + c, b));
        }
    }
    // long blocks stay cheap when there are few of them
    let s = BlockSequence::new(vec![Item::Block { first: 3000, len: 2000 }, Item::Single(0), Item::Block { first: 1, len: 2000 }]);
    assert!(count_blockseq_ideal(&s).unwrap() > big(0));
}

#[test]
fn prepended_block_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    use rand::seq::SliceRandom;
    for len in 1..=7usize {
        let mut v: Vec<i64> = (1..=len as i64).collect();
        v.shuffle(&mut rng);
        let rest = BlockSequence::from_values(&v);
        let base = count_blockseq_ideal(&rest).unwrap();
        for b in 1..=4u64 {
            let mut items = vec![Item::Block { first: 100, len: b }];
            items.extend(rest.items.iter().copied());
            let got = count_blockseq_ideal(&BlockSequence::new(items)).unwrap();
            assert_eq!(got, binomial(len as u64 + b, b) * &base);
        }
    }
}

proptest! {
    #[test]
    fn blockwise_count_matches_expansion(lens in prop::collection::vec(1u64..4, 1..5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut firsts: Vec<i64> = Vec::new();
        let mut next = 1;
        for &l in &lens {
            firsts.push(next);
            next += l as i64;
        }
        let mut items: Vec<Item> = firsts.iter().zip(&lens).map(|(&f, &l)| Item::Block { first: f, len: l }).collect();
        items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let s = BlockSequence::new(items);
        prop_assert_eq!(count_blockseq_ideal(&s).unwrap(), count_bruhat_ideal(&s.to_permutation()).unwrap());
    }

    #[test]
    fn counters_agree(n in 1usize..8, density in 0.0f64..0.8, seed in any::<u64>()) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, density);
        prop_assert_eq!(
            count_linear_extensions(&p, Method::Brute).unwrap(),
            count_linear_extensions(&p, Method::DownsetDp).unwrap()
        );
    }
}
