use lecount::circuit::GateKind;
use lecount::combinatorics::count_blockseq_ideal;
use lecount::gates::*;
use lecount::polyalg::int;
use num_bigint::BigInt;
use num_rational::BigRational;

const KINDS: [GateKind; 3] = [GateKind::Swap, GateKind::AndOr, GateKind::TestEq];

fn slot_key(label: &str) -> &str {
    label.split(' ').nth(1).unwrap()
}

#[test]
fn regenerated_systems_match_the_printed_ones() {
    for kind in KINDS {
        let sys = generate_equation_system(kind).unwrap();
        let printed = printed_system(kind).unwrap();
        assert_eq!(sys.len(), 12);
        for c in &sys {
            let key = slot_key(&c.label);
            let pc = printed.iter().find(|p| p.slot == key).unwrap();
            assert_eq!(pc.kind, c.kind, "{kind} {key}");
            let same = c.poly.proportional_to(&pc.poly).is_some();
            // the (10,11) insertion slot is printed differently; both vanish at the points
            assert_eq!(same, key != "10,11", "{kind} {key}");
        }
    }
}

#[test]
fn printed_points_on_printed_systems() {
    for kind in KINDS {
        let f = fixture(kind);
        let z = f.z.as_ref().unwrap();
        let full: [BigRational; 7] = std::array::from_fn(|i| if (1..=5).contains(&i) { z[i - 1].clone() } else { int(-1) });
        for c in printed_system(kind).unwrap() {
            let v = c.poly.eval_rational(&full);
            match c.kind {
                ConstraintKind::Zero => assert_eq!(v, int(0), "{kind} {}", c.slot),
                ConstraintKind::NonZero if kind == GateKind::AndOr && c.slot == "11,11" => {
                    // the printed AndOr point makes this slot vanish
                    assert_eq!(v, int(0));
                }
                ConstraintKind::NonZero => assert_ne!(v, int(0), "{kind} {}", c.slot),
            }
        }
    }
}

#[test]
fn verification_at_the_listed_primes() {
    for p in [2, 3, 5, 7, 11, 13, 17, 19] {
        assert!(verify_solution(GateKind::Swap, p).unwrap().passed(), "swap {p}");
    }
    for p in [3, 5, 7, 11, 13] {
        let r = verify_solution(GateKind::AndOr, p).unwrap();
        assert!(r.passed(), "andor {p}");
        let vals: Vec<_> = r.inequation_values().iter().map(|(_, v, _)| (*v).clone()).collect();
        assert!(vals.iter().all(|v| *v == int(2) || *v == int(4)));
    }
    for p in [11, 13, 17, 19] {
        let r = verify_solution(GateKind::TestEq, p).unwrap();
        assert!(r.passed(), "testeq {p}");
        let mut vals: Vec<_> = r.inequation_values().iter().map(|(_, v, _)| (*v).clone()).collect();
        vals.sort();
        assert_eq!(vals, vec![parse_rational("-8/3").unwrap(), parse_rational("7/3").unwrap()]);
    }
    assert!(verify_solution(GateKind::TestEq, 7).is_err());
    assert!(verify_solution(GateKind::AndOr, 2).is_err());
}

#[test]
fn printed_andor_point_fails_one_slot() {
    let sys = generate_equation_system(GateKind::AndOr).unwrap();
    let z = fixture(GateKind::AndOr).z.clone().unwrap();
    let r = verify_point(GateKind::AndOr, &sys, &z, 11).unwrap();
    assert!(r.all_equalities_hold());
    assert!(!r.passed());
    let failing: Vec<_> = r.slots.iter().filter(|s| !s.holds).map(|s| s.label.as_str()).collect();
    assert_eq!(failing, vec!["tt 11,11"]);
}

#[test]
fn polynomials_agree_with_direct_counts() {
    for kind in KINDS {
        let body = &fixture(kind).body;
        for x in 0..16u32 {
            let b: Vec<bool> = (0..4).map(|i| x >> (3 - i) & 1 == 1).collect();
            let (vin, vout) = b.split_at(2);
            if vin.iter().filter(|&&t| t).count() != vout.iter().filter(|&&t| t).count() {
                continue;
            }
            let semi = body.semi(vin, vout);
            let poly = ext_polynomial(&semi).unwrap();
            for mask in 0..64u32 {
                let mut l = [0u64; 7];
                for i in 0..6 {
                    l[if i == 5 { 6 } else { i + 1 }] = 1 + u64::from(mask >> i & 1);
                }
                let direct = count_blockseq_ideal(&semi.instantiate(&l)).unwrap();
                let pt: [BigRational; 7] = std::array::from_fn(|i| int(l[i] as i64));
                assert_eq!(poly.eval_rational(&pt).to_integer(), BigInt::from(direct), "{kind} {b:?} {l:?}");
            }
        }
    }
}

#[test]
fn swap_body_at_mixed_lengths() {
    let body = &fixture(GateKind::Swap).body;
    let semi = body.semi(&[true, true], &[true, true]);
    let l = [0, 2, 1, 2, 1, 2, 2];
    let poly = ext_polynomial(&semi).unwrap();
    let pt: [BigRational; 7] = std::array::from_fn(|i| int(l[i] as i64));
    let direct = count_blockseq_ideal(&semi.instantiate(&l)).unwrap();
    assert_eq!(poly.eval_rational(&pt).to_integer(), BigInt::from(direct));
}

#[test]
fn search_at_eleven_finds_the_fixture_points() {
    let p = 11;
    let swap = search_solutions_mod_p(&fixture(GateKind::Swap).body, GateKind::Swap, p).unwrap();
    assert!(swap.contains(&[10, 9, 0, 1, 9]));
    let testeq = search_solutions_mod_p(&fixture(GateKind::TestEq).body, GateKind::TestEq, p).unwrap();
    let want = point_residues(fixture(GateKind::TestEq).z.as_ref().unwrap(), p).unwrap();
    assert!(testeq.contains(&want));
    let andor = search_solutions_mod_p(&fixture(GateKind::AndOr).body, GateKind::AndOr, p).unwrap();
    let printed = point_residues(fixture(GateKind::AndOr).z.as_ref().unwrap(), p).unwrap();
    let corrected = point_residues(fixture(GateKind::AndOr).corrected.as_ref().unwrap(), p).unwrap();
    assert!(!andor.contains(&printed));
    assert!(andor.contains(&corrected));
    let eq_only = search_system_mod_p(&equations_only(&generate_equation_system(GateKind::AndOr).unwrap()), p).unwrap();
    assert!(eq_only.contains(&printed));
}

#[test]
fn concrete_gates_at_small_primes() {
    for kind in [GateKind::Identity, GateKind::Swap] {
        let c = verify_concrete_gate(kind, 2).unwrap();
        assert!(c.passed(), "{c:?}");
    }
    for kind in [GateKind::Identity, GateKind::Swap, GateKind::AndOr] {
        let c = verify_concrete_gate(kind, 3).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn mismatched_counts_vanish() {
    let c = verify_concrete_gate(GateKind::Swap, 2).unwrap();
    for (vin, vout, r, _) in &c.slots {
        if vin.iter().filter(|&&b| b).count() != vout.iter().filter(|&&b| b).count() {
            assert_eq!(*r, 0);
        }
    }
}

#[test]
fn coupled_gates_multiply() {
    let p = 2;
    let cube = p * p * p;
    let id = concrete_gate(GateKind::Identity, p).unwrap();
    let sw = concrete_gate(GateKind::Swap, p).unwrap();
    let g = sw.couple(&id, cube - 1).unwrap();
    assert_eq!(g.wires, 3);
    assert!(g.is_balanced(p));
    assert_eq!(g.len(), sw.len() - (cube - 1) + id.len() + cube - 1);
    let r = g.restrict(cube - 1);
    for x in 0..64u32 {
        let b: Vec<bool> = (0..6).map(|i| x >> i & 1 == 1).collect();
        let (vin, vout) = b.split_at(3);
        let got = lecount::combinatorics::count_blockseq_ideal_mod(&r.evaluate(vin, vout).unwrap(), p).unwrap();
        let want = GateKind::Swap.relates(&vin[..2], &vout[..2]) && vin[2] == vout[2];
        assert_eq!(got, u64::from(want), "{b:?}");
    }
}
