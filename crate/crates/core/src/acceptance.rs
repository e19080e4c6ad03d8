//! The fourteen acceptance checks, shared by the test target and `lecount selftest`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{
    apply_gate, assignment_bits, count_satisfying, parallelize, reduce_3sat, sat_count, trace, CircuitState,
    CnfFormula, GateKind, Layer, RigidCircuit, Step,
};
use crate::combinatorics::{
    all_labeled_posets, bruhat_leq, count_blockseq_ideal, count_bruhat_ideal, count_linear_extensions,
    poset_from_permutation, random_poset, relabel, Method, Permutation, Poset,
};
use crate::compiler::{assemble, estimate_length, random_toy_framework, verify_sum_decomposition};
use crate::error::Result;
use crate::gates::{
    build_sigma1, enumerate_candidates, ext_polynomial, fixture, generate_equation_system, point_residues,
    search_solutions_mod_p, verify_init_lemma, verify_point, verify_testing_lemma, Point,
};
use crate::height2::{congruence_check, exact_identity_check, recover_ext_height2};
use crate::incidence::{
    build_jp, count_ext_incidence, count_ext_incidence_generic, count_jp_recurrence, congruence_check_incidence,
    jp_edge_weight, recover_ext_incidence, Deletion, Graph, JpState,
};
use crate::numtheory::{
    binomial, binomial_mod, check_primes_product, factorial, primes_between, rational_mod, sieve, wilson_residue,
};
use crate::polyalg::int;

pub const TITLES: [&str; 14] = [
    "counter equivalence",
    "Bruhat correspondence",
    "relabeling fixture",
    "parsimony of the 3SAT reduction",
    "parallelization",
    "parametrization oracle",
    "gate solutions",
    "candidate search",
    "boundary-section lemmas at p = 2",
    "sum decomposition",
    "compiler structural validation",
    "height-2 pipeline",
    "incidence pipeline",
    "number theory",
];

/// Quick trims the random sample sizes; the exhaustive parts are unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Full,
    Quick,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {verdict} {}: {}", self.id, self.title, self.detail)
    }
}

/// Collects named sub-checks into one verdict. Checks labelled "(info)" are
/// reported but do not affect it.
#[derive(Default)]
struct Checks {
    parts: Vec<(String, bool)>,
}

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.parts.push((name.into(), ok));
    }

    fn finish(self) -> (bool, String) {
        let passed = self.parts.iter().filter(|(n, _)| !n.starts_with("(info)")).all(|(_, ok)| *ok);
        let detail = self
            .parts
            .iter()
            .map(|(n, ok)| format!("{n} [{}]", if *ok { "ok" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("; ");
        (passed, detail)
    }
}

pub fn run(id: usize, scale: Scale) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => c01(scale),
        2 => c02(),
        3 => c03(),
        4 => c04(),
        5 => c05(scale),
        6 => c06(),
        7 => c07(),
        8 => c08(),
        9 => c09(),
        10 => c10(),
        11 => c11(),
        12 => c12(scale),
        13 => c13(),
        14 => c14(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(scale: Scale) -> Vec<CriterionResult> {
    (1..=TITLES.len()).map(|id| run(id, scale)).collect()
}

fn c01(scale: Scale) -> Result<(bool, String)> {
    let mut c = Checks::default();
    let mut exhaustive = 0;
    let mut bad = 0;
    for n in 0..=4 {
        for p in all_labeled_posets(n)? {
            exhaustive += 1;
            if count_linear_extensions(&p, Method::Brute)? != count_linear_extensions(&p, Method::DownsetDp)? {
                bad += 1;
            }
        }
    }
    c.check(format!("{exhaustive} labeled posets with n <= 4, {bad} mismatches"), bad == 0 && exhaustive == 243);
    let samples = if scale == Scale::Full { 500 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=7);
        let density = rng.gen_range(0.0..0.7);
        let p = random_poset(&mut rng, n, density);
        if count_linear_extensions(&p, Method::Brute)? != count_linear_extensions(&p, Method::DownsetDp)? {
            bad += 1;
        }
    }
    c.check(format!("{samples} random posets with n <= 7, {bad} mismatches"), bad == 0);
    Ok(c.finish())
}

/// τ reachable from σ by repeatedly swapping an adjacent descent.
fn weak_order_below(s: &Permutation) -> HashSet<Vec<u32>> {
    let mut seen = HashSet::from([s.entries().to_vec()]);
    let mut queue = VecDeque::from([s.entries().to_vec()]);
    while let Some(t) = queue.pop_front() {
        for i in 0..t.len().saturating_sub(1) {
            if t[i] > t[i + 1] {
                let mut u = t.clone();
                u.swap(i, i + 1);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen
}

fn c02() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let mut bad = 0;
    let s5 = Permutation::all(5);
    for s in &s5 {
        if count_bruhat_ideal(s)? != count_linear_extensions(&poset_from_permutation(s), Method::DownsetDp)? {
            bad += 1;
        }
    }
    c.check(format!("ideal size = ext(P_σ) on {} permutations of S5, {bad} mismatches", s5.len()), bad == 0 && s5.len() == 120);
    let s4 = Permutation::all(4);
    let mut bad = 0;
    for s in &s4 {
        let below = weak_order_below(s);
        for t in &s4 {
            if bruhat_leq(t, s)? != below.contains(t.entries()) {
                bad += 1;
            }
        }
    }
    c.check(format!("bruhat_leq vs BFS on {} pairs of S4, {bad} mismatches", s4.len() * s4.len()), bad == 0);
    Ok(c.finish())
}

fn c03() -> Result<(bool, String)> {
    let got = relabel(&[7, 7, 5, 3, 3, 5]);
    Ok((got.entries() == [5, 6, 3, 1, 2, 4], format!("(7,7,5,3,3,5) -> ({})", got.entries().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))))
}

/// Sorted literal triples over u variables, repetition allowed.
fn clause_family(u: i32) -> Vec<[i32; 3]> {
    let lits: Vec<i32> = (1..=u).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    for i in 0..lits.len() {
        for j in i..lits.len() {
            for k in j..lits.len() {
                out.push([lits[i], lits[j], lits[k]]);
            }
        }
    }
    out
}

/// Every state reached before a short-out keeps exactly `ones` TRUE wires.
fn conserves(c: &RigidCircuit, assignment: &[bool], ones: usize) -> bool {
    let mut s = CircuitState::paired(assignment);
    if s.popcount() != ones {
        return false;
    }
    for &l in c.layers() {
        match apply_gate(&s, l) {
            Step::Next(t) if t.popcount() == ones => s = t,
            Step::Next(_) => return false,
            Step::ShortOut => return true,
        }
    }
    true
}

fn c04() -> Result<(bool, String)> {
    let mut formulas = Vec::new();
    for u in 1..=3 {
        let family = clause_family(u);
        for (i, a) in family.iter().enumerate() {
            formulas.push(CnfFormula::new(u as usize, vec![*a])?);
            for b in &family[i..] {
                formulas.push(CnfFormula::new(u as usize, vec![*a, *b])?);
            }
        }
    }
    let results: Vec<(bool, bool)> = formulas
        .par_iter()
        .map(|f| {
            let c = reduce_3sat(f)?;
            let parsimonious = count_satisfying(&c)? == sat_count(f)?;
            let k = c.pairs();
            let conserved = (0..1u64 << k).all(|x| conserves(&c, &assignment_bits(x, k), k));
            Ok((parsimonious, conserved))
        })
        .collect::<Result<_>>()?;
    let mut c = Checks::default();
    let bad_count = results.iter().filter(|r| !r.0).count();
    let bad_cons = results.iter().filter(|r| !r.1).count();
    c.check(format!("{} formulas with u <= 3, v <= 2: {bad_count} count mismatches", formulas.len()), bad_count == 0);
    c.check(format!("conservation violated on {bad_cons} circuits"), bad_cons == 0);
    Ok(c.finish())
}

fn random_circuit(rng: &mut ChaCha8Rng, pairs: usize) -> Result<RigidCircuit> {
    let wires = 2 * pairs;
    let layers = (0..rng.gen_range(1..=6))
        .map(|_| {
            let kind = GateKind::ALL[rng.gen_range(0..4)];
            let top = if kind == GateKind::Identity { wires } else { wires - 1 };
            Layer::new(kind, rng.gen_range(1..=top))
        })
        .collect();
    RigidCircuit::new(wires, layers)
}

fn c05(scale: Scale) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let per_prime = if scale == Scale::Full { 20 } else { 8 };
    let mut c = Checks::default();
    for p in [2u64, 3] {
        let (mut bad, mut bad_pop, mut nonzero) = (0, 0, 0);
        for _ in 0..per_prime {
            let pairs = rng.gen_range(1..p as usize);
            let circ = random_circuit(&mut rng, pairs)?;
            let cp = parallelize(&circ, p)?;
            let want = count_satisfying(&circ)?;
            if count_satisfying(&cp)? != want {
                bad += 1;
            }
            if want > 0 {
                nonzero += 1;
            }
            let k = cp.pairs();
            let ones = (p * p - p) as usize;
            for x in 0..1u64 << k {
                let a = assignment_bits(x, k);
                if let Some(states) = trace(&cp, &a) {
                    let satisfying = states.last().unwrap().bits.last() == Some(&true);
                    if satisfying && states.iter().any(|s| s.popcount() != ones) {
                        bad_pop += 1;
                    }
                }
            }
        }
        c.check(format!("p = {p}: {per_prime} circuits ({nonzero} satisfiable), {bad} count mismatches"), bad == 0);
        c.check(format!("p = {p}: {bad_pop} satisfying traces off popcount {}", p * p - p), bad_pop == 0);
    }
    Ok(c.finish())
}

const KINDS: [GateKind; 3] = [GateKind::Swap, GateKind::AndOr, GateKind::TestEq];

fn c06() -> Result<(bool, String)> {
    let mut c = Checks::default();
    for kind in KINDS {
        let body = &fixture(kind).body;
        let (mut slots, mut points, mut bad) = (0, 0, 0);
        for x in 0..16u32 {
            let b: Vec<bool> = (0..4).map(|i| x >> (3 - i) & 1 == 1).collect();
            let (vin, vout) = b.split_at(2);
            if vin.iter().filter(|&&t| t).count() != vout.iter().filter(|&&t| t).count() {
                continue;
            }
            slots += 1;
            let semi = body.semi(vin, vout);
            let poly = ext_polynomial(&semi)?;
            for mask in 0..64u32 {
                let mut l = [0u64; 7];
                for i in 0..6 {
                    l[if i == 5 { 6 } else { i + 1 }] = 1 + u64::from(mask >> i & 1);
                }
                let direct = count_blockseq_ideal(&semi.instantiate(&l))?;
                let pt: [BigRational; 7] = std::array::from_fn(|i| int(l[i] as i64));
                let val = poly.eval_rational(&pt);
                points += 1;
                if !val.is_integer() || val.to_integer() != BigInt::from(direct) {
                    bad += 1;
                }
            }
        }
        c.check(format!("{kind}: {slots} slots x 64 points = {points}, {bad} mismatches"), bad == 0);
    }
    Ok(c.finish())
}

fn fmt_point(z: &Point) -> String {
    z.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn c07() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let plan: [(GateKind, &[u64]); 3] = [
        (GateKind::Swap, &[2, 3, 5, 7, 11, 13, 17, 19]),
        (GateKind::AndOr, &[3, 5, 7, 11, 13]),
        (GateKind::TestEq, &[11, 13, 17, 19]),
    ];
    for (kind, primes) in plan {
        let f = fixture(kind);
        let z = f.z.clone().expect("every gate has a printed point");
        let system = generate_equation_system(kind)?;
        let mut failing = Vec::new();
        for &p in primes {
            let r = verify_point(kind, &system, &z, p)?;
            let values_ok = r.inequation_values().iter().all(|(_, v, _)| f.nonzero_values.contains(v));
            if !r.passed() || !values_ok {
                let slots: Vec<&str> = r.slots.iter().filter(|s| !s.holds).map(|s| s.label.as_str()).collect();
                failing.push(format!("p={p} fails {}", if slots.is_empty() { "value set".into() } else { slots.join(",") }));
            }
        }
        let what = format!("{kind} ({}) at {} primes", fmt_point(&z), primes.len());
        c.check(if failing.is_empty() { what } else { format!("{what}: {}", failing.join(", ")) }, failing.is_empty());
        if let Some(corr) = &f.corrected {
            let ok = primes.iter().all(|&p| verify_point(kind, &system, corr, p).is_ok_and(|r| r.passed()));
            c.check(format!("(info) {kind} corrected point ({}) passes", fmt_point(corr)), ok);
        }
    }
    Ok(c.finish())
}

fn c08() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let cands = enumerate_candidates();
    let names: HashSet<String> = cands.iter().map(|g| g.to_string()).collect();
    let contains = KINDS.iter().all(|&k| names.contains(&fixture(k).body.to_string()));
    c.check(format!("{} candidate bodies, containing the three printed gates: {contains}", cands.len()), cands.len() == 96 && names.len() == 96 && contains);
    let p = 11;
    for kind in KINDS {
        let f = fixture(kind);
        let sols = search_solutions_mod_p(&f.body, kind, p)?;
        let want = point_residues(f.z.as_ref().expect("printed point"), p)?;
        c.check(format!("{kind}: printed residues {want:?} among {} solutions mod {p}", sols.len()), sols.contains(&want));
    }
    Ok(c.finish())
}

fn c09() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let pattern = build_sigma1(2).rank_pattern();
    c.check(format!("σ₁ pattern \"{pattern}\""), pattern == "[7] [4] [1] 6 5 3 2");
    let init = verify_init_lemma(2)?;
    c.check(format!("init lemma on {} vectors", init.rows.len()), init.passed() && init.rows.len() == 16);
    let t = verify_testing_lemma(2)?;
    c.check(format!("testing lemma on {} popcount-2 vectors", t.rows.len()), t.passed() && t.rows.len() == 6);
    Ok(c.finish())
}

fn c10() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..10 {
        let f = random_toy_framework(&mut rng, 2, 2, 3)?;
        if !verify_sum_decomposition(&f)?.holds() {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("10 toy frameworks (N=2, m=2), {bad} mismatches")))
}

fn c11() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let circuit = RigidCircuit::new(16, vec![Layer::new(GateKind::Identity, 1)])?;
    let f = assemble(&circuit, 11)?;
    let summary = f.validate()?;
    c.check("sections, wiring and separators validate", summary.separators == f.separators());
    c.check(format!("N = {} variables per gap", f.n_wires), f.n_wires == 220);
    c.check("gate sections balanced mod p³", f.gate_sections_balanced());
    let est = estimate_length(&circuit, 11)?;
    c.check(format!("length {} = estimate {est}", summary.n), summary.n == est);
    Ok(c.finish())
}

fn c12(scale: Scale) -> Result<(bool, String)> {
    let mut c = Checks::default();
    let three = all_labeled_posets(3)?;
    for prime in [5, 7] {
        let bad = three
            .par_iter()
            .filter(|p| {
                let id = exact_identity_check(p, prime).map(|r| r.holds()).unwrap_or(false);
                let cong = congruence_check(p, prime).map(|r| r.holds()).unwrap_or(false);
                !(id && cong)
            })
            .count();
        c.check(format!("identity and congruence on {} posets at p = {prime}, {bad} failures", three.len()), bad == 0 && three.len() == 19);
    }
    let samples = if scale == Scale::Full { 20 } else { 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let random: Vec<Poset> = (0..samples).map(|_| random_poset(&mut rng, 4, 0.4)).collect();
    let bad = random
        .par_iter()
        .filter(|p| {
            !(exact_identity_check(p, 5).is_ok_and(|r| r.holds()) && congruence_check(p, 5).is_ok_and(|r| r.holds()))
        })
        .count();
    c.check(format!("{samples} random posets at n = 4, p = 5, {bad} failures"), bad == 0);
    let mut total = 0;
    let mut bad = 0;
    for n in 0..=3 {
        for p in all_labeled_posets(n)? {
            total += 1;
            if recover_ext_height2(&p)?.ext != count_linear_extensions(&p, Method::Brute)? {
                bad += 1;
            }
        }
    }
    c.check(format!("recovery on {total} posets with n <= 3, {bad} mismatches"), bad == 0);
    Ok(c.finish())
}

fn all_small_graphs() -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 0..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() <= 6 {
                out.push(Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))?);
            }
        }
    }
    Ok(out)
}

fn c13() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let p3 = count_ext_incidence(&Graph::path(3))?;
    c.check(format!("ext(I_P3) = {p3}"), p3 == BigUint::from(16u32));

    let graphs = all_small_graphs()?;
    let bad = graphs
        .par_iter()
        .filter(|g| !matches!((count_ext_incidence(g), count_ext_incidence_generic(g)), (Ok(a), Ok(b)) if a == b))
        .count();
    c.check(format!("subset DP = generic on {} graphs (<= 5 vertices, <= 6 edges), {bad} mismatches", graphs.len()), bad == 0);

    let primes = primes_between(2, 48);
    let recs = primes.par_iter().map(|&p| count_jp_recurrence(p)).collect::<Result<Vec<_>>>()?;
    let residues: Vec<String> = recs.iter().map(|r| format!("{}:{}", r.p, r.residue())).collect();
    let minus8 = recs.iter().filter(|r| r.residue() == (8 * r.p - 8) % r.p).count();
    c.check(format!("ext(J_p) ≡ −8 at {minus8}/{} primes 3..47 (residues {})", recs.len(), residues.join(" ")), minus8 == recs.len());
    let minus2 = recs.iter().filter(|r| r.p >= 5).all(|r| r.residue() == r.p - 2);
    c.check("(info) ext(J_p) ≡ −2 at every prime 5..47", minus2);
    let cross = [3u64, 5, 7, 11]
        .par_iter()
        .map(|&p| Ok(count_jp_recurrence(p)?.total == count_ext_incidence(&build_jp(p)?)?))
        .collect::<Result<Vec<bool>>>()?;
    c.check("recurrence = subset DP exactly at p ∈ {3,5,7,11}", cross.iter().all(|&b| b));

    let s = JpState::new(4, 3, 1);
    let wy = jp_edge_weight(5, s, Deletion::Y) % 5u32;
    let wz = jp_edge_weight(5, s, Deletion::Z) % 5u32;
    c.check(format!("p = 5 weights at (4,3,1): a-decrease {wy}, b-decrease {wz} mod 5"), wy == BigUint::from(1u32) && wz.is_zero());
    let vanish = [5u64, 7].iter().all(|&p| count_jp_recurrence(p).is_ok_and(|r| r.vanishing_violations().is_empty()));
    c.check("path-vanishing invariant at p ∈ {5,7}", vanish);

    let three = all_labeled_posets(3)?;
    let checks = [5u64, 7]
        .iter()
        .flat_map(|&q| three.iter().map(move |p| (q, p)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(q, p)| congruence_check_incidence(p, q))
        .collect::<Result<Vec<_>>>()?;
    let printed = checks.iter().filter(|r| r.printed_holds()).count();
    let product = checks.iter().filter(|r| r.holds()).count();
    c.check(format!("ext(G_p(P)) ≡ (−1)^(|P|+1)·8·ext(P) on {printed}/{} (poset, p) pairs", checks.len()), printed == checks.len());
    c.check(format!("(info) ext(G_p(P)) ≡ (−1)^|P|·ext(J_p)·ext(P) on {product}/{}", checks.len()), product == checks.len());
    let bad = three
        .par_iter()
        .filter(|p| {
            let want = count_linear_extensions(p, Method::Brute).ok();
            recover_ext_incidence(p).ok().map(|r| r.ext) != want
        })
        .count();
    c.check(format!("incidence recovery on {} posets, {bad} mismatches", three.len()), bad == 0);

    Ok(c.finish())
}

fn c14() -> Result<(bool, String)> {
    let mut c = Checks::default();
    let primes = primes_between(4, 16);
    c.check(format!("primes_between(4,16) = {primes:?}"), primes == [5, 7, 11, 13]);
    let mut all = true;
    for k in 4..=40 {
        all &= check_primes_product(k)?;
    }
    c.check("prime products exceed 2^k·k! for 4 <= k <= 40", all);
    let mut bad = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 0..=200u64 {
            for k in 0..=n {
                if BigUint::from(binomial_mod(n, k, p)) != binomial(n, k) % p {
                    bad += 1;
                }
            }
        }
    }
    c.check(format!("Lucas = exact for n <= 200 over six primes, {bad} mismatches"), bad == 0);
    let wilson = sieve(200).iter().all(|&p| {
        wilson_residue(p) == p - 1 && (factorial(p - 1) % p).to_u64() == Some(p - 1)
    });
    c.check("Wilson residues for primes < 200", wilson);
    let rat = rational_mod(&BigInt::from(-8), &BigInt::from(3), 11)? == 1;
    c.check("−8/3 ≡ 1 mod 11", rat);
    let mut bad = 0;
    let mut cases = 0;
    for p in [3u64, 5, 7, 11, 13] {
        let cube = p * p * p;
        let span = (2 * p * p + 2 * p) as i64;
        for a in 1..=2u64 {
            for b in -span..=span {
                let n = (a * cube + cube - 1) as i64 + b;
                let want = u64::from(b == 0);
                cases += 1;
                if binomial_mod(n as u64, cube - 1, p) != want {
                    bad += 1;
                }
            }
        }
    }
    c.check(format!("block binomials C(ap³+p³−1+b, p³−1) on {cases} cases, {bad} wrong"), bad == 0);
    Ok(c.finish())
}
