//! The candidate bodies and a brute-force scan of F_p^5.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::numtheory::{int_mod, is_prime, rational_mod};
use crate::polyalg::{Exponents, MultiPoly};

use super::param::{ParamGate, Role, Sym};
use super::system::{equation_system_for, Constraint, ConstraintKind};

pub const SEARCH_PRIME_LIMIT: u64 = 13;

/// Every 13-symbol body with the first input first, the other input among the
/// next four singles, the last output at rank 9 and ranks 10..13 spread over
/// the remaining three singles and the first output.
pub fn enumerate_candidates() -> Vec<ParamGate> {
    let mut out = Vec::with_capacity(96);
    let high = [10i64, 11, 12, 13];
    for one_at in 0..4 {
        for perm in permutations(&high) {
            // singles b2..b5 and the first output
            let mut free = perm[..3].iter();
            let mut singles = [0i64; 4];
            for (i, s) in singles.iter_mut().enumerate() {
                *s = if i == one_at { 1 } else { *free.next().unwrap() };
            }
            let mut ranks = vec![(2, None)];
            for (i, &s) in singles.iter().enumerate() {
                ranks.push((3 + i as i64, Some(i as u8 + 1)));
                ranks.push((s, None));
            }
            ranks.push((7, Some(5)));
            ranks.push((8, Some(6)));
            ranks.push((perm[3], None));
            ranks.push((9, None));
            let mut syms: Vec<Sym> = ranks
                .into_iter()
                .map(|(r, var)| Sym {
                    rank: Ratio::from_integer(r),
                    var,
                    role: Role::Plain,
                })
                .collect();
            let n = syms.len();
            syms[0].role = Role::Input(0);
            let pos1 = 2 + 2 * one_at;
            syms[pos1].role = Role::Input(1);
            syms[n - 2].role = Role::Output(0);
            syms[n - 1].role = Role::Output(1);
            out.push(ParamGate { syms, wires: 2 });
        }
    }
    out
}

fn permutations(xs: &[i64]) -> Vec<Vec<i64>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// A constraint with coefficients reduced mod p.
struct ModConstraint {
    kind: ConstraintKind,
    terms: Vec<(Exponents, u64)>,
}

fn compile(c: &Constraint, p: u64) -> ModConstraint {
    let direct: Result<Vec<(Exponents, u64)>> = c
        .poly
        .terms()
        .map(|(e, q)| Ok((*e, rational_mod(q.numer(), q.denom(), p)?)))
        .collect();
    // denominators divisible by p: fall back to the primitive integer form
    let terms = direct.unwrap_or_else(|_| {
        c.poly
            .primitive_integer()
            .into_iter()
            .map(|(e, q)| (e, int_mod(&q, p)))
            .collect()
    });
    ModConstraint { kind: c.kind, terms }
}

/// The five-variable points of F_p^5 (z6 := −1) satisfying every constraint.
pub fn search_system_mod_p(system: &[Constraint], p: u64) -> Result<Vec<[u64; 5]>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > SEARCH_PRIME_LIMIT {
        return Err(Error::SizeLimit {
            what: "search prime",
            got: p as usize,
            limit: SEARCH_PRIME_LIMIT as usize,
        });
    }
    let compiled: Vec<ModConstraint> = system.iter().map(|c| compile(c, p)).collect();
    let compiled = &compiled;
    let total = p.pow(4);
    let mut found: Vec<[u64; 5]> = (0..total)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let mut z = [0u64; 5];
            let mut r = idx;
            for slot in z.iter_mut().take(4) {
                *slot = r % p;
                r /= p;
            }
            (0..p).filter_map(move |z5| {
                let mut pt = z;
                pt[4] = z5;
                satisfies(compiled, &pt, p).then_some(pt)
            })
            .collect::<Vec<_>>()
        })
        .collect();
    found.sort();
    Ok(found)
}

fn satisfies(cs: &[ModConstraint], z: &[u64; 5], p: u64) -> bool {
    let mut xs = [0u64; 7];
    xs[0] = p - 1;
    xs[1..6].copy_from_slice(z);
    xs[6] = p - 1;
    cs.iter().all(|c| {
        let mut total = 0u64;
        for (e, coeff) in &c.terms {
            let mut t = *coeff;
            for (&x, &k) in xs.iter().zip(e) {
                for _ in 0..k {
                    t = t * x % p;
                }
            }
            total = (total + t) % p;
        }
        match c.kind {
            ConstraintKind::Zero => total == 0,
            ConstraintKind::NonZero => total != 0,
        }
    })
}

pub fn search_solutions_mod_p(candidate: &ParamGate, kind: GateKind, p: u64) -> Result<Vec<[u64; 5]>> {
    let system = equation_system_for(candidate, kind)?;
    search_system_mod_p(&system, p)
}

/// Keep only the equalities of a system.
pub fn equations_only(system: &[Constraint]) -> Vec<Constraint> {
    system.iter().filter(|c| c.kind == ConstraintKind::Zero).cloned().collect()
}

/// Residues of a rational point, for membership checks.
pub fn point_residues(z: &super::fixtures::Point, p: u64) -> Result<[u64; 5]> {
    let mut out = [0u64; 5];
    for (o, x) in out.iter_mut().zip(z) {
        *o = rational_mod(x.numer(), x.denom(), p)?;
    }
    Ok(out)
}

/// Evaluate a polynomial at a residue point with z0 = z6 = −1.
pub fn eval_at_residues(poly: &MultiPoly, z: &[u64; 5], p: u64) -> Result<u64> {
    let mut xs = [p - 1; 7];
    xs[1..6].copy_from_slice(z);
    poly.eval_mod_residues(&xs, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::fixtures::fixture;

    #[test]
    fn ninety_six_candidates() {
        let c = enumerate_candidates();
        assert_eq!(c.len(), 96);
        assert!(c.iter().all(|g| g.check_invariants()));
        for kind in [GateKind::Swap, GateKind::AndOr, GateKind::TestEq] {
            let body = fixture(kind).body.to_string();
            assert!(c.iter().any(|g| g.to_string() == body), "{kind}");
        }
        let mut names: Vec<String> = c.iter().map(|g| g.to_string()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 96);
    }
}
