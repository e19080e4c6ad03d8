use std::fs;
use std::path::Path;

use lecount::acceptance::{self, Scale, TITLES};
use lecount::circuit::{count_satisfying, reduce_3sat, CnfFormula, GateKind, RigidCircuit};
use lecount::combinatorics::blockseq::count_blockseq_ideal_budget;
use lecount::combinatorics::downset::biguint_mod;
use lecount::combinatorics::poset::count_linear_extensions_budget;
use lecount::combinatorics::{
    count_blockseq_ideal, count_blockseq_ideal_mod, count_bruhat_ideal, count_bruhat_ideal_mod,
    count_linear_extensions, count_linear_extensions_mod, Method,
};
use lecount::compiler::{compile_end_to_end, estimate_length};
use lecount::formats::{graph_to_text, parse_blockseq, parse_graph, parse_permutation, parse_poset, poset_to_text};
use lecount::gates::{
    enumerate_candidates, equation_system_for, equations_only, fixture, generate_equation_system, point_residues,
    search_system_mod_p, verify_point, verify_solution, ConstraintKind, Point,
};
use lecount::height2::{build_qp, recover_ext_height2};
use lecount::incidence::{
    build_gp, build_jp, count_ext_incidence, count_ext_incidence_generic, count_ext_incidence_mod,
    count_jp_recurrence, recover_ext_incidence,
};
use lecount::numtheory::{crt_combine, primes_between, require_prime, ResidueSystem};
use lecount::{Error, Result};

use crate::report::RunReport;
use crate::{
    CompileArgs, Command, CountCmd, GadgetCmd, GatesCmd, GraphMethod, NtCmd, PosetMethod, RecoverCmd, ReduceCmd,
    SelftestArgs,
};

const SEARCH_KINDS: [GateKind; 3] = [GateKind::Swap, GateKind::AndOr, GateKind::TestEq];

pub fn run(cmd: &Command, echo: String) -> Result<RunReport> {
    let mut r = RunReport::new(echo);
    match cmd {
        Command::Count(c) => count(c, &mut r)?,
        Command::Reduce(c) => reduce(c, &mut r)?,
        Command::Recover(c) => recover(c, &mut r)?,
        Command::Gates(c) => gates(c, &mut r)?,
        Command::Compile(a) => compile(a, &mut r)?,
        Command::Nt(c) => nt(c, &mut r)?,
        Command::Gadget(c) => gadget(c, &mut r)?,
        Command::Selftest(a) => selftest(a, &mut r),
    }
    Ok(r)
}

fn read(path: &Path, r: &mut RunReport) -> Result<String> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })?;
    r.input(text.as_bytes());
    Ok(text)
}

fn count(c: &CountCmd, r: &mut RunReport) -> Result<()> {
    match c {
        CountCmd::Poset {
            file,
            method,
            modulus,
            budget,
        } => {
            let p = parse_poset(&read(file, r)?)?;
            let exact = match (method, budget) {
                (PosetMethod::Brute, _) => Some(count_linear_extensions(&p, Method::Brute)?),
                (PosetMethod::Downset, Some(b)) => Some(count_linear_extensions_budget(&p, *b)?),
                (PosetMethod::Downset, None) if modulus.is_none() => {
                    Some(count_linear_extensions(&p, Method::DownsetDp)?)
                }
                _ => None,
            };
            match (modulus, exact) {
                (Some(m), Some(e)) => r.result("ext mod p", biguint_mod(&e, *m)),
                (Some(m), None) => r.result("ext mod p", count_linear_extensions_mod(&p, *m)?),
                (None, Some(e)) => r.result("ext", e),
                (None, None) => unreachable!("an exact count is taken without --mod"),
            }
        }
        CountCmd::Bruhat {
            input,
            modulus,
            budget,
        } => {
            let text = if Path::new(input).is_file() {
                read(Path::new(input), r)?
            } else {
                r.input(input.as_bytes());
                input.clone()
            };
            let value = if text.contains('[') || budget.is_some() {
                let s = if text.contains('[') {
                    parse_blockseq(&text)?
                } else {
                    lecount::combinatorics::BlockSequence::from_permutation(&parse_permutation(&text)?)
                };
                match (modulus, budget) {
                    (Some(m), _) => count_blockseq_ideal_mod(&s, *m)?.to_string(),
                    (None, Some(b)) => count_blockseq_ideal_budget(&s, *b)?.to_string(),
                    (None, None) => count_blockseq_ideal(&s)?.to_string(),
                }
            } else {
                let s = parse_permutation(&text)?;
                match modulus {
                    Some(m) => count_bruhat_ideal_mod(&s, *m)?.to_string(),
                    None => count_bruhat_ideal(&s)?.to_string(),
                }
            };
            r.result(if modulus.is_some() { "ideal size mod p" } else { "ideal size" }, value);
        }
        CountCmd::Circuit { file } => {
            let text = read(file, r)?;
            let c = if is_dimacs(&text) {
                reduce_3sat(&CnfFormula::parse_dimacs(&text)?)?
            } else {
                RigidCircuit::parse(&text)?
            };
            r.result("ext", count_satisfying(&c)?);
        }
        CountCmd::Incidence {
            file,
            graph,
            method,
            modulus,
        } => {
            let path = file
                .as_ref()
                .or(graph.as_ref())
                .ok_or_else(|| Error::pre("a graph file is required"))?;
            let g = parse_graph(&read(path, r)?)?;
            match (modulus, method) {
                (Some(m), GraphMethod::Subset) => r.result("ext mod p", count_ext_incidence_mod(&g, *m)?),
                (Some(m), GraphMethod::Generic) => {
                    r.result("ext mod p", biguint_mod(&count_ext_incidence_generic(&g)?, *m))
                }
                (None, GraphMethod::Subset) => r.result("ext", count_ext_incidence(&g)?),
                (None, GraphMethod::Generic) => r.result("ext", count_ext_incidence_generic(&g)?),
            }
        }
    }
    Ok(())
}

fn is_dimacs(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c'))
        .is_some_and(|l| l.starts_with("p "))
}

fn reduce(c: &ReduceCmd, r: &mut RunReport) -> Result<()> {
    match c {
        ReduceCmd::Height2(a) => {
            r.input(a.prime.to_string().as_bytes());
            let p = parse_poset(&read(&a.poset, r)?)?;
            r.output = Some(poset_to_text(&build_qp(&p, a.prime)?));
        }
        ReduceCmd::Incidence(a) => {
            r.input(a.prime.to_string().as_bytes());
            let p = parse_poset(&read(&a.poset, r)?)?;
            r.output = Some(graph_to_text(&build_gp(&p, a.prime)?.graph));
        }
        ReduceCmd::Sat { cnf } => {
            let f = CnfFormula::parse_dimacs(&read(cnf, r)?)?;
            r.output = Some(reduce_3sat(&f)?.to_text());
        }
    }
    Ok(())
}

fn recover(c: &RecoverCmd, r: &mut RunReport) -> Result<()> {
    let (RecoverCmd::Height2 { poset } | RecoverCmd::Incidence { poset }) = c;
    let p = parse_poset(&read(poset, r)?)?;
    let ext = match c {
        RecoverCmd::Height2 { .. } => {
            let rec = recover_ext_height2(&p)?;
            for &(q, qr, e) in &rec.residues {
                r.result(format!("p = {q}"), format!("ext(Q_p) = {qr}, ext(P) = {e} (mod {q})"));
            }
            r.result("modulus", &rec.modulus);
            rec.ext
        }
        RecoverCmd::Incidence { .. } => {
            let rec = recover_ext_incidence(&p)?;
            for &(q, g, jp, e) in &rec.residues {
                r.result(
                    format!("p = {q}"),
                    format!("ext(G_p) = {g}, ext(J_p) = {jp}, ext(P) = {e} (mod {q})"),
                );
            }
            r.result("modulus", &rec.modulus);
            rec.ext
        }
    };
    r.result("ext", &ext);
    r.check("recovered value equals the direct count", ext == count_linear_extensions(&p, Method::DownsetDp)?);
    Ok(())
}

fn point_text(z: &Point) -> String {
    let parts: Vec<String> = z.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn gates(c: &GatesCmd, r: &mut RunReport) -> Result<()> {
    match c {
        GatesCmd::Verify { kind, prime, printed } => {
            let kind = GateKind::from(*kind);
            r.input(format!("{kind} {prime} {printed}").as_bytes());
            let f = fixture(kind);
            let report = match (&f.z, *printed) {
                (Some(z), true) => {
                    require_prime(*prime)?;
                    verify_point(kind, &generate_equation_system(kind)?, z, *prime)?
                }
                _ => verify_solution(kind, *prime)?,
            };
            r.result("gate", kind);
            r.result("prime", prime);
            r.result("point", point_text(&report.point));
            for s in &report.slots {
                let (rel, name) = match s.kind {
                    ConstraintKind::Zero => ("=", s.label.as_str()),
                    ConstraintKind::NonZero => ("!=", s.label.as_str()),
                };
                r.check(format!("{name}: value {} ≡ {} {rel} 0 (mod {prime})", s.value, s.residue), s.holds);
            }
        }
        GatesCmd::Search {
            prime,
            kind,
            equalities_only,
            limit,
        } => {
            r.input(format!("{prime} {kind:?} {equalities_only}").as_bytes());
            require_prime(*prime)?;
            let kinds: Vec<GateKind> = match kind {
                Some(k) => vec![(*k).into()],
                None => SEARCH_KINDS.to_vec(),
            };
            for kind in kinds {
                let f = fixture(kind);
                let mut system = equation_system_for(&f.body, kind)?;
                if *equalities_only {
                    system = equations_only(&system);
                }
                let sols = search_system_mod_p(&system, *prime)?;
                r.result(format!("{kind} solutions"), sols.len());
                for s in sols.iter().take(*limit) {
                    r.result(format!("{kind} solution"), format!("{s:?}"));
                }
                if let Some(z) = &f.z {
                    if let Ok(want) = point_residues(z, *prime) {
                        let found = if sols.contains(&want) { "yes" } else { "no" };
                        r.result(format!("{kind} printed point {want:?} found"), found);
                    }
                }
            }
        }
        GatesCmd::Candidates => {
            let cands = enumerate_candidates();
            r.result("candidates", cands.len());
            for kind in SEARCH_KINDS {
                let body = &fixture(kind).body;
                let at = cands.iter().position(|g| g == body);
                r.result(format!("{kind} body {body}"), at.map_or("absent".into(), |i| format!("candidate {}", i + 1)));
            }
        }
    }
    Ok(())
}

fn compile(a: &CompileArgs, r: &mut RunReport) -> Result<()> {
    r.input(a.prime.to_string().as_bytes());
    let f = CnfFormula::parse_dimacs(&read(&a.cnf, r)?)?;
    if a.dry_run {
        let c = reduce_3sat(&f)?;
        r.result("n", estimate_length(&c, a.prime)?);
        return Ok(());
    }
    let (m, v) = compile_end_to_end(&f, a.prime, &a.out, a.budget)?;
    r.result("n", m.n);
    r.result("separators", m.m);
    r.result("k", m.k);
    r.result("p", m.p);
    r.result("manifest", a.out.join("manifest.txt").display());
    r.result("sigma", a.out.join("sigma.txt").display());
    r.check("σ is a permutation of 1..n", v.is_permutation);
    r.check("separators increase", v.separators_increasing);
    r.check(
        format!("{} decreasing variables after each separator", m.n_wires),
        v.gaps.iter().all(|&(c, d)| c == m.n_wires && d),
    );
    Ok(())
}

fn nt(c: &NtCmd, r: &mut RunReport) -> Result<()> {
    match c {
        NtCmd::Primes { k, hi } => {
            let hi = hi.unwrap_or(k.saturating_mul(*k));
            r.input(format!("{k} {hi}").as_bytes());
            let ps: Vec<String> = primes_between(*k, hi).iter().map(u64::to_string).collect();
            r.result("primes", ps.join(" "));
        }
        NtCmd::Crt { pairs } => {
            let mut rs = Vec::new();
            for (i, t) in pairs.iter().enumerate() {
                r.input(t.as_bytes());
                let bad = || Error::parse(i + 1, format!("expected r:m, got {t:?}"));
                let (a, m) = t.split_once(':').ok_or_else(bad)?;
                rs.push((a.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?));
            }
            let (v, m) = crt_combine(&ResidueSystem::new(rs)?)?;
            r.result("value", v);
            r.result("modulus", m);
        }
    }
    Ok(())
}

fn gadget(c: &GadgetCmd, r: &mut RunReport) -> Result<()> {
    let GadgetCmd::Jp { prime, direct } = c;
    r.input(prime.to_string().as_bytes());
    require_prime(*prime)?;
    let g = build_jp(*prime)?;
    let rec = count_jp_recurrence(*prime)?;
    r.result("vertices", g.num_vertices());
    r.result("edges", g.num_edges());
    r.result("ext", &rec.total);
    r.result("ext mod p", rec.residue());
    if *direct {
        r.check("recurrence equals the subset DP", count_ext_incidence(&g)? == rec.total);
    }
    Ok(())
}

fn selftest(a: &SelftestArgs, r: &mut RunReport) {
    let scale = if a.quick { Scale::Quick } else { Scale::Full };
    let ids: Vec<usize> = if a.only.is_empty() {
        (1..=TITLES.len()).collect()
    } else {
        a.only.clone()
    };
    r.input(format!("{scale:?} {ids:?}").as_bytes());
    let mut lines = String::new();
    for id in ids {
        let c = acceptance::run(id, scale);
        lines.push_str(&format!("{c}\n"));
        r.check(format!("criterion {id}: {}", c.title), c.passed);
    }
    r.output = Some(lines);
}
