//! Shipped gate data: bodies, solution points and the printed equation
//! systems.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::numtheory::rational_mod;
use crate::polyalg::MultiPoly;

use super::concrete::BruhatGate;
use super::param::ParamGate;
use super::system::ConstraintKind;

const GATES: &str = include_str!("../../data/gates.txt");
const SYSTEMS: &str = include_str!("../../data/published_systems.txt");

pub type Point = [BigRational; 5];

#[derive(Debug, Clone)]
pub struct GateSolutionFixture {
    pub kind: GateKind,
    pub body: ParamGate,
    /// The printed solution.
    pub z: Option<Point>,
    /// Replacement point when the printed one does not satisfy every slot.
    pub corrected: Option<Point>,
    pub min_prime: u64,
    pub nonzero_values: Vec<BigRational>,
}

impl GateSolutionFixture {
    /// The point used for verification and concrete lengths.
    pub fn working_point(&self) -> Option<&Point> {
        self.corrected.as_ref().or(self.z.as_ref())
    }
}

#[derive(Debug, Clone)]
pub struct PrintedConstraint {
    pub kind: ConstraintKind,
    /// "balance" or "ab,cd".
    pub slot: String,
    pub poly: MultiPoly,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::parse(0, format!("bad rational {s}"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn parse_point(rest: &str, line: usize) -> Result<Point> {
    let vals: Vec<BigRational> = rest.split_whitespace().map(parse_rational).collect::<Result<_>>()?;
    vals.try_into().map_err(|_| Error::parse(line, "a point needs five coordinates"))
}

pub fn parse_fixtures(text: &str) -> Result<Vec<GateSolutionFixture>> {
    let mut out: Vec<GateSolutionFixture> = Vec::new();
    let mut wires = 2;
    for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        if key == "gate" {
            let kind: GateKind = rest.parse().map_err(|_| Error::parse(ln, format!("unknown gate {rest}")))?;
            out.push(GateSolutionFixture {
                kind,
                body: ParamGate { syms: Vec::new(), wires: 0 },
                z: None,
                corrected: None,
                min_prime: 2,
                nonzero_values: Vec::new(),
            });
            continue;
        }
        let cur = out.last_mut().ok_or_else(|| Error::parse(ln, "field before any gate"))?;
        match key {
            "wires" => wires = rest.parse().map_err(|_| Error::parse(ln, "bad wire count"))?,
            "body" => cur.body = ParamGate::parse(rest, wires).map_err(|e| Error::parse(ln, e.to_string()))?,
            "point" => cur.z = Some(parse_point(rest, ln)?),
            "corrected" => cur.corrected = Some(parse_point(rest, ln)?),
            "min_prime" => cur.min_prime = rest.parse().map_err(|_| Error::parse(ln, "bad prime"))?,
            "nonzero" => {
                cur.nonzero_values = rest.split_whitespace().map(parse_rational).collect::<Result<_>>()?;
            }
            _ => return Err(Error::parse(ln, format!("unknown field {key}"))),
        }
    }
    Ok(out)
}

pub fn fixtures() -> &'static [GateSolutionFixture] {
    static CELL: OnceLock<Vec<GateSolutionFixture>> = OnceLock::new();
    CELL.get_or_init(|| parse_fixtures(GATES).expect("shipped gate fixtures parse"))
}

pub fn fixture(kind: GateKind) -> &'static GateSolutionFixture {
    fixtures().iter().find(|f| f.kind == kind).expect("every gate kind has a fixture")
}

/// The printed systems for Swap, AndOr and TestEq, in printed order.
pub fn printed_system(kind: GateKind) -> Option<Vec<PrintedConstraint>> {
    static CELL: OnceLock<Vec<(GateKind, Vec<PrintedConstraint>)>> = OnceLock::new();
    let all = CELL.get_or_init(|| parse_printed(SYSTEMS).expect("shipped printed systems parse"));
    all.iter().find(|(k, _)| *k == kind).map(|(_, v)| v.clone())
}

fn parse_printed(text: &str) -> Result<Vec<(GateKind, Vec<PrintedConstraint>)>> {
    let mut out: Vec<(GateKind, Vec<PrintedConstraint>)> = Vec::new();
    for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("system ") {
            out.push((name.parse()?, Vec::new()));
            continue;
        }
        let (head, poly) = line.split_once(" : ").ok_or_else(|| Error::parse(ln, "expected \"kind slot : poly\""))?;
        let (kind, slot) = head.split_once(' ').ok_or_else(|| Error::parse(ln, "missing slot"))?;
        let kind = match kind {
            "eq" => ConstraintKind::Zero,
            "neq" => ConstraintKind::NonZero,
            _ => return Err(Error::parse(ln, format!("unknown constraint kind {kind}"))),
        };
        let poly = MultiPoly::parse(poly).map_err(|e| Error::parse(ln, e.to_string()))?;
        let sys = out.last_mut().ok_or_else(|| Error::parse(ln, "constraint before any system"))?;
        sys.1.push(PrintedConstraint {
            kind,
            slot: slot.to_string(),
            poly,
        });
    }
    Ok(out)
}

/// Block lengths for a concrete gate at p: z_i is the point's residue taken
/// in [1, p], z5 absorbs a multiple of p so that |φ| − k ≡ 0 mod p³, and the
/// penultimate block has p³ − 1 elements.
pub fn concrete_lengths(kind: GateKind, p: u64) -> Result<[u64; 7]> {
    let f = fixture(kind);
    if p < f.min_prime {
        return Err(Error::pre(format!("p = {p} is below the admissible bound {} for {kind}", f.min_prime)));
    }
    let cube = p.checked_pow(3).ok_or_else(|| Error::pre("p³ overflows"))?;
    let mut lengths = [0u64; 7];
    lengths[6] = cube - 1;
    if let Some(pt) = f.working_point() {
        for (i, z) in pt.iter().enumerate() {
            let r = rational_mod(z.numer(), z.denom(), p)?;
            lengths[i + 1] = if r == 0 { p } else { r };
        }
        let singles = f.body.num_singles() as u64;
        let excess = (singles - f.body.wires as u64 - 1 + lengths[1..6].iter().sum::<u64>()) % cube;
        let need = (cube - excess) % cube;
        if !need.is_multiple_of(p) {
            return Err(Error::pre(format!("the fixture point for {kind} is not balanced mod {p}")));
        }
        lengths[5] += need;
    }
    Ok(lengths)
}

/// The unrestricted concrete gate for `kind` at prime p.
pub fn concrete_gate(kind: GateKind, p: u64) -> Result<BruhatGate> {
    let lengths = concrete_lengths(kind, p)?;
    Ok(BruhatGate::from_param(&fixture(kind).body, &lengths))
}
