use crate::error::{Error, Result};

/// A 3-CNF formula; literals are signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for c in &clauses {
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::pre(format!("literal {lit} out of range for {num_vars} variables")));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Parse DIMACS CNF. Every clause must have exactly three literals.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<i32> = Vec::new();
        let mut pending_line = 0;
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::parse(ln, "expected \"p cnf <vars> <clauses>\""));
                }
                let u = parts[2].parse().map_err(|_| Error::parse(ln, "bad variable count"))?;
                let v = parts[3].parse().map_err(|_| Error::parse(ln, "bad clause count"))?;
                header = Some((u, v));
                continue;
            }
            let (u, _) = header.ok_or_else(|| Error::parse(ln, "clause before the problem line"))?;
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| Error::parse(ln, format!("bad literal {tok}")))?;
                if pending.is_empty() {
                    pending_line = ln;
                }
                if lit == 0 {
                    if pending.len() != 3 {
                        return Err(Error::parse(pending_line, format!("clause has {} literals, expected 3", pending.len())));
                    }
                    clauses.push([pending[0], pending[1], pending[2]]);
                    pending.clear();
                } else {
                    if lit.unsigned_abs() as usize > u {
                        return Err(Error::parse(ln, format!("literal {lit} exceeds {u} variables")));
                    }
                    pending.push(lit);
                }
            }
        }
        if !pending.is_empty() {
            return Err(Error::parse(pending_line, "unterminated clause"));
        }
        let (u, v) = header.ok_or_else(|| Error::parse(1, "missing problem line"))?;
        if clauses.len() != v {
            return Err(Error::parse(0, format!("header announces {v} clauses, found {}", clauses.len())));
        }
        CnfFormula::new(u, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let v = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Truth-table model count.
pub fn sat_count(f: &CnfFormula) -> Result<u64> {
    if f.num_vars > super::ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            what: "truth-table model count",
            got: f.num_vars,
            limit: super::ENUMERATION_LIMIT,
        });
    }
    let n = f.num_vars;
    Ok((0..1u64 << n)
        .filter(|&x| f.satisfied_by(&super::assignment_bits(x, n)))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c demo\np cnf 3 2\n1 2 3 0\n-1 -2\n-3 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.clauses, vec![[1, 2, 3], [-1, -2, -3]]);
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert_eq!(sat_count(&f).unwrap(), 6);
    }

    #[test]
    fn dimacs_errors_carry_lines() {
        let e = CnfFormula::parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(CnfFormula::parse_dimacs("1 2 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 2 3 0\n").is_err());
    }

    #[test]
    fn tautology_count() {
        let f = CnfFormula::new(1, vec![[1, -1, 1]]).unwrap();
        assert_eq!(sat_count(&f).unwrap(), 2);
    }
}
