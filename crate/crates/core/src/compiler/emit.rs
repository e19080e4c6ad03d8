//! Streaming serialization of σ, the manifest, and re-validation from disk.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::toy::Element;
use super::{assemble, BruhatFramework};
use crate::circuit::{reduce_3sat, CnfFormula};
use crate::combinatorics::blockseq::Item;
use crate::error::{Error, Result};

pub const FLATTEN_LIMIT: u128 = 1 << 24;

/// Visit σ position by position with each element's value and role.
pub fn walk<F: FnMut(u128, Element) -> Result<()>>(f: &BruhatFramework, mut visit: F) -> Result<()> {
    let mut prev_out: Vec<u128> = Vec::new();
    let mut base = 0u128;
    let last = f.num_sections() - 1;
    for i in 0..=last {
        let s = f.section(i);
        let nin = s.inputs.len() as i64;
        let global = |v: i64| base + (v - nin) as u128;
        let mut wire_of = vec![None; s.body.items.len()];
        for (w, &idx) in s.inputs.iter().enumerate() {
            wire_of[idx] = Some(w);
        }
        let out_start = s.body.items.len() - s.outputs.len();
        for (idx, it) in s.body.items[..out_start].iter().enumerate() {
            match (wire_of[idx], it) {
                (Some(w), _) => visit(prev_out[w], Element::Variable { gap: i - 1, wire: w })?,
                (None, Item::Single(v)) => visit(global(*v), Element::Stable)?,
                (None, Item::Block { first, len }) => {
                    for k in 0..*len as i64 {
                        visit(global(first + k), Element::Stable)?;
                    }
                }
            }
        }
        prev_out = s.body.items[out_start..].iter().map(|it| global(it.first())).collect();
        base += f.owned_len(i);
        if i < last {
            base += 1;
            visit(base, Element::Separator(i))?;
        }
    }
    Ok(())
}

/// Materialize σ as values and roles; only for small frameworks.
pub fn flatten(f: &BruhatFramework) -> Result<(Vec<i64>, Vec<Element>)> {
    let n = f.len();
    if n > FLATTEN_LIMIT {
        return Err(Error::SizeLimit {
            what: "flattened framework",
            got: n as usize,
            limit: FLATTEN_LIMIT as usize,
        });
    }
    let mut values = Vec::with_capacity(n as usize);
    let mut roles = Vec::with_capacity(n as usize);
    walk(f, |v, r| {
        values.push(v as i64);
        roles.push(r);
        Ok(())
    })?;
    Ok((values, roles))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub n: u128,
    pub m: usize,
    pub k: usize,
    pub p: u64,
    pub n_wires: usize,
    /// (position offset, length) of each segment, 0-based.
    pub sections: Vec<(u128, u128)>,
}

impl Manifest {
    pub fn of(f: &BruhatFramework) -> Manifest {
        Manifest {
            n: f.len(),
            m: f.separators(),
            k: f.k,
            p: f.p,
            n_wires: f.n_wires,
            sections: f.section_offsets(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {} {}\n", self.n, self.m, self.k, self.p);
        s.push_str(&format!("wires {}\n", self.n_wires));
        for (i, (off, len)) in self.sections.iter().enumerate() {
            s.push_str(&format!("section {} {off} {len}\n", i + 1));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Manifest> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| Error::parse(1, "empty manifest"))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        if h.len() != 4 {
            return Err(Error::parse(1, "expected \"n m k p\""));
        }
        let num = |s: &str, ln: usize| s.parse::<u128>().map_err(|_| Error::parse(ln, format!("bad number {s}")));
        let mut m = Manifest {
            n: num(h[0], 1)?,
            m: num(h[1], 1)? as usize,
            k: num(h[2], 1)? as usize,
            p: num(h[3], 1)? as u64,
            n_wires: 0,
            sections: Vec::new(),
        };
        for (i, line) in lines {
            let ln = i + 1;
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["wires", w] => m.n_wires = num(w, ln)? as usize,
                ["section", idx, off, len] => {
                    if num(idx, ln)? as usize != m.sections.len() + 1 {
                        return Err(Error::parse(ln, "sections out of order"));
                    }
                    m.sections.push((num(off, ln)?, num(len, ln)?));
                }
                _ => return Err(Error::parse(ln, format!("unexpected line {line:?}"))),
            }
        }
        if m.sections.len() != m.m + 1 {
            return Err(Error::parse(0, "section count must be m + 1"));
        }
        Ok(m)
    }
}

/// Write σ, one value per line.
pub fn emit_sigma<W: Write>(f: &BruhatFramework, out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    walk(f, |v, _| {
        writeln!(w, "{v}")?;
        Ok(())
    })?;
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevalidationReport {
    pub n: u128,
    pub is_permutation: bool,
    pub separators_increasing: bool,
    /// Per gap: variables found and whether they decrease.
    pub gaps: Vec<(usize, bool)>,
}

impl RevalidationReport {
    pub fn passed(&self, n_wires: usize) -> bool {
        self.is_permutation && self.separators_increasing && self.gaps.iter().all(|&(c, d)| c == n_wires && d)
    }
}

/// Re-check a serialized σ against its manifest: bijectivity, separator
/// monotonicity, and N decreasing variables right of each separator.
pub fn revalidate(manifest: &Manifest, sigma: &Path) -> Result<RevalidationReport> {
    let n = manifest.n;
    if n > FLATTEN_LIMIT {
        return Err(Error::SizeLimit {
            what: "serialized framework",
            got: n as usize,
            limit: FLATTEN_LIMIT as usize,
        });
    }
    let mut values = Vec::with_capacity(n as usize);
    for (i, line) in BufReader::new(File::open(sigma)?).lines().enumerate() {
        let line = line?;
        let v: u64 = line.trim().parse().map_err(|_| Error::parse(i + 1, "bad value"))?;
        values.push(v);
    }
    let mut seen = vec![false; values.len() + 1];
    let mut is_permutation = values.len() as u128 == n;
    for &v in &values {
        if v == 0 || v as usize > values.len() || seen[v as usize] {
            is_permutation = false;
            break;
        }
        seen[v as usize] = true;
    }
    let sep_pos: Vec<usize> = manifest.sections[..manifest.m].iter().map(|&(o, l)| (o + l) as usize).collect();
    let sep_val: Vec<u64> = sep_pos.iter().map(|&q| values.get(q).copied().unwrap_or(0)).collect();
    let separators_increasing = sep_val.windows(2).all(|w| w[0] < w[1]);
    let mut gap_vals: Vec<Vec<u64>> = vec![Vec::new(); manifest.m];
    for (q, &v) in values.iter().enumerate() {
        let seg = sep_pos.partition_point(|&s| s < q);
        let band = sep_val.partition_point(|&s| s < v);
        if seg == band + 1 && sep_pos.get(band) != Some(&q) {
            gap_vals[band].push(v);
        }
    }
    let gaps = gap_vals.iter().map(|g| (g.len(), g.windows(2).all(|w| w[0] > w[1]))).collect();
    Ok(RevalidationReport {
        n,
        is_permutation,
        separators_increasing,
        gaps,
    })
}

/// Write manifest.txt and, when n fits the budget, sigma.txt, then re-validate.
pub fn compile_framework(f: &BruhatFramework, out_dir: &Path, budget: u128) -> Result<(Manifest, RevalidationReport)> {
    std::fs::create_dir_all(out_dir)?;
    let manifest = Manifest::of(f);
    std::fs::write(out_dir.join("manifest.txt"), manifest.to_text())?;
    if manifest.n > budget {
        return Err(Error::SerializationBudget { n: manifest.n, budget });
    }
    let path = out_dir.join("sigma.txt");
    emit_sigma(f, File::create(&path)?)?;
    let report = revalidate(&manifest, &path)?;
    Ok((manifest, report))
}

/// #3SAT instance to σ: reduce, assemble at p, write the manifest, and
/// stream σ if it fits the budget.
pub fn compile_end_to_end(
    formula: &CnfFormula,
    p: u64,
    out_dir: &Path,
    budget: u128,
) -> Result<(Manifest, RevalidationReport)> {
    let c = reduce_3sat(formula)?;
    let f = assemble(&c, p)?;
    compile_framework(&f, out_dir, budget)
}
