//! Text formats for posets, graphs, permutations and block sequences.
//!
//! Element and vertex numbers in files are 1-based; blank lines and lines
//! starting with `#` or `c ` are ignored.

use crate::combinatorics::blockseq::{BlockSequence, Item};
use crate::combinatorics::{Permutation, Poset};
use crate::error::{Error, Result};
use crate::incidence::Graph;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c "))
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, word: &str) -> Result<(usize, usize)> {
    let (ln, line) = lines.next().ok_or_else(|| Error::parse(1, format!("missing \"{word} <n>\" header")))?;
    let n = line
        .strip_prefix(word)
        .and_then(|r| r.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::parse(ln, format!("expected \"{word} <n>\"")))?;
    Ok((ln, n))
}

fn element(tok: &str, n: usize, ln: usize) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
        _ => Err(Error::parse(ln, format!("{tok:?} is not an element of 1..={n}"))),
    }
}

/// `poset <n>` then `i < j` lines; the transitive closure is taken.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut lines = content_lines(text);
    let (hl, n) = header(&mut lines, "poset")?;
    let mut rel = Vec::new();
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (a, b) = match parts.as_slice() {
            [a, "<", b] => (*a, *b),
            [a, ">", b] => (*b, *a),
            _ => return Err(Error::parse(ln, format!("expected \"i < j\", got {line:?}"))),
        };
        rel.push((element(a, n, ln)?, element(b, n, ln)?));
    }
    Poset::from_relations(n, rel).map_err(|e| Error::parse(hl, e.to_string()))
}

/// Cover relations only, so the output stays small.
pub fn poset_to_text(p: &Poset) -> String {
    let mut s = format!("poset {}\n", p.len());
    for (a, b) in p.hasse_edges() {
        s.push_str(&format!("{} < {}\n", a + 1, b + 1));
    }
    s
}

/// `graph <n>` then `u v` edge lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (_, n) = header(&mut lines, "graph")?;
    let mut g = Graph::empty(n);
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(Error::parse(ln, format!("expected \"u v\", got {line:?}")));
        };
        g.add_edge(element(u, n, ln)?, element(v, n, ln)?)
            .map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    Ok(g)
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.num_vertices());
    for (u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    s
}

/// One line of whitespace-separated integers.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut entries = Vec::new();
    for (ln, line) in content_lines(text) {
        for tok in line.split_whitespace() {
            entries.push(tok.parse::<u32>().map_err(|_| Error::parse(ln, format!("{tok:?} is not a positive integer")))?);
        }
    }
    let n = entries.len();
    Permutation::new(entries).map_err(|_| Error::parse(1, format!("not a permutation of 1..{n}")))
}

/// Tokens `v` (a single value) or `[first:len]` (a block).
pub fn parse_blockseq(text: &str) -> Result<BlockSequence> {
    let mut items = Vec::new();
    for (ln, line) in content_lines(text) {
        for tok in line.split_whitespace() {
            let bad = || Error::parse(ln, format!("bad token {tok:?}"));
            let item = if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                let (f, l) = inner.split_once(':').ok_or_else(bad)?;
                Item::Block {
                    first: f.parse().map_err(|_| bad())?,
                    len: l.parse().map_err(|_| bad())?,
                }
            } else {
                Item::Single(tok.parse().map_err(|_| bad())?)
            };
            items.push(item);
        }
    }
    let s = BlockSequence::new(items);
    if !s.has_distinct_values() {
        return Err(Error::parse(1, "block sequence repeats a value"));
    }
    Ok(s)
}
