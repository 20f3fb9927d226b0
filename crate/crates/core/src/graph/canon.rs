//! Canonical forms for small graphs by color refinement plus exhaustive
//! individualization of the first non-singleton cell.

use super::Graph;
use crate::error::{Error, Result};

/// The upper-triangle code must fit in 128 bits.
pub const MAX_CANON_VERTICES: usize = 16;

/// Isomorphism-invariant code: equal codes iff isomorphic graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub n: u8,
    pub bits: u128,
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    // row-major upper triangle: (0,1),(0,2),...,(0,n-1),(1,2),...
    let (i, j) = (i.min(j), i.max(j));
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn code_for(g: &Graph, position: &[usize]) -> u128 {
    let n = g.n();
    g.edges()
        .iter()
        .fold(0u128, |acc, &(u, v)| acc | 1u128 << pair_bit(n, position[u], position[v]))
}

/// Refines `colors` (ranks `0..k`) until neighbor-color counts are uniform
/// within every cell. Cells keep their relative order; splits are ordered by
/// the count signature, so the result is invariant under relabeling.
fn refine(g: &Graph, colors: &mut [usize]) {
    let n = g.n();
    let mut k = colors.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0usize; k];
                for w in g.neighbors(v) {
                    counts[colors[w]] += 1;
                }
                (colors[v], counts)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        for (v, key) in keys.iter().enumerate() {
            colors[v] = distinct.binary_search(key).unwrap();
        }
        if distinct.len() == k {
            return;
        }
        k = distinct.len();
    }
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<(u128, Vec<usize>)>) {
    refine(g, &mut colors);
    let n = g.n();
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| size[c] > 1) else {
        let code = code_for(g, &colors);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, colors));
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = (0..n)
            .map(|w| 2 * colors[w] + usize::from(colors[w] == target && w != v))
            .collect();
        let mut ranks = split.clone();
        ranks.sort_unstable();
        ranks.dedup();
        let next = split.iter().map(|c| ranks.binary_search(c).unwrap()).collect();
        search(g, next, best);
    }
}

/// Canonical code together with the labeling that realizes it
/// (`position[v]` is the new index of vertex `v`).
pub fn canonical_form(g: &Graph) -> Result<(CanonicalCode, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::capacity("canonical form", format!("{n} vertices"), MAX_CANON_VERTICES));
    }
    if n == 0 {
        return Ok((CanonicalCode { n: 0, bits: 0 }, Vec::new()));
    }
    let mut best = None;
    search(g, vec![0; n], &mut best);
    let (bits, position) = best.expect("search visits at least one leaf");
    Ok((CanonicalCode { n: n as u8, bits }, position))
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    canonical_form(g).map(|(c, _)| c)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

impl CanonicalCode {
    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.bits >> pair_bit(n, i, j) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).expect("code decodes to a simple graph")
    }
}
