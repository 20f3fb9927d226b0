//! Full `m`-fold covers encoded as one permutation per edge.
//!
//! For an edge `(u, v)` with `u < v` the stored permutation `sigma` matches
//! list vertex `(u, i)` to `(v, sigma(i))`; the reverse orientation is the
//! inverse permutation and is never stored. Lists are implicit:
//! `L(u) = {(u, i) : i in 0..m}` and each list is a clique, so a coloring
//! is one index per vertex that avoids every matched pair.

mod classify;
mod count;
mod gauge;
mod perm;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::Count;

pub use classify::{classify_two_path, TwoPathCases};
pub(crate) use count::{CountPlan, PermTables};
pub use gauge::{find_canonical_labeling, gauge_normalize, GaugeRelabeling};
pub use perm::{factorial, Perm, MAX_FOLD};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FullCover {
    graph: Arc<Graph>,
    m: usize,
    sigma: Vec<Perm>,
}

/// One list index per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoringAssignment {
    pub indices: Vec<usize>,
}

fn check_fold(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::param("fold count m must be at least 1"));
    }
    if m > MAX_FOLD {
        return Err(Error::capacity("cover", format!("m = {m}"), MAX_FOLD));
    }
    Ok(())
}

impl FullCover {
    pub fn new(graph: Arc<Graph>, m: usize, sigma: Vec<Perm>) -> Result<Self> {
        check_fold(m)?;
        if sigma.len() != graph.edge_count() {
            return Err(Error::param(format!(
                "expected {} edge permutations, got {}",
                graph.edge_count(),
                sigma.len()
            )));
        }
        if let Some(p) = sigma.iter().find(|p| p.degree() != m) {
            return Err(Error::param(format!("{p:?} is not a permutation of 0..{m}")));
        }
        Ok(FullCover { graph, m, sigma })
    }

    /// The cover with a canonical labeling: every edge carries the identity.
    pub fn identity(graph: Arc<Graph>, m: usize) -> Result<Self> {
        check_fold(m)?;
        let sigma = vec![Perm::identity(m); graph.edge_count()];
        Ok(FullCover { graph, m, sigma })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn permutations(&self) -> &[Perm] {
        &self.sigma
    }

    pub fn edge_perm(&self, e: usize) -> &Perm {
        &self.sigma[e]
    }

    /// Permutation carrying indices of `L(from)` to their partners in `L(to)`.
    pub fn oriented(&self, from: usize, to: usize) -> Result<Perm> {
        let e = self
            .graph
            .edge_index(from, to)
            .ok_or_else(|| Error::param(format!("({from},{to}) is not an edge")))?;
        Ok(if from < to { self.sigma[e].clone() } else { self.sigma[e].inverse() })
    }

    pub fn with_edge_perm(mut self, e: usize, p: Perm) -> Result<Self> {
        if e >= self.sigma.len() || p.degree() != self.m {
            return Err(Error::param(format!("cannot place {p:?} on edge {e}")));
        }
        self.sigma[e] = p;
        Ok(self)
    }

    /// Sets the permutation of edge `(u, v)` read in the orientation `u → v`.
    pub fn with_oriented(self, u: usize, v: usize, p: Perm) -> Result<Self> {
        let e = self
            .graph
            .edge_index(u, v)
            .ok_or_else(|| Error::param(format!("({u},{v}) is not an edge")))?;
        let p = if u < v { p } else { p.inverse() };
        self.with_edge_perm(e, p)
    }

    /// The cover of `G - uv` obtained by dropping that edge's matching.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<FullCover> {
        let e = self
            .graph
            .edge_index(u, v)
            .ok_or_else(|| Error::param(format!("({u},{v}) is not an edge")))?;
        let graph = Arc::new(self.graph.without_edge(u, v)?);
        let mut sigma = self.sigma.clone();
        sigma.remove(e);
        FullCover::new(graph, self.m, sigma)
    }

    /// Whether every edge carries the identity.
    pub fn is_identity(&self) -> bool {
        self.sigma.iter().all(Perm::is_identity)
    }

    /// Composite permutation around a closed walk `cycle[0] → cycle[1] → …
    /// → cycle[0]`, as a permutation of `L(cycle[0])`.
    pub fn holonomy(&self, cycle: &[usize]) -> Result<Perm> {
        let mut acc = Perm::identity(self.m);
        for i in 0..cycle.len() {
            let step = self.oriented(cycle[i], cycle[(i + 1) % cycle.len()])?;
            acc = step.compose(&acc);
        }
        Ok(acc)
    }

    /// Number of cover colorings.
    pub fn count_colorings(&self) -> Count {
        CountPlan::new(&self.graph).count(&PermTables::new(self.m, &self.sigma), None)
    }

    /// Number of colorings extending `pins` (pairs `(vertex, index)`).
    pub fn count_colorings_pinned(&self, pins: &[(usize, usize)]) -> Result<Count> {
        let mut forced = vec![None; self.graph.n()];
        for &(v, i) in pins {
            if v >= self.graph.n() || i >= self.m {
                return Err(Error::param(format!("pin ({v},{i}) out of range")));
            }
            match forced[v] {
                Some(j) if j != i => return Err(Error::param(format!("vertex {v} pinned twice"))),
                _ => forced[v] = Some(i),
            }
        }
        Ok(CountPlan::new(&self.graph).count(&PermTables::new(self.m, &self.sigma), Some(&forced)))
    }

    /// Whether at least one coloring exists.
    pub fn is_colorable(&self) -> bool {
        CountPlan::new(&self.graph).any(&PermTables::new(self.m, &self.sigma))
    }

    pub fn is_coloring(&self, c: &ColoringAssignment) -> bool {
        c.indices.len() == self.graph.n()
            && c.indices.iter().all(|&i| i < self.m)
            && self
                .graph
                .edges()
                .iter()
                .zip(&self.sigma)
                .all(|(&(u, v), p)| p.apply(c.indices[u]) != c.indices[v])
    }

    /// Every coloring, in lexicographic order of the index vectors.
    pub fn colorings(&self) -> Vec<ColoringAssignment> {
        fn go(h: &FullCover, v: usize, cur: &mut Vec<usize>, out: &mut Vec<ColoringAssignment>) {
            if v == h.graph.n() {
                out.push(ColoringAssignment { indices: cur.clone() });
                return;
            }
            for i in 0..h.m {
                let clash = h.graph.neighbors(v).filter(|&w| w < v).any(|w| {
                    let e = h.graph.edge_index(w, v).unwrap();
                    h.sigma[e].apply(cur[w]) == i
                });
                if !clash {
                    cur.push(i);
                    go(h, v + 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Parses the cover text format for `graph`: line 1 is `m`, then one line
    /// `u v p_0 … p_{m-1}` per edge meaning `(u, i)` is matched to `(v, p_i)`.
    /// Every edge must appear exactly once; a line with `u > v` is read in
    /// that orientation.
    pub fn parse(graph: Arc<Graph>, text: &str) -> Result<FullCover> {
        let mut lines = content_lines(text);
        let (mline, first) = lines.next().ok_or_else(|| Error::parse(1, "missing fold count line"))?;
        let m = match parse_usizes(mline, first)?[..] {
            [m] if (1..=MAX_FOLD).contains(&m) => m,
            _ => return Err(Error::parse(mline, format!("first line must be a fold count in 1..={MAX_FOLD}"))),
        };
        let mut sigma: Vec<Option<Perm>> = vec![None; graph.edge_count()];
        for (lno, line) in lines {
            let nums = parse_usizes(lno, line)?;
            if nums.len() != m + 2 {
                return Err(Error::parse(lno, format!("expected `u v` and {m} images")));
            }
            let (u, v) = (nums[0], nums[1]);
            let e = graph
                .edge_index(u, v)
                .filter(|_| u != v)
                .ok_or_else(|| Error::parse(lno, format!("({u},{v}) is not an edge")))?;
            if sigma[e].is_some() {
                return Err(Error::parse(lno, format!("edge ({u},{v}) listed twice")));
            }
            let p = Perm::from_images(&nums[2..]).map_err(|err| Error::parse(lno, err.to_string()))?;
            sigma[e] = Some(if u < v { p } else { p.inverse() });
        }
        if let Some(e) = sigma.iter().position(Option::is_none) {
            let (u, v) = graph.edges()[e];
            return Err(Error::parse(0, format!("edge ({u},{v}) has no matching")));
        }
        FullCover::new(graph, m, sigma.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.m);
        for (&(u, v), p) in self.graph.edges().iter().zip(&self.sigma) {
            s.push_str(&format!("{u} {v} {p}\n"));
        }
        s
    }
}

impl std::fmt::Debug for FullCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FullCover(m={}, ", self.m)?;
        f.debug_map()
            .entries(self.graph.edges().iter().zip(&self.sigma))
            .finish()?;
        f.write_str(")")
    }
}
