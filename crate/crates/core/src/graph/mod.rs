//! Simple undirected graphs with stable vertex indices.

mod canon;
mod ear;
mod enumerate;
mod family;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub use canon::{canonical_code, canonical_form, is_isomorphic, CanonicalCode, MAX_CANON_VERTICES};
pub use ear::{ear_decomposition, Ear, EarDecomposition};
pub use enumerate::{enumerate_graphs, GraphClass, MAX_ENUM_VERTICES};
pub use family::{make_family, Family};

/// Largest supported vertex count; adjacency rows are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A finite simple graph on vertices `0..n`.
///
/// Edges are stored as pairs `(u, v)` with `u < v`, sorted lexicographically
/// and free of duplicates. The position of an edge in [`Graph::edges`] is its
/// edge index; covers attach one permutation per edge index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph, normalizing each pair to `u < v` and dropping repeats.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::capacity("graph", format!("{n} vertices"), MAX_VERTICES));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::param(format!("edge ({a},{b}) has an endpoint outside 0..{n}")));
            }
            if a == b {
                return Err(Error::param(format!("self-loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![0u64; n];
        for &(u, v) in &list {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbor bitmask of `v`.
    pub fn adjacency_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// `|E| - |V| + c`, the number of co-tree edges of any spanning forest.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.components().len() - self.n
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if self.has_edge(u, v) {
            return Err(Error::param(format!("({u},{v}) is already an edge")));
        }
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let idx = self
            .edge_index(u, v)
            .ok_or_else(|| Error::param(format!("({u},{v}) is not an edge")))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Graph::new(self.n, edges)
    }

    /// Removes `w`; vertices above `w` shift down by one.
    pub fn without_vertex(&self, w: usize) -> Result<Graph> {
        if w >= self.n {
            return Err(Error::param(format!("vertex {w} out of range")));
        }
        let shift = |x: usize| if x > w { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != w && b != w)
            .map(|&(a, b)| (shift(a), shift(b)));
        Graph::new(self.n - 1, edges)
    }

    /// Identifies `v` into `u` and removes the resulting loop and parallel
    /// edges; vertices above `v` shift down by one.
    pub fn contract(&self, u: usize, v: usize) -> Result<Graph> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::param(format!("cannot contract ({u},{v})")));
        }
        let target = if u > v { u - 1 } else { u };
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self.edges.iter().filter_map(|&(a, b)| {
            let a = if a == v { target } else { shift(a) };
            let b = if b == v { target } else { shift(b) };
            (a != b).then_some((a, b))
        });
        Graph::new(self.n - 1, edges)
    }

    /// Same vertex set, only the listed edges (which must exist).
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::param(format!("({u},{v}) is not an edge")));
            }
        }
        Graph::new(self.n, edges.iter().copied())
    }

    /// Subgraph induced by `vertices`, relabeled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::param(format!("vertex {v} out of range")));
            }
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        Graph::new(vertices.len(), edges)
    }

    pub fn is_complete(&self) -> bool {
        2 * self.edges.len() == self.n * self.n.saturating_sub(1)
    }

    /// Applies a vertex relabeling: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::param("relabeling has the wrong length"));
        }
        Graph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen |= 1 << s;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for y in self.neighbors(x) {
                    if seen >> y & 1 == 0 {
                        seen |= 1 << y;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.cyclomatic_number() == 0
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() + 1 == self.n
    }

    /// Connected with exactly one cycle.
    pub fn is_unicyclic(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() == self.n
    }

    /// At least three vertices, connected, and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.n >= 3
            && self.is_connected()
            && (0..self.n).all(|w| self.without_vertex(w).is_ok_and(|h| h.is_connected()))
    }

    /// Breadth-first spanning forest: each component is explored from its
    /// smallest vertex, neighbors in increasing order. Edges are returned as
    /// `(min, max)` pairs in discovery order.
    pub fn spanning_forest(&self) -> Vec<(usize, usize)> {
        let mut seen = 0u64;
        let mut out = Vec::with_capacity(self.n.saturating_sub(1));
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            seen |= 1 << s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if seen >> y & 1 == 0 {
                        seen |= 1 << y;
                        out.push((x.min(y), x.max(y)));
                        queue.push_back(y);
                    }
                }
            }
        }
        out
    }

    /// Breadth-first spanning tree from vertex 0.
    pub fn spanning_tree(&self) -> Result<Vec<(usize, usize)>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.spanning_forest())
    }

    /// Shortest path from `from` to `to` avoiding the edge `skip`, as a vertex
    /// sequence, by breadth-first search with ascending neighbor order.
    fn shortest_path_avoiding(&self, from: usize, to: usize, skip: (usize, usize)) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for y in self.neighbors(x) {
                if (x.min(y), x.max(y)) == skip || parent[y] != usize::MAX {
                    continue;
                }
                parent[y] = x;
                queue.push_back(y);
            }
        }
        None
    }

    /// A shortest cycle: over edges in index order, the first edge whose
    /// closing path is shortest. Returned as a vertex sequence starting at
    /// the lower endpoint of that edge.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for &(u, v) in &self.edges {
            if let Some(path) = self.shortest_path_avoiding(u, v, (u, v)) {
                if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                    best = Some(path);
                    if best.as_ref().is_some_and(|b| b.len() == 3) {
                        break;
                    }
                }
            }
        }
        best
    }

    /// Every simple cycle exactly once, as a vertex sequence starting at its
    /// smallest vertex with the second vertex smaller than the last.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().unwrap();
            for y in g.neighbors(last) {
                if y == start && path.len() >= 3 && path[1] < last {
                    out.push(path.clone());
                } else if y > start && used >> y & 1 == 0 {
                    path.push(y);
                    extend(g, start, path, used | 1 << y, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..self.n {
            extend(self, s, &mut vec![s], 1 << s, &mut out);
        }
        out
    }

    /// Whether the vertex sequence is a cycle of this graph (length ≥ 3,
    /// distinct vertices, consecutive and closing edges present).
    pub fn is_cycle(&self, cycle: &[usize]) -> bool {
        if cycle.len() < 3 {
            return false;
        }
        let mut seen = 0u64;
        for &v in cycle {
            if v >= self.n || seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << v;
        }
        (0..cycle.len()).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
    }

    /// Parses the text format: a header line `n e` followed by `e` lines
    /// `u v` with `0 <= u < v < n`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `n e`"))?;
        let nums = parse_usizes(hline, header)?;
        let [n, e] = nums[..] else {
            return Err(Error::parse(hline, "header must be `n e`"));
        };
        if n > MAX_VERTICES {
            return Err(Error::parse(hline, format!("at most {MAX_VERTICES} vertices supported")));
        }
        let mut edges = Vec::with_capacity(e);
        for _ in 0..e {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hline, format!("expected {e} edge lines")))?;
            let nums = parse_usizes(lno, line)?;
            let [u, v] = nums[..] else {
                return Err(Error::parse(lno, "edge line must be `u v`"));
            };
            if u >= v || v >= n {
                return Err(Error::parse(lno, format!("edge must satisfy 0 <= u < v < {n}")));
            }
            if edges.contains(&(u, v)) {
                return Err(Error::parse(lno, format!("duplicate edge {u} {v}")));
            }
            edges.push((u, v));
        }
        if let Some((lno, _)) = lines.next() {
            return Err(Error::parse(lno, "unexpected content after the edge list"));
        }
        Graph::new(n, edges)
    }

    /// Text format with edges in canonical order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_usizes(lno: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lno, format!("`{tok}` is not a nonnegative integer")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::Parameter(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::Parameter(_))));
    }

    #[test]
    fn normalizes_and_dedups() {
        let g = Graph::new(3, [(2, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(path(3).spanning_tree().unwrap(), vec![(0, 1), (1, 2)]);
        let t = cycle(4).spanning_tree().unwrap();
        assert_eq!(t, vec![(0, 1), (0, 3), (1, 2)]);
        let wheel = make_family(Family::Wheel(4)).unwrap();
        assert_eq!(wheel.spanning_tree().unwrap().len(), 4);
        let disconnected = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(disconnected.spanning_tree(), Err(Error::Disconnected));
        assert_eq!(disconnected.spanning_forest().len(), 2);
    }

    #[test]
    fn two_connectivity() {
        assert!(cycle(3).is_two_connected());
        assert!(!path(3).is_two_connected());
        assert!(make_family(Family::Theta(1, 2, 2)).unwrap().is_two_connected());
        let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!bowtie.is_two_connected());
    }

    #[test]
    fn contraction_merges_parallel_edges() {
        let c = cycle(4).contract(0, 1).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.edge_count(), 3);
        let tri = cycle(3).contract(1, 2).unwrap();
        assert_eq!(tri.edges(), &[(0, 1)]);
    }

    #[test]
    fn vertex_deletion_shifts_labels() {
        let g = cycle(4).without_vertex(1).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn cycles_of_small_graphs() {
        assert_eq!(cycle(5).cycles().len(), 1);
        let k4 = make_family(Family::Complete(4)).unwrap();
        assert_eq!(k4.cycles().len(), 7);
        let diamond = make_family(Family::Theta(1, 2, 2)).unwrap();
        assert_eq!(diamond.cycles().len(), 3);
        for c in k4.cycles() {
            assert!(k4.is_cycle(&c));
        }
    }

    #[test]
    fn shortest_cycle_prefers_triangles() {
        let diamond = make_family(Family::Theta(1, 2, 2)).unwrap();
        assert_eq!(diamond.shortest_cycle().unwrap().len(), 3);
        assert_eq!(cycle(6).shortest_cycle().unwrap().len(), 6);
        assert!(path(4).shortest_cycle().is_none());
    }

    #[test]
    fn text_format_round_trip() {
        let g = make_family(Family::Wheel(4)).unwrap();
        let text = g.to_text();
        assert_eq!(Graph::parse(&text).unwrap(), g);
        let commented = "# a triangle\n3 3\n0 1\n1 2 # spoke\n0 2\n";
        assert_eq!(Graph::parse(commented).unwrap(), cycle(3));
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(Graph::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse("3 1\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse("3 2\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Graph::parse("3 1\n0 x\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn cyclomatic_number_counts_cotree_edges() {
        assert_eq!(make_family(Family::Wheel(4)).unwrap().cyclomatic_number(), 4);
        assert_eq!(make_family(Family::Theta(1, 2, 2)).unwrap().cyclomatic_number(), 2);
        assert_eq!(path(5).cyclomatic_number(), 0);
    }
}
