use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// A path glued to earlier pieces at its two endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub start: usize,
    pub internal: Vec<usize>,
    pub end: usize,
}

impl Ear {
    /// Number of edges, `internal.len() + 1`.
    pub fn length(&self) -> usize {
        self.internal.len() + 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut seq = Vec::with_capacity(self.internal.len() + 2);
        seq.push(self.start);
        seq.extend(&self.internal);
        seq.push(self.end);
        seq.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub initial_cycle: Vec<usize>,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    /// `l_0` (cycle length) followed by the internal-vertex count of each ear.
    pub fn lengths(&self) -> Vec<usize> {
        std::iter::once(self.initial_cycle.len())
            .chain(self.ears.iter().map(|e| e.internal.len()))
            .collect()
    }

    /// Checks the decomposition against `g`: the cycle is a cycle of `g`,
    /// ear interiors are new vertices, endpoints are old and distinct, and
    /// every edge of `g` lies in exactly one piece.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::Structure(msg));
        if !g.is_cycle(&self.initial_cycle) {
            return bad(format!("{:?} is not a cycle of the graph", self.initial_cycle));
        }
        let mut used_vertex = vec![false; g.n()];
        let mut used_edge = vec![false; g.edge_count()];
        let cyc = &self.initial_cycle;
        for (i, &v) in cyc.iter().enumerate() {
            used_vertex[v] = true;
            used_edge[g.edge_index(v, cyc[(i + 1) % cyc.len()]).unwrap()] = true;
        }
        for (k, ear) in self.ears.iter().enumerate() {
            if ear.start == ear.end || !used_vertex[ear.start] || !used_vertex[ear.end] {
                return bad(format!("ear {k} must join two distinct existing vertices"));
            }
            for &w in &ear.internal {
                if w >= g.n() || used_vertex[w] {
                    return bad(format!("ear {k} reuses vertex {w}"));
                }
                used_vertex[w] = true;
            }
            for (u, v) in ear.edges() {
                match g.edge_index(u, v) {
                    Some(e) if !used_edge[e] => used_edge[e] = true,
                    Some(_) => return bad(format!("edge ({u},{v}) appears in two pieces")),
                    None => return bad(format!("ear {k} uses non-edge ({u},{v})")),
                }
            }
        }
        if let Some(v) = used_vertex.iter().position(|&u| !u) {
            return bad(format!("vertex {v} is not covered"));
        }
        if let Some(e) = used_edge.iter().position(|&u| !u) {
            return bad(format!("edge {:?} is not covered", g.edges()[e]));
        }
        Ok(())
    }
}

/// Ear decomposition of a 2-connected graph starting from `initial_cycle`,
/// or from [`Graph::shortest_cycle`] when none is given.
///
/// Ears are added greedily: take the first unused edge (in edge order) with
/// an endpoint already covered; if the other end is covered too the ear is
/// that single edge, otherwise walk breadth-first through uncovered vertices
/// to the nearest covered vertex other than the start.
pub fn ear_decomposition(g: &Graph, initial_cycle: Option<&[usize]>) -> Result<EarDecomposition> {
    if !g.is_two_connected() {
        return Err(Error::Structure("graph is not 2-connected".into()));
    }
    let cycle = match initial_cycle {
        Some(c) if g.is_cycle(c) => c.to_vec(),
        Some(c) => return Err(Error::param(format!("{c:?} is not a cycle of the graph"))),
        None => g.shortest_cycle().expect("2-connected graphs contain a cycle"),
    };
    let mut covered = vec![false; g.n()];
    let mut used = vec![false; g.edge_count()];
    for (i, &v) in cycle.iter().enumerate() {
        covered[v] = true;
        used[g.edge_index(v, cycle[(i + 1) % cycle.len()]).unwrap()] = true;
    }
    let mut ears = Vec::new();
    while let Some(e) = (0..g.edge_count()).find(|&e| {
        let (a, b) = g.edges()[e];
        !used[e] && (covered[a] || covered[b])
    }) {
        let (a, b) = g.edges()[e];
        let (start, first) = if covered[a] { (a, b) } else { (b, a) };
        let ear = if covered[first] {
            Ear { start, internal: Vec::new(), end: first }
        } else {
            let mut parent = vec![usize::MAX; g.n()];
            parent[first] = first;
            let mut queue = VecDeque::from([first]);
            let mut end = None;
            'bfs: while let Some(x) = queue.pop_front() {
                for y in g.neighbors(x) {
                    if y == start && x == first || parent[y] != usize::MAX {
                        continue;
                    }
                    parent[y] = x;
                    if covered[y] && y != start {
                        end = Some(y);
                        break 'bfs;
                    }
                    if !covered[y] {
                        queue.push_back(y);
                    }
                }
            }
            let end = end.ok_or_else(|| Error::Structure("no ear closes; graph is not 2-connected".into()))?;
            let mut internal = Vec::new();
            let mut cur = parent[end];
            loop {
                internal.push(cur);
                if cur == first {
                    break;
                }
                cur = parent[cur];
            }
            internal.reverse();
            Ear { start, internal, end }
        };
        for &w in &ear.internal {
            covered[w] = true;
        }
        for (u, v) in ear.edges() {
            used[g.edge_index(u, v).unwrap()] = true;
        }
        ears.push(ear);
    }
    let dec = EarDecomposition { initial_cycle: cycle, ears };
    dec.validate(g)?;
    Ok(dec)
}
