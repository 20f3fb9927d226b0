//! Backtracking counter for cover colorings.

use std::collections::VecDeque;

use super::perm::Perm;
use crate::graph::Graph;
use crate::Count;

/// One vertex of the search order plus its already-placed neighbors:
/// `(neighbor, edge index, neighbor is the lower endpoint)`.
struct Step {
    vertex: usize,
    back: Vec<(usize, usize, bool)>,
}

/// Vertex order and constraint lists for one graph, reusable across covers.
///
/// Each component is visited breadth-first from its maximum-degree vertex
/// (lowest index on ties), neighbors in increasing order. Components are
/// counted independently and multiplied.
pub(crate) struct CountPlan {
    components: Vec<Vec<Step>>,
    n: usize,
}

/// Flat forward and inverse lookup tables for the edge permutations.
pub(crate) struct PermTables {
    m: usize,
    fwd: Vec<u8>,
    inv: Vec<u8>,
}

impl PermTables {
    pub(crate) fn new(m: usize, sigma: &[Perm]) -> Self {
        let mut t = PermTables {
            m,
            fwd: vec![0; sigma.len() * m],
            inv: vec![0; sigma.len() * m],
        };
        for (e, p) in sigma.iter().enumerate() {
            t.set(e, p);
        }
        t
    }

    pub(crate) fn set(&mut self, e: usize, p: &Perm) {
        let base = e * self.m;
        for (i, &x) in p.images().iter().enumerate() {
            self.fwd[base + i] = x;
            self.inv[base + x as usize] = i as u8;
        }
    }
}

impl CountPlan {
    pub(crate) fn new(g: &Graph) -> Self {
        let mut placed = vec![false; g.n()];
        let mut components = Vec::new();
        for comp in g.components() {
            let root = *comp.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
            let mut order = Vec::with_capacity(comp.len());
            let mut queued = vec![false; g.n()];
            queued[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for y in g.neighbors(x) {
                    if !queued[y] {
                        queued[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            let steps = order
                .into_iter()
                .map(|v| {
                    let back = g
                        .neighbors(v)
                        .filter(|&w| placed[w])
                        .map(|w| (w, g.edge_index(v, w).unwrap(), w < v))
                        .collect();
                    placed[v] = true;
                    Step { vertex: v, back }
                })
                .collect();
            components.push(steps);
        }
        CountPlan { components, n: g.n() }
    }

    /// Number of assignments compatible with the tables and with `pins`
    /// (`pins[v] = Some(i)` forces vertex `v` to index `i`).
    pub(crate) fn count(&self, tables: &PermTables, pins: Option<&[Option<usize>]>) -> Count {
        let m = tables.m;
        let full = if m >= 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut colors = vec![0u8; self.n];
        let mut total: Count = 1;
        for steps in &self.components {
            let c = count_from(steps, 0, &mut colors, tables, pins, full);
            if c == 0 {
                return 0;
            }
            total *= c;
        }
        total
    }

    /// Whether some compatible assignment exists.
    pub(crate) fn any(&self, tables: &PermTables) -> bool {
        let m = tables.m;
        let full = if m >= 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut colors = vec![0u8; self.n];
        self.components
            .iter()
            .all(|steps| exists_from(steps, 0, &mut colors, tables, full))
    }
}

#[inline]
fn allowed_mask(step: &Step, colors: &[u8], t: &PermTables, full: u64) -> u64 {
    let mut forbidden = 0u64;
    for &(w, e, w_low) in &step.back {
        let idx = e * t.m + colors[w] as usize;
        let img = if w_low { t.fwd[idx] } else { t.inv[idx] };
        forbidden |= 1u64 << img;
    }
    full & !forbidden
}

fn count_from(
    steps: &[Step],
    k: usize,
    colors: &mut [u8],
    t: &PermTables,
    pins: Option<&[Option<usize>]>,
    full: u64,
) -> Count {
    let step = &steps[k];
    let mut allowed = allowed_mask(step, colors, t, full);
    if let Some(Some(p)) = pins.map(|p| p[step.vertex]) {
        allowed &= 1u64 << p;
    }
    if k + 1 == steps.len() {
        return allowed.count_ones() as Count;
    }
    let mut total = 0;
    while allowed != 0 {
        colors[step.vertex] = allowed.trailing_zeros() as u8;
        allowed &= allowed - 1;
        total += count_from(steps, k + 1, colors, t, pins, full);
    }
    total
}

fn exists_from(steps: &[Step], k: usize, colors: &mut [u8], t: &PermTables, full: u64) -> bool {
    let step = &steps[k];
    let mut allowed = allowed_mask(step, colors, t, full);
    if k + 1 == steps.len() {
        return allowed != 0;
    }
    while allowed != 0 {
        colors[step.vertex] = allowed.trailing_zeros() as u8;
        allowed &= allowed - 1;
        if exists_from(steps, k + 1, colors, t, full) {
            return true;
        }
    }
    false
}
