use super::FullCover;
use crate::error::{Error, Result};

/// Counts `m_1..m_5` of the `m` disjoint three-vertex paths
/// `(a1, i) (a2, j) (a3, k)` by index pattern:
/// 1. `i = j = k`
/// 2. `i = j != k`
/// 3. `i != j = k`
/// 4. `i != j`, `i = k`
/// 5. `i, j, k` pairwise distinct
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwoPathCases(pub [usize; 5]);

impl TwoPathCases {
    /// `m_q` for `q` in `1..=5`.
    pub fn get(&self, q: usize) -> usize {
        self.0[q - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// The counts seen from the other end of the path (`a1 ↔ a3`).
    pub fn reversed(&self) -> TwoPathCases {
        let [m1, m2, m3, m4, m5] = self.0;
        TwoPathCases([m1, m3, m2, m4, m5])
    }
}

fn case_of(i: usize, j: usize, k: usize) -> usize {
    match (i == j, j == k, i == k) {
        (true, true, _) => 1,
        (true, false, _) => 2,
        (false, true, _) => 3,
        (false, false, true) => 4,
        (false, false, false) => 5,
    }
}

/// Classifies the paths through `a1 - a2 - a3`.
///
/// The path must exist, `a1 a3` must be a non-edge, and every edge other than
/// `a1 a2` and `a2 a3` must already carry the identity (normalize first).
pub fn classify_two_path(h: &FullCover, a1: usize, a2: usize, a3: usize) -> Result<TwoPathCases> {
    let g = h.graph();
    if a1 == a3 || !g.has_edge(a1, a2) || !g.has_edge(a2, a3) {
        return Err(Error::param(format!("{a1}-{a2}-{a3} is not a path of length two")));
    }
    if g.has_edge(a1, a3) {
        return Err(Error::param(format!("{a1} and {a3} are adjacent")));
    }
    let e1 = g.edge_index(a1, a2).unwrap();
    let e2 = g.edge_index(a2, a3).unwrap();
    if let Some(e) = (0..g.edge_count()).find(|&e| e != e1 && e != e2 && !h.edge_perm(e).is_identity()) {
        return Err(Error::Normalization(format!(
            "edge {:?} carries a non-identity permutation",
            g.edges()[e]
        )));
    }
    let first = h.oriented(a1, a2)?;
    let second = h.oriented(a2, a3)?;
    let mut cases = TwoPathCases::default();
    for i in 0..h.m() {
        let j = first.apply(i);
        let k = second.apply(j);
        cases.0[case_of(i, j, k) - 1] += 1;
    }
    Ok(cases)
}
