use std::collections::VecDeque;

use super::{ColoringAssignment, FullCover, Perm};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One permutation of `0..m` per vertex. Acting on a cover it renames
/// `(v, i)` to `(v, pi_v(i))`, so `sigma_uv ↦ pi_v ∘ sigma_uv ∘ pi_u⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaugeRelabeling {
    pub pi: Vec<Perm>,
}

impl GaugeRelabeling {
    pub fn identity(n: usize, m: usize) -> Self {
        GaugeRelabeling { pi: vec![Perm::identity(m); n] }
    }

    pub fn inverse(&self) -> Self {
        GaugeRelabeling { pi: self.pi.iter().map(Perm::inverse).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.pi.iter().all(Perm::is_identity)
    }

    /// Rewrites every edge permutation.
    pub fn apply(&self, h: &FullCover) -> Result<FullCover> {
        if self.pi.len() != h.graph().n() || self.pi.iter().any(|p| p.degree() != h.m()) {
            return Err(Error::param("relabeling does not match the cover's vertex count or fold"));
        }
        let sigma = h
            .graph()
            .edges()
            .iter()
            .zip(h.permutations())
            .map(|(&(u, v), s)| self.pi[v].compose(s).compose(&self.pi[u].inverse()))
            .collect();
        FullCover::new(h.graph_arc().clone(), h.m(), sigma)
    }

    /// Image of a coloring under the relabeling.
    pub fn map_coloring(&self, c: &ColoringAssignment) -> ColoringAssignment {
        ColoringAssignment {
            indices: c.indices.iter().enumerate().map(|(v, &i)| self.pi[v].apply(i)).collect(),
        }
    }
}

/// Relabels `h` so that every edge of the spanning forest `tree` carries the
/// identity. Each forest component is rooted at its smallest vertex, which
/// keeps the identity relabeling; the rest follow breadth-first.
pub fn gauge_normalize(h: &FullCover, tree: &[(usize, usize)]) -> Result<(FullCover, GaugeRelabeling)> {
    let g = h.graph();
    for &(u, v) in tree {
        if !g.has_edge(u, v) {
            return Err(Error::param(format!("({u},{v}) is not an edge of the graph")));
        }
    }
    let forest = Graph::new(g.n(), tree.iter().copied())?;
    if forest.edge_count() != tree.len() || !forest.is_forest() {
        return Err(Error::param("edge set is not a forest"));
    }
    let mut pi: Vec<Option<Perm>> = vec![None; g.n()];
    for root in 0..g.n() {
        if pi[root].is_some() {
            continue;
        }
        pi[root] = Some(Perm::identity(h.m()));
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for c in forest.neighbors(p) {
                if pi[c].is_none() {
                    let step = h.oriented(p, c)?;
                    pi[c] = Some(pi[p].as_ref().unwrap().compose(&step.inverse()));
                    queue.push_back(c);
                }
            }
        }
    }
    let relabel = GaugeRelabeling { pi: pi.into_iter().map(Option::unwrap).collect() };
    let normalized = relabel.apply(h)?;
    Ok((normalized, relabel))
}

/// A relabeling that turns every edge permutation into the identity, if one
/// exists: normalize on the breadth-first spanning forest and require every
/// remaining (co-tree) permutation to be trivial.
pub fn find_canonical_labeling(h: &FullCover) -> Option<GaugeRelabeling> {
    let tree = h.graph().spanning_forest();
    let (normalized, relabel) = gauge_normalize(h, &tree).expect("spanning forest is a forest of the graph");
    normalized.is_identity().then_some(relabel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn fam(f: Family) -> Arc<Graph> {
        Arc::new(make_family(f).unwrap())
    }

    #[test]
    fn identity_relabeling_is_neutral() {
        let h = FullCover::identity(fam(Family::Cycle(3)), 3)
            .unwrap()
            .with_edge_perm(2, Perm::transposition(3, 0, 1))
            .unwrap();
        assert_eq!(GaugeRelabeling::identity(3, 3).apply(&h).unwrap(), h);
    }

    #[test]
    fn moving_the_twist_keeps_the_count() {
        let h = FullCover::identity(fam(Family::Cycle(3)), 3)
            .unwrap()
            .with_edge_perm(2, Perm::transposition(3, 0, 1))
            .unwrap();
        // relabel vertex 2 by the twist: edge (1,2) becomes identity and the
        // twist reappears on edge (0,2).
        let mut pi = GaugeRelabeling::identity(3, 3);
        pi.pi[2] = Perm::transposition(3, 0, 1);
        let moved = pi.apply(&h).unwrap();
        assert!(moved.edge_perm(2).is_identity());
        assert!(!moved.edge_perm(1).is_identity());
        assert_eq!(moved.count_colorings(), 8);
    }

    #[test]
    fn tree_covers_normalize_to_identity() {
        let g = fam(Family::Star(5));
        let h = FullCover::new(
            g.clone(),
            4,
            vec![Perm::rotation(4, 1), Perm::transposition(4, 0, 3), Perm::rotation(4, 2), Perm::rotation(4, 3)],
        )
        .unwrap();
        let (normalized, relabel) = gauge_normalize(&h, &g.spanning_tree().unwrap()).unwrap();
        assert!(normalized.is_identity());
        assert!(relabel.pi[0].is_identity());
        assert!(find_canonical_labeling(&h).is_some());
    }

    #[test]
    fn twisted_triangle_has_no_canonical_labeling() {
        let h = FullCover::identity(fam(Family::Cycle(3)), 3)
            .unwrap()
            .with_edge_perm(2, Perm::transposition(3, 0, 1))
            .unwrap();
        assert!(find_canonical_labeling(&h).is_none());
        let id = FullCover::identity(fam(Family::Cycle(3)), 3).unwrap();
        assert!(find_canonical_labeling(&id).unwrap().is_identity());
    }

    #[test]
    fn fully_twisted_square_leaves_holonomy_on_cotree_edge() {
        let g = fam(Family::Cycle(4));
        let h = FullCover::new(
            g.clone(),
            3,
            vec![Perm::rotation(3, 1), Perm::transposition(3, 0, 2), Perm::rotation(3, 2), Perm::transposition(3, 1, 2)],
        )
        .unwrap();
        let tree = g.spanning_tree().unwrap();
        let (normalized, _) = gauge_normalize(&h, &tree).unwrap();
        let cotree: Vec<usize> = (0..4).filter(|&e| !tree.contains(&g.edges()[e])).collect();
        assert_eq!(cotree, vec![3]);
        for e in 0..3 {
            assert!(normalized.edge_perm(e).is_identity());
        }
        let hol = h.holonomy(&[0, 1, 2, 3]).unwrap();
        let hol_normalized = normalized.holonomy(&[0, 1, 2, 3]).unwrap();
        assert_eq!(hol.fixed_points(), hol_normalized.fixed_points());
        assert_eq!(normalized.count_colorings(), h.count_colorings());
    }

    #[test]
    fn rejects_non_forests() {
        let g = fam(Family::Cycle(3));
        let h = FullCover::identity(g.clone(), 2).unwrap();
        assert!(gauge_normalize(&h, g.edges()).is_err());
        assert!(gauge_normalize(&h, &[(0, 1), (0, 1)]).is_err());
    }

    fn cover_and_gauge() -> impl Strategy<Value = (FullCover, GaugeRelabeling)> {
        (2usize..=6, 1usize..=4, any::<u64>()).prop_map(|(n, m, seed)| {
            use rand::{seq::SliceRandom, Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Arc::new(Graph::new(n, edges).unwrap());
            let mut perm = || {
                let mut v: Vec<usize> = (0..m).collect();
                v.shuffle(&mut rng);
                Perm::from_images(&v).unwrap()
            };
            let sigma = (0..g.edge_count()).map(|_| perm()).collect();
            let pi = GaugeRelabeling { pi: (0..n).map(|_| perm()).collect() };
            (FullCover::new(g, m, sigma).unwrap(), pi)
        })
    }

    proptest! {
        #[test]
        fn gauge_is_a_group_action_preserving_colorings((h, pi) in cover_and_gauge()) {
            let moved = pi.apply(&h).unwrap();
            prop_assert_eq!(moved.count_colorings(), h.count_colorings());
            prop_assert_eq!(&pi.inverse().apply(&moved).unwrap(), &h);
            for c in h.colorings() {
                prop_assert!(moved.is_coloring(&pi.map_coloring(&c)));
            }
        }
    }
}
