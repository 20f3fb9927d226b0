//! Exhaustive minimization over gauge-fixed full covers.
//!
//! Every full cover is gauge-equivalent to exactly one cover whose spanning
//! forest edges carry the identity, and gauge relabeling preserves coloring
//! counts. So the minimum over all full `m`-fold covers is the minimum over
//! the `(m!)^k` assignments of permutations to the `k` co-tree edges.
//!
//! Partial matchings never help the minimum: adding a cross edge can only
//! remove colorings, so the minimum over full covers is the DP color
//! function. Results are labeled "over full covers" where that matters.

use std::sync::Arc;

use num::bigint::BigUint;
use rayon::prelude::*;

use crate::cover::{factorial, CountPlan, FullCover, Perm, PermTables};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Count;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpOptions {
    /// Largest cover space that may be enumerated.
    pub budget: u64,
    /// Worker threads; results do not depend on this.
    pub jobs: usize,
    /// Witnesses kept in [`DpSearchResult::witnesses`]; all are counted.
    pub witness_limit: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
            witness_limit: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpSearchResult {
    pub m: usize,
    /// Minimum coloring count over full covers.
    pub min_count: Count,
    /// The first minimizing covers in enumeration order, up to the limit.
    pub witnesses: Vec<FullCover>,
    /// How many enumerated covers attain the minimum.
    pub witness_total: u64,
    pub covers_examined: u64,
}

/// The gauge-fixed cover space of a graph: identity on a spanning forest,
/// every permutation tuple on the co-tree edges. Tuples are ordered
/// lexicographically with the first co-tree edge (in edge order) most
/// significant and each permutation in lexicographic one-line order.
#[derive(Clone, Debug)]
pub struct CoverSpace {
    graph: Arc<Graph>,
    m: usize,
    cotree: Vec<usize>,
    fact: u64,
    size: u64,
}

fn space_size(m: usize, k: usize, budget: u64) -> Result<(u64, u64)> {
    let required = || BigUint::from(factorial(m).map_or(0, |f| f)).pow(k as u32);
    let fact = factorial(m).ok_or_else(|| Error::capacity("cover space", format!("({m}!)^{k}"), budget))?;
    let size = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(fact));
    match size {
        Some(s) if s <= budget => Ok((fact, s)),
        Some(s) => Err(Error::capacity("cover space", format!("{s} covers"), budget)),
        None => Err(Error::capacity("cover space", format!("{} covers", required()), budget)),
    }
}

impl CoverSpace {
    /// Space relative to the breadth-first spanning forest.
    pub fn new(graph: Arc<Graph>, m: usize, budget: u64) -> Result<Self> {
        let tree = graph.spanning_forest();
        CoverSpace::with_tree(graph, m, &tree, budget)
    }

    /// Space relative to a caller-chosen spanning forest.
    pub fn with_tree(graph: Arc<Graph>, m: usize, tree: &[(usize, usize)], budget: u64) -> Result<Self> {
        FullCover::identity(graph.clone(), m)?;
        let mut in_tree = vec![false; graph.edge_count()];
        for &(u, v) in tree {
            let e = graph
                .edge_index(u, v)
                .ok_or_else(|| Error::param(format!("({u},{v}) is not an edge")))?;
            in_tree[e] = true;
        }
        let forest = Graph::new(graph.n(), tree.iter().copied())?;
        if forest.edge_count() != tree.len()
            || !forest.is_forest()
            || forest.components().len() != graph.components().len()
        {
            return Err(Error::param("edge set is not a spanning forest"));
        }
        let cotree: Vec<usize> = (0..graph.edge_count()).filter(|&e| !in_tree[e]).collect();
        let (fact, size) = space_size(m, cotree.len(), budget)?;
        Ok(CoverSpace { graph, m, cotree, fact, size })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// Edge indices of the co-tree edges.
    pub fn cotree(&self) -> &[usize] {
        &self.cotree
    }

    fn perms_at(&self, mut index: u64) -> Vec<Perm> {
        let mut perms = vec![Perm::identity(self.m); self.cotree.len()];
        for slot in perms.iter_mut().rev() {
            *slot = Perm::unrank(self.m, index % self.fact);
            index /= self.fact;
        }
        perms
    }

    fn materialize(&self, perms: &[Perm]) -> FullCover {
        let mut sigma = vec![Perm::identity(self.m); self.graph.edge_count()];
        for (&e, p) in self.cotree.iter().zip(perms) {
            sigma[e] = p.clone();
        }
        FullCover::new(self.graph.clone(), self.m, sigma).expect("space covers are well formed")
    }

    /// The cover at a position of the enumeration order.
    pub fn cover_at(&self, index: u64) -> FullCover {
        assert!(index < self.size, "index {index} outside a space of {}", self.size);
        self.materialize(&self.perms_at(index))
    }

    fn cursor(&self, start: u64, end: u64) -> Cursor {
        let perms = self.perms_at(start.min(self.size.saturating_sub(1)));
        let mut tables = PermTables::new(self.m, &vec![Perm::identity(self.m); self.graph.edge_count()]);
        for (&e, p) in self.cotree.iter().zip(&perms) {
            tables.set(e, p);
        }
        Cursor { index: start, end, perms, tables }
    }

    pub fn iter(&self) -> CoverIter {
        CoverIter {
            space: self.clone(),
            cursor: self.cursor(0, self.size),
            filter: None,
        }
    }

    /// Covers whose coloring count equals `target`, in enumeration order.
    pub fn achieving(&self, target: Count) -> CoverIter {
        CoverIter {
            space: self.clone(),
            cursor: self.cursor(0, self.size),
            filter: Some((CountPlan::new(&self.graph), target)),
        }
    }

    /// Minimum over a contiguous block: `(min, first witness indices, total)`.
    fn scan_block(&self, start: u64, end: u64, limit: usize) -> (Count, Vec<u64>, u64) {
        let plan = CountPlan::new(&self.graph);
        let mut cursor = self.cursor(start, end);
        let mut best = Count::MAX;
        let mut found = Vec::new();
        let mut total = 0u64;
        while cursor.index < cursor.end {
            let c = plan.count(&cursor.tables, None);
            if c < best {
                best = c;
                found.clear();
                total = 0;
            }
            if c == best {
                total += 1;
                if found.len() < limit {
                    found.push(cursor.index);
                }
            }
            cursor.advance(self);
        }
        (best, found, total)
    }

    /// First cover (in enumeration order) without any coloring.
    pub fn find_uncolorable(&self) -> Option<FullCover> {
        let plan = CountPlan::new(&self.graph);
        let mut cursor = self.cursor(0, self.size);
        while cursor.index < cursor.end {
            if !plan.any(&cursor.tables) {
                return Some(self.materialize(&cursor.perms));
            }
            cursor.advance(self);
        }
        None
    }

    /// Minimum coloring count over the whole space.
    pub fn minimize(&self, opts: &DpOptions) -> Result<DpSearchResult> {
        let jobs = opts.jobs.max(1);
        let blocks: Vec<(u64, u64)> = if jobs == 1 {
            vec![(0, self.size)]
        } else {
            let parts = (jobs as u64 * 8).min(self.size).max(1);
            (0..parts).map(|i| (self.size * i / parts, self.size * (i + 1) / parts)).collect()
        };
        let scans: Vec<(Count, Vec<u64>, u64)> = if jobs == 1 {
            blocks.iter().map(|&(a, b)| self.scan_block(a, b, opts.witness_limit)).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::param(format!("cannot start {jobs} workers: {e}")))?;
            pool.install(|| {
                blocks
                    .par_iter()
                    .map(|&(a, b)| self.scan_block(a, b, opts.witness_limit))
                    .collect()
            })
        };
        let min_count = scans.iter().map(|s| s.0).min().unwrap_or(Count::MAX);
        let mut indices = Vec::new();
        let mut witness_total = 0;
        for (best, found, total) in scans {
            if best == min_count {
                witness_total += total;
                indices.extend(found);
            }
        }
        indices.truncate(opts.witness_limit);
        Ok(DpSearchResult {
            m: self.m,
            min_count,
            witnesses: indices.into_iter().map(|i| self.cover_at(i)).collect(),
            witness_total,
            covers_examined: self.size,
        })
    }
}

struct Cursor {
    index: u64,
    end: u64,
    perms: Vec<Perm>,
    tables: PermTables,
}

impl Cursor {
    /// Odometer step: the last co-tree permutation moves fastest.
    fn advance(&mut self, space: &CoverSpace) {
        self.index += 1;
        if self.index >= self.end {
            return;
        }
        for slot in (0..self.perms.len()).rev() {
            let carried = !self.perms[slot].advance();
            self.tables.set(space.cotree[slot], &self.perms[slot]);
            if !carried {
                break;
            }
        }
    }
}

/// Stream of gauge-fixed covers, optionally filtered by coloring count.
pub struct CoverIter {
    space: CoverSpace,
    cursor: Cursor,
    filter: Option<(CountPlan, Count)>,
}

impl Iterator for CoverIter {
    type Item = FullCover;

    fn next(&mut self) -> Option<FullCover> {
        while self.cursor.index < self.cursor.end {
            let keep = match &self.filter {
                None => true,
                Some((plan, target)) => plan.count(&self.cursor.tables, None) == *target,
            };
            let cover = keep.then(|| self.space.materialize(&self.cursor.perms));
            self.cursor.advance(&self.space);
            if cover.is_some() {
                return cover;
            }
        }
        None
    }
}

/// All gauge-fixed full covers of `g`, relative to its breadth-first
/// spanning forest.
pub fn enumerate_covers(g: &Graph, m: usize, budget: u64) -> Result<CoverIter> {
    Ok(CoverSpace::new(Arc::new(g.clone()), m, budget)?.iter())
}

/// `P_DP(g, m)` over full covers, with minimizing witnesses.
pub fn dp_color_value(g: &Graph, m: usize, opts: &DpOptions) -> Result<DpSearchResult> {
    CoverSpace::new(Arc::new(g.clone()), m, opts.budget)?.minimize(opts)
}

/// Gauge-fixed covers whose coloring count equals `target`.
pub fn covers_achieving(g: &Graph, m: usize, target: Count, budget: u64) -> Result<CoverIter> {
    Ok(CoverSpace::new(Arc::new(g.clone()), m, budget)?.achieving(target))
}

/// Least `m` for which every full `m`-fold cover admits a coloring.
pub fn dp_chromatic_number(g: &Graph, m_max: usize, budget: u64) -> Result<usize> {
    let graph = Arc::new(g.clone());
    for m in 1..=m_max {
        if CoverSpace::new(graph.clone(), m, budget)?.find_uncolorable().is_none() {
            return Ok(m);
        }
    }
    Err(Error::capacity("DP chromatic number search", format!("m > {m_max}"), m_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_polynomial;
    use crate::cover::find_canonical_labeling;
    use crate::graph::{make_family, Family};

    fn fam(f: Family) -> Graph {
        make_family(f).unwrap()
    }

    fn value(f: Family, m: usize) -> Count {
        dp_color_value(&fam(f), m, &DpOptions::default()).unwrap().min_count
    }

    #[test]
    fn space_sizes() {
        assert_eq!(enumerate_covers(&fam(Family::Cycle(4)), 3, DEFAULT_BUDGET).unwrap().count(), 6);
        assert_eq!(enumerate_covers(&fam(Family::Theta(1, 2, 2)), 3, DEFAULT_BUDGET).unwrap().count(), 36);
        assert_eq!(enumerate_covers(&fam(Family::Wheel(4)), 3, DEFAULT_BUDGET).unwrap().count(), 1296);
        let err = enumerate_covers(&fam(Family::Wheel(4)), 4, 1000).err().unwrap();
        assert!(matches!(&err, Error::Capacity { required, .. } if required.contains("331776")));
        let huge = enumerate_covers(&fam(Family::Complete(8)), 20, DEFAULT_BUDGET).err().unwrap();
        assert!(matches!(huge, Error::Capacity { .. }));
    }

    #[test]
    fn enumeration_order_and_unranking_agree() {
        let g = Arc::new(fam(Family::Theta(1, 2, 2)));
        let space = CoverSpace::new(g, 3, DEFAULT_BUDGET).unwrap();
        let listed: Vec<FullCover> = space.iter().collect();
        for (i, h) in listed.iter().enumerate() {
            assert_eq!(h, &space.cover_at(i as u64));
        }
        assert!(listed[0].is_identity());
        let ranks: Vec<Vec<u64>> = listed
            .iter()
            .map(|h| space.cotree().iter().map(|&e| h.edge_perm(e).rank()).collect())
            .collect();
        assert!(ranks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cycle_and_tree_values() {
        assert_eq!(value(Family::Cycle(5), 3), 30);
        assert_eq!(value(Family::Cycle(4), 2), 0);
        assert_eq!(value(Family::Path(3), 3), 12);
        assert_eq!(value(Family::Cycle(3), 1), 0);
    }

    #[test]
    fn result_is_independent_of_workers() {
        let g = fam(Family::Wheel(4));
        let one = dp_color_value(&g, 3, &DpOptions::default()).unwrap();
        let four = dp_color_value(&g, 3, &DpOptions { jobs: 4, ..DpOptions::default() }).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.covers_examined, 1296);
        assert!(one.witnesses.iter().all(|h| h.count_colorings() == one.min_count));
        assert_eq!(one.witnesses.len() as u64, one.witness_total.min(256));
    }

    #[test]
    fn achieving_target_on_cycles() {
        let c3 = fam(Family::Cycle(3));
        let hits: Vec<FullCover> = covers_achieving(&c3, 3, 6, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].is_identity());
        let c4 = fam(Family::Cycle(4));
        let hits: Vec<FullCover> = covers_achieving(&c4, 3, 18, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(hits.len(), 1);
        assert!(find_canonical_labeling(&hits[0]).is_some());
    }

    #[test]
    fn dp_chromatic_numbers() {
        assert_eq!(dp_chromatic_number(&fam(Family::Star(4)), 5, DEFAULT_BUDGET).unwrap(), 2);
        assert_eq!(dp_chromatic_number(&fam(Family::Cycle(4)), 5, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(dp_chromatic_number(&fam(Family::Cycle(3)), 5, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(dp_chromatic_number(&Graph::empty(2).unwrap(), 5, DEFAULT_BUDGET).unwrap(), 1);
        assert!(matches!(
            dp_chromatic_number(&fam(Family::Complete(4)), 3, DEFAULT_BUDGET),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn never_exceeds_chromatic_polynomial() {
        for f in [Family::Wheel(4), Family::Theta(1, 2, 3), Family::Complete(4), Family::CompleteBipartite(2, 3)] {
            let g = fam(f);
            let p = chromatic_polynomial(&g).unwrap();
            for m in 1..=3 {
                let v = dp_color_value(&g, m, &DpOptions::default()).unwrap().min_count;
                assert!(num::bigint::BigInt::from(v) <= p.eval(m as u64), "{f} m={m}");
            }
        }
    }

    #[test]
    fn disconnected_graphs_use_a_forest() {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let r = dp_color_value(&g, 3, &DpOptions::default()).unwrap();
        assert_eq!(r.covers_examined, 36);
        assert_eq!(r.min_count, 36);
        assert_eq!(r.witness_total, 1);
    }
}
