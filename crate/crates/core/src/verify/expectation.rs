use std::sync::Arc;

use num::{BigInt, BigRational, One};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{describe, fan_out, run_timed, CheckReport, Instance};
use crate::cover::{factorial, CountPlan, FullCover, Perm, PermTables};
use crate::error::{Error, Result};
use crate::graph::{make_family, Family, Graph};
use crate::Count;

/// Largest number of matching tuples averaged in one instance.
const TUPLE_CAP: u64 = 15_000;

fn ratio(num: Count, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn random_perm(rng: &mut ChaCha8Rng, m: usize) -> Perm {
    let mut v: Vec<usize> = (0..m).collect();
    v.shuffle(rng);
    Perm::from_images(&v).expect("shuffled range")
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("valid pairs")
}

fn random_cover(rng: &mut ChaCha8Rng, g: &Graph, m: usize) -> FullCover {
    let sigma = (0..g.edge_count()).map(|_| random_perm(rng, m)).collect();
    FullCover::new(Arc::new(g.clone()), m, sigma).expect("valid cover")
}

/// Cover of `bigger` agreeing with `h` on `h`'s edges (vertex `v` of `h` is
/// vertex `map[v]` of `bigger`) and carrying the identity elsewhere.
fn embed(h: &FullCover, bigger: &Graph, map: &[usize]) -> FullCover {
    let mut sigma = vec![Perm::identity(h.m()); bigger.edge_count()];
    for (&(u, v), p) in h.graph().edges().iter().zip(h.permutations()) {
        let (a, b) = (map[u], map[v]);
        let e = bigger.edge_index(a, b).expect("embedded edge");
        sigma[e] = if a < b { p.clone() } else { p.inverse() };
    }
    FullCover::new(Arc::new(bigger.clone()), h.m(), sigma).expect("valid cover")
}

/// Sum of coloring counts over every assignment of permutations to the
/// listed edges of `base` (oriented as given), all others fixed.
fn sum_over_matchings(base: &FullCover, free: &[(usize, usize)]) -> (Count, u64) {
    let g = base.graph();
    let m = base.m();
    let plan = CountPlan::new(g);
    let mut tables = PermTables::new(m, base.permutations());
    let edges: Vec<(usize, bool)> = free
        .iter()
        .map(|&(a, b)| (g.edge_index(a, b).expect("free edge"), a < b))
        .collect();
    let mut perms = vec![Perm::identity(m); free.len()];
    let set = |tables: &mut PermTables, k: usize, p: &Perm| {
        let (e, forward) = edges[k];
        tables.set(e, &if forward { p.clone() } else { p.inverse() });
    };
    for (k, p) in perms.iter().enumerate() {
        set(&mut tables, k, p);
    }
    let mut total: Count = 0;
    let mut tuples = 0u64;
    loop {
        total += plan.count(&tables, None);
        tuples += 1;
        let mut k = free.len();
        loop {
            if k == 0 {
                return (total, tuples);
            }
            k -= 1;
            let carried = !perms[k].advance();
            set(&mut tables, k, &perms[k]);
            if !carried {
                break;
            }
        }
    }
}

/// Average over all matchings on a new edge `uv`; claim `count (m-1)/m`.
fn edge_instance(label: &str, h: &FullCover, u: usize, v: usize) -> Instance {
    let m = h.m();
    let g2 = h.graph().with_edge(u, v).expect("non-edge");
    let map: Vec<usize> = (0..h.graph().n()).collect();
    let base = embed(h, &g2, &map);
    let (sum, tuples) = sum_over_matchings(&base, &[(u, v)]);
    let avg = ratio(sum, tuples);
    let claim = ratio(h.count_colorings(), 1) * frac(m as i64 - 1, m as i64);
    Instance {
        description: format!("{label} edge {u}-{v} added to {} m={m}", describe(h.graph())),
        claim: format!("count*(m-1)/m = {claim}"),
        computed: avg.to_string(),
        pass: avg == claim,
    }
}

/// `h` covers `G - w`; average over all matchings at the new vertex `w` of
/// `g`; claim `m (1-1/m)^d count`.
fn vertex_instance(label: &str, g: &Graph, w: usize, h: &FullCover) -> Instance {
    let m = h.m();
    let map: Vec<usize> = (0..h.graph().n()).map(|v| if v < w { v } else { v + 1 }).collect();
    let base = embed(h, g, &map);
    let free: Vec<(usize, usize)> = g.neighbors(w).map(|x| (w, x)).collect();
    let d = free.len();
    let (sum, tuples) = sum_over_matchings(&base, &free);
    let avg = ratio(sum, tuples);
    let mm = frac(m as i64, 1);
    let factor = &mm * num::pow(BigRational::one() - mm.recip(), d);
    let claim = ratio(h.count_colorings(), 1) * &factor;
    Instance {
        description: format!("{label} vertex {w} (d={d}) added to {} m={m}", describe(h.graph())),
        claim: format!("m(1-1/m)^d*count = {claim}"),
        computed: avg.to_string(),
        pass: avg == claim,
    }
}

/// Average over all matchings along a new ear `u w_1 .. w_l v`; claim
/// `count (m-1)^(l+1)/m`.
fn ear_instance(label: &str, h: &FullCover, u: usize, v: usize, l: usize) -> Instance {
    let m = h.m();
    let n = h.graph().n();
    let mut path = vec![u];
    path.extend(n..n + l);
    path.push(v);
    let mut edges = h.graph().edges().to_vec();
    edges.extend(path.windows(2).map(|w| (w[0], w[1])));
    let g2 = Graph::new(n + l, edges).expect("ear graph");
    let map: Vec<usize> = (0..n).collect();
    let base = embed(h, &g2, &map);
    let free: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let (sum, tuples) = sum_over_matchings(&base, &free);
    let avg = ratio(sum, tuples);
    let claim = ratio(h.count_colorings(), 1) * num::pow(frac(m as i64 - 1, 1), l + 1) / frac(m as i64, 1);
    Instance {
        description: format!("{label} ear {u}~{v} l={l} added to {} m={m}", describe(h.graph())),
        claim: format!("count*(m-1)^(l+1)/m = {claim}"),
        computed: avg.to_string(),
        pass: avg == claim,
    }
}

fn fits(m: usize, k: usize) -> bool {
    let f = factorial(m).unwrap_or(u64::MAX);
    (0..k).try_fold(1u64, |acc, _| acc.checked_mul(f)).is_some_and(|t| t <= TUPLE_CAP)
}

/// Three randomized instances per trial, one per identity.
fn trial(seed: u64, t: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    let label = format!("trial {t}");
    let mut out = Vec::new();

    // edge addition: a graph with at least one non-edge
    let n = rng.gen_range(2..=5);
    let m = rng.gen_range(1..=4);
    let mut g = random_graph(&mut rng, n);
    if g.is_complete() {
        let (a, b) = g.edges()[rng.gen_range(0..g.edge_count())];
        g = g.without_edge(a, b).expect("edge exists");
    }
    let non_edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    let (u, v) = non_edges[rng.gen_range(0..non_edges.len())];
    let h = random_cover(&mut rng, &g, m);
    out.push(edge_instance(&label, &h, u, v));

    // vertex addition: choose G and w, cover G - w at random
    let n = rng.gen_range(2..=5);
    let g = random_graph(&mut rng, n);
    let w = rng.gen_range(0..n);
    let mut m = rng.gen_range(1..=4);
    while !fits(m, g.degree(w)) {
        m -= 1;
    }
    let h = random_cover(&mut rng, &g.without_vertex(w).expect("vertex exists"), m);
    out.push(vertex_instance(&label, &g, w, &h));

    // ear addition
    let n = rng.gen_range(2..=4);
    let g = random_graph(&mut rng, n);
    let u = rng.gen_range(0..n);
    let v = (u + rng.gen_range(1..n)) % n;
    let l = rng.gen_range(1..=2);
    let mut m = rng.gen_range(1..=4);
    while !fits(m, l + 1) {
        m -= 1;
    }
    let h = random_cover(&mut rng, &g, m);
    out.push(ear_instance(&label, &h, u, v, l));
    out
}

/// Exact averages over all matchings for the edge-addition factor
/// `(m-1)/m`, the vertex-addition factor `m(1-1/m)^d` and the ear factor
/// `(m-1)^(l+1)/m`, on `trials` randomized instances of each kind plus
/// three fixed anchors.
pub fn check_expectation_identities(trials: u64, seed: u64, jobs: usize) -> Result<CheckReport> {
    if trials == 0 {
        return Err(Error::param("at least one trial is needed"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("expectation");
        let p3 = Arc::new(make_family(Family::Path(3))?);
        report.instances.push(edge_instance("anchor", &FullCover::identity(p3, 3)?, 0, 2));
        let c3 = make_family(Family::Cycle(3))?;
        let p2 = Arc::new(make_family(Family::Path(2))?);
        report.instances.push(vertex_instance("anchor", &c3, 2, &FullCover::identity(p2, 3)?));
        report.instances.push(ear_instance("anchor", &FullCover::identity(Arc::new(c3), 3)?, 0, 1, 1));
        let ids: Vec<u64> = (0..trials).collect();
        for batch in fan_out(jobs, &ids, |&t| trial(seed, t)) {
            report.instances.extend(batch);
        }
        Ok(report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        let p3 = Arc::new(make_family(Family::Path(3)).unwrap());
        let i = edge_instance("a", &FullCover::identity(p3, 3).unwrap(), 0, 2);
        // P_3 has 12 colorings; 12 * 2/3 = 8
        assert!(i.pass && i.computed == "8", "{i:?}");
        let c3 = make_family(Family::Cycle(3)).unwrap();
        let p2 = Arc::new(make_family(Family::Path(2)).unwrap());
        let i = vertex_instance("a", &c3, 2, &FullCover::identity(p2, 3).unwrap());
        // 6 colorings of P_2, factor 3 (2/3)^2 = 4/3
        assert!(i.pass && i.computed == "8", "{i:?}");
        let i = ear_instance("a", &FullCover::identity(Arc::new(c3), 3).unwrap(), 0, 1, 1);
        assert!(i.pass && i.computed == "8", "{i:?}");
    }

    #[test]
    fn trials_are_deterministic_and_hold() {
        let a = check_expectation_identities(12, 7, 1).unwrap();
        let b = check_expectation_identities(12, 7, 2).unwrap();
        assert_eq!(a.to_records(), b.to_records());
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.instances.len(), 3 + 36);
    }
}
