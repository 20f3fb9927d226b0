use std::sync::Arc;

use num::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{describe, run_timed, CheckReport};
use crate::chromatic::{chromatic_polynomial, closed_form_polynomial, ClosedFormFamily};
use crate::cover::{factorial, find_canonical_labeling, FullCover, GaugeRelabeling, Perm};
use crate::dp::{dp_color_value, DpOptions};
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, make_family, Family, Graph, GraphClass};

/// Walks every full `m`-fold cover of `C_n` given as oriented steps
/// `tau_i: L(i) -> L(i+1 mod n)`, each ranging over all permutations in
/// lexicographic order. For each cover `visit` receives the step ranks, the
/// coloring count (trace of the product of the matrices `[tau(a) != b]`)
/// and the number of fixed points of the holonomy `tau_{n-1} .. tau_0`.
pub fn cycle_cover_counts(n: usize, m: usize, mut visit: impl FnMut(&[u64], u128, usize)) -> Result<()> {
    if n < 3 || !(1..=8).contains(&m) {
        return Err(Error::param("transfer counts need n >= 3 and 1 <= m <= 8"));
    }
    let fact = factorial(m).expect("small fold");
    let perms: Vec<Perm> = (0..fact).map(|r| Perm::unrank(m, r)).collect();
    let mats: Vec<Vec<u128>> = perms
        .iter()
        .map(|p| (0..m * m).map(|k| u128::from(p.apply(k / m) != k % m)).collect())
        .collect();
    struct Walk<'a, F> {
        n: usize,
        m: usize,
        perms: &'a [Perm],
        mats: &'a [Vec<u128>],
        ranks: Vec<u64>,
        visit: F,
    }
    fn go<F: FnMut(&[u64], u128, usize)>(w: &mut Walk<'_, F>, depth: usize, prefix: &[u128], hol: &Perm) {
        let m = w.m;
        for r in 0..w.perms.len() {
            w.ranks[depth] = r as u64;
            let a = &w.mats[r];
            let h = w.perms[r].compose(hol);
            if depth + 1 == w.n {
                let mut trace = 0u128;
                for x in 0..m {
                    for y in 0..m {
                        trace += prefix[x * m + y] * a[y * m + x];
                    }
                }
                (w.visit)(&w.ranks, trace, h.fixed_points());
            } else {
                let mut next = vec![0u128; m * m];
                for x in 0..m {
                    for y in 0..m {
                        let p = prefix[x * m + y];
                        if p != 0 {
                            for z in 0..m {
                                next[x * m + z] += p * a[y * m + z];
                            }
                        }
                    }
                }
                go(w, depth + 1, &next, &h);
            }
        }
    }
    let identity_matrix: Vec<u128> = (0..m * m).map(|k| u128::from(k / m == k % m)).collect();
    let mut w = Walk {
        n,
        m,
        perms: &perms,
        mats: &mats,
        ranks: vec![0; n],
        visit: &mut visit,
    };
    go(&mut w, 0, &identity_matrix, &Perm::identity(m));
    Ok(())
}

/// The cover of the cycle family graph given by oriented step ranks.
fn cycle_cover(g: &Arc<Graph>, m: usize, ranks: &[u64]) -> FullCover {
    let n = g.n();
    let mut sigma = vec![Perm::identity(m); n];
    for (i, &r) in ranks.iter().enumerate() {
        let step = Perm::unrank(m, r);
        let (a, b) = (i, (i + 1) % n);
        let e = g.edge_index(a, b).expect("cycle edge");
        sigma[e] = if a < b { step } else { step.inverse() };
    }
    FullCover::new(g.clone(), m, sigma).expect("valid cover")
}

fn random_pair(rng: &mut ChaCha8Rng) -> (FullCover, GaugeRelabeling) {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=4);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let g = Arc::new(Graph::new(n, edges).expect("valid pairs"));
    let mut perm = || {
        let mut v: Vec<usize> = (0..m).collect();
        v.shuffle(rng);
        Perm::from_images(&v).expect("shuffled range")
    };
    let sigma = (0..g.edge_count()).map(|_| perm()).collect();
    let pi = GaugeRelabeling { pi: (0..n).map(|_| perm()).collect() };
    (FullCover::new(g, m, sigma).expect("valid cover"), pi)
}

fn brute_force_colorings(g: &Graph, m: usize) -> u128 {
    let n = g.n() as u32;
    let m = m as u64;
    (0..m.pow(n))
        .filter(|&code| {
            let color = |v: usize| code / m.pow(v as u32) % m;
            g.edges().iter().all(|&(u, v)| color(u) != color(v))
        })
        .count() as u128
}

/// Gauge invariance, the cycle twist law over all full covers, closed forms
/// against deletion-contraction, deletion-contraction against brute force,
/// and worker-count independence of searches.
pub fn check_properties(pairs: usize, seed: u64, cycle_n_max: usize, opts: &DpOptions) -> Result<CheckReport> {
    if cycle_n_max > 7 {
        return Err(Error::param("twist law sweep needs cycle_n_max <= 7"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("properties");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut same_count, mut restores, mut bijects, mut canon_ok) = (0, 0, 0, 0);
        for _ in 0..pairs {
            let (h, pi) = random_pair(&mut rng);
            let moved = pi.apply(&h)?;
            same_count += usize::from(moved.count_colorings() == h.count_colorings());
            restores += usize::from(pi.inverse().apply(&moved)? == h);
            bijects += usize::from(h.colorings().iter().all(|c| moved.is_coloring(&pi.map_coloring(c))));
            let id = FullCover::identity(h.graph_arc().clone(), h.m())?;
            let disguised = pi.apply(&id)?;
            let p = chromatic_polynomial(h.graph())?.eval(h.m() as u64);
            canon_ok += usize::from(
                find_canonical_labeling(&disguised).is_some() && BigInt::from(disguised.count_colorings()) == p,
            );
        }
        report.expect_eq(format!("gauge relabeling preserves counts ({pairs} random pairs)"), pairs, same_count);
        report.expect_eq(format!("inverse relabeling restores the cover ({pairs} pairs)"), pairs, restores);
        report.expect_eq(format!("relabeled colorings stay colorings ({pairs} pairs)"), pairs, bijects);
        report.expect_eq(
            format!("relabeled identity covers: canonical labeling found, count P(G,m) ({pairs} pairs)"),
            pairs,
            canon_ok,
        );

        for n in 3..=cycle_n_max {
            let g = Arc::new(make_family(Family::Cycle(n))?);
            for m in 1..=4usize {
                let f = factorial(m).expect("small");
                let total = (0..n).fold(1u64, |a, _| a.saturating_mul(f));
                let stride = (total / 20_000).max(1);
                let (mut visited, mut law_bad, mut sampled, mut oracle_bad) = (0u64, 0u64, 0u64, 0u64);
                let base = (m as i128 - 1).pow(n as u32);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                cycle_cover_counts(n, m, |ranks, count, fixed| {
                    if count as i128 != base + sign * (fixed as i128 - 1) {
                        law_bad += 1;
                    }
                    if visited % stride == 0 {
                        sampled += 1;
                        if cycle_cover(&g, m, ranks).count_colorings() != count {
                            oracle_bad += 1;
                        }
                    }
                    visited += 1;
                })?;
                report.check(
                    format!("C_{n} m={m} twist law (m-1)^n + (-1)^n (f-1) on all full covers"),
                    format!("{total} covers"),
                    format!("{} hold", visited - law_bad),
                    law_bad == 0 && visited == total,
                );
                report.check(
                    format!("C_{n} m={m} transfer count agrees with backtracking"),
                    format!("{sampled} covers (every {stride})"),
                    format!("{} agree", sampled - oracle_bad),
                    oracle_bad == 0,
                );
            }
        }

        closed_forms(&mut report)?;

        let mut bf_bad = Vec::new();
        let mut bf_total = 0;
        for n in 1..=5 {
            for g in enumerate_graphs(n, GraphClass::Connected)? {
                let p = chromatic_polynomial(&g)?;
                for m in 0..=4 {
                    bf_total += 1;
                    if p.eval(m as u64) != BigInt::from(brute_force_colorings(&g, m)) {
                        bf_bad.push(format!("{} m={m}", describe(&g)));
                    }
                }
                if !p.signs_alternate() || p.degree() != Some(n) || p.coeff(0) != BigInt::from(0) {
                    bf_bad.push(format!("{} coefficients", describe(&g)));
                }
            }
        }
        report.check(
            "deletion-contraction agrees with brute-force coloring counts (connected n<=5, m<=4)",
            format!("{bf_total} values"),
            if bf_bad.is_empty() { "all agree".into() } else { bf_bad.join(" ") },
            bf_bad.is_empty(),
        );

        let w4 = make_family(Family::Wheel(4))?;
        let one = dp_color_value(&w4, 3, &DpOptions { jobs: 1, ..*opts })?;
        let again = dp_color_value(&w4, 3, &DpOptions { jobs: 1, ..*opts })?;
        let many = dp_color_value(&w4, 3, &DpOptions { jobs: 3, ..*opts })?;
        report.check(
            "W_4 m=3 search result identical across runs and worker counts",
            format!("min {} with {} witnesses", one.min_count, one.witness_total),
            format!("min {} with {} witnesses", many.min_count, many.witness_total),
            one == again && one == many,
        );
        Ok(report)
    })
}

/// Closed forms against deletion-contraction, as polynomials and at
/// `m = 0..=6`, for family instances with at most 8 vertices.
fn closed_forms(report: &mut CheckReport) -> Result<()> {
    let mut cases: Vec<(String, Graph, ClosedFormFamily, Vec<usize>)> = Vec::new();
    for n in 3..=7 {
        cases.push((format!("W_{n}"), make_family(Family::Wheel(n))?, ClosedFormFamily::Wheel, vec![n]));
    }
    for n in 3..=8 {
        cases.push((format!("C_{n}"), make_family(Family::Cycle(n))?, ClosedFormFamily::Cycle, vec![n]));
    }
    for n in 1..=7 {
        for g in enumerate_graphs(n, GraphClass::Tree)? {
            cases.push((format!("tree {}", describe(&g)), g, ClosedFormFamily::Tree, vec![n]));
        }
    }
    cases.push(("P_8".into(), make_family(Family::Path(8))?, ClosedFormFamily::Tree, vec![8]));
    cases.push(("K_1,7".into(), make_family(Family::Star(8))?, ClosedFormFamily::Tree, vec![8]));
    for n in 3..=7 {
        for g in enumerate_graphs(n, GraphClass::Unicyclic)? {
            let girth = g.cycles()[0].len();
            cases.push((format!("unicyclic {}", describe(&g)), g, ClosedFormFamily::Unicyclic, vec![n, girth]));
        }
    }
    for r in 1..=7 {
        for s in 2..=7 {
            for t in s..=7 {
                if r + s + t - 1 <= 8 {
                    let g = make_family(Family::Theta(r, s, t))?;
                    cases.push((format!("theta({r},{s},{t})"), g, ClosedFormFamily::Theta, vec![r, s, t]));
                }
            }
        }
    }
    for family in [
        ClosedFormFamily::Wheel,
        ClosedFormFamily::Cycle,
        ClosedFormFamily::Tree,
        ClosedFormFamily::Unicyclic,
        ClosedFormFamily::Theta,
    ] {
        let mut bad = Vec::new();
        let mut count = 0;
        for (name, g, _, params) in cases.iter().filter(|c| c.2 == family) {
            count += 1;
            let dc = chromatic_polynomial(g)?;
            let cf = closed_form_polynomial(family, params)?;
            let values_agree = (0..=6u64).all(|m| dc.eval(m) == cf.eval(m));
            if dc != cf || !values_agree {
                bad.push(name.clone());
            }
        }
        report.check(
            format!("{family} closed form equals deletion-contraction (m=0..6)"),
            format!("{count} instances"),
            if bad.is_empty() { "all agree".into() } else { bad.join(" ") },
            bad.is_empty(),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transfer_counts_on_triangle() {
        let mut hist = std::collections::BTreeMap::new();
        cycle_cover_counts(3, 3, |_, count, fixed| {
            *hist.entry((fixed, count)).or_insert(0u32) += 1;
        })
        .unwrap();
        // 216 covers; holonomy identity (f=3) gives 6, transpositions 8, 3-cycles 9
        assert_eq!(hist.values().sum::<u32>(), 216);
        assert_eq!(hist.keys().copied().collect::<Vec<_>>(), vec![(0, 9), (1, 8), (3, 6)]);
    }

    #[test]
    fn small_property_run() {
        let r = check_properties(50, 1, 4, &DpOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
