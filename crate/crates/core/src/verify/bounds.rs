use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use super::{big_pow, describe, run_timed, CheckReport, DpCache};
use crate::cover::FullCover;
use crate::dp::{dp_color_value, DpOptions};
use crate::error::{Error, Result};
use crate::graph::{ear_decomposition, enumerate_graphs, is_isomorphic, make_family, Family, Graph, GraphClass};

fn big(c: u128) -> BigInt {
    BigInt::from(c)
}

fn names(gs: &[&Graph]) -> String {
    if gs.is_empty() {
        "none".into()
    } else {
        gs.iter().map(|g| describe(g)).collect::<Vec<_>>().join(" ")
    }
}

fn is_cycle_graph(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && g.edge_count() == g.n() && (0..g.n()).all(|v| g.degree(v) == 2)
}

/// Chromatic polynomial bounds for connected and 2-connected graphs:
/// `P(G,m) <= m(m-1)^(n-1)` (equality for `m >= 3` iff tree) and, for
/// 2-connected `G` and `m >= 3`, `P(G,m) <= (m-1)^n + (-1)^n (m-1)` with
/// equality iff `G` is the cycle, or `K(2,3)` at `n = 5`, `m = 3`.
pub fn check_chromatic_bounds(n_max: usize, m_max: usize) -> Result<CheckReport> {
    if n_max > 6 || m_max > 5 {
        return Err(Error::param("chromatic bounds need n_max <= 6 and m_max <= 5"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("chromatic-bounds");
        let k23 = make_family(Family::CompleteBipartite(2, 3))?;
        for n in 1..=n_max {
            let graphs: Vec<Graph> = enumerate_graphs(n, GraphClass::Connected)?.collect();
            let polys = graphs.iter().map(crate::chromatic_polynomial).collect::<Result<Vec<_>>>()?;
            for m in 1..=m_max {
                let values: Vec<BigInt> = polys.iter().map(|p| p.eval(m as u64)).collect();
                let oracle_misses: Vec<&Graph> = graphs
                    .iter()
                    .zip(&values)
                    .filter(|(g, v)| {
                        let h = FullCover::identity(Arc::new((*g).clone()), m).expect("valid fold");
                        big(h.count_colorings()) != **v
                    })
                    .map(|(g, _)| g)
                    .collect();
                report.check(
                    format!("n={n} m={m} P(G,m) agrees with backtracking count"),
                    format!("{} graphs", graphs.len()),
                    names(&oracle_misses),
                    oracle_misses.is_empty(),
                );
                let bound = BigInt::from(m) * big_pow(m as i64 - 1, n - 1);
                let over: Vec<&Graph> =
                    graphs.iter().zip(&values).filter(|(_, v)| **v > bound).map(|(g, _)| g).collect();
                report.check(
                    format!("n={n} m={m} connected P(G,m) <= m(m-1)^(n-1)"),
                    format!("<= {bound}"),
                    format!("violations: {}", names(&over)),
                    over.is_empty(),
                );
                let equal: Vec<&Graph> = graphs.iter().zip(&values).filter(|(_, v)| **v == bound).map(|(g, _)| g).collect();
                let trees_missing: Vec<&Graph> =
                    graphs.iter().filter(|g| g.is_tree()).filter(|g| !equal.contains(g)).collect();
                report.check(
                    format!("n={n} m={m} tree => equality"),
                    "every tree",
                    format!("missing: {}", names(&trees_missing)),
                    trees_missing.is_empty(),
                );
                let non_trees: Vec<&Graph> = equal.iter().copied().filter(|g| !g.is_tree()).collect();
                if m >= 3 {
                    report.check(
                        format!("n={n} m={m} equality => tree"),
                        "no non-tree at equality",
                        format!("non-trees: {}", names(&non_trees)),
                        non_trees.is_empty(),
                    );
                } else {
                    report.check(
                        format!("n={n} m={m} observed equality set (no claim below m=3)"),
                        "report",
                        format!("{} trees, {} non-trees", equal.len() - non_trees.len(), non_trees.len()),
                        true,
                    );
                }
            }
            if n < 3 {
                continue;
            }
            let two: Vec<(&Graph, &crate::IntPolynomial)> =
                graphs.iter().zip(&polys).filter(|(g, _)| g.is_two_connected()).collect();
            for m in 3..=m_max {
                let bound = big_pow(m as i64 - 1, n) + big_pow(-1, n) * BigInt::from(m - 1);
                let values: Vec<(&Graph, BigInt)> = two.iter().map(|(g, p)| (*g, p.eval(m as u64))).collect();
                let over: Vec<&Graph> = values.iter().filter(|(_, v)| *v > bound).map(|(g, _)| *g).collect();
                report.check(
                    format!("n={n} m={m} 2-connected P(G,m) <= (m-1)^n+(-1)^n(m-1)"),
                    format!("<= {bound} on {} graphs", values.len()),
                    format!("violations: {}", names(&over)),
                    over.is_empty(),
                );
                let mut flagged = Vec::new();
                let mut unexpected = Vec::new();
                for (g, v) in &values {
                    if *v != bound {
                        continue;
                    }
                    if is_cycle_graph(g) {
                        flagged.push(format!("C_{n}"));
                    } else if n == 5 && m == 3 && is_isomorphic(g, &k23)? {
                        flagged.push("K(2,3)".to_string());
                    } else {
                        unexpected.push(*g);
                    }
                }
                report.check(
                    format!("n={n} m={m} 2-connected equality => C_n or K(2,3) at (5,3)"),
                    "no other graph at equality",
                    format!("flagged: {} others: {}", flagged.join(" "), names(&unexpected)),
                    unexpected.is_empty(),
                );
                let cycle_eq = values.iter().any(|(g, v)| is_cycle_graph(g) && *v == bound);
                report.check(format!("C_{n} m={m} equality"), bound.clone(), if cycle_eq { bound.clone() } else { BigInt::zero() }, cycle_eq);
                if n == 5 && m == 3 {
                    let v = crate::chromatic_polynomial(&k23)?.eval(3u64);
                    report.expect_eq("K(2,3) m=3 equality", bound.clone(), v);
                }
            }
        }
        Ok(report)
    })
}

/// The odd-cycle closed form `(m-1)^n - (m-1)` (all `m`) and the even-cycle
/// form `(m-1)^n - 1` (`m >= 2`) for the DP color function of `C_n`.
pub fn cycle_dp_closed_form(n: usize, m: usize) -> BigInt {
    if n % 2 == 1 {
        big_pow(m as i64 - 1, n) - BigInt::from(m as i64 - 1)
    } else {
        big_pow(m as i64 - 1, n) - 1
    }
}

/// Exhaustive DP color values of cycles against their closed forms.
pub fn check_cycle_dp(n_max: usize, m_max: usize, opts: &DpOptions) -> Result<CheckReport> {
    if n_max > 7 || m_max > 4 {
        return Err(Error::param("cycle suite needs n_max <= 7 and m_max <= 4"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("cycles");
        for n in 3..=n_max {
            let g = make_family(Family::Cycle(n))?;
            for m in 1..=m_max {
                if n % 2 == 0 && m < 2 {
                    continue;
                }
                let r = dp_color_value(&g, m, opts)?;
                report.expect_eq(format!("C_{n} m={m}"), cycle_dp_closed_form(n, m), big(r.min_count));
            }
        }
        Ok(report)
    })
}

/// `P_DP(G,m) <= m(m-1)^(n-1)` for connected graphs with equality exactly
/// for trees; strictness for `m >= max(2, chi_DP)` under edge addition;
/// the edge-addition factor `(m-1)/m` and the vertex-deletion factor
/// `m(1-1/m)^d`.
pub fn check_tree_bound(tree_n_max: usize, graph_n_max: usize, m_max: usize, opts: &DpOptions) -> Result<CheckReport> {
    if tree_n_max > 7 || graph_n_max > 5 || m_max > 4 {
        return Err(Error::param("tree suite needs tree_n_max <= 7, graph_n_max <= 5, m_max <= 4"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("tree-bound");
        let cache = DpCache::new(*opts);
        for n in 1..=tree_n_max {
            let trees: Vec<Graph> = enumerate_graphs(n, GraphClass::Tree)?.collect();
            for m in 1..=m_max {
                let bound = BigInt::from(m) * big_pow(m as i64 - 1, n - 1);
                let mut misses = Vec::new();
                for t in &trees {
                    let r = dp_color_value(t, m, opts)?;
                    if big(r.min_count) != bound || r.covers_examined != 1 {
                        misses.push(t);
                    }
                }
                report.check(
                    format!("trees n={n} m={m} P_DP = m(m-1)^(n-1)"),
                    format!("{bound} on {} trees", trees.len()),
                    format!("misses: {}", names(&misses)),
                    misses.is_empty(),
                );
            }
        }
        for n in 1..=graph_n_max {
            let graphs: Vec<Graph> = enumerate_graphs(n, GraphClass::Connected)?.collect();
            for m in 1..=m_max {
                let bound = BigInt::from(m) * big_pow(m as i64 - 1, n - 1);
                let mut strict_total = 0;
                let mut above_chi = 0;
                let mut bad = Vec::new();
                let mut equal_non_trees = Vec::new();
                for g in graphs.iter().filter(|g| !g.is_tree()) {
                    let v = big(cache.value(g, m)?);
                    if v > bound {
                        bad.push(g);
                    }
                    if v == bound {
                        equal_non_trees.push(g);
                    }
                    strict_total += 1;
                    if m >= 2 && v > BigInt::zero() {
                        above_chi += 1;
                    }
                }
                if m >= 2 {
                    report.check(
                        format!("non-trees n={n} m={m} strict P_DP < m(m-1)^(n-1)"),
                        format!("< {bound} on {strict_total} graphs ({above_chi} with m >= chi_DP)"),
                        format!("not strict: {}", names(&equal_non_trees)),
                        bad.is_empty() && equal_non_trees.is_empty(),
                    );
                } else {
                    report.check(
                        format!("non-trees n={n} m={m} P_DP <= m(m-1)^(n-1)"),
                        format!("<= {bound}"),
                        format!("violations: {}", names(&bad)),
                        bad.is_empty(),
                    );
                }
            }
            for g in &graphs {
                monotonicity(&mut report, &cache, g, m_max)?;
            }
        }
        Ok(report)
    })
}

/// Edge addition and vertex deletion inequalities for one graph.
fn monotonicity(report: &mut CheckReport, cache: &DpCache, g: &Graph, m_max: usize) -> Result<()> {
    let label = describe(g);
    for m in 1..=m_max {
        let mm = BigRational::from_integer(BigInt::from(m));
        let base = BigRational::from_integer(big(cache.value(g, m)?));
        let mut ratio_bad = Vec::new();
        let mut strict_bad = Vec::new();
        let mut pairs = 0;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.has_edge(u, v) {
                    continue;
                }
                pairs += 1;
                let plus = BigRational::from_integer(big(cache.value(&g.with_edge(u, v)?, m)?));
                if plus > &base * (&mm - BigRational::one()) / &mm {
                    ratio_bad.push(format!("{u}-{v}"));
                }
                if m >= 2 && base > BigRational::zero() && plus >= base {
                    strict_bad.push(format!("{u}-{v}"));
                }
            }
        }
        if pairs > 0 {
            report.check(
                format!("{label} m={m} P_DP(G+uv) <= P_DP(G)(m-1)/m"),
                format!("{pairs} non-edges"),
                format!("violations: {}", if ratio_bad.is_empty() { "none".into() } else { ratio_bad.join(",") }),
                ratio_bad.is_empty(),
            );
            if m >= 2 && base > BigRational::zero() {
                report.check(
                    format!("{label} m={m} >= chi_DP: P_DP(G+uv) < P_DP(G)"),
                    format!("{pairs} non-edges"),
                    format!("not strict: {}", if strict_bad.is_empty() { "none".into() } else { strict_bad.join(",") }),
                    strict_bad.is_empty(),
                );
            }
        }
        let mut del_bad = Vec::new();
        for w in 0..g.n() {
            if g.n() == 1 {
                break;
            }
            let d = g.degree(w);
            let minus = BigRational::from_integer(big(cache.value(&g.without_vertex(w)?, m)?));
            let factor = &mm * num::pow(BigRational::from_integer(BigInt::from(1)) - mm.recip(), d);
            if base > factor * minus {
                del_bad.push(w.to_string());
            }
        }
        if g.n() > 1 {
            report.check(
                format!("{label} m={m} P_DP(G) <= m(1-1/m)^d P_DP(G-w)"),
                format!("{} vertices", g.n()),
                format!("violations: {}", if del_bad.is_empty() { "none".into() } else { del_bad.join(",") }),
                del_bad.is_empty(),
            );
        }
    }
    Ok(())
}

/// Graph spanned by `edges`, with its touched vertices renumbered in
/// increasing order.
fn compact(edges: &[(usize, usize)]) -> Result<Graph> {
    let mut vs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    vs.sort_unstable();
    vs.dedup();
    let idx = |x: usize| vs.binary_search(&x).unwrap();
    Graph::new(vs.len(), edges.iter().map(|&(a, b)| (idx(a), idx(b))))
}

/// Bounds on `P_DP` of 2-connected graphs from every cycle `G_0`:
/// `(m-1)^n - (m-1)^(n-l0+1)` for odd `l0`, `(m-1)^n - (m-1)^(n-l0)` for even
/// `l0`, each with equality claimed iff `G = G_0`; the `n`-level bounds
/// `(m-1)^n - (m-1)` (odd `n`) and `(m-1)^n - 1` (even `n`) with equality
/// claimed iff `G` is the cycle; and the ear-addition factor
/// `(m-1)^(l+1)/m` along an ear decomposition.
pub fn check_two_connected_bounds(n_max: usize, m_min: usize, m_max: usize, opts: &DpOptions) -> Result<CheckReport> {
    if n_max > 5 || m_max > 4 || m_min < 1 {
        return Err(Error::param("2-connected suite needs n_max <= 5, 1 <= m_min, m_max <= 4"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("two-connected");
        let cache = DpCache::new(*opts);
        for n in 3..=n_max {
            for g in enumerate_graphs(n, GraphClass::TwoConnected)? {
                let label = describe(&g);
                let is_cycle = is_cycle_graph(&g);
                let cycles = g.cycles();
                for m in m_min..=m_max {
                    let p = big(cache.value(&g, m)?);
                    let mut over = Vec::new();
                    let mut eq_not_iso = Vec::new();
                    let mut checked = 0;
                    for c in &cycles {
                        let l0 = c.len();
                        if l0 % 2 == 0 && m < 2 {
                            continue;
                        }
                        checked += 1;
                        let bound = if l0 % 2 == 1 {
                            big_pow(m as i64 - 1, n) - big_pow(m as i64 - 1, n - l0 + 1)
                        } else {
                            big_pow(m as i64 - 1, n) - big_pow(m as i64 - 1, n - l0)
                        };
                        if p > bound {
                            over.push(format!("{c:?}"));
                        }
                        if p == bound && !is_cycle {
                            eq_not_iso.push(format!("{c:?}"));
                        }
                    }
                    let list = |v: &Vec<String>| if v.is_empty() { "none".to_string() } else { v.join(" ") };
                    report.check(
                        format!("{label} m={m} P_DP <= cycle bound for every G_0"),
                        format!("{checked} cycles, P_DP={p}"),
                        format!("violations: {}", list(&over)),
                        over.is_empty(),
                    );
                    report.check(
                        format!("{label} m={m} cycle-bound equality => G = G_0"),
                        "no equality with G != G_0",
                        format!("equality at: {}", list(&eq_not_iso)),
                        eq_not_iso.is_empty(),
                    );
                    if is_cycle {
                        report.expect_eq(
                            format!("{label} m={m} G = G_0 => cycle-bound equality"),
                            cycle_dp_closed_form(n, m),
                            p.clone(),
                        );
                    }
                    if n % 2 == 0 && m < 2 {
                        continue;
                    }
                    let bound = cycle_dp_closed_form(n, m);
                    report.check(format!("{label} m={m} P_DP <= n-level bound"), format!("<= {bound}"), p.clone(), p <= bound);
                    if is_cycle {
                        report.expect_eq(format!("{label} m={m} cycle => n-level equality"), bound, p.clone());
                    } else {
                        report.check(
                            format!("{label} m={m} n-level equality => cycle"),
                            format!("< {bound}"),
                            p.clone(),
                            p < bound,
                        );
                    }
                }
                ear_chain(&mut report, &cache, &g, m_min, m_max)?;
            }
        }
        Ok(report)
    })
}

/// Along an ear decomposition from every cycle:
/// `P_DP(G_i) <= P_DP(G_{i-1}) (m-1)^(l+1) / m` for each ear of length `l+1`.
fn ear_chain(report: &mut CheckReport, cache: &DpCache, g: &Graph, m_min: usize, m_max: usize) -> Result<()> {
    let mut chains = Vec::new();
    for c in g.cycles() {
        let dec = ear_decomposition(g, Some(&c))?;
        dec.validate(g)?;
        let c = &dec.initial_cycle;
        let mut edges: Vec<(usize, usize)> = (0..c.len())
            .map(|i| (c[i].min(c[(i + 1) % c.len()]), c[i].max(c[(i + 1) % c.len()])))
            .collect();
        let mut steps = vec![(compact(&edges)?, 0usize)];
        for ear in &dec.ears {
            edges.extend(ear.edges());
            steps.push((compact(&edges)?, ear.internal.len()));
        }
        chains.push(steps);
    }
    for m in m_min..=m_max {
        let mm = BigRational::from_integer(BigInt::from(m));
        let mut bad = Vec::new();
        let mut ears = 0;
        for steps in &chains {
            for w in steps.windows(2) {
                ears += 1;
                let before = BigRational::from_integer(big(cache.value(&w[0].0, m)?));
                let after = BigRational::from_integer(big(cache.value(&w[1].0, m)?));
                let factor = num::pow(&mm - BigRational::one(), w[1].1 + 1) / &mm;
                if after > before * factor {
                    bad.push(describe(&w[1].0));
                }
            }
        }
        report.check(
            format!("{} m={m} ear addition factor (m-1)^(l+1)/m", describe(g)),
            format!("{ears} ears over {} initial cycles", chains.len()),
            format!("violations: {}", if bad.is_empty() { "none".into() } else { bad.join(" ") }),
            bad.is_empty(),
        );
    }
    Ok(())
}
