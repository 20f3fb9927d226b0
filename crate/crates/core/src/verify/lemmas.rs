use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};

use super::{big_pow, describe, fan_out, run_timed, CheckReport, Instance};
use crate::chromatic::{chromatic_polynomial, closed_form, ClosedFormFamily};
use crate::cover::{classify_two_path, find_canonical_labeling, FullCover, Perm};
use crate::dp::{dp_color_value, CoverSpace, DpOptions};
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, make_family, Family, Graph, GraphClass};

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Pinned counts on the identity cover of `G - e`: every diagonal pin pair
/// `(i, i)` admits `(P(G-e,m) - P(G,m))/m` colorings, every off-diagonal
/// pair `P(G,m)/(m(m-1))`; and for every matching on `e` the count of the
/// resulting cover of `G` equals the `G - e` count minus the pinned counts
/// of the matched pairs.
pub fn check_pinned_lemma(g: &Graph, e: (usize, usize), m: usize) -> Result<CheckReport> {
    run_timed(|| {
        let mut report = CheckReport::new("pinned");
        report.instances = pinned_instances(g, e, m)?;
        Ok(report)
    })
}

fn pinned_instances(g: &Graph, (u, v): (usize, usize), m: usize) -> Result<Vec<Instance>> {
    if m < 2 {
        return Err(Error::param("the pinned counting identities need m >= 2"));
    }
    if !g.has_edge(u, v) {
        return Err(Error::param(format!("({u},{v}) is not an edge")));
    }
    let minus = Arc::new(g.without_edge(u, v)?);
    let p = chromatic_polynomial(g)?.eval(m as u64);
    let p_minus = chromatic_polynomial(&minus)?.eval(m as u64);
    let r = (int(p_minus.clone()) - int(p.clone())) / int(m);
    let t = int(p.clone()) / int(m * (m - 1));
    let h = FullCover::identity(minus.clone(), m)?;
    let mut pinned = vec![vec![0u128; m]; m];
    for (i, row) in pinned.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = h.count_colorings_pinned(&[(u, i), (v, j)])?;
        }
    }
    let label = format!("{} e={u}-{v} m={m}", describe(g));
    let diag: Vec<u128> = (0..m).map(|i| pinned[i][i]).collect();
    let off: Vec<u128> = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| pinned[i][j]).collect();
    let mut out = vec![
        Instance {
            description: format!("{label} diagonal pins = (P(G-e)-P(G))/m"),
            claim: format!("r={r}"),
            computed: format!("{diag:?}"),
            pass: diag.iter().all(|&x| int(x) == r),
        },
        Instance {
            description: format!("{label} off-diagonal pins = P(G)/(m(m-1))"),
            claim: format!("t={t}"),
            computed: format!("{} pairs, distinct values {:?}", off.len(), {
                let mut d = off.clone();
                d.sort_unstable();
                d.dedup();
                d
            }),
            pass: off.iter().all(|&x| int(x) == t),
        },
    ];
    let base = h.count_colorings();
    let mut sigma = Perm::identity(m);
    let mut bad = 0;
    let mut total = 0;
    let e = g.edge_index(u, v).expect("edge");
    let sigma_id = FullCover::identity(Arc::new(g.clone()), m)?;
    loop {
        let full = sigma_id.clone().with_edge_perm(e, sigma.clone())?;
        let predicted = base - (0..m).map(|i| pinned[i][sigma.apply(i)]).sum::<u128>();
        total += 1;
        if full.count_colorings() != predicted {
            bad += 1;
        }
        if !sigma.advance() {
            break;
        }
    }
    out.push(Instance {
        description: format!("{label} count = count(G-e) - sum of matched pins"),
        claim: format!("{total} matchings"),
        computed: format!("{} hold", total - bad),
        pass: bad == 0,
    });
    Ok(out)
}

/// [`check_pinned_lemma`] on every edge of every connected graph with at
/// most `n_max` vertices, one summary instance per graph and `m`.
pub fn check_pinned_sweep(n_max: usize, m_min: usize, m_max: usize, jobs: usize) -> Result<CheckReport> {
    if n_max > 6 || m_min < 2 || m_max > 5 {
        return Err(Error::param("pinned sweep needs n_max <= 6 and 2 <= m_min <= m_max <= 5"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("pinned");
        let mut work = Vec::new();
        for n in 2..=n_max {
            for g in enumerate_graphs(n, GraphClass::Connected)? {
                for m in m_min..=m_max {
                    work.push((g.clone(), m));
                }
            }
        }
        let results = fan_out(jobs, &work, |(g, m)| -> Result<Instance> {
            let mut failing = Vec::new();
            for &(u, v) in g.edges() {
                for i in pinned_instances(g, (u, v), *m)? {
                    if !i.pass {
                        failing.push(i.description);
                    }
                }
            }
            Ok(Instance {
                description: format!("{} m={m} pinned formulas on every edge", describe(g)),
                claim: format!("{} edges x 3 identities", g.edge_count()),
                computed: if failing.is_empty() { "all hold".into() } else { failing.join("; ") },
                pass: failing.is_empty(),
            })
        });
        for r in results {
            report.instances.push(r?);
        }
        Ok(report)
    })
}

/// `(alpha1, alpha2, alpha3)` for a theta graph: `alpha2` is branch vertex
/// 0, `alpha1` and `alpha3` its neighbors on the `s` and `t` paths.
pub fn two_path_vertices(r: usize, s: usize) -> (usize, usize, usize) {
    (r + 1, 0, r + s)
}

/// `P(theta(a,b,c), m)` with the parameters in any order, for the
/// rearranged thetas of the `G*` identity.
fn theta_value(mut p: [usize; 3], m: usize) -> Result<BigInt> {
    p.sort_unstable();
    closed_form(ClosedFormFamily::Theta, &p, m as u64)
}

/// The two-path decomposition on `theta(r,s,t)` at fold `m`: the
/// quantities `A_1..A_5` from chromatic polynomials of `G_0 = G - e1 - e2`,
/// `G_1 = G - e1`, `G_2 = G - e2`, `G` and `G* = G + alpha1 alpha3`; each
/// `A_q / m` against a direct count of colorings meeting a path of case
/// `q`; and on every normalized cover,
/// `count = P(G_0,m) - (1/m) sum_q m_q A_q`.
pub fn check_two_path_lemma(r: usize, s: usize, t: usize, m: usize, opts: &DpOptions) -> Result<CheckReport> {
    Family::Theta(r, s, t).validate()?;
    if m < 3 {
        return Err(Error::param("the two-path identity needs m >= 3"));
    }
    run_timed(|| {
        let mut report = CheckReport::new("two-path");
        let label = format!("theta({r},{s},{t}) m={m}");
        let g = Arc::new(make_family(Family::Theta(r, s, t))?);
        let (a1, a2, a3) = two_path_vertices(r, s);
        let g0 = g.without_edge(a1, a2)?.without_edge(a2, a3)?;
        let g1 = g.without_edge(a1, a2)?;
        let g2 = g.without_edge(a2, a3)?;
        let gs = g.with_edge(a1, a3)?;
        let ev = |h: &Graph| -> Result<BigInt> { Ok(chromatic_polynomial(h)?.eval(m as u64)) };
        let (p0, p1, p2, p, ps) = (ev(&g0)?, ev(&g1)?, ev(&g2)?, ev(&g)?, ev(&gs)?);
        let u = m as i64 - 1;
        let n_sum = r + s + t;
        report.expect_eq(
            format!("{label} P(G_0) = m(m-1)^(r+s+t-2)"),
            BigInt::from(m) * big_pow(u, n_sum - 2),
            p0.clone(),
        );
        report.expect_eq(
            format!("{label} P(G_1) = (m-1)^(r+s+t-1) + (-1)^(r+t)(m-1)^s"),
            big_pow(u, n_sum - 1) + big_pow(-1, r + t) * big_pow(u, s),
            p1.clone(),
        );
        report.expect_eq(
            format!("{label} P(G_2) = (m-1)^(r+s+t-1) + (-1)^(r+s)(m-1)^t"),
            big_pow(u, n_sum - 1) + big_pow(-1, r + s) * big_pow(u, t),
            p2.clone(),
        );
        report.expect_eq(format!("{label} P(G) closed form"), theta_value([r, s, t], m)?, p.clone());
        let star = if s >= 3 || t >= 3 {
            p.clone() - theta_value([r + 1, s - 1, t - 1], m)?
        } else {
            p.clone() - closed_form(ClosedFormFamily::Cycle, &[r + 2], m as u64)?
        };
        report.expect_eq(format!("{label} P(G*) by the contraction identity"), star, ps.clone());

        let mm = int(m);
        let m1 = int(m - 1);
        let (q0, q1, q2, q, qs) = (int(p0.clone()), int(p1), int(p2), int(p), int(ps));
        let a = [
            &q0 - &q,
            &q0 - &q2 + &q / &m1,
            &q0 - &q1 + &q / &m1,
            (&q1 + &q2 + &qs - &q) / &m1,
            (&q1 + &q2 - &qs / int(m - 2)) / &m1,
        ];
        let integral = a.iter().all(|x| x.is_integer() && !x.is_negative());
        report.check(
            format!("{label} A_1..A_5 are nonnegative integers"),
            "integers >= 0",
            a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            integral,
        );
        let h0 = FullCover::identity(Arc::new(g0.clone()), m)?;
        let reps = [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0), (0, 1, 2)];
        for (k, &(i, j, l)) in reps.iter().enumerate() {
            let direct = h0.count_colorings_pinned(&[(a1, i), (a2, j)])? + h0.count_colorings_pinned(&[(a2, j), (a3, l)])?
                - h0.count_colorings_pinned(&[(a1, i), (a2, j), (a3, l)])?;
            report.check(
                format!("{label} case {} path ({i},{j},{l}): colorings meeting it = A_{}/m", k + 1, k + 1),
                &a[k] / &mm,
                direct,
                int(direct) == &a[k] / &mm,
            );
        }

        let tree = g0.edges().to_vec();
        let space = CoverSpace::with_tree(g.clone(), m, &tree, opts.budget)?;
        let mut bad = Vec::new();
        let mut min_count = None;
        for h in space.iter() {
            let cases = classify_two_path(&h, a1, a2, a3)?;
            let sum = (1..=5).fold(BigRational::zero(), |acc, k| acc + int(cases.get(k)) * &a[k - 1]);
            let predicted = &q0 - sum / &mm;
            let count = h.count_colorings();
            if int(count) != predicted && bad.len() < 5 {
                bad.push(format!("{:?}", cases.0));
            }
            if h.is_identity() {
                report.check(
                    format!("{label} identity cover: cases (m,0,0,0,0), count P(G,m)"),
                    format!("[{m}, 0, 0, 0, 0] {q}"),
                    format!("{:?} {count}", cases.0),
                    cases.0 == [m, 0, 0, 0, 0] && int(count) == q,
                );
            }
            min_count = Some(min_count.map_or(count, |c: u128| c.min(count)));
        }
        report.check(
            format!("{label} count = P(G_0) - (1/m) sum m_q A_q on every normalized cover"),
            format!("{} covers", space.size()),
            if bad.is_empty() { "all hold".to_string() } else { format!("fails at cases {}", bad.join(" ")) },
            bad.is_empty(),
        );
        let max_a = a.iter().max().expect("five values").clone();
        let min_count = min_count.expect("nonempty space");
        report.check(
            format!("{label} min over covers = P(G_0) - max A_q"),
            &q0 - &max_a,
            min_count,
            int(min_count) == &q0 - &max_a,
        );
        let global = dp_color_value(&g, m, opts)?.min_count;
        report.expect_eq(format!("{label} min agrees with the breadth-first tree search"), min_count, global);
        Ok(report)
    })
}

/// Instances of the canonical-labeling theorems to sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSweep {
    /// Unicyclic graphs with at most this many vertices.
    pub unicyclic_n_max: usize,
    pub unicyclic_m: Vec<usize>,
    /// Thetas `theta(r,s,t)` (up to isomorphism) with `r+s+t` at most this.
    pub theta_sum_max: usize,
    pub theta_m: Vec<usize>,
    /// Additional `(r, s, t, m)` theta instances.
    pub extra_theta: Vec<(usize, usize, usize, usize)>,
}

impl Default for CanonicalSweep {
    fn default() -> Self {
        CanonicalSweep {
            unicyclic_n_max: 6,
            unicyclic_m: vec![2, 3],
            theta_sum_max: 7,
            theta_m: vec![3],
            extra_theta: vec![(1, 2, 2, 4)],
        }
    }
}

/// Non-isomorphic thetas: sorted `r <= s <= t` with `s >= 2`.
fn theta_params(sum_max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 1..=sum_max {
        for s in r.max(2)..=sum_max {
            for t in s..=sum_max {
                if r + s + t <= sum_max {
                    out.push((r, s, t));
                }
            }
        }
    }
    out
}

/// Both directions of "count = P(G,m) iff canonical labeling" over every
/// gauge-fixed cover of `g`; for unicyclic graphs also the count formula
/// `(m-1)^n + (-1)^g (m-t-1)(m-1)^(n-g)`, `t` the non-fixed points of the
/// co-tree permutation.
fn canonical_instances(g: &Graph, name: &str, m: usize, opts: &DpOptions) -> Result<Vec<Instance>> {
    let p = chromatic_polynomial(g)?.eval(m as u64);
    let space = CoverSpace::new(Arc::new(g.clone()), m, opts.budget)?;
    let girth = if g.is_unicyclic() { g.cycles().first().map(Vec::len) } else { None };
    let (mut at_p, mut at_p_canonical, mut canonical, mut canonical_at_p, mut formula_bad) = (0, 0, 0, 0, 0);
    for h in space.iter() {
        let count = BigInt::from(h.count_colorings());
        let is_canonical = find_canonical_labeling(&h).is_some();
        if count == p {
            at_p += 1;
            at_p_canonical += usize::from(is_canonical);
        }
        if is_canonical {
            canonical += 1;
            canonical_at_p += usize::from(count == p);
        }
        if let Some(cyc) = girth {
            let e = space.cotree()[0];
            let moved = (m - h.edge_perm(e).fixed_points()) as i64;
            let n = g.n();
            let predicted = big_pow(m as i64 - 1, n) + big_pow(-1, cyc) * BigInt::from(m as i64 - moved - 1) * big_pow(m as i64 - 1, n - cyc);
            formula_bad += usize::from(predicted != count);
        }
    }
    let label = format!("{name} m={m}");
    let mut out = vec![
        Instance {
            description: format!("{label} count = P(G,m) => canonical labeling"),
            claim: format!("{at_p} covers at P={p}, all canonical"),
            computed: format!("{at_p_canonical} canonical"),
            pass: at_p == at_p_canonical,
        },
        Instance {
            description: format!("{label} canonical labeling => count = P(G,m)"),
            claim: format!("{canonical} canonical covers at P={p}"),
            computed: format!("{canonical_at_p} at P"),
            pass: canonical == canonical_at_p,
        },
    ];
    if girth.is_some() {
        out.push(Instance {
            description: format!("{label} count = (m-1)^n + (-1)^g (m-t-1)(m-1)^(n-g)"),
            claim: format!("{} covers", space.size()),
            computed: format!("{} hold", space.size() - formula_bad as u64),
            pass: formula_bad == 0,
        });
    }
    Ok(out)
}

/// Canonical-labeling theorems for unicyclic graphs (`m >= 2`) and theta
/// graphs (`m >= 3`) by exhaustive search over gauge-fixed covers.
pub fn check_canonical_theorems(sweep: &CanonicalSweep, opts: &DpOptions) -> Result<CheckReport> {
    if sweep.unicyclic_m.iter().any(|&m| m < 2) || sweep.theta_m.iter().any(|&m| m < 3) {
        return Err(Error::param("unicyclic instances need m >= 2 and theta instances m >= 3"));
    }
    run_timed(|| {
        let mut work: Vec<(Graph, String, usize)> = Vec::new();
        for n in 3..=sweep.unicyclic_n_max {
            for g in enumerate_graphs(n, GraphClass::Unicyclic)? {
                for &m in &sweep.unicyclic_m {
                    work.push((g.clone(), format!("unicyclic {}", describe(&g)), m));
                }
            }
        }
        let mut thetas: Vec<(usize, usize, usize, usize)> = theta_params(sweep.theta_sum_max)
            .into_iter()
            .flat_map(|(r, s, t)| sweep.theta_m.iter().map(move |&m| (r, s, t, m)))
            .collect();
        thetas.extend(sweep.extra_theta.iter().copied());
        for (r, s, t, m) in thetas {
            if m < 3 {
                return Err(Error::param("theta instances need m >= 3"));
            }
            work.push((make_family(Family::Theta(r, s, t))?, format!("theta({r},{s},{t})"), m));
        }
        let mut report = CheckReport::new("canonical");
        let inner = DpOptions { jobs: 1, ..*opts };
        for batch in fan_out(opts.jobs, &work, |(g, name, m)| canonical_instances(g, name, *m, &inner)) {
            report.instances.extend(batch?);
        }
        Ok(report)
    })
}
