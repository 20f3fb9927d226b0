use std::sync::Arc;

use dpcolor::graph::{make_family, Family, Graph};
use dpcolor::{chromatic_polynomial, dp_color_value, DpOptions, FullCover, Perm};
use num::BigInt;
use proptest::prelude::*;

/// A cover with arbitrary (possibly partial) matchings: `cross[e]` lists the
/// matched index pairs `(i, j)` meaning `(u, i) ~ (v, j)` for edge `e = (u, v)`.
fn count_partial(g: &Graph, m: usize, cross: &[Vec<(usize, usize)>]) -> u64 {
    let n = g.n();
    let mut c = vec![0usize; n];
    let mut total = 0;
    loop {
        let ok = g
            .edges()
            .iter()
            .zip(cross)
            .all(|(&(u, v), pairs)| !pairs.contains(&(c[u], c[v])));
        total += u64::from(ok);
        let mut k = 0;
        loop {
            if k == n {
                return total;
            }
            c[k] += 1;
            if c[k] < m {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

fn all_perms(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every matching between two `m`-sets (partial ones included).
fn all_matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect::<Vec<_>>())
        .filter(|s| {
            let mut a = vec![false; m];
            let mut b = vec![false; m];
            s.iter().all(|&(i, j)| !std::mem::replace(&mut a[i], true) && !std::mem::replace(&mut b[j], true))
        })
        .collect()
}

fn min_over(g: &Graph, m: usize, choices: &[Vec<(usize, usize)>]) -> u64 {
    let e = g.edge_count();
    let mut idx = vec![0usize; e];
    let mut best = u64::MAX;
    loop {
        let cross: Vec<Vec<(usize, usize)>> = idx.iter().map(|&k| choices[k].clone()).collect();
        best = best.min(count_partial(g, m, &cross));
        let mut k = 0;
        loop {
            if k == e {
                return best;
            }
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn perfect(m: usize) -> Vec<Vec<(usize, usize)>> {
    all_perms(m).into_iter().map(|p| p.into_iter().enumerate().collect()).collect()
}

#[test]
fn partial_covers_never_go_below_full_covers() {
    assert_eq!(all_matchings(2).len(), 7);
    for g in [make_family(Family::Cycle(3)).unwrap(), make_family(Family::Cycle(4)).unwrap()] {
        let partial = min_over(&g, 2, &all_matchings(2));
        let full = min_over(&g, 2, &perfect(2));
        let ours = dp_color_value(&g, 2, &DpOptions::default()).unwrap().min_count;
        assert_eq!(partial, full, "{g:?}");
        assert_eq!(u128::from(full), ours, "{g:?}");
    }
    let c3 = make_family(Family::Cycle(3)).unwrap();
    assert_eq!(min_over(&c3, 3, &all_matchings(3)), 6);
}

#[test]
fn gauge_fixed_minimum_equals_minimum_over_all_covers() {
    let cases = [
        (make_family(Family::Complete(4)).unwrap(), 2),
        (make_family(Family::Complete(4)).unwrap(), 3),
        (make_family(Family::Cycle(4)).unwrap(), 3),
        (make_family(Family::Cycle(5)).unwrap(), 3),
        (make_family(Family::Theta(1, 2, 2)).unwrap(), 3),
        (make_family(Family::Star(4)).unwrap(), 3),
        (Graph::new(4, [(0, 1), (2, 3)]).unwrap(), 3),
    ];
    for (g, m) in cases {
        let all = min_over(&g, m, &perfect(m));
        let r = dp_color_value(&g, m, &DpOptions::default()).unwrap();
        assert_eq!(u128::from(all), r.min_count, "{g:?} m={m}");
        for w in &r.witnesses {
            assert_eq!(w.count_colorings(), r.min_count);
        }
    }
}

#[test]
fn known_dp_values() {
    let v = |f: Family, m: usize| dp_color_value(&make_family(f).unwrap(), m, &DpOptions::default()).unwrap().min_count;
    // even cycles: (m-1)^n - 1; odd cycles keep P(C_n, m)
    assert_eq!(v(Family::Cycle(4), 3), 15);
    assert_eq!(v(Family::Cycle(5), 3), 30);
    assert_eq!(v(Family::Complete(3), 3), 6);
    assert_eq!(v(Family::Path(5), 3), 48);
    assert_eq!(v(Family::Complete(4), 3), 0);
}

fn graph_and_cover() -> impl Strategy<Value = FullCover> {
    (1usize..=6, 1usize..=4).prop_flat_map(|(n, m)| {
        let pairs = n * (n - 1) / 2;
        (prop::collection::vec(any::<bool>(), pairs), prop::collection::vec(0u64..24, pairs)).prop_map(
            move |(bits, ranks)| {
                let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let chosen: Vec<usize> = (0..pairs).filter(|&k| bits[k]).collect();
                let g = Arc::new(Graph::new(n, chosen.iter().map(|&k| all[k])).unwrap());
                let fact = (1..=m as u64).product::<u64>();
                let sigma = chosen.iter().map(|&k| Perm::unrank(m, ranks[k] % fact)).collect();
                FullCover::new(g, m, sigma).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn count_matches_brute_force(h in graph_and_cover()) {
        let g = h.graph();
        let cross: Vec<Vec<(usize, usize)>> = h
            .permutations()
            .iter()
            .map(|p| (0..h.m()).map(|i| (i, p.apply(i))).collect())
            .collect();
        let brute = count_partial(g, h.m(), &cross);
        prop_assert_eq!(h.count_colorings(), u128::from(brute));
        prop_assert_eq!(h.colorings().len() as u64, brute);
    }

    #[test]
    fn identity_cover_counts_chromatic_polynomial(h in graph_and_cover()) {
        let id = FullCover::identity(h.graph_arc().clone(), h.m()).unwrap();
        let p = chromatic_polynomial(h.graph()).unwrap();
        prop_assert_eq!(BigInt::from(id.count_colorings()), p.eval(h.m() as u64));
    }

    #[test]
    fn cover_text_round_trips(h in graph_and_cover()) {
        let back = FullCover::parse(h.graph_arc().clone(), &h.to_text()).unwrap();
        prop_assert_eq!(back, h);
    }
}
