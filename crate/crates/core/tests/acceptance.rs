//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact
//! (integers or rationals); the wall-clock limits are pinned below.

use std::sync::Arc;
use std::time::{Duration, Instant};

use dpcolor::chromatic::{chromatic_polynomial, closed_form, ClosedFormFamily};
use dpcolor::cover::find_canonical_labeling;
use dpcolor::dp::{CoverSpace, DpOptions};
use dpcolor::graph::{make_family, Family};
use dpcolor::verify::{self, CanonicalSweep, CheckReport};
use num::BigInt;

const LIMIT_WHEEL: Duration = Duration::from_secs(1);
const LIMIT_W4_M3: Duration = Duration::from_secs(5);
const LIMIT_W4_M4: Duration = Duration::from_secs(300);
const LIMIT_CYCLES: Duration = Duration::from_secs(30);
const LIMIT_TREE: Duration = Duration::from_secs(120);
const LIMIT_TWO_CONNECTED: Duration = Duration::from_secs(300);
const LIMIT_EXPECTATION: Duration = Duration::from_secs(120);
const LIMIT_PINNED: Duration = Duration::from_secs(120);
const LIMIT_TWO_PATH: Duration = Duration::from_secs(60);
const LIMIT_CANONICAL: Duration = Duration::from_secs(600);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(300);

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_report(r: &CheckReport, elapsed: Duration, limit: Duration) -> Outcome {
    let failed: Vec<String> = r.failures().take(3).map(|i| i.description.clone()).collect();
    let mut detail = format!(
        "{} instances, {} failed, {:.2}s (limit {}s)",
        r.instances.len(),
        r.failures().count(),
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if !failed.is_empty() {
        detail.push_str(&format!("; first failures: {}", failed.join(" | ")));
    }
    Outcome { pass: r.passed() && elapsed <= limit, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn opts() -> DpOptions {
    DpOptions::default()
}

fn wheel_values() -> Outcome {
    let ((ok, detail), elapsed) = timed(|| {
        let g = make_family(Family::Wheel(4)).unwrap();
        let p = chromatic_polynomial(&g).unwrap();
        let mut ok = true;
        let mut parts = Vec::new();
        for (m, want) in [(3u64, 6), (4, 72)] {
            let cf = closed_form(ClosedFormFamily::Wheel, &[4], m).unwrap();
            let dc = p.eval(m);
            ok &= cf == BigInt::from(want) && dc == BigInt::from(want);
            parts.push(format!("P(W_4,{m}): formula {cf}, deletion-contraction {dc}"));
        }
        (ok, parts.join("; "))
    });
    Outcome {
        pass: ok && elapsed <= LIMIT_WHEEL,
        detail: format!("{detail}, {:.3}s", elapsed.as_secs_f64()),
    }
}

fn w4_examples() -> Outcome {
    let g = Arc::new(make_family(Family::Wheel(4)).unwrap());
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, target, size, limit) in [(3, 6u128, 1296u64, LIMIT_W4_M3), (4, 72, 331_776, LIMIT_W4_M4)] {
        let (found, elapsed) = timed(|| {
            let space = CoverSpace::new(g.clone(), m, opts().budget).unwrap();
            assert_eq!(space.size(), size);
            space.achieving(target).find(|h| find_canonical_labeling(h).is_none())
        });
        let hit = found.as_ref().is_some_and(|h| h.count_colorings() == target);
        ok &= hit && elapsed <= limit;
        parts.push(format!(
            "m={m}: {} over {size} covers in {:.2}s (limit {}s)",
            if hit { "non-canonical cover at P found" } else { "none found" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
    }
    let (report, elapsed) = timed(|| verify::reproduce_w4_examples(&opts()).unwrap());
    let suite = from_report(&report, elapsed, LIMIT_W4_M3 + LIMIT_W4_M4);
    parts.push(format!("suite: {}", suite.detail));
    Outcome { pass: ok && suite.pass, detail: parts.join("; ") }
}

fn cycles() -> Outcome {
    let (r, elapsed) = timed(|| verify::check_cycle_dp(7, 4, &opts()).unwrap());
    let mut out = from_report(&r, elapsed, LIMIT_CYCLES);
    // n = 3..7 at m = 2..4, plus m = 1 for n = 3, 5, 7
    out.pass &= r.instances.len() == 5 * 3 + 3;
    out
}

fn tree_bound() -> Outcome {
    let (r, elapsed) = timed(|| verify::check_tree_bound(6, 5, 4, &opts()).unwrap());
    from_report(&r, elapsed, LIMIT_TREE)
}

fn two_connected() -> Outcome {
    let (r, elapsed) = timed(|| verify::check_two_connected_bounds(5, 2, 4, &opts()).unwrap());
    from_report(&r, elapsed, LIMIT_TWO_CONNECTED)
}

fn expectation() -> Outcome {
    let (r, elapsed) = timed(|| verify::check_expectation_identities(100, 0, 1).unwrap());
    let mut out = from_report(&r, elapsed, LIMIT_EXPECTATION);
    out.pass &= r.instances.len() >= 300;
    out
}

fn pinned() -> Outcome {
    let (r, elapsed) = timed(|| verify::check_pinned_sweep(5, 2, 4, 1).unwrap());
    from_report(&r, elapsed, LIMIT_PINNED)
}

fn two_path() -> Outcome {
    let (r, elapsed) = timed(|| {
        let mut r = CheckReport::new("two-path");
        for (a, b, c) in [(1, 2, 2), (1, 2, 3), (2, 2, 2)] {
            r.extend(verify::check_two_path_lemma(a, b, c, 3, &opts()).unwrap());
        }
        r
    });
    from_report(&r, elapsed, LIMIT_TWO_PATH)
}

fn canonical() -> Outcome {
    let sweep = CanonicalSweep::default();
    assert_eq!((sweep.unicyclic_n_max, &sweep.unicyclic_m[..]), (6, &[2, 3][..]));
    assert_eq!((sweep.theta_sum_max, &sweep.theta_m[..], &sweep.extra_theta[..]), (7, &[3][..], &[(1, 2, 2, 4)][..]));
    let (r, elapsed) = timed(|| verify::check_canonical_theorems(&sweep, &opts()).unwrap());
    from_report(&r, elapsed, LIMIT_CANONICAL)
}

fn properties() -> Outcome {
    let (r, elapsed) = timed(|| verify::check_properties(1000, 0, 6, &opts()).unwrap());
    from_report(&r, elapsed, LIMIT_PROPERTIES)
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("wheel values", wheel_values),
        ("W_4 covers at P(W_4,m) without canonical labeling", w4_examples),
        ("cycle DP function", cycles),
        ("tree bound", tree_bound),
        ("2-connected bounds", two_connected),
        ("expectation identities", expectation),
        ("pinned counting", pinned),
        ("two-path identity", two_path),
        ("canonical-labeling theorems", canonical),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let out = f();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {name}: {}", k + 1, out.detail);
        if !out.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
