//! Finite, exhaustive checks of the bounds, counting identities and
//! examples known for DP color functions and cover colorings.
//!
//! Every suite returns a [`CheckReport`]: one [`Instance`] per checked claim
//! with the claimed and computed values side by side. "If and only if"
//! statements are split into two directional instances.

use std::collections::HashMap;
use std::fmt::{self, Display};
use std::sync::Mutex;
use std::time::Duration;

use num::BigInt;
use serde::Serialize;

use crate::chromatic::{chromatic_polynomial, IntPolynomial};
use crate::dp::{dp_color_value, DpOptions};
use crate::error::Result;
use crate::graph::{canonical_code, CanonicalCode, Graph};
use crate::Count;

mod bounds;
mod examples;
mod expectation;
mod lemmas;
mod properties;

pub use bounds::{check_chromatic_bounds, check_cycle_dp, check_tree_bound, check_two_connected_bounds};
pub use examples::{figure_cover, listed_colorings, reproduce_w4_examples};
pub use expectation::check_expectation_identities;
pub use lemmas::{
    check_canonical_theorems, check_pinned_lemma, check_pinned_sweep, check_two_path_lemma, two_path_vertices,
    CanonicalSweep,
};
pub use properties::{check_properties, cycle_cover_counts};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub description: String,
    pub claim: String,
    pub computed: String,
    pub pass: bool,
}

/// A named text attachment, e.g. a witness cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub name: String,
    pub content: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub instances: Vec<Instance>,
    pub artifacts: Vec<Artifact>,
    /// Wall time; not serialized so reports compare byte for byte.
    #[serde(skip)]
    pub runtime: Duration,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            instances: Vec::new(),
            artifacts: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn check(&mut self, description: impl Into<String>, claim: impl Display, computed: impl Display, pass: bool) {
        self.instances.push(Instance {
            description: description.into(),
            claim: claim.to_string(),
            computed: computed.to_string(),
            pass,
        });
    }

    /// Instance passing iff the two values are equal.
    pub fn expect_eq<T: PartialEq + Display>(&mut self, description: impl Into<String>, claim: T, computed: T) {
        let pass = claim == computed;
        self.check(description, claim, computed, pass);
    }

    pub fn attach(&mut self, name: impl Into<String>, content: impl Into<String>) {
        self.artifacts.push(Artifact {
            name: name.into(),
            content: content.into(),
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.instances.extend(other.instances);
        self.artifacts.extend(other.artifacts);
        self.runtime += other.runtime;
    }

    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.pass)
    }

    /// One `key=value` line per instance and a closing summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            out.push_str(&format!(
                "suite={} instance={} claim={} computed={} verdict={}\n",
                self.suite,
                quote(&i.description),
                quote(&i.claim),
                quote(&i.computed),
                verdict(i.pass)
            ));
        }
        out.push_str(&format!(
            "suite={} overall={} instances={} failed={}\n",
            self.suite,
            verdict(self.passed()),
            self.instances.len(),
            self.failures().count()
        ));
        out
    }

    /// JSON lines: one record per instance, then a summary record.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            let rec = serde_json::json!({
                "suite": self.suite,
                "instance": i.description,
                "claim": i.claim,
                "computed": i.computed,
                "verdict": verdict(i.pass),
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        let summary = serde_json::json!({
            "suite": self.suite,
            "overall": verdict(self.passed()),
            "instances": self.instances.len(),
            "failed": self.failures().count(),
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn quote(s: &str) -> String {
    if !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '"' || c == '=') {
        s.to_string()
    } else {
        serde_json::to_string(s).expect("strings serialize")
    }
}

/// Compact graph label: `5v:0-1,0-2,1-2`.
pub fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}v:{}", g.n(), edges.join(","))
}

/// `base^e` as a big integer.
pub(crate) fn big_pow(base: i64, e: usize) -> BigInt {
    num::pow(BigInt::from(base), e)
}

pub(crate) fn run_timed(f: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = std::time::Instant::now();
    let mut report = f()?;
    report.runtime = start.elapsed();
    Ok(report)
}

/// Chromatic polynomials and DP color values keyed by isomorphism class.
///
/// A value is searched exhaustively unless `P(G, m) = 0`, in which case
/// `P_DP(G, m) = 0` follows from `0 <= P_DP <= P`.
pub(crate) struct DpCache {
    opts: DpOptions,
    polys: Mutex<HashMap<CanonicalCode, IntPolynomial>>,
    values: Mutex<HashMap<(CanonicalCode, usize), Count>>,
}

impl DpCache {
    pub(crate) fn new(opts: DpOptions) -> Self {
        DpCache {
            opts,
            polys: Mutex::new(HashMap::new()),
            values: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn poly(&self, g: &Graph) -> Result<IntPolynomial> {
        let key = canonical_code(g)?;
        if let Some(p) = self.polys.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = chromatic_polynomial(g)?;
        self.polys.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    pub(crate) fn value(&self, g: &Graph, m: usize) -> Result<Count> {
        let key = (canonical_code(g)?, m);
        if let Some(&v) = self.values.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let v = if self.poly(g)?.eval(m as u64) == BigInt::from(0) {
            0
        } else {
            dp_color_value(g, m, &self.opts)?.min_count
        };
        self.values.lock().unwrap().insert(key, v);
        Ok(v)
    }
}

/// Maps `f` over `items` on `jobs` workers, keeping item order.
pub(crate) fn fan_out<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_records_agree() {
        let mut r = CheckReport::new("demo");
        r.expect_eq("C_5 m=3", 30, 30);
        r.check("with space", "a b", "a=b", false);
        let text = r.to_text();
        assert!(text.contains("instance=\"C_5 m=3\" claim=30 computed=30 verdict=pass"));
        assert!(text.contains("claim=\"a b\" computed=\"a=b\" verdict=fail"));
        assert!(text.ends_with("suite=demo overall=fail instances=2 failed=1\n"));
        let lines: Vec<serde_json::Value> = r
            .to_records()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["computed"], "30");
        assert_eq!(lines[2]["overall"], "fail");
    }

    #[test]
    fn runtime_is_not_serialized() {
        let mut a = CheckReport::new("x");
        a.expect_eq("v", 1, 1);
        let mut b = a.clone();
        b.runtime = Duration::from_secs(3);
        assert_eq!(a.to_records(), b.to_records());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn fan_out_keeps_order() {
        let items: Vec<u32> = (0..50).collect();
        assert_eq!(fan_out(3, &items, |x| x * 2), fan_out(1, &items, |x| x * 2));
    }
}
