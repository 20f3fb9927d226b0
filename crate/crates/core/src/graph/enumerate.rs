use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::{canonical_code, CanonicalCode, Graph};
use crate::error::{Error, Result};

/// Hard cap for [`enumerate_graphs`].
pub const MAX_ENUM_VERTICES: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Connected,
    TwoConnected,
    Unicyclic,
    Tree,
}

impl GraphClass {
    pub fn contains(&self, g: &Graph) -> bool {
        match self {
            GraphClass::Connected => g.is_connected(),
            GraphClass::TwoConnected => g.is_two_connected(),
            GraphClass::Unicyclic => g.is_unicyclic(),
            GraphClass::Tree => g.is_tree(),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Connected => "connected",
            GraphClass::TwoConnected => "two_connected",
            GraphClass::Unicyclic => "unicyclic",
            GraphClass::Tree => "tree",
        })
    }
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(GraphClass::Connected),
            "two_connected" | "2connected" => Ok(GraphClass::TwoConnected),
            "unicyclic" => Ok(GraphClass::Unicyclic),
            "tree" => Ok(GraphClass::Tree),
            other => Err(Error::param(format!("unknown graph class `{other}`"))),
        }
    }
}

/// One canonical representative per isomorphism class of `n`-vertex graphs
/// in `class`, ordered by edge count and then by canonical code.
///
/// Classes are grown edge by edge: every graph with `k` edges arises from
/// one with `k - 1` edges, so adding each non-edge to each representative
/// and deduplicating by canonical code reaches every class.
pub fn enumerate_graphs(n: usize, class: GraphClass) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::capacity("graph enumeration", format!("{n} vertices"), MAX_ENUM_VERTICES));
    }
    let mut level: Vec<CanonicalCode> = vec![canonical_code(&Graph::empty(n)?)?];
    let mut all: Vec<Graph> = Vec::new();
    while !level.is_empty() {
        let mut next: HashSet<CanonicalCode> = HashSet::new();
        for code in &level {
            let g = code.to_graph();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        next.insert(canonical_code(&g.with_edge(u, v)?)?);
                    }
                }
            }
            all.push(g);
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    Ok(all.into_iter().filter(move |g| class.contains(g)))
}
