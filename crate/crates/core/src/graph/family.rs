use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with a fixed vertex numbering.
///
/// * `Path(n)`: `0 - 1 - ... - (n-1)`.
/// * `Cycle(n)`: the path closed by the edge `(0, n-1)`.
/// * `Complete(n)`: all pairs.
/// * `Star(n)`: `n` vertices, center `0`.
/// * `Wheel(n)`: rim `C_n` on `0..n`, hub `n` joined to every rim vertex.
/// * `Theta(r, s, t)`: branch vertices `0` and `1` joined by internally
///   disjoint paths of lengths `r`, `s`, `t`. Internal vertices are numbered
///   from `2` upward, path `r` first, then `s`, then `t`, each path listed
///   from the `0` end.
/// * `CompleteBipartite(a, b)`: parts `0..a` and `a..a+b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Wheel(usize),
    Theta(usize, usize, usize),
    CompleteBipartite(usize, usize),
}

impl Family {
    /// Builds a family from its name and parameter tuple.
    pub fn from_parts(kind: &str, params: &[usize]) -> Result<Family> {
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::param(format!("family `{kind}` takes {k} parameter(s), got {}", params.len())))
            }
        };
        let fam = match kind {
            "path" => want(1).map(|_| Family::Path(params[0])),
            "cycle" => want(1).map(|_| Family::Cycle(params[0])),
            "complete" => want(1).map(|_| Family::Complete(params[0])),
            "star" => want(1).map(|_| Family::Star(params[0])),
            "wheel" => want(1).map(|_| Family::Wheel(params[0])),
            "theta" => want(3).map(|_| Family::Theta(params[0], params[1], params[2])),
            "bipartite" => want(2).map(|_| Family::CompleteBipartite(params[0], params[1])),
            other => Err(Error::param(format!("unknown family `{other}`"))),
        }?;
        fam.validate()?;
        Ok(fam)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Family::Path(n) | Family::Star(n) | Family::Complete(n) => n >= 1,
            Family::Cycle(n) | Family::Wheel(n) => n >= 3,
            Family::Theta(r, s, t) => r >= 1 && s >= 2 && t >= 2,
            Family::CompleteBipartite(a, b) => a >= 1 && b >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(format!("{self} is outside the family's parameter range")))
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path(n) | Family::Cycle(n) | Family::Complete(n) | Family::Star(n) => n,
            Family::Wheel(n) => n + 1,
            Family::Theta(r, s, t) => r + s + t - 1,
            Family::CompleteBipartite(a, b) => a + b,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.vertex_count();
        let mut edges = Vec::new();
        match *self {
            Family::Path(n) => edges.extend((1..n).map(|i| (i - 1, i))),
            Family::Cycle(n) => edges.extend((0..n).map(|i| (i, (i + 1) % n))),
            Family::Complete(n) => {
                for u in 0..n {
                    edges.extend((u + 1..n).map(|v| (u, v)));
                }
            }
            Family::Star(n) => edges.extend((1..n).map(|i| (0, i))),
            Family::Wheel(n) => {
                edges.extend((0..n).map(|i| (i, (i + 1) % n)));
                edges.extend((0..n).map(|i| (i, n)));
            }
            Family::Theta(r, s, t) => {
                let mut next = 2;
                for len in [r, s, t] {
                    let mut prev = 0;
                    for _ in 1..len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                    edges.push((prev, 1));
                }
            }
            Family::CompleteBipartite(a, b) => {
                for u in 0..a {
                    edges.extend((a..a + b).map(|v| (u, v)));
                }
            }
        }
        Graph::new(n, edges)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path(n) => write!(f, "P_{n}"),
            Family::Cycle(n) => write!(f, "C_{n}"),
            Family::Complete(n) => write!(f, "K_{n}"),
            Family::Star(n) => write!(f, "S_{n}"),
            Family::Wheel(n) => write!(f, "W_{n}"),
            Family::Theta(r, s, t) => write!(f, "theta({r},{s},{t})"),
            Family::CompleteBipartite(a, b) => write!(f, "K({a},{b})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `name:p1,p2,...`, e.g. `theta:1,2,2` or `cycle:5`.
    fn from_str(s: &str) -> Result<Family> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::param(format!("bad parameter `{p}`"))))
            .collect::<Result<Vec<_>>>()?;
        Family::from_parts(kind, &params)
    }
}

/// Builds the named graph.
pub fn make_family(family: Family) -> Result<Graph> {
    family.build()
}
