//! Chromatic polynomials: memoized deletion–contraction and the classical
//! closed forms for wheels, unicyclic graphs, cycles, thetas and trees.

mod poly;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{canonical_code, CanonicalCode, Graph};

pub use poly::IntPolynomial;

/// Practical vertex cap for [`chromatic_polynomial`].
pub const MAX_CHROMATIC_VERTICES: usize = 12;

/// `P(G, m)` by deletion–contraction.
///
/// Disconnected graphs factor over components; forests and complete graphs
/// are closed-form leaves. Otherwise the pivot is the first edge of a
/// shortest cycle and `P(G) = P(G - e) - P(G / e)`. Intermediate results are
/// memoized by canonical code for the duration of one call.
pub fn chromatic_polynomial(g: &Graph) -> Result<IntPolynomial> {
    if g.n() > MAX_CHROMATIC_VERTICES {
        return Err(Error::capacity(
            "chromatic polynomial",
            format!("{} vertices", g.n()),
            MAX_CHROMATIC_VERTICES,
        ));
    }
    let mut memo = HashMap::new();
    deletion_contraction(g, &mut memo)
}

fn falling_factorial(n: usize) -> IntPolynomial {
    (0..n as i64).fold(IntPolynomial::constant(1), |acc, k| &acc * &IntPolynomial::linear(k))
}

fn deletion_contraction(g: &Graph, memo: &mut HashMap<CanonicalCode, IntPolynomial>) -> Result<IntPolynomial> {
    let comps = g.components();
    if comps.len() > 1 {
        let mut acc = IntPolynomial::constant(1);
        for comp in &comps {
            acc = &acc * &deletion_contraction(&g.induced_subgraph(comp)?, memo)?;
        }
        return Ok(acc);
    }
    if g.n() == 0 {
        return Ok(IntPolynomial::constant(1));
    }
    if g.is_tree() {
        return Ok(&IntPolynomial::var() * &IntPolynomial::linear(1).pow(g.edge_count() as u32));
    }
    if g.is_complete() {
        return Ok(falling_factorial(g.n()));
    }
    let key = canonical_code(g)?;
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }
    let cycle = g.shortest_cycle().expect("connected non-tree has a cycle");
    let (u, v) = (cycle[0], cycle[1]);
    let deleted = deletion_contraction(&g.without_edge(u, v)?, memo)?;
    let contracted = deletion_contraction(&g.contract(u, v)?, memo)?;
    let p = &deleted - &contracted;
    memo.insert(key, p.clone());
    Ok(p)
}

/// Families with a known closed-form chromatic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormFamily {
    /// `params = (n)`, `n >= 3`: `m((m-2)^n + (-1)^n (m-2))`.
    Wheel,
    /// `params = (n, i)`, `3 <= i <= n`: `(m-1)^n + (-1)^i (m-1)^(n-i+1)`.
    Unicyclic,
    /// `params = (n)`, `n >= 3`: `(m-1)^n + (-1)^n (m-1)`.
    Cycle,
    /// `params = (r, s, t)`, `r >= 1`, `s, t >= 2`.
    Theta,
    /// `params = (n)`, `n >= 1`: `m(m-1)^(n-1)`.
    Tree,
}

impl fmt::Display for ClosedFormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedFormFamily::Wheel => "wheel",
            ClosedFormFamily::Unicyclic => "unicyclic",
            ClosedFormFamily::Cycle => "cycle",
            ClosedFormFamily::Theta => "theta",
            ClosedFormFamily::Tree => "tree",
        })
    }
}

impl FromStr for ClosedFormFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wheel" => Ok(ClosedFormFamily::Wheel),
            "unicyclic" => Ok(ClosedFormFamily::Unicyclic),
            "cycle" => Ok(ClosedFormFamily::Cycle),
            "theta" => Ok(ClosedFormFamily::Theta),
            "tree" => Ok(ClosedFormFamily::Tree),
            other => Err(Error::param(format!("no closed form for `{other}`"))),
        }
    }
}

fn signed(p: &IntPolynomial, exponent: usize) -> IntPolynomial {
    if exponent % 2 == 0 {
        p.clone()
    } else {
        -p
    }
}

/// The closed form as a polynomial in `m`.
///
/// The theta formula is a fraction over `m`; its numerator is built exactly
/// and divided by `m` only if the constant term vanishes, otherwise this is a
/// [`Error::Consistency`].
pub fn closed_form_polynomial(family: ClosedFormFamily, params: &[usize]) -> Result<IntPolynomial> {
    let bad = || Err(Error::param(format!("parameters {params:?} out of range for {family}")));
    let m = IntPolynomial::var();
    let m1 = IntPolynomial::linear(1);
    let m2 = IntPolynomial::linear(2);
    let pw = |p: &IntPolynomial, e: usize| p.pow(e as u32);
    match (family, params) {
        (ClosedFormFamily::Wheel, &[n]) if n >= 3 => Ok(&m * &(&pw(&m2, n) + &signed(&m2, n))),
        (ClosedFormFamily::Unicyclic, &[n, i]) if 3 <= i && i <= n => Ok(&pw(&m1, n) + &signed(&pw(&m1, n - i + 1), i)),
        (ClosedFormFamily::Cycle, &[n]) if n >= 3 => Ok(&pw(&m1, n) + &signed(&m1, n)),
        (ClosedFormFamily::Tree, &[n]) if n >= 1 => Ok(&m * &pw(&m1, n - 1)),
        (ClosedFormFamily::Theta, &[r, s, t]) if r >= 1 && s >= 2 && t >= 2 => {
            let terms = [
                pw(&m1, r + s + t),
                signed(&pw(&m1, r + 1), s + t),
                signed(&pw(&m1, s + 1), r + t),
                signed(&pw(&m1, t + 1), r + s),
                signed(&pw(&m1, 2), r + s + t),
                signed(&m1, r + s + t + 1),
            ];
            let numerator = terms.iter().fold(IntPolynomial::zero(), |acc, t| &acc + t);
            numerator
                .div_by_var()
                .ok_or_else(|| Error::Consistency(format!("theta({r},{s},{t}) numerator is not divisible by m")))
        }
        _ => bad(),
    }
}

/// Exact value of the closed form at `m`.
pub fn closed_form(family: ClosedFormFamily, params: &[usize], m: u64) -> Result<BigInt> {
    Ok(closed_form_polynomial(family, params)?.eval(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    fn brute_force_colorings(g: &Graph, m: u64) -> u64 {
        let n = g.n() as u32;
        (0..m.pow(n))
            .filter(|&code| {
                let color = |v: usize| code / m.pow(v as u32) % m;
                g.edges().iter().all(|&(u, v)| color(u) != color(v))
            })
            .count() as u64
    }

    #[test]
    fn small_examples() {
        assert_eq!(chromatic_polynomial(&Graph::empty(1).unwrap()).unwrap(), IntPolynomial::var());
        let c4 = make_family(Family::Cycle(4)).unwrap();
        assert_eq!(chromatic_polynomial(&c4).unwrap(), IntPolynomial::from_i64s(&[0, -3, 6, -4, 1]));
        let tree = make_family(Family::Star(5)).unwrap();
        assert_eq!(
            chromatic_polynomial(&tree).unwrap(),
            closed_form_polynomial(ClosedFormFamily::Tree, &[5]).unwrap()
        );
        assert_eq!(chromatic_polynomial(&Graph::empty(0).unwrap()).unwrap(), IntPolynomial::constant(1));
    }

    #[test]
    fn wheel_values() {
        assert_eq!(closed_form(ClosedFormFamily::Wheel, &[4], 3).unwrap(), BigInt::from(6));
        assert_eq!(closed_form(ClosedFormFamily::Wheel, &[4], 4).unwrap(), BigInt::from(72));
        let w4 = chromatic_polynomial(&make_family(Family::Wheel(4)).unwrap()).unwrap();
        assert_eq!(w4.eval(3), BigInt::from(6));
        assert_eq!(w4.eval(4), BigInt::from(72));
    }

    #[test]
    fn theta_value_matches_diamond() {
        // diamond: m(m-1)(m-2)^2
        assert_eq!(closed_form(ClosedFormFamily::Theta, &[1, 2, 2], 3).unwrap(), BigInt::from(6));
        let diamond = chromatic_polynomial(&make_family(Family::Theta(1, 2, 2)).unwrap()).unwrap();
        let expected = &(&IntPolynomial::var() * &IntPolynomial::linear(1)) * &IntPolynomial::linear(2).pow(2);
        assert_eq!(diamond, expected);
    }

    #[test]
    fn closed_form_parameter_errors() {
        assert!(matches!(closed_form(ClosedFormFamily::Unicyclic, &[4, 5], 3), Err(Error::Parameter(_))));
        assert!(matches!(closed_form(ClosedFormFamily::Theta, &[1, 1, 2], 3), Err(Error::Parameter(_))));
        assert!(matches!(closed_form(ClosedFormFamily::Wheel, &[2], 3), Err(Error::Parameter(_))));
        assert!(matches!(closed_form(ClosedFormFamily::Cycle, &[3, 1], 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let n = 5;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in (0u32..1 << pairs.len()).step_by(5) {
            let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap();
            let p = chromatic_polynomial(&g).unwrap();
            assert_eq!(p.degree(), Some(n));
            assert!(p.signs_alternate());
            assert_eq!(p.coeff(0), BigInt::from(0));
            for m in 0..=4 {
                assert_eq!(p.eval(m), BigInt::from(brute_force_colorings(&g, m)), "{g:?} m={m}");
            }
        }
    }

    #[test]
    fn capacity_cap() {
        let g = make_family(Family::Path(13)).unwrap();
        assert!(matches!(chromatic_polynomial(&g), Err(Error::Capacity { .. })));
    }
}
