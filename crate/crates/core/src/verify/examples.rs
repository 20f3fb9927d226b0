use std::sync::Arc;

use num::BigInt;

use super::{run_timed, CheckReport};
use crate::chromatic::{chromatic_polynomial, closed_form, ClosedFormFamily};
use crate::cover::{find_canonical_labeling, FullCover, Perm};
use crate::dp::{CoverSpace, DpOptions};
use crate::error::{Error, Result};
use crate::graph::{make_family, Family};

// Vertex names of the drawings against the wheel numbering: rim x-u-z-v-x is
// 0-1-2-3, hub y is 4.
const X: usize = 0;
const U: usize = 1;
const Z: usize = 2;
const V: usize = 3;
const Y: usize = 4;

/// Colorings listed with the 3-fold drawing, as 1-based `(x, u, y, v, z)`.
const FIGURE_ONE: [[usize; 5]; 6] = [
    [1, 2, 3, 2, 2],
    [2, 1, 3, 1, 1],
    [3, 1, 2, 1, 1],
    [1, 3, 2, 3, 3],
    [2, 3, 1, 3, 3],
    [3, 2, 1, 2, 2],
];

/// Colorings containing `(x, 1)` listed with the 4-fold drawing.
const FIGURE_TWO: [[usize; 5]; 18] = [
    [1, 2, 3, 2, 1],
    [1, 2, 3, 2, 4],
    [1, 2, 3, 4, 1],
    [1, 2, 3, 4, 2],
    [1, 2, 4, 2, 1],
    [1, 2, 4, 3, 1],
    [1, 2, 4, 3, 2],
    [1, 3, 2, 3, 1],
    [1, 3, 2, 4, 1],
    [1, 3, 2, 4, 3],
    [1, 3, 4, 2, 1],
    [1, 3, 4, 2, 3],
    [1, 3, 4, 3, 1],
    [1, 3, 4, 3, 2],
    [1, 4, 2, 3, 4],
    [1, 4, 2, 4, 3],
    [1, 4, 3, 2, 4],
    [1, 4, 3, 4, 2],
];

/// Transcription of the drawn 3- and 4-fold covers of `W_4`: every level
/// matching except `(u,i)-(z,i+1)` and, for `m = 3`, `(z,j)-(v,j+1)`
/// (indices mod `m`).
pub fn figure_cover(m: usize) -> Result<FullCover> {
    if m != 3 && m != 4 {
        return Err(Error::param("the drawings are 3- and 4-fold"));
    }
    let g = Arc::new(make_family(Family::Wheel(4))?);
    let mut h = FullCover::identity(g, m)?.with_oriented(U, Z, Perm::rotation(m, 1))?;
    if m == 3 {
        h = h.with_oriented(Z, V, Perm::rotation(m, 1))?;
    }
    Ok(h)
}

/// The listed colorings as 0-based index vectors in wheel numbering.
pub fn listed_colorings(m: usize) -> Vec<Vec<usize>> {
    let rows: &[[usize; 5]] = if m == 3 { &FIGURE_ONE } else { &FIGURE_TWO };
    let mut out: Vec<Vec<usize>> = rows
        .iter()
        .map(|&[x, u, y, v, z]| {
            let mut c = vec![0; 5];
            c[X] = x - 1;
            c[U] = u - 1;
            c[Y] = y - 1;
            c[V] = v - 1;
            c[Z] = z - 1;
            c
        })
        .collect();
    out.sort();
    out
}

/// Covers of `W_4` attaining `P(W_4, m)` without a canonical labeling, for
/// `m = 3` and `m = 4`, found by searching all gauge-fixed covers; plus the
/// drawn covers checked against their listed colorings.
pub fn reproduce_w4_examples(opts: &DpOptions) -> Result<CheckReport> {
    run_timed(|| {
        let mut report = CheckReport::new("w4");
        let g = Arc::new(make_family(Family::Wheel(4))?);
        let poly = chromatic_polynomial(&g)?;
        for (m, known) in [(3usize, 6u32), (4, 72)] {
            let closed = closed_form(ClosedFormFamily::Wheel, &[4], m as u64)?;
            let dc = poly.eval(m as u64);
            report.expect_eq(format!("P(W_4,{m}) wheel formula"), BigInt::from(known), closed);
            report.expect_eq(format!("P(W_4,{m}) deletion-contraction"), BigInt::from(known), dc);
            let target = known as u128;

            let id = FullCover::identity(g.clone(), m)?;
            report.check(
                format!("W_4 m={m} identity cover: count P, canonical (not a witness)"),
                format!("{target} canonical"),
                format!("{} {}", id.count_colorings(), if find_canonical_labeling(&id).is_some() { "canonical" } else { "none" }),
                id.count_colorings() == target && find_canonical_labeling(&id).is_some(),
            );

            let space = CoverSpace::new(g.clone(), m, opts.budget)?;
            let (mut at_target, mut witnesses) = (0u64, 0u64);
            let mut first = None;
            for h in space.achieving(target) {
                at_target += 1;
                if find_canonical_labeling(&h).is_none() {
                    witnesses += 1;
                    if first.is_none() {
                        first = Some(h);
                    }
                }
            }
            report.check(
                format!("W_4 m={m} cover with count P(W_4,m) and no canonical labeling"),
                "exists",
                format!("{witnesses} of {at_target} covers at {target}, {} searched", space.size()),
                first.is_some(),
            );
            if let Some(w) = first {
                report.expect_eq(format!("W_4 m={m} witness recount"), target, w.count_colorings());
                report.attach(format!("w4-m{m}.cover"), w.to_text());
            }

            let fig = figure_cover(m)?;
            report.expect_eq(format!("W_4 m={m} drawn cover count"), target, fig.count_colorings());
            report.check(
                format!("W_4 m={m} drawn cover has no canonical labeling"),
                "none",
                if find_canonical_labeling(&fig).is_some() { "found" } else { "none" },
                find_canonical_labeling(&fig).is_none(),
            );
            let listed = listed_colorings(m);
            let mut ours: Vec<Vec<usize>> = fig.colorings().into_iter().map(|c| c.indices).collect();
            if m == 4 {
                ours.retain(|c| c[X] == 0);
            }
            ours.sort();
            report.check(
                format!("W_4 m={m} drawn cover colorings match the listed ones"),
                format!("{} listed", listed.len()),
                format!("{} computed, {} in common", ours.len(), ours.iter().filter(|c| listed.contains(c)).count()),
                ours == listed,
            );
        }
        Ok(report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_one_matches() {
        let h = figure_cover(3).unwrap();
        assert_eq!(h.count_colorings(), 6);
        let ours: Vec<Vec<usize>> = h.colorings().into_iter().map(|c| c.indices).collect();
        assert_eq!(ours, listed_colorings(3));
        assert!(find_canonical_labeling(&h).is_none());
    }

    #[test]
    fn figure_two_matches() {
        let h = figure_cover(4).unwrap();
        assert_eq!(h.count_colorings(), 72);
        let with_x1: Vec<Vec<usize>> =
            h.colorings().into_iter().map(|c| c.indices).filter(|c| c[X] == 0).collect();
        assert_eq!(with_x1, listed_colorings(4));
        assert!(find_canonical_labeling(&h).is_none());
    }

    #[test]
    fn m3_search() {
        let r = reproduce_w4_examples(&DpOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.artifacts.len(), 2);
    }
}
