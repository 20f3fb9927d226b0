//! Exact computation toolkit for DP-coloring (correspondence coloring).
//!
//! The crate represents full `m`-fold covers of simple graphs as one
//! permutation per edge, counts cover colorings exactly, minimizes over
//! gauge-fixed covers to obtain the DP color function, detects canonical
//! labelings through spanning-tree holonomy, and computes chromatic
//! polynomials by memoized deletion–contraction. The [`verify`] module
//! turns the known bounds and counting identities for these objects into
//! finite, exhaustive checks.

pub mod chromatic;
pub mod cli;
pub mod cover;
pub mod dp;
pub mod error;
pub mod graph;
pub mod verify;

pub use chromatic::{chromatic_polynomial, closed_form, ClosedFormFamily, IntPolynomial};
pub use cover::{ColoringAssignment, FullCover, GaugeRelabeling, Perm, TwoPathCases};
pub use dp::{dp_chromatic_number, dp_color_value, enumerate_covers, DpOptions, DpSearchResult};
pub use error::{Error, Result};
pub use graph::{EarDecomposition, Family, Graph, GraphClass};

/// Exact coloring count. Enumeration cost bounds every reachable value far
/// below `u128::MAX`.
pub type Count = u128;
