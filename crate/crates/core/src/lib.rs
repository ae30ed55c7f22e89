//! Exact multivariate Fuss-Catalan numbers.
//!
//! The numbers `B_p(n, k_1, ..., k_{p-1})` generalize the ballot numbers of the
//! Catalan triangle to a `(p-1)`-parameter refinement of the Fuss-Catalan
//! number `C_p(n) = binom(pn, n) / ((p-1)n + 1)`. This crate computes them in
//! several independent ways and cross-checks the results:
//!
//! - [`exact`]: closed forms over arbitrary-precision integers.
//! - [`simplex`]: the defining summation recurrence, layer by layer, plus the
//!   extended (signed) array `B'_3` built from its corrected recurrence.
//! - [`lattice`]: exhaustive enumeration of paths and `p`-ary trees together
//!   with the statistics whose distribution is `B_p`, and a cyclic-shift
//!   verifier for the closed form.
//! - [`series`]: truncated power series in `t, x, y` for the generating
//!   functions of `B_3` and `B'_3`.
//! - [`verify`]: the named verification suites driven by the CLI.

pub mod error;
pub mod exact;
pub mod export;
pub mod lattice;
pub mod series;
pub mod simplex;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRational, StatIndex};
pub use lattice::{LatticePath, PAryTree, PathStats, Step};
pub use series::TruncatedSeries;
pub use simplex::{FCSimplex, PrimeGrid};
