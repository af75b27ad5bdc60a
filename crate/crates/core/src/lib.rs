//! Group structures realized by elliptic curves over a fixed finite field.
//!
//! For every prime power `q` this crate counts the `F_q`-isomorphism
//! classes of elliptic curves with `E(F_q) = Z_m x Z_n`, the number `F(q)`
//! of distinct structures, bounds and averages of `F(q)`, and sweep
//! statistics for the most frequent structure over prime fields. The
//! [`oracle`] module recomputes small censuses by enumerating curves.

pub mod arith;
pub mod census;
pub mod classnum;
pub mod error;
pub mod numeric;
pub mod oracle;

pub use arith::{Factorization, PrimePower};
pub use census::{CensusEntry, CensusTable, GroupStructure, SweepRow, SweepSummary, TraceData};
pub use classnum::{ClassNumberTable, ClassNumbers, Discriminant, Pointwise};
pub use error::{Error, Result};
pub use numeric::Real;

/// Exact ratio `G(p) / I(p)`.
pub type Ratio = num_rational::Ratio<u64>;
/// Bounds on `F(q)` in double precision.
pub type Bounds = census::Bounds<f64>;
pub type Bounds32 = census::Bounds<f32>;
/// Average-order constant partial sum in double precision.
pub type Theta = census::Theta<f64>;
pub type Theta32 = census::Theta<f32>;
