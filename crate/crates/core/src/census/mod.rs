//! Counting formulas for group structures of elliptic curves over `F_q`.
//!
//! For a structure `Z_m x Z_n` the trace is `t = q + 1 - mn`. Ordinary
//! traces (`gcd(t, p) = 1`) split the isogeny class of size `H(t^2 - 4q)`
//! among the divisors `m` of `s_t`; supersingular traces contribute a few
//! closed-form terms depending on the parity of `k` and on `p mod 12`.

mod estimates;
mod formulas;
mod identities;
mod sweep;
mod table;
mod trace;

pub use estimates::{average_order_ratio, bounds_f, sum_f_upto, theta_constant, Bounds, Theta};
pub use formulas::{
    admissible_trace, count_f, count_group_structures, f_per_trace, isogeny_class_size,
    structure_exists,
};
pub use identities::{proof_identities, IdentityReport, StructureLevel};
pub use sweep::{sweep, Sweep, SweepRow, SweepSummary};
pub use table::{census, census_with, CensusEntry, CensusTable, IsogenyClass};
pub use trace::{st_partition, trace_data, TraceData};

use serde::Serialize;

/// The abstract group `Z_m x Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupStructure {
    pub m: u64,
    pub n: u64,
}

impl GroupStructure {
    pub fn new(m: u64, n: u64) -> Self {
        Self { m, n }
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }
}

impl std::fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z_{} x Z_{}", self.m, self.n)
    }
}
