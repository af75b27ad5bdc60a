//! Real scalar abstraction for the quantities that are not integers:
//! bound values, the average-order constant and the scaled sweep column.

use num_traits::{Float, FromPrimitive};

/// Floating point scalar usable for the real-valued outputs (f32 or f64).
pub trait Real: Float + FromPrimitive + std::fmt::Debug + Send + Sync + 'static {
    fn of_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 is representable as a float")
    }

    fn pi() -> Self;
}

impl Real for f32 {
    fn pi() -> Self {
        std::f32::consts::PI
    }
}

impl Real for f64 {
    fn pi() -> Self {
        std::f64::consts::PI
    }
}
