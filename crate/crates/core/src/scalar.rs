//! Floating point scalar used by every probabilistic or metric computation.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// f32 or f64.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
    /// Slack used when comparing quantities that are zero in exact arithmetic
    /// (information gains, mean-gain thresholds).
    fn tolerance() -> Self {
        Self::epsilon() * Self::from_u8(64).unwrap()
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Base-2 entropy of a discrete distribution given by counts. Zero counts contribute nothing.
pub fn entropy<T: Real>(counts: &[usize]) -> T {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return T::zero();
    }
    let n = T::from_count(total);
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = T::from_count(c) / n;
            -p * p.log2()
        })
        .fold(T::zero(), |acc, v| acc + v)
}
