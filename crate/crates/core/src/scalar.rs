//! Scalar abstraction shared by the per-state math.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the state math is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation of a norm, probability sum or bounded quantity
    /// before it is treated as an error rather than round-off.
    fn tolerance() -> Self;

    /// Lossless-enough literal conversion.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-12
    }
}

impl Real for f32 {
    #[inline]
    fn tolerance() -> Self {
        1e-5
    }
}

/// `-p log2 p` with the convention `0 log2 0 = 0`.
#[inline]
pub(crate) fn neg_plog2p<T: Real>(p: T) -> T {
    if p <= T::zero() {
        T::zero()
    } else {
        -p * p.log2()
    }
}

/// Binary entropy in bits of a Bernoulli(p) variable.
#[inline]
pub(crate) fn binary_entropy<T: Real>(p: T) -> T {
    neg_plog2p(p) + neg_plog2p(T::one() - p)
}
