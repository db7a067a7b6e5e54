//! Closed-form curves for the symmetric real family `y = 1/2`, where the
//! state is fixed by `alpha` and `delta = alpha - beta` and `C = |sin(delta)|`.

use crate::error::{Error, Result};
use crate::scalar::{binary_entropy, neg_plog2p, Real};
use crate::state::{entanglement_from_concurrence, Concurrence, EntropyBits};

/// Bisection budget for [`ridge_c`].
pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Default absolute tolerance on `|ridge(C) - I|` for [`ridge_c`].
pub const DEFAULT_RIDGE_TOL: f64 = 1e-12;

/// A point on the ridge `I = ridge(C)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RidgePoint<T> {
    pub c: Concurrence<T>,
    pub i: EntropyBits<T>,
}

/// Stationary points of `mi_param(., delta)` with index `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremaSet<T> {
    pub delta: T,
    pub n: i64,
    /// `(delta + (n + 1/2) pi) / 2`, where MI equals `ridge(|sin delta|)`.
    pub alpha_max: T,
    /// `(delta + n pi) / 2`, where MI vanishes.
    pub alpha_min: T,
}

fn reduce_mod_pi<T: Real>(x: T) -> T {
    let pi = T::PI();
    let r = x - pi * (x / pi).floor();
    if r >= pi {
        r - pi
    } else {
        r
    }
}

/// Mutual information of the `y = 1/2` state at `(alpha, beta = alpha - delta)`,
/// evaluated directly from the squared trigonometric weights.
pub fn mi_param<T: Real>(alpha: T, delta: T) -> EntropyBits<T> {
    let alpha = reduce_mod_pi(alpha);
    let beta = reduce_mod_pi(alpha - delta);
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let (ca2, sa2, cb2, sb2) = (ca * ca, sa * sa, cb * cb, sb * sb);
    let half = T::lit(0.5);
    let cos_mean = (ca2 + cb2) * half;
    let sin_mean = (sa2 + sb2) * half;
    let weighted = neg_plog2p(ca2) + neg_plog2p(cb2) + neg_plog2p(sa2) + neg_plog2p(sb2);
    let i = neg_plog2p(cos_mean) + neg_plog2p(sin_mean) - half * weighted;
    assert!(i >= -T::tolerance(), "internal consistency: mi_param {i} negative");
    EntropyBits::new(i.max(T::zero()).min(T::one())).expect("clamped into range")
}

fn check_unit<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v >= T::zero() && v <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: v.as_f64() })
    }
}

fn ridge_raw<T: Real>(c: T) -> T {
    let u = (T::one() + c) * T::lit(0.5);
    (T::one() - binary_entropy(u)).max(T::zero())
}

/// `ridge(C) = 1 + (1+C)/2 log2((1+C)/2) + (1-C)/2 log2((1-C)/2)`.
pub fn ridge_i<T: Real>(c: T) -> Result<EntropyBits<T>> {
    check_unit("concurrence", c)?;
    EntropyBits::new(ridge_raw(c))
}

/// Inverse of [`ridge_i`] by bisection on `[0, 1]`.
pub fn ridge_c<T: Real>(i: T, tol: T) -> Result<Concurrence<T>> {
    check_unit("mutual information", i)?;
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::Domain { what: "tolerance", value: tol.as_f64() });
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    if (ridge_raw(lo) - i).abs() <= tol {
        return Concurrence::new(lo);
    }
    if (ridge_raw(hi) - i).abs() <= tol {
        return Concurrence::new(hi);
    }
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = (lo + hi) * T::lit(0.5);
        let f = ridge_raw(mid) - i;
        if f.abs() <= tol {
            return Concurrence::new(mid);
        }
        if f < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence { tol: tol.as_f64(), iterations: MAX_BISECTION_ITERATIONS })
}

/// Ridge point for a given concurrence.
pub fn ridge_point<T: Real>(c: T) -> Result<RidgePoint<T>> {
    Ok(RidgePoint { c: Concurrence::new(c)?, i: ridge_i(c)? })
}

pub fn extrema<T: Real>(delta: T, n: i64) -> ExtremaSet<T> {
    let pi = T::PI();
    let n_f = T::from_i64(n).expect("index representable");
    let half = T::lit(0.5);
    ExtremaSet { delta, n, alpha_max: (delta + (n_f + half) * pi) * half, alpha_min: (delta + n_f * pi) * half }
}

/// Upper bound `E(C)` on the post-measurement mutual information.
pub fn bound_e<T: Real>(c: T) -> Result<EntropyBits<T>> {
    entanglement_from_concurrence(c)
}
