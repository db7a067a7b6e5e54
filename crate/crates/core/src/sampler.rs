//! Random pure-state ensembles.
//!
//! Every stream is a ChaCha8 generator keyed by `(master_seed, stream_id)`.
//! Large runs are cut into fixed-length blocks, and block `k` reads ChaCha
//! stream `k` under the same key, so the sample assigned to any global index
//! does not depend on how blocks are scheduled across workers.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, StandardUniform};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{from_params, ParamState, TwoQubitPureState};

/// Number of consecutive samples drawn from one ChaCha stream in a blocked run.
pub const BLOCK_LEN: u64 = 1 << 16;

/// Scalar types the samplers can draw.
pub trait SampleReal: Real {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// Uniform on `[0, 1)`.
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

macro_rules! impl_sample_real {
    ($t:ty) => {
        impl SampleReal for $t {
            #[inline]
            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }
            #[inline]
            fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardUniform.sample(rng)
            }
        }
    };
}

impl_sample_real!(f32);
impl_sample_real!(f64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self { master_seed, stream_id }
    }

    fn key(&self) -> [u8; 32] {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream_id.to_le_bytes());
        key
    }

    /// Generator for this stream (block 0).
    pub fn rng(&self) -> ChaCha8Rng {
        self.block_rng(0)
    }

    /// Generator for block `k` of a blocked run under this seed.
    pub fn block_rng(&self, k: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key());
        rng.set_stream(k);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    /// Real amplitudes, uniform on the unit 3-sphere.
    RealS3,
    /// Complex amplitudes, uniform on the unit 7-sphere.
    ComplexS7,
    /// `(y, alpha, beta)` uniform, mapped through [`from_params`].
    Param,
    /// Amplitudes `(pq, ps, rq, -rs)`, which have zero mutual information.
    ZeroMiFamily,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 4] = [Self::RealS3, Self::ComplexS7, Self::Param, Self::ZeroMiFamily];

    pub fn name(self) -> &'static str {
        match self {
            Self::RealS3 => "real-s3",
            Self::ComplexS7 => "complex-s7",
            Self::Param => "param",
            Self::ZeroMiFamily => "zero-mi",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Config(format!("unknown ensemble `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: u64,
    pub seed: SeedSpec,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: u64, seed: SeedSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        Ok(Self { kind, n, seed })
    }

    /// Number of blocks covering `n` samples.
    pub fn blocks(&self) -> u64 {
        self.n.div_ceil(BLOCK_LEN)
    }

    /// Samples in block `k`.
    pub fn block_len(&self, k: u64) -> u64 {
        let start = k * BLOCK_LEN;
        BLOCK_LEN.min(self.n.saturating_sub(start))
    }
}

/// Fills `out` with standard normals, redrawing the whole vector if every
/// component is below the tolerance in magnitude.
#[inline]
fn nonzero_normals<T: SampleReal, R: Rng + ?Sized, const N: usize>(rng: &mut R) -> [T; N] {
    loop {
        let v: [T; N] = std::array::from_fn(|_| T::standard_normal(rng));
        if v.iter().any(|x| x.abs() >= T::tolerance()) {
            return v;
        }
    }
}

#[inline]
fn normalized<T: Real, const N: usize>(v: [T; N]) -> [T; N] {
    let inv = v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt().recip();
    v.map(|x| x * inv)
}

pub fn draw_real_s3<T: SampleReal, R: Rng + ?Sized>(rng: &mut R) -> TwoQubitPureState<T> {
    let v = normalized(nonzero_normals::<T, R, 4>(rng));
    TwoQubitPureState::from_unit(v.map(|x| Complex::new(x, T::zero())))
}

pub fn draw_complex_s7<T: SampleReal, R: Rng + ?Sized>(rng: &mut R) -> TwoQubitPureState<T> {
    let v = normalized(nonzero_normals::<T, R, 8>(rng));
    TwoQubitPureState::from_unit(std::array::from_fn(|k| Complex::new(v[2 * k], v[2 * k + 1])))
}

pub fn draw_param<T: SampleReal, R: Rng + ?Sized>(rng: &mut R) -> ParamState<T> {
    let two_pi = T::PI() + T::PI();
    let y = T::unit(rng);
    let alpha = two_pi * T::unit(rng);
    let beta = two_pi * T::unit(rng);
    ParamState::new(y, alpha, beta).expect("unit draw lies in [0, 1)")
}

/// State `(pq, ps, rq, -rs)` with `(p, r)` and `(q, s)` independent unit
/// vectors from normalized Gaussian pairs; the outcome distribution is a
/// product of marginals, so the mutual information vanishes.
pub fn draw_zero_mi<T: SampleReal, R: Rng + ?Sized>(rng: &mut R) -> TwoQubitPureState<T> {
    let [p, q, r, s] = loop {
        let v: [T; 4] = std::array::from_fn(|_| T::standard_normal(rng));
        let left = (v[0] * v[0] + v[2] * v[2]).sqrt();
        let right = (v[1] * v[1] + v[3] * v[3]).sqrt();
        if left >= T::tolerance() && right >= T::tolerance() {
            break [v[0] / left, v[1] / right, v[2] / left, v[3] / right];
        }
    };
    zero_mi_state(p, q, r, s)
}

/// Zero-MI family member from its factors; `(p, r)` and `(q, s)` should be unit vectors.
pub fn zero_mi_state<T: Real>(p: T, q: T, r: T, s: T) -> TwoQubitPureState<T> {
    let re = |x: T| Complex::new(x, T::zero());
    TwoQubitPureState::from_unit([re(p * q), re(p * s), re(r * q), re(-(r * s))])
}

/// Infinite stream of states from one ensemble.
#[derive(Clone, Debug)]
pub struct StateStream<T, R = ChaCha8Rng> {
    kind: EnsembleKind,
    rng: R,
    _scalar: PhantomData<T>,
}

impl<T: SampleReal, R: Rng> StateStream<T, R> {
    pub fn from_rng(kind: EnsembleKind, rng: R) -> Self {
        Self { kind, rng, _scalar: PhantomData }
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }
}

impl<T: SampleReal> StateStream<T> {
    pub fn new(kind: EnsembleKind, seed: SeedSpec) -> Self {
        Self::from_rng(kind, seed.rng())
    }
}

impl<T: SampleReal, R: Rng> Iterator for StateStream<T, R> {
    type Item = TwoQubitPureState<T>;

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        Some(match self.kind {
            EnsembleKind::RealS3 => draw_real_s3(&mut self.rng),
            EnsembleKind::ComplexS7 => draw_complex_s7(&mut self.rng),
            EnsembleKind::Param => from_params(&draw_param(&mut self.rng)),
            EnsembleKind::ZeroMiFamily => draw_zero_mi(&mut self.rng),
        })
    }
}

/// Infinite stream of uniform `(y, alpha, beta)` triples.
#[derive(Clone, Debug)]
pub struct ParamStream<T, R = ChaCha8Rng> {
    rng: R,
    _scalar: PhantomData<T>,
}

impl<T: SampleReal, R: Rng> Iterator for ParamStream<T, R> {
    type Item = ParamState<T>;

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        Some(draw_param(&mut self.rng))
    }
}

pub fn sample_real_s3<T: SampleReal>(seed: SeedSpec) -> StateStream<T> {
    StateStream::new(EnsembleKind::RealS3, seed)
}

pub fn sample_complex_s7<T: SampleReal>(seed: SeedSpec) -> StateStream<T> {
    StateStream::new(EnsembleKind::ComplexS7, seed)
}

pub fn sample_param<T: SampleReal>(seed: SeedSpec) -> ParamStream<T> {
    ParamStream { rng: seed.rng(), _scalar: PhantomData }
}

pub fn sample_zero_mi_family<T: SampleReal>(seed: SeedSpec) -> StateStream<T> {
    StateStream::new(EnsembleKind::ZeroMiFamily, seed)
}
