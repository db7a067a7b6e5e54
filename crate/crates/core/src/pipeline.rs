//! Parallel, blocked Monte Carlo runs.
//!
//! Work is split into [`BLOCK_LEN`]-sample blocks; block `k` always draws
//! from ChaCha stream `k` of the run's seed. Per-worker accumulators are
//! combined with an exact, order-independent merge, so results do not depend
//! on the number of workers.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hist::Joint2DHistogram;
use crate::sampler::{EnsembleKind, EnsembleSpec, SampleReal, SeedSpec, StateStream, BLOCK_LEN};
use crate::state::observe;

/// Folds every block of `n` samples into an accumulator on the ambient rayon pool.
///
/// `fold_block(acc, rng, len)` must consume exactly the samples of one block
/// from `rng`; `merge` must be associative and commutative.
pub fn fold_blocks<A, I, F, M>(n: u64, seed: SeedSpec, init: I, fold_block: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &mut ChaCha8Rng, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK_LEN);
    (0..blocks)
        .into_par_iter()
        .fold(&init, |acc, k| {
            let len = BLOCK_LEN.min(n - k * BLOCK_LEN);
            let mut rng = seed.block_rng(k);
            fold_block(acc, &mut rng, len)
        })
        .reduce(&init, merge)
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if workers == 0 {
        return Err(Error::Config("worker count must be at least 1".into()));
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(f))
}

/// Parameters of a sampling run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunSpec {
    pub ensemble: EnsembleSpec,
    pub delta_c: f64,
    pub delta_i: f64,
    pub workers: usize,
}

/// Samples the ensemble and bins every `(C, I)` pair.
pub fn joint_histogram<T: SampleReal>(spec: &RunSpec) -> Result<Joint2DHistogram> {
    let empty = Joint2DHistogram::new(spec.delta_c, spec.delta_i)?;
    let EnsembleSpec { kind, n, seed } = spec.ensemble;
    with_workers(spec.workers, || accumulate_blocks::<T>(&empty, kind, n, seed))?
}

/// Histogram of `n` samples on the ambient rayon pool.
pub fn accumulate_blocks<T: SampleReal>(
    empty: &Joint2DHistogram,
    kind: EnsembleKind,
    n: u64,
    seed: SeedSpec,
) -> Result<Joint2DHistogram> {
    fold_blocks(
        n,
        seed,
        || Ok(empty.clone()),
        |acc: Result<Joint2DHistogram>, rng, len| {
            let mut h = acc?;
            let stream = StateStream::<T, _>::from_rng(kind, rng);
            for s in stream.take(len as usize) {
                let (c, i) = observe(&s);
                h.accumulate(c.value().as_f64(), i.value().as_f64())?;
            }
            Ok(h)
        },
        |a, b| a?.merged(&b?),
    )
}
