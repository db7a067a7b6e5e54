//! Sample-based checks of the relations between concurrence, entanglement
//! entropy and post-measurement mutual information.
//!
//! Each check counts violations instead of stopping at the first one, and
//! all of them are deterministic for a fixed `(seed, n)` regardless of the
//! rayon pool they run on.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curves::{extrema, mi_param, ridge_i};
use crate::error::{Error, Result};
use crate::hist::{Axis, Joint2DHistogram};
use crate::pipeline::fold_blocks;
use crate::sampler::{EnsembleKind, SeedSpec, StateStream};
use crate::state::{
    entanglement_from_concurrence, entanglement_partial_trace, from_params, mutual_information, observe, ParamState,
};

/// Slack allowed in `I <= E(C)`.
pub const BOUND_TOL: f64 = 1e-9;
/// Largest mutual information accepted for the zero-MI family.
pub const ZERO_MI_TOL: f64 = 1e-12;
/// Agreement required between the closed-form and generic MI routes.
pub const PARAM_TOL: f64 = 1e-12;
/// Agreement required between the partial-trace and concurrence routes to `E`.
pub const ROUTE_TOL: f64 = 1e-10;
/// Minimum histogram population for the empirical ridge check.
pub const RIDGE_MIN_SAMPLES: u64 = 10_000_000;
/// Concurrence columns examined by the ridge check.
pub const RIDGE_C_RANGE: (f64, f64) = (0.3, 0.95);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub samples: u64,
    pub violations: u64,
    /// Largest amount by which a sample exceeded its allowance; 0 when none did.
    pub max_violation: f64,
    pub pass: bool,
}

impl VerificationReport {
    fn new(name: impl Into<String>, tally: Tally) -> Self {
        Self {
            name: name.into(),
            samples: tally.samples,
            violations: tally.violations,
            max_violation: tally.max_violation,
            pass: tally.violations == 0,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Writes reports as JSON lines.
pub fn write_json_lines<W: Write>(mut w: W, reports: &[VerificationReport]) -> Result<()> {
    for r in reports {
        writeln!(w, "{}", r.to_json_line())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Tally {
    samples: u64,
    violations: u64,
    max_violation: f64,
}

impl Tally {
    /// Records a sample whose value exceeds its allowance by `excess` (negative when fine).
    #[inline]
    fn record(&mut self, excess: f64) {
        self.samples += 1;
        if excess > 0.0 || excess.is_nan() {
            self.violations += 1;
            let e = if excess.is_nan() { f64::INFINITY } else { excess };
            self.max_violation = self.max_violation.max(e);
        }
    }

    fn merge(self, other: Tally) -> Tally {
        Tally {
            samples: self.samples + other.samples,
            violations: self.violations + other.violations,
            max_violation: self.max_violation.max(other.max_violation),
        }
    }
}

fn require_samples(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::Config("sample count must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn tally_states<F>(kind: EnsembleKind, n: u64, seed: SeedSpec, excess: F) -> Tally
where
    F: Fn(&crate::state::TwoQubitPureState<f64>) -> f64 + Sync + Send,
{
    fold_blocks(
        n,
        seed,
        Tally::default,
        |mut t, rng, len| {
            for s in StateStream::<f64, _>::from_rng(kind, rng).take(len as usize) {
                t.record(excess(&s));
            }
            t
        },
        Tally::merge,
    )
}

/// `I <= E(C) + BOUND_TOL` on `n` states of `kind`.
pub fn check_bound(n: u64, seed: SeedSpec, kind: EnsembleKind) -> Result<VerificationReport> {
    require_samples(n)?;
    let t = tally_states(kind, n, seed, |s| {
        let (c, i) = observe(s);
        i.value() - c.entanglement().value() - BOUND_TOL
    });
    Ok(VerificationReport::new(format!("bound[{kind}]"), t))
}

/// Zero-MI family members have `I <= ZERO_MI_TOL`.
pub fn check_appendix(n: u64, seed: SeedSpec) -> Result<VerificationReport> {
    require_samples(n)?;
    let t =
        tally_states(EnsembleKind::ZeroMiFamily, n, seed, |s| mutual_information(&s.measure()).value() - ZERO_MI_TOL);
    Ok(VerificationReport::new("appendix", t))
}

/// `E` from the reduced density matrix agrees with `E(C)`.
pub fn check_routes(n: u64, seed: SeedSpec, kind: EnsembleKind) -> Result<VerificationReport> {
    require_samples(n)?;
    let t = tally_states(kind, n, seed, |s| {
        let via_trace = entanglement_partial_trace(s).value();
        let via_c = s.concurrence().entanglement().value();
        (via_trace - via_c).abs() - ROUTE_TOL
    });
    Ok(VerificationReport::new(format!("routes[{kind}]"), t))
}

/// Closed-form `mi_param(alpha, delta)` against the generic pipeline on
/// uniform random `(alpha, delta)` in `[0, 2 pi)^2`.
pub fn check_param_oracle(n: u64, seed: SeedSpec) -> Result<VerificationReport> {
    require_samples(n)?;
    let two_pi = std::f64::consts::TAU;
    let t = fold_blocks(
        n,
        seed,
        Tally::default,
        |mut t, rng, len| {
            for _ in 0..len {
                let alpha = two_pi * rng.random::<f64>();
                let delta = two_pi * rng.random::<f64>();
                t.record((mi_param(alpha, delta).value() - param_pipeline_mi(alpha, delta)).abs() - PARAM_TOL);
            }
            t
        },
        Tally::merge,
    );
    Ok(VerificationReport::new("param", t))
}

fn param_pipeline_mi(alpha: f64, delta: f64) -> f64 {
    let p = ParamState::new(0.5, alpha, alpha - delta).expect("y = 1/2 is valid");
    mutual_information(&from_params(&p).measure()).value()
}

/// At `n_deltas` random `delta` and `n in -2..=2`, MI vanishes at `alpha_min`
/// and equals `ridge(|sin delta|)` at `alpha_max`.
pub fn check_extrema(n_deltas: u64, seed: SeedSpec) -> Result<VerificationReport> {
    require_samples(n_deltas)?;
    let t = fold_blocks(
        n_deltas,
        seed,
        Tally::default,
        |mut t, rng, len| {
            for _ in 0..len {
                let delta = std::f64::consts::TAU * rng.random::<f64>();
                let expected = ridge_i(delta.sin().abs()).expect("|sin| in [0, 1]").value();
                for n in -2..=2 {
                    let e = extrema(delta, n);
                    t.record(mi_param(e.alpha_min, delta).value() - PARAM_TOL);
                    t.record((mi_param(e.alpha_max, delta).value() - expected).abs() - PARAM_TOL);
                }
            }
            t
        },
        Tally::merge,
    );
    Ok(VerificationReport::new("extrema", t))
}

/// Off-zero peak of `p(I | C)` in one concurrence column.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RidgeColumn {
    pub c_center: f64,
    /// Center of the most populated local maximum of the column, excluding
    /// the first `I` bin; `None` if the column has no such maximum.
    pub peak_i: Option<f64>,
    pub expected_i: f64,
}

/// Locates the off-zero conditional peak in every column with center in
/// [`RIDGE_C_RANGE`].
pub fn ridge_columns(h: &Joint2DHistogram) -> Vec<RidgeColumn> {
    let ni = h.bins_i();
    (0..h.bins_c())
        .filter(|&kc| {
            let c = h.bin_center(Axis::C, kc);
            c >= RIDGE_C_RANGE.0 && c <= RIDGE_C_RANGE.1
        })
        .map(|kc| {
            let col: Vec<u64> = (0..ni).map(|ki| h.count(kc, ki)).collect();
            let mut best: Option<usize> = None;
            for k in 1..ni {
                let left = col[k - 1];
                let right = if k + 1 < ni { col[k + 1] } else { 0 };
                if col[k] > 0 && col[k] >= left && col[k] >= right && best.is_none_or(|b| col[k] > col[b]) {
                    best = Some(k);
                }
            }
            let c_center = h.bin_center(Axis::C, kc);
            RidgeColumn {
                c_center,
                peak_i: best.map(|k| h.bin_center(Axis::I, k)),
                expected_i: ridge_i(c_center).expect("column center in [0, 1]").value(),
            }
        })
        .collect()
}

/// Every examined column's off-zero peak lies within `2 delta_i` of `ridge(C)`.
pub fn check_ridge_empirical(h: &Joint2DHistogram) -> Result<VerificationReport> {
    if h.total() < RIDGE_MIN_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "ridge check needs at least {RIDGE_MIN_SAMPLES} samples, histogram has {}",
            h.total()
        )));
    }
    let window = 2.0 * h.delta_i();
    let mut t = Tally::default();
    for col in ridge_columns(h) {
        t.record(match col.peak_i {
            Some(i) => (i - col.expected_i).abs() - window,
            None => f64::INFINITY,
        });
    }
    Ok(VerificationReport::new("ridge", t))
}

/// `I <= E(C)` for a single state, as `(I, E)`.
pub fn bound_pair(s: &crate::state::TwoQubitPureState<f64>) -> (f64, f64) {
    let (c, i) = observe(s);
    let e = entanglement_from_concurrence(c.value()).expect("concurrence in [0, 1]");
    (i.value(), e.value())
}
