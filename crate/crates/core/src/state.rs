//! Per-state observables of a two-qubit pure state `a|00> + b|01> + c|10> + d|11>`.
//!
//! Local projective measurement in the product basis turns the state into a
//! four-outcome classical distribution `(|a|^2, |b|^2, |c|^2, |d|^2)`; its
//! mutual information is compared against the concurrence `2|ad - bc|` and
//! the entanglement entropy of the reduced state.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{neg_plog2p, Real};

/// Complex coefficient of one computational basis ket.
pub type Amplitude<T> = Complex<T>;

/// Normalized two-qubit pure state, amplitudes ordered `|00>, |01>, |10>, |11>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitPureState<T> {
    amps: [Amplitude<T>; 4],
}

/// Outcome probabilities `P1..P4` of the product-basis measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeDistribution<T> {
    p: [T; 4],
}

/// Entropy or information in bits.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct EntropyBits<T>(T);

/// Concurrence, a value in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Concurrence<T>(T);

/// Real parametrization `A cos(alpha)|00> + A sin(alpha)|01> + B cos(beta)|10> + B sin(beta)|11>`
/// with `y = A^2` and `B^2 = 1 - y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamState<T> {
    y: T,
    alpha: T,
    beta: T,
}

impl<T: Real> EntropyBits<T> {
    /// Wraps a raw entropy, clamping round-off excursions below zero.
    pub fn new(value: T) -> Result<Self> {
        if !value.is_finite() || value < -T::tolerance() {
            return Err(Error::Domain { what: "entropy", value: value.as_f64() });
        }
        Ok(Self(value.max(T::zero())))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }
}

impl<T: Real> Concurrence<T> {
    /// Validates `value` in `[0, 1]`; values within the scalar tolerance of
    /// the boundary are clamped onto it.
    pub fn new(value: T) -> Result<Self> {
        let tol = T::tolerance();
        if !(value >= -tol && value <= T::one() + tol) {
            return Err(Error::Domain { what: "concurrence", value: value.as_f64() });
        }
        Ok(Self(value.max(T::zero()).min(T::one())))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// Entanglement entropy `E(C)` of a pure state with this concurrence.
    pub fn entanglement(self) -> EntropyBits<T> {
        EntropyBits(entropy_of_concurrence(self.0))
    }
}

impl<T: Real> OutcomeDistribution<T> {
    pub fn new(p: [T; 4]) -> Result<Self> {
        let tol = T::tolerance();
        for &pm in &p {
            if !(pm >= -tol && pm <= T::one() + tol) {
                return Err(Error::InvalidDistribution(format!("probability {pm} outside [0, 1]")));
            }
        }
        let sum = p.iter().fold(T::zero(), |acc, &x| acc + x);
        if (sum - T::one()).abs() > tol {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {sum}")));
        }
        Ok(Self { p: p.map(|x| x.max(T::zero()).min(T::one())) })
    }

    #[inline]
    pub fn probabilities(&self) -> [T; 4] {
        self.p
    }
}

impl<T: Real> ParamState<T> {
    pub fn new(y: T, alpha: T, beta: T) -> Result<Self> {
        if !(y >= T::zero() && y <= T::one()) {
            return Err(Error::Domain { what: "y", value: y.as_f64() });
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { y, alpha, beta })
    }

    #[inline]
    pub fn y(&self) -> T {
        self.y
    }
    #[inline]
    pub fn alpha(&self) -> T {
        self.alpha
    }
    #[inline]
    pub fn beta(&self) -> T {
        self.beta
    }
}

impl<T: Real> TwoQubitPureState<T> {
    /// See [`make_state`].
    pub fn new(a: Amplitude<T>, b: Amplitude<T>, c: Amplitude<T>, d: Amplitude<T>, normalize: bool) -> Result<Self> {
        make_state(a, b, c, d, normalize)
    }

    /// Builds a state from amplitudes already on the unit sphere.
    #[inline]
    pub(crate) fn from_unit(amps: [Amplitude<T>; 4]) -> Self {
        Self { amps }
    }

    #[inline]
    pub fn amplitudes(&self) -> [Amplitude<T>; 4] {
        self.amps
    }

    pub fn norm_sq(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Multiplies each amplitude by `exp(i * phase)`.
    pub fn with_phases(&self, phases: [T; 4]) -> Self {
        let mut amps = self.amps;
        for (z, &phi) in amps.iter_mut().zip(&phases) {
            *z = *z * Complex::from_polar(T::one(), phi);
        }
        Self { amps }
    }

    #[inline]
    pub fn measure(&self) -> OutcomeDistribution<T> {
        measure(self)
    }

    #[inline]
    pub fn concurrence(&self) -> Concurrence<T> {
        concurrence(self)
    }

    #[inline]
    pub fn mutual_information(&self) -> EntropyBits<T> {
        mutual_information(&measure(self))
    }
}

/// Assembles a state from four amplitudes, optionally rescaling to unit norm.
pub fn make_state<T: Real>(
    a: Amplitude<T>,
    b: Amplitude<T>,
    c: Amplitude<T>,
    d: Amplitude<T>,
    normalize: bool,
) -> Result<TwoQubitPureState<T>> {
    let amps = [a, b, c, d];
    if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let state = TwoQubitPureState { amps };
    let norm_sq = state.norm_sq();
    if norm_sq.sqrt() < T::tolerance() {
        return Err(Error::ZeroVector);
    }
    if normalize {
        let inv = norm_sq.sqrt().recip();
        Ok(TwoQubitPureState { amps: amps.map(|z| z * inv) })
    } else if (norm_sq - T::one()).abs() > T::tolerance() {
        Err(Error::NotNormalized { norm_sq: norm_sq.as_f64() })
    } else {
        Ok(state)
    }
}

/// `(A cos a, A sin a, B cos b, B sin b)` with `A = sqrt(y)`, `B = sqrt(1 - y)`.
pub fn from_params<T: Real>(p: &ParamState<T>) -> TwoQubitPureState<T> {
    let big_a = p.y.sqrt();
    let big_b = (T::one() - p.y).sqrt();
    let (sa, ca) = p.alpha.sin_cos();
    let (sb, cb) = p.beta.sin_cos();
    let re = |x: T| Complex::new(x, T::zero());
    TwoQubitPureState { amps: [re(big_a * ca), re(big_a * sa), re(big_b * cb), re(big_b * sb)] }
}

#[inline]
pub fn measure<T: Real>(s: &TwoQubitPureState<T>) -> OutcomeDistribution<T> {
    OutcomeDistribution { p: s.amps.map(|z| z.norm_sqr()) }
}

/// Joint entropy `H_tot` of the four outcomes.
#[inline]
pub fn shannon_total<T: Real>(d: &OutcomeDistribution<T>) -> EntropyBits<T> {
    EntropyBits(d.p.iter().fold(T::zero(), |acc, &p| acc + neg_plog2p(p)))
}

/// Marginal entropies `(H_L, H_R)` of the left and right qubit outcomes.
#[inline]
pub fn shannon_marginals<T: Real>(d: &OutcomeDistribution<T>) -> (EntropyBits<T>, EntropyBits<T>) {
    let [p1, p2, p3, p4] = d.p;
    let h_l = neg_plog2p(p1 + p2) + neg_plog2p(p3 + p4);
    let h_r = neg_plog2p(p1 + p3) + neg_plog2p(p2 + p4);
    (EntropyBits(h_l), EntropyBits(h_r))
}

/// `I = H_L + H_R - H_tot`.
///
/// # Panics
///
/// If the result is negative beyond the scalar tolerance, which a valid
/// distribution cannot produce.
#[inline]
pub fn mutual_information<T: Real>(d: &OutcomeDistribution<T>) -> EntropyBits<T> {
    let (h_l, h_r) = shannon_marginals(d);
    let i = h_l.0 + h_r.0 - shannon_total(d).0;
    assert!(
        i >= -T::tolerance() && i <= T::one() + T::tolerance(),
        "internal consistency: mutual information {i} outside [0, 1]"
    );
    EntropyBits(i.max(T::zero()).min(T::one()))
}

/// `C = 2|ad - bc|` in complex arithmetic.
///
/// # Panics
///
/// If the raw value exceeds 1 by more than the scalar tolerance, which
/// a normalized state cannot produce.
#[inline]
pub fn concurrence<T: Real>(s: &TwoQubitPureState<T>) -> Concurrence<T> {
    let [a, b, c, d] = s.amps;
    let raw = (a * d - b * c).norm() * T::lit(2.0);
    assert!(raw <= T::one() + T::tolerance(), "internal consistency: concurrence {raw} exceeds 1");
    Concurrence(raw.min(T::one()))
}

/// Concurrence from amplitude moduli and the phase combination
/// `theta = theta_a + theta_d - theta_b - theta_c`.
///
/// Evaluated as `2 sqrt((|ad| - |bc|)^2 + 4|abcd| sin^2(theta/2))`, which is
/// algebraically `2 sqrt(|ad|^2 + |bc|^2 - 2|abcd| cos(theta))` without the
/// cancellation near `C = 0`.
pub fn concurrence_polar<T: Real>(ma: T, mb: T, mc: T, md: T, theta: T) -> Result<Concurrence<T>> {
    let m = [ma, mb, mc, md];
    if m.iter().any(|x| !x.is_finite()) || !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    if let Some(&neg) = m.iter().find(|&&x| x < T::zero()) {
        return Err(Error::Domain { what: "modulus", value: neg.as_f64() });
    }
    let norm_sq = m.iter().fold(T::zero(), |acc, &x| acc + x * x);
    if (norm_sq - T::one()).abs() > T::tolerance() {
        return Err(Error::NotNormalized { norm_sq: norm_sq.as_f64() });
    }
    let ad = ma * md;
    let bc = mb * mc;
    let half = (theta * T::lit(0.5)).sin();
    let inner = (ad - bc) * (ad - bc) + T::lit(4.0) * ad * bc * half * half;
    Concurrence::new(T::lit(2.0) * inner.sqrt())
}

/// Binary entropy of `x(C) = (1 + sqrt(1 - C^2)) / 2`, with `1 - x` formed as
/// `C^2 / 4x` to keep precision for small `C`.
fn entropy_of_concurrence<T: Real>(c: T) -> T {
    let root = ((T::one() - c) * (T::one() + c)).max(T::zero()).sqrt();
    let x = (T::one() + root) * T::lit(0.5);
    let one_minus_x = c * c / (T::lit(4.0) * x);
    neg_plog2p(x) + neg_plog2p(one_minus_x)
}

/// Entanglement entropy `E(C)` in bits.
pub fn entanglement_from_concurrence<T: Real>(c: T) -> Result<EntropyBits<T>> {
    if !(c >= T::zero() && c <= T::one()) {
        return Err(Error::Domain { what: "concurrence", value: c.as_f64() });
    }
    Ok(EntropyBits(entropy_of_concurrence(c)))
}

/// Von Neumann entropy of the left reduced density matrix, using the
/// closed-form eigenvalues of a 2x2 Hermitian matrix.
pub fn entanglement_partial_trace<T: Real>(s: &TwoQubitPureState<T>) -> EntropyBits<T> {
    let [a, b, c, d] = s.amps;
    let r00 = a.norm_sqr() + b.norm_sqr();
    let r11 = c.norm_sqr() + d.norm_sqr();
    let r01 = a * c.conj() + b * d.conj();
    let trace = r00 + r11;
    let det = (r00 * r11 - r01.norm_sqr()).max(T::zero());
    let disc = (trace * trace - T::lit(4.0) * det).max(T::zero()).sqrt();
    let lam_hi = (trace + disc) * T::lit(0.5);
    let lam_lo = if lam_hi > T::zero() { det / lam_hi } else { T::zero() };
    EntropyBits(neg_plog2p(lam_hi) + neg_plog2p(lam_lo))
}

/// `(C, I)` pair for one state.
#[inline]
pub fn observe<T: Real>(s: &TwoQubitPureState<T>) -> (Concurrence<T>, EntropyBits<T>) {
    (concurrence(s), mutual_information(&measure(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn re(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn real_state(v: [f64; 4]) -> TwoQubitPureState<f64> {
        make_state(re(v[0]), re(v[1]), re(v[2]), re(v[3]), true).unwrap()
    }

    fn phi1() -> TwoQubitPureState<f64> {
        real_state([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])
    }
    fn phi2() -> TwoQubitPureState<f64> {
        real_state([0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0])
    }
    fn phi3() -> TwoQubitPureState<f64> {
        real_state([0.5, 0.5, -0.5, 0.5])
    }

    #[test]
    fn make_state_accepts_bell_and_basis() {
        let s = make_state(re(FRAC_1_SQRT_2), re(0.0), re(0.0), re(FRAC_1_SQRT_2), false).unwrap();
        assert_abs_diff_eq!(s.norm_sq(), 1.0, epsilon = 1e-12);
        make_state(re(1.0), re(0.0), re(0.0), re(0.0), false).unwrap();
    }

    #[test]
    fn make_state_errors() {
        let z = re(0.0);
        assert!(matches!(make_state(re(2.0), z, z, z, false), Err(Error::NotNormalized { .. })));
        assert!(matches!(make_state(z, z, z, z, true), Err(Error::ZeroVector)));
        assert!(matches!(make_state(re(f64::NAN), z, z, z, true), Err(Error::NonFinite)));
        let s = make_state(re(2.0), z, z, z, true).unwrap();
        assert_eq!(s.amplitudes()[0], re(1.0));
    }

    #[test]
    fn from_params_examples() {
        let s = from_params(&ParamState::new(0.5, FRAC_PI_4, 3.0 * FRAC_PI_4).unwrap());
        let expect = [0.5, 0.5, -0.5, 0.5];
        for (z, e) in s.amplitudes().iter().zip(expect) {
            assert_abs_diff_eq!(z.re, e, epsilon = 1e-15);
            assert_eq!(z.im, 0.0);
        }
        assert_abs_diff_eq!(concurrence(&s).value(), 1.0, epsilon = 1e-15);

        let s = from_params(&ParamState::new(1.0, 0.0, 1.234).unwrap());
        assert_eq!(s.amplitudes(), [re(1.0), re(0.0), re(0.0), re(0.0)]);

        for delta in [0.1, 0.7, 2.0, -1.3] {
            let s = from_params(&ParamState::new(0.5, delta / 2.0, -delta / 2.0).unwrap());
            assert_abs_diff_eq!(concurrence(&s).value(), f64::sin(delta).abs(), epsilon = 1e-14);
        }
        assert!(matches!(ParamState::new(1.5, 0.0, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(ParamState::new(-0.1, 0.0, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn measurement_examples() {
        let p = measure(&phi1()).probabilities();
        for (x, e) in p.iter().zip([0.5, 0.0, 0.0, 0.5]) {
            assert_abs_diff_eq!(*x, e, epsilon = 1e-15);
        }
        assert_eq!(measure(&real_state([1.0, 0.0, 0.0, 0.0])).probabilities(), [1.0, 0.0, 0.0, 0.0]);
        for x in measure(&phi3()).probabilities() {
            assert_abs_diff_eq!(x, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn shannon_examples() {
        let d = |p| OutcomeDistribution::new(p).unwrap();
        assert_abs_diff_eq!(shannon_total(&d([0.5, 0.0, 0.0, 0.5])).value(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(shannon_total(&d([0.25; 4])).value(), 2.0, epsilon = 1e-15);
        assert_eq!(shannon_total(&d([1.0, 0.0, 0.0, 0.0])).value(), 0.0);

        let (l, r) = shannon_marginals(&d([0.5, 0.0, 0.0, 0.5]));
        assert_eq!((l.value(), r.value()), (1.0, 1.0));
        let (l, r) = shannon_marginals(&d([1.0, 0.0, 0.0, 0.0]));
        assert_eq!((l.value(), r.value()), (0.0, 0.0));
        // left qubit deterministic, right uniform
        let (l, r) = shannon_marginals(&d([0.5, 0.5, 0.0, 0.0]));
        assert_eq!((l.value(), r.value()), (0.0, 1.0));
    }

    #[test]
    fn mutual_information_examples() {
        assert_abs_diff_eq!(phi1().mutual_information().value(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi2().mutual_information().value(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi3().mutual_information().value(), 0.0, epsilon = 1e-15);
        let d = OutcomeDistribution::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(mutual_information(&d).value(), 0.0);
    }

    #[test]
    fn distribution_validation() {
        assert!(OutcomeDistribution::new([0.5, 0.5, 0.5, 0.0]).is_err());
        assert!(OutcomeDistribution::new([1.2, -0.2, 0.0, 0.0]).is_err());
    }

    #[test]
    fn concurrence_examples() {
        assert_abs_diff_eq!(concurrence(&phi1()).value(), 1.0, epsilon = 1e-15);
        assert_eq!(concurrence(&real_state([1.0, 0.0, 0.0, 0.0])).value(), 0.0);
        assert_abs_diff_eq!(concurrence(&phi3()).value(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn concurrence_polar_examples() {
        let m = [0.1_f64, 0.3, 0.5];
        let md = (1.0 - m.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let (ad, bc) = (m[0] * md, m[1] * m[2]);
        let c_pi = concurrence_polar(m[0], m[1], m[2], md, PI).unwrap().value();
        assert_abs_diff_eq!(c_pi, 2.0 * (ad + bc), epsilon = 1e-15);
        let c_0 = concurrence_polar(m[0], m[1], m[2], md, 0.0).unwrap().value();
        assert_abs_diff_eq!(c_0, 2.0 * (ad - bc).abs(), epsilon = 1e-15);
        let bell = concurrence_polar(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2, 0.0).unwrap();
        assert_abs_diff_eq!(bell.value(), 1.0, epsilon = 1e-15);
        assert!(matches!(concurrence_polar(1.0, 1.0, 0.0, 0.0, 0.0), Err(Error::NotNormalized { .. })));
        assert!(concurrence_polar(-1.0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn entanglement_examples() {
        assert_eq!(entanglement_from_concurrence(0.0).unwrap().value(), 0.0);
        assert_abs_diff_eq!(entanglement_from_concurrence(1.0).unwrap().value(), 1.0, epsilon = 1e-15);
        // x(0.8) = 0.8 exactly; binary entropy of 0.8 from a 50-digit evaluation
        let e = entanglement_from_concurrence(0.8).unwrap().value();
        assert_abs_diff_eq!(e, 0.721_928_094_887_362_3, epsilon = 1e-15);
        assert!(matches!(entanglement_from_concurrence(1.1), Err(Error::Domain { .. })));
        assert!(entanglement_from_concurrence(-0.1).is_err());
        assert!(entanglement_from_concurrence(f64::NAN).is_err());

        assert_abs_diff_eq!(entanglement_partial_trace(&phi2()).value(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(entanglement_partial_trace(&phi3()).value(), 1.0, epsilon = 1e-15);
        assert_eq!(entanglement_partial_trace(&real_state([1.0, 0.0, 0.0, 0.0])).value(), 0.0);
    }

    #[test]
    fn entanglement_is_increasing_on_grid() {
        let mut prev = entanglement_from_concurrence(0.0).unwrap().value();
        for k in 1..=1000 {
            let e = entanglement_from_concurrence(k as f64 * 1e-3).unwrap().value();
            assert!(e > prev, "not increasing at C = {}", k as f64 * 1e-3);
            prev = e;
        }
    }

    #[test]
    fn single_precision_path() {
        let s = make_state(
            Complex::new(0.5_f32, 0.0),
            Complex::new(0.5, 0.0),
            Complex::new(-0.5, 0.0),
            Complex::new(0.5, 0.0),
            false,
        )
        .unwrap();
        assert!((concurrence(&s).value() - 1.0).abs() < 1e-6);
        assert!(s.mutual_information().value().abs() < 1e-6);
        let e = entanglement_partial_trace(&s).value();
        assert!((e - 1.0).abs() < 1e-5);
    }

    #[test]
    fn concurrence_newtype_clamps_near_boundary() {
        assert_eq!(Concurrence::new(1.0 + 1e-13).unwrap().value(), 1.0);
        assert_eq!(Concurrence::new(-1e-13).unwrap().value(), 0.0);
        assert!(Concurrence::new(1.0 + 1e-9).is_err());
        assert!(EntropyBits::new(-1e-9).is_err());
        assert_eq!(EntropyBits::new(-1e-14).unwrap().value(), 0.0);
    }
}
