//! Mergeable 2D histogram of `(C, I)` over the unit square and the
//! densities derived from it.
//!
//! Counts are integers, so merging shards is exact and independent of order.
//! Bins are half-open `[k delta, (k + 1) delta)` except the last bin on each
//! axis, which is closed so that `C = 1` and `I = 1` are counted.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Values this far outside `[0, 1]` are clamped onto the boundary.
pub const EDGE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    C,
    I,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::C => "C",
            Axis::I => "I",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of bins of width `delta` covering `[0, 1]`.
pub fn bins_for(delta: f64) -> Result<usize> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Config(format!("bin width {delta} must lie in (0, 1]")));
    }
    let r = 1.0 / delta;
    let n = if (r - r.round()).abs() <= 1e-9 * r { r.round() } else { r.ceil() };
    Ok(n as usize)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Binning {
    delta: f64,
    bins: usize,
}

impl Binning {
    fn new(delta: f64) -> Result<Self> {
        Ok(Self { delta, bins: bins_for(delta)? })
    }

    #[inline]
    fn index(&self, x: f64, axis: &'static str) -> Result<usize> {
        if !(-EDGE_TOLERANCE..=1.0 + EDGE_TOLERANCE).contains(&x) {
            return Err(Error::OutOfRange { axis, value: x });
        }
        let x = x.clamp(0.0, 1.0);
        Ok(((x / self.delta) as usize).min(self.bins - 1))
    }

    fn lower(&self, k: usize) -> f64 {
        k as f64 * self.delta
    }

    /// Center of bin `k`, with the last bin clipped at 1.
    fn center(&self, k: usize) -> f64 {
        let lo = self.lower(k);
        let hi = (lo + self.delta).min(1.0);
        0.5 * (lo + hi)
    }

    /// Bins whose center lies strictly inside `(lo, hi)`; when there are
    /// none, the single bin containing the midpoint.
    fn select(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let eps = 1e-9 * self.delta;
        let first = (0..self.bins).find(|&k| self.center(k) > lo + eps).unwrap_or(self.bins);
        let end = (first..self.bins).find(|&k| self.center(k) >= hi - eps).unwrap_or(self.bins);
        if first < end {
            return first..end;
        }
        let mid = 0.5 * (lo + hi) / self.delta;
        let k = ((mid + 1e-9) as usize).min(self.bins - 1);
        k..k + 1
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if lo >= 0.0 && hi <= 1.0 && lo < hi {
        Ok(())
    } else {
        Err(Error::Config(format!("slice [{lo}, {hi}) must satisfy 0 <= lo < hi <= 1")))
    }
}

/// Binned estimate of the joint density `p(C, I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Joint2DHistogram {
    c_axis: BinningKey,
    i_axis: BinningKey,
    counts: Vec<u64>,
    total: u64,
}

// f64 bin widths compared by bit pattern so the histogram can be `Eq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct BinningKey {
    delta_bits: u64,
    bins: usize,
}

impl From<Binning> for BinningKey {
    fn from(b: Binning) -> Self {
        Self { delta_bits: b.delta.to_bits(), bins: b.bins }
    }
}

impl From<BinningKey> for Binning {
    fn from(k: BinningKey) -> Self {
        Self { delta: f64::from_bits(k.delta_bits), bins: k.bins }
    }
}

impl Joint2DHistogram {
    pub fn new(delta_c: f64, delta_i: f64) -> Result<Self> {
        let c = Binning::new(delta_c)?;
        let i = Binning::new(delta_i)?;
        Ok(Self { c_axis: c.into(), i_axis: i.into(), counts: vec![0; c.bins * i.bins], total: 0 })
    }

    #[inline]
    fn c_binning(&self) -> Binning {
        self.c_axis.into()
    }

    #[inline]
    fn i_binning(&self) -> Binning {
        self.i_axis.into()
    }

    fn binning(&self, axis: Axis) -> Binning {
        match axis {
            Axis::C => self.c_binning(),
            Axis::I => self.i_binning(),
        }
    }

    pub fn delta_c(&self) -> f64 {
        self.c_binning().delta
    }

    pub fn delta_i(&self) -> f64 {
        self.i_binning().delta
    }

    pub fn bins_c(&self) -> usize {
        self.c_axis.bins
    }

    pub fn bins_i(&self) -> usize {
        self.i_axis.bins
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Count in bin `(c_bin, i_bin)`.
    #[inline]
    pub fn count(&self, c_bin: usize, i_bin: usize) -> u64 {
        self.counts[c_bin * self.i_axis.bins + i_bin]
    }

    pub fn bin_center(&self, axis: Axis, k: usize) -> f64 {
        self.binning(axis).center(k)
    }

    /// Bin indices on `axis` selected by the slice `[lo, hi)`: those with centers
    /// strictly inside, or the bin holding the midpoint if the slice is narrower
    /// than a bin.
    pub fn bins_in(&self, axis: Axis, lo: f64, hi: f64) -> std::ops::Range<usize> {
        self.binning(axis).select(lo, hi)
    }

    /// Records one `(C, I)` observation.
    #[inline]
    pub fn accumulate(&mut self, c: f64, i: f64) -> Result<()> {
        let kc = self.c_binning().index(c, "C")?;
        let ki = self.i_binning().index(i, "I")?;
        self.counts[kc * self.i_axis.bins + ki] += 1;
        self.total += 1;
        Ok(())
    }

    /// Adds `other` into `self`.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if self.c_axis != other.c_axis || self.i_axis != other.i_axis {
            return Err(Error::ShapeMismatch);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }

    pub fn merged(mut self, other: &Self) -> Result<Self> {
        self.merge(other)?;
        Ok(self)
    }

    /// Sums blocks of `factor_c x factor_i` bins into one.
    pub fn coarsen(&self, factor_c: usize, factor_i: usize) -> Result<Self> {
        let (nc, ni) = (self.bins_c(), self.bins_i());
        if factor_c == 0 || factor_i == 0 || nc % factor_c != 0 || ni % factor_i != 0 {
            return Err(Error::Config(format!("cannot coarsen {nc}x{ni} bins by {factor_c}x{factor_i}")));
        }
        let mut out = Self::new(self.delta_c() * factor_c as f64, self.delta_i() * factor_i as f64)?;
        if out.bins_c() != nc / factor_c || out.bins_i() != ni / factor_i {
            return Err(Error::Config("coarsened bin widths do not tile [0, 1]".into()));
        }
        for kc in 0..nc {
            for ki in 0..ni {
                let idx = (kc / factor_c) * out.bins_i() + ki / factor_i;
                out.counts[idx] += self.count(kc, ki);
            }
        }
        out.total = self.total;
        Ok(out)
    }

    /// Joint density `count / (total dC dI)` at each bin, row-major in `C`.
    pub fn joint_density(&self) -> Result<Vec<f64>> {
        if self.total == 0 {
            return Err(Error::EmptyHistogram);
        }
        let norm = self.total as f64 * self.delta_c() * self.delta_i();
        Ok(self.counts.iter().map(|&n| n as f64 / norm).collect())
    }

    /// Counts along `axis` summed over the bins `other_range` of the other axis.
    fn projected(&self, axis: Axis, other_range: std::ops::Range<usize>) -> Vec<u64> {
        let (nc, ni) = (self.bins_c(), self.bins_i());
        match axis {
            Axis::C => (0..nc).map(|kc| other_range.clone().map(|ki| self.count(kc, ki)).sum()).collect(),
            Axis::I => (0..ni).map(|ki| other_range.clone().map(|kc| self.count(kc, ki)).sum()).collect(),
        }
    }

    /// Marginal density `p(C)` or `p(I)`.
    pub fn marginal(&self, axis: Axis) -> Result<Density1D> {
        if self.total == 0 {
            return Err(Error::EmptyHistogram);
        }
        let other = match axis {
            Axis::C => 0..self.bins_i(),
            Axis::I => 0..self.bins_c(),
        };
        Ok(Density1D::from_counts(axis, self.binning(axis), &self.projected(axis, other)))
    }

    /// Conditional density `p(C | I in [i_lo, i_hi))`.
    pub fn conditional_slice(&self, i_lo: f64, i_hi: f64) -> Result<Density1D> {
        self.conditional(Axis::C, i_lo, i_hi)
    }

    /// Conditional density `p(I | C in [c_lo, c_hi))`.
    pub fn conditional_slice_given_c(&self, c_lo: f64, c_hi: f64) -> Result<Density1D> {
        self.conditional(Axis::I, c_lo, c_hi)
    }

    /// Raw counts along `axis` for the slice `[lo, hi)` of the other axis.
    pub fn slice_counts(&self, axis: Axis, lo: f64, hi: f64) -> Result<Vec<u64>> {
        check_interval(lo, hi)?;
        let other = match axis {
            Axis::C => Axis::I,
            Axis::I => Axis::C,
        };
        let range = self.binning(other).select(lo, hi);
        Ok(self.projected(axis, range))
    }

    fn conditional(&self, axis: Axis, lo: f64, hi: f64) -> Result<Density1D> {
        let counts = self.slice_counts(axis, lo, hi)?;
        if counts.iter().all(|&n| n == 0) {
            return Err(Error::EmptySlice { lo, hi });
        }
        Ok(Density1D::from_counts(axis, self.binning(axis), &counts))
    }

    /// Peak, mean and spread of `C` among observations with `I` within
    /// `i_halfwidth` of `i_center`.
    pub fn slice_stats(&self, i_center: f64, i_halfwidth: f64) -> Result<SliceStats> {
        if i_halfwidth.is_nan() || i_halfwidth <= 0.0 || !(0.0..=1.0).contains(&i_center) {
            return Err(Error::Config(format!("bad slice {i_center} +- {i_halfwidth}")));
        }
        let lo = (i_center - i_halfwidth).max(0.0);
        let hi = (i_center + i_halfwidth).min(1.0);
        let counts = self.slice_counts(Axis::C, lo, hi)?;
        let count: u64 = counts.iter().sum();
        if count == 0 {
            return Err(Error::EmptySlice { lo, hi });
        }
        let binning = self.c_binning();
        let mut peak = 0;
        for (k, &n) in counts.iter().enumerate() {
            if n > counts[peak] {
                peak = k;
            }
        }
        let w = count as f64;
        let mean = counts.iter().enumerate().map(|(k, &n)| n as f64 * binning.center(k)).sum::<f64>() / w;
        let var =
            counts.iter().enumerate().map(|(k, &n)| n as f64 * (binning.center(k) - mean).powi(2)).sum::<f64>() / w;
        Ok(SliceStats { i_center, i_halfwidth, c_star: binning.center(peak), mean_c: mean, std_c: var.sqrt(), count })
    }

    /// Writes the sparse CSV form. `meta` pairs are appended to the header
    /// line as `key=value`; neither may contain whitespace or `=`.
    pub fn write_csv<W: Write>(&self, mut w: W, meta: &[(&str, String)]) -> Result<()> {
        write!(w, "# joint_histogram delta_c={} delta_i={} total={}", self.delta_c(), self.delta_i(), self.total)?;
        for (k, v) in meta {
            write!(w, " {k}={v}")?;
        }
        writeln!(w)?;
        let ni = self.bins_i();
        for (idx, &n) in self.counts.iter().enumerate() {
            if n > 0 {
                writeln!(w, "{},{},{}", idx / ni, idx % ni, n)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Parses the sparse CSV form, returning the histogram and any extra
    /// header metadata.
    pub fn read_csv<R: BufRead>(r: R) -> Result<(Self, BTreeMap<String, String>)> {
        let mut lines = r.lines().enumerate();
        let perr = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
        let (_, header) = lines.next().ok_or_else(|| perr(0, "missing header".into()))?;
        let header = header?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("#") || tokens.next() != Some("joint_histogram") {
            return Err(perr(0, "header must start with `# joint_histogram`".into()));
        }
        let mut meta = BTreeMap::new();
        for tok in tokens {
            let (k, v) = tok.split_once('=').ok_or_else(|| perr(0, format!("bad token `{tok}`")))?;
            meta.insert(k.to_string(), v.to_string());
        }
        let mut take = |key: &str| meta.remove(key).ok_or_else(|| perr(0, format!("missing `{key}`")));
        let num = |key: &str, v: String| v.parse::<f64>().map_err(|e| perr(0, format!("{key}: {e}")));
        let delta_c = num("delta_c", take("delta_c")?)?;
        let delta_i = num("delta_i", take("delta_i")?)?;
        let total: u64 = take("total")?.parse().map_err(|e| perr(0, format!("total: {e}")))?;

        let mut h = Self::new(delta_c, delta_i)?;
        for (line, row) in lines {
            let row = row?;
            if row.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = row.split(',').map(str::trim).collect();
            let [kc, ki, n] = fields[..] else {
                return Err(perr(line, format!("expected 3 fields, got {}", fields.len())));
            };
            let parse = |s: &str| s.parse::<u64>().map_err(|e| perr(line, format!("`{s}`: {e}")));
            let (kc, ki, n) = (parse(kc)? as usize, parse(ki)? as usize, parse(n)?);
            if kc >= h.bins_c() || ki >= h.bins_i() {
                return Err(perr(line, format!("bin ({kc}, {ki}) out of range")));
            }
            let ni = h.bins_i();
            h.counts[kc * ni + ki] += n;
            h.total += n;
        }
        if h.total != total {
            return Err(perr(0, format!("header total {total} != sum of counts {}", h.total)));
        }
        Ok((h, meta))
    }
}

/// Binned density along one axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Density1D {
    pub axis: Axis,
    pub delta: f64,
    pub values: Vec<f64>,
    centers: Vec<f64>,
}

impl Density1D {
    fn from_counts(axis: Axis, binning: Binning, counts: &[u64]) -> Self {
        let sum: u64 = counts.iter().sum();
        let norm = sum as f64 * binning.delta;
        Self {
            axis,
            delta: binning.delta,
            values: counts.iter().map(|&n| n as f64 / norm).collect(),
            centers: (0..counts.len()).map(|k| binning.center(k)).collect(),
        }
    }

    pub fn bin_center(&self, k: usize) -> f64 {
        self.centers[k]
    }

    /// `sum(values) * delta`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.delta
    }

    /// Index of the largest value; ties go to the lowest bin.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (k, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = k;
            }
        }
        best
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "bin_center,density")?;
        for (c, v) in self.centers.iter().zip(&self.values) {
            writeln!(w, "{c},{v}")?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Summary of `p(C | I)` over one `I` slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceStats {
    pub i_center: f64,
    pub i_halfwidth: f64,
    /// Center of the most populated `C` bin.
    pub c_star: f64,
    pub mean_c: f64,
    pub std_c: f64,
    pub count: u64,
}

impl SliceStats {
    pub const CSV_HEADER: &'static str = "i_center,c_star,mean_c,std_c,count";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.i_center, self.c_star, self.mean_c, self.std_c, self.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bin_counts() {
        assert_eq!(bins_for(0.01).unwrap(), 100);
        assert_eq!(bins_for(2.5e-3).unwrap(), 400);
        assert_eq!(bins_for(0.3).unwrap(), 4);
        assert_eq!(bins_for(1.0).unwrap(), 1);
        assert!(bins_for(0.0).is_err());
        assert!(bins_for(1.5).is_err());
        assert!(bins_for(f64::NAN).is_err());
    }

    #[test]
    fn edge_bins() {
        let mut h = Joint2DHistogram::new(0.01, 0.01).unwrap();
        h.accumulate(0.0, 0.0).unwrap();
        assert_eq!(h.count(0, 0), 1);
        h.accumulate(1.0, 1.0).unwrap();
        assert_eq!(h.count(99, 99), 1);
        h.accumulate(1.0 + 1e-13, -1e-13).unwrap();
        assert_eq!(h.count(99, 0), 1);
        assert_eq!(h.total(), 3);
        assert!(matches!(h.accumulate(1.0 + 1e-9, 0.5), Err(Error::OutOfRange { axis: "C", .. })));
        assert!(matches!(h.accumulate(0.5, f64::NAN), Err(Error::OutOfRange { axis: "I", .. })));
        assert_eq!(h.total(), 3);
    }

    #[test]
    fn merge_identity_and_mismatch() {
        let mut h = Joint2DHistogram::new(0.1, 0.05).unwrap();
        for k in 0..50 {
            h.accumulate(k as f64 / 50.0, (k * 7 % 50) as f64 / 50.0).unwrap();
        }
        let empty = Joint2DHistogram::new(0.1, 0.05).unwrap();
        assert_eq!(h.clone().merged(&empty).unwrap(), h);
        assert_eq!(empty.clone().merged(&h).unwrap(), h);
        let other = Joint2DHistogram::new(0.1, 0.1).unwrap();
        assert!(matches!(h.clone().merge(&other), Err(Error::ShapeMismatch)));
    }

    #[test]
    fn single_point_marginal_is_delta_like() {
        let mut h = Joint2DHistogram::new(0.01, 0.02).unwrap();
        h.accumulate(0.505, 0.3).unwrap();
        let m = h.marginal(Axis::C).unwrap();
        assert_abs_diff_eq!(m.values[50], 100.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.integral(), 1.0, epsilon = 1e-12);
        let m = h.marginal(Axis::I).unwrap();
        assert_abs_diff_eq!(m.values[15], 50.0, epsilon = 1e-9);
        assert!(matches!(Joint2DHistogram::new(0.1, 0.1).unwrap().marginal(Axis::C), Err(Error::EmptyHistogram)));
    }

    #[test]
    fn partial_last_bin_still_normalizes() {
        let mut h = Joint2DHistogram::new(0.3, 0.3).unwrap();
        for k in 0..=20 {
            h.accumulate(k as f64 / 20.0, 1.0 - k as f64 / 20.0).unwrap();
        }
        assert_eq!(h.bins_c(), 4);
        assert_abs_diff_eq!(h.marginal(Axis::C).unwrap().integral(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.bin_center(Axis::C, 3), 0.95, epsilon = 1e-12);
        let joint: f64 = h.joint_density().unwrap().iter().sum::<f64>() * 0.09;
        assert_abs_diff_eq!(joint, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn full_slice_equals_marginal() {
        let mut h = Joint2DHistogram::new(0.05, 0.05).unwrap();
        for k in 0..400 {
            let c = (k as f64 * 0.618).fract();
            let i = (k as f64 * 0.377).fract() * c;
            h.accumulate(c, i).unwrap();
        }
        let a = h.conditional_slice(0.0, 1.0).unwrap();
        let b = h.marginal(Axis::C).unwrap();
        assert_eq!(a, b);
        let a = h.conditional_slice_given_c(0.0, 1.0).unwrap();
        let b = h.marginal(Axis::I).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn slice_selection_by_center() {
        let h = Joint2DHistogram::new(2.5e-3, 2.5e-3).unwrap();
        assert_eq!(h.bins_in(Axis::I, 0.495, 0.505), 198..202);
        let h = Joint2DHistogram::new(0.01, 0.01).unwrap();
        assert_eq!(h.bins_in(Axis::I, 0.495, 0.505), 50..51);
        assert_eq!(h.bins_in(Axis::I, 0.295, 0.305), 30..31);
        assert_eq!(h.bins_in(Axis::I, 0.29, 0.31), 29..31);
        assert_eq!(h.bins_in(Axis::I, 0.0, 1.0), 0..100);
    }

    #[test]
    fn empty_and_invalid_slices() {
        let mut h = Joint2DHistogram::new(0.1, 0.1).unwrap();
        h.accumulate(0.5, 0.05).unwrap();
        assert!(matches!(h.conditional_slice(0.5, 0.7), Err(Error::EmptySlice { .. })));
        assert!(matches!(h.slice_stats(0.6, 0.05), Err(Error::EmptySlice { .. })));
        assert!(matches!(h.conditional_slice(0.7, 0.5), Err(Error::Config(_))));
        assert!(h.conditional_slice_given_c(0.5, 0.6).is_ok());
    }

    #[test]
    fn slice_stats_single_bin() {
        let mut h = Joint2DHistogram::new(0.01, 0.01).unwrap();
        for _ in 0..7 {
            h.accumulate(0.423, 0.301).unwrap();
        }
        let s = h.slice_stats(0.3, 0.005).unwrap();
        assert_eq!(s.count, 7);
        assert_eq!(s.std_c, 0.0);
        assert_abs_diff_eq!(s.c_star, 0.425, epsilon = 1e-12);
        assert_eq!(s.mean_c, s.c_star);
    }

    #[test]
    fn slice_stats_two_bins() {
        let mut h = Joint2DHistogram::new(0.1, 0.1).unwrap();
        for _ in 0..3 {
            h.accumulate(0.15, 0.5).unwrap();
        }
        h.accumulate(0.35, 0.5).unwrap();
        let s = h.slice_stats(0.55, 0.05).unwrap();
        assert_abs_diff_eq!(s.c_star, 0.15, epsilon = 1e-12);
        assert_abs_diff_eq!(s.mean_c, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(s.std_c, (0.75_f64 * 0.25).sqrt() * 0.2, epsilon = 1e-12);
    }

    #[test]
    fn csv_round_trip_with_meta() {
        let mut h = Joint2DHistogram::new(0.01, 0.0025).unwrap();
        for k in 0..1000 {
            h.accumulate((k as f64 * 0.137).fract(), (k as f64 * 0.071).fract()).unwrap();
        }
        let mut buf = Vec::new();
        h.write_csv(&mut buf, &[("ensemble", "real-s3".into()), ("seed", "42".into())]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# joint_histogram delta_c=0.01 delta_i=0.0025 total=1000 ensemble=real-s3 seed=42\n"));
        let (back, meta) = Joint2DHistogram::read_csv(&buf[..]).unwrap();
        assert_eq!(back, h);
        assert_eq!(meta["ensemble"], "real-s3");
        assert_eq!(meta["seed"], "42");
    }

    #[test]
    fn csv_rejects_bad_input() {
        let bad = [
            "",
            "joint_histogram delta_c=0.1 delta_i=0.1 total=0\n",
            "# joint_histogram delta_c=0.1 total=0\n",
            "# joint_histogram delta_c=0.1 delta_i=0.1 total=2\n0,0,1\n",
            "# joint_histogram delta_c=0.1 delta_i=0.1 total=1\n10,0,1\n",
            "# joint_histogram delta_c=0.1 delta_i=0.1 total=1\n0,0\n",
            "# joint_histogram delta_c=0.1 delta_i=0.1 total=1\n0,x,1\n",
        ];
        for text in bad {
            assert!(Joint2DHistogram::read_csv(text.as_bytes()).is_err(), "{text:?}");
        }
    }

    #[test]
    fn coarsen_preserves_counts() {
        let mut h = Joint2DHistogram::new(2.5e-3, 2.5e-3).unwrap();
        for k in 0..5000 {
            h.accumulate((k as f64 * 0.731).fract(), (k as f64 * 0.193).fract()).unwrap();
        }
        let c = h.coarsen(4, 4).unwrap();
        assert_eq!((c.bins_c(), c.bins_i()), (100, 100));
        assert_eq!(c.total(), h.total());
        let mut direct = Joint2DHistogram::new(0.01, 0.01).unwrap();
        for kc in 0..400 {
            for ki in 0..400 {
                for _ in 0..h.count(kc, ki) {
                    direct.accumulate(h.bin_center(Axis::C, kc), h.bin_center(Axis::I, ki)).unwrap();
                }
            }
        }
        assert_eq!(c.counts, direct.counts);
        assert!(h.coarsen(3, 1).is_err());
    }

    #[test]
    fn slice_stats_csv_row() {
        let s = SliceStats { i_center: 0.5, i_halfwidth: 0.005, c_star: 0.78, mean_c: 0.81, std_c: 0.09, count: 12 };
        assert_eq!(s.csv_row(), "0.5,0.78,0.81,0.09,12");
    }
}
