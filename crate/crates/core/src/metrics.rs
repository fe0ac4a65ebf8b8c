//! Sampled signals, exogenous signal generators and the energy/power
//! metrics used to check finite-gain and offset-gain claims on data.
//!
//! Signals are finite sequences indexed from `t = 0`. The power seminorm
//! is a limsup over infinite horizons, which cannot be evaluated on a
//! finite record; [`power_seminorm`] approximates it by the largest
//! mean-square value over a few long horizons inside an observation
//! window at the end of the record.

use std::io::{Read, Write};
use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite real-valued signal sampled at `t = 0, 1, ..`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSignal {
    samples: Vec<f64>,
    label: Option<String>,
}

impl SampleSignal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument(
                "signal must have at least one sample".into(),
            ));
        }
        if let Some(t) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("sample {t} is not finite")));
        }
        Ok(Self {
            samples,
            label: None,
        })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![0.0; len])
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..len).map(f).collect())
    }

    /// Unit impulse of the given length.
    pub fn impulse(len: usize) -> Result<Self> {
        Self::from_fn(len, |t| if t == 0 { 1.0 } else { 0.0 })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.samples
    }

    pub fn get(&self, t: usize) -> Option<f64> {
        self.samples.get(t).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().copied()
    }

    pub fn last(&self) -> f64 {
        self.samples[self.samples.len() - 1]
    }

    /// Samples in `range`, as a new signal indexed from zero.
    pub fn segment(&self, range: Range<usize>) -> Result<Self> {
        if range.end > self.len() || range.start >= range.end {
            return Err(Error::InvalidArgument(format!(
                "segment {range:?} outside signal of length {}",
                self.len()
            )));
        }
        Self::new(self.samples[range].to_vec())
    }

    /// The truncation `y_T`: samples after `t_end` are set to zero, length kept.
    pub fn truncated(&self, t_end: usize) -> Self {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(t, &v)| if t <= t_end { v } else { 0.0 })
            .collect();
        Self {
            samples,
            label: self.label.clone(),
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|v| a * v).collect(),
            label: None,
        }
    }

    pub fn offset(&self, c: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|v| v + c).collect(),
            label: None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        check_same_len(self, other)?;
        let samples = self
            .iter()
            .zip(other.iter())
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            samples,
            label: None,
        })
    }

    /// Writes the two-column `t,value` CSV.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "value"])?;
        for (t, v) in self.samples.iter().enumerate() {
            w.write_record([t.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the two-column `t,value` CSV. Rows must be in order `t = 0, 1, ..`.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let headers = r.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
            return Err(Error::Parse(format!(
                "expected header 't,value', got {headers:?}"
            )));
        }
        let mut samples = Vec::new();
        for (row, record) in r.records().enumerate() {
            let record = record?;
            let t: usize = record[0]
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("row {row}: bad t: {e}")))?;
            if t != row {
                return Err(Error::Parse(format!(
                    "row {row}: expected t = {row}, got {t}"
                )));
            }
            let v: f64 = record[1]
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("row {row}: bad value: {e}")))?;
            samples.push(v);
        }
        Self::new(samples)
    }
}

fn check_same_len(a: &SampleSignal, b: &SampleSignal) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Seeded Gaussian white noise description.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
}

impl NoiseSpec {
    pub fn new(seed: u64, mean: f64, variance: f64) -> Result<Self> {
        if !(variance >= 0.0) || !variance.is_finite() || !mean.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "noise needs finite mean and variance >= 0 (got mean {mean}, variance {variance})"
            )));
        }
        Ok(Self {
            seed,
            mean,
            variance,
        })
    }
}

/// Step of `amplitude` switched on at sample `onset`.
pub fn gen_step(amplitude: f64, onset: usize, length: usize) -> Result<SampleSignal> {
    if length <= onset {
        return Err(Error::InvalidArgument(format!(
            "step onset {onset} must be inside length {length}"
        )));
    }
    SampleSignal::from_fn(length, |t| if t >= onset { amplitude } else { 0.0 })
}

/// Square wave in `{0, amplitude}`: low for the first half of each period,
/// high for the rest.
pub fn gen_pulse(amplitude: f64, period: usize, length: usize) -> Result<SampleSignal> {
    if period < 2 {
        return Err(Error::InvalidArgument(format!(
            "pulse period {period} must be >= 2"
        )));
    }
    let half = period / 2;
    SampleSignal::from_fn(length, |t| if t % period >= half { amplitude } else { 0.0 })
}

/// Gaussian white noise.
///
/// Generator: ChaCha20 keyed by `seed` through `SeedableRng::seed_from_u64`
/// (a PCG32 key expansion), so the stream is identical on every platform.
/// Transform: `rand_distr::Normal` (ziggurat) scaled by the standard
/// deviation and shifted by the mean.
pub fn gen_gaussian(spec: &NoiseSpec, length: usize) -> Result<SampleSignal> {
    let spec = NoiseSpec::new(spec.seed, spec.mean, spec.variance)?;
    if spec.variance == 0.0 {
        return SampleSignal::new(vec![spec.mean; length]);
    }
    let normal = Normal::new(spec.mean, spec.variance.sqrt())
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    SampleSignal::new((0..length).map(|_| normal.sample(&mut rng)).collect())
}

/// Observation window for the power estimate: the final `final_fraction`
/// of the record.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerWindow {
    pub final_fraction: f64,
}

impl Default for PowerWindow {
    fn default() -> Self {
        Self {
            final_fraction: 1.0,
        }
    }
}

impl PowerWindow {
    pub fn final_fraction(final_fraction: f64) -> Self {
        Self { final_fraction }
    }

    fn range(&self, len: usize) -> Result<Range<usize>> {
        check_fraction("final_fraction", self.final_fraction)?;
        let width = tail_len(len, self.final_fraction);
        Ok(len - width..len)
    }
}

fn check_fraction(name: &str, f: f64) -> Result<()> {
    if !(f > 0.0 && f <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "{name} must lie in (0, 1], got {f}"
        )));
    }
    Ok(())
}

fn tail_len(len: usize, fraction: f64) -> usize {
    ((fraction * len as f64).ceil() as usize).clamp(1, len)
}

/// Finite-horizon estimate of the power seminorm.
///
/// Inside the window of width `W`, takes `sqrt(max_T (1/T) sum_{t<T} y(t)^2)`
/// over horizons `T in {W/2, 3W/4, W}`.
pub fn power_seminorm(y: &SampleSignal, window: PowerWindow) -> Result<f64> {
    let range = window.range(y.len())?;
    let w = &y.as_slice()[range];
    let width = w.len();
    let horizons = [width / 2, 3 * width / 4, width];
    let mut best = 0.0f64;
    let mut acc = 0.0;
    let mut t = 0;
    for &horizon in &horizons {
        let horizon = horizon.max(1);
        while t < horizon {
            acc += w[t] * w[t];
            t += 1;
        }
        best = best.max(acc / horizon as f64);
    }
    Ok(best.sqrt())
}

/// Bias estimate: the mean of the last `ceil(tail_fraction * L)` samples,
/// which minimises the tail mean-square deviation over constants.
pub fn bias_estimate(y: &SampleSignal, tail_fraction: f64) -> Result<f64> {
    check_fraction("tail_fraction", tail_fraction)?;
    let tail = &y.as_slice()[y.len() - tail_len(y.len(), tail_fraction)..];
    // Shifted by the first tail sample so constant tails come out exact.
    let base = tail[0];
    Ok(base + tail.iter().map(|v| v - base).sum::<f64>() / tail.len() as f64)
}

/// Root-mean-square deviation of the tail about its mean. Large values mean
/// the bias estimate does not describe the tail well.
pub fn tail_deviation(y: &SampleSignal, tail_fraction: f64) -> Result<f64> {
    let bias = bias_estimate(y, tail_fraction)?;
    let tail = &y.as_slice()[y.len() - tail_len(y.len(), tail_fraction)..];
    let ms = tail.iter().map(|v| (v - bias).powi(2)).sum::<f64>() / tail.len() as f64;
    Ok(ms.sqrt())
}

/// Power of `y` measured about its own bias estimate.
pub fn power_about_bias(y: &SampleSignal, window: PowerWindow, tail_fraction: f64) -> Result<f64> {
    let bias = bias_estimate(y, tail_fraction)?;
    power_seminorm(&y.offset(-bias), window)
}

pub fn l2_norm(y: &SampleSignal) -> f64 {
    y.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn l2_distance(y: &SampleSignal, z: &SampleSignal) -> Result<f64> {
    check_same_len(y, z)?;
    Ok(y.iter()
        .zip(z.iter())
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt())
}
