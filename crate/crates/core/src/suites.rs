//! Seeded randomized property suites run by the reproduction report.
//!
//! Each suite returns a [`SuiteOutcome`] with the number of cases tried and
//! the worst violation seen, so a failure can be reported without panicking.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{GainCertificate, PlantResponse, POST_CHECK_INFLATION};
use crate::error::Result;
use crate::lurye::Nonlinearity;
use crate::metrics::{power_seminorm, PowerWindow, SampleSignal};
use crate::ozf::{FirMultiplier, MultiplierClass, Tap};
use crate::rational::RationalTransferFunction;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub cases: usize,
    pub failures: usize,
    /// Largest violation (suite-specific units; zero when all hold).
    pub worst: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, violation: f64) {
        self.cases += 1;
        if violation > 0.0 {
            self.failures += 1;
            self.worst = self.worst.max(violation);
        }
    }

    fn new() -> Self {
        Self {
            cases: 0,
            failures: 0,
            worst: 0.0,
        }
    }
}

/// Random members of `Md` / `MdOdd` must have `Re M >= m0 - sum|g_i| >= 0`
/// on a dense grid over the full circle.
pub fn multiplier_positivity(seed: u64, members: usize, grid_points: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new();
    for _ in 0..members {
        let m0 = rng.random_range(0.1..5.0);
        let odd = rng.random_bool(0.5);
        let ntaps = rng.random_range(1..=4);
        let mut lags: Vec<i64> = Vec::new();
        while lags.len() < ntaps {
            let lag = rng.random_range(1..=8) * if rng.random_bool(0.5) { 1 } else { -1 };
            if !lags.contains(&lag) {
                lags.push(lag);
            }
        }
        let raw: Vec<f64> = lags
            .iter()
            .map(|_| {
                let v: f64 = rng.random_range(0.0..1.0);
                if odd && rng.random_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let l1: f64 = raw.iter().map(|v| v.abs()).sum();
        let fill = rng.random_range(0.0..=1.0) * m0 / l1.max(f64::MIN_POSITIVE);
        let m = FirMultiplier::new(
            m0,
            lags.iter().zip(&raw).map(|(&lag, &v)| Tap {
                lag,
                value: v * fill,
            }),
        )
        .expect("generated multiplier is valid");
        let floor = m.m0() - m.tap_l1();
        let mut violation: f64 = if m.classify() == MultiplierClass::Neither {
            1.0
        } else {
            0.0
        };
        for k in 0..grid_points {
            let w = 2.0 * PI * k as f64 / grid_points as f64;
            let re = m.freq_response(w).re;
            violation = violation.max(floor - 1e-12 - re).max(-re - 1e-12);
        }
        out.record(violation);
    }
    out
}

/// Absolute homogeneity and triangle inequality of the power estimator.
pub fn seminorm_axioms(seed: u64, pairs: usize, len: usize) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new();
    for _ in 0..pairs {
        let y = SampleSignal::from_fn(len, |_| rng.random_range(-10.0..10.0))?;
        let z = SampleSignal::from_fn(len, |_| rng.random_range(-10.0..10.0))?;
        let a: f64 = rng.random_range(-5.0..5.0);
        let w = PowerWindow::final_fraction(rng.random_range(0.1..=1.0));
        let py = power_seminorm(&y, w)?;
        let pz = power_seminorm(&z, w)?;
        let homog = (power_seminorm(&y.scaled(a), w)? - a.abs() * py).abs() - 1e-12 * py.max(1.0);
        let tri = power_seminorm(&y.add(&z)?, w)? - (py + pz) * (1.0 + 1e-12);
        out.record(homog.max(tri));
    }
    Ok(out)
}

/// Chord slopes of `n` on random pairs stay in `[0, k]`.
pub fn slope_restriction(n: &Nonlinearity, seed: u64, pairs: usize, span: f64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = n.slope_bound();
    let mut out = SuiteOutcome::new();
    while out.cases < pairs {
        let x1: f64 = rng.random_range(-span..span);
        let x2: f64 = rng.random_range(-span..span);
        if x1 == x2 {
            continue;
        }
        let s = (n.eval(x1) - n.eval(x2)) / (x1 - x2);
        out.record((-s).max(s - k));
    }
    out
}

/// The certificate inequality holds at `gamma (1 + 1e-9)` everywhere on the
/// grid and fails somewhere at `gamma (1 - 1e-3)` unless gamma was clamped
/// to one.
pub fn certificate_is_minimal(cert: &GainCertificate, response: &PlantResponse<'_>) -> bool {
    let (above, _) = response.min_lhs(
        &cert.multiplier,
        cert.k,
        cert.gamma * (1.0 + POST_CHECK_INFLATION),
    );
    if !(above > 0.0) {
        return false;
    }
    if cert.gamma <= 1.0 {
        return true;
    }
    let (below, _) = response.min_lhs(&cert.multiplier, cert.k, cert.gamma * (1.0 - 1e-3));
    below <= 0.0
}

/// Largest deviation between the DFT of a simulated impulse response of
/// length `2^log2_len` and the frequency response on the DFT bins.
pub fn dft_consistency(tf: &RationalTransferFunction, log2_len: u32) -> Result<f64> {
    let n = 1usize << log2_len;
    let h = tf.simulate(&SampleSignal::impulse(n)?)?;
    let mut worst = 0.0f64;
    for bin in 0..=n / 2 {
        let w = 2.0 * PI * bin as f64 / n as f64;
        let dft = h
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (t, v)| {
                acc + Complex64::from_polar(v, -w * t as f64)
            });
        worst = worst.max((dft - tf.eval_at(w)?).norm());
    }
    Ok(worst)
}
