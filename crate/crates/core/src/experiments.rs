//! The step-pair and pulse-plus-noise experiments on the benchmark loop,
//! plus a generic JSON-configured run.

use serde::{Deserialize, Serialize};

use crate::certify::{dc_fixed_point, DcFixedPoint};
use crate::error::{Error, Result};
use crate::lurye::{simulate_lurye, LuryeSystem, Nonlinearity, Trajectory};
use crate::metrics::{
    bias_estimate, gen_gaussian, gen_pulse, gen_step, l2_distance, power_about_bias,
    power_seminorm, tail_deviation, NoiseSpec, PowerWindow, SampleSignal,
};
use crate::rational::benchmark_plant;

pub const STEP_AMPLITUDE: f64 = 2.7;
pub const PULSE_PERIOD: usize = 400;
pub const NOISE_VARIANCE: f64 = 1e-3;
pub const DEFAULT_HORIZON: usize = 1200;
pub const DEFAULT_SEED: u64 = 42;
/// Samples at the end of a step run used for steady-state comparisons.
pub const STEADY_WINDOW: usize = 400;
/// Share of each pulse segment used for the segment bias.
pub const SEGMENT_BIAS_TAIL: f64 = 0.25;
/// Share of each pulse segment over which power about the bias is measured.
pub const SEGMENT_POWER_WINDOW: f64 = 0.5;

/// Exogenous signal recipe for [`ExperimentConfig`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalSpec {
    Zero,
    Step {
        amplitude: f64,
        onset: usize,
    },
    Pulse {
        amplitude: f64,
        period: usize,
    },
    /// Seeded from the enclosing config's `seed`.
    Gaussian {
        mean: f64,
        variance: f64,
    },
}

impl SignalSpec {
    pub fn generate(&self, length: usize, seed: u64) -> Result<SampleSignal> {
        match *self {
            SignalSpec::Zero => SampleSignal::zeros(length),
            SignalSpec::Step { amplitude, onset } => gen_step(amplitude, onset, length),
            SignalSpec::Pulse { amplitude, period } => gen_pulse(amplitude, period, length),
            SignalSpec::Gaussian { mean, variance } => {
                gen_gaussian(&NoiseSpec::new(seed, mean, variance)?, length)
            }
        }
    }
}

/// `{g, r1_spec, r2_spec, horizon, seed}` on the benchmark plant with unit
/// saturation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub g: f64,
    pub r1_spec: SignalSpec,
    pub r2_spec: SignalSpec,
    pub horizon: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn run(&self) -> Result<(SampleSignal, SampleSignal, Trajectory)> {
        let sys = benchmark_system(self.g)?;
        let r1 = self.r1_spec.generate(self.horizon, self.seed)?;
        let r2 = self.r2_spec.generate(self.horizon, self.seed)?;
        let tr = simulate_lurye(&sys, &r1, &r2, self.horizon)?;
        Ok((r1, r2, tr))
    }
}

pub fn benchmark_system(g: f64) -> Result<LuryeSystem> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "gain g must be positive, got {g}"
        )));
    }
    LuryeSystem::new(benchmark_plant(g), Nonlinearity::Saturation)
}

#[derive(Clone, Debug)]
pub struct StepPairOutcome {
    pub g: f64,
    pub configs: [ExperimentConfig; 2],
    pub r2a: SampleSignal,
    pub r2b: SampleSignal,
    pub a: Trajectory,
    pub b: Trajectory,
    /// `u2_a - u2_b`.
    pub diff_u2: SampleSignal,
    /// First sample of the steady-state window.
    pub steady_start: usize,
    pub max_steady_diff: f64,
    /// Power of `diff_u2` over the steady-state window.
    pub steady_diff_power: f64,
    pub l2_diff_u2: f64,
    pub l2_diff_r2: f64,
    pub dc: DcFixedPoint,
    /// `max |u2(t) - u2_bar|` over the steady-state window, both runs.
    pub steady_dc_error: f64,
}

/// Responses to the unit-delayed step pair (onsets 1 and 2) with `r1 = 0`.
pub fn run_step_pair(g: f64, horizon: usize) -> Result<StepPairOutcome> {
    if horizon < PULSE_PERIOD {
        return Err(Error::InvalidArgument(format!(
            "horizon must be >= {PULSE_PERIOD}, got {horizon}"
        )));
    }
    let config = |onset| ExperimentConfig {
        g,
        r1_spec: SignalSpec::Zero,
        r2_spec: SignalSpec::Step {
            amplitude: STEP_AMPLITUDE,
            onset,
        },
        horizon,
        seed: 0,
    };
    let configs = [config(1), config(2)];
    let (_, r2a, a) = configs[0].run()?;
    let (_, r2b, b) = configs[1].run()?;
    let diff_u2 = a.u2.sub(&b.u2)?;

    let steady_start = horizon.saturating_sub(STEADY_WINDOW);
    let window = PowerWindow::final_fraction((horizon - steady_start) as f64 / horizon as f64);
    let max_steady_diff = diff_u2.as_slice()[steady_start..]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let steady_diff_power = power_seminorm(&diff_u2, window)?;

    let g_dc = benchmark_plant(g).dc_gain()?;
    let dc = dc_fixed_point(g_dc, &Nonlinearity::Saturation, STEP_AMPLITUDE)?;
    let steady_dc_error = [&a.u2, &b.u2]
        .iter()
        .flat_map(|s| s.as_slice()[steady_start..].iter())
        .fold(0.0f64, |m, v| m.max((v - dc.u2_bar).abs()));

    Ok(StepPairOutcome {
        g,
        l2_diff_u2: l2_distance(&a.u2, &b.u2)?,
        l2_diff_r2: l2_distance(&r2a, &r2b)?,
        configs,
        r2a,
        r2b,
        a,
        b,
        diff_u2,
        steady_start,
        max_steady_diff,
        steady_diff_power,
        dc,
        steady_dc_error,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentStats {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    /// `r2` is at its high level on this segment.
    pub high: bool,
    pub bias: f64,
    pub power_about_bias: f64,
    pub tail_deviation: f64,
    pub r1_power: f64,
    pub r2_residual_power: f64,
}

#[derive(Clone, Debug)]
pub struct PulseNoiseOutcome {
    pub g: f64,
    pub config: ExperimentConfig,
    pub r1: SampleSignal,
    pub r2: SampleSignal,
    pub trajectory: Trajectory,
    pub segments: Vec<SegmentStats>,
}

/// Pulse `r2` (period 400, levels 0 and 2.7) with seeded white noise on `r1`.
/// Statistics of `u2` are taken per half period, where `r2` is constant.
pub fn run_pulse_noise(g: f64, horizon: usize, seed: u64) -> Result<PulseNoiseOutcome> {
    if horizon < PULSE_PERIOD {
        return Err(Error::InvalidArgument(format!(
            "horizon must be >= {PULSE_PERIOD}, got {horizon}"
        )));
    }
    let config = ExperimentConfig {
        g,
        r1_spec: SignalSpec::Gaussian {
            mean: 0.0,
            variance: NOISE_VARIANCE,
        },
        r2_spec: SignalSpec::Pulse {
            amplitude: STEP_AMPLITUDE,
            period: PULSE_PERIOD,
        },
        horizon,
        seed,
    };
    let (r1, r2, trajectory) = config.run()?;
    let half = PULSE_PERIOD / 2;
    let window = PowerWindow::final_fraction(SEGMENT_POWER_WINDOW);
    let mut segments = Vec::new();
    for (index, start) in (0..horizon / half * half).step_by(half).enumerate() {
        let range = start..start + half;
        let u2 = trajectory.u2.segment(range.clone())?;
        let r1s = r1.segment(range.clone())?;
        let r2s = r2.segment(range.clone())?;
        segments.push(SegmentStats {
            index,
            start,
            end: range.end,
            high: (start % PULSE_PERIOD) >= half,
            bias: bias_estimate(&u2, SEGMENT_BIAS_TAIL)?,
            power_about_bias: power_about_bias(&u2, window, SEGMENT_BIAS_TAIL)?,
            tail_deviation: tail_deviation(&u2, SEGMENT_BIAS_TAIL)?,
            r1_power: power_seminorm(&r1s, window)?,
            r2_residual_power: power_about_bias(&r2s, window, SEGMENT_BIAS_TAIL)?,
        });
    }
    Ok(PulseNoiseOutcome {
        g,
        config,
        r1,
        r2,
        trajectory,
        segments,
    })
}
