//! Rational transfer functions in `z` (discrete) or `s` (continuous).
//!
//! Coefficients are stored highest power first. Frequency responses are
//! evaluated on the unit circle `z = e^{jw}` or the imaginary axis `s = jw`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::SampleSignal;
use crate::roots::polynomial_roots;

/// Denominator modulus below which an evaluation point counts as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Poles must sit this far inside the stability region.
pub const STABILITY_MARGIN: f64 = 1e-9;
/// Default number of points on `[0, pi]` for discrete grids.
pub const DEFAULT_GRID_SIZE: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Discrete,
    Continuous,
}

impl Domain {
    fn name(self) -> &'static str {
        match self {
            Domain::Discrete => "discrete",
            Domain::Continuous => "continuous",
        }
    }

    /// `e^{jw}` or `jw`.
    pub fn point(self, omega: f64) -> Complex64 {
        match self {
            Domain::Discrete => Complex64::from_polar(1.0, omega),
            Domain::Continuous => Complex64::new(0.0, omega),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TfJson", into = "TfJson")]
pub struct RationalTransferFunction {
    domain: Domain,
    num: Vec<f64>,
    den: Vec<f64>,
}

/// Wire format: `{"domain": "discrete", "num": [..], "den": [..]}`.
#[derive(Serialize, Deserialize)]
struct TfJson {
    domain: Domain,
    num: Vec<f64>,
    den: Vec<f64>,
}

impl TryFrom<TfJson> for RationalTransferFunction {
    type Error = Error;

    fn try_from(v: TfJson) -> Result<Self> {
        Self::new(v.domain, v.num, v.den)
    }
}

impl From<RationalTransferFunction> for TfJson {
    fn from(tf: RationalTransferFunction) -> Self {
        TfJson {
            domain: tf.domain,
            num: tf.num,
            den: tf.den,
        }
    }
}

impl RationalTransferFunction {
    /// Leading zeros of the numerator are dropped; the denominator must
    /// have a nonzero leading coefficient.
    pub fn new(domain: Domain, num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        if num.is_empty() || den.is_empty() {
            return Err(Error::InvalidTransferFunction(
                "coefficient lists must be nonempty".into(),
            ));
        }
        if num.iter().chain(den.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidTransferFunction(
                "coefficients must be finite".into(),
            ));
        }
        if den[0] == 0.0 {
            return Err(Error::InvalidTransferFunction(
                "denominator leading coefficient is zero".into(),
            ));
        }
        let first = num.iter().position(|&c| c != 0.0).unwrap_or(num.len() - 1);
        let num = num[first..].to_vec();
        Ok(Self { domain, num, den })
    }

    pub fn discrete(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        Self::new(Domain::Discrete, num, den)
    }

    pub fn continuous(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        Self::new(Domain::Continuous, num, den)
    }

    pub fn constant(domain: Domain, c: f64) -> Self {
        Self {
            domain,
            num: vec![c],
            den: vec![1.0],
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn numerator(&self) -> &[f64] {
        &self.num
    }

    pub fn denominator(&self) -> &[f64] {
        &self.den
    }

    pub fn num_degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn den_degree(&self) -> usize {
        self.den.len() - 1
    }

    pub fn is_proper(&self) -> bool {
        self.num_degree() <= self.den_degree()
    }

    /// Zero numerator counts as strictly proper.
    pub fn is_strictly_proper(&self) -> bool {
        self.num_degree() < self.den_degree() || self.num.iter().all(|&c| c == 0.0)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(
            self.domain,
            self.num.iter().map(|c| k * c).collect(),
            self.den.clone(),
        )
        .expect("scaling preserves validity")
    }

    /// `c + G`.
    pub fn plus_constant(&self, c: f64) -> Self {
        let cden: Vec<f64> = self.den.iter().map(|d| c * d).collect();
        Self::new(self.domain, poly_add(&self.num, &cden), self.den.clone())
            .expect("adding a constant preserves validity")
    }

    /// The sensitivity `1 / (1 + G)`.
    pub fn sensitivity(&self) -> Result<Self> {
        Self::new(
            self.domain,
            self.den.clone(),
            poly_add(&self.num, &self.den),
        )
    }

    /// Complex value at an arbitrary point of the `z`/`s` plane.
    pub fn eval_point(&self, p: Complex64) -> Option<Complex64> {
        let d = horner(&self.den, p);
        (d.norm() >= POLE_TOLERANCE).then(|| horner(&self.num, p) / d)
    }

    /// Frequency response at `z = e^{jw}` or `s = jw`.
    pub fn eval_at(&self, omega: f64) -> Result<Complex64> {
        let p = self.domain.point(omega);
        let d = horner(&self.den, p);
        if d.norm() < POLE_TOLERANCE {
            return Err(Error::PoleOnBoundary {
                omega,
                modulus: d.norm(),
            });
        }
        Ok(horner(&self.num, p) / d)
    }

    pub fn poles(&self) -> Vec<Complex64> {
        polynomial_roots(&self.den)
    }

    /// All poles strictly inside the unit disc (discrete) or the open left
    /// half plane (continuous), with margin [`STABILITY_MARGIN`]. A constant
    /// denominator has no poles and is stable.
    pub fn is_stable(&self) -> bool {
        self.poles().iter().all(|p| match self.domain {
            Domain::Discrete => p.norm() < 1.0 - STABILITY_MARGIN,
            Domain::Continuous => p.re < -STABILITY_MARGIN,
        })
    }

    /// Static gain: `G(1)` in discrete time, `G(0)` in continuous time.
    pub fn dc_gain(&self) -> Result<f64> {
        Ok(self.eval_at(0.0)?.re)
    }

    /// Zero-initial-state response to `input`.
    pub fn simulate(&self, input: &SampleSignal) -> Result<SampleSignal> {
        let mut filter = DirectFormFilter::new(self)?;
        SampleSignal::new(input.iter().map(|u| filter.step(u)).collect())
    }

    /// Peak gain on `grid`.
    pub fn hinf_on_grid(&self, grid: &FrequencyGrid) -> Result<HinfEstimate> {
        if !self.is_stable() {
            return Err(Error::InvalidTransferFunction(
                "H-infinity estimate needs a stable system".into(),
            ));
        }
        check_grid_domain(self, grid)?;
        let mut best = HinfEstimate {
            value: f64::NEG_INFINITY,
            omega: grid.points()[0],
        };
        for &w in grid.points() {
            let v = self.eval_at(w)?.norm();
            if v > best.value {
                best = HinfEstimate { value: v, omega: w };
            }
        }
        Ok(best)
    }

    /// Peak gain on `grid`, then `passes` rounds of local uniform refinement
    /// around the running maximum, each shrinking the window by `zoom`.
    pub fn hinf_refined(&self, grid: &FrequencyGrid, refine: Refinement) -> Result<HinfEstimate> {
        let mut best = self.hinf_on_grid(grid)?;
        let pts = grid.points();
        let i = pts.iter().position(|&w| w == best.omega).unwrap_or(0);
        let mut lo = pts[i.saturating_sub(1)];
        let mut hi = pts[(i + 1).min(pts.len() - 1)];
        let upper = *pts.last().unwrap();
        let lower = pts[0];
        for _ in 0..refine.passes {
            let n = refine.points.max(2);
            for k in 0..n {
                let w = lo + (hi - lo) * k as f64 / (n - 1) as f64;
                let v = self.eval_at(w)?.norm();
                if v > best.value {
                    best = HinfEstimate { value: v, omega: w };
                }
            }
            let half = 0.5 * (hi - lo) / refine.zoom;
            lo = (best.omega - half).max(lower);
            hi = (best.omega + half).min(upper);
        }
        Ok(best)
    }
}

fn check_grid_domain(tf: &RationalTransferFunction, grid: &FrequencyGrid) -> Result<()> {
    if grid.domain() != tf.domain {
        return Err(Error::DomainMismatch {
            expected: grid.domain().name(),
        });
    }
    Ok(())
}

fn horner(p: &[f64], x: Complex64) -> Complex64 {
    p.iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Sum of two polynomials stored highest power first.
fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    let pad = |p: &[f64]| {
        let mut v = vec![0.0; n - p.len()];
        v.extend_from_slice(p);
        v
    };
    pad(a)
        .iter()
        .zip(pad(b).iter())
        .map(|(x, y)| x + y)
        .collect()
}

/// Peak magnitude and where it was found.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HinfEstimate {
    pub value: f64,
    pub omega: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Refinement {
    pub passes: usize,
    pub zoom: f64,
    pub points: usize,
}

impl Default for Refinement {
    fn default() -> Self {
        Self {
            passes: 3,
            zoom: 10.0,
            points: 1001,
        }
    }
}

/// Strictly increasing set of evaluation frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyGrid {
    domain: Domain,
    points: Vec<f64>,
}

impl FrequencyGrid {
    /// `n` uniformly spaced points covering `[0, pi]`; conjugate symmetry
    /// covers the rest of the circle.
    pub fn uniform_discrete(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!(
                "discrete grid needs at least 2 points, got {n}"
            )));
        }
        let mut points: Vec<f64> = (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect();
        points[n - 1] = PI;
        Self::from_points(Domain::Discrete, points)
    }

    /// `w = 0` followed by `n` log-spaced points on `[w_min, w_max]`.
    pub fn log_continuous(w_min: f64, w_max: f64, n: usize) -> Result<Self> {
        if !(w_min > 0.0 && w_max > w_min) || n < 2 {
            return Err(Error::InvalidGrid(format!(
                "log grid needs 0 < w_min < w_max and n >= 2 (got {w_min}, {w_max}, {n})"
            )));
        }
        let (a, b) = (w_min.log10(), w_max.log10());
        let mut points = vec![0.0];
        points.extend((0..n).map(|k| 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64)));
        Self::from_points(Domain::Continuous, points)
    }

    pub fn from_points(domain: Domain, points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if points.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidGrid("grid points must be finite".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(
                "grid must be strictly increasing".into(),
            ));
        }
        if domain == Domain::Discrete && (points[0] != 0.0 || *points.last().unwrap() != PI) {
            return Err(Error::InvalidGrid(
                "discrete grid must start at 0 and end at pi".into(),
            ));
        }
        Ok(Self { domain, points })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Inserts the midpoint of every gap; the result contains every
    /// original point.
    pub fn refined(&self) -> Self {
        let mut points = Vec::with_capacity(2 * self.points.len());
        for w in self.points.windows(2) {
            points.push(w[0]);
            points.push(0.5 * (w[0] + w[1]));
        }
        points.push(*self.points.last().unwrap());
        Self {
            domain: self.domain,
            points,
        }
    }
}

/// Transposed direct-form II realisation with zero initial state.
///
/// For a strictly proper system the output at time `t` is available
/// before the input at `t` is known, which is what closes a feedback loop
/// without an algebraic equation.
#[derive(Clone, Debug)]
pub struct DirectFormFilter {
    b: Vec<f64>,
    a: Vec<f64>,
    state: Vec<f64>,
}

impl DirectFormFilter {
    pub fn new(tf: &RationalTransferFunction) -> Result<Self> {
        if tf.domain != Domain::Discrete {
            return Err(Error::DomainMismatch {
                expected: "discrete",
            });
        }
        if !tf.is_proper() {
            return Err(Error::NotProper {
                num: tf.num_degree(),
                den: tf.den_degree(),
            });
        }
        let n = tf.den_degree();
        let a0 = tf.den[0];
        let mut b = vec![0.0; n + 1 - tf.num.len()];
        b.extend(tf.num.iter().map(|c| c / a0));
        let a = tf.den.iter().map(|c| c / a0).collect();
        Ok(Self {
            b,
            a,
            state: vec![0.0; n],
        })
    }

    pub fn feedthrough(&self) -> f64 {
        self.b[0]
    }

    /// The part of the next output that does not depend on the next input.
    pub fn pending_output(&self) -> f64 {
        self.state.first().copied().unwrap_or(0.0)
    }

    pub fn step(&mut self, u: f64) -> f64 {
        let y = self.b[0] * u + self.pending_output();
        let n = self.state.len();
        for i in 0..n {
            let next = if i + 1 < n { self.state[i + 1] } else { 0.0 };
            self.state[i] = next + self.b[i + 1] * u - self.a[i + 1] * y;
        }
        y
    }
}

/// The discrete benchmark plant `g (2z + 0.92) / (z (z - 0.5))`.
pub fn benchmark_plant(g: f64) -> RationalTransferFunction {
    RationalTransferFunction::discrete(vec![2.0 * g, 0.92 * g], vec![1.0, -0.5, 0.0])
        .expect("valid plant")
}

/// The lightly damped continuous plant `909 / ((s^2 + 0.1 s + 1)(s + 100))`.
pub fn resonant_plant() -> RationalTransferFunction {
    RationalTransferFunction::continuous(vec![909.0], vec![1.0, 100.1, 11.0, 100.0])
        .expect("valid plant")
}
