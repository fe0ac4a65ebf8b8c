//! Time-domain simulation of the discrete Lurye loop
//!
//! ```text
//! y1 = G u1,  y2 = N(u2),  u1 = r1 - y2,  u2 = y1 + r2
//! ```
//!
//! with zero initial plant state.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::SampleSignal;
use crate::rational::{DirectFormFilter, Domain, RationalTransferFunction};

/// Memoryless monotone nonlinearity, slope-restricted on `[0, k]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Nonlinearity {
    /// Unit saturation, `k = 1`.
    Saturation,
    /// Zero on `|x| <= width`, unit slope outside.
    Deadzone { width: f64 },
    /// Piecewise-linear interpolation through `(x, y)` breakpoints, held
    /// constant outside the table.
    Table { points: PiecewiseLinear },
}

impl Nonlinearity {
    pub fn deadzone(width: f64) -> Result<Self> {
        if !(width >= 0.0) || !width.is_finite() {
            return Err(Error::InvalidNonlinearity(format!(
                "deadzone width {width} must be >= 0"
            )));
        }
        Ok(Nonlinearity::Deadzone { width })
    }

    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        PiecewiseLinear::new(points).map(|points| Nonlinearity::Table { points })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Nonlinearity::Saturation => x.clamp(-1.0, 1.0),
            Nonlinearity::Deadzone { width } => {
                if x.abs() <= *width {
                    0.0
                } else {
                    x - width.copysign(x)
                }
            }
            Nonlinearity::Table { points } => points.eval(x),
        }
    }

    /// Upper end `k` of the slope interval.
    pub fn slope_bound(&self) -> f64 {
        match self {
            Nonlinearity::Saturation | Nonlinearity::Deadzone { .. } => 1.0,
            Nonlinearity::Table { points } => points.max_slope(),
        }
    }

    pub fn is_odd(&self) -> bool {
        match self {
            Nonlinearity::Saturation | Nonlinearity::Deadzone { .. } => true,
            Nonlinearity::Table { points } => points.is_odd(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TryFrom<Vec<(f64, f64)>> for PiecewiseLinear {
    type Error = Error;

    fn try_from(points: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<PiecewiseLinear> for Vec<(f64, f64)> {
    fn from(t: PiecewiseLinear) -> Self {
        t.xs.into_iter().zip(t.ys).collect()
    }
}

impl PiecewiseLinear {
    /// Breakpoints must be strictly increasing in `x`, nondecreasing in `y`,
    /// and pass through the origin so that `|N(x)| <= k |x|`.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidNonlinearity(
                "table needs at least two breakpoints".into(),
            ));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidNonlinearity(
                "table entries must be finite".into(),
            ));
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidNonlinearity(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if ys.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidNonlinearity("table is not monotone".into()));
        }
        let t = Self { xs, ys };
        if t.eval(0.0).abs() > 1e-12 {
            return Err(Error::InvalidNonlinearity(
                "table must pass through the origin".into(),
            ));
        }
        Ok(t)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.xs.partition_point(|&b| b <= x) - 1;
        let f = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + f * (self.ys[i + 1] - self.ys[i])
    }

    pub fn max_slope(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .fold(0.0, f64::max)
    }

    fn is_odd(&self) -> bool {
        self.xs
            .iter()
            .chain(self.xs.iter().map(|x| -x).collect::<Vec<_>>().iter())
            .all(|&x| (self.eval(x) + self.eval(-x)).abs() <= 1e-12)
    }
}

/// Plant in feedback with a memoryless nonlinearity.
#[derive(Clone, Debug)]
pub struct LuryeSystem {
    plant: RationalTransferFunction,
    phi: Nonlinearity,
}

impl LuryeSystem {
    /// The plant must be discrete, stable and strictly proper; direct
    /// feedthrough would make each step an algebraic equation.
    pub fn new(plant: RationalTransferFunction, phi: Nonlinearity) -> Result<Self> {
        if plant.domain() != Domain::Discrete {
            return Err(Error::DomainMismatch {
                expected: "discrete",
            });
        }
        if !plant.is_proper() {
            return Err(Error::NotProper {
                num: plant.num_degree(),
                den: plant.den_degree(),
            });
        }
        if !plant.is_strictly_proper() {
            return Err(Error::NotStrictlyProper);
        }
        if !plant.is_stable() {
            return Err(Error::InvalidTransferFunction(
                "Lurye plant must be stable".into(),
            ));
        }
        Ok(Self { plant, phi })
    }

    pub fn plant(&self) -> &RationalTransferFunction {
        &self.plant
    }

    pub fn nonlinearity(&self) -> &Nonlinearity {
        &self.phi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub u1: SampleSignal,
    pub u2: SampleSignal,
    pub y1: SampleSignal,
    pub y2: SampleSignal,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.u1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u1.is_empty()
    }

    /// Writes `t,u1,u2,y1,y2` CSV with header.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "u1", "u2", "y1", "y2"])?;
        for t in 0..self.len() {
            let row = [&self.u1, &self.u2, &self.y1, &self.y2].map(|s| s.as_slice()[t].to_string());
            w.write_record(std::iter::once(t.to_string()).chain(row))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs the loop for `horizon` samples from zero plant state.
pub fn simulate_lurye(
    sys: &LuryeSystem,
    r1: &SampleSignal,
    r2: &SampleSignal,
    horizon: usize,
) -> Result<Trajectory> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    for r in [r1, r2] {
        if r.len() < horizon {
            return Err(Error::LengthMismatch {
                left: r.len(),
                right: horizon,
            });
        }
    }
    let mut filter = DirectFormFilter::new(&sys.plant)?;
    debug_assert_eq!(filter.feedthrough(), 0.0);
    let (r1, r2) = (r1.as_slice(), r2.as_slice());
    let mut u1 = Vec::with_capacity(horizon);
    let mut u2 = Vec::with_capacity(horizon);
    let mut y1 = Vec::with_capacity(horizon);
    let mut y2 = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let out = filter.pending_output();
        let u2_t = out + r2[t];
        let y2_t = sys.phi.eval(u2_t);
        let u1_t = r1[t] - y2_t;
        filter.step(u1_t);
        y1.push(out);
        u2.push(u2_t);
        y2.push(y2_t);
        u1.push(u1_t);
    }
    Ok(Trajectory {
        u1: SampleSignal::new(u1)?.with_label("u1"),
        u2: SampleSignal::new(u2)?.with_label("u2"),
        y1: SampleSignal::new(y1)?.with_label("y1"),
        y2: SampleSignal::new(y2)?.with_label("y2"),
    })
}
