//! Discrete-time O'Shea-Zames-Falb multipliers with finite impulse response.
//!
//! A multiplier has impulse response `m(t) = m0 d(t) + sum_{i != 0} g_i d(t - i)`
//! where lags may be negative (anticausal taps). Membership is checked with
//! the non-strict l1 bound `sum |g_i| <= m0`:
//!
//! * `Md`: additionally every tap is nonpositive; valid for any monotone
//!   slope-restricted nonlinearity.
//! * `MdOddOnly`: some tap is positive; valid only when the nonlinearity
//!   is odd.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `|lag|`.
pub const DEFAULT_MAX_LAG: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MultiplierClass {
    Md,
    MdOddOnly,
    Neither,
}

impl MultiplierClass {
    /// Offset (bias) guarantees need the non-odd class.
    pub fn supports_offset_gain(self) -> bool {
        self == MultiplierClass::Md
    }
}

impl fmt::Display for MultiplierClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultiplierClass::Md => "Md",
            MultiplierClass::MdOddOnly => "MdOddOnly",
            MultiplierClass::Neither => "Neither",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tap {
    pub lag: i64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MultiplierJson", into = "MultiplierJson")]
pub struct FirMultiplier {
    m0: f64,
    taps: BTreeMap<i64, f64>,
}

#[derive(Serialize, Deserialize)]
struct MultiplierJson {
    m0: f64,
    taps: Vec<Tap>,
}

impl TryFrom<MultiplierJson> for FirMultiplier {
    type Error = Error;

    fn try_from(v: MultiplierJson) -> Result<Self> {
        Self::new(v.m0, v.taps)
    }
}

impl From<FirMultiplier> for MultiplierJson {
    fn from(m: FirMultiplier) -> Self {
        let taps = m.taps().collect();
        MultiplierJson { m0: m.m0, taps }
    }
}

impl FirMultiplier {
    pub fn new(m0: f64, taps: impl IntoIterator<Item = Tap>) -> Result<Self> {
        Self::with_max_lag(m0, taps, DEFAULT_MAX_LAG)
    }

    pub fn with_max_lag(
        m0: f64,
        taps: impl IntoIterator<Item = Tap>,
        max_lag: i64,
    ) -> Result<Self> {
        if !(m0 > 0.0) || !m0.is_finite() {
            return Err(Error::InvalidMultiplier(format!(
                "center coefficient must be positive, got {m0}"
            )));
        }
        let mut map = BTreeMap::new();
        for Tap { lag, value } in taps {
            if lag == 0 {
                return Err(Error::InvalidMultiplier(
                    "tap lag 0 is the center coefficient".into(),
                ));
            }
            if lag.abs() > max_lag {
                return Err(Error::InvalidMultiplier(format!(
                    "|lag| {} exceeds {max_lag}",
                    lag.abs()
                )));
            }
            if !value.is_finite() {
                return Err(Error::InvalidMultiplier(format!(
                    "tap at lag {lag} is not finite"
                )));
            }
            if map.insert(lag, value).is_some() {
                return Err(Error::InvalidMultiplier(format!("duplicate lag {lag}")));
            }
        }
        Ok(Self { m0, taps: map })
    }

    /// `M = m0`.
    pub fn static_gain(m0: f64) -> Result<Self> {
        Self::new(m0, [])
    }

    /// `M = m0 + value e^{-jw lag}`.
    pub fn one_tap(m0: f64, lag: i64, value: f64) -> Result<Self> {
        Self::new(m0, [Tap { lag, value }])
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn taps(&self) -> impl Iterator<Item = Tap> + '_ {
        self.taps.iter().map(|(&lag, &value)| Tap { lag, value })
    }

    pub fn tap_l1(&self) -> f64 {
        self.taps.values().map(|v| v.abs()).sum()
    }

    pub fn classify(&self) -> MultiplierClass {
        if self.tap_l1() > self.m0 {
            MultiplierClass::Neither
        } else if self.taps.values().all(|&v| v <= 0.0) {
            MultiplierClass::Md
        } else {
            MultiplierClass::MdOddOnly
        }
    }

    /// `m0 + sum_i g_i e^{-j w i}`.
    pub fn freq_response(&self, omega: f64) -> Complex64 {
        self.taps
            .iter()
            .fold(Complex64::new(self.m0, 0.0), |acc, (&lag, &v)| {
                acc + Complex64::from_polar(v, -omega * lag as f64)
            })
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(
            self.m0 * s,
            self.taps().map(|t| Tap {
                lag: t.lag,
                value: t.value * s,
            }),
        )
    }
}

/// Shorthand `m0|value@lag,value@lag,..`, e.g. `1|-0.66@+1` or `1|` for a
/// static multiplier.
impl FromStr for FirMultiplier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (center, rest) = s.split_once('|').unwrap_or((s, ""));
        let m0: f64 = center
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad center coefficient {center:?}: {e}")))?;
        let mut taps = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (value, lag) = item.split_once('@').ok_or_else(|| {
                Error::Parse(format!("tap {item:?} is not of the form value@lag"))
            })?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad tap value in {item:?}: {e}")))?;
            let lag: i64 = lag
                .trim()
                .trim_start_matches('+')
                .parse()
                .map_err(|e| Error::Parse(format!("bad tap lag in {item:?}: {e}")))?;
            taps.push(Tap { lag, value });
        }
        Self::new(m0, taps)
    }
}

impl fmt::Display for FirMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.m0)?;
        for (k, t) in self.taps().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}@{:+}", t.value, t.lag)?;
        }
        Ok(())
    }
}
