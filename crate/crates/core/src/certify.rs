//! Frequency-domain stability certificates for the discrete Lurye loop.
//!
//! For a multiplier `M` and plant `G` with nonlinearity slope-restricted
//! on `[0, k]`, the `l2` gain from `r2` to `u2` is at most `gamma >= 1` if
//!
//! ```text
//! 2 Re[M (1/k + G)] gamma^2 - (|G|^2 + |M|^2) gamma - 2 Re[M] > 0
//! ```
//!
//! at every frequency. Writing `a gamma^2 - b gamma - c` for the left side,
//! the smallest admissible `gamma` at one frequency is the larger root
//! `(b + sqrt(b^2 + 4ac)) / 2a`, which exists only when `a > 0`. The
//! certificate takes the maximum over a grid and re-checks the inequality
//! there. When `M` is in `Md` the same bound also holds for the offset gain.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lurye::Nonlinearity;
use crate::ozf::{FirMultiplier, MultiplierClass};
use crate::rational::{Domain, FrequencyGrid, RationalTransferFunction};

/// Relative inflation of gamma at which the certificate is re-checked.
pub const POST_CHECK_INFLATION: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridCheck {
    pub passed: bool,
    /// Frequency of the smallest tested value.
    pub worst_omega: f64,
    pub worst_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainCertificate {
    pub multiplier: FirMultiplier,
    #[serde(rename = "class")]
    pub multiplier_class: MultiplierClass,
    pub gamma: f64,
    /// Minimum over the grid of the inequality's left side at the inflated gamma.
    pub min_margin: f64,
    pub grid_size: usize,
    pub k: f64,
}

impl GainCertificate {
    /// Whether the bound also covers the offset gain (non-odd class).
    pub fn offset_gain_certified(&self) -> bool {
        self.multiplier_class.supports_offset_gain()
    }
}

fn require_discrete_stable(tf: &RationalTransferFunction, grid: &FrequencyGrid) -> Result<()> {
    if tf.domain() != Domain::Discrete || grid.domain() != Domain::Discrete {
        return Err(Error::DomainMismatch {
            expected: "discrete",
        });
    }
    if !tf.is_stable() {
        return Err(Error::InvalidTransferFunction(
            "plant must be stable".into(),
        ));
    }
    Ok(())
}

fn min_over_grid(
    grid: &FrequencyGrid,
    mut value: impl FnMut(f64) -> Result<f64>,
    threshold: f64,
) -> Result<GridCheck> {
    let mut worst = GridCheck {
        passed: true,
        worst_omega: 0.0,
        worst_value: f64::INFINITY,
    };
    for &w in grid.points() {
        let v = value(w)?;
        if v < worst.worst_value {
            worst.worst_value = v;
            worst.worst_omega = w;
        }
    }
    worst.passed = worst.worst_value > threshold;
    Ok(worst)
}

/// `Re{M tf} > eps` at every grid frequency.
pub fn is_suitable(
    m: &FirMultiplier,
    tf: &RationalTransferFunction,
    grid: &FrequencyGrid,
    eps: f64,
) -> Result<GridCheck> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "suitability margin must be >= 0, got {eps}"
        )));
    }
    require_discrete_stable(tf, grid)?;
    min_over_grid(grid, |w| Ok((m.freq_response(w) * tf.eval_at(w)?).re), eps)
}

/// `Re{1 + tf} > 0` at every grid frequency.
pub fn circle_criterion(tf: &RationalTransferFunction, grid: &FrequencyGrid) -> Result<GridCheck> {
    require_discrete_stable(tf, grid)?;
    min_over_grid(grid, |w| Ok(1.0 + tf.eval_at(w)?.re), 0.0)
}

/// Coefficients `(a, b, c)` of `a gamma^2 - b gamma - c` at one frequency.
fn quadratic(mv: Complex64, gv: Complex64, k: f64) -> (f64, f64, f64) {
    let a = 2.0 * (mv * (1.0 / k + gv)).re;
    let b = gv.norm_sqr() + mv.norm_sqr();
    let c = 2.0 * mv.re;
    (a, b, c)
}

/// Left side of the gain inequality at one frequency.
pub fn inequality_lhs(m: &FirMultiplier, gv: Complex64, omega: f64, k: f64, gamma: f64) -> f64 {
    let (a, b, c) = quadratic(m.freq_response(omega), gv, k);
    a * gamma * gamma - b * gamma - c
}

/// Plant response tabulated on a grid, shared across many multipliers.
#[derive(Clone, Debug)]
pub struct PlantResponse<'g> {
    grid: &'g FrequencyGrid,
    values: Vec<Complex64>,
}

impl<'g> PlantResponse<'g> {
    pub fn new(plant: &RationalTransferFunction, grid: &'g FrequencyGrid) -> Result<Self> {
        require_discrete_stable(plant, grid)?;
        let values = grid
            .points()
            .iter()
            .map(|&w| plant.eval_at(w))
            .collect::<Result<_>>()?;
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        self.grid
    }

    fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid
            .points()
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    /// Smallest value of the inequality's left side over the grid at `gamma`.
    pub fn min_lhs(&self, m: &FirMultiplier, k: f64, gamma: f64) -> (f64, f64) {
        self.iter()
            .map(|(w, gv)| (inequality_lhs(m, gv, w, k, gamma), w))
            .fold(
                (f64::INFINITY, 0.0),
                |acc, x| if x.0 < acc.0 { x } else { acc },
            )
    }

    pub fn gamma_bound(&self, m: &FirMultiplier, k: f64) -> Result<GainCertificate> {
        let class = m.classify();
        if class == MultiplierClass::Neither {
            return Err(Error::InvalidMultiplier(format!(
                "tap l1 norm {} exceeds center {}",
                m.tap_l1(),
                m.m0()
            )));
        }
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "slope bound must be positive, got {k}"
            )));
        }
        let mut gamma = 1.0f64;
        for (w, gv) in self.iter() {
            let (a, b, c) = quadratic(m.freq_response(w), gv, k);
            if a <= 0.0 {
                return Err(Error::NotSuitable {
                    omega: w,
                    value: a / 2.0,
                });
            }
            let root = (b + (b * b + 4.0 * a * c).sqrt()) / (2.0 * a);
            gamma = gamma.max(root);
        }
        let (min_margin, omega) = self.min_lhs(m, k, gamma * (1.0 + POST_CHECK_INFLATION));
        if !(min_margin > 0.0) {
            return Err(Error::NotSuitable {
                omega,
                value: min_margin,
            });
        }
        Ok(GainCertificate {
            multiplier: m.clone(),
            multiplier_class: class,
            gamma,
            min_margin,
            grid_size: self.grid.len(),
            k,
        })
    }
}

/// Gain bound for the unit slope bound (`k = 1`).
pub fn gamma_bound(
    m: &FirMultiplier,
    plant: &RationalTransferFunction,
    grid: &FrequencyGrid,
) -> Result<GainCertificate> {
    gamma_bound_with_slope(m, plant, grid, 1.0)
}

/// Gain bound with `1/k + G` in place of `1 + G`.
pub fn gamma_bound_with_slope(
    m: &FirMultiplier,
    plant: &RationalTransferFunction,
    grid: &FrequencyGrid,
    k: f64,
) -> Result<GainCertificate> {
    PlantResponse::new(plant, grid)?.gamma_bound(m, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseObstruction {
    pub omega: f64,
    /// Principal angle of `1 + G(e^{j omega})`.
    pub angle: f64,
    pub md_excluded: bool,
}

/// Single-frequency phase test on `1 + G`.
///
/// Only the period-3 frequency `2 pi / 3` is decided: there an angle below
/// `-2 pi / 3` rules out every `Md` multiplier. Other frequencies report
/// the angle with `md_excluded = false`.
pub fn phase_obstruction(plant: &RationalTransferFunction, omega: f64) -> Result<PhaseObstruction> {
    if !(omega > 0.0 && omega < PI) {
        return Err(Error::InvalidArgument(format!(
            "omega must lie in (0, pi), got {omega}"
        )));
    }
    if plant.domain() != Domain::Discrete {
        return Err(Error::DomainMismatch {
            expected: "discrete",
        });
    }
    let angle = (1.0 + plant.eval_at(omega)?).arg();
    let third = 2.0 * PI / 3.0;
    let md_excluded = (omega - third).abs() <= 1e-12 && angle < -third;
    Ok(PhaseObstruction {
        omega,
        angle,
        md_excluded,
    })
}

/// Which tap signs the one-tap search may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassFilter {
    /// Nonpositive taps only.
    Md,
    /// Any tap with `|c| <= 1`.
    MdOdd,
}

/// Grid search over `M = 1 + c e^{-j w lag}` for `c` in `[-1, 1]` on a
/// `c_step` lattice.
///
/// Returns the certificate with the smallest gamma; ties go to the smaller
/// `|c|`, then the smaller `|lag|`.
pub fn search_one_tap(
    plant: &RationalTransferFunction,
    grid: &FrequencyGrid,
    lags: &[i64],
    c_step: f64,
    class_filter: ClassFilter,
) -> Result<GainCertificate> {
    if !(c_step > 0.0 && c_step <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "c_step must lie in (0, 1], got {c_step}"
        )));
    }
    if lags.is_empty() || lags.contains(&0) {
        return Err(Error::InvalidArgument(
            "lags must be nonempty and nonzero".into(),
        ));
    }
    let response = PlantResponse::new(plant, grid)?;
    let steps = (1.0 / c_step + 1e-9).floor() as i64;
    let mut best: Option<(GainCertificate, f64, i64)> = None;
    for &lag in lags {
        for i in -steps..=steps {
            let c = i as f64 * c_step;
            if class_filter == ClassFilter::Md && c > 0.0 {
                continue;
            }
            let m = if i == 0 {
                FirMultiplier::static_gain(1.0)?
            } else {
                FirMultiplier::one_tap(1.0, lag, c)?
            };
            let cert = match response.gamma_bound(&m, 1.0) {
                Ok(cert) => cert,
                Err(Error::NotSuitable { .. } | Error::InvalidMultiplier(_)) => continue,
                Err(e) => return Err(e),
            };
            let better = match &best {
                None => true,
                Some((b, bc, blag)) => {
                    (cert.gamma, c.abs(), lag.abs()) < (b.gamma, *bc, blag.abs())
                }
            };
            if better {
                best = Some((cert, c.abs(), lag));
            }
        }
    }
    best.map(|(cert, _, _)| cert).ok_or(Error::NotFound)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcFixedPoint {
    pub u2_bar: f64,
    pub y2_bar: f64,
}

/// Bracket limit for [`dc_fixed_point`].
pub const DC_BRACKET_LIMIT: f64 = 1e6;

/// Steady state of the loop under constant `r2 = r2_bar` and `r1 = 0`:
/// solves `u + G(1) N(u) = r2_bar` by bisection on the strictly increasing
/// left side.
pub fn dc_fixed_point(g_dc: f64, n: &Nonlinearity, r2_bar: f64) -> Result<DcFixedPoint> {
    let k = n.slope_bound();
    if !(1.0 + g_dc * k > 0.0) || !r2_bar.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "u + {g_dc} N(u) is not strictly increasing for slope bound {k}"
        )));
    }
    let f = |u: f64| u + g_dc * n.eval(u) - r2_bar;

    let mut lo = -1.0f64;
    let mut hi = 1.0f64;
    while f(lo) > 0.0 {
        lo *= 2.0;
        if lo < -DC_BRACKET_LIMIT {
            return Err(Error::NoBracket {
                limit: DC_BRACKET_LIMIT,
            });
        }
    }
    while f(hi) < 0.0 {
        hi *= 2.0;
        if hi > DC_BRACKET_LIMIT {
            return Err(Error::NoBracket {
                limit: DC_BRACKET_LIMIT,
            });
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    Ok(DcFixedPoint {
        u2_bar: u,
        y2_bar: n.eval(u),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{benchmark_plant, DEFAULT_GRID_SIZE};

    fn grid() -> FrequencyGrid {
        FrequencyGrid::uniform_discrete(DEFAULT_GRID_SIZE).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn suitability_examples() {
        let grid = grid();
        let m85 = FirMultiplier::one_tap(1.0, 1, -0.85).unwrap();
        let g08 = benchmark_plant(0.8);
        assert!(
            is_suitable(&m85, &g08.plus_constant(1.0), &grid, 0.0)
                .unwrap()
                .passed
        );
        // taken literally (Re{M G} > 0) the multiplier is not suitable for G itself
        assert!(!is_suitable(&m85, &g08, &grid, 0.0).unwrap().passed);

        let one = RationalTransferFunction::constant(Domain::Discrete, 1.0);
        let s = is_suitable(&FirMultiplier::static_gain(1.0).unwrap(), &one, &grid, 0.0).unwrap();
        assert!(s.passed);
        assert_eq!(s.worst_value, 1.0);
        assert!(
            !is_suitable(&FirMultiplier::static_gain(1.0).unwrap(), &one, &grid, 1.0)
                .unwrap()
                .passed
        );

        let m66 = FirMultiplier::one_tap(1.0, 1, -0.66).unwrap();
        assert!(
            is_suitable(&m66, &benchmark_plant(0.6).plus_constant(1.0), &grid, 0.0)
                .unwrap()
                .passed
        );
        assert!(is_suitable(&m66, &one, &grid, -1.0).is_err());
    }

    #[test]
    fn circle_examples() {
        let grid = grid();
        assert!(
            circle_criterion(&benchmark_plant(0.6), &grid)
                .unwrap()
                .passed
        );
        assert!(
            !circle_criterion(&benchmark_plant(0.8), &grid)
                .unwrap()
                .passed
        );
        assert!(
            !circle_criterion(&benchmark_plant(1.0), &grid)
                .unwrap()
                .passed
        );
        let zero = RationalTransferFunction::constant(Domain::Discrete, 0.0);
        assert!(circle_criterion(&zero, &grid).unwrap().passed);
    }

    #[test]
    fn gamma_examples() {
        let grid = grid();
        let cases = [
            ("1|", 0.6, 16.3156),
            ("1|-0.66@+1", 0.6, 4.1795),
            ("1|-0.85@+1", 0.8, 12.8983),
            ("1|+0.9@-1", 1.0, 31.332),
        ];
        for (spec, g, expect) in cases {
            let m: FirMultiplier = spec.parse().unwrap();
            let cert = gamma_bound(&m, &benchmark_plant(g), &grid).unwrap();
            assert!(
                rel(cert.gamma, expect) <= 1e-2,
                "{spec} g={g}: {}",
                cert.gamma
            );
            assert!(cert.min_margin > 0.0);
            assert_eq!(cert.grid_size, DEFAULT_GRID_SIZE);
        }
    }

    #[test]
    fn gamma_for_zero_plant_is_closed_form() {
        let zero = RationalTransferFunction::constant(Domain::Discrete, 0.0);
        let cert = gamma_bound(&FirMultiplier::static_gain(1.0).unwrap(), &zero, &grid()).unwrap();
        let expect = (1.0 + 17f64.sqrt()) / 4.0;
        assert!((cert.gamma - expect).abs() <= 1e-14);
    }

    #[test]
    fn gamma_errors() {
        let grid = grid();
        let m = FirMultiplier::static_gain(1.0).unwrap();
        assert!(matches!(
            gamma_bound(&m, &benchmark_plant(0.8), &grid),
            Err(Error::NotSuitable { .. })
        ));
        let bad = FirMultiplier::one_tap(1.0, 2, -1.2).unwrap();
        assert!(matches!(
            gamma_bound(&bad, &benchmark_plant(0.6), &grid),
            Err(Error::InvalidMultiplier(_))
        ));
        let unstable = RationalTransferFunction::discrete(vec![1.0], vec![1.0, -1.0]).unwrap();
        assert!(gamma_bound(&m, &unstable, &grid).is_err());
    }

    #[test]
    fn slope_bound_generalisation() {
        // k = 1 must agree with the plain entry point; a smaller slope bound
        // gives more room (1/k + G grows) and a smaller gamma.
        let grid = FrequencyGrid::uniform_discrete(4096).unwrap();
        let m = FirMultiplier::one_tap(1.0, 1, -0.66).unwrap();
        let g = benchmark_plant(0.6);
        let a = gamma_bound(&m, &g, &grid).unwrap();
        let b = gamma_bound_with_slope(&m, &g, &grid, 1.0).unwrap();
        assert_eq!(a, b);
        let c = gamma_bound_with_slope(&m, &g, &grid, 0.5).unwrap();
        assert!(c.gamma < a.gamma);
        assert_eq!(c.k, 0.5);
    }

    #[test]
    fn phase_examples() {
        let third = 2.0 * PI / 3.0;
        let p = phase_obstruction(&benchmark_plant(1.0), third).unwrap();
        let expect = -PI + (31.0 * 3f64.sqrt() / 48.0).atan();
        assert!((p.angle - expect).abs() <= 1e-12);
        assert!(p.md_excluded);

        let p = phase_obstruction(&benchmark_plant(0.6), third).unwrap();
        assert!(p.angle >= -third && !p.md_excluded);

        let one = RationalTransferFunction::constant(Domain::Discrete, 1.0);
        let p = phase_obstruction(&one, 1.0).unwrap();
        assert_eq!(p.angle, 0.0);
        assert!(!p.md_excluded);
        assert!(phase_obstruction(&one, 0.0).is_err());
        assert!(phase_obstruction(&one, PI).is_err());
    }

    #[test]
    fn phase_rule_only_fires_at_two_pi_over_three() {
        let p = phase_obstruction(&benchmark_plant(1.0), 2.0).unwrap();
        assert!(!p.md_excluded);
    }

    #[test]
    fn search_argument_checks() {
        let grid = FrequencyGrid::uniform_discrete(64).unwrap();
        let g = benchmark_plant(0.8);
        assert!(search_one_tap(&g, &grid, &[1], 0.0, ClassFilter::Md).is_err());
        assert!(search_one_tap(&g, &grid, &[1], 1.5, ClassFilter::Md).is_err());
        assert!(search_one_tap(&g, &grid, &[], 0.1, ClassFilter::Md).is_err());
        assert!(search_one_tap(&g, &grid, &[0], 0.1, ClassFilter::Md).is_err());
    }

    #[test]
    fn search_matches_hand_picked_multipliers() {
        let grid = FrequencyGrid::uniform_discrete(8192).unwrap();
        let g08 = benchmark_plant(0.8);
        let cert = search_one_tap(&g08, &grid, &[1], 0.01, ClassFilter::Md).unwrap();
        let reference =
            gamma_bound(&FirMultiplier::one_tap(1.0, 1, -0.85).unwrap(), &g08, &grid).unwrap();
        assert!(cert.gamma <= reference.gamma * (1.0 + 1e-9));
        assert_eq!(cert.multiplier_class, MultiplierClass::Md);

        let g1 = benchmark_plant(1.0);
        assert!(matches!(
            search_one_tap(&g1, &grid, &[1], 0.01, ClassFilter::Md),
            Err(Error::NotFound)
        ));
        let odd = search_one_tap(&g1, &grid, &[-1], 0.01, ClassFilter::MdOdd).unwrap();
        assert!(odd.gamma <= 31.332);
        assert_eq!(odd.multiplier_class, MultiplierClass::MdOddOnly);
    }

    #[test]
    fn search_ties_prefer_small_taps() {
        // For G = 0 the static multiplier beats every tapped one on this lattice.
        let zero = RationalTransferFunction::constant(Domain::Discrete, 0.0);
        let grid = FrequencyGrid::uniform_discrete(256).unwrap();
        let cert = search_one_tap(&zero, &grid, &[2, 1], 0.5, ClassFilter::MdOdd).unwrap();
        assert_eq!(cert.multiplier, FirMultiplier::static_gain(1.0).unwrap());
    }

    #[test]
    fn dc_examples() {
        let sat = Nonlinearity::Saturation;
        let p = dc_fixed_point(4.672, &sat, 2.7).unwrap();
        assert!((p.u2_bar - 2.7 / 5.672).abs() <= 1e-12);
        assert_eq!(p.y2_bar, p.u2_bar);
        let p = dc_fixed_point(4.672, &sat, 0.0).unwrap();
        assert_eq!(p.u2_bar, 0.0);
        let p = dc_fixed_point(4.672, &sat, 10.0).unwrap();
        assert!((p.u2_bar - 5.328).abs() <= 1e-12);
        assert_eq!(p.y2_bar, 1.0);
        assert!(dc_fixed_point(-1.5, &sat, 1.0).is_err());
    }

    #[test]
    fn dc_bracket_limit() {
        // A linear nonlinearity far beyond the bracket limit.
        let lin = Nonlinearity::table(vec![(-1e9, -1e9), (1e9, 1e9)]).unwrap();
        assert!(matches!(
            dc_fixed_point(0.5, &lin, 1e8),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn certificate_json_fields() {
        let grid = FrequencyGrid::uniform_discrete(128).unwrap();
        let cert = gamma_bound(
            &FirMultiplier::one_tap(1.0, 1, -0.66).unwrap(),
            &benchmark_plant(0.6),
            &grid,
        )
        .unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "class",
                "gamma",
                "grid_size",
                "k",
                "min_margin",
                "multiplier"
            ]
        );
        assert_eq!(v["class"], "Md");
        let back: GainCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn certificate_implies_suitability_for_one_plus_g(
                c in -1.0f64..1.0,
                lag in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)],
                g in 0.2f64..1.0,
            ) {
                let grid = FrequencyGrid::uniform_discrete(512).unwrap();
                let m = FirMultiplier::one_tap(1.0, lag, c).unwrap();
                let plant = benchmark_plant(g);
                if let Ok(cert) = gamma_bound(&m, &plant, &grid) {
                    prop_assert!(is_suitable(&m, &plant.plus_constant(1.0), &grid, 0.0).unwrap().passed);
                    let resp = PlantResponse::new(&plant, &grid).unwrap();
                    prop_assert!(resp.min_lhs(&m, 1.0, cert.gamma * (1.0 + 1e-9)).0 > 0.0);
                    if cert.gamma > 1.0 {
                        prop_assert!(resp.min_lhs(&m, 1.0, cert.gamma * (1.0 - 1e-3)).0 <= 0.0);
                    }
                }
            }

            #[test]
            fn dc_residual_and_bracket(g_dc in -0.9f64..10.0, r in -50.0f64..50.0) {
                let sat = Nonlinearity::Saturation;
                let p = dc_fixed_point(g_dc, &sat, r).unwrap();
                let f = |u: f64| u + g_dc * sat.eval(u);
                prop_assert!((f(p.u2_bar) - r).abs() <= 1e-12);
                prop_assert!(f(p.u2_bar - 1.0) < r && r < f(p.u2_bar + 1.0));
            }
        }
    }
}
