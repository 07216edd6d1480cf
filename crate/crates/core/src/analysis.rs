//! Diagnostics of the delocalized-to-localized crossover of the ground
//! state at `N gamma = chi`: where it happens, how sharp it is, and how the
//! minimum gap scales with N.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::model::{self, ModelParams, ScheduleKind};
use crate::numerics;

/// Reduced time where `N gamma(s) = chi(s)`: `1/r` for constant gamma,
/// `1 - r` for constant chi.
pub fn critical_point(params: &ModelParams, kind: ScheduleKind) -> Result<f64> {
    let r = params.r();
    match kind {
        ScheduleKind::ConstantGamma if r >= 1.0 => Ok(1.0 / r),
        ScheduleKind::ConstantChi if r <= 1.0 => Ok(1.0 - r),
        _ => Err(Error::NoCrossing { r }),
    }
}

/// `(s, |<w|E-(s)>|^2)` on `n_points` equally spaced points of `[0, 1]`.
pub fn localization_profile(params: &ModelParams, kind: ScheduleKind, n_points: usize) -> Result<Vec<(f64, f64)>> {
    if n_points < 3 {
        return Err(invalid(format!("n_points must be >= 3, got {n_points}")));
    }
    (0..n_points)
        .map(|k| {
            let s = k as f64 / (n_points - 1) as f64;
            let (g, c) = kind.couplings(params, s);
            model::ground_hole_probability(params, g, c).map(|p| (s, p))
        })
        .collect()
}

/// Interval of `s` over which the ground-state hole weight rises from 0.1
/// to 0.9.
pub fn crossover_window(params: &ModelParams, kind: ScheduleKind) -> Result<(f64, f64)> {
    let weight = |s: f64| {
        let (g, c) = kind.couplings(params, s);
        model::ground_hole_probability(params, g, c).expect("schedule couplings are valid")
    };
    if weight(0.0) >= 0.1 || weight(1.0) < 0.9 {
        return Err(Error::NoCrossing { r: params.r() });
    }
    let lo = numerics::bisect_level(weight, 0.1, 0.0, 1.0, 1e-14);
    let hi = numerics::bisect_level(weight, 0.9, 0.0, 1.0, 1e-14);
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Energies grow with N: `chi0 = r N gamma0`.
    Standard,
    /// N-independent energies: hopping `gamma0 / N`, depth `chi0 = r gamma0`.
    Bounded,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Bounded => "bounded",
        }
    }

    /// `(gamma, chi)` at reduced time `s` for lattice size `n`.
    pub fn couplings(&self, gamma0: f64, r: f64, kind: ScheduleKind, n: usize, s: f64) -> (f64, f64) {
        let s = s.clamp(0.0, 1.0);
        let nf = n as f64;
        let (scale, chi0) = match self {
            Variant::Standard => (gamma0, r * nf * gamma0),
            Variant::Bounded => (gamma0 / nf, r * gamma0),
        };
        match kind {
            ScheduleKind::ConstantGamma => (scale, chi0 * s),
            ScheduleKind::ConstantChi => (scale * (1.0 - s), chi0),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Variant::Standard),
            "bounded" => Ok(Variant::Bounded),
            other => Err(invalid(format!("unknown variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapScalingReport {
    pub n_values: Vec<usize>,
    /// Gap per N: the minimum over s, or the value at a fixed s.
    pub min_gaps: Vec<f64>,
    /// Where each gap was taken.
    pub s_values: Vec<f64>,
    /// Least-squares slope of `ln gap` against `ln N`.
    pub fitted_exponent: f64,
    pub variant: Variant,
}

const GAP_GRID: usize = 1024;

fn check_family(gamma0: f64, r: f64, n_values: &[usize]) -> Result<()> {
    ModelParams::new(3, gamma0, r)?;
    if n_values.len() < 3 {
        return Err(invalid(format!("need at least 3 sizes, got {}", n_values.len())));
    }
    if n_values.iter().any(|&n| n < 3) {
        return Err(invalid("every size must be >= 3"));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("sizes must be strictly increasing"));
    }
    Ok(())
}

/// Minimum over `s` of the gap for one size.
pub fn min_gap(gamma0: f64, r: f64, kind: ScheduleKind, n: usize, variant: Variant) -> numerics::Extremum {
    let nf = n as f64;
    numerics::minimize_unit_interval(
        |s| {
            let (g, c) = variant.couplings(gamma0, r, kind, n, s);
            model::gap_unchecked(nf, g, c)
        },
        GAP_GRID,
    )
}

/// Minimum gap over the schedule for each N, with the log-log exponent.
pub fn gap_scaling(
    gamma0: f64,
    r: f64,
    kind: ScheduleKind,
    n_values: &[usize],
    variant: Variant,
) -> Result<GapScalingReport> {
    check_family(gamma0, r, n_values)?;
    let dips: Vec<_> = n_values.iter().map(|&n| min_gap(gamma0, r, kind, n, variant)).collect();
    Ok(report(n_values, dips.iter().map(|d| (d.x, d.value)).collect(), variant))
}

/// Gap at a fixed reduced time `s` for each N, e.g. away from the critical point.
pub fn gap_scaling_at(
    gamma0: f64,
    r: f64,
    kind: ScheduleKind,
    n_values: &[usize],
    variant: Variant,
    s: f64,
) -> Result<GapScalingReport> {
    check_family(gamma0, r, n_values)?;
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("s = {s} is outside [0, 1]")));
    }
    let points = n_values
        .iter()
        .map(|&n| {
            let (g, c) = variant.couplings(gamma0, r, kind, n, s);
            (s, model::gap_unchecked(n as f64, g, c))
        })
        .collect();
    Ok(report(n_values, points, variant))
}

fn report(n_values: &[usize], points: Vec<(f64, f64)>, variant: Variant) -> GapScalingReport {
    let xs: Vec<f64> = n_values.iter().map(|&n| n as f64).collect();
    let gaps: Vec<f64> = points.iter().map(|p| p.1).collect();
    GapScalingReport {
        n_values: n_values.to_vec(),
        fitted_exponent: numerics::log_log_slope(&xs, &gaps),
        min_gaps: gaps,
        s_values: points.iter().map(|p| p.0).collect(),
        variant,
    }
}
