//! Annealing experiments: success probability as a function of the
//! annealing time, the minimum time reaching a target probability, and the
//! adiabatic factor `alpha = max_s |<E-|dH/ds|E+>| / min_s Delta^2`.

use crate::dynamics::{self, StepPolicy};
use crate::error::{invalid, Error, Result};
use crate::model::{self, ModelParams, Schedule, ScheduleKind};
use crate::numerics;

/// Hole probability at the end of an anneal.
pub fn success_probability(schedule: &Schedule, steps: StepPolicy) -> Result<f64> {
    dynamics::final_p_w(schedule, steps.steps_for(schedule))
}

/// Final hole probability of a perfectly adiabatic anneal from the uniform
/// state: eigenstate populations at `s = 0` carried over to `s = 1`.
pub fn adiabatic_limit_probability(params: &ModelParams, kind: ScheduleKind) -> f64 {
    let (g0, c0) = kind.couplings(params, 0.0);
    let (g1, c1) = kind.couplings(params, 1.0);
    let ground_start = model::uniform_ground_overlap(params, g0, c0).expect("schedule couplings are valid");
    let hole_end = model::ground_hole_probability(params, g1, c1).expect("schedule couplings are valid");
    ground_start * hole_end + (1.0 - ground_start) * (1.0 - hole_end)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionConfig {
    pub p_target: f64,
    /// Tolerance on `|P - p_target|` at both bracket ends.
    pub accuracy: f64,
    /// Lower bracket; `None` starts from `tau = 0` where `P = 1/N`.
    pub tau_lo: Option<f64>,
    /// Upper bracket; `None` doubles from `tau = 1`.
    pub tau_hi: Option<f64>,
    pub max_iters: usize,
    pub steps: StepPolicy,
}

impl Default for BisectionConfig {
    fn default() -> Self {
        Self {
            p_target: 0.33,
            accuracy: 1e-4,
            tau_lo: None,
            tau_hi: None,
            max_iters: 200,
            steps: StepPolicy::Auto,
        }
    }
}

impl BisectionConfig {
    pub fn with_target(p_target: f64) -> Self {
        Self { p_target, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_target > 0.0 && self.p_target < 1.0) {
            return Err(invalid(format!("p_target must be in (0, 1), got {}", self.p_target)));
        }
        if !(self.accuracy.is_finite() && self.accuracy > 0.0) {
            return Err(invalid(format!("accuracy must be positive, got {}", self.accuracy)));
        }
        if self.max_iters == 0 {
            return Err(invalid("max_iters must be >= 1"));
        }
        for t in [self.tau_lo, self.tau_hi].into_iter().flatten() {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid(format!("bracket times must be positive, got {t}")));
            }
        }
        if let (Some(lo), Some(hi)) = (self.tau_lo, self.tau_hi) {
            if lo >= hi {
                return Err(invalid(format!("tau_lo = {lo} must be below tau_hi = {hi}")));
            }
        }
        Ok(())
    }
}

/// Doublings allowed while searching for an upper bracket.
pub const MAX_DOUBLINGS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauMin {
    /// Upper end of the final bracket: the shortest time verified to exceed the target.
    pub tau_min: f64,
    pub tau_lo: f64,
    pub tau_hi: f64,
    pub p_lo: f64,
    pub p_hi: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Minimum annealing time reaching `config.p_target`, by bisection.
///
/// Stops once both bracket ends are within `accuracy` of the target, or
/// the bracket is narrower than `accuracy * tau_hi`.
pub fn tau_min(params: &ModelParams, kind: ScheduleKind, config: &BisectionConfig) -> Result<TauMin> {
    config.validate()?;
    let target = config.p_target;
    let limit = adiabatic_limit_probability(params, kind);
    if limit <= target {
        return Err(Error::UnreachableTarget { target, limit });
    }

    let mut evaluations = 0;
    let mut p_of = |tau: f64| -> Result<f64> {
        evaluations += 1;
        let schedule = Schedule::new(kind, *params, tau)?;
        success_probability(&schedule, config.steps)
    };

    let (mut hi, mut p_hi) = match config.tau_hi {
        Some(hi) => {
            let p = p_of(hi)?;
            if p <= target {
                return Err(Error::BracketFailure { target, tau_hi: hi, best: p });
            }
            (hi, p)
        }
        None => {
            let mut hi = 1.0;
            let mut p = p_of(hi)?;
            let mut best = p;
            let mut doublings = 0;
            while p <= target {
                if doublings == MAX_DOUBLINGS {
                    return Err(Error::BracketFailure { target, tau_hi: hi, best });
                }
                hi *= 2.0;
                p = p_of(hi)?;
                best = best.max(p);
                doublings += 1;
            }
            (hi, p)
        }
    };

    let (mut lo, mut p_lo) = match config.tau_lo {
        Some(lo) => {
            let p = p_of(lo)?;
            if p > target {
                return Err(invalid(format!("P({lo}) = {p} already exceeds the target")));
            }
            (lo, p)
        }
        // Sudden limit: the state has not moved.
        None => (0.0, 1.0 / params.n() as f64),
    };

    let mut iterations = 0;
    while iterations < config.max_iters {
        let both_close = (p_hi - target).abs() <= config.accuracy && (p_lo - target).abs() <= config.accuracy;
        if both_close || hi - lo < config.accuracy * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let p = p_of(mid)?;
        if p > target {
            hi = mid;
            p_hi = p;
        } else {
            lo = mid;
            p_lo = p;
        }
        iterations += 1;
    }

    Ok(TauMin {
        tau_min: hi,
        tau_lo: lo,
        tau_hi: hi,
        p_lo,
        p_hi,
        iterations,
        evaluations,
    })
}

/// `<E-(s)| dH/ds |E+(s)>` on the reduced model. The sign follows the
/// convention that both components of `|E->` are nonnegative.
pub fn driving_matrix_element(params: &ModelParams, kind: ScheduleKind, s: f64) -> f64 {
    let n = params.n() as f64;
    let (g, c) = kind.couplings(params, s);
    let [x, y] = model::ground_vector(n, g, c);
    let (dg, dc) = kind.coupling_rates(params);
    let dh = model::reduced_matrix(n, dg, dc);
    dh.bilinear([x, y], [-y, x])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticFactor {
    /// `max_s |<E-|dH/ds|E+>|`
    pub numerator: f64,
    /// `min_s Delta^2`
    pub min_gap_sq: f64,
    pub alpha: f64,
    pub s_at_max: f64,
    pub s_at_min_gap: f64,
}

pub fn adiabatic_factor_numeric(schedule: &Schedule, n_grid: usize) -> Result<AdiabaticFactor> {
    if n_grid < 64 {
        return Err(invalid(format!("n_grid must be >= 64, got {n_grid}")));
    }
    let params = schedule.params;
    let kind = schedule.kind;
    let n = params.n() as f64;
    let peak = numerics::maximize_unit_interval(|s| driving_matrix_element(&params, kind, s).abs(), n_grid);
    let dip = numerics::minimize_unit_interval(
        |s| {
            let (g, c) = kind.couplings(&params, s);
            model::gap_unchecked(n, g, c).powi(2)
        },
        n_grid,
    );
    Ok(AdiabaticFactor {
        numerator: peak.value,
        min_gap_sq: dip.value,
        alpha: peak.value / dip.value,
        s_at_max: peak.x,
        s_at_min_gap: dip.x,
    })
}

fn check_regime(params: &ModelParams, kind: ScheduleKind) -> Result<()> {
    let r = params.r();
    match kind {
        ScheduleKind::ConstantGamma if r <= 1.0 => Err(Error::RegimeViolation { expected: "r > 1", r }),
        ScheduleKind::ConstantChi if r >= 1.0 => Err(Error::RegimeViolation { expected: "r < 1", r }),
        _ => Ok(()),
    }
}

/// Large-N adiabatic factor: `r / (8 gamma0)` for constant gamma,
/// `1 / (8 gamma0 r^2)` for constant chi.
pub fn adiabatic_factor_closed_form(params: &ModelParams, kind: ScheduleKind) -> Result<f64> {
    check_regime(params, kind)?;
    let (g0, r) = (params.gamma0(), params.r());
    Ok(match kind {
        ScheduleKind::ConstantGamma => r / (8.0 * g0),
        ScheduleKind::ConstantChi => 1.0 / (8.0 * g0 * r * r),
    })
}

/// Reduced time of the gap minimum, where `chi = (N - 2) gamma`:
/// `(N - 2) / (r N)` for constant gamma and `1 - r (N - 2) / N` for
/// constant chi. Both tend to the critical point as N grows.
pub fn peak_location(params: &ModelParams, kind: ScheduleKind) -> Result<f64> {
    check_regime(params, kind)?;
    let n = params.n() as f64;
    let r = params.r();
    Ok(match kind {
        ScheduleKind::ConstantGamma => (n - 2.0) / (r * n),
        ScheduleKind::ConstantChi => 1.0 - r * (n - 2.0) / n,
    })
}
