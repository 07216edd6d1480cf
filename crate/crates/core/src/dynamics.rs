//! Time-dependent Schrödinger evolution `i d psi/dt = H(t) psi`.
//!
//! The production path works in the two-dimensional plane `{|w>, |u>}` and
//! advances it with the exact exponential of the reduced Hamiltonian
//! sampled at each step midpoint. The global phase (the trace part) is
//! accumulated as a scalar and applied once at the end.
//!
//! [`evolve_full`] is an independent check: it builds the explicit N x N
//! matrix and integrates it with classical fourth-order Runge-Kutta. Its
//! norm is reported, never corrected.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::model::{self, ModelParams, Schedule, Sym2};

/// Largest lattice accepted by the dense integrator.
pub const DENSE_LIMIT: usize = 4096;

/// Upper bound on the automatic step count.
pub const MAX_AUTO_STEPS: usize = 10_000_000;

/// Lower bound on the automatic step count. Short, nearly sudden runs on
/// small lattices are otherwise under-resolved.
pub const MIN_AUTO_STEPS: usize = 10_000;

/// Steps per unit of `tau * (|E-| + |E+|)` used by the automatic policy.
pub const STEPS_PER_PHASE: f64 = 50.0;

pub const DEFAULT_SAMPLES: usize = 512;

/// State restricted to the hole and the uniform superposition of the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub a_w: Complex64,
    pub a_u: Complex64,
}

impl ReducedState {
    pub fn norm_sqr(&self) -> f64 {
        self.a_w.norm_sqr() + self.a_u.norm_sqr()
    }

    pub fn p_w(&self) -> f64 {
        self.a_w.norm_sqr()
    }
}

/// Uniform superposition over all N sites.
pub fn initial_state_uniform(params: &ModelParams) -> ReducedState {
    let n = params.n() as f64;
    ReducedState {
        a_w: Complex64::new(1.0 / n.sqrt(), 0.0),
        a_u: Complex64::new(((n - 1.0) / n).sqrt(), 0.0),
    }
}

/// 2x2 complex matrix acting on [`ReducedState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    pub m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub fn apply(&self, psi: &ReducedState) -> ReducedState {
        let m = &self.m;
        ReducedState {
            a_w: m[0][0] * psi.a_w + m[0][1] * psi.a_u,
            a_u: m[1][0] * psi.a_w + m[1][1] * psi.a_u,
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let m = &self.m;
        Unitary2 {
            m: [[m[0][0] * z, m[0][1] * z], [m[1][0] * z, m[1][1] * z]],
        }
    }

    /// `max |(U^dagger U - I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.m;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc: Complex64 = m.iter().map(|row| row[i].conj() * row[j]).sum();
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// `exp(-i K dt)` for the traceless part `K` of `h`.
fn traceless_propagator(h: &Sym2, dt: f64) -> Unitary2 {
    let p = 0.5 * (h.ww - h.uu);
    let b = h.wu;
    let omega = p.hypot(b); // half the gap
    let x = omega * dt;
    let (sin_x, cos_x) = x.sin_cos();
    // sin(x) / omega, with its series once Delta * dt = 2x drops below 1e-8.
    let f = if 2.0 * x < 1e-8 {
        dt * (1.0 - x * x / 6.0)
    } else {
        sin_x / omega
    };
    let i = Complex64::i();
    Unitary2 {
        m: [
            [cos_x - i * (f * p), -i * (f * b)],
            [-i * (f * b), cos_x + i * (f * p)],
        ],
    }
}

/// Exact one-step propagator `exp(-i H_eff dt)` of the reduced Hamiltonian.
pub fn step_propagator(params: &ModelParams, gamma: f64, chi: f64, dt: f64) -> Result<Unitary2> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(invalid(format!("dt must be positive, got {dt}")));
    }
    let h = model::reduced_hamiltonian(params, gamma, chi)?;
    let phase = Complex64::from_polar(1.0, -0.5 * h.trace() * dt);
    Ok(traceless_propagator(&h, dt).scale(phase))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub s: f64,
    /// Probability on the hole site.
    pub p_w: f64,
    /// Instantaneous gap of the schedule at `s`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub schedule: Schedule,
    pub n_steps: usize,
    pub samples: Vec<Sample>,
    pub final_p_w: f64,
    /// Largest `|norm^2 - 1|` seen at any step boundary.
    pub norm_drift: f64,
}

/// How many integration steps to take for a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum StepPolicy {
    /// `ceil(50 tau max_s(|E-| + |E+|))`, clamped to
    /// [`MIN_AUTO_STEPS`]..=[`MAX_AUTO_STEPS`].
    #[default]
    Auto,
    /// The automatic count multiplied by a factor (applied after the cap).
    Scaled(f64),
    Fixed(usize),
}

impl StepPolicy {
    pub fn steps_for(&self, schedule: &Schedule) -> usize {
        match *self {
            StepPolicy::Auto => default_steps(schedule),
            StepPolicy::Scaled(f) => ((default_steps(schedule) as f64) * f).ceil().max(1.0) as usize,
            StepPolicy::Fixed(n) => n.max(1),
        }
    }
}

/// Default step count: fifty steps per unit of accumulated phase at the
/// largest energy scale of the schedule.
pub fn default_steps(schedule: &Schedule) -> usize {
    let params = &schedule.params;
    let n = params.n() as f64;
    let grid = 256;
    let span = (0..=grid)
        .map(|k| {
            let (g, c) = schedule.kind.couplings(params, k as f64 / grid as f64);
            let (lo, hi) = model::eigenvalues_unchecked(n, g, c);
            lo.abs() + hi.abs()
        })
        .fold(0.0, f64::max);
    let steps = (STEPS_PER_PHASE * schedule.tau() * span).ceil();
    if steps.is_nan() || steps >= MAX_AUTO_STEPS as f64 {
        MAX_AUTO_STEPS
    } else {
        (steps as usize).max(MIN_AUTO_STEPS)
    }
}

fn sample_indices(n_steps: usize, n_samples: usize) -> Vec<usize> {
    let last = (n_samples - 1) as u128;
    (0..n_samples)
        .map(|k| ((k as u128 * n_steps as u128) / last) as usize)
        .collect()
}

fn check_run_shape(n_steps: usize, n_samples: usize) -> Result<()> {
    if n_steps < 1 {
        return Err(invalid("n_steps must be >= 1"));
    }
    if n_samples < 2 {
        return Err(invalid("n_samples must be >= 2"));
    }
    Ok(())
}

/// Evolve from the uniform state with `n_steps` midpoint steps.
pub fn evolve_reduced(schedule: &Schedule, n_steps: usize, n_samples: usize) -> Result<RunRecord> {
    let psi0 = initial_state_uniform(&schedule.params);
    evolve_reduced_from(psi0, schedule, n_steps, n_samples).map(|(record, _)| record)
}

/// As [`evolve_reduced`] but from an arbitrary reduced state; also returns
/// the final state including its global phase.
pub fn evolve_reduced_from(
    initial: ReducedState,
    schedule: &Schedule,
    n_steps: usize,
    n_samples: usize,
) -> Result<(RunRecord, ReducedState)> {
    check_run_shape(n_steps, n_samples)?;
    let params = &schedule.params;
    let kind = schedule.kind;
    let n = params.n() as f64;
    let dt = schedule.tau() / n_steps as f64;
    let inv_steps = 1.0 / n_steps as f64;

    let targets = sample_indices(n_steps, n_samples);
    let mut samples = Vec::with_capacity(n_samples);
    let mut next = 0;
    let record = |j: usize, psi: &ReducedState, samples: &mut Vec<Sample>, next: &mut usize| {
        while *next < targets.len() && targets[*next] == j {
            let s = j as f64 * inv_steps;
            let (g, c) = kind.couplings(params, s);
            samples.push(Sample {
                s,
                p_w: psi.p_w(),
                gap: model::gap_unchecked(n, g, c),
            });
            *next += 1;
        }
    };

    let mut psi = initial;
    let mut phase = 0.0;
    let mut drift = (psi.norm_sqr() - 1.0).abs();
    record(0, &psi, &mut samples, &mut next);
    for j in 0..n_steps {
        let s_mid = (j as f64 + 0.5) * inv_steps;
        let (g, c) = kind.couplings(params, s_mid);
        let h = model::reduced_matrix(n, g, c);
        phase += 0.5 * h.trace() * dt;
        psi = traceless_propagator(&h, dt).apply(&psi);
        drift = drift.max((psi.norm_sqr() - 1.0).abs());
        record(j + 1, &psi, &mut samples, &mut next);
    }

    let global = Complex64::from_polar(1.0, -phase);
    let psi = ReducedState {
        a_w: psi.a_w * global,
        a_u: psi.a_u * global,
    };
    let record = RunRecord {
        schedule: *schedule,
        n_steps,
        samples,
        final_p_w: psi.p_w(),
        norm_drift: drift,
    };
    Ok((record, psi))
}

/// Final hole probability only, without building a sample list.
pub fn final_p_w(schedule: &Schedule, n_steps: usize) -> Result<f64> {
    evolve_reduced(schedule, n_steps, 2).map(|r| r.final_p_w)
}

/// `|P(n_steps) - P(2 n_steps)|` for the final hole probability.
pub fn convergence_check(schedule: &Schedule, n_steps: usize) -> Result<f64> {
    if n_steps < 1 {
        return Err(invalid("n_steps must be >= 1"));
    }
    let coarse = final_p_w(schedule, n_steps)?;
    let fine = final_p_w(schedule, 2 * n_steps)?;
    Ok((coarse - fine).abs())
}

/// Amplitudes on all N sites.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    pub amps: Vec<Complex64>,
    pub w: usize,
}

impl FullState {
    pub fn uniform(n: usize, w: usize) -> Result<Self> {
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Self::new(vec![a; n], w)
    }

    pub fn new(amps: Vec<Complex64>, w: usize) -> Result<Self> {
        if amps.len() < 3 {
            return Err(invalid(format!("need at least 3 sites, got {}", amps.len())));
        }
        if w >= amps.len() {
            return Err(invalid(format!("hole index {w} out of range for n = {}", amps.len())));
        }
        Ok(Self { amps, w })
    }

    pub fn n(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn p_w(&self) -> f64 {
        self.amps[self.w].norm_sqr()
    }

    /// Probability inside `span{|w>, |u>}`.
    pub fn search_plane_weight(&self) -> f64 {
        let rest: Complex64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.w)
            .map(|(_, a)| *a)
            .sum();
        self.p_w() + rest.norm_sqr() / (self.n() - 1) as f64
    }

    /// Probability in the orthogonal complement of the search plane.
    pub fn sector_weight(&self) -> f64 {
        self.norm_sqr() - self.search_plane_weight()
    }
}

/// Explicit dense Hamiltonian `-chi W - gamma J`, with `W` the hole
/// projector and `J` the all-ones matrix minus the identity.
struct DenseHamiltonian {
    hole: Vec<f64>,
    hopping: Vec<f64>,
}

impl DenseHamiltonian {
    fn new(n: usize, w: usize) -> Self {
        let mut hole = vec![0.0; n * n];
        hole[w * n + w] = 1.0;
        let mut hopping = vec![1.0; n * n];
        for i in 0..n {
            hopping[i * n + i] = 0.0;
        }
        Self { hole, hopping }
    }

    fn assemble(&self, gamma: f64, chi: f64, out: &mut [f64]) {
        for ((o, &w), &j) in out.iter_mut().zip(&self.hole).zip(&self.hopping) {
            *o = -chi * w - gamma * j;
        }
    }
}

/// `(row . re, row . im)` in one pass over the row.
fn dot_pair(row: &[f64], re: &[f64], im: &[f64]) -> (f64, f64) {
    let mut ar = [0.0; 4];
    let mut ai = [0.0; 4];
    let chunks = row.len() / 4 * 4;
    for ((a, r), i) in row[..chunks]
        .chunks_exact(4)
        .zip(re[..chunks].chunks_exact(4))
        .zip(im[..chunks].chunks_exact(4))
    {
        for l in 0..4 {
            ar[l] += a[l] * r[l];
            ai[l] += a[l] * i[l];
        }
    }
    let mut tr = 0.0;
    let mut ti = 0.0;
    for k in chunks..row.len() {
        tr += row[k] * re[k];
        ti += row[k] * im[k];
    }
    ((ar[0] + ar[1]) + (ar[2] + ar[3]) + tr, (ai[0] + ai[1]) + (ai[2] + ai[3]) + ti)
}

/// Split real/imaginary storage for the dense integrator.
#[derive(Clone)]
struct Split {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Split {
    fn zeros(n: usize) -> Self {
        Self { re: vec![0.0; n], im: vec![0.0; n] }
    }

    fn from_state(state: &FullState) -> Self {
        Self {
            re: state.amps.iter().map(|a| a.re).collect(),
            im: state.amps.iter().map(|a| a.im).collect(),
        }
    }

    fn to_state(&self, w: usize) -> FullState {
        FullState {
            amps: self.re.iter().zip(&self.im).map(|(&r, &i)| Complex64::new(r, i)).collect(),
            w,
        }
    }

    fn norm_sqr(&self) -> f64 {
        self.re.iter().chain(&self.im).map(|x| x * x).sum()
    }

    /// `out = base + h * k`
    fn axpy_into(out: &mut Split, base: &Split, h: f64, k: &Split) {
        for ((o, b), d) in out.re.iter_mut().zip(&base.re).zip(&k.re) {
            *o = b + h * d;
        }
        for ((o, b), d) in out.im.iter_mut().zip(&base.im).zip(&k.im) {
            *o = b + h * d;
        }
    }
}

/// `k = -i (H - shift) x`; returns `<x|H|x>` as a by-product.
fn rhs(h: &[f64], n: usize, shift: f64, x: &Split, k: &mut Split) -> f64 {
    let mut energy = 0.0;
    for i in 0..n {
        let row = &h[i * n..(i + 1) * n];
        let (yr, yi) = dot_pair(row, &x.re, &x.im);
        energy += x.re[i] * yr + x.im[i] * yi;
        let yr = yr - shift * x.re[i];
        let yi = yi - shift * x.im[i];
        k.re[i] = yi;
        k.im[i] = -yr;
    }
    energy
}

/// Dense full-space evolution from the uniform state.
pub fn evolve_full(schedule: &Schedule, w: usize, n_steps: usize, n_samples: usize) -> Result<RunRecord> {
    let initial = FullState::uniform(schedule.params.n(), w)?;
    evolve_full_from(&initial, schedule, n_steps, n_samples, |_, _| {}).map(|(record, _)| record)
}

/// Dense RK4 evolution from an arbitrary state. `observe` is called at
/// every sample point with the current `s` and state.
///
/// Each step integrates `(H - e) psi` with `e` the energy of the state at
/// the start of the step. The shift only changes the global phase, which
/// keeps the oscillation frequencies seen by RK4 small.
pub fn evolve_full_from<F>(
    initial: &FullState,
    schedule: &Schedule,
    n_steps: usize,
    n_samples: usize,
    mut observe: F,
) -> Result<(RunRecord, FullState)>
where
    F: FnMut(f64, &FullState),
{
    check_run_shape(n_steps, n_samples)?;
    let n = initial.n();
    if n > DENSE_LIMIT {
        return Err(Error::SizeExceeded { n, limit: DENSE_LIMIT });
    }
    if n != schedule.params.n() {
        return Err(invalid(format!(
            "state has {n} sites but the schedule is for n = {}",
            schedule.params.n()
        )));
    }
    let w = initial.w;
    let params = &schedule.params;
    let kind = schedule.kind;
    let nf = n as f64;
    let dt = schedule.tau() / n_steps as f64;
    let inv_steps = 1.0 / n_steps as f64;

    let dense = DenseHamiltonian::new(n, w);
    let mut h_start = vec![0.0; n * n];
    let mut h_mid = vec![0.0; n * n];
    let mut h_end = vec![0.0; n * n];

    let mut psi = Split::from_state(initial);
    let mut tmp = Split::zeros(n);
    let mut k1 = Split::zeros(n);
    let mut k2 = Split::zeros(n);
    let mut k3 = Split::zeros(n);
    let mut k4 = Split::zeros(n);

    let targets = sample_indices(n_steps, n_samples);
    let mut next = 0;
    let mut samples = Vec::with_capacity(n_samples);
    let mut drift = (psi.norm_sqr() - 1.0).abs();

    let mut take_samples = |j: usize, psi: &Split, next: &mut usize, samples: &mut Vec<Sample>| {
        if *next < targets.len() && targets[*next] == j {
            let state = psi.to_state(w);
            let s = j as f64 * inv_steps;
            let (g, c) = kind.couplings(params, s);
            while *next < targets.len() && targets[*next] == j {
                samples.push(Sample {
                    s,
                    p_w: state.p_w(),
                    gap: model::gap_unchecked(nf, g, c),
                });
                observe(s, &state);
                *next += 1;
            }
        }
    };

    take_samples(0, &psi, &mut next, &mut samples);
    let (g, c) = kind.couplings(params, 0.0);
    dense.assemble(g, c, &mut h_end);
    for j in 0..n_steps {
        std::mem::swap(&mut h_start, &mut h_end);
        let s0 = j as f64 * inv_steps;
        let (g, c) = kind.couplings(params, s0 + 0.5 * inv_steps);
        dense.assemble(g, c, &mut h_mid);
        let (g, c) = kind.couplings(params, (j + 1) as f64 * inv_steps);
        dense.assemble(g, c, &mut h_end);

        // The first stage with zero shift gives the energy for free.
        let energy = rhs(&h_start, n, 0.0, &psi, &mut k1) / psi.norm_sqr();
        for (k, x) in k1.re.iter_mut().zip(&psi.im) {
            *k -= energy * x;
        }
        for (k, x) in k1.im.iter_mut().zip(&psi.re) {
            *k += energy * x;
        }
        Split::axpy_into(&mut tmp, &psi, 0.5 * dt, &k1);
        rhs(&h_mid, n, energy, &tmp, &mut k2);
        Split::axpy_into(&mut tmp, &psi, 0.5 * dt, &k2);
        rhs(&h_mid, n, energy, &tmp, &mut k3);
        Split::axpy_into(&mut tmp, &psi, dt, &k3);
        rhs(&h_end, n, energy, &tmp, &mut k4);

        let c = dt / 6.0;
        for i in 0..n {
            psi.re[i] += c * (k1.re[i] + 2.0 * (k2.re[i] + k3.re[i]) + k4.re[i]);
            psi.im[i] += c * (k1.im[i] + 2.0 * (k2.im[i] + k3.im[i]) + k4.im[i]);
        }
        drift = drift.max((psi.norm_sqr() - 1.0).abs());
        take_samples(j + 1, &psi, &mut next, &mut samples);
    }

    let state = psi.to_state(w);
    let record = RunRecord {
        schedule: *schedule,
        n_steps,
        samples,
        final_p_w: state.p_w(),
        norm_drift: drift,
    };
    Ok((record, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ScheduleKind;
    use std::f64::consts::PI;

    fn params(n: usize, gamma0: f64, r: f64) -> ModelParams {
        ModelParams::new(n, gamma0, r).unwrap()
    }

    #[test]
    fn uniform_initial_state() {
        let psi = initial_state_uniform(&params(4, 1.0, 1.0));
        assert_eq!(psi.a_w.re, 0.5);
        assert!((psi.a_u.re - 3f64.sqrt() / 2.0).abs() < 1e-16);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-15);
        let psi = initial_state_uniform(&params(1_000_000, 1.0, 1.0));
        assert!((psi.a_w.re - 1e-3).abs() < 1e-18);
        assert!(ModelParams::new(2, 1.0, 1.0).is_err());
    }

    #[test]
    fn diagonal_step_is_a_phase() {
        let u = step_propagator(&params(4, 1.0, 1.0), 0.0, 1.0, PI).unwrap();
        let psi = u.apply(&ReducedState {
            a_w: Complex64::new(1.0, 0.0),
            a_u: Complex64::new(0.0, 0.0),
        });
        assert!((psi.a_w - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((psi.p_w() - 1.0).abs() < 1e-15);
        assert_eq!(psi.a_u.norm(), 0.0);
    }

    #[test]
    fn zero_hamiltonian_step_is_identity() {
        let u = step_propagator(&params(5, 1.0, 1.0), 0.0, 0.0, 0.3).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(u.m, [[one, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), one]]);
        assert!(step_propagator(&params(5, 1.0, 1.0), 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn propagator_matches_eigendecomposition() {
        let m = params(4, 1.0, 1.0);
        let u = step_propagator(&m, 1.0, 4.0, 0.1).unwrap();
        // Oracle: U = sum_k exp(-i E_k dt) v_k v_k^T from the 2x2 eigenpairs.
        let h = model::reduced_hamiltonian(&m, 1.0, 4.0).unwrap();
        let (lo, hi) = h.eigenvalues();
        let eigvec = |e: f64| {
            let v = [h.wu, e - h.ww];
            let norm = v[0].hypot(v[1]);
            [v[0] / norm, v[1] / norm]
        };
        let mut expect = [[Complex64::new(0.0, 0.0); 2]; 2];
        for e in [lo, hi] {
            let v = eigvec(e);
            let ph = Complex64::from_polar(1.0, -e * 0.1);
            for i in 0..2 {
                for j in 0..2 {
                    expect[i][j] += ph * v[i] * v[j];
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((u.m[i][j] - expect[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn propagator_is_unitary_across_scales() {
        let m = params(1_000_000, 0.5, 2.0);
        for &(g, c, dt) in &[(0.5, 0.0, 1e-7), (0.5, 1e6, 3.0), (1e-12, 5e5, 1e-3), (0.5, 5e5, 1e-20)] {
            let u = step_propagator(&m, g, c, dt).unwrap();
            assert!(u.unitarity_defect() <= 1e-14, "{g} {c} {dt}: {}", u.unitarity_defect());
        }
    }

    #[test]
    fn sudden_limit_keeps_initial_weight() {
        let m = params(1000, 0.5, 2.0);
        let sched = Schedule::new(ScheduleKind::ConstantGamma, m, 1e-9).unwrap();
        let run = evolve_reduced(&sched, 10, 2).unwrap();
        assert!((run.final_p_w - 1e-3).abs() < 1e-9);
    }

    #[test]
    fn record_layout() {
        let m = params(64, 0.5, 2.0);
        let sched = Schedule::new(ScheduleKind::ConstantChi, m, 2.0).unwrap();
        let run = evolve_reduced(&sched, 1000, 7).unwrap();
        assert_eq!(run.samples.len(), 7);
        assert_eq!(run.samples[0].s, 0.0);
        assert_eq!(run.samples[6].s, 1.0);
        assert!(run.samples.windows(2).all(|w| w[0].s <= w[1].s));
        assert!(run.norm_drift <= 1e-9);
        assert_eq!(run.samples[6].p_w, run.final_p_w);
        assert!(evolve_reduced(&sched, 0, 7).is_err());
        assert!(evolve_reduced(&sched, 10, 1).is_err());
        // More samples than steps repeats step boundaries.
        let run = evolve_reduced(&sched, 2, 5).unwrap();
        assert_eq!(run.samples.len(), 5);
        assert_eq!(run.samples[4].s, 1.0);
    }

    #[test]
    fn diagonal_schedule_converges_trivially() {
        // Gamma = 0 throughout is not reachable by a schedule, but a
        // constant-chi run with a vanishing hopping scale is diagonal to
        // rounding.
        let m = params(16, 1e-300, 1e300);
        let sched = Schedule::new(ScheduleKind::ConstantChi, m, 5.0).unwrap();
        assert!(convergence_check(&sched, 3).unwrap() < 1e-15);
    }

    #[test]
    fn dense_guard_and_index_checks() {
        let m = params(DENSE_LIMIT + 1, 0.5, 2.0);
        let sched = Schedule::new(ScheduleKind::ConstantGamma, m, 1.0).unwrap();
        assert!(matches!(
            evolve_full(&sched, 0, 10, 2),
            Err(Error::SizeExceeded { .. })
        ));
        let m = params(8, 0.5, 2.0);
        let sched = Schedule::new(ScheduleKind::ConstantGamma, m, 1.0).unwrap();
        assert!(evolve_full(&sched, 8, 10, 2).is_err());
    }

    #[test]
    fn uniform_state_is_stationary_without_hole() {
        // Constant-chi with a negligible depth: H is pure hopping.
        let m = ModelParams::from_chi0(8, 0.5, 1e-300).unwrap();
        let sched = Schedule::new(ScheduleKind::ConstantChi, m, 3.0).unwrap();
        let run = evolve_full(&sched, 3, 400, 9).unwrap();
        for s in &run.samples {
            assert!((s.p_w - 0.125).abs() < 1e-12, "{:?}", s);
        }
    }

    #[test]
    fn default_steps_respects_cap() {
        let m = params(1_000_000, 0.5, 2.0);
        let sched = Schedule::new(ScheduleKind::ConstantGamma, m, 100.0).unwrap();
        assert_eq!(default_steps(&sched), MAX_AUTO_STEPS);
        let m = params(16, 0.5, 2.0);
        let sched = Schedule::new(ScheduleKind::ConstantGamma, m, 10.0).unwrap();
        // max(|E-| + |E+|) is reached at s = 1: (N - 2) gamma0 + chi0 = 7 + 16.
        let steps = default_steps(&sched);
        assert!((11500..=11501).contains(&steps), "{steps}");
        assert_eq!(default_steps(&sched.with_tau(1.0).unwrap()), MIN_AUTO_STEPS);
    }
}
