#![allow(dead_code)]

use hole_anneal::dynamics;
use hole_anneal::Schedule;
use nalgebra::DMatrix;

/// The explicit N x N Hamiltonian, hole at site `w`.
pub fn dense_hamiltonian(n: usize, gamma: f64, chi: f64, w: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            if i == w {
                -chi
            } else {
                0.0
            }
        } else {
            -gamma
        }
    })
}

/// Sorted eigenvalues of the dense Hamiltonian.
pub fn dense_spectrum(n: usize, gamma: f64, chi: f64) -> Vec<f64> {
    let mut ev: Vec<f64> = dense_hamiltonian(n, gamma, chi, 0).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

#[derive(Debug, Clone, Copy)]
pub struct SpectrumCheck {
    /// Worst error of E- and E+ relative to the spectral radius.
    pub eig_err: f64,
    /// Error of the gap relative to the gap itself.
    pub gap_err: f64,
    /// Largest distance of a leftover eigenvalue from +gamma.
    pub degenerate_dev: f64,
    pub degenerate_count: usize,
    /// Dense eigenvalues within 1e-9 of -gamma.
    pub at_minus_gamma: usize,
}

/// Compare the closed-form spectrum against dense diagonalization. The two
/// dense eigenvalues closest to the closed-form pair are removed first; the
/// rest span the sector orthogonal to the hole and the uniform state, where
/// the hopping term acts as `-gamma (J - 1) = +gamma`.
pub fn check_spectrum(n: usize, gamma: f64, chi: f64) -> SpectrumCheck {
    let params = hole_anneal::ModelParams::new(n, 1.0, 1.0).unwrap();
    let (lo, hi) = hole_anneal::model::eigenvalues(&params, gamma, chi).unwrap();
    let gap = hole_anneal::model::gap(&params, gamma, chi).unwrap();
    let mut dense = dense_spectrum(n, gamma, chi);
    let at_minus_gamma = dense.iter().filter(|e| (*e + gamma).abs() <= 1e-9).count();
    let scale = dense.iter().fold(0.0f64, |m, e| m.max(e.abs()));

    let mut take = |target: f64| {
        let (k, _) = dense
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
            .unwrap();
        dense.remove(k)
    };
    let d_lo = take(lo);
    let d_hi = take(hi);
    let eig_err = ((d_lo - lo).abs()).max((d_hi - hi).abs()) / scale;
    let gap_err = ((d_hi - d_lo) - gap).abs() / gap;
    let degenerate_dev = dense.iter().fold(0.0f64, |m, e| m.max((e - gamma).abs()));
    SpectrumCheck { eig_err, gap_err, degenerate_dev, degenerate_count: dense.len(), at_minus_gamma }
}

#[derive(Debug, Clone, Copy)]
pub struct DenseResult {
    pub p_w: f64,
    pub steps: usize,
    /// Richardson estimate of the remaining RK4 error.
    pub error_estimate: f64,
}

/// Dense final hole probability, doubling the step count from `start`
/// until the fourth-order error estimate drops below `tol`.
pub fn dense_converged(schedule: &Schedule, start: usize, tol: f64, max_steps: usize) -> DenseResult {
    let mut steps = start.max(16);
    let mut coarse = dynamics::evolve_full(schedule, 0, steps, 2).unwrap().final_p_w;
    loop {
        let fine = dynamics::evolve_full(schedule, 0, 2 * steps, 2).unwrap().final_p_w;
        let est = (fine - coarse).abs() / 15.0;
        steps *= 2;
        if est <= tol || steps >= max_steps {
            return DenseResult { p_w: fine, steps, error_estimate: est };
        }
        coarse = fine;
    }
}
