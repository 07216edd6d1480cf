mod common;

use hole_anneal::dynamics::{self, FullState};
use hole_anneal::{ModelParams, Schedule, ScheduleKind};
use num_complex::Complex64;
use proptest::prelude::*;

use ScheduleKind::{ConstantChi, ConstantGamma};

fn schedule(kind: ScheduleKind, n: usize, r: f64, tau: f64) -> Schedule {
    Schedule::new(kind, ModelParams::new(n, 0.5, r).unwrap(), tau).unwrap()
}

#[test]
fn reduced_matches_dense_on_small_lattices() {
    for (kind, r) in [(ConstantGamma, 2.0), (ConstantChi, 0.5), (ConstantGamma, 0.7)] {
        for n in [3usize, 8, 33] {
            let s = schedule(kind, n, r, 3.0);
            let reduced = dynamics::final_p_w(&s, dynamics::default_steps(&s)).unwrap();
            let dense = common::dense_converged(&s, 512, 1e-10, 1 << 20);
            assert!((reduced - dense.p_w).abs() <= 1e-8, "{kind} n={n}: {reduced} vs {dense:?}");
        }
    }
}

#[test]
fn hole_position_does_not_matter() {
    let s = schedule(ConstantGamma, 12, 2.0, 2.0);
    let a = dynamics::evolve_full(&s, 0, 4000, 9).unwrap();
    let b = dynamics::evolve_full(&s, 7, 4000, 9).unwrap();
    for (x, y) in a.samples.iter().zip(&b.samples) {
        assert!((x.p_w - y.p_w).abs() <= 1e-13);
    }
}

#[test]
fn degenerate_sector_is_conserved() {
    let n = 24;
    // Half the weight in the plane, half on a vector orthogonal to it.
    let mut amps = vec![Complex64::new(0.5f64.sqrt() / (n as f64).sqrt(), 0.0); n];
    let third = (0.5f64 / 6.0).sqrt();
    amps[3] += 2.0 * third;
    amps[4] -= third;
    amps[5] -= third;
    let initial = FullState::new(amps, 0).unwrap();
    assert!((initial.sector_weight() - 0.5).abs() < 1e-14);
    assert!((initial.search_plane_weight() - 0.5).abs() < 1e-14);
    for kind in [ConstantGamma, ConstantChi] {
        let s = schedule(kind, n, if kind == ConstantGamma { 2.0 } else { 0.5 }, 5.0);
        let mut worst = 0.0f64;
        dynamics::evolve_full_from(&initial, &s, dynamics::default_steps(&s), 101, |_, st| {
            worst = worst.max((st.sector_weight() - 0.5).abs());
        })
        .unwrap();
        assert!(worst <= 1e-9, "{kind}: {worst}");
    }
}

#[test]
fn midpoint_rule_is_second_order() {
    let s = schedule(ConstantGamma, 1000, 2.0, 5.0);
    let base = 20_000;
    let c1 = dynamics::convergence_check(&s, base).unwrap();
    let c2 = dynamics::convergence_check(&s, 2 * base).unwrap();
    let ratio = c1 / c2;
    assert!((3.5..=4.5).contains(&ratio), "{c1} {c2} {ratio}");
}

#[test]
fn default_steps_are_converged() {
    for (kind, r) in [(ConstantGamma, 2.0), (ConstantChi, 0.5)] {
        for (n, tau) in [(100usize, 10.0), (100_000, 1.0)] {
            let s = schedule(kind, n, r, tau);
            let c = dynamics::convergence_check(&s, dynamics::default_steps(&s)).unwrap();
            assert!(c <= 1e-8, "{kind} n={n} tau={tau}: {c}");
        }
    }
    assert!(dynamics::convergence_check(&schedule(ConstantGamma, 1000, 2.0, 50.0), 1).unwrap() > 1e-3);
}

#[test]
fn dense_size_guard() {
    let s = schedule(ConstantGamma, dynamics::DENSE_LIMIT + 1, 2.0, 1.0);
    assert!(dynamics::evolve_full(&s, 0, 10, 2).is_err());
    let s = schedule(ConstantGamma, 10, 2.0, 1.0);
    assert!(dynamics::evolve_full(&s, 10, 10, 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propagator_is_unitary(n in 3usize..10_000_000, gamma in 0.0f64..10.0, x in 0.0f64..1.0, dt in 1e-9f64..10.0) {
        let m = ModelParams::new(n, 1.0, 1.0).unwrap();
        let u = dynamics::step_propagator(&m, gamma, x * 10.0 * n as f64, dt).unwrap();
        prop_assert!(u.unitarity_defect() <= 1e-13);
    }

    #[test]
    fn runs_preserve_norm_and_bounds(
        n in 3usize..1_000_000,
        r in 0.1f64..5.0,
        tau in 0.01f64..20.0,
        chi_kind in any::<bool>(),
    ) {
        let kind = if chi_kind { ConstantChi } else { ConstantGamma };
        let s = schedule(kind, n, r, tau);
        let rec = dynamics::evolve_reduced(&s, 2000, 17).unwrap();
        prop_assert!(rec.norm_drift <= 1e-9);
        prop_assert_eq!(rec.samples.len(), 17);
        for sample in &rec.samples {
            prop_assert!((0.0..=1.0).contains(&sample.p_w));
            prop_assert!(sample.gap >= 0.0);
        }
        prop_assert_eq!(rec.samples[16].s, 1.0);
        prop_assert!((rec.samples[16].p_w - rec.final_p_w).abs() <= 1e-15);
    }
}
