use hole_anneal::analysis::{self, Variant};
use hole_anneal::annealing;
use hole_anneal::{ModelParams, ScheduleKind};
use proptest::prelude::*;

use ScheduleKind::{ConstantChi, ConstantGamma};

#[test]
fn bounded_variant_gap_closes_as_inverse_sqrt_n() {
    let ns = [1_000usize, 10_000, 100_000, 1_000_000, 10_000_000];
    let rep = analysis::gap_scaling(0.5, 2.0, ConstantGamma, &ns, Variant::Bounded).unwrap();
    let scaled: Vec<f64> = rep.n_values.iter().zip(&rep.min_gaps).map(|(&n, d)| d * (n as f64).sqrt()).collect();
    let first = scaled[0];
    for v in &scaled {
        assert!((v / first - 1.0).abs() <= 0.01, "{scaled:?}");
    }
}

#[test]
fn numeric_gap_minimum_sits_at_the_crossing() {
    for (kind, r) in [(ConstantGamma, 2.0), (ConstantGamma, 5.0), (ConstantChi, 0.5), (ConstantChi, 0.2)] {
        for n in [50usize, 1_000, 1_000_000] {
            let m = ModelParams::new(n, 0.5, r).unwrap();
            let dip = analysis::min_gap(0.5, r, kind, n, Variant::Standard);
            let exact = annealing::peak_location(&m, kind).unwrap();
            let nominal = analysis::critical_point(&m, kind).unwrap();
            assert!((dip.x - exact).abs() <= 1e-6, "{kind} r={r} n={n}: {} vs {exact}", dip.x);
            // The exact minimizer is offset from N gamma = chi by 2 / (r N) in
            // s for constant gamma and 2 r / N for constant chi.
            let offset = 2.0 * r.max(1.0 / r) / n as f64;
            assert!((dip.x - nominal).abs() <= offset + 1e-6, "{kind} r={r} n={n}");
        }
    }
}

#[test]
fn gap_is_linear_in_n_away_from_the_crossing() {
    let ns = [100usize, 1_000, 10_000, 100_000];
    for s in [0.1, 0.3, 0.8, 1.0] {
        let rep = analysis::gap_scaling_at(0.5, 2.0, ConstantGamma, &ns, Variant::Standard, s).unwrap();
        assert!((rep.fitted_exponent - 1.0).abs() < 0.02, "s={s}: {}", rep.fitted_exponent);
    }
}

#[test]
fn crossover_window_brackets_the_critical_point() {
    for (kind, r) in [(ConstantGamma, 2.0), (ConstantChi, 0.5)] {
        let m = ModelParams::new(100_000, 0.5, r).unwrap();
        let (lo, hi) = analysis::crossover_window(&m, kind).unwrap();
        let s_star = analysis::critical_point(&m, kind).unwrap();
        assert!(lo < s_star && s_star < hi, "{kind}: {lo} {s_star} {hi}");
        assert!(hi - lo < 0.01);
    }
}

proptest! {
    #[test]
    fn localization_profile_is_monotone(n in 3usize..5_000_000, r in 0.05f64..20.0, chi_kind in any::<bool>()) {
        let kind = if chi_kind { ConstantChi } else { ConstantGamma };
        let m = ModelParams::new(n, 0.5, r).unwrap();
        let prof = analysis::localization_profile(&m, kind, 65).unwrap();
        prop_assert_eq!(prof.len(), 65);
        if kind == ConstantGamma {
            // No hole at s = 0: the ground state is uniform.
            prop_assert!((prof[0].1 * n as f64 - 1.0).abs() <= 1e-12);
        }
        for w in prof.windows(2) {
            prop_assert!(w[1].1 >= w[0].1 - 1e-15, "{:?}", w);
            prop_assert!((0.0..=1.0).contains(&w[1].1));
        }
    }
}
