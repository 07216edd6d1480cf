//! Small one-dimensional numerical helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of an extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Maximize `f` on `[0, 1]`: scan `n_grid + 1` equally spaced points, then
/// refine by golden-section search between the neighbours of the best
/// grid point. Exact for unimodal `f`, otherwise finds a local maximum.
pub fn maximize_unit_interval<F: Fn(f64) -> f64>(f: F, n_grid: usize) -> Extremum {
    let n_grid = n_grid.max(2);
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for k in 0..=n_grid {
        let v = f(k as f64 / n_grid as f64);
        if v > best_val {
            best_val = v;
            best = k;
        }
    }
    let lo = best.saturating_sub(1) as f64 / n_grid as f64;
    let hi = (best + 1).min(n_grid) as f64 / n_grid as f64;
    let refined = golden_max(&f, lo, hi);
    if refined.value >= best_val {
        refined
    } else {
        Extremum { x: best as f64 / n_grid as f64, value: best_val }
    }
}

pub fn minimize_unit_interval<F: Fn(f64) -> f64>(f: F, n_grid: usize) -> Extremum {
    let e = maximize_unit_interval(|x| -f(x), n_grid);
    Extremum { x: e.x, value: -e.value }
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> Extremum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let (x, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    let fa = f(a);
    let fb = f(b);
    [(a, fa), (b, fb)]
        .into_iter()
        .fold(Extremum { x, value }, |acc, (x, v)| if v > acc.value { Extremum { x, value: v } } else { acc })
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (sxy, sxx) = xs
        .iter()
        .zip(ys)
        .fold((0.0, 0.0), |(sxy, sxx), (x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx)));
    sxy / sxx
}

/// Slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    ols_slope(&lx, &ly)
}

/// First point in `[lo, hi]` where an increasing `f` reaches `level`,
/// to absolute tolerance `tol`. `f(lo) < level <= f(hi)` is assumed.
pub fn bisect_level<F: Fn(f64) -> f64>(f: F, level: f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= level {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_narrow_peak_between_grid_points() {
        let centre = 0.123_456_7;
        let f = |x: f64| 1.0 / (1.0 + ((x - centre) / 1e-4).powi(2));
        let e = maximize_unit_interval(f, 64);
        assert!((e.x - centre).abs() < 1e-9, "{}", e.x);
        assert!((e.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_maximum() {
        let e = maximize_unit_interval(|x| x, 64);
        assert_eq!(e.x, 1.0);
        let e = minimize_unit_interval(|x| x * x + 1.0, 10);
        assert!(e.x.abs() < 1e-12);
        assert!((e.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1e2, 1e4, 1e6];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-0.5)).collect();
        assert!((log_log_slope(&xs, &ys) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn bisect_sqrt_two() {
        let x = bisect_level(|x| x * x, 2.0, 0.0, 2.0, 1e-12);
        assert!((x - 2f64.sqrt()).abs() < 1e-12);
    }
}
