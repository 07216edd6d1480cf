//! Search Hamiltonian for a single hole on a flat N-site landscape with
//! all-to-all hopping:
//!
//! ```text
//! H = -chi |w><w| - gamma * sum_{i != j} |i><j|
//! ```
//!
//! Everything here is closed form. The dynamics never leave the plane
//! spanned by the hole `|w>` and the uniform superposition `|u>` of the
//! other N - 1 sites, so the spectrum of interest is that of a 2x2 matrix.
//! Energies and times are dimensionless with hbar = 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Lattice size, hopping scale and depth ratio. The hole depth at the end
/// of a constant-gamma anneal (or throughout a constant-chi one) is
/// `chi0 = r * n * gamma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    gamma0: f64,
    r: f64,
}

impl ModelParams {
    pub fn new(n: usize, gamma0: f64, r: f64) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("n must be >= 3, got {n}")));
        }
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(invalid(format!("gamma0 must be positive, got {gamma0}")));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(invalid(format!("r must be positive, got {r}")));
        }
        Ok(Self { n, gamma0, r })
    }

    /// Build from a raw hole depth; it is converted to `r = chi0 / (n gamma0)`.
    pub fn from_chi0(n: usize, gamma0: f64, chi0: f64) -> Result<Self> {
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(invalid(format!("gamma0 must be positive, got {gamma0}")));
        }
        Self::new(n, gamma0, chi0 / (n as f64 * gamma0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn chi0(&self) -> f64 {
        self.r * self.n as f64 * self.gamma0
    }

    /// `r == 1` sits between the localizing and delocalizing regimes and
    /// neither closed form covers it.
    pub fn is_boundary_ratio(&self) -> bool {
        self.r == 1.0
    }

    pub(crate) fn nf(&self) -> f64 {
        self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScheduleKind {
    /// `gamma = gamma0`, `chi = chi0 * s`.
    ConstantGamma,
    /// `chi = chi0`, `gamma = gamma0 * (1 - s)`.
    ConstantChi,
}

impl ScheduleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScheduleKind::ConstantGamma => "const-gamma",
            ScheduleKind::ConstantChi => "const-chi",
        }
    }
}

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScheduleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "const-gamma" | "constant-gamma" => Ok(ScheduleKind::ConstantGamma),
            "const-chi" | "constant-chi" => Ok(ScheduleKind::ConstantChi),
            other => Err(invalid(format!("unknown schedule '{other}'"))),
        }
    }
}

/// A linear annealing schedule over total time `tau`, evaluated in the
/// reduced time `s = t / tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub kind: ScheduleKind,
    pub params: ModelParams,
    tau: f64,
}

impl Schedule {
    pub fn new(kind: ScheduleKind, params: ModelParams, tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(invalid(format!("tau must be positive, got {tau}")));
        }
        Ok(Self { kind, params, tau })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        Self::new(self.kind, self.params, tau)
    }

    /// `(gamma, chi)` at reduced time `s`.
    pub fn couplings(&self, s: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange(format!("s = {s} is outside [0, 1]")));
        }
        Ok(self.kind.couplings(&self.params, s))
    }

    /// `(dgamma/ds, dchi/ds)`; both schedules are linear in s.
    pub fn coupling_rates(&self) -> (f64, f64) {
        self.kind.coupling_rates(&self.params)
    }
}

impl ScheduleKind {
    /// Unchecked evaluation, `s` is clamped into `[0, 1]`.
    pub(crate) fn couplings(&self, params: &ModelParams, s: f64) -> (f64, f64) {
        let s = s.clamp(0.0, 1.0);
        match self {
            ScheduleKind::ConstantGamma => (params.gamma0, params.chi0() * s),
            ScheduleKind::ConstantChi => (params.gamma0 * (1.0 - s), params.chi0()),
        }
    }

    pub(crate) fn coupling_rates(&self, params: &ModelParams) -> (f64, f64) {
        match self {
            ScheduleKind::ConstantGamma => (0.0, params.chi0()),
            ScheduleKind::ConstantChi => (-params.gamma0, 0.0),
        }
    }
}

pub fn schedule_eval(schedule: &Schedule, s: f64) -> Result<(f64, f64)> {
    schedule.couplings(s)
}

/// Real symmetric 2x2 matrix `[[ww, wu], [wu, uu]]` in the ordered basis
/// `{|w>, |u>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub ww: f64,
    pub wu: f64,
    pub uu: f64,
}

impl Sym2 {
    pub fn trace(&self) -> f64 {
        self.ww + self.uu
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.ww + self.uu);
        let half = (0.5 * (self.ww - self.uu)).hypot(self.wu);
        (mean - half, mean + half)
    }

    pub fn to_array(&self) -> [[f64; 2]; 2] {
        [[self.ww, self.wu], [self.wu, self.uu]]
    }

    /// `a^T M b`.
    pub fn bilinear(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        a[0] * (self.ww * b[0] + self.wu * b[1]) + a[1] * (self.wu * b[0] + self.uu * b[1])
    }
}

fn check_couplings(gamma: f64, chi: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(invalid(format!("gamma must be >= 0, got {gamma}")));
    }
    if !(chi.is_finite() && chi >= 0.0) {
        return Err(invalid(format!("chi must be >= 0, got {chi}")));
    }
    Ok(())
}

/// Projection onto `{|w>, |u>}`. Linear in `(gamma, chi)`, so it also
/// yields `dH/ds` when fed the coupling rates.
pub(crate) fn reduced_matrix(n: f64, gamma: f64, chi: f64) -> Sym2 {
    Sym2 {
        ww: -chi,
        wu: -gamma * (n - 1.0).sqrt(),
        uu: -(n - 2.0) * gamma,
    }
}

pub fn reduced_hamiltonian(params: &ModelParams, gamma: f64, chi: f64) -> Result<Sym2> {
    check_couplings(gamma, chi)?;
    Ok(reduced_matrix(params.nf(), gamma, chi))
}

pub(crate) fn gap_unchecked(n: f64, gamma: f64, chi: f64) -> f64 {
    // (N gamma - chi)^2 + 4 chi gamma, written as a hypot to avoid overflow.
    (n * gamma - chi).hypot(2.0 * (chi * gamma).sqrt())
}

pub(crate) fn eigenvalues_unchecked(n: f64, gamma: f64, chi: f64) -> (f64, f64) {
    let delta = gap_unchecked(n, gamma, chi);
    let e_minus = -0.5 * ((n - 2.0) * gamma + chi + delta);
    // E+ E- = det(H_eff); avoids cancellation in the upper root.
    let det = (n - 2.0) * gamma * chi - (n - 1.0) * gamma * gamma;
    let e_plus = if e_minus == 0.0 { 0.0 } else { det / e_minus };
    (e_minus, e_plus)
}

/// Ground and first-excited energies `(E-, E+)`.
pub fn eigenvalues(params: &ModelParams, gamma: f64, chi: f64) -> Result<(f64, f64)> {
    check_couplings(gamma, chi)?;
    Ok(eigenvalues_unchecked(params.nf(), gamma, chi))
}

/// Instantaneous gap `sqrt((N gamma - chi)^2 + 4 chi gamma)`, always the
/// nonnegative root.
pub fn gap(params: &ModelParams, gamma: f64, chi: f64) -> Result<f64> {
    check_couplings(gamma, chi)?;
    Ok(gap_unchecked(params.nf(), gamma, chi))
}

/// Hole coefficients `(C-, C+)` of the unnormalized eigenvectors
/// `C |w> + sum_{i != w} |i>`. Undefined at zero hopping.
pub fn coefficients(params: &ModelParams, gamma: f64, chi: f64) -> Result<(f64, f64)> {
    check_couplings(gamma, chi)?;
    if gamma == 0.0 {
        return Err(Error::SingularParameter(
            "coefficients need gamma > 0; at gamma = 0 the eigenstates are basis states".into(),
        ));
    }
    let n = params.nf();
    let delta = gap_unchecked(n, gamma, chi);
    let a = chi - (n - 2.0) * gamma;
    // C+ C- = -(N - 1): take the root without cancellation, derive the other.
    let (c_minus, c_plus) = if a >= 0.0 {
        let c_minus = (a + delta) / (2.0 * gamma);
        (c_minus, -(n - 1.0) / c_minus)
    } else {
        let c_plus = (a - delta) / (2.0 * gamma);
        (-(n - 1.0) / c_plus, c_plus)
    };
    Ok((c_minus, c_plus))
}

/// Normalized ground eigenvector of the reduced matrix as
/// `(<w|E->, <u|E->)`, both components nonnegative. Well defined for all
/// couplings except `gamma = chi = 0`.
pub(crate) fn ground_vector(n: f64, gamma: f64, chi: f64) -> [f64; 2] {
    let delta = gap_unchecked(n, gamma, chi);
    let a = chi - (n - 2.0) * gamma;
    let g2 = 2.0 * gamma * (n - 1.0).sqrt();
    if a >= 0.0 {
        let p = a + delta;
        let norm = p.hypot(g2);
        if norm == 0.0 {
            // gamma = chi = 0: H vanishes, pick the uniform-rest state.
            return [0.0, 1.0];
        }
        [p / norm, g2 / norm]
    } else {
        let q = delta - a;
        let norm = g2.hypot(q);
        [g2 / norm, q / norm]
    }
}

/// `|<w|E->|^2`, the probability of finding the instantaneous ground state
/// on the hole. Valid at zero hopping, where it is 1.
pub fn ground_hole_probability(params: &ModelParams, gamma: f64, chi: f64) -> Result<f64> {
    check_couplings(gamma, chi)?;
    let v = ground_vector(params.nf(), gamma, chi);
    Ok(v[0] * v[0])
}

/// `|<psi0|E->|^2` for the uniform superposition `psi0` over all N sites.
pub fn uniform_ground_overlap(params: &ModelParams, gamma: f64, chi: f64) -> Result<f64> {
    check_couplings(gamma, chi)?;
    let n = params.nf();
    let v = ground_vector(n, gamma, chi);
    let amp = (v[0] + v[1] * (n - 1.0).sqrt()) / n.sqrt();
    Ok(amp * amp)
}

/// Spectrum and eigenvector data at one `(gamma, chi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub e_minus: f64,
    pub e_plus: f64,
    pub gap: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    /// `<w|E->`
    pub ground_hole_amp: f64,
}

pub fn spectral_point(params: &ModelParams, gamma: f64, chi: f64) -> Result<SpectralPoint> {
    let (c_minus, c_plus) = coefficients(params, gamma, chi)?;
    let (e_minus, e_plus) = eigenvalues(params, gamma, chi)?;
    let n = params.nf();
    Ok(SpectralPoint {
        e_minus,
        e_plus,
        gap: gap_unchecked(n, gamma, chi),
        c_minus,
        c_plus,
        ground_hole_amp: ground_vector(n, gamma, chi)[0],
    })
}
