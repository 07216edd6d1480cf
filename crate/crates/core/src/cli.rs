//! Command-line front end. Every subcommand writes CSV: one `#` manifest
//! line with the effective parameters, a header row, then data rows.
//! Floats are written with 17 significant digits.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 computational
//! failure (unreachable target, bracket failure).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::analysis::{self, Variant};
use crate::annealing::{self, BisectionConfig, TauMin};
use crate::dynamics::{self, StepPolicy};
use crate::error::{Error, Result};
use crate::model::{self, ModelParams, Schedule, ScheduleKind};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "hole-anneal", version, about = "Adiabatic annealing search for a single hole")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// const-gamma or const-chi
    #[arg(long, default_value = "const-gamma")]
    schedule: ScheduleKind,
    /// Number of lattice sites
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    gamma0: f64,
    /// Depth ratio, chi0 = r n gamma0 [default: 2 for const-gamma, 0.5 for const-chi]
    #[arg(long)]
    r: Option<f64>,
}

impl ModelArgs {
    fn r(&self) -> f64 {
        self.r.unwrap_or(match self.schedule {
            ScheduleKind::ConstantGamma => 2.0,
            ScheduleKind::ConstantChi => 0.5,
        })
    }

    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.gamma0, self.r())
    }

    fn manifest(&self) -> String {
        format!("schedule={} n={} gamma0={} r={}", self.schedule, self.n, self.gamma0, self.r())
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Target success probability [default: 0.33 for const-gamma, 0.9 for const-chi]
    #[arg(long)]
    p_target: Option<f64>,
    #[arg(long, default_value_t = 1e-4)]
    accuracy: f64,
    #[arg(long)]
    tau_lo: Option<f64>,
    #[arg(long)]
    tau_hi: Option<f64>,
    #[arg(long, default_value_t = 200)]
    max_iters: usize,
    /// Fixed step count for every evaluation (default: automatic)
    #[arg(long)]
    steps: Option<usize>,
}

impl SearchArgs {
    fn config(&self, kind: ScheduleKind) -> BisectionConfig {
        BisectionConfig {
            p_target: self.p_target(kind),
            accuracy: self.accuracy,
            tau_lo: self.tau_lo,
            tau_hi: self.tau_hi,
            max_iters: self.max_iters,
            steps: step_policy(self.steps),
        }
    }

    fn p_target(&self, kind: ScheduleKind) -> f64 {
        self.p_target.unwrap_or(match kind {
            ScheduleKind::ConstantGamma => 0.33,
            ScheduleKind::ConstantChi => 0.9,
        })
    }

    fn manifest(&self, kind: ScheduleKind) -> String {
        format!(
            "p_target={} accuracy={} tau_lo={} tau_hi={} max_iters={} steps={}",
            self.p_target(kind),
            self.accuracy,
            opt(self.tau_lo),
            opt(self.tau_hi),
            self.max_iters,
            opt(self.steps),
        )
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Write CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energies, gap and ground-state hole weight, at one (gamma, chi) point or along a schedule
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Hopping energy for a single point (requires --chi)
        #[arg(long, requires = "chi")]
        gamma: Option<f64>,
        /// Hole depth for a single point (requires --gamma)
        #[arg(long, requires = "gamma")]
        chi: Option<f64>,
        #[arg(long, default_value_t = 257)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Time evolution trajectory, or final probability for a list of annealing times
    Evolve {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, required_unless_present = "taus")]
        tau: Option<f64>,
        /// Comma-separated annealing times; emits one summary row per time
        #[arg(long, value_delimiter = ',', conflicts_with = "tau")]
        taus: Option<Vec<f64>>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = dynamics::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Minimum annealing time reaching a target probability
    TauMin {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Minimum annealing time for several lattice sizes
    SweepN {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000,1000000")]
        n_values: Vec<usize>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Minimum (or fixed-s) gap against lattice size, with the fitted exponent
    GapScan {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000,1000000")]
        n_values: Vec<usize>,
        #[arg(long, default_value = "standard")]
        variant: Variant,
        /// Take the gap at this s instead of minimizing over s
        #[arg(long)]
        at: Option<f64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Numerical and closed-form adiabatic factor
    AdiabaticFactor {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the reduced evolution with the dense full-space integrator
    OracleCompare {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        tau: f64,
        /// Hole site for the dense run
        #[arg(long, default_value_t = 0)]
        w: usize,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 65)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn step_policy(steps: Option<usize>) -> StepPolicy {
    steps.map_or(StepPolicy::Auto, StepPolicy::Fixed)
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "auto".to_string(), |v| v.to_string())
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn row(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

fn check_positive(name: &str, v: Option<usize>) -> Result<()> {
    if v == Some(0) {
        return Err(Error::InvalidParameter(format!("{name} must be >= 1")));
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    check_positive("jobs", jobs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn warn_boundary(params: &ModelParams, kind: ScheduleKind) {
    if kind == ScheduleKind::ConstantGamma && params.is_boundary_ratio() {
        eprintln!("warning: r = 1 is the boundary between localizing and delocalizing final states");
    }
}

fn manifest(command: &str, rest: &[String]) -> String {
    let mut line = format!("# hole-anneal {VERSION} command={command}");
    for part in rest.iter().filter(|p| !p.is_empty()) {
        line.push(' ');
        line.push_str(part);
    }
    line.push('\n');
    line
}

fn execute(command: &Command) -> Result<(String, Option<&PathBuf>)> {
    let mut csv = String::new();
    let out = match command {
        Command::Spectrum { model: m, gamma, chi, samples, output } => {
            if let (Some(gamma), Some(chi)) = (gamma, chi) {
                let params = ModelParams::new(m.n, 1.0, 1.0)?;
                let (e_minus, e_plus) = model::eigenvalues(&params, *gamma, *chi)?;
                let gap = model::gap(&params, *gamma, *chi)?;
                let (c_minus, c_plus) = match model::coefficients(&params, *gamma, *chi) {
                    Ok((a, b)) => (num(a), num(b)),
                    Err(Error::SingularParameter(_)) => (String::new(), String::new()),
                    Err(e) => return Err(e),
                };
                let weight = model::ground_hole_probability(&params, *gamma, *chi)?;
                csv += &manifest("spectrum", &[format!("n={} gamma={} chi={}", m.n, gamma, chi)]);
                csv += "n,gamma,chi,e_minus,e_plus,gap,c_minus,c_plus,ground_hole_prob\n";
                csv += &row(&[
                    m.n.to_string(),
                    num(*gamma),
                    num(*chi),
                    num(e_minus),
                    num(e_plus),
                    num(gap),
                    c_minus,
                    c_plus,
                    num(weight),
                ]);
            } else {
                if *samples < 2 {
                    return Err(Error::InvalidParameter("samples must be >= 2".into()));
                }
                let params = m.params()?;
                csv += &manifest("spectrum", &[m.manifest(), format!("samples={samples}")]);
                csv += "s,gamma,chi,e_minus,e_plus,gap,ground_hole_prob\n";
                for k in 0..*samples {
                    let s = k as f64 / (*samples - 1) as f64;
                    let (g, c) = m.schedule.couplings(&params, s);
                    let (lo, hi) = model::eigenvalues(&params, g, c)?;
                    let weight = model::ground_hole_probability(&params, g, c)?;
                    csv += &row(&[num(s), num(g), num(c), num(lo), num(hi), num(hi - lo), num(weight)]);
                }
            }
            output
        }

        Command::Evolve { model: m, tau, taus, steps, samples, jobs, output } => {
            check_positive("steps", *steps)?;
            let params = m.params()?;
            warn_boundary(&params, m.schedule);
            if let Some(tau) = tau {
                let schedule = Schedule::new(m.schedule, params, *tau)?;
                let n_steps = step_policy(*steps).steps_for(&schedule);
                let run = dynamics::evolve_reduced(&schedule, n_steps, *samples)?;
                csv += &manifest(
                    "evolve",
                    &[
                        m.manifest(),
                        format!("tau={tau} steps={n_steps} samples={samples}"),
                        format!("final_p_w={} norm_drift={}", num(run.final_p_w), num(run.norm_drift)),
                    ],
                );
                csv += "s,gamma,chi,p_w,gap\n";
                for sample in &run.samples {
                    let (g, c) = schedule.couplings(sample.s)?;
                    csv += &row(&[num(sample.s), num(g), num(c), num(sample.p_w), num(sample.gap)]);
                }
            } else {
                let taus = taus.as_deref().unwrap_or_default();
                let rows: Vec<Result<(f64, usize, f64, f64)>> = with_pool(*jobs, || {
                    taus.par_iter()
                        .map(|&tau| {
                            let schedule = Schedule::new(m.schedule, params, tau)?;
                            let n_steps = step_policy(*steps).steps_for(&schedule);
                            let run = dynamics::evolve_reduced(&schedule, n_steps, 2)?;
                            Ok((tau, n_steps, run.final_p_w, run.norm_drift))
                        })
                        .collect()
                })?;
                csv += &manifest(
                    "evolve",
                    &[m.manifest(), format!("steps={} jobs={}", opt(*steps), opt(*jobs))],
                );
                csv += "tau,steps,final_p_w,norm_drift\n";
                for r in rows {
                    let (tau, n_steps, p, drift) = r?;
                    csv += &row(&[num(tau), n_steps.to_string(), num(p), num(drift)]);
                }
            }
            output
        }

        Command::TauMin { model: m, search, output } => {
            let params = m.params()?;
            warn_boundary(&params, m.schedule);
            let found = annealing::tau_min(&params, m.schedule, &search.config(m.schedule))?;
            csv += &manifest("tau-min", &[m.manifest(), search.manifest(m.schedule)]);
            csv += TAU_MIN_HEADER;
            csv += &tau_min_row(m.n, &found);
            output
        }

        Command::SweepN { model: m, n_values, search, jobs, output } => {
            let config = search.config(m.schedule);
            config.validate()?;
            let mut sizes = n_values.clone();
            sizes.sort_unstable();
            sizes.dedup();
            let params: Vec<ModelParams> = sizes
                .iter()
                .map(|&n| ModelParams::new(n, m.gamma0, m.r()))
                .collect::<Result<_>>()?;
            let results: Vec<Result<TauMin>> = with_pool(*jobs, || {
                params.par_iter().map(|p| annealing::tau_min(p, m.schedule, &config)).collect()
            })?;
            csv += &manifest(
                "sweep-n",
                &[
                    format!("schedule={} gamma0={} r={}", m.schedule, m.gamma0, m.r()),
                    format!("n_values={}", join(&sizes)),
                    search.manifest(m.schedule),
                    format!("jobs={}", opt(*jobs)),
                ],
            );
            csv += TAU_MIN_HEADER;
            for (n, res) in sizes.iter().zip(results) {
                csv += &tau_min_row(*n, &res?);
            }
            output
        }

        Command::GapScan { model: m, n_values, variant, at, jobs, output } => {
            let r = m.r();
            let report = with_pool(*jobs, || match at {
                Some(s) => analysis::gap_scaling_at(m.gamma0, r, m.schedule, n_values, *variant, *s),
                None => analysis::gap_scaling(m.gamma0, r, m.schedule, n_values, *variant),
            })??;
            csv += &manifest(
                "gap-scan",
                &[
                    format!("schedule={} gamma0={} r={}", m.schedule, m.gamma0, r),
                    format!("n_values={} variant={} at={}", join(n_values), variant, opt(*at)),
                    format!("jobs={} fitted_exponent={}", opt(*jobs), num(report.fitted_exponent)),
                ],
            );
            csv += "n,s,gap,gap_over_sqrt_n\n";
            for ((n, s), g) in report.n_values.iter().zip(&report.s_values).zip(&report.min_gaps) {
                csv += &row(&[n.to_string(), num(*s), num(*g), num(g / (*n as f64).sqrt())]);
            }
            output
        }

        Command::AdiabaticFactor { model: m, grid, output } => {
            let params = m.params()?;
            let schedule = Schedule::new(m.schedule, params, 1.0)?;
            let af = annealing::adiabatic_factor_numeric(&schedule, *grid)?;
            let closed = match annealing::adiabatic_factor_closed_form(&params, m.schedule) {
                Ok(v) => num(v),
                Err(Error::RegimeViolation { .. }) => String::new(),
                Err(e) => return Err(e),
            };
            csv += &manifest("adiabatic-factor", &[m.manifest(), format!("grid={grid}")]);
            csv += "numerator,min_gap_sq,alpha,s_at_max,s_at_min_gap,alpha_closed_form\n";
            csv += &row(&[
                num(af.numerator),
                num(af.min_gap_sq),
                num(af.alpha),
                num(af.s_at_max),
                num(af.s_at_min_gap),
                closed,
            ]);
            output
        }

        Command::OracleCompare { model: m, tau, w, steps, samples, output } => {
            check_positive("steps", *steps)?;
            let params = m.params()?;
            let schedule = Schedule::new(m.schedule, params, *tau)?;
            let n_steps = step_policy(*steps).steps_for(&schedule);
            let full = dynamics::evolve_full(&schedule, *w, n_steps, *samples)?;
            let reduced = dynamics::evolve_reduced(&schedule, n_steps, *samples)?;
            let max_diff = full
                .samples
                .iter()
                .zip(&reduced.samples)
                .map(|(a, b)| (a.p_w - b.p_w).abs())
                .fold(0.0, f64::max);
            csv += &manifest(
                "oracle-compare",
                &[
                    m.manifest(),
                    format!("tau={tau} w={w} steps={n_steps} samples={samples}"),
                    format!(
                        "max_abs_diff={} full_norm_drift={} reduced_norm_drift={}",
                        num(max_diff),
                        num(full.norm_drift),
                        num(reduced.norm_drift)
                    ),
                ],
            );
            csv += "s,p_w_reduced,p_w_full,abs_diff\n";
            for (a, b) in reduced.samples.iter().zip(&full.samples) {
                csv += &row(&[num(a.s), num(a.p_w), num(b.p_w), num((a.p_w - b.p_w).abs())]);
            }
            output
        }
    };
    Ok((csv, out.out.as_ref()))
}

const TAU_MIN_HEADER: &str = "n,tau_min,tau_lo,tau_hi,p_lo,p_hi,iterations,evaluations\n";

fn tau_min_row(n: usize, t: &TauMin) -> String {
    row(&[
        n.to_string(),
        num(t.tau_min),
        num(t.tau_lo),
        num(t.tau_hi),
        num(t.p_lo),
        num(t.p_hi),
        t.iterations.to_string(),
        t.evaluations.to_string(),
    ])
}

fn join(ns: &[usize]) -> String {
    ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")
}

fn first_line(msg: &str) -> &str {
    let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    line.trim_start_matches("error: ")
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprintln!("error: {}", first_line(&e.to_string()));
            return 1;
        }
    };
    match execute(&cli.command) {
        Ok((csv, None)) => {
            print!("{csv}");
            0
        }
        Ok((csv, Some(path))) => match std::fs::write(path, csv) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_computational() {
                2
            } else {
                1
            }
        }
    }
}
