//! Verification suites: each runs a family of checks and returns one
//! [`CheckReport`] per identity, sorted by name.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::report::{sort_reports, CheckReport};

mod algebra;
mod cauchy_ball;
mod cauchy_cylinder;
mod kernel;
mod lemmas;
mod planewaves;
mod stokes;
mod thm41;

/// Selectable suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    Lemmas,
    Planewaves,
    Kernel,
    Thm41,
    Stokes,
    CauchyBall,
    CauchyCylinder,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Algebra,
        Suite::Lemmas,
        Suite::Planewaves,
        Suite::Kernel,
        Suite::Thm41,
        Suite::Stokes,
        Suite::CauchyBall,
        Suite::CauchyCylinder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Lemmas => "lemmas",
            Suite::Planewaves => "planewaves",
            Suite::Kernel => "kernel",
            Suite::Thm41 => "thm41",
            Suite::Stokes => "stokes",
            Suite::CauchyBall => "cauchy-ball",
            Suite::CauchyCylinder => "cauchy-cylinder",
            Suite::All => "all",
        }
    }

    /// Values of `n` a suite accepts through `--n`; `None` if `n` does not
    /// apply (the suite then ignores it).
    pub fn supported_n(self) -> Option<std::ops::RangeInclusive<usize>> {
        match self {
            Suite::Algebra => Some(1..=4),
            Suite::Lemmas | Suite::All => None,
            Suite::Planewaves | Suite::Kernel => Some(1..=3),
            Suite::Thm41 => Some(1..=3),
            Suite::Stokes | Suite::CauchyBall | Suite::CauchyCylinder => Some(1..=1),
        }
    }
}

/// Run-wide settings.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Restricts suites to this `n`.
    pub n: Option<usize>,
    pub seed: u64,
    /// Multiplies every tolerance.
    pub tol_scale: f64,
    /// Sample count for Monte Carlo sphere rules.
    pub mc_samples: usize,
    pub exec: Exec,
    /// Record wall-clock runtimes (makes output non-reproducible).
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: None, seed: 0, tol_scale: 1.0, mc_samples: 200_000, exec: Exec::default(), timings: false }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return Err(Error::Config(format!("--tol-scale {} must be positive", self.tol_scale)));
        }
        if self.mc_samples < 100 {
            return Err(Error::Config(format!("--mc-samples {} is below 100", self.mc_samples)));
        }
        if self.n == Some(0) {
            return Err(Error::Config("--n must be at least 1".into()));
        }
        Ok(())
    }

    /// `n` values for a suite: the requested one, or the defaults.
    pub(crate) fn n_values(&self, defaults: &[usize]) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => defaults.to_vec(),
        }
    }
}

/// Runs one suite (or all of them) and returns the sorted reports.
///
/// Requesting an `n` outside a single suite's range is a configuration
/// error; with [`Suite::All`] such suites are skipped.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let selected: Vec<Suite> = match suite {
        Suite::All => Suite::EACH
            .into_iter()
            .filter(|s| match (cfg.n, s.supported_n()) {
                (Some(n), Some(range)) => range.contains(&n),
                _ => true,
            })
            .collect(),
        s => {
            if let (Some(n), Some(range)) = (cfg.n, s.supported_n()) {
                if !range.contains(&n) {
                    return Err(Error::Config(format!(
                        "suite {} supports n in {}..={}, got {n}",
                        s.name(),
                        range.start(),
                        range.end()
                    )));
                }
            }
            vec![s]
        }
    };
    let mut out = Vec::new();
    for s in selected {
        let mut ctx = Ctx::new(cfg, s);
        match s {
            Suite::Algebra => algebra::run(&mut ctx),
            Suite::Lemmas => lemmas::run(&mut ctx),
            Suite::Planewaves => planewaves::run(&mut ctx),
            Suite::Kernel => kernel::run(&mut ctx),
            Suite::Thm41 => thm41::run(&mut ctx),
            Suite::Stokes => stokes::run(&mut ctx),
            Suite::CauchyBall => cauchy_ball::run(&mut ctx),
            Suite::CauchyCylinder => cauchy_cylinder::run(&mut ctx),
            Suite::All => unreachable!("expanded above"),
        }
        out.extend(ctx.reports);
    }
    sort_reports(&mut out);
    Ok(out)
}

/// Outcome of one check body: residual and optional error estimate.
pub(crate) struct Outcome {
    pub residual: f64,
    pub error_estimate: Option<f64>,
}

impl Outcome {
    pub fn new(residual: f64) -> Self {
        Outcome { residual, error_estimate: None }
    }

    pub fn with_estimate(residual: f64, e: f64) -> Self {
        Outcome { residual, error_estimate: Some(e) }
    }
}

/// Per-suite collection state.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    suite: Suite,
    reports: Vec<CheckReport>,
    rng: ChaCha8Rng,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SuiteConfig, suite: Suite) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite as u64);
        Ctx { cfg, suite, reports: Vec::new(), rng }
    }

    pub fn exec(&self) -> Exec {
        self.cfg.exec
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Runs `body` and records a check named `suite/name`.
    pub fn check(
        &mut self,
        name: &str,
        description: &str,
        tolerance: f64,
        params: &[(&str, Value)],
        body: impl FnOnce() -> Result<Outcome>,
    ) {
        let full = format!("{}/{}", self.suite.name(), name);
        let start = Instant::now();
        let result = body();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let mut report = match result {
            Ok(o) => {
                let mut r = CheckReport::new(full, description, o.residual, tolerance);
                r.error_estimate = o.error_estimate;
                r
            }
            Err(e) => CheckReport::failed(full, description, tolerance, &e),
        };
        for (k, v) in params {
            report.params.insert((*k).to_string(), v.clone());
        }
        let mut report = report.rescale(self.cfg.tol_scale);
        if self.cfg.timings {
            report.runtime_ms = Some(elapsed);
        }
        self.reports.push(report);
    }
}

/// Relative distance `|a - b| / |b|` (absolute when `b = 0`).
pub(crate) fn rel(a: &crate::clifford::Mv, b: &crate::clifford::Mv) -> Result<f64> {
    let d = a.distance(b)?;
    let s = b.norm();
    Ok(if s > 0.0 { d / s } else { d })
}

/// JSON array from floats.
pub(crate) fn jv(xs: &[f64]) -> Value {
    Value::from(xs.to_vec())
}

/// Point with `x₀ ∈ [lo, hi]` and `x` uniform in the cube `[-r, r]^{2n}`.
pub(crate) fn random_point(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64, r: f64) -> crate::clifford::Point {
    use rand::Rng;
    let x0 = rng.gen_range(lo..hi);
    let x = (0..2 * n).map(|_| rng.gen_range(-r..r)).collect();
    crate::clifford::Point { x0, x }
}
