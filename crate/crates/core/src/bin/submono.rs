use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use submonogenic::exec::Exec;
use submonogenic::report::{render, Format};
use submonogenic::suites::{run_suite, Suite, SuiteConfig};

/// Runs the numerical verification suites and reports one line per check.
#[derive(Parser, Debug)]
#[command(name = "submono", version)]
struct Cli {
    /// Suite to run.
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Restrict to this n (suites that do not support it are skipped under `all`).
    #[arg(long)]
    n: Option<usize>,
    /// Seed for random sample points and Monte Carlo rules.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Monte Carlo sample count for sphere rules in n >= 3.
    #[arg(long, default_value_t = 200_000)]
    mc_samples: usize,
    /// Record per-check runtimes (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    /// Run node sums sequentially instead of on the rayon pool.
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    let cfg = SuiteConfig {
        n: cli.n,
        seed: cli.seed,
        tol_scale: cli.tol_scale,
        mc_samples: cli.mc_samples,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
        timings: cli.timings,
    };
    let reports = match run_suite(cli.suite, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match render(&reports, cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
