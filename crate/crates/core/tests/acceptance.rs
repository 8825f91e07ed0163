//! Acceptance criteria: one PASS/FAIL line each. Runs the full suite with
//! timings for criteria 1-10, then twice more (parallel and sequential,
//! without timings) for the reproducibility criterion.

use std::process::ExitCode;
use std::time::Instant;

use submonogenic::exec::Exec;
use submonogenic::report::{render, CheckReport, Format};
use submonogenic::suites::{run_suite, Suite, SuiteConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    prefixes: &'static [&'static str],
    max_seconds: Option<f64>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "exact algebra for n <= 3", prefixes: &["algebra/"], max_seconds: Some(5.0) },
    Criterion {
        id: 2,
        title: "closed-form integrals and series",
        prefixes: &["lemmas/gamma_moment", "lemmas/antiderivative", "lemmas/series_", "lemmas/weighted_integral"],
        max_seconds: Some(30.0),
    },
    Criterion { id: 3, title: "Funk-Hecke on S^2 and S^3", prefixes: &["lemmas/funk_hecke"], max_seconds: None },
    Criterion {
        id: 4,
        title: "plane-wave integrals, n = 1 and n = 2",
        prefixes: &["thm41/plane_wave_integral_"],
        max_seconds: None,
    },
    Criterion {
        id: 5,
        title: "submonogenicity of E and P, G/H derivatives",
        prefixes: &[
            "kernel/kernel_left_monogenic",
            "kernel/kernel_right_monogenic",
            "kernel/plane_wave_left",
            "kernel/plane_wave_right",
            "kernel/fd_order_",
            "kernel/dx0_g",
            "kernel/dx0_h",
            "kernel/g_h_identity",
        ],
        max_seconds: Some(60.0),
    },
    Criterion {
        id: 6,
        title: "K = dE/dx0 and E from K",
        prefixes: &["kernel/k_matches_dx0_e", "kernel/e_from_k_integral"],
        max_seconds: None,
    },
    Criterion { id: 7, title: "Stokes pairings on the unit ball", prefixes: &["stokes/"], max_seconds: None },
    Criterion { id: 8, title: "ball reconstruction of dF/dx0", prefixes: &["cauchy-ball/"], max_seconds: None },
    Criterion { id: 9, title: "cylinder reconstruction of F", prefixes: &["cauchy-cylinder/"], max_seconds: None },
    Criterion {
        id: 10,
        title: "classical m = 2 representation",
        prefixes: &["planewaves/classical_representation_m2"],
        max_seconds: None,
    },
];

fn evaluate(c: &Criterion, reports: &[CheckReport]) -> (bool, String) {
    let sel: Vec<&CheckReport> =
        reports.iter().filter(|r| c.prefixes.iter().any(|p| r.check.starts_with(p))).collect();
    let secs: f64 = sel.iter().filter_map(|r| r.runtime_ms).sum::<f64>() / 1e3;
    let failed: Vec<&str> = sel.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect();
    let worst = sel
        .iter()
        .map(|r| if r.tolerance > 0.0 { r.residual / r.tolerance } else if r.residual == 0.0 { 0.0 } else { f64::INFINITY })
        .fold(0.0, f64::max);
    let in_time = c.max_seconds.is_none_or(|m| secs < m);
    let ok = !sel.is_empty() && failed.is_empty() && in_time;
    let mut detail = format!("{} checks, worst residual/tol {:.2e}, {:.2} s", sel.len(), worst, secs);
    if let Some(m) = c.max_seconds {
        detail.push_str(&format!(" (limit {m} s)"));
    }
    if !failed.is_empty() {
        detail.push_str(&format!("; failed: {}", failed.join(", ")));
    }
    if sel.is_empty() {
        detail.push_str("; no checks selected");
    }
    (ok, detail)
}

fn main() -> ExitCode {
    let timed = SuiteConfig { timings: true, ..SuiteConfig::default() };
    let t = Instant::now();
    let reports = run_suite(Suite::All, &timed).expect("suite configuration");
    let total = t.elapsed().as_secs_f64();

    let mut all_ok = true;
    for c in CRITERIA {
        let (ok, detail) = evaluate(c, &reports);
        all_ok &= ok;
        println!("criterion {:>2} {}  {}: {}", c.id, if ok { "PASS" } else { "FAIL" }, c.title, detail);
    }

    let t = Instant::now();
    let par = SuiteConfig { exec: Exec::Parallel, ..SuiteConfig::default() };
    let seq = SuiteConfig { exec: Exec::Sequential, ..SuiteConfig::default() };
    let a = render(&run_suite(Suite::All, &par).expect("config"), Format::JsonLines).expect("render");
    let b = render(&run_suite(Suite::All, &seq).expect("config"), Format::JsonLines).expect("render");
    let ok = a == b && !a.is_empty();
    all_ok &= ok;
    println!(
        "criterion 11 {}  reproducible json-lines (parallel vs sequential): {} bytes, {}, {:.2} s",
        if ok { "PASS" } else { "FAIL" },
        a.len(),
        if a == b { "identical" } else { "differ" },
        t.elapsed().as_secs_f64()
    );
    println!("full suite: {} checks in {:.1} s", reports.len(), total);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
