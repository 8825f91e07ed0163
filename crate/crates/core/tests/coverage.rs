use std::collections::{BTreeMap, BTreeSet};

use submonogenic::suites::{run_suite, Suite, SuiteConfig};

fn fast_cfg() -> SuiteConfig {
    SuiteConfig { n: Some(1), ..SuiteConfig::default() }
}

#[test]
fn every_check_belongs_to_exactly_one_suite() {
    let cfg = SuiteConfig::default();
    let mut owner: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for s in Suite::EACH {
        for r in run_suite(s, &cfg).unwrap() {
            assert!(r.check.starts_with(&format!("{}/", s.name())), "{} not prefixed by {}", r.check, s.name());
            owner.entry(r.check).or_default().push(s.name());
        }
    }
    for (check, suites) in &owner {
        assert_eq!(suites.len(), 1, "{check} reported by {suites:?}");
    }
    let all: BTreeSet<String> = run_suite(Suite::All, &cfg).unwrap().into_iter().map(|r| r.check).collect();
    let union: BTreeSet<String> = owner.into_keys().collect();
    assert_eq!(all, union);
}

#[test]
fn check_names_are_unique_and_sorted() {
    let reports = run_suite(Suite::All, &fast_cfg()).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(names, sorted);
}

#[test]
fn all_skips_suites_without_requested_n() {
    let cfg = SuiteConfig { n: Some(2), ..SuiteConfig::default() };
    let reports = run_suite(Suite::Algebra, &cfg).unwrap();
    assert!(reports.iter().all(|r| r.check.ends_with("_n2")));
    assert!(run_suite(Suite::Stokes, &cfg).is_err());
    let cfg = SuiteConfig { n: Some(4), ..SuiteConfig::default() };
    let names: BTreeSet<String> = run_suite(Suite::All, &cfg)
        .unwrap()
        .into_iter()
        .map(|r| r.check.split('/').next().unwrap().to_string())
        .collect();
    assert_eq!(names, ["algebra", "lemmas"].iter().map(|s| s.to_string()).collect());
}

#[test]
fn invalid_configuration_is_rejected() {
    for cfg in [
        SuiteConfig { tol_scale: 0.0, ..SuiteConfig::default() },
        SuiteConfig { tol_scale: f64::NAN, ..SuiteConfig::default() },
        SuiteConfig { mc_samples: 10, ..SuiteConfig::default() },
        SuiteConfig { n: Some(0), ..SuiteConfig::default() },
    ] {
        assert!(run_suite(Suite::Lemmas, &cfg).is_err());
    }
}

#[test]
fn tolerance_scale_tightens_checks() {
    let strict = SuiteConfig { tol_scale: 1e-30, ..SuiteConfig::default() };
    let reports = run_suite(Suite::Lemmas, &strict).unwrap();
    assert!(reports.iter().any(|r| !r.pass));
    let normal = run_suite(Suite::Lemmas, &SuiteConfig::default()).unwrap();
    for (a, b) in reports.iter().zip(&normal) {
        assert_eq!(a.check, b.check);
        assert!((a.tolerance - b.tolerance * 1e-30).abs() <= 1e-45);
    }
}

#[test]
fn seed_changes_random_points_only() {
    let a = run_suite(Suite::Kernel, &SuiteConfig { seed: 1, ..fast_cfg() }).unwrap();
    let b = run_suite(Suite::Kernel, &SuiteConfig { seed: 2, ..fast_cfg() }).unwrap();
    let names = |v: &[submonogenic::report::CheckReport]| v.iter().map(|r| r.check.clone()).collect::<Vec<_>>();
    assert_eq!(names(&a), names(&b));
    assert!(a.iter().zip(&b).any(|(x, y)| x.residual != y.residual));
    assert!(b.iter().all(|r| r.pass));
}
