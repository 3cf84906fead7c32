use std::path::Path;

use ergm_core::experiments::{
    analyze, emit_histogram, read_series, run_dataset, DatasetSpec, Observable, RunManifest, RunOptions, MANIFEST_FILE,
};
use ergm_core::Error;

const SMALL: &str = "
    name = small
    graph = edge
    graph = two_star
    graph = triangle
    beta = -1
    beta = 0.55
    beta = 0.5
    well = low
    samples = 2
    base = 2
    scales = 3..3
    seed = 99
";

fn rows(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().count() - 1
}

#[test]
fn two_samples_one_scale() {
    let dir = tempfile::tempdir().unwrap();
    let ds = DatasetSpec::parse(SMALL).unwrap();
    let manifest = run_dataset(&ds, dir.path(), &RunOptions::default()).unwrap();
    assert_eq!(manifest.n_values, vec![8]);
    assert_eq!(manifest.seeds, vec![vec![manifest.seeds[0][0], manifest.seeds[0][1]]]);
    assert_ne!(manifest.seeds[0][0], manifest.seeds[0][1]);
    for obs in Observable::LIPSCHITZ {
        assert_eq!(rows(&dir.path().join(format!("raw/{}_n8.csv", obs.name()))), 2);
        assert_eq!(rows(&dir.path().join(format!("{}_stds.csv", obs.name()))), 1);
        assert_eq!(rows(&dir.path().join(format!("{}_means.csv", obs.name()))), 1);
    }
    for f in &manifest.files {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    assert_eq!(RunManifest::load(&dir.path().join(MANIFEST_FILE)).unwrap(), manifest);
}

#[test]
fn existing_output_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let ds = DatasetSpec::parse(SMALL).unwrap();
    run_dataset(&ds, dir.path(), &RunOptions::default()).unwrap();
    let err = run_dataset(&ds, dir.path(), &RunOptions::default()).unwrap_err();
    assert!(matches!(err, Error::OutputExists(_)));
    assert!(err.is_config());
    run_dataset(&ds, dir.path(), &RunOptions { force: true, ..RunOptions::default() }).unwrap();
}

#[test]
fn unresolvable_well_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let ds = DatasetSpec::parse(&SMALL.replace("well = low", "well = 0.55")).unwrap();
    let err = run_dataset(&ds, dir.path(), &RunOptions::default()).unwrap_err();
    assert!(err.is_config(), "{err}");
    assert!(!dir.path().join(MANIFEST_FILE).exists());
}

/// A run directory whose raw histograms are supplied by `values(observable, n)`.
fn synthetic_run(dir: &Path, values: impl Fn(usize) -> Vec<f64>) {
    let ds = DatasetSpec::parse(
        &SMALL
            .replace("scales = 3..3", "scales = 3..6")
            .replace("samples = 2", "samples = 4")
            .replace("seed = 99", "observables = total_edge_count\nseed = 99"),
    )
    .unwrap();
    let opts = RunOptions { skip_analysis: true, ..RunOptions::default() };
    let manifest = run_dataset(&ds, dir, &opts).unwrap();
    for f in &manifest.files {
        let n: usize = f.rsplit("_n").next().unwrap().trim_end_matches(".csv").parse().unwrap();
        emit_histogram(&values(n), &dir.join(f)).unwrap();
    }
}

#[test]
fn constant_inputs_have_zero_spread_and_no_ks() {
    let dir = tempfile::tempdir().unwrap();
    synthetic_run(dir.path(), |_| vec![3.0; 4]);
    let report = analyze(dir.path(), dir.path()).unwrap();
    let stds = read_series(&dir.path().join("total_edge_count_stds.csv")).unwrap();
    assert_eq!(stds.len(), 4);
    assert!(stds.iter().all(|&(_, s)| s == 0.0));
    let ks_skips = report.skipped.iter().filter(|(what, _)| what.starts_with("total_edge_count_kss")).count();
    assert_eq!(ks_skips, 4);
    assert!(read_series(&dir.path().join("total_edge_count_kss.csv")).unwrap().is_empty());
}

#[test]
fn linear_spread_fits_slope_one() {
    let dir = tempfile::tempdir().unwrap();
    // sample std of {c - d, c, c, c + d} is d·sqrt(2/3)
    synthetic_run(dir.path(), |n| {
        let d = 0.4 * n as f64 / (2.0f64 / 3.0).sqrt();
        vec![10.0 - d, 10.0, 10.0, 10.0 + d]
    });
    let report = analyze(dir.path(), dir.path()).unwrap();
    let fit = report.fit("total_edge_count_stds").unwrap();
    assert!((fit.slope - 1.0).abs() < 1e-9, "{fit:?}");
    assert!((fit.intercept - 0.4f64.ln()).abs() < 1e-9);
    let text = std::fs::read_to_string(dir.path().join("fits.csv")).unwrap();
    assert!(text.starts_with("label,slope,intercept,residual\n"));
    assert!(text.contains("total_edge_count_stds,"));
}

#[test]
fn missing_inputs_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    synthetic_run(dir.path(), |_| vec![1.0, 2.0, 3.0, 4.0]);
    std::fs::remove_file(dir.path().join("raw/total_edge_count_n8.csv")).unwrap();
    std::fs::remove_file(dir.path().join("raw/total_edge_count_n16.csv")).unwrap();
    match analyze(dir.path(), dir.path()) {
        Err(Error::MissingInputs(paths)) => {
            assert_eq!(paths.len(), 2);
            assert!(paths.iter().any(|p| p.ends_with("raw/total_edge_count_n8.csv")));
        }
        other => panic!("{other:?}"),
    }
    let empty = tempfile::tempdir().unwrap();
    assert!(matches!(analyze(empty.path(), empty.path()), Err(Error::MissingInputs(_))));
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let ds = DatasetSpec::parse(&SMALL.replace("samples = 2", "samples = 5").replace("scales = 3..3", "scales = 2..4")).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_dataset(&ds, a.path(), &RunOptions { threads: Some(1), ..RunOptions::default() }).unwrap();
    run_dataset(&ds.coupled(), b.path(), &RunOptions { threads: Some(4), ..RunOptions::default() }).unwrap();
    // the ERGM chain of a coupled run sees the same draws as the plain run
    for obs in Observable::LIPSCHITZ {
        let name = format!("{}_means.csv", obs.name());
        assert_eq!(std::fs::read(a.path().join(&name)).unwrap(), std::fs::read(b.path().join(&name)).unwrap());
    }
}
