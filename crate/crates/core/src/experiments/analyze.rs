use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::output::{emit_series, format_value, read_histogram};
use super::runner::{list_missing, raw_file, RunManifest, MANIFEST_FILE};
use super::Observable;
use crate::error::{Error, Result};
use crate::stats::{ks_normal, loglog_fit, summary_stats, StatSeries};

/// One row of `fits.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub label: String,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisReport {
    pub written: Vec<PathBuf>,
    pub fits: Vec<FitRow>,
    /// Statistics that could not be computed, with the reason.
    pub skipped: Vec<(String, String)>,
}

impl AnalysisReport {
    pub fn fit(&self, label: &str) -> Option<&FitRow> {
        self.fits.iter().find(|f| f.label == label)
    }
}

/// Reads the raw histograms of the run in `input` and writes the per-n means,
/// standard deviations and KS distances plus the power law fits into `out`.
pub fn analyze(input: &Path, out: &Path) -> Result<AnalysisReport> {
    let manifest_path = input.join(MANIFEST_FILE);
    if !manifest_path.exists() {
        return Err(Error::MissingInputs(vec![manifest_path]));
    }
    let manifest = RunManifest::load(&manifest_path)?;
    let observables = manifest.observables()?;
    let expected: Vec<String> = observables
        .iter()
        .flat_map(|&o| manifest.n_values.iter().map(move |&n| raw_file(o, n)))
        .collect();
    let missing = list_missing(input, &expected);
    if !missing.is_empty() {
        return Err(Error::MissingInputs(missing));
    }
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;

    let mut report = AnalysisReport::default();
    let mut series_to_fit = Vec::new();
    for &obs in &observables {
        let mut means = Vec::new();
        let mut abs_means = Vec::new();
        let mut stds = Vec::new();
        let mut kss = Vec::new();
        for &n in &manifest.n_values {
            let values = read_histogram(&input.join(raw_file(obs, n)))?;
            let s = summary_stats(&values)?;
            means.push((n, s.mean));
            abs_means.push((n, s.mean.abs()));
            stds.push((n, s.std));
            match ks_normal(&values) {
                Ok(d) => kss.push((n, d)),
                Err(e) => report.skipped.push((format!("{}_kss n={n}", obs.name()), e.to_string())),
            }
        }
        for (suffix, points) in [("means", &means), ("stds", &stds), ("kss", &kss)] {
            let path = out.join(format!("{}_{suffix}.csv", obs.name()));
            emit_series(points, &path)?;
            report.written.push(path);
        }
        series_to_fit.push((format!("{}_stds", obs.name()), stds));
        match obs {
            Observable::HammingDistance | Observable::DifferenceClustering => {
                series_to_fit.push((format!("{}_means", obs.name()), means))
            }
            Observable::SignedDiscrepancy => series_to_fit.push((format!("abs_{}_means", obs.name()), abs_means)),
            _ => {}
        }
    }

    let mut csv = String::from("label,slope,intercept,residual\n");
    for (label, points) in series_to_fit {
        let fit = StatSeries::new(label.clone(), points).and_then(|s| loglog_fit(&s));
        match fit {
            Ok(f) => {
                writeln!(
                    csv,
                    "{label},{},{},{}",
                    format_value(f.slope),
                    format_value(f.intercept),
                    format_value(f.residual)
                )
                .expect("writing to a String");
                report.fits.push(FitRow { label, slope: f.slope, intercept: f.intercept, residual: f.residual });
            }
            Err(e) => report.skipped.push((label, e.to_string())),
        }
    }
    let fits_path = out.join("fits.csv");
    std::fs::write(&fits_path, csv).map_err(|e| Error::io(&fits_path, e))?;
    report.written.push(fits_path);
    Ok(report)
}
