use std::path::{Path, PathBuf};

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::config::{Coupling, DatasetSpec};
use super::output::emit_histogram;
use super::seed::sample_seed;
use super::{analyze, Observable};
use crate::error::{Error, Result};
use crate::glauber::{run_chain, run_coupled_er};
use crate::landscape::classify_regime;
use crate::{par, ChainRng};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const RAW_DIR: &str = "raw";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overwrite an existing run directory.
    pub force: bool,
    /// Worker thread cap; `None` uses every core.
    pub threads: Option<usize>,
    /// Skip the summary CSVs and fits after sampling.
    pub skip_analysis: bool,
}

/// Everything needed to reproduce a run's CSVs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub created_unix: u64,
    pub dataset: String,
    /// Canonical configuration text, see [`DatasetSpec::to_config_text`].
    pub config: String,
    pub p_star: f64,
    pub n_values: Vec<usize>,
    pub steps: Vec<u64>,
    /// `seeds[i][j]` seeds sample `j` at size `n_values[i]`.
    pub seeds: Vec<Vec<u64>>,
    pub observables: Vec<String>,
    /// Paths relative to the run directory.
    pub files: Vec<String>,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { path: path.into(), message: e.to_string() })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serialises");
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn dataset_spec(&self) -> Result<DatasetSpec> {
        DatasetSpec::parse(&self.config)
    }

    pub fn observables(&self) -> Result<Vec<Observable>> {
        self.observables
            .iter()
            .map(|s| Observable::parse(s).ok_or_else(|| Error::Config(format!("unknown observable '{s}' in manifest"))))
            .collect()
    }
}

pub(crate) fn raw_file(obs: Observable, n: usize) -> String {
    format!("{RAW_DIR}/{}_n{n}.csv", obs.name())
}

/// One sample: warm start at `p_star`, run the chain (coupled if requested), measure.
pub fn simulate_sample(ds: &DatasetSpec, p_star: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChainRng::seed_from_u64(seed);
    let steps = ds.steps_for(n);
    let (x, y) = match ds.coupling {
        Coupling::None => (run_chain(&ds.spec, p_star, n, steps, &mut rng)?, None),
        Coupling::ErdosRenyi => {
            let (x, y) = run_coupled_er(&ds.spec, p_star, n, steps, &mut rng)?;
            (x, Some(y))
        }
    };
    ds.observables.iter().map(|o| o.measure(&ds.spec, p_star, &x, y.as_ref())).collect()
}

/// Samples every `(n, index)` task, writes the raw histograms and the manifest, then
/// (unless disabled) the summary CSVs.
pub fn run_dataset(ds: &DatasetSpec, out: &Path, opts: &RunOptions) -> Result<RunManifest> {
    ds.validate()?;
    let report = classify_regime(&ds.spec)?;
    let p_star = report.resolve_well(ds.well)?;

    let manifest_path = out.join(MANIFEST_FILE);
    if !opts.force && (manifest_path.exists() || out.join(RAW_DIR).exists()) {
        return Err(Error::OutputExists(out.to_path_buf()));
    }
    std::fs::create_dir_all(out.join(RAW_DIR)).map_err(|e| Error::io(out.join(RAW_DIR), e))?;

    let n_values = ds.n_values();
    let mut seeds = Vec::with_capacity(n_values.len());
    let mut files = Vec::new();
    for &n in &n_values {
        let task_seeds: Vec<u64> = (0..ds.samples).map(|i| sample_seed(ds.seed, &ds.name, n, i)).collect();
        let records = par::with_thread_cap(opts.threads, || {
            par::map_range(ds.samples, |i| simulate_sample(ds, p_star, n, task_seeds[i]))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        for (k, &obs) in ds.observables.iter().enumerate() {
            let values: Vec<f64> = records.iter().map(|r| r[k]).collect();
            let rel = raw_file(obs, n);
            emit_histogram(&values, &out.join(&rel))?;
            files.push(rel);
        }
        seeds.push(task_seeds);
    }

    let mut manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        created_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        dataset: ds.name.clone(),
        config: ds.to_config_text(),
        p_star,
        steps: n_values.iter().map(|&n| ds.steps_for(n)).collect(),
        n_values,
        seeds,
        observables: ds.observables.iter().map(|o| o.name().to_string()).collect(),
        files,
    };
    manifest.save(&manifest_path)?;

    if !opts.skip_analysis {
        let report = analyze(out, out)?;
        manifest.files.extend(report.written.iter().map(|p| relative(out, p)));
        manifest.save(&manifest_path)?;
    }
    Ok(manifest)
}

fn relative(base: &Path, p: &Path) -> String {
    p.strip_prefix(base).unwrap_or(p).to_string_lossy().into_owned()
}

/// Re-runs the dataset recorded in a manifest into `out`.
pub fn replay(manifest_path: &Path, out: &Path, opts: &RunOptions) -> Result<RunManifest> {
    let old = RunManifest::load(manifest_path)?;
    let ds = old.dataset_spec()?;
    let expected: Vec<Vec<u64>> = ds
        .n_values()
        .iter()
        .map(|&n| (0..ds.samples).map(|i| sample_seed(ds.seed, &ds.name, n, i)).collect())
        .collect();
    if expected != old.seeds {
        return Err(Error::Config(format!("{}: recorded seeds do not match the seed derivation", manifest_path.display())));
    }
    let new = run_dataset(&ds, out, opts)?;
    if (new.p_star - old.p_star).abs() > 0.0 {
        return Err(Error::Internal(format!("well resolved to {} instead of {}", new.p_star, old.p_star)));
    }
    Ok(new)
}

pub(crate) fn list_missing(dir: &Path, rel: &[String]) -> Vec<PathBuf> {
    rel.iter().map(|r| dir.join(r)).filter(|p| !p.exists()).collect()
}
