//! Dataset configuration files.
//!
//! The format is flat `key = value` text. Blank lines and `#` comments are
//! ignored. `graph` and `beta` may repeat; they pair up in order and the first
//! graph must be `edge`:
//!
//! ```text
//! name = triangle_low
//! graph = edge
//! graph = two_star
//! graph = triangle
//! beta = -1
//! beta = 0.55
//! beta = 0.5
//! well = low
//! samples = 128
//! base = sqrt(2)
//! scales = 6..12
//! coupling = none
//! observables = total_edge_count, edge_count_around_vertex
//! seed = 20240501
//! ```
//!
//! `steps` optionally fixes the run length; the default is `n³`.

use std::fmt::Write as _;
use std::path::Path;

use crate::counts::{GraphKind, SmallGraph};
use crate::error::{Error, Result};
use crate::landscape::{ErgmSpec, WellHint};

use super::Observable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    None,
    ErdosRenyi,
}

impl Coupling {
    pub fn name(self) -> &'static str {
        match self {
            Coupling::None => "none",
            Coupling::ErdosRenyi => "erdos_renyi",
        }
    }
}

/// Base `b > 1` of the size ladder `n = ⌊b^s⌋`, kept with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct Base {
    text: String,
    value: f64,
}

impl Base {
    /// Accepts a number, `sqrt(a)`, or `a^(p/q)` / `a^e`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad base '{text}'")));
        let value = if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            num(inner)?.sqrt()
        } else if let Some((a, e)) = t.split_once('^') {
            let e = e.trim().trim_start_matches('(').trim_end_matches(')');
            let exp = match e.split_once('/') {
                Some((p, q)) => num(p)? / num(q)?,
                None => num(e)?,
            };
            num(a)?.powf(exp)
        } else {
            num(t)?
        };
        if !value.is_finite() || value <= 1.0 {
            return Err(Error::Config(format!("base must be a finite number > 1, got '{text}'")));
        }
        Ok(Base { text: t.to_string(), value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// `⌊b^s⌋`, with a relative guard of `1e-12` so exact powers such as `√2^6 = 8`
    /// are not floored down by rounding.
    pub fn size_at(&self, scale: i32) -> usize {
        (self.value.powi(scale) * (1.0 + 1e-12)).floor() as usize
    }
}

/// One experiment: model, well, size ladder, sample count and what to record.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub name: String,
    pub spec: ErgmSpec,
    pub well: WellHint,
    pub samples: usize,
    pub base: Base,
    pub scale_min: i32,
    pub scale_max: i32,
    pub coupling: Coupling,
    pub observables: Vec<Observable>,
    pub seed: u64,
    pub steps: Option<u64>,
}

impl DatasetSpec {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut kinds = Vec::new();
        let mut betas = Vec::new();
        let mut well = None;
        let mut samples = None;
        let mut base = None;
        let mut scales: Option<(i32, i32)> = None;
        let mut scale_min = None;
        let mut scale_max = None;
        let mut coupling = Coupling::None;
        let mut observables = None;
        let mut seed = None;
        let mut steps = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim().to_ascii_lowercase(), v.trim()))
                .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", lineno + 1)))?;
            let bad = |what: &str| Error::Config(format!("line {}: invalid {what} '{value}'", lineno + 1));
            match key.as_str() {
                "name" => name = Some(value.to_string()),
                "graph" => kinds.push(GraphKind::parse(value).ok_or_else(|| bad("graph"))?),
                "beta" => betas.push(value.parse::<f64>().map_err(|_| bad("beta"))?),
                "well" => well = Some(WellHint::parse(value).ok_or_else(|| bad("well"))?),
                "samples" => samples = Some(value.parse::<usize>().map_err(|_| bad("samples"))?),
                "base" => base = Some(Base::parse(value)?),
                "scales" => {
                    let (a, b) = value
                        .split_once("..")
                        .or_else(|| value.split_once('-'))
                        .ok_or_else(|| bad("scale range"))?;
                    let a = a.trim().parse().map_err(|_| bad("scale range"))?;
                    let b = b.trim().trim_start_matches('=').parse().map_err(|_| bad("scale range"))?;
                    scales = Some((a, b));
                }
                "scale_min" => scale_min = Some(value.parse().map_err(|_| bad("scale_min"))?),
                "scale_max" => scale_max = Some(value.parse().map_err(|_| bad("scale_max"))?),
                "coupling" => {
                    coupling = match value.to_ascii_lowercase().as_str() {
                        "none" => Coupling::None,
                        "erdos_renyi" | "erdos-renyi" | "er" => Coupling::ErdosRenyi,
                        _ => return Err(bad("coupling")),
                    }
                }
                "observables" => {
                    observables = Some(
                        value
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(|s| Observable::parse(s).ok_or_else(|| bad("observable")))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "seed" => seed = Some(value.parse::<u64>().map_err(|_| bad("seed"))?),
                "steps" => steps = Some(value.parse::<u64>().map_err(|_| bad("steps"))?),
                other => return Err(Error::Config(format!("line {}: unknown key '{other}'", lineno + 1))),
            }
        }

        let missing = |k: &str| Error::Config(format!("missing key '{k}'"));
        let (scale_min, scale_max) = match (scales, scale_min, scale_max) {
            (Some(r), None, None) => r,
            (None, Some(a), Some(b)) => (a, b),
            (None, None, None) => return Err(missing("scales")),
            _ => return Err(Error::Config("give either 'scales' or both 'scale_min' and 'scale_max'".into())),
        };
        let graphs = kinds.iter().map(|&k| SmallGraph::of_kind(k)).collect::<Result<Vec<_>>>()?;
        let spec = ErgmSpec::new(graphs, betas).map_err(|e| Error::Config(e.to_string()))?;
        let observables = observables.unwrap_or_else(|| Observable::defaults(coupling));
        let ds = DatasetSpec {
            name: name.ok_or_else(|| missing("name"))?,
            spec,
            well: well.ok_or_else(|| missing("well"))?,
            samples: samples.ok_or_else(|| missing("samples"))?,
            base: base.ok_or_else(|| missing("base"))?,
            scale_min,
            scale_max,
            coupling,
            observables,
            seed: seed.ok_or_else(|| missing("seed"))?,
            steps,
        };
        ds.validate()?;
        Ok(ds)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::Config(format!("invalid dataset name '{}'", self.name)));
        }
        if self.samples < 2 {
            return Err(Error::Config(format!("need at least 2 samples, got {}", self.samples)));
        }
        if self.scale_min > self.scale_max {
            return Err(Error::Config(format!("empty scale range {}..{}", self.scale_min, self.scale_max)));
        }
        if self.observables.is_empty() {
            return Err(Error::Config("no observables requested".into()));
        }
        if self.coupling == Coupling::None {
            if let Some(o) = self.observables.iter().find(|o| o.needs_coupling()) {
                return Err(Error::Config(format!("observable '{}' needs coupling = erdos_renyi", o.name())));
            }
        }
        let sizes = self.n_values_unchecked();
        if sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!("sizes {sizes:?} are not strictly increasing; use a larger base")));
        }
        if sizes[0] < 2 {
            return Err(Error::Config(format!("smallest size {} is below 2 vertices", sizes[0])));
        }
        Ok(())
    }

    fn n_values_unchecked(&self) -> Vec<usize> {
        (self.scale_min..=self.scale_max).map(|s| self.base.size_at(s)).collect()
    }

    /// Graph sizes `⌊b^s⌋` for every scale in the range.
    pub fn n_values(&self) -> Vec<usize> {
        self.n_values_unchecked()
    }

    pub fn steps_for(&self, n: usize) -> u64 {
        self.steps.unwrap_or_else(|| crate::glauber::default_steps(n))
    }

    /// Canonical configuration text; parses back to an equal spec.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name = {}", self.name);
        for g in self.spec.graphs() {
            let _ = writeln!(s, "graph = {}", g.kind().name());
        }
        for b in self.spec.betas() {
            let _ = writeln!(s, "beta = {b}");
        }
        let _ = writeln!(s, "well = {}", self.well);
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "base = {}", self.base.text());
        let _ = writeln!(s, "scales = {}..{}", self.scale_min, self.scale_max);
        let _ = writeln!(s, "coupling = {}", self.coupling.name());
        let names: Vec<&str> = self.observables.iter().map(|o| o.name()).collect();
        let _ = writeln!(s, "observables = {}", names.join(", "));
        let _ = writeln!(s, "seed = {}", self.seed);
        if let Some(t) = self.steps {
            let _ = writeln!(s, "steps = {t}");
        }
        s
    }

    /// The same dataset with the Erdős–Rényi coupling switched on and its statistics added.
    pub fn coupled(&self) -> Self {
        let mut ds = self.clone();
        ds.coupling = Coupling::ErdosRenyi;
        for o in Observable::COUPLING {
            if !ds.observables.contains(&o) {
                ds.observables.push(o);
            }
        }
        ds
    }
}

/// Reads only the `graph` and `beta` lines of a configuration; every other key is
/// ignored, so a full dataset file and a bare model file both work.
pub fn parse_spec(text: &str) -> Result<ErgmSpec> {
    let mut kinds = Vec::new();
    let mut betas = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let Some((key, value)) = line.split_once('=') else {
            if line.is_empty() {
                continue;
            }
            return Err(Error::Config(format!("line {}: expected 'key = value'", lineno + 1)));
        };
        let value = value.trim();
        let bad = |what: &str| Error::Config(format!("line {}: invalid {what} '{value}'", lineno + 1));
        match key.trim().to_ascii_lowercase().as_str() {
            "graph" => kinds.push(GraphKind::parse(value).ok_or_else(|| bad("graph"))?),
            "beta" => betas.push(value.parse::<f64>().map_err(|_| bad("beta"))?),
            _ => {}
        }
    }
    let graphs = kinds.iter().map(|&k| SmallGraph::of_kind(k)).collect::<Result<Vec<_>>>()?;
    ErgmSpec::new(graphs, betas).map_err(|e| Error::Config(e.to_string()))
}
