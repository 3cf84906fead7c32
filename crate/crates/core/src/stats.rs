//! Moments, log-log power law fits, the Kolmogorov–Smirnov distance to the
//! standard normal, and empirical edge covariances.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphState};

/// Points `(n, value)` of one measured statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct StatSeries {
    label: String,
    points: Vec<(usize, f64)>,
}

impl StatSeries {
    pub fn new(label: impl Into<String>, points: Vec<(usize, f64)>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Domain("series sizes must be strictly increasing".into()));
        }
        if let Some((n, v)) = points.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite value {v} at n = {n}")));
        }
        Ok(StatSeries { label: label.into(), points })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[(usize, f64)] {
        &self.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (denominator `m - 1`).
    pub std: f64,
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::NotEnoughData { needed: 1, got: 0 });
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

pub fn summary_stats(values: &[f64]) -> Result<Summary> {
    if values.len() < 2 {
        return Err(Error::NotEnoughData { needed: 2, got: values.len() });
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Ok(Summary { mean: m, std: (ss / (values.len() - 1) as f64).sqrt() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    /// Natural log of the prefactor.
    pub intercept: f64,
    /// Sum of squared residuals in log-log space.
    pub residual: f64,
}

impl PowerLawFit {
    pub fn prefactor(&self) -> f64 {
        self.intercept.exp()
    }
}

/// Ordinary least squares of `ln value` on `ln n`.
pub fn loglog_fit(series: &StatSeries) -> Result<PowerLawFit> {
    let pts = series.points();
    if pts.len() < 3 {
        return Err(Error::NotEnoughData { needed: 3, got: pts.len() });
    }
    if let Some((n, v)) = pts.iter().find(|(n, v)| *v <= 0.0 || *n == 0) {
        return Err(Error::Domain(format!("log-log fit of '{}' needs positive values, got {v} at n = {n}", series.label())));
    }
    let xs: Vec<f64> = pts.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|(_, v)| v.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(PowerLawFit { slope, intercept, residual })
}

/// Standard normal CDF.
pub fn normal_cdf(t: f64) -> f64 {
    0.5 * libm::erfc(-t / std::f64::consts::SQRT_2)
}

/// Kolmogorov–Smirnov distance between the standardised sample and `N(0, 1)`.
///
/// Values are shifted by the sample mean and scaled by the sample standard
/// deviation; both one-sided limits at each jump of the ECDF are compared.
pub fn ks_normal(values: &[f64]) -> Result<f64> {
    let Summary { mean, std } = summary_stats(values)?;
    if std.is_nan() || std <= 0.0 {
        return Err(Error::Degenerate("sample has zero variance".into()));
    }
    let mut z: Vec<f64> = values.iter().map(|v| (v - mean) / std).collect();
    z.sort_by(f64::total_cmp);
    let m = z.len() as f64;
    let d = z
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let cdf = normal_cdf(t);
            let above = (i + 1) as f64 / m - cdf;
            let below = cdf - i as f64 / m;
            above.max(below)
        })
        .fold(0.0, f64::max);
    Ok(d)
}

/// Unbiased sample covariance of the indicators `X(e)` and `X(e')`.
pub fn empirical_covariance(samples: &[GraphState], e: EdgeId, e2: EdgeId) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::NotEnoughData { needed: 2, got: samples.len() });
    }
    if e == e2 {
        return Err(Error::Domain("covariance needs two distinct edges".into()));
    }
    let m = samples.len() as f64;
    let (mut sa, mut sb, mut sab) = (0.0, 0.0, 0.0);
    for x in samples {
        let a = x.contains(e) as u8 as f64;
        let b = x.contains(e2) as u8 as f64;
        sa += a;
        sb += b;
        sab += a * b;
    }
    Ok((sab - sa * sb / m) / (m - 1.0))
}
