//! The free energy of constant graphons,
//! `L(p) = Σ_i β_i p^{|E_i|} - I(p)` with `I(p) = ½ p ln p + ½ (1-p) ln(1-p)`,
//! its stationary points and the resulting regime.
//!
//! Local maxima with `L'' < 0` are the well densities `p*`; equivalently the
//! attracting fixed points of `φ_β(p) = φ(Ψ_β(p))`,
//! `Ψ_β(p) = Σ_i 2 β_i |E_i| p^{|E_i|-1}`.

use crate::counts::{GraphKind, SmallGraph};
use crate::error::{Error, Result};

/// Grid resolution used by [`classify_regime`].
pub const DEFAULT_GRID: usize = 10_000;
/// Root tolerance on `|L'|` used by [`classify_regime`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Stationary points with `|L''|` at most this are degenerate.
pub const DEGENERACY_TOL: f64 = 1e-6;
/// Numeric well hints further than this from every local maximum are rejected.
pub const MAX_HINT_DISTANCE: f64 = 0.1;

const GRID_MARGIN: f64 = 1e-6;

/// An ERGM specification: pattern graphs `G_0..G_K` (with `G_0` a single edge) and parameters `β_0..β_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErgmSpec {
    graphs: Vec<SmallGraph>,
    betas: Vec<f64>,
}

impl ErgmSpec {
    pub fn new(graphs: Vec<SmallGraph>, betas: Vec<f64>) -> Result<Self> {
        if graphs.is_empty() {
            return Err(Error::InvalidSpec("at least the edge term is required".into()));
        }
        if graphs.len() != betas.len() {
            return Err(Error::InvalidSpec(format!("{} graphs but {} parameters", graphs.len(), betas.len())));
        }
        if graphs[0].kind() != GraphKind::Edge {
            return Err(Error::InvalidSpec("the first graph must be a single edge".into()));
        }
        if let Some(b) = betas.iter().find(|b| !b.is_finite()) {
            return Err(Error::InvalidSpec(format!("parameter {b} is not finite")));
        }
        if let Some((i, b)) = betas.iter().enumerate().skip(1).find(|(_, b)| **b < 0.0) {
            return Err(Error::InvalidSpec(format!("beta_{i} = {b} is negative; only ferromagnetic models are supported")));
        }
        Ok(ErgmSpec { graphs, betas })
    }

    /// Specification from kinds, e.g. `[Edge, TwoStar, Triangle]`.
    pub fn from_kinds(kinds: &[GraphKind], betas: &[f64]) -> Result<Self> {
        let graphs = kinds.iter().map(|&k| SmallGraph::of_kind(k)).collect::<Result<Vec<_>>>()?;
        Self::new(graphs, betas.to_vec())
    }

    /// Erdős–Rényi model written as an edge-only ERGM.
    pub fn edge_only(beta0: f64) -> Self {
        Self::new(vec![SmallGraph::edge()], vec![beta0]).expect("edge-only spec is valid")
    }

    /// Edge, two-star and one more pattern, the layout of every dataset model.
    pub fn edge_two_star_and(third: SmallGraph, betas: [f64; 3]) -> Result<Self> {
        Self::new(vec![SmallGraph::edge(), SmallGraph::two_star(), third], betas.to_vec())
    }

    pub fn graphs(&self) -> &[SmallGraph] {
        &self.graphs
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SmallGraph, f64)> {
        self.graphs.iter().zip(self.betas.iter().copied())
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.graphs.iter().map(SmallGraph::edge_count).collect()
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        self.graphs.iter().map(SmallGraph::vertex_count).collect()
    }
}

/// `I(p) = ½ p ln p + ½ (1-p) ln(1-p)`, with `I(0) = I(1) = 0`.
pub fn entropy_i(p: f64) -> Result<f64> {
    check_closed(p)?;
    let xlogx = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() };
    Ok(0.5 * xlogx(p) + 0.5 * xlogx(1.0 - p))
}

/// `L(p)` on the closed interval.
pub fn landscape_value(spec: &ErgmSpec, p: f64) -> Result<f64> {
    check_closed(p)?;
    let energy: f64 = spec.terms().map(|(g, b)| b * p.powi(g.edge_count() as i32)).sum();
    Ok(energy - entropy_i(p)?)
}

/// `L`, `L'` and `L''` at an interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapePoint {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

pub fn landscape_eval(spec: &ErgmSpec, p: f64) -> Result<LandscapePoint> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("derivatives of L need p in (0, 1), got {p}")));
    }
    Ok(eval_interior(spec, p))
}

fn eval_interior(spec: &ErgmSpec, p: f64) -> LandscapePoint {
    let mut value = 0.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for (g, b) in spec.terms() {
        let m = g.edge_count() as i32;
        let mf = m as f64;
        value += b * p.powi(m);
        d1 += b * mf * p.powi(m - 1);
        if m >= 2 {
            d2 += b * mf * (mf - 1.0) * p.powi(m - 2);
        }
    }
    let q = 1.0 - p;
    value -= 0.5 * p * p.ln() + 0.5 * q * q.ln();
    d1 -= 0.5 * (p / q).ln();
    d2 -= 0.5 / (p * q);
    LandscapePoint { value, d1, d2 }
}

/// Numerically stable logistic `φ(z) = e^z / (1 + e^z)`.
#[inline]
pub fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let t = z.exp();
        t / (1.0 + t)
    }
}

/// `(Ψ_β(p), φ_β(p))`.
pub fn psi_phi(spec: &ErgmSpec, p: f64) -> Result<(f64, f64)> {
    check_closed(p)?;
    let psi: f64 = spec
        .terms()
        .map(|(g, b)| {
            let m = g.edge_count() as i32;
            2.0 * b * m as f64 * p.powi(m - 1)
        })
        .sum();
    Ok((psi, logistic(psi)))
}

/// Derivative of `φ_β` at `p`.
pub fn phi_derivative(spec: &ErgmSpec, p: f64) -> Result<f64> {
    let (_, phi) = psi_phi(spec, p)?;
    let dpsi: f64 = spec
        .terms()
        .filter(|(g, _)| g.edge_count() >= 2)
        .map(|(g, b)| {
            let m = g.edge_count() as f64;
            2.0 * b * m * (m - 1.0) * p.powi(g.edge_count() as i32 - 2)
        })
        .sum();
    Ok(phi * (1.0 - phi) * dpsi)
}

fn check_closed(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Probability { what: "p", value: p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    LocalMax,
    LocalMin,
    Degenerate,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::LocalMax => "local_max",
            PointKind::LocalMin => "local_min",
            PointKind::Degenerate => "degenerate",
        }
    }

    fn classify(d2: f64) -> Self {
        if d2 < -DEGENERACY_TOL {
            PointKind::LocalMax
        } else if d2 > DEGENERACY_TOL {
            PointKind::LocalMin
        } else {
            PointKind::Degenerate
        }
    }
}

/// A solution of `L'(p) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub p: f64,
    pub value: f64,
    pub d2: f64,
    pub kind: PointKind,
}

/// Sign changes of `L'` on a uniform grid over `[1e-6, 1 - 1e-6]`, refined by bisection.
///
/// Bisection stops when `|L'| <= tol` or the bracket can no longer be split in
/// floating point.
pub fn find_stationary_points(spec: &ErgmSpec, grid: usize, tol: f64) -> Result<Vec<StationaryPoint>> {
    if grid < 1000 {
        return Err(Error::Domain(format!("grid of {grid} points is too coarse (need >= 1000)")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("root tolerance must be positive, got {tol}")));
    }
    let lo = GRID_MARGIN;
    let hi = 1.0 - GRID_MARGIN;
    let step = (hi - lo) / (grid - 1) as f64;
    let d1 = |p: f64| eval_interior(spec, p).d1;

    let mut roots = Vec::new();
    let mut prev_p = lo;
    let mut prev = d1(lo);
    for i in 1..grid {
        let p = if i == grid - 1 { hi } else { lo + step * i as f64 };
        let cur = d1(p);
        if prev == 0.0 {
            roots.push(prev_p);
        } else if prev.signum() != cur.signum() && cur != 0.0 {
            roots.push(bisect(&d1, prev_p, p, prev, tol));
        }
        prev_p = p;
        prev = cur;
    }
    if prev == 0.0 {
        roots.push(prev_p);
    }
    if roots.is_empty() {
        return Err(Error::Internal("L' has no sign change on (0, 1)".into()));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| (*b - *a).abs() <= 10.0 * tol);

    Ok(roots
        .into_iter()
        .map(|p| {
            let pt = eval_interior(spec, p);
            StationaryPoint { p, value: pt.value, d2: pt.d2, kind: PointKind::classify(pt.d2) }
        })
        .collect())
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    loop {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm.abs() <= tol || mid <= a || mid >= b {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Subcritical,
    Supercritical,
    Critical,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Subcritical => "subcritical",
            Regime::Supercritical => "supercritical",
            Regime::Critical => "critical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub stationary_points: Vec<StationaryPoint>,
    /// Global maximisers `M_β`.
    pub global_maximizers: Vec<StationaryPoint>,
    /// Global maximisers with `L'' < 0`, `U_β`.
    pub strict_global_maximizers: Vec<StationaryPoint>,
}

impl RegimeReport {
    /// Local maxima with strictly negative second derivative.
    pub fn wells(&self) -> impl Iterator<Item = &StationaryPoint> {
        self.stationary_points.iter().filter(|s| s.kind == PointKind::LocalMax)
    }

    pub fn is_global(&self, point: &StationaryPoint) -> bool {
        self.global_maximizers.iter().any(|g| g.p == point.p)
    }

    /// Resolves a well hint to the density of a local maximum with `L'' < 0`.
    pub fn resolve_well(&self, hint: WellHint) -> Result<f64> {
        let wells: Vec<f64> = self.wells().map(|s| s.p).collect();
        let (first, last) = match (wells.first(), wells.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::Config("the model has no local maximum with negative curvature".into())),
        };
        match hint {
            WellHint::Low => Ok(first),
            WellHint::High => Ok(last),
            WellHint::Near(target) => {
                let best = wells.iter().copied().min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs())).unwrap();
                if (best - target).abs() > MAX_HINT_DISTANCE {
                    return Err(Error::Config(format!("no well near p = {target}; wells are at {wells:?}")));
                }
                Ok(best)
            }
        }
    }
}

/// Which well a caller wants to sample from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WellHint {
    Low,
    High,
    Near(f64),
}

impl WellHint {
    pub fn parse(s: &str) -> Option<WellHint> {
        match s.trim().to_ascii_lowercase().as_str() {
            "low" => Some(WellHint::Low),
            "high" => Some(WellHint::High),
            other => other.parse::<f64>().ok().filter(|p| *p > 0.0 && *p < 1.0).map(WellHint::Near),
        }
    }
}

impl std::fmt::Display for WellHint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WellHint::Low => f.write_str("low"),
            WellHint::High => f.write_str("high"),
            WellHint::Near(p) => write!(f, "{p}"),
        }
    }
}

pub fn classify_regime(spec: &ErgmSpec) -> Result<RegimeReport> {
    let points = find_stationary_points(spec, DEFAULT_GRID, DEFAULT_ROOT_TOL)?;
    let best = points.iter().map(|s| s.value).fold(f64::NEG_INFINITY, f64::max);
    let scale = points.iter().map(|s| s.value.abs()).fold(0.0, f64::max);
    let value_tol = 1e-9 * scale;
    let global: Vec<StationaryPoint> = points.iter().copied().filter(|s| s.value >= best - value_tol).collect();
    let strict: Vec<StationaryPoint> = global.iter().copied().filter(|s| s.d2 < -DEGENERACY_TOL).collect();

    let maxima = points.iter().filter(|s| s.kind == PointKind::LocalMax).count();
    let degenerate = points.iter().any(|s| s.kind == PointKind::Degenerate);
    let regime = if maxima >= 2 {
        Regime::Supercritical
    } else if maxima == 1 && !degenerate {
        Regime::Subcritical
    } else {
        Regime::Critical
    };
    Ok(RegimeReport { regime, stationary_points: points, global_maximizers: global, strict_global_maximizers: strict })
}
