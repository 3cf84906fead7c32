//! Dataset runs: configuration, per-sample seeding, parallel sample generation,
//! CSV output and the post-run analysis.
//!
//! A run directory looks like
//!
//! ```text
//! out/
//!   manifest.json
//!   raw/<observable>_n<N>.csv      one `value` row per sample
//!   <observable>_means.csv         `x,y` rows, one per n
//!   <observable>_stds.csv
//!   <observable>_kss.csv
//!   fits.csv                       `label,slope,intercept,residual`
//! ```

mod analyze;
mod config;
mod output;
mod runner;
mod seed;

pub use analyze::{analyze, AnalysisReport, FitRow};
pub use config::{parse_spec, Base, Coupling, DatasetSpec};
pub use output::{emit_histogram, emit_series, format_value, read_histogram, read_series};
pub use runner::{replay, run_dataset, simulate_sample, RunManifest, RunOptions, MANIFEST_FILE, RAW_DIR};
pub use seed::sample_seed;

use crate::error::Result;
use crate::glauber::gamma_radius;
use crate::graph::GraphState;
use crate::landscape::ErgmSpec;
use crate::observables::{average_clustering, edge_counts, signed_difference, triangle_counts};

/// Vertex used by the local observables.
pub const ANCHOR_VERTEX: usize = 0;

/// Quantities recorded per sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    TotalEdgeCount,
    EdgeCountAroundVertex,
    TotalTriangleCount,
    TriangleCountAroundVertex,
    /// Well-residency diagnostic: max over pattern graphs and pairs of `|r_G(x, e) - p*|`.
    GammaRadius,
    HammingDistance,
    /// Edges of the ERGM sample minus edges of the coupled `G(n, p*)` sample.
    SignedDiscrepancy,
    /// Average clustering of the difference graph `|X - Y|`.
    DifferenceClustering,
}

impl Observable {
    pub const LIPSCHITZ: [Observable; 4] = [
        Observable::TotalEdgeCount,
        Observable::EdgeCountAroundVertex,
        Observable::TotalTriangleCount,
        Observable::TriangleCountAroundVertex,
    ];

    pub const COUPLING: [Observable; 3] =
        [Observable::HammingDistance, Observable::SignedDiscrepancy, Observable::DifferenceClustering];

    pub const ALL: [Observable; 8] = [
        Observable::TotalEdgeCount,
        Observable::EdgeCountAroundVertex,
        Observable::TotalTriangleCount,
        Observable::TriangleCountAroundVertex,
        Observable::GammaRadius,
        Observable::HammingDistance,
        Observable::SignedDiscrepancy,
        Observable::DifferenceClustering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::TotalEdgeCount => "total_edge_count",
            Observable::EdgeCountAroundVertex => "edge_count_around_vertex",
            Observable::TotalTriangleCount => "total_triangle_count",
            Observable::TriangleCountAroundVertex => "triangle_count_around_vertex",
            Observable::GammaRadius => "gamma_radius",
            Observable::HammingDistance => "hamming_distance",
            Observable::SignedDiscrepancy => "added_minus_removed",
            Observable::DifferenceClustering => "difference_clustering",
        }
    }

    pub fn parse(s: &str) -> Option<Observable> {
        Self::ALL.into_iter().find(|o| o.name() == s.trim())
    }

    pub fn needs_coupling(self) -> bool {
        Self::COUPLING.contains(&self)
    }

    pub fn defaults(coupling: Coupling) -> Vec<Observable> {
        let mut v = Self::LIPSCHITZ.to_vec();
        if coupling == Coupling::ErdosRenyi {
            v.extend(Self::COUPLING);
        }
        v
    }

    /// Value for the ERGM sample `x` and, in coupled runs, its reference sample `y`.
    pub fn measure(self, spec: &ErgmSpec, p_star: f64, x: &GraphState, y: Option<&GraphState>) -> Result<f64> {
        let paired = || {
            y.ok_or_else(|| crate::Error::Config(format!("observable '{}' needs a coupled run", self.name())))
        };
        Ok(match self {
            Observable::TotalEdgeCount => edge_counts(x, None)? as f64,
            Observable::EdgeCountAroundVertex => edge_counts(x, Some(ANCHOR_VERTEX))? as f64,
            Observable::TotalTriangleCount => triangle_counts(x, None)? as f64,
            Observable::TriangleCountAroundVertex => triangle_counts(x, Some(ANCHOR_VERTEX))? as f64,
            Observable::GammaRadius => gamma_radius(spec, x, p_star)?,
            Observable::HammingDistance => signed_difference(x, paired()?)?.hamming() as f64,
            Observable::SignedDiscrepancy => signed_difference(x, paired()?)?.signed_discrepancy() as f64,
            Observable::DifferenceClustering => average_clustering(&signed_difference(x, paired()?)?.difference_graph()),
        })
    }
}
