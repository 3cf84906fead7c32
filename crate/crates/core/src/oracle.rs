//! Exact enumeration of the Gibbs measure `μ̃(x) ∝ exp(H(x))` on tiny vertex sets.
//!
//! States are numbered by their edge bitmask in [`EdgeId`] index order (bit `k`
//! set iff edge `k` is present), so a failing state can be rebuilt with
//! [`GraphState::from_code`]. Weights are always recomputed from full
//! homomorphism counts, never from the fast change counts used by the dynamics.

use crate::error::{Error, Result};
use crate::glauber::{hamiltonian, LocalField};
use crate::graph::{all_edges, pair_count, EdgeId, GraphState};
use crate::landscape::{logistic, ErgmSpec};
use crate::par;

/// Largest vertex count for [`exact_distribution`] (2^15 states).
pub const MAX_EXACT_N: usize = 6;
/// Largest vertex count for [`verify_detailed_balance`].
pub const MAX_KERNEL_N: usize = 5;

#[derive(Debug, Clone)]
pub struct ExactModel {
    n: usize,
    spec: ErgmSpec,
    log_weights: Vec<f64>,
    probabilities: Vec<f64>,
}

pub fn exact_distribution(spec: &ErgmSpec, n: usize) -> Result<ExactModel> {
    if n > MAX_EXACT_N {
        return Err(Error::TooLarge { n, max: MAX_EXACT_N });
    }
    if n < 2 {
        return Err(Error::Domain(format!("need at least two vertices, got {n}")));
    }
    let states = 1usize << pair_count(n);
    let log_weights = par::map_range(states, |code| {
        let x = GraphState::from_code(n, code as u64).expect("code in range");
        hamiltonian(spec, &x)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let top = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weights.iter().map(|h| (h - top).exp()).collect();
    let z: f64 = weights.iter().sum();
    let probabilities = weights.into_iter().map(|w| w / z).collect();
    Ok(ExactModel { n, spec: spec.clone(), log_weights, probabilities })
}

impl ExactModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &ErgmSpec {
        &self.spec
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability_of(&self, x: &GraphState) -> Result<f64> {
        if x.n() != self.n {
            return Err(Error::SizeMismatch(x.n(), self.n));
        }
        Ok(self.probabilities[x.code().expect("small graph") as usize])
    }

    pub fn total_probability(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn edge_marginal(&self, e: EdgeId) -> f64 {
        let bit = 1usize << e.index();
        self.probabilities.iter().enumerate().filter(|(code, _)| code & bit != 0).map(|(_, p)| p).sum()
    }

    pub fn pair_covariance(&self, e: EdgeId, f: EdgeId) -> f64 {
        let both = (1usize << e.index()) | (1usize << f.index());
        let joint: f64 = self.probabilities.iter().enumerate().filter(|(code, _)| code & both == both).map(|(_, p)| p).sum();
        joint - self.edge_marginal(e) * self.edge_marginal(f)
    }

    pub fn expectation(&self, f: impl Fn(&GraphState) -> f64) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(code, p)| p * f(&GraphState::from_code(self.n, code as u64).expect("code in range")))
            .sum()
    }
}

/// What [`exact_moments`] should compute.
pub enum MomentQuery<'a> {
    EdgeMarginal(EdgeId),
    PairCovariance(EdgeId, EdgeId),
    Expectation(&'a dyn Fn(&GraphState) -> f64),
}

pub fn exact_moments(model: &ExactModel, query: MomentQuery<'_>) -> Result<f64> {
    let check = |e: &EdgeId| {
        if e.v() >= model.n {
            Err(Error::InvalidEdge { u: e.u(), v: e.v(), n: model.n })
        } else {
            Ok(())
        }
    };
    match query {
        MomentQuery::EdgeMarginal(e) => {
            check(&e)?;
            Ok(model.edge_marginal(e))
        }
        MomentQuery::PairCovariance(e, f) => {
            check(&e)?;
            check(&f)?;
            Ok(model.pair_covariance(e, f))
        }
        MomentQuery::Expectation(f) => Ok(model.expectation(f)),
    }
}

/// One-step Glauber transition probabilities out of `x`, as `(state code, probability)`,
/// computed from full Hamiltonian differences. The entry for `x` itself is the holding probability.
pub fn kernel_row(spec: &ErgmSpec, x: &GraphState) -> Result<Vec<(u64, f64)>> {
    let n = x.n();
    if n > MAX_EXACT_N {
        return Err(Error::TooLarge { n, max: MAX_EXACT_N });
    }
    let m = pair_count(n) as f64;
    let own = x.code().expect("small graph");
    let mut stay = 0.0;
    let mut row = Vec::new();
    for e in all_edges(n) {
        let plus = x.with_edge(e, true);
        let minus = x.with_edge(e, false);
        let q = logistic(hamiltonian(spec, &plus)? - hamiltonian(spec, &minus)?);
        let (to, p_move) = if x.contains(e) { (minus, 1.0 - q) } else { (plus, q) };
        row.push((to.code().expect("small graph"), p_move / m));
        stay += (1.0 - p_move) / m;
    }
    row.push((own, stay));
    Ok(row)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceReport {
    /// `max |μ̃(x)P(x,y) - μ̃(y)P(y,x)|` over all state pairs.
    pub max_abs: f64,
    /// The same residual relative to the larger of the two flows.
    pub max_rel: f64,
}

/// Builds the Glauber kernel from the dynamics' own update probabilities and checks
/// detailed balance against the exact measure.
///
/// Only pairs differing in one edge have nonzero flow, so the check runs over
/// those; every other off-diagonal pair has `P = 0` in both directions.
pub fn verify_detailed_balance(spec: &ErgmSpec, n: usize) -> Result<BalanceReport> {
    if n > MAX_KERNEL_N {
        return Err(Error::TooLarge { n, max: MAX_KERNEL_N });
    }
    let model = exact_distribution(spec, n)?;
    let field = LocalField::new(spec, n)?;
    let m = pair_count(n) as f64;
    let per_state = par::map_range(model.probabilities.len(), |code| {
        let x = GraphState::from_code(n, code as u64).expect("code in range");
        let mut worst = (0.0f64, 0.0f64);
        for e in all_edges(n) {
            if x.contains(e) {
                continue;
            }
            // x lacks e, y = x + e
            let y = x.with_edge(e, true);
            let q = field.update_probability(&x, e);
            let q_back = field.update_probability(&y, e);
            let forward = model.probabilities[code] * q / m;
            let backward = model.probabilities[y.code().expect("small graph") as usize] * (1.0 - q_back) / m;
            let abs = (forward - backward).abs();
            let scale = forward.abs().max(backward.abs());
            let rel = if scale > 0.0 { abs / scale } else { 0.0 };
            worst = (worst.0.max(abs), worst.1.max(rel));
        }
        worst
    });
    let (max_abs, max_rel) = per_state.into_iter().fold((0.0f64, 0.0f64), |acc, w| (acc.0.max(w.0), acc.1.max(w.1)));
    Ok(BalanceReport { max_abs, max_rel })
}

/// Everything `oracle-check` reports for one specification.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n: usize,
    pub states: usize,
    /// `|Σ μ̃ - 1|`
    pub normalization_error: f64,
    pub balance: BalanceReport,
    /// Spread of the exact edge marginals across edges (zero by vertex symmetry).
    pub marginal_spread: f64,
    pub edge_marginal: f64,
}

pub fn oracle_check(spec: &ErgmSpec, n: usize) -> Result<OracleReport> {
    let model = exact_distribution(spec, n)?;
    let balance = verify_detailed_balance(spec, n)?;
    let marginals: Vec<f64> = all_edges(n).map(|e| model.edge_marginal(e)).collect();
    let lo = marginals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = marginals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(OracleReport {
        n,
        states: model.probabilities.len(),
        normalization_error: (model.total_probability() - 1.0).abs(),
        balance,
        marginal_spread: hi - lo,
        edge_marginal: marginals[0],
    })
}
