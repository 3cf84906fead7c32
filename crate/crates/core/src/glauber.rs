//! Glauber dynamics for the ERGM.
//!
//! Each step picks a uniformly random pair `e` and a uniform `U ∈ [0, 1)`, and
//! sets `x(e) = 1` iff `U < φ(∂_e H(x))`, where
//! `∂_e H(x) = Σ_i β_i N_{G_i}(x, e) / n^{|V_i|-2}`. A step counts as a step
//! whether or not the edge changes.
//!
//! Coupled runs feed the same `(e, U)` draw to two states:
//! [`CouplingMode::Monotone`] applies the ERGM threshold to both, which keeps
//! edgewise order for ferromagnetic models; [`CouplingMode::ErdosRenyi`] applies
//! the fixed threshold `p_ref` to the second state, the per-step optimal coupling
//! of the ERGM update with a `G(n, p_ref)` resample.

use rand::Rng;

use crate::counts::{delta_count, fast_delta, hom_count, GraphKind, SmallGraph, MAX_COUNT_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{all_edges, sample_er, EdgeId, GraphState};
use crate::landscape::{logistic, ErgmSpec};
use crate::ChainRng;

/// Conventional run length `n³`.
pub fn default_steps(n: usize) -> u64 {
    (n as u64).pow(3)
}

#[derive(Debug, Clone)]
struct FieldTerm {
    graph: SmallGraph,
    /// `β_i / n^{|V_i| - 2}`
    coeff: f64,
}

/// Precomputed normalisations of `∂_e H` for a fixed vertex count.
#[derive(Debug, Clone)]
pub struct LocalField {
    n: usize,
    /// Contribution of the edge terms, whose change count is always 2.
    constant: f64,
    terms: Vec<FieldTerm>,
}

impl LocalField {
    pub fn new(spec: &ErgmSpec, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("dynamics need at least two vertices, got {n}")));
        }
        let mut terms = Vec::with_capacity(spec.graphs().len());
        let mut constant = 0.0;
        for (g, beta) in spec.terms() {
            if g.kind() == GraphKind::Generic && g.vertex_count() > MAX_COUNT_VERTICES {
                return Err(Error::InvalidSpec(format!(
                    "pattern on {} vertices is too large to simulate",
                    g.vertex_count()
                )));
            }
            if beta == 0.0 {
                continue;
            }
            let coeff = beta / (n as f64).powi(g.vertex_count() as i32 - 2);
            if g.kind() == GraphKind::Edge {
                constant += 2.0 * coeff;
            } else {
                terms.push(FieldTerm { graph: g.clone(), coeff });
            }
        }
        Ok(LocalField { n, constant, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `∂_e H(x)`; independent of the current value of `x(e)`.
    #[inline]
    pub fn delta_hamiltonian(&self, x: &GraphState, e: EdgeId) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|t| {
                    let count = match t.graph.kind() {
                        GraphKind::Generic => delta_count(&t.graph, x, e).expect("pattern size checked at construction"),
                        kind => fast_delta(kind, x, e).expect("specification kinds have fast counts"),
                    };
                    t.coeff * count as f64
                })
                .sum::<f64>()
    }

    /// Probability that a Glauber update at `e` leaves the edge present.
    #[inline]
    pub fn update_probability(&self, x: &GraphState, e: EdgeId) -> f64 {
        logistic(self.delta_hamiltonian(x, e))
    }
}

/// Hamiltonian `H(x) = Σ_i β_i N_{G_i}(x) / n^{|V_i|-2}` from full homomorphism counts.
pub fn hamiltonian(spec: &ErgmSpec, x: &GraphState) -> Result<f64> {
    let n = x.n() as f64;
    spec.terms().try_fold(0.0, |acc, (g, beta)| {
        Ok(acc + beta * hom_count(g, x)? as f64 / n.powi(g.vertex_count() as i32 - 2))
    })
}

pub fn delta_hamiltonian(spec: &ErgmSpec, x: &GraphState, e: EdgeId) -> Result<f64> {
    Ok(LocalField::new(spec, x.n())?.delta_hamiltonian(x, e))
}

pub fn update_probability(spec: &ErgmSpec, x: &GraphState, e: EdgeId) -> Result<f64> {
    Ok(LocalField::new(spec, x.n())?.update_probability(x, e))
}

/// The shared randomness of one step: a uniform pair and a uniform threshold draw.
#[inline]
fn draw<R: Rng>(rng: &mut R, n: usize) -> (EdgeId, f64) {
    // A uniform ordered pair of distinct vertices is a uniform unordered pair.
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    let u = rng.random::<f64>();
    (EdgeId::from_pair_unchecked(a.min(b), a.max(b), n), u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub edge: EdgeId,
    /// Value the update assigned to the edge.
    pub proposed_value: bool,
    /// Whether the graph changed.
    pub accepted_change: bool,
}

/// A single Glauber chain with its own random stream.
#[derive(Debug, Clone)]
pub struct ChainState<R = ChainRng> {
    x: GraphState,
    spec: ErgmSpec,
    field: LocalField,
    steps_taken: u64,
    rng: R,
}

impl<R: Rng> ChainState<R> {
    pub fn new(spec: ErgmSpec, x: GraphState, rng: R) -> Result<Self> {
        let field = LocalField::new(&spec, x.n())?;
        Ok(ChainState { x, spec, field, steps_taken: 0, rng })
    }

    pub fn step(&mut self) -> StepRecord {
        let (e, u) = draw(&mut self.rng, self.x.n());
        let value = u < self.field.update_probability(&self.x, e);
        let changed = self.x.set(e, value);
        self.steps_taken += 1;
        StepRecord { edge: e, proposed_value: value, accepted_change: changed }
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    pub fn state(&self) -> &GraphState {
        &self.x
    }

    pub fn into_state(self) -> GraphState {
        self.x
    }

    pub fn spec(&self) -> &ErgmSpec {
        &self.spec
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }
}

/// Warm-starts from `G(n, p_start)` and runs `steps` Glauber updates.
pub fn run_chain<R: Rng>(spec: &ErgmSpec, p_start: f64, n: usize, steps: u64, rng: &mut R) -> Result<GraphState> {
    let x0 = sample_er(n, p_start, rng)?;
    let mut chain = ChainState::new(spec.clone(), x0, rng)?;
    chain.run(steps);
    Ok(chain.into_state())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingMode {
    /// Both states follow the ERGM update.
    Monotone,
    /// The second state is resampled as `G(n, p_ref)` with the same uniform.
    ErdosRenyi(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStepRecord {
    pub edge: EdgeId,
    pub uniform: f64,
    pub a_changed: bool,
    pub b_changed: bool,
}

/// Two states driven by one random stream.
#[derive(Debug, Clone)]
pub struct CoupledPair<R = ChainRng> {
    a: GraphState,
    b: GraphState,
    field: LocalField,
    mode: CouplingMode,
    steps_taken: u64,
    differing: usize,
    rng: R,
}

impl<R: Rng> CoupledPair<R> {
    pub fn new(spec: &ErgmSpec, a: GraphState, b: GraphState, mode: CouplingMode, rng: R) -> Result<Self> {
        a.check_same_size(&b)?;
        if let CouplingMode::ErdosRenyi(p) = mode {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::Probability { what: "reference density", value: p });
            }
        }
        let field = LocalField::new(spec, a.n())?;
        let differing = a.hamming_distance(&b)?;
        Ok(CoupledPair { a, b, field, mode, steps_taken: 0, differing, rng })
    }

    pub fn step(&mut self) -> PairStepRecord {
        let (e, u) = draw(&mut self.rng, self.a.n());
        let before = self.a.contains(e) != self.b.contains(e);
        let a_changed = self.a.set(e, u < self.field.update_probability(&self.a, e));
        let threshold_b = match self.mode {
            CouplingMode::Monotone => self.field.update_probability(&self.b, e),
            CouplingMode::ErdosRenyi(p) => p,
        };
        let b_changed = self.b.set(e, u < threshold_b);
        let after = self.a.contains(e) != self.b.contains(e);
        match (before, after) {
            (false, true) => self.differing += 1,
            (true, false) => self.differing -= 1,
            _ => {}
        }
        self.steps_taken += 1;
        PairStepRecord { edge: e, uniform: u, a_changed, b_changed }
    }

    pub fn first(&self) -> &GraphState {
        &self.a
    }

    pub fn second(&self) -> &GraphState {
        &self.b
    }

    pub fn into_states(self) -> (GraphState, GraphState) {
        (self.a, self.b)
    }

    pub fn mode(&self) -> CouplingMode {
        self.mode
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }

    /// Current Hamming distance between the two states, maintained incrementally.
    pub fn hamming(&self) -> usize {
        self.differing
    }
}

/// ERGM chain `X` coupled to a `G(n, p_star)` chain `Y`, both started from one `G(n, p_star)` sample.
///
/// `Y` is exactly `G(n, p_star)`-distributed at every step.
pub fn run_coupled_er<R: Rng>(
    spec: &ErgmSpec,
    p_star: f64,
    n: usize,
    steps: u64,
    rng: &mut R,
) -> Result<(GraphState, GraphState)> {
    if !(p_star > 0.0 && p_star < 1.0) {
        return Err(Error::Probability { what: "p_star", value: p_star });
    }
    let z = sample_er(n, p_star, rng)?;
    let mut pair = CoupledPair::new(spec, z.clone(), z, CouplingMode::ErdosRenyi(p_star), rng)?;
    for _ in 0..steps {
        pair.step();
    }
    Ok(pair.into_states())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneRun {
    pub lower: GraphState,
    pub upper: GraphState,
    /// First step count at which the two states were equal, if they met.
    pub first_meet: Option<u64>,
}

/// Runs the monotone coupling from `lower ⪯ upper`.
pub fn run_monotone_pair<R: Rng>(
    spec: &ErgmSpec,
    lower: GraphState,
    upper: GraphState,
    steps: u64,
    rng: &mut R,
) -> Result<MonotoneRun> {
    if !lower.is_subgraph_of(&upper)? {
        return Err(Error::NotComparable);
    }
    let mut pair = CoupledPair::new(spec, lower, upper, CouplingMode::Monotone, rng)?;
    let mut first_meet = (pair.hamming() == 0).then_some(0);
    for _ in 0..steps {
        pair.step();
        if first_meet.is_none() && pair.hamming() == 0 {
            first_meet = Some(pair.steps_taken());
        }
    }
    let (lower, upper) = pair.into_states();
    Ok(MonotoneRun { lower, upper, first_meet })
}

/// Largest deviation `|r_G(x, e) - p|` over specification graphs with at least two
/// edges and all pairs `e`, where `r_G(x, e) = (N_G(x, e) / (2|E| n^{|V|-2}))^{1/(|E|-1)}`.
///
/// `x` lies in `Γ_{p,ε}` (restricted to the specification graphs) iff the result is at most `ε`.
pub fn gamma_radius(spec: &ErgmSpec, x: &GraphState, p: f64) -> Result<f64> {
    let graphs: Vec<&SmallGraph> = spec.graphs().iter().filter(|g| g.edge_count() >= 2).collect();
    if graphs.is_empty() {
        return Err(Error::InvalidSpec("no specification graph with two or more edges".into()));
    }
    let n = x.n() as f64;
    let mut worst: f64 = 0.0;
    for g in graphs {
        let m = g.edge_count() as f64;
        let norm = 2.0 * m * n.powi(g.vertex_count() as i32 - 2);
        for e in all_edges(x.n()) {
            let count = match g.kind() {
                GraphKind::Generic => delta_count(g, x, e)?,
                kind => fast_delta(kind, x, e)?,
            };
            let r = (count as f64 / norm).powf(1.0 / (m - 1.0));
            worst = worst.max((r - p).abs());
        }
    }
    Ok(worst)
}
