//! Lipschitz observables of a single sample and statistics of a coupled pair.

use crate::error::{Error, Result};
use crate::graph::{all_edges, pair_count, GraphState};

fn check_vertex(x: &GraphState, v: usize) -> Result<()> {
    if v >= x.n() {
        return Err(Error::InvalidVertex { v, n: x.n() });
    }
    Ok(())
}

/// Total edge count, or the degree of `v`.
pub fn edge_counts(x: &GraphState, v: Option<usize>) -> Result<usize> {
    match v {
        None => Ok(x.edge_count()),
        Some(v) => {
            check_vertex(x, v)?;
            Ok(x.degree(v))
        }
    }
}

/// Number of (unlabelled) triangles, or of triangles containing `v`.
pub fn triangle_counts(x: &GraphState, v: Option<usize>) -> Result<u64> {
    match v {
        None => {
            let through_edges: u64 = x.edges().map(|e| x.common_neighbors(e.u(), e.v()) as u64).sum();
            Ok(through_edges / 3)
        }
        Some(v) => {
            check_vertex(x, v)?;
            Ok(x.edges_within(x.row(v)) as u64)
        }
    }
}

/// `Z = X - Y` indexed by edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDifference {
    n: usize,
    entries: Vec<i8>,
}

impl SignedDifference {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn hamming(&self) -> usize {
        self.entries.iter().filter(|&&z| z != 0).count()
    }

    /// `Σ_e Z(e)`, the edge count difference.
    pub fn signed_discrepancy(&self) -> i64 {
        self.entries.iter().map(|&z| z as i64).sum()
    }

    /// `|Z|` as a graph.
    pub fn difference_graph(&self) -> GraphState {
        let mut g = GraphState::empty(self.n).expect("n >= 1");
        for e in all_edges(self.n) {
            if self.entries[e.index()] != 0 {
                g.set(e, true);
            }
        }
        g
    }
}

pub fn signed_difference(x: &GraphState, y: &GraphState) -> Result<SignedDifference> {
    x.check_same_size(y)?;
    let n = x.n();
    let mut entries = vec![0i8; pair_count(n)];
    for e in all_edges(n) {
        entries[e.index()] = x.contains(e) as i8 - y.contains(e) as i8;
    }
    Ok(SignedDifference { n, entries })
}

/// Mean over all vertices of the local clustering coefficient; vertices of degree < 2 count as 0.
pub fn average_clustering(g: &GraphState) -> f64 {
    let n = g.n();
    let total: f64 = (0..n)
        .map(|v| {
            let d = g.degree(v);
            if d < 2 {
                0.0
            } else {
                let closed = g.edges_within(g.row(v)) as f64;
                closed / (d * (d - 1) / 2) as f64
            }
        })
        .sum();
    total / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::{hom_count, SmallGraph};
    use crate::graph::sample_er;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> GraphState {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        GraphState::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn counts_on_small_graphs() {
        let empty = GraphState::empty(5).unwrap();
        assert_eq!(edge_counts(&empty, None).unwrap(), 0);
        assert_eq!(edge_counts(&empty, Some(2)).unwrap(), 0);
        let k4 = GraphState::complete(4).unwrap();
        assert_eq!(edge_counts(&k4, None).unwrap(), 6);
        assert_eq!(triangle_counts(&k4, None).unwrap(), 4);
        for v in 0..4 {
            assert_eq!(edge_counts(&k4, Some(v)).unwrap(), 3);
            assert_eq!(triangle_counts(&k4, Some(v)).unwrap(), 3);
        }
        let c5 = cycle(5);
        assert_eq!(triangle_counts(&c5, None).unwrap(), 0);
        assert!((0..5).all(|v| triangle_counts(&c5, Some(v)).unwrap() == 0));
        assert!(edge_counts(&k4, Some(4)).is_err());
        assert!(triangle_counts(&k4, Some(9)).is_err());
    }

    #[test]
    fn handshake_and_hom_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = sample_er(7, 0.5, &mut rng).unwrap();
            let local: usize = (0..7).map(|v| edge_counts(&x, Some(v)).unwrap()).sum();
            assert_eq!(2 * edge_counts(&x, None).unwrap(), local);
            let tri = triangle_counts(&x, None).unwrap();
            assert_eq!(6 * tri, hom_count(&SmallGraph::triangle(), &x).unwrap());
            let per_vertex: u64 = (0..7).map(|v| triangle_counts(&x, Some(v)).unwrap()).sum();
            assert_eq!(per_vertex, 3 * tri);
        }
    }

    #[test]
    fn differences() {
        let k4 = GraphState::complete(4).unwrap();
        let empty = GraphState::empty(4).unwrap();
        let same = signed_difference(&k4, &k4).unwrap();
        assert_eq!((same.hamming(), same.signed_discrepancy()), (0, 0));
        assert_eq!(same.difference_graph().edge_count(), 0);
        let d = signed_difference(&empty, &k4).unwrap();
        assert_eq!(d.hamming(), 6);
        assert_eq!(d.signed_discrepancy(), -6);
        assert!(signed_difference(&k4, &GraphState::empty(5).unwrap()).is_err());
    }

    #[test]
    fn random_pair_aggregates() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let x = sample_er(12, 0.4, &mut rng).unwrap();
            let y = sample_er(12, 0.6, &mut rng).unwrap();
            let d = signed_difference(&x, &y).unwrap();
            assert_eq!(d.hamming(), x.hamming_distance(&y).unwrap());
            assert_eq!(d.signed_discrepancy(), x.edge_count() as i64 - y.edge_count() as i64);
            assert_eq!(d.difference_graph().edge_count(), d.hamming());
            let rev = signed_difference(&y, &x).unwrap();
            assert_eq!(rev.signed_discrepancy(), -d.signed_discrepancy());
            let z = sample_er(12, 0.5, &mut rng).unwrap();
            assert!(x.hamming_distance(&z).unwrap() <= d.hamming() + y.hamming_distance(&z).unwrap());
        }
    }

    #[test]
    fn clustering() {
        assert_eq!(average_clustering(&GraphState::complete(3).unwrap()), 1.0);
        let star = GraphState::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(average_clustering(&star), 0.0);
        let mut k4 = GraphState::complete(4).unwrap();
        k4.set(k4.edge(0, 1).unwrap(), false);
        assert!((average_clustering(&k4) - 5.0 / 6.0).abs() < 1e-15);
    }

    /// Maximum change of `f` over single-edge flips of graphs on `n` vertices.
    fn max_flip_change(n: usize, states: &[GraphState], f: impl Fn(&GraphState) -> i64) -> i64 {
        let mut worst = 0;
        for x in states {
            for e in all_edges(n) {
                let y = x.with_edge(e, !x.contains(e));
                worst = worst.max((f(x) - f(&y)).abs());
            }
        }
        worst
    }

    #[test]
    fn lipschitz_constants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [4usize, 6, 8] {
            let mut states: Vec<_> = (0..30).map(|_| sample_er(n, 0.5, &mut rng).unwrap()).collect();
            states.push(GraphState::complete(n).unwrap());
            states.push(GraphState::empty(n).unwrap());
            assert_eq!(max_flip_change(n, &states, |x| edge_counts(x, None).unwrap() as i64), 1);
            assert_eq!(max_flip_change(n, &states, |x| triangle_counts(x, None).unwrap() as i64), n as i64 - 2);
            // degree of vertex 0 only moves on its n - 1 incident pairs
            for x in &states {
                let moved = all_edges(n)
                    .filter(|&e| {
                        let y = x.with_edge(e, !x.contains(e));
                        edge_counts(x, Some(0)).unwrap() != edge_counts(&y, Some(0)).unwrap()
                    })
                    .count();
                assert_eq!(moved, n - 1);
            }
        }
    }
}
