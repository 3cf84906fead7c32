//! Homomorphism counts of small pattern graphs and their per-edge changes.
//!
//! `N_G(x)` is the number of vertex maps `σ: V(G) → [n]` sending every edge of
//! `G` to an edge of `x`. Maps need not be injective, but an edge `{u, v}` with
//! `σ(u) = σ(v)` can never be preserved since `x` has no loops.
//!
//! [`hom_count`] and [`delta_count`] are the reference definitions. The
//! Glauber loop uses [`fast_delta`], which has a closed form for every
//! specification kind and is checked against [`delta_count`] exhaustively in
//! the test suite.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bits, EdgeId, GraphState};

/// Largest pattern accepted by the enumeration routines.
pub const MAX_COUNT_VERTICES: usize = 8;

/// Shape tag for the pattern graphs that have fast change counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Edge,
    TwoStar,
    Triangle,
    Tetrahedron,
    Hexagon,
    Generic,
}

impl GraphKind {
    pub const SPECIFICATION_KINDS: [GraphKind; 5] =
        [GraphKind::Edge, GraphKind::TwoStar, GraphKind::Triangle, GraphKind::Tetrahedron, GraphKind::Hexagon];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Edge => "edge",
            GraphKind::TwoStar => "two_star",
            GraphKind::Triangle => "triangle",
            GraphKind::Tetrahedron => "tetrahedron",
            GraphKind::Hexagon => "hexagon",
            GraphKind::Generic => "generic",
        }
    }

    /// Inverse of [`GraphKind::name`]; also accepts a few common spellings.
    pub fn parse(s: &str) -> Option<GraphKind> {
        match s.trim().to_ascii_lowercase().replace(['-', ' '], "_").as_str() {
            "edge" => Some(GraphKind::Edge),
            "two_star" | "twostar" | "2star" | "2_star" | "wedge" => Some(GraphKind::TwoStar),
            "triangle" | "k3" => Some(GraphKind::Triangle),
            "tetrahedron" | "k4" => Some(GraphKind::Tetrahedron),
            "hexagon" | "c6" => Some(GraphKind::Hexagon),
            _ => None,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pattern graph `G = (V, E)` on vertices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    k: usize,
    edges: Vec<(usize, usize)>,
    kind: GraphKind,
}

impl SmallGraph {
    pub fn edge() -> Self {
        Self::tagged(2, vec![(0, 1)], GraphKind::Edge)
    }

    /// Path on three vertices, centre 1.
    pub fn two_star() -> Self {
        Self::tagged(3, vec![(0, 1), (1, 2)], GraphKind::TwoStar)
    }

    pub fn triangle() -> Self {
        Self::tagged(3, vec![(0, 1), (0, 2), (1, 2)], GraphKind::Triangle)
    }

    pub fn tetrahedron() -> Self {
        Self::tagged(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], GraphKind::Tetrahedron)
    }

    pub fn hexagon() -> Self {
        Self::tagged(6, (0..6).map(|i| (i, (i + 1) % 6)).map(|(a, b)| (a.min(b), a.max(b))).collect(), GraphKind::Hexagon)
    }

    pub fn of_kind(kind: GraphKind) -> Result<Self> {
        Ok(match kind {
            GraphKind::Edge => Self::edge(),
            GraphKind::TwoStar => Self::two_star(),
            GraphKind::Triangle => Self::triangle(),
            GraphKind::Tetrahedron => Self::tetrahedron(),
            GraphKind::Hexagon => Self::hexagon(),
            GraphKind::Generic => return Err(Error::InvalidSmallGraph("generic graphs need an explicit edge list".into())),
        })
    }

    /// Arbitrary simple pattern. Patterns with more than [`MAX_COUNT_VERTICES`]
    /// vertices are allowed (the landscape only looks at `|E|`), but cannot be counted.
    pub fn generic(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidSmallGraph("at least one edge required".into()));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b || a >= k || b >= k {
                return Err(Error::InvalidSmallGraph(format!("bad edge ({a}, {b}) on {k} vertices")));
            }
            let e = (a.min(b), a.max(b));
            if canon.contains(&e) {
                return Err(Error::InvalidSmallGraph(format!("duplicate edge ({a}, {b})")));
            }
            canon.push(e);
        }
        Ok(SmallGraph { k, edges: canon, kind: GraphKind::Generic })
    }

    /// Some simple graph with exactly `m` edges: the lexicographically first `m`
    /// pairs of the smallest complete graph that has room for them.
    pub fn with_edge_count(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSmallGraph("at least one edge required".into()));
        }
        let mut k = 2;
        while k * (k - 1) / 2 < m {
            k += 1;
        }
        let edges: Vec<_> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).take(m).collect();
        Self::generic(k, &edges)
    }

    fn tagged(k: usize, edges: Vec<(usize, usize)>, kind: GraphKind) -> Self {
        SmallGraph { k, edges, kind }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.k];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Homomorphism count `N_G(x)` by depth-first enumeration of vertex maps.
///
/// Pattern vertices are placed in BFS order so that, within each connected
/// component, every vertex after the first has an already placed neighbour and
/// its candidates come from that neighbour's image row.
pub fn hom_count(g: &SmallGraph, x: &GraphState) -> Result<u64> {
    if g.k > MAX_COUNT_VERTICES {
        return Err(Error::TooLarge { n: g.k, max: MAX_COUNT_VERTICES });
    }
    let adj = g.adjacency();
    let order = bfs_order(&adj);
    let mut pos = vec![usize::MAX; g.k];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // For each placement step, the earlier-placed neighbours (as step indices).
    let back: Vec<Vec<usize>> =
        order.iter().enumerate().map(|(i, &v)| adj[v].iter().map(|&w| pos[w]).filter(|&j| j < i).collect()).collect();
    let mut images = vec![0usize; g.k];
    Ok(extend(0, &back, &mut images, x))
}

fn extend(step: usize, back: &[Vec<usize>], images: &mut [usize], x: &GraphState) -> u64 {
    if step == back.len() {
        return 1;
    }
    let mut total = 0;
    match back[step].split_first() {
        None => {
            for w in 0..x.n() {
                images[step] = w;
                total += extend(step + 1, back, images, x);
            }
        }
        Some((&anchor, rest)) => {
            let anchor_img = images[anchor];
            for w in bits(x.row(anchor_img)) {
                if rest.iter().all(|&j| x.has_edge(images[j], w)) {
                    images[step] = w;
                    total += extend(step + 1, back, images, x);
                }
            }
        }
    }
    total
}

fn bfs_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut order = Vec::with_capacity(adj.len());
    for root in 0..adj.len() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

/// Change count `N_G(x, e) = N_G(x^{+e}) - N_G(x^{-e})`, straight from the definition.
pub fn delta_count(g: &SmallGraph, x: &GraphState, e: EdgeId) -> Result<u64> {
    let plus = hom_count(g, &x.with_edge(e, true))?;
    let minus = hom_count(g, &x.with_edge(e, false))?;
    // Homomorphism counts are monotone in the edge set.
    plus.checked_sub(minus).ok_or_else(|| Error::Internal("homomorphism count decreased when adding an edge".into()))
}

/// Closed-form change count for the specification kinds.
///
/// Degrees are taken in `x^{-e}`; codegrees and the other quantities below
/// never involve the pair `{a, b}` itself, so the current value of `x(e)` does
/// not matter.
#[inline]
pub fn fast_delta(kind: GraphKind, x: &GraphState, e: EdgeId) -> Result<u64> {
    let (a, b) = e.endpoints();
    let present = x.contains(e) as u64;
    Ok(match kind {
        GraphKind::Edge => 2,
        GraphKind::TwoStar => {
            // N = Σ_v deg(v)², so adding {a,b} changes it by (d_a+1)² - d_a² + (d_b+1)² - d_b².
            let da = x.degree(a) as u64 - present;
            let db = x.degree(b) as u64 - present;
            2 * (da + db) + 2
        }
        GraphKind::Triangle => 6 * x.common_neighbors(a, b) as u64,
        GraphKind::Tetrahedron => 24 * x.edges_among_common(a, b) as u64,
        GraphKind::Hexagon => cycle_delta(x, e, 6),
        GraphKind::Generic => return Err(Error::UnsupportedKind(kind)),
    })
}

/// Change in `tr(A^len)` (closed walks of length `len`, i.e. `N_{C_len}`) when edge `e` is added.
///
/// Write `A` for the adjacency matrix of `x^{-e}` and `A + E` for `x^{+e}`, with
/// `E = e_a e_b^T + e_b e_a^T`. Expanding `tr((A+E)^len)` over words in `{A, E}`,
/// every word containing `E` has a trace that only involves the 2×2 blocks
/// `M_g = [(A^g)_{st}]_{s,t ∈ {a,b}}`, interleaved with the swap matrix. The blocks
/// come from walk vectors `A^i e_a`, `A^i e_b` for `i ≤ len/2`.
pub fn cycle_delta(x: &GraphState, e: EdgeId, len: usize) -> u64 {
    assert!(len >= 3, "cycles have at least three edges");
    let (a, b) = e.endpoints();
    let half = len / 2;
    let walks_a = walk_vectors(x, a, e, half);
    let walks_b = walk_vectors(x, b, e, half);
    let dot = |p: &[i128], q: &[i128]| -> i128 { p.iter().zip(q).map(|(s, t)| s * t).sum() };
    // blocks[g] = [[aa, ab], [ba, bb]] of A^g, g = 0..len-1.
    let blocks: Vec<[[i128; 2]; 2]> = (0..len)
        .map(|g| {
            let i = g.min(half);
            let j = g - i;
            let aa = dot(&walks_a[i], &walks_a[j]);
            let ab = dot(&walks_a[i], &walks_b[j]);
            let bb = dot(&walks_b[i], &walks_b[j]);
            [[aa, ab], [ab, bb]]
        })
        .collect();

    let mut total: i128 = 0;
    for mask in 1u32..(1 << len) {
        let positions: Vec<usize> = (0..len).filter(|p| mask >> p & 1 == 1).collect();
        let m = positions.len();
        // Product of (J · M_gap) around the cycle; J swaps rows.
        let mut prod = [[1i128, 0], [0, 1]];
        for (idx, &p) in positions.iter().enumerate() {
            let next = if idx + 1 < m { positions[idx + 1] } else { positions[0] + len };
            let gap = next - p - 1;
            let mb = blocks[gap];
            let jm = [mb[1], mb[0]];
            prod = mul2(&prod, &jm);
        }
        total += prod[0][0] + prod[1][1];
    }
    u64::try_from(total).expect("closed walk change count is nonnegative")
}

fn mul2(p: &[[i128; 2]; 2], q: &[[i128; 2]; 2]) -> [[i128; 2]; 2] {
    [
        [p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]],
        [p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]],
    ]
}

/// `A^i e_start` for `i = 0..=steps`, with `A` the adjacency of `x` minus the edge `skip`.
fn walk_vectors(x: &GraphState, start: usize, skip: EdgeId, steps: usize) -> Vec<Vec<i128>> {
    let n = x.n();
    let (sa, sb) = skip.endpoints();
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = vec![0i128; n];
    cur[start] = 1;
    out.push(cur.clone());
    for _ in 0..steps {
        let mut next = vec![0i128; n];
        for (u, &w) in cur.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for v in x.neighbors(u) {
                if (u == sa && v == sb) || (u == sb && v == sa) {
                    continue;
                }
                next[v] += w;
            }
        }
        out.push(next.clone());
        cur = next;
    }
    out
}
