//! Max-Cut problem instances and their Ising form.
//!
//! A [`Graph`] holds canonical weighted edges; [`SpinVector`] is a ±1
//! assignment; [`CouplingMatrix`] is the programmed machine state `J`.
//! The two objectives are tied together by
//! `H(σ) = Σ W − 2·cut(σ)` whenever `J = −W`.

mod coupling;
mod exact;
mod generate;
mod gset;

pub use coupling::{maxcut_to_ising, quantize_weights, CouplingMatrix};
pub use exact::{brute_force_maxcut, brute_force_maxcut_with_cap, DEFAULT_BRUTE_FORCE_CAP};
pub use generate::{gen_random_graph, gen_toroidal_grid, WeightModel};
pub use gset::{parse_gset, read_gset_file, serialize_gset};

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// One undirected weighted edge, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// Weighted undirected graph with canonical edge ordering.
///
/// Edges are sorted by `(i, j)`, have `i < j`, and appear once per pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    /// Builds a graph, canonicalizing `(i, j)` order and summing duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::contract("graph must have at least one vertex"));
        }
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::contract(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::contract(format!("self-loop at vertex {a}")));
            }
            if !w.is_finite() {
                return Err(Error::contract(format!("edge ({a}, {b}) has non-finite weight")));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            *merged.entry(key).or_insert(0.0) += w;
        }
        let edges: Vec<Edge> = merged.into_iter().map(|((i, j), w)| Edge { i, j, w }).collect();
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.i].push((e.j, e.w));
            adjacency[e.j].push((e.i, e.w));
        }
        for row in &mut adjacency {
            row.sort_by_key(|&(j, _)| j);
        }
        Ok(Graph { n, edges, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// `Σ W_ij` over all edges.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn max_abs_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |m, e| m.max(e.w.abs()))
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.n as f64
    }

    /// True when every weight is an integer small enough that sums stay exact.
    pub fn has_integer_weights(&self) -> bool {
        let abs_sum: f64 = self.edges.iter().map(|e| e.w.abs()).sum();
        abs_sum < 2f64.powi(52) && self.edges.iter().all(|e| e.w.fract() == 0.0)
    }
}

/// Assignment of a ±1 spin to every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinVector(Vec<i8>);

impl SpinVector {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some(pos) = spins.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::contract(format!("spin {pos} is {}, expected +1 or -1", spins[pos])));
        }
        Ok(SpinVector(spins))
    }

    pub fn all_up(n: usize) -> Self {
        SpinVector(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    /// Global flip `σ → −σ`.
    pub fn negated(&self) -> Self {
        SpinVector(self.0.iter().map(|&s| -s).collect())
    }

    pub fn into_vec(self) -> Vec<i8> {
        self.0
    }

    /// Compact text form, `+` for up and `-` for down.
    pub fn to_signs(&self) -> String {
        self.0.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }

    /// Spin vector from the low `n` bits of `mask`; a set bit means spin −1.
    pub(crate) fn from_down_mask(mask: u64, n: usize) -> Self {
        SpinVector((0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
    }
}

fn check_len(expected: usize, s: &SpinVector) -> Result<()> {
    if s.len() != expected {
        return Err(Error::contract(format!(
            "spin vector has length {} but the instance has {expected} vertices",
            s.len()
        )));
    }
    Ok(())
}

/// Total weight of edges whose endpoints carry different spins.
pub fn cut_value(g: &Graph, s: &SpinVector) -> Result<f64> {
    check_len(g.n(), s)?;
    let spins = s.as_slice();
    Ok(g.edges.iter().filter(|e| spins[e.i] != spins[e.j]).map(|e| e.w).sum())
}

/// Ising energy `H = −Σ_{i<j} J_ij σ_i σ_j` over the upper triangle of `J`.
pub fn ising_energy(j: &CouplingMatrix, s: &SpinVector) -> Result<f64> {
    check_len(j.n(), s)?;
    let spins = s.as_slice();
    let mut h = 0.0;
    for i in 0..j.n() {
        for (k, v) in j.row(i) {
            if k > i {
                h -= v * f64::from(spins[i]) * f64::from(spins[k]);
            }
        }
    }
    Ok(h)
}

/// Six-vertex example with mixed-sign weights whose maximum cut is 18.2,
/// reached by `{0, 1, 2, 4}` against `{3, 5}`.
///
/// The individual weights are an approximate transcription; only the optimum
/// value and the optimal partition are known to be right.
pub fn six_node_example() -> Graph {
    Graph::new(
        6,
        [
            (0, 3, 4.1),
            (1, 3, 3.5),
            (2, 5, 5.2),
            (4, 5, 2.9),
            (0, 5, 2.5),
            (3, 5, -1.5),
            (0, 1, -2.3),
            (1, 2, 1.2),
            (2, 4, -0.8),
        ],
    )
    .expect("static example graph is valid")
}
