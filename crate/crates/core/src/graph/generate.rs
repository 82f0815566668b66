//! Seeded random instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Edge weight distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightModel {
    /// Every edge weighs 1.
    Unit,
    /// +1 or −1 with equal probability.
    PlusMinusOne,
    /// Uniform integer in `[lo, hi]`, skipping zero.
    IntRange { lo: i64, hi: i64 },
    /// Uniform real in `[lo, hi)`.
    RealRange { lo: f64, hi: f64 },
}

impl std::str::FromStr for WeightModel {
    type Err = Error;

    /// `unit`, `pm1`, `int:LO:HI` or `real:LO:HI`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::config(format!("bad weight model `{s}`; expected unit, pm1, int:LO:HI or real:LO:HI"));
        let parts: Vec<&str> = s.split(':').collect();
        let m = match parts[..] {
            ["unit"] => WeightModel::Unit,
            ["pm1"] => WeightModel::PlusMinusOne,
            ["int", lo, hi] => {
                WeightModel::IntRange { lo: lo.parse().map_err(|_| bad())?, hi: hi.parse().map_err(|_| bad())? }
            }
            ["real", lo, hi] => {
                WeightModel::RealRange { lo: lo.parse().map_err(|_| bad())?, hi: hi.parse().map_err(|_| bad())? }
            }
            _ => return Err(bad()),
        };
        m.validate().map_err(|_| bad())?;
        Ok(m)
    }
}

impl WeightModel {
    fn validate(&self) -> Result<()> {
        match *self {
            WeightModel::Unit | WeightModel::PlusMinusOne => Ok(()),
            WeightModel::IntRange { lo, hi } => {
                if lo > hi || (lo == 0 && hi == 0) {
                    Err(Error::contract(format!("integer weight range [{lo}, {hi}] is empty")))
                } else {
                    Ok(())
                }
            }
            WeightModel::RealRange { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    Err(Error::contract(format!("real weight range [{lo}, {hi}) is empty")))
                } else {
                    Ok(())
                }
            }
        }
    }

    fn draw(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            WeightModel::Unit => 1.0,
            WeightModel::PlusMinusOne => {
                if rng.random_bool(0.5) {
                    1.0
                } else {
                    -1.0
                }
            }
            WeightModel::IntRange { lo, hi } => loop {
                let w = rng.random_range(lo..=hi);
                if w != 0 {
                    return w as f64;
                }
            },
            WeightModel::RealRange { lo, hi } => rng.random_range(lo..hi),
        }
    }
}

/// Erdős–Rényi style instance: every pair `i < j` is an edge with
/// probability `density`. Connectivity is not enforced.
pub fn gen_random_graph(n: usize, density: f64, weights: WeightModel, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::contract(format!("need at least 2 vertices, got {n}")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::contract(format!("density must be in (0, 1], got {density}")));
    }
    weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if density >= 1.0 || rng.random_bool(density) {
                edges.push((i, j, weights.draw(&mut rng)));
            }
        }
    }
    Graph::new(n, edges)
}

/// Two-dimensional toroidal grid of `rows × cols` vertices with weights
/// drawn from `weights`.
pub fn gen_toroidal_grid(rows: usize, cols: usize, weights: WeightModel, seed: u64) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::contract(format!("toroidal grid needs at least 3x3 vertices, got {rows}x{cols}")));
    }
    weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((idx(r, c), idx(r, (c + 1) % cols), weights.draw(&mut rng)));
            edges.push((idx(r, c), idx((r + 1) % rows, c), weights.draw(&mut rng)));
        }
    }
    Graph::new(rows * cols, edges)
}
