use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

/// Sparse coupling matrix `J` in compressed-row form.
///
/// The diagonal is always zero. Rows keep their column indices sorted so
/// products are computed in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    symmetric: bool,
}

impl CouplingMatrix {
    /// Builds `J` from `(i, j, J_ij)` triples. Repeated entries are summed and
    /// exact zeros are dropped.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::contract(format!("entry ({i}, {j}) out of range for n = {n}")));
            }
            if i == j {
                return Err(Error::contract(format!("diagonal entry J[{i}][{i}] must be zero")));
            }
            if !v.is_finite() {
                return Err(Error::contract(format!("entry ({i}, {j}) is non-finite")));
            }
            *map.entry((i, j)).or_insert(0.0) += v;
        }
        map.retain(|_, v| *v != 0.0);

        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(map.len());
        let mut vals = Vec::with_capacity(map.len());
        for (&(i, j), &v) in &map {
            row_ptr[i + 1] += 1;
            cols.push(j);
            vals.push(v);
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let symmetric = map.iter().all(|(&(i, j), &v)| map.get(&(j, i)) == Some(&v));
        Ok(CouplingMatrix { n, row_ptr, cols, vals, symmetric })
    }

    /// Builds `J` from a dense square matrix; the diagonal must be zero.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::contract(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    if v != 0.0 {
                        return Err(Error::contract(format!("diagonal entry J[{i}][{i}] must be zero")));
                    }
                } else if v != 0.0 {
                    entries.push((i, j, v));
                }
            }
        }
        Self::from_entries(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// `J_ij = J_ji` holds exactly for every pair.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row_slices(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// Nonzero entries of row `i` as `(column, value)`, by ascending column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (cols, vals) = self.row_slices(i);
        cols.iter().copied().zip(vals.iter().copied())
    }

    #[inline]
    pub(crate) fn row_slices(&self, i: usize) -> (&[usize], &[f64]) {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.cols[range.clone()], &self.vals[range])
    }

    /// `Σ_j J_ij x_j` for row `i`.
    #[inline]
    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let (cols, vals) = self.row_slices(i);
        let mut acc = 0.0;
        for (&j, &v) in cols.iter().zip(vals) {
            acc += v * x[j];
        }
        acc
    }

    /// `out = J·x`, row by row in ascending column order.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row_dot(i, x);
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Σ_j |J_ij|` for row `i`.
    pub fn row_abs_sum(&self, i: usize) -> f64 {
        self.row_slices(i).1.iter().map(|v| v.abs()).sum()
    }

    /// Copy with every entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= factor;
        }
        out.symmetric = self.symmetric;
        out
    }

    /// Copy scaled so that `max|J_ij| = 1`; an all-zero matrix is returned as is.
    pub fn normalized(&self) -> Self {
        let m = self.max_abs();
        if m == 0.0 || m == 1.0 {
            self.clone()
        } else {
            self.scaled(1.0 / m)
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }

    fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v = f(*v);
        }
        // Identical inputs map to identical outputs, so symmetry is kept.
        out
    }
}

/// Max-Cut to Ising mapping: `J_ij = J_ji = −W_ij`.
pub fn maxcut_to_ising(g: &Graph) -> CouplingMatrix {
    let entries = g.edges().iter().flat_map(|e| [(e.i, e.j, -e.w), (e.j, e.i, -e.w)]);
    CouplingMatrix::from_entries(g.n(), entries).expect("graph edges are canonical")
}

/// Rounds coupling magnitudes to a `bits`-bit DAC grid.
///
/// Nonzero magnitudes go to the nearest of `L = 2^bits − 1` levels
/// `k·max|J|/L`, `k = 1..=L`; signs and zeros are preserved. A matrix whose
/// magnitudes are already integers no larger than `L` is directly
/// programmable and comes back unchanged.
pub fn quantize_weights(j: &CouplingMatrix, bits: u32) -> Result<CouplingMatrix> {
    if !(1..=16).contains(&bits) {
        return Err(Error::contract(format!("bits must be in 1..=16, got {bits}")));
    }
    let levels = (1u32 << bits) - 1;
    let max = j.max_abs();
    if max == 0.0 {
        return Ok(j.clone());
    }
    let on_integer_grid = j.vals.iter().all(|v| v.fract() == 0.0) && max <= f64::from(levels);
    if on_integer_grid {
        return Ok(j.clone());
    }
    let l = f64::from(levels);
    Ok(j.map_values(|v| {
        let k = (v.abs() * l / max).round().clamp(1.0, l);
        let mag = if k == l { max } else { max * k / l };
        mag.copysign(v)
    }))
}
