//! Reference Max-Cut solvers: Metropolis annealing, an idealized digital
//! annealer, and a Kuramoto oscillator machine.

mod asa;
mod oim;
mod sa;

pub use asa::{asa_solve, AsaResult, AsaSettings};
pub use oim::{kuramoto_derivative, kuramoto_lyapunov, oim_solve, phase_readout, OimRun, OimSettings, PhaseState};
pub use sa::{metropolis_accept, sa_solve, SaDecay, SaResult, SaSchedule};

use crate::graph::Graph;

/// Local fields `h_i = Σ_j W_ij s_j`; flipping `i` changes the cut by `s_i·h_i`.
pub(crate) fn local_fields(g: &Graph, s: &[i8]) -> Vec<f64> {
    (0..g.n()).map(|i| g.neighbors(i).iter().map(|&(j, w)| w * f64::from(s[j])).sum()).collect()
}

/// Applies a flip of node `i` to the cached fields.
#[inline]
pub(crate) fn flip(g: &Graph, s: &mut [i8], h: &mut [f64], i: usize) {
    let old = f64::from(s[i]);
    s[i] = -s[i];
    for &(j, w) in g.neighbors(i) {
        h[j] -= 2.0 * w * old;
    }
}
