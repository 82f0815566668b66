//! The bistable resistively-coupled machine: node model, annealing,
//! perturbation, integration and readout.

mod integrate;
mod schedule;
mod system;
mod ziv;

pub use integrate::{
    integrate, BrimConfig, BrimRun, BrimSettings, InitPolicy, IntegratorKind, PerturbPolicy, Trace, TraceSample,
};
pub use schedule::{anneal_gain, AnnealSchedule, AnnealShape};
pub use system::{
    double_well, lyapunov_value, node_derivative_normalized, node_derivative_physical, BrimModel, BrimSystem,
    NodeParams,
};
pub use ziv::{ziv_current, ZivParams, ZivShape};

use crate::error::{Error, Result};
use crate::graph::SpinVector;

/// Node voltages at model time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeState {
    pub v: Vec<f64>,
    pub t: f64,
}

impl NodeState {
    pub fn new(v: Vec<f64>, t: f64) -> Self {
        NodeState { v, t }
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }
}

/// Threshold each voltage at zero; exactly zero reads as +1.
pub fn readout(state: &NodeState) -> SpinVector {
    SpinVector::new(state.v.iter().map(|&x| if x < 0.0 { -1 } else { 1 }).collect()).expect("readout yields ±1")
}

/// Negates the voltages of the selected nodes.
pub fn perturb(state: &NodeState, indices: &[usize]) -> Result<NodeState> {
    let n = state.n();
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(Error::contract(format!("perturbation index {i} out of range for {n} nodes")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::contract(format!("perturbation index {i} listed twice")));
        }
    }
    let mut out = state.clone();
    for &i in indices {
        out.v[i] = -out.v[i];
    }
    Ok(out)
}
