//! Node vector fields and their Lyapunov functions.
//!
//! Two models share one structure, `dv/dt = −κ·∂H/∂v`:
//!
//! * normalized: `τ·dv_i/dt = c·Σ_j J_ij v_j + λ(v_i − v_i³)`, rails at ±1;
//! * physical: `2C·dv_i/dt = I_X − I_R − g_D(2v_i)` with coupling resistors
//!   `R_ij = R_C/|J_ij|`. Both the signed coupling current and the load those
//!   resistors place on the node scale with the gain `c`.

use super::ziv::{ziv_current, ZivParams};
use super::NodeState;
use crate::error::{Error, Result};
use crate::graph::{maxcut_to_ising, CouplingMatrix, Graph};

/// Circuit constants of one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeParams {
    pub capacitance: f64,
    /// Leak resistor `R`; `f64::INFINITY` removes it.
    pub leak_resistance: f64,
    /// Base coupling resistance `R_C`.
    pub coupling_resistance: f64,
    pub ziv: ZivParams,
}

impl NodeParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && !v.is_nan() {
                Ok(())
            } else {
                Err(Error::config(format!("{name} must be > 0, got {v}")))
            }
        };
        positive("capacitance", self.capacitance)?;
        positive("leak_resistance", self.leak_resistance)?;
        positive("coupling_resistance", self.coupling_resistance)?;
        if !self.capacitance.is_finite() || !self.coupling_resistance.is_finite() {
            return Err(Error::config("capacitance and coupling_resistance must be finite"));
        }
        self.ziv.validate()
    }
}

/// Which node equation to integrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BrimModel {
    Normalized { lambda: f64, tau: f64 },
    Physical(NodeParams),
}

impl BrimModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BrimModel::Normalized { lambda, tau } => {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(Error::config(format!("lambda must be > 0, got {lambda}")));
                }
                if !(tau > 0.0 && tau.is_finite()) {
                    return Err(Error::config(format!("tau must be > 0, got {tau}")));
                }
                Ok(())
            }
            BrimModel::Physical(p) => p.validate(),
        }
    }

    /// Stable zero of the bistable element, in its own voltage units.
    pub fn v_stable(&self) -> f64 {
        match self {
            BrimModel::Normalized { .. } => 1.0,
            BrimModel::Physical(p) => p.ziv.v_stable,
        }
    }

    /// Node voltage a lone node settles to. The physical element sees the
    /// differential voltage `2v`, so its rail sits at half the element zero.
    pub fn rail(&self) -> f64 {
        match self {
            BrimModel::Normalized { .. } => 1.0,
            BrimModel::Physical(p) => 0.5 * p.ziv.v_stable,
        }
    }

    /// Hard clamp applied after every step.
    pub fn clip(&self) -> f64 {
        2.0 * self.v_stable()
    }

    /// Characteristic relaxation time: `τ`, or `2C·R_C` for the circuit.
    pub fn time_constant(&self) -> f64 {
        match self {
            BrimModel::Normalized { tau, .. } => *tau,
            BrimModel::Physical(p) => 2.0 * p.capacitance * p.coupling_resistance,
        }
    }
}

/// Coupled node system ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct BrimSystem {
    j: CouplingMatrix,
    model: BrimModel,
    /// Physical model only: `Σ_j |J_ij| / R_C` per node.
    load: Vec<f64>,
}

impl BrimSystem {
    pub fn new(j: CouplingMatrix, model: BrimModel) -> Result<Self> {
        model.validate()?;
        let load = match model {
            BrimModel::Normalized { .. } => Vec::new(),
            BrimModel::Physical(p) => (0..j.n()).map(|i| j.row_abs_sum(i) / p.coupling_resistance).collect(),
        };
        Ok(BrimSystem { j, model, load })
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    pub fn coupling(&self) -> &CouplingMatrix {
        &self.j
    }

    pub fn model(&self) -> &BrimModel {
        &self.model
    }

    /// `out = dv/dt` at gain `c`.
    #[inline]
    pub fn derivative(&self, v: &[f64], c: f64, out: &mut [f64]) {
        match self.model {
            BrimModel::Normalized { lambda, tau } => {
                for (i, o) in out.iter_mut().enumerate() {
                    let vi = v[i];
                    let field = self.j.row_dot(i, v);
                    *o = (c * field + lambda * (vi - vi * vi * vi)) / tau;
                }
            }
            BrimModel::Physical(p) => {
                let inv_rc = 1.0 / p.coupling_resistance;
                let inv_r = 1.0 / p.leak_resistance;
                let inv_2c = 1.0 / (2.0 * p.capacitance);
                for (i, o) in out.iter_mut().enumerate() {
                    let vi = v[i];
                    let i_x = c * self.j.row_dot(i, v) * inv_rc;
                    let i_r = (inv_r + c * self.load[i]) * vi;
                    let i_ziv = ziv_current(2.0 * vi, &p.ziv);
                    *o = (i_x - i_r - i_ziv) * inv_2c;
                }
            }
        }
    }

    /// Lyapunov function with `∂H/∂v_i = −κ·dv_i/dt`, where `κ = τ`
    /// (normalized) or `2C` (physical). Valid for symmetric `J`.
    pub fn lyapunov(&self, v: &[f64], c: f64) -> f64 {
        let mut pair = 0.0;
        for i in 0..self.n() {
            for (k, jv) in self.j.row(i) {
                if k > i {
                    pair += jv * v[i] * v[k];
                }
            }
        }
        match self.model {
            BrimModel::Normalized { lambda, .. } => {
                let wells: f64 = v.iter().map(|&x| double_well(x, lambda)).sum();
                -c * pair + wells
            }
            BrimModel::Physical(p) => {
                let inv_r = 1.0 / p.leak_resistance;
                let onsite: f64 = v
                    .iter()
                    .zip(&self.load)
                    .map(|(&x, &load)| 0.5 * (inv_r + c * load) * x * x + 0.5 * p.ziv.potential(2.0 * x))
                    .sum();
                -c * pair / p.coupling_resistance + onsite
            }
        }
    }
}

/// Double-well potential `λ(v⁴/4 − v²/2)`, minima `−λ/4` at `v = ±1`.
pub fn double_well(v: f64, lambda: f64) -> f64 {
    let v2 = v * v;
    lambda * (0.25 * v2 * v2 - 0.5 * v2)
}

fn check_state(state: &NodeState, n: usize) -> Result<()> {
    if state.v.len() != n {
        return Err(Error::contract(format!("state has {} nodes but the coupling matrix has {n}", state.v.len())));
    }
    if let Some(index) = state.v.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { t: state.t, index });
    }
    Ok(())
}

/// Normalized node derivative `(c·Σ_j J_ij v_j + λ(v_i − v_i³))/τ`.
pub fn node_derivative_normalized(
    state: &NodeState,
    j: &CouplingMatrix,
    c: f64,
    lambda: f64,
    tau: f64,
) -> Result<Vec<f64>> {
    check_state(state, j.n())?;
    let sys = BrimSystem::new(j.clone(), BrimModel::Normalized { lambda, tau })?;
    let mut out = vec![0.0; j.n()];
    sys.derivative(&state.v, c, &mut out);
    Ok(out)
}

/// Circuit-level node derivative for a Max-Cut instance (`J = −W`).
pub fn node_derivative_physical(state: &NodeState, g: &Graph, params: &NodeParams, c: f64) -> Result<Vec<f64>> {
    check_state(state, g.n())?;
    let sys = BrimSystem::new(maxcut_to_ising(g), BrimModel::Physical(*params))?;
    let mut out = vec![0.0; g.n()];
    sys.derivative(&state.v, c, &mut out);
    Ok(out)
}

/// `H(v) = −c·Σ_{i<j} J_ij v_i v_j + Σ_i λ(v_i⁴/4 − v_i²/2)`.
pub fn lyapunov_value(state: &NodeState, j: &CouplingMatrix, lambda: f64, c: f64) -> f64 {
    let sys = BrimSystem { j: j.clone(), model: BrimModel::Normalized { lambda, tau: 1.0 }, load: Vec::new() };
    sys.lyapunov(&state.v, c)
}
