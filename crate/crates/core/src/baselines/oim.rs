//! Phase-only oscillator machine: `dφ_i/dt = Σ_j J_ij sin(φ_j − φ_i)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{ising_energy, CouplingMatrix, SpinVector};
use crate::ode::Rk4;

/// Unwrapped oscillator phases at model time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub phi: Vec<f64>,
    pub t: f64,
}

impl PhaseState {
    pub fn new(phi: Vec<f64>, t: f64) -> Self {
        PhaseState { phi, t }
    }
}

/// Evaluates the phase velocity into `out`, using
/// `sin(φ_j − φ_i) = sin φ_j cos φ_i − cos φ_j sin φ_i`.
fn derivative_into(j: &CouplingMatrix, phi: &[f64], sin: &mut [f64], cos: &mut [f64], out: &mut [f64]) {
    for (k, &p) in phi.iter().enumerate() {
        (sin[k], cos[k]) = p.sin_cos();
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = cos[i] * j.row_dot(i, sin) - sin[i] * j.row_dot(i, cos);
    }
}

pub fn kuramoto_derivative(state: &PhaseState, j: &CouplingMatrix) -> Result<Vec<f64>> {
    let n = j.n();
    if state.phi.len() != n {
        return Err(Error::contract(format!("phase state has {} oscillators but J is {n}x{n}", state.phi.len())));
    }
    let mut sin = vec![0.0; n];
    let mut cos = vec![0.0; n];
    let mut out = vec![0.0; n];
    derivative_into(j, &state.phi, &mut sin, &mut cos, &mut out);
    Ok(out)
}

/// `H = −Σ_{i<j} J_ij cos(φ_j − φ_i)`.
pub fn kuramoto_lyapunov(state: &PhaseState, j: &CouplingMatrix) -> f64 {
    let phi = &state.phi;
    let mut h = 0.0;
    for i in 0..j.n() {
        for (k, w) in j.row(i) {
            if k > i {
                h -= w * (phi[k] - phi[i]).cos();
            }
        }
    }
    h
}

/// Rounds each phase to the nearest multiple of π: even → +1, odd → −1.
pub fn phase_readout(state: &PhaseState) -> SpinVector {
    SpinVector::new(
        state.phi.iter().map(|&p| if ((p / PI).round() as i64).rem_euclid(2) == 0 { 1 } else { -1 }).collect(),
    )
    .expect("readout yields ±1")
}

#[derive(Debug, Clone, PartialEq)]
pub struct OimSettings {
    pub t_end: f64,
    pub dt: f64,
    /// Scale `J` so `max|J| = 1`, matching the machine's time base.
    pub normalize_weights: bool,
    /// Initial phases; `None` draws them uniformly from `[0, 2π)`.
    pub init: Option<Vec<f64>>,
    pub seed: u64,
    /// Record the Lyapunov value every this many steps; 0 keeps the end points.
    pub trace_stride: usize,
}

impl Default for OimSettings {
    fn default() -> Self {
        OimSettings { t_end: 50.0, dt: 0.02, normalize_weights: true, init: None, seed: 0, trace_stride: 0 }
    }
}

impl OimSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::config(format!("t_end must be > 0, got {}", self.t_end)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::config(format!("dt must be > 0, got {}", self.dt)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OimRun {
    pub final_state: PhaseState,
    pub spins: SpinVector,
    /// Ising energy of `spins` against the unscaled `J`.
    pub energy: f64,
    /// `(t, H)` samples of the Lyapunov function of the integrated system.
    pub lyapunov_trace: Vec<(f64, f64)>,
    pub steps: usize,
}

/// Integrates the oscillator network with fixed-step RK4 and reads out spins
/// at `t_end`.
pub fn oim_solve(j: &CouplingMatrix, settings: &OimSettings) -> Result<OimRun> {
    settings.validate()?;
    let n = j.n();
    let dyn_j = if settings.normalize_weights { j.normalized() } else { j.clone() };
    let mut phi = match &settings.init {
        Some(p) if p.len() != n => {
            return Err(Error::config(format!("initial phases have length {} but J is {n}x{n}", p.len())))
        }
        Some(p) => p.clone(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
            (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect()
        }
    };

    let mut sin = vec![0.0; n];
    let mut cos = vec![0.0; n];
    let mut rhs = |_t: f64, y: &[f64], out: &mut [f64]| derivative_into(&dyn_j, y, &mut sin, &mut cos, out);
    let mut rk4 = Rk4::new(n);
    let mut trace = vec![(0.0, kuramoto_lyapunov(&PhaseState::new(phi.clone(), 0.0), &dyn_j))];
    let mut t = 0.0;
    let mut steps = 0usize;
    while t < settings.t_end {
        let remaining = settings.t_end - t;
        let (h, t_new) = if settings.dt >= remaining - 1e-9 * settings.dt {
            (remaining, settings.t_end)
        } else {
            (settings.dt, t + settings.dt)
        };
        rk4.step(&mut rhs, t, &mut phi, h);
        t = t_new;
        steps += 1;
        if let Some(index) = phi.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { t, index });
        }
        if settings.trace_stride > 0 && steps.is_multiple_of(settings.trace_stride) && t < settings.t_end {
            trace.push((t, kuramoto_lyapunov(&PhaseState::new(phi.clone(), t), &dyn_j)));
        }
    }
    let final_state = PhaseState::new(phi, t);
    trace.push((t, kuramoto_lyapunov(&final_state, &dyn_j)));
    let spins = phase_readout(&final_state);
    let energy = ising_energy(j, &spins)?;
    Ok(OimRun { final_state, spins, energy, lyapunov_trace: trace, steps })
}
