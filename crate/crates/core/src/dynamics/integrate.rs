//! Time integration of a configured machine.
//!
//! Steps never straddle a perturbation time: the step that would cross one
//! is shortened to end on it, the selected nodes are flipped, and the next
//! step starts from there. Voltages are clamped to the rail guard after
//! every accepted step.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::schedule::{anneal_gain, AnnealSchedule};
use super::system::{BrimModel, BrimSystem};
use super::{readout, NodeState};
use crate::error::{Error, Result};
use crate::graph::{ising_energy, quantize_weights, CouplingMatrix, SpinVector};
use crate::ode::{step_factor, DormandPrince, Rk4};

/// Periodic node-flip events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbPolicy {
    /// Model time between events; `f64::INFINITY` disables them.
    pub period: f64,
    pub nodes_per_event: usize,
    pub seed: u64,
}

impl PerturbPolicy {
    pub fn disabled() -> Self {
        PerturbPolicy { period: f64::INFINITY, nodes_per_event: 1, seed: 0 }
    }

    pub fn is_enabled(&self) -> bool {
        self.period.is_finite()
    }

    fn validate(&self) -> Result<()> {
        if !(self.period > 0.0) {
            return Err(Error::config(format!("perturbation period must be > 0, got {}", self.period)));
        }
        if self.nodes_per_event == 0 {
            return Err(Error::config("perturbation must flip at least one node per event"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegratorKind {
    FixedRk4 { dt: f64 },
    AdaptiveRk45 { rel_tol: f64, abs_tol: f64, dt_min: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitPolicy {
    /// Independent uniform voltages in `±amplitude·rail`.
    UniformRandom {
        amplitude: f64,
    },
    Given(Vec<f64>),
}

/// Everything about a run except the coupling matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BrimSettings {
    pub model: BrimModel,
    /// Scale the programmed matrix so `max|J| = 1`.
    pub normalize_weights: bool,
    /// Optional DAC resolution applied before normalization.
    pub weight_bits: Option<u32>,
    pub schedule: AnnealSchedule,
    pub perturb: PerturbPolicy,
    pub t_end: f64,
    pub integrator: IntegratorKind,
    pub init: InitPolicy,
    /// Seed for the initial voltages.
    pub seed: u64,
    /// Record a trace sample every this many steps; 0 keeps only the end points.
    pub trace_stride: usize,
}

impl Default for BrimSettings {
    fn default() -> Self {
        BrimSettings {
            model: BrimModel::Normalized { lambda: 1.0, tau: 1.0 },
            normalize_weights: true,
            weight_bits: None,
            schedule: AnnealSchedule::exponential(0.0, 1.0, 10.0).expect("valid default"),
            perturb: PerturbPolicy::disabled(),
            t_end: 50.0,
            integrator: IntegratorKind::FixedRk4 { dt: 0.02 },
            init: InitPolicy::UniformRandom { amplitude: 0.1 },
            seed: 0,
            trace_stride: 0,
        }
    }
}

impl BrimSettings {
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.schedule.validate()?;
        self.perturb.validate()?;
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::config(format!("t_end must be > 0, got {}", self.t_end)));
        }
        match self.integrator {
            IntegratorKind::FixedRk4 { dt } => {
                if !(dt > 0.0 && dt.is_finite()) {
                    return Err(Error::config(format!("dt must be > 0, got {dt}")));
                }
            }
            IntegratorKind::AdaptiveRk45 { rel_tol, abs_tol, dt_min } => {
                if !(rel_tol > 0.0 && abs_tol > 0.0 && dt_min > 0.0) {
                    return Err(Error::config("adaptive tolerances and dt_min must be > 0"));
                }
            }
        }
        if let Some(bits) = self.weight_bits {
            if !(1..=16).contains(&bits) {
                return Err(Error::config(format!("weight_bits must be in 1..=16, got {bits}")));
            }
        }
        match &self.init {
            InitPolicy::UniformRandom { amplitude } => {
                if !(*amplitude >= 0.0 && *amplitude <= 2.0) {
                    return Err(Error::config(format!("init amplitude must be in [0, 2], got {amplitude}")));
                }
            }
            InitPolicy::Given(v) => {
                let clip = self.model.clip();
                if v.iter().any(|x| !x.is_finite() || x.abs() > clip) {
                    return Err(Error::config(format!("initial voltages must be finite and within ±{clip}")));
                }
            }
        }
        Ok(())
    }

    /// The same run shape over a different duration: the anneal time
    /// constant and perturbation period scale with `t_end`.
    pub fn with_duration(&self, t_end: f64) -> Self {
        let factor = t_end / self.t_end;
        let mut out = self.clone();
        out.t_end = t_end;
        out.schedule = self.schedule.stretched(factor);
        out.perturb.period = self.perturb.period * factor;
        out
    }
}

/// A programmed machine.
#[derive(Debug, Clone, PartialEq)]
pub struct BrimConfig {
    pub coupling: CouplingMatrix,
    pub settings: BrimSettings,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSample {
    pub t: f64,
    pub gain: f64,
    pub v: Vec<f64>,
    /// Ising energy of the thresholded state.
    pub energy: f64,
    /// Lyapunov value of the integrated (scaled) system at this gain.
    pub lyapunov: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub samples: Vec<TraceSample>,
}

impl Trace {
    /// CSV with header `t,v0,…,v{n−1},gain,energy`.
    pub fn to_csv(&self, n: usize) -> String {
        let mut out = String::from("t");
        for i in 0..n {
            let _ = write!(out, ",v{i}");
        }
        out.push_str(",gain,energy\n");
        for s in &self.samples {
            let _ = write!(out, "{}", s.t);
            for x in &s.v {
                let _ = write!(out, ",{x}");
            }
            let _ = writeln!(out, ",{},{}", s.gain, s.energy);
        }
        out
    }
}

/// Result of one integration.
#[derive(Debug, Clone, PartialEq)]
pub struct BrimRun {
    pub final_state: NodeState,
    pub trace: Trace,
    /// Lowest Ising energy of the thresholded state over every step.
    pub best_energy: f64,
    pub best_spins: SpinVector,
    pub steps: usize,
    pub rejected_steps: usize,
    pub events: usize,
}

impl BrimRun {
    pub fn final_spins(&self) -> SpinVector {
        readout(&self.final_state)
    }
}

/// Tracks the best readout energy seen along a trajectory.
struct BestTracker<'a> {
    j: &'a CouplingMatrix,
    spins: Vec<i8>,
    energy: f64,
    best_energy: f64,
    best_spins: Vec<i8>,
}

impl<'a> BestTracker<'a> {
    fn new(j: &'a CouplingMatrix, v: &[f64]) -> Self {
        let s = readout(&NodeState::new(v.to_vec(), 0.0));
        let energy = ising_energy(j, &s).expect("dimensions checked");
        let spins = s.into_vec();
        BestTracker { j, best_spins: spins.clone(), spins, energy, best_energy: energy }
    }

    fn observe(&mut self, v: &[f64]) {
        let mut changed = 0usize;
        for (s, &x) in self.spins.iter_mut().zip(v) {
            let new = if x < 0.0 { -1 } else { 1 };
            if *s != new {
                *s = new;
                changed += 1;
            }
        }
        if changed == 0 {
            return;
        }
        let sv = SpinVector::new(self.spins.clone()).expect("±1");
        self.energy = ising_energy(self.j, &sv).expect("dimensions checked");
        if self.energy < self.best_energy {
            self.best_energy = self.energy;
            self.best_spins.copy_from_slice(&self.spins);
        }
    }
}

fn clamp_all(v: &mut [f64], clip: f64) -> bool {
    let mut hit = false;
    for x in v.iter_mut() {
        if *x > clip {
            *x = clip;
            hit = true;
        } else if *x < -clip {
            *x = -clip;
            hit = true;
        }
    }
    hit
}

fn check_finite(v: &[f64], t: f64) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFinite { t, index }),
        None => Ok(()),
    }
}

/// Integrates the machine from `t = 0` to `t_end`.
pub fn integrate(cfg: &BrimConfig) -> Result<BrimRun> {
    let s = &cfg.settings;
    s.validate()?;
    let n = cfg.coupling.n();

    let mut programmed = match s.weight_bits {
        Some(bits) => quantize_weights(&cfg.coupling, bits)?,
        None => cfg.coupling.clone(),
    };
    if s.normalize_weights {
        programmed = programmed.normalized();
    }
    let sys = BrimSystem::new(programmed, s.model)?;
    let clip = s.model.clip();

    let mut v: Vec<f64> = match &s.init {
        InitPolicy::UniformRandom { amplitude } => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let a = amplitude * s.model.rail();
            (0..n).map(|_| if a > 0.0 { rng.random_range(-a..a) } else { 0.0 }).collect()
        }
        InitPolicy::Given(v0) => {
            if v0.len() != n {
                return Err(Error::config(format!(
                    "initial state has {} nodes but the coupling matrix has {n}",
                    v0.len()
                )));
            }
            v0.clone()
        }
    };

    let mut perturb_rng = ChaCha8Rng::seed_from_u64(s.perturb.seed);
    perturb_rng.set_stream(1);
    if s.perturb.is_enabled() && s.perturb.nodes_per_event > n {
        return Err(Error::config(format!("cannot flip {} of {n} nodes per event", s.perturb.nodes_per_event)));
    }

    let schedule = s.schedule;
    let mut rhs = |t: f64, y: &[f64], out: &mut [f64]| sys.derivative(y, anneal_gain(t, &schedule), out);

    let sample = |t: f64, v: &[f64]| -> TraceSample {
        let gain = anneal_gain(t, &schedule);
        let spins = readout(&NodeState::new(v.to_vec(), t));
        TraceSample {
            t,
            gain,
            v: v.to_vec(),
            energy: ising_energy(&cfg.coupling, &spins).expect("dimensions checked"),
            lyapunov: sys.lyapunov(v, gain),
        }
    };

    let mut trace = Trace { samples: vec![sample(0.0, &v)] };
    let mut tracker = BestTracker::new(&cfg.coupling, &v);
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut rejected = 0usize;
    let mut events = 0usize;
    let mut event_k = 1u64;
    let next_event = |k: u64| {
        if s.perturb.is_enabled() {
            k as f64 * s.perturb.period
        } else {
            f64::INFINITY
        }
    };

    let mut rk4 = Rk4::new(n);
    let mut dopri = DormandPrince::new(n);
    let mut h_adapt = match s.integrator {
        IntegratorKind::AdaptiveRk45 { dt_min, .. } => (0.01 * s.model.time_constant()).max(dt_min),
        IntegratorKind::FixedRk4 { dt } => dt,
    };

    while t < s.t_end {
        let ev = next_event(event_k);
        let boundary = ev.min(s.t_end);
        let hits_event = ev < s.t_end;

        match s.integrator {
            IntegratorKind::FixedRk4 { dt } => {
                let (h, t_new) = if t + dt >= boundary - 1e-9 * dt { (boundary - t, boundary) } else { (dt, t + dt) };
                rk4.step(&mut rhs, t, &mut v, h);
                t = t_new;
            }
            IntegratorKind::AdaptiveRk45 { rel_tol, abs_tol, dt_min } => {
                let mut clipped = false;
                let mut h = h_adapt;
                if t + h >= boundary - 1e-12 * boundary.abs().max(1.0) {
                    h = boundary - t;
                    clipped = true;
                }
                let err = dopri.try_step(&mut rhs, t, &v, h, rel_tol, abs_tol);
                if err.is_finite() && err <= 1.0 {
                    v.copy_from_slice(&dopri.y_new);
                    dopri.accept();
                    t = if clipped { boundary } else { t + h };
                    let next = h * step_factor(err);
                    h_adapt = if clipped { h_adapt.max(next) } else { next };
                } else {
                    dopri.reject();
                    rejected += 1;
                    h_adapt = h * if err.is_finite() { step_factor(err) } else { 0.2 };
                    if h_adapt < dt_min {
                        return Err(Error::StepUnderflow { t, dt: h_adapt, dt_min });
                    }
                    continue;
                }
            }
        }
        steps += 1;
        if clamp_all(&mut v, clip) {
            dopri.invalidate();
        }
        check_finite(&v, t)?;
        tracker.observe(&v);

        if hits_event && t == boundary {
            let picks = rand::seq::index::sample(&mut perturb_rng, n, s.perturb.nodes_per_event);
            for i in picks.iter() {
                v[i] = -v[i];
            }
            dopri.invalidate();
            events += 1;
            event_k += 1;
            tracker.observe(&v);
        }

        if s.trace_stride > 0 && steps.is_multiple_of(s.trace_stride) && t < s.t_end {
            trace.samples.push(sample(t, &v));
        }
    }
    trace.samples.push(sample(t, &v));

    Ok(BrimRun {
        final_state: NodeState::new(v, t),
        trace,
        best_energy: tracker.best_energy,
        best_spins: SpinVector::new(tracker.best_spins).expect("±1"),
        steps,
        rejected_steps: rejected,
        events,
    })
}
