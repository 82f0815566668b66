use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{flip, local_fields};
use crate::error::{Error, Result};
use crate::graph::{cut_value, Graph, SpinVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaDecay {
    /// `T_k = T0·(T_end/T0)^(k/sweeps)`.
    Geometric,
    /// `T_k = T0 + (T_end − T0)·k/sweeps`.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaSchedule {
    pub sweeps: usize,
    pub t0: f64,
    pub t_end: f64,
    pub decay: SaDecay,
}

impl SaSchedule {
    /// Geometric schedule from `max|W|·mean degree` down by a factor 1000.
    pub fn default_for(g: &Graph, sweeps: usize) -> Self {
        let t0 = (g.max_abs_weight() * g.mean_degree()).max(f64::MIN_POSITIVE.sqrt());
        SaSchedule { sweeps, t0, t_end: 1e-3 * t0, decay: SaDecay::Geometric }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweeps == 0 {
            return Err(Error::config("SA needs at least one sweep"));
        }
        if !(self.t0 > 0.0 && self.t0.is_finite() && self.t_end > 0.0 && self.t_end < self.t0) {
            return Err(Error::config(format!(
                "SA temperatures need 0 < T_end < T0, got T0 = {}, T_end = {}",
                self.t0, self.t_end
            )));
        }
        Ok(())
    }

    /// Temperature during sweep `k`.
    pub fn temperature(&self, k: usize) -> f64 {
        let x = k as f64 / self.sweeps as f64;
        match self.decay {
            SaDecay::Geometric => self.t0 * (self.t_end / self.t0).powf(x),
            SaDecay::Linear => self.t0 + (self.t_end - self.t0) * x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaResult {
    /// Best spins seen over the whole chain.
    pub spins: SpinVector,
    pub best_cut: f64,
    /// Ising energy `ΣW − 2·cut` of the current state after each sweep.
    pub energy_trace: Vec<f64>,
}

/// Metropolis rule on the cut: improvements always pass, a loss of `−delta`
/// passes with probability `e^(delta/T)`.
#[inline]
pub fn metropolis_accept<R: Rng>(delta: f64, temperature: f64, rng: &mut R) -> bool {
    delta >= 0.0 || rng.random::<f64>() < (delta / temperature).exp()
}

/// Single-flip simulated annealing with random proposals; one sweep is `n`
/// proposals.
pub fn sa_solve(g: &Graph, sched: &SaSchedule, seed: u64) -> Result<SaResult> {
    sched.validate()?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    let mut h = local_fields(g, &s);
    let total = g.total_weight();
    let mut cut = cut_value(g, &SpinVector::new(s.clone())?)?;
    let mut best_cut = cut;
    let mut best = s.clone();
    let mut energy_trace = Vec::with_capacity(sched.sweeps);

    for k in 0..sched.sweeps {
        let temp = sched.temperature(k);
        for _ in 0..n {
            let i = rng.random_range(0..n);
            let delta = f64::from(s[i]) * h[i];
            if metropolis_accept(delta, temp, &mut rng) {
                flip(g, &mut s, &mut h, i);
                cut += delta;
                if cut > best_cut {
                    best_cut = cut;
                    best.copy_from_slice(&s);
                }
            }
        }
        energy_trace.push(total - 2.0 * cut);
    }

    let spins = SpinVector::new(best)?;
    let best_cut = cut_value(g, &spins)?;
    Ok(SaResult { spins, best_cut, energy_trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_maxcut, gen_random_graph, WeightModel};

    #[test]
    fn zero_temperature_is_greedy() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let uphill = (0..100_000).filter(|_| metropolis_accept(-0.5, 1e-300, &mut rng)).count();
        assert_eq!(uphill, 0);
        assert!(metropolis_accept(0.0, 1e-300, &mut rng));
    }

    #[test]
    fn infinite_temperature_accepts_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 100_000;
        let uphill = (0..trials).filter(|_| metropolis_accept(-3.0, 1e12, &mut rng)).count();
        assert!(uphill as f64 / trials as f64 > 0.99);
    }

    #[test]
    fn geometric_schedule_endpoints() {
        let s = SaSchedule { sweeps: 10, t0: 8.0, t_end: 0.008, decay: SaDecay::Geometric };
        assert_eq!(s.temperature(0), 8.0);
        assert!((s.temperature(5) - 8.0 * 0.001f64.sqrt()).abs() < 1e-12);
        assert!((1..10).all(|k| s.temperature(k) < s.temperature(k - 1)));
        let l = SaSchedule { decay: SaDecay::Linear, ..s };
        assert!((l.temperature(5) - 4.004).abs() < 1e-12);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        let r = sa_solve(&g, &SaSchedule::default_for(&g, 100), 3).unwrap();
        assert_eq!(r.best_cut, 1.0);
        assert_eq!(r.energy_trace.len(), 100);
    }

    #[test]
    fn reaches_optimum_on_small_graphs() {
        for seed in 0..5 {
            let g = gen_random_graph(14, 0.5, WeightModel::IntRange { lo: -3, hi: 5 }, seed).unwrap();
            let (opt, _) = brute_force_maxcut(&g).unwrap();
            let sched = SaSchedule::default_for(&g, 2000);
            let best = (0..5).map(|k| sa_solve(&g, &sched, k).unwrap().best_cut).fold(f64::MIN, f64::max);
            assert_eq!(best, opt, "graph {seed}");
        }
    }

    #[test]
    fn reported_cut_matches_spins_and_is_deterministic() {
        let g = gen_random_graph(40, 0.3, WeightModel::RealRange { lo: -1.0, hi: 2.0 }, 4).unwrap();
        let sched = SaSchedule::default_for(&g, 50);
        let a = sa_solve(&g, &sched, 11).unwrap();
        assert_eq!(a.best_cut, cut_value(&g, &a.spins).unwrap());
        assert_eq!(a, sa_solve(&g, &sched, 11).unwrap());
    }

    #[test]
    fn rejects_bad_schedule() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        let s = SaSchedule { sweeps: 5, t0: 1.0, t_end: 2.0, decay: SaDecay::Geometric };
        assert!(sa_solve(&g, &s, 0).is_err());
        let s = SaSchedule { sweeps: 0, ..SaSchedule::default_for(&g, 1) };
        assert!(sa_solve(&g, &s, 0).is_err());
    }
}
