use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{flip, local_fields};
use crate::error::{Error, Result};
use crate::graph::{cut_value, Graph, SpinVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsaSettings {
    pub cycles: usize,
    /// Random-flip probability in the first cycle; decays linearly to 0.
    pub p0: f64,
}

impl Default for AsaSettings {
    fn default() -> Self {
        AsaSettings { cycles: 1000, p0: 0.2 }
    }
}

impl AsaSettings {
    pub fn validate(&self) -> Result<()> {
        if self.cycles == 0 {
            return Err(Error::config("ASA needs at least one cycle"));
        }
        if !(0.0..=1.0).contains(&self.p0) {
            return Err(Error::config(format!("ASA p0 must lie in [0, 1], got {}", self.p0)));
        }
        Ok(())
    }

    /// Flip probability after greedy pass `k`; zero after the last one.
    pub fn flip_probability(&self, k: usize) -> f64 {
        self.p0 * (1.0 - (k + 1) as f64 / self.cycles as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsaResult {
    pub spins: SpinVector,
    pub best_cut: f64,
}

/// Idealized all-to-all digital annealer: each cycle updates every node once,
/// in order, to its cut-maximizing side, then flips each node at random with
/// the cycle's probability.
pub fn asa_solve(g: &Graph, settings: &AsaSettings, seed: u64) -> Result<AsaResult> {
    settings.validate()?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    let mut h = local_fields(g, &s);
    let mut cut = cut_value(g, &SpinVector::new(s.clone())?)?;
    let mut best_cut = cut;
    let mut best = s.clone();

    for k in 0..settings.cycles {
        for i in 0..n {
            let delta = f64::from(s[i]) * h[i];
            if delta > 0.0 {
                flip(g, &mut s, &mut h, i);
                cut += delta;
            }
        }
        if cut > best_cut {
            best_cut = cut;
            best.copy_from_slice(&s);
        }
        let p = settings.flip_probability(k);
        if p > 0.0 {
            for i in 0..n {
                if rng.random_bool(p) {
                    cut += f64::from(s[i]) * h[i];
                    flip(g, &mut s, &mut h, i);
                }
            }
        }
    }

    let spins = SpinVector::new(best)?;
    let best_cut = cut_value(g, &spins)?;
    Ok(AsaResult { spins, best_cut })
}
