use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnealShape {
    /// `c(t) = c_min + (c_max − c_min)(1 − e^(−t/τ_a))`.
    ExponentialRise,
    /// `c(t) = c_max`.
    Constant,
}

/// Coupling-gain profile over model time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSchedule {
    pub c_min: f64,
    pub c_max: f64,
    pub tau_anneal: f64,
    pub shape: AnnealShape,
}

impl AnnealSchedule {
    pub fn exponential(c_min: f64, c_max: f64, tau_anneal: f64) -> Result<Self> {
        let s = AnnealSchedule { c_min, c_max, tau_anneal, shape: AnnealShape::ExponentialRise };
        s.validate()?;
        Ok(s)
    }

    pub fn constant(c: f64) -> Result<Self> {
        let s = AnnealSchedule { c_min: c, c_max: c, tau_anneal: 1.0, shape: AnnealShape::Constant };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self.shape {
            AnnealShape::ExponentialRise => {
                if !(0.0 <= self.c_min && self.c_min < self.c_max && self.c_max <= 1.0) {
                    return Err(Error::config(format!(
                        "anneal gains need 0 <= c_min < c_max <= 1, got c_min = {}, c_max = {}",
                        self.c_min, self.c_max
                    )));
                }
                if !(self.tau_anneal > 0.0 && self.tau_anneal.is_finite()) {
                    return Err(Error::config(format!("anneal time constant must be > 0, got {}", self.tau_anneal)));
                }
            }
            AnnealShape::Constant => {
                if !(0.0..=1.0).contains(&self.c_max) {
                    return Err(Error::config(format!("constant gain must lie in [0, 1], got {}", self.c_max)));
                }
            }
        }
        Ok(())
    }

    /// Same profile stretched in time by `factor`.
    pub fn stretched(&self, factor: f64) -> Self {
        AnnealSchedule { tau_anneal: self.tau_anneal * factor, ..*self }
    }
}

/// Coupling gain at model time `t ≥ 0`.
pub fn anneal_gain(t: f64, s: &AnnealSchedule) -> f64 {
    match s.shape {
        AnnealShape::Constant => s.c_max,
        AnnealShape::ExponentialRise => {
            let t = t.max(0.0);
            s.c_min + (s.c_max - s.c_min) * -(-t / s.tau_anneal).exp_m1()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_form_points() {
        let s = AnnealSchedule::exponential(0.0, 1.0, 1.0).unwrap();
        assert_eq!(anneal_gain(0.0, &s), 0.0);
        assert!((anneal_gain(1.0, &s) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((anneal_gain(1.0, &s) - 0.6321).abs() < 1e-4);
        assert_eq!(anneal_gain(1e6, &s), 1.0);
        let s = AnnealSchedule::exponential(0.2, 0.9, 3.0).unwrap();
        assert_eq!(anneal_gain(0.0, &s), 0.2);
        assert!((anneal_gain(1e4, &s) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn constant_shape() {
        let s = AnnealSchedule::constant(0.4).unwrap();
        assert_eq!(anneal_gain(0.0, &s), 0.4);
        assert_eq!(anneal_gain(55.0, &s), 0.4);
        assert!(AnnealSchedule::constant(0.0).is_ok());
        assert!(AnnealSchedule::constant(1.5).is_err());
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(AnnealSchedule::exponential(0.5, 0.5, 1.0).is_err());
        assert!(AnnealSchedule::exponential(-0.1, 0.5, 1.0).is_err());
        assert!(AnnealSchedule::exponential(0.0, 1.1, 1.0).is_err());
        assert!(AnnealSchedule::exponential(0.0, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn monotone_nondecreasing(
            c_min in 0.0f64..0.5, span in 0.01f64..0.5, tau in 0.01f64..100.0,
            t1 in 0.0f64..1000.0, dt in 0.0f64..1000.0,
        ) {
            let s = AnnealSchedule::exponential(c_min, c_min + span, tau).unwrap();
            let a = anneal_gain(t1, &s);
            let b = anneal_gain(t1 + dt, &s);
            prop_assert!(b >= a);
            prop_assert!((c_min..=c_min + span).contains(&a));
        }
    }
}
