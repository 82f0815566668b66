//! Odd "Z"-shaped current–voltage curve of the bistable element.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZivShape {
    /// `g(v) = g_peak·(v³/v_s² − v)`.
    Cubic,
    /// Slope `−2·g_peak/v_s` inside `|v| ≤ v_s/2`, slope `+2·g_peak/v_s`
    /// outside; reaches `∓g_peak` at `±v_s/2`.
    PiecewiseLinear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZivParams {
    /// Location of the two stable zeros `±v_stable`.
    pub v_stable: f64,
    /// Current scale.
    pub g_peak: f64,
    pub shape: ZivShape,
}

impl ZivParams {
    pub fn new(v_stable: f64, g_peak: f64, shape: ZivShape) -> Result<Self> {
        let p = ZivParams { v_stable, g_peak, shape };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v_stable > 0.0 && self.v_stable.is_finite()) {
            return Err(Error::config(format!("ziv v_stable must be > 0, got {}", self.v_stable)));
        }
        if !(self.g_peak > 0.0 && self.g_peak.is_finite()) {
            return Err(Error::config(format!("ziv g_peak must be > 0, got {}", self.g_peak)));
        }
        Ok(())
    }

    /// Antiderivative of [`ziv_current`], zero at `v = 0`.
    pub fn potential(&self, v: f64) -> f64 {
        let (vs, g) = (self.v_stable, self.g_peak);
        match self.shape {
            ZivShape::Cubic => g * (v.powi(4) / (4.0 * vs * vs) - v * v / 2.0),
            ZivShape::PiecewiseLinear => {
                let a = v.abs();
                let half = 0.5 * vs;
                if a <= half {
                    -g * a * a / vs
                } else {
                    // ∫ g·(2u/vs − 2) du from vs/2, continued from the inner piece.
                    -g * half * half / vs + g * ((a * a - half * half) / vs - 2.0 * (a - half))
                }
            }
        }
    }
}

/// Current through the bistable element at voltage `v`.
pub fn ziv_current(v: f64, p: &ZivParams) -> f64 {
    let (vs, g) = (p.v_stable, p.g_peak);
    match p.shape {
        ZivShape::Cubic => g * (v * v * v / (vs * vs) - v),
        ZivShape::PiecewiseLinear => {
            let a = v.abs();
            let mag = if a <= 0.5 * vs { -2.0 * a / vs } else { 2.0 * a / vs - 2.0 };
            g * mag * v.signum()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes() -> [ZivParams; 2] {
        [
            ZivParams::new(1.3, 0.7, ZivShape::Cubic).unwrap(),
            ZivParams::new(1.3, 0.7, ZivShape::PiecewiseLinear).unwrap(),
        ]
    }

    #[test]
    fn cubic_value() {
        let p = ZivParams::new(1.0, 1.0, ZivShape::Cubic).unwrap();
        assert_eq!(ziv_current(0.5, &p), -0.375);
        assert_eq!(ziv_current(0.0, &p), 0.0);
        assert_eq!(ziv_current(1.0, &p), 0.0);
    }

    #[test]
    fn three_zeros_and_slope_signs() {
        for p in shapes() {
            let vs = p.v_stable;
            assert_eq!(ziv_current(0.0, &p), 0.0);
            assert!(ziv_current(vs, &p).abs() < 1e-12);
            assert!(ziv_current(-vs, &p).abs() < 1e-12);
            let h = 1e-6;
            let slope = |v: f64| (ziv_current(v + h, &p) - ziv_current(v - h, &p)) / (2.0 * h);
            assert!(slope(0.0) < 0.0);
            assert!(slope(vs) > 0.0);
            assert!(slope(-vs) > 0.0);
            for k in 1..200 {
                let v = 3.0 * vs * k as f64 / 200.0;
                let i = ziv_current(v, &p);
                assert_eq!(ziv_current(-v, &p), -i, "odd at {v}");
                if v < vs - 1e-9 {
                    assert!(i < 0.0, "Z region at {v}");
                } else if v > vs + 1e-9 {
                    assert!(i > 0.0, "outer branch at {v}");
                }
            }
        }
    }

    #[test]
    fn potential_differentiates_to_current() {
        for p in shapes() {
            let h = 1e-5;
            for k in -40..=40 {
                let v = 0.05 * k as f64 + 0.013;
                let fd = (p.potential(v + h) - p.potential(v - h)) / (2.0 * h);
                assert!((fd - ziv_current(v, &p)).abs() < 1e-6, "{:?} at {v}", p.shape);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_params() {
        assert!(ZivParams::new(0.0, 1.0, ZivShape::Cubic).is_err());
        assert!(ZivParams::new(1.0, -1.0, ZivShape::Cubic).is_err());
    }
}
