//! Explicit Runge–Kutta steppers for `dy/dt = f(t, y)`.
//!
//! Both steppers own their stage buffers so a run allocates once. The
//! right-hand side is any `FnMut(t, y, dy)`.

/// Classic fourth-order Runge–Kutta.
#[derive(Debug, Clone)]
pub struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    pub fn new(n: usize) -> Self {
        Rk4 { k1: vec![0.0; n], k2: vec![0.0; n], k3: vec![0.0; n], k4: vec![0.0; n], tmp: vec![0.0; n] }
    }

    /// Advances `y` from `t` to `t + h` in place.
    pub fn step<F>(&mut self, f: &mut F, t: f64, y: &mut [f64], h: f64)
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let half = 0.5 * h;
        f(t, y, &mut self.k1);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + half * self.k1[i];
        }
        f(t + half, &self.tmp, &mut self.k2);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + half * self.k2[i];
        }
        f(t + half, &self.tmp, &mut self.k3);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + h * self.k3[i];
        }
        f(t + h, &self.tmp, &mut self.k4);
        let sixth = h / 6.0;
        for i in 0..y.len() {
            y[i] += sixth * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth-order minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Dormand–Prince 5(4) with an embedded error estimate and first-same-as-last
/// reuse of the final stage.
#[derive(Debug, Clone)]
pub struct DormandPrince {
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
    /// Candidate solution from the last `try_step`.
    pub y_new: Vec<f64>,
    fsal_valid: bool,
}

impl DormandPrince {
    pub fn new(n: usize) -> Self {
        DormandPrince {
            k: std::array::from_fn(|_| vec![0.0; n]),
            tmp: vec![0.0; n],
            y_new: vec![0.0; n],
            fsal_valid: false,
        }
    }

    /// Forget the cached first stage; call after `y` is changed externally.
    pub fn invalidate(&mut self) {
        self.fsal_valid = false;
    }

    /// Computes a trial step of size `h` into `y_new` and returns the scaled
    /// RMS error norm; the step is acceptable when the norm is at most 1.
    pub fn try_step<F>(&mut self, f: &mut F, t: f64, y: &[f64], h: f64, rel_tol: f64, abs_tol: f64) -> f64
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len();
        let [k1, k2, k3, k4, k5, k6, k7] = &mut self.k;
        if !self.fsal_valid {
            f(t, y, k1);
        }
        for i in 0..n {
            self.tmp[i] = y[i] + h * A21 * k1[i];
        }
        f(t + C2 * h, &self.tmp, k2);
        for i in 0..n {
            self.tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        f(t + C3 * h, &self.tmp, k3);
        for i in 0..n {
            self.tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        f(t + C4 * h, &self.tmp, k4);
        for i in 0..n {
            self.tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        f(t + C5 * h, &self.tmp, k5);
        for i in 0..n {
            self.tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        f(t + h, &self.tmp, k6);
        for i in 0..n {
            self.y_new[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        f(t + h, &self.y_new, k7);

        let mut acc = 0.0;
        for i in 0..n {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = abs_tol + rel_tol * y[i].abs().max(self.y_new[i].abs());
            acc += (e / scale) * (e / scale);
        }
        self.fsal_valid = true;
        if n == 0 {
            0.0
        } else {
            (acc / n as f64).sqrt()
        }
    }

    /// Call after accepting the trial step: the last stage becomes the next
    /// first stage.
    pub fn accept(&mut self) {
        self.k.swap(0, 6);
    }

    /// Call after rejecting: the cached first stage for `y` is still valid.
    pub fn reject(&mut self) {
        self.fsal_valid = true;
    }
}

/// Step-size factor for an error norm, clamped to `[0.2, 5]`.
pub fn step_factor(err: f64) -> f64 {
    if err == 0.0 {
        5.0
    } else {
        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_exponential_decay() {
        let mut rk = Rk4::new(1);
        let mut y = [1.0];
        let mut f = |_t: f64, y: &[f64], d: &mut [f64]| d[0] = -y[0];
        let h = 0.01;
        for k in 0..100 {
            rk.step(&mut f, k as f64 * h, &mut y, h);
        }
        assert!((y[0] - (-1.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let solve = |h: f64| {
            let mut rk = Rk4::new(2);
            let mut y = [1.0, 0.0];
            // Harmonic oscillator.
            let mut f = |_t: f64, y: &[f64], d: &mut [f64]| {
                d[0] = y[1];
                d[1] = -y[0];
            };
            let steps = (1.0 / h).round() as usize;
            for k in 0..steps {
                rk.step(&mut f, k as f64 * h, &mut y, h);
            }
            (y[0] - 1f64.cos()).abs()
        };
        let ratio = solve(0.02) / solve(0.01);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn dopri_time_dependent_rhs() {
        // dy/dt = cos t, y(0) = 0 → y = sin t.
        let mut dp = DormandPrince::new(1);
        let mut f = |t: f64, _y: &[f64], d: &mut [f64]| d[0] = t.cos();
        let mut y = vec![0.0];
        let mut t: f64 = 0.0;
        let mut h: f64 = 0.1;
        while t < 3.0 {
            h = h.min(3.0 - t);
            let err = dp.try_step(&mut f, t, &y, h, 1e-9, 1e-12);
            if err <= 1.0 {
                t += h;
                y.copy_from_slice(&dp.y_new);
                dp.accept();
            } else {
                dp.reject();
            }
            h *= step_factor(err);
        }
        assert!((y[0] - 3f64.sin()).abs() < 1e-8);
    }

    #[test]
    fn dopri_error_estimate_is_fifth_order_local() {
        let one = |h: f64| {
            let mut dp = DormandPrince::new(1);
            let mut f = |_t: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] * y[0];
            dp.try_step(&mut f, 0.0, &[0.5], h, 0.0, 1.0)
        };
        // Local error of the embedded pair scales like h^5.
        let ratio = one(0.1) / one(0.05);
        assert!(ratio > 20.0 && ratio < 40.0, "ratio {ratio}");
    }
}
