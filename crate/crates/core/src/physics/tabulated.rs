use crate::error::{invalid, Result};

/// Borrowed view of a uniformly sampled envelope.
pub(crate) struct Table<'a> {
    t_start: f64,
    dt: f64,
    values: &'a [f64],
}

impl<'a> Table<'a> {
    pub(crate) fn check(t_start: f64, dt: f64, values: &[f64]) -> Result<()> {
        if !t_start.is_finite() {
            return Err(invalid("t_start", "must be finite"));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(invalid("dt", "must be finite and > 0"));
        }
        if values.len() < 2 {
            return Err(invalid("values", "need at least two samples"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("values", "samples must be finite"));
        }
        Ok(())
    }

    pub(crate) fn new(t_start: f64, dt: f64, values: &'a [f64]) -> Self {
        Self {
            t_start,
            dt,
            values,
        }
    }

    /// Node derivative: five-point central stencil in the interior, lower
    /// order within two samples of either end.
    fn node_derivative(&self, i: usize) -> f64 {
        let v = self.values;
        let n = v.len();
        let h = self.dt;
        if i >= 2 && i + 2 < n {
            (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h)
        } else if i >= 1 && i + 1 < n {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        } else if i == 0 {
            (v[1] - v[0]) / h
        } else {
            (v[n - 1] - v[n - 2]) / h
        }
    }

    /// Linear interpolation of the samples and of the node derivatives.
    /// Outside the table the end values are held (`hold_ends`) or zero.
    pub(crate) fn value_and_derivative(&self, t: f64, hold_ends: bool) -> (f64, f64) {
        let n = self.values.len();
        let s = (t - self.t_start) / self.dt;
        if s < 0.0 {
            return if hold_ends { (self.values[0], 0.0) } else { (0.0, 0.0) };
        }
        if s > (n - 1) as f64 {
            return if hold_ends {
                (self.values[n - 1], 0.0)
            } else {
                (0.0, 0.0)
            };
        }
        let i = (s.floor() as usize).min(n - 2);
        let frac = s - i as f64;
        let value = self.values[i] * (1.0 - frac) + self.values[i + 1] * frac;
        let deriv = self.node_derivative(i) * (1.0 - frac) + self.node_derivative(i + 1) * frac;
        (value, deriv)
    }
}
