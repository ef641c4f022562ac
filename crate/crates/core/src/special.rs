//! Exponentially scaled modified Bessel functions and the propagation kernels
//! built from them.
//!
//! The propagation kernel `exp(-z - a) I0(2 sqrt(z a))` overflows in its naive
//! form once `z` and `a` reach a few hundred, so everything here is evaluated
//! through the identity `z + a = (sqrt z - sqrt a)^2 + 2 sqrt(z a)`, which moves
//! the large exponential onto the scaled Bessel factor.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Splice point between the power series and the large-argument expansion.
pub const SERIES_LIMIT: f64 = 15.0;

const REL_EPS: f64 = 1e-17;
// Oscillatory (J) branch: the alternating series loses ~x/ln(10) digits, so it
// hands over to the Hankel expansion early.
const J_SERIES_LIMIT: f64 = 20.0;
const MAX_TERMS: usize = 400;

/// `exp(-x) I0(x)` for `x >= 0`.
pub fn i0_scaled(x: f64) -> Result<f64> {
    check_arg("i0_scaled", x)?;
    Ok(i0_scaled_unchecked(x))
}

/// `exp(-x) I1(x) / (x/2)`, equal to 1 at the origin.
///
/// The ratio form stays finite at `x = 0` and is what the flux kernel needs.
pub fn i1_ratio_scaled(x: f64) -> Result<f64> {
    check_arg("i1_ratio_scaled", x)?;
    Ok(i1_ratio_scaled_unchecked(x))
}

/// Propagation kernel `exp(-z - alpha) I0(2 sqrt(z alpha))`, evaluated in
/// overflow-free form.
pub fn kernel(z: f64, alpha: f64) -> Result<f64> {
    check_arg("kernel(z)", z)?;
    check_arg("kernel(alpha)", alpha)?;
    Ok(kernel_with_decay(z, alpha, 0.0))
}

/// Flux kernel `exp(-z - alpha) z I1(2 sqrt(z alpha)) / sqrt(z alpha)`.
///
/// This is `-d/d(alpha)` of [`kernel`] plus the kernel itself, i.e. the
/// response left over after integrating the source term by parts. It equals
/// `z exp(-z)` at `alpha = 0` and vanishes identically at `z = 0`.
pub fn flux_kernel(z: f64, alpha: f64) -> Result<f64> {
    check_arg("flux_kernel(z)", z)?;
    check_arg("flux_kernel(alpha)", alpha)?;
    Ok(flux_kernel_with_decay(z, alpha, 0.0))
}

fn check_arg(function: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { function, value })
    }
}

pub(crate) fn i0_scaled_unchecked(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        let h = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..MAX_TERMS {
            let kf = k as f64;
            term *= h / (kf * kf);
            sum += term;
            if term < REL_EPS * sum {
                break;
            }
        }
        sum * (-x).exp()
    } else {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..MAX_TERMS {
            let odd = (2 * k - 1) as f64;
            let next = term * odd * odd / (8.0 * k as f64 * x);
            if next >= term {
                break;
            }
            term = next;
            sum += term;
            if term < REL_EPS * sum {
                break;
            }
        }
        sum / (2.0 * PI * x).sqrt()
    }
}

pub(crate) fn i1_ratio_scaled_unchecked(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        let h = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..MAX_TERMS {
            let kf = k as f64;
            term *= h / (kf * (kf + 1.0));
            sum += term;
            if term < REL_EPS * sum {
                break;
            }
        }
        sum * (-x).exp()
    } else {
        // Terms after the first are all negative.
        let mut term = 1.0f64;
        let mut sum = 1.0;
        for k in 1..MAX_TERMS {
            let odd = (2 * k - 1) as f64;
            let next = term * (odd * odd - 4.0) / (8.0 * k as f64 * x);
            if k > 1 && next.abs() >= term.abs() {
                break;
            }
            term = next;
            sum += term;
            if term.abs() < REL_EPS * sum {
                break;
            }
        }
        sum / (2.0 * PI * x).sqrt() / (0.5 * x)
    }
}

/// `J0(x)` and `J1(x)/(x/2)` for the oscillatory branch of the kernels.
fn j_pair(x: f64) -> (f64, f64) {
    if x <= J_SERIES_LIMIT {
        let h = -0.25 * x * x;
        let (mut t0, mut s0) = (1.0, 1.0);
        let (mut t1, mut s1) = (1.0, 1.0);
        for k in 1..MAX_TERMS {
            let kf = k as f64;
            t0 *= h / (kf * kf);
            t1 *= h / (kf * (kf + 1.0));
            s0 += t0;
            s1 += t1;
            if t0.abs() < 1e-18 && t1.abs() < 1e-18 {
                break;
            }
        }
        (s0, s1)
    } else {
        let j0 = hankel(0.0, x);
        let j1 = hankel(1.0, x);
        (j0, j1 / (0.5 * x))
    }
}

fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (8.0 * k as f64 * x);
        if a.abs() >= prev || a.abs() < 1e-18 {
            break;
        }
        prev = a.abs();
        // Signs follow (-1)^(k/2) in each of the even and odd subsequences.
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `exp(-decay) * kernel(z, alpha)`, with `alpha` allowed to be negative
/// (then the Bessel factor becomes `J0(2 sqrt(z |alpha|))`).
#[inline]
pub(crate) fn kernel_with_decay(z: f64, alpha: f64, decay: f64) -> f64 {
    if alpha >= 0.0 {
        let gap = z.sqrt() - alpha.sqrt();
        let exponent = -decay - gap * gap;
        if exponent < -745.0 {
            return 0.0;
        }
        exponent.exp() * i0_scaled_unchecked(2.0 * (z * alpha).sqrt())
    } else {
        let exponent = -decay - z - alpha;
        if exponent < -745.0 {
            return 0.0;
        }
        exponent.exp() * j_pair(2.0 * (-z * alpha).sqrt()).0
    }
}

/// `exp(-decay) * flux_kernel(z, alpha)`, with the same sign extension as
/// [`kernel_with_decay`].
#[inline]
pub(crate) fn flux_kernel_with_decay(z: f64, alpha: f64, decay: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if alpha >= 0.0 {
        let gap = z.sqrt() - alpha.sqrt();
        let exponent = -decay - gap * gap;
        if exponent < -745.0 {
            return 0.0;
        }
        z * exponent.exp() * i1_ratio_scaled_unchecked(2.0 * (z * alpha).sqrt())
    } else {
        let exponent = -decay - z - alpha;
        if exponent < -745.0 {
            return 0.0;
        }
        z * exponent.exp() * j_pair(2.0 * (-z * alpha).sqrt()).1
    }
}
