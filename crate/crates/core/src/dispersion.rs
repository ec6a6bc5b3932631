//! Guided-mode dispersion function.
//!
//! With transverse components `(x1, x2)` and longitudinal parameter `x3`,
//! the scaled mode frequency is
//!
//! ```text
//! f(x) = 2κ² / (−x3 + √(x3² + 4κ²)),   κ² = x1² + x2²
//! ```
//!
//! which is evaluated here in the conjugate form `(x3 + √(x3² + 4κ²)) / 2`.
//! The two are algebraically identical; the printed form loses all
//! significant digits in its denominator once `x3 ≫ κ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point in the positive octant of scaled wavenumber space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveTriple {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl WaveTriple {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        for (name, value) in [("x1", x1), ("x2", x2), ("x3", x3)] {
            if value.is_nan() || value < 0.0 || value.is_infinite() {
                return Err(Error::NegativeComponent { name, value });
            }
        }
        Ok(WaveTriple { x1, x2, x3 })
    }

    /// Transverse magnitude κ = √(x1² + x2²).
    pub fn kappa(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn scaled(&self, s: f64) -> Self {
        WaveTriple {
            x1: s * self.x1,
            x2: s * self.x2,
            x3: s * self.x3,
        }
    }
}

/// Scaled mode frequency `f(w)`. Fails for zero transverse wavenumber.
pub fn freq_ratio(w: &WaveTriple) -> Result<f64> {
    let kappa = w.kappa();
    if kappa == 0.0 {
        return Err(Error::ZeroTransverse);
    }
    Ok(radial(kappa, w.x3))
}

/// `f` as a function of the transverse magnitude and `x3` only.
#[inline]
pub fn radial(kappa: f64, x3: f64) -> f64 {
    // √(x3² + 4κ²) via hypot avoids overflow for large arguments
    0.5 * (x3 + x3.hypot(2.0 * kappa))
}

/// The reduced profile `g(u) = f(1, 0, u) = (u + √(u² + 4)) / 2`, so that
/// `f(x) = κ·g(x3/κ)`.
#[inline]
pub fn profile(u: f64) -> f64 {
    radial(1.0, u)
}

/// Inverse of [`profile`]: `u = v − 1/v` for `v ≥ 1`.
#[inline]
pub fn profile_inverse(v: f64) -> f64 {
    v - 1.0 / v
}

/// The printed quotient form, kept for comparison. Subject to cancellation
/// in the denominator for `x3 ≫ κ`.
pub fn freq_ratio_quotient_form(w: &WaveTriple) -> Result<f64> {
    let k2 = w.x1 * w.x1 + w.x2 * w.x2;
    if k2 == 0.0 {
        return Err(Error::ZeroTransverse);
    }
    Ok(2.0 * k2 / (-w.x3 + (w.x3 * w.x3 + 4.0 * k2).sqrt()))
}
