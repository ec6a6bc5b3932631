//! Numerical oracles for the closed-form constants behind the asymptotic
//! rates.
//!
//! The octant integral `∫_V d³y ln[1/(1 − e^{−f(y)})] = π⁵/120` is checked
//! two ways: by nested quadrature after going to polar coordinates in the
//! transverse plane, and through its factorisation into an angular integral
//! (3/8) and a radial Bose integral (π⁴/45). Neither route touches the
//! spectral machinery used for the mode sums.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dispersion::radial;
use crate::error::Result;
use crate::quadrature::{integrate, integrate_to_infinity};
use crate::spectral::{capacity_sum, ToleranceConfig};

/// Outcome of one oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub abs_error: f64,
    /// Acceptance bound on `abs_error`.
    pub bound: f64,
    pub method: String,
}

impl OracleReport {
    pub fn new(name: &str, computed: f64, expected: f64, bound: f64, method: &str) -> Self {
        OracleReport {
            name: name.to_string(),
            computed,
            expected,
            abs_error: (computed - expected).abs(),
            bound,
            method: method.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.abs_error <= self.bound
    }

    /// Signed `computed − expected`.
    pub fn deviation(&self) -> f64 {
        self.computed - self.expected
    }
}

/// π⁵/120.
pub fn octant_integral_exact() -> f64 {
    PI.powi(5) / 120.0
}

fn bose(x: f64) -> f64 {
    // ln[1/(1 − e^{−x})]
    if x < std::f64::consts::LN_2 {
        -(-(-x).exp_m1()).ln()
    } else {
        -(-(-x).exp()).ln_1p()
    }
}

/// `(π/2)∫₀^∞ dρ ρ ∫₀^∞ dy3 ln[1/(1 − e^{−f(ρ, 0, y3)})]`.
pub fn appendix_integral_3d(tol: f64) -> Result<OracleReport> {
    let mut failure = None;
    let outer = integrate_to_infinity(
        |rho| {
            if rho <= 0.0 {
                return 0.0;
            }
            match integrate_to_infinity(|y3| bose(radial(rho, y3)), 0.0, tol, 0.0) {
                Ok(q) => rho * q.value[0],
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        tol,
        0.0,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let computed = 0.5 * PI * outer?.value[0];
    Ok(OracleReport::new(
        "octant integral (3D)",
        computed,
        octant_integral_exact(),
        1e-5,
        "nested adaptive Gauss-Kronrod, polar in (y1, y2)",
    ))
}

/// `∫₀^{π/2} cos φ / (1 + sin φ)³ dφ = 3/8`.
pub fn angular_factor(tol: f64) -> Result<f64> {
    integrate(|p| p.cos() / (1.0 + p.sin()).powi(3), 0.0, 0.5 * PI, tol, 0.0).map(|q| q.value[0])
}

/// `∫₀^∞ r² ln[1/(1 − e^{−r})] dr = 2ζ(4) = π⁴/45`.
pub fn radial_factor(tol: f64) -> Result<f64> {
    integrate_to_infinity(|r| r * r * bose(r), 0.0, tol, 0.0).map(|q| q.value[0])
}

/// Factorised route: angular factor, radial factor and `π·angular·radial`.
pub fn appendix_integral_reduced(tol: f64) -> Result<[OracleReport; 3]> {
    let angular = angular_factor(tol)?;
    let radial = radial_factor(tol)?;
    Ok([
        OracleReport::new(
            "angular factor",
            angular,
            0.375,
            1e-10,
            "adaptive Gauss-Kronrod on [0, pi/2]",
        ),
        OracleReport::new(
            "radial factor",
            radial,
            PI.powi(4) / 45.0,
            1e-8,
            "adaptive Gauss-Kronrod on mapped [0, inf)",
        ),
        OracleReport::new(
            "octant integral (reduced)",
            PI * angular * radial,
            octant_integral_exact(),
            1e-5,
            "pi * angular * radial",
        ),
    ])
}

/// Compares `W(β)·β³` with π⁵/120 on each grid point. The bound on each
/// report is twice the excluded-corner correction `π²β²/24`.
pub fn continuum_limit_check(beta_grid: &[f64], tol: &ToleranceConfig) -> Result<Vec<OracleReport>> {
    beta_grid
        .iter()
        .map(|&beta| {
            let w = capacity_sum(beta, tol)?;
            Ok(OracleReport::new(
                &format!("continuum limit beta={beta}"),
                w.value * beta.powi(3),
                octant_integral_exact(),
                PI * PI * beta * beta / 12.0,
                "discrete mode sum W(beta) * beta^3",
            ))
        })
        .collect()
}

/// `∫₀^∞ ln[1/(1 − e^{−x})] dx = π²/6`.
pub fn single_direction_constant(tol: f64) -> Result<OracleReport> {
    let q = integrate_to_infinity(bose, 0.0, tol, 0.0)?;
    Ok(OracleReport::new(
        "single-direction constant",
        q.value[0],
        PI * PI / 6.0,
        1e-10,
        "adaptive Gauss-Kronrod on mapped [0, inf)",
    ))
}

/// Default quadrature tolerance for the oracle suite.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-11;

/// Every oracle, in a fixed order.
pub fn default_suite(tol: f64, spectral: &ToleranceConfig) -> Result<Vec<OracleReport>> {
    let three_d = appendix_integral_3d(tol)?;
    let reduced = appendix_integral_reduced(tol)?;
    let agreement = OracleReport::new(
        "3D vs reduced agreement",
        three_d.computed,
        reduced[2].computed,
        1e-5,
        "difference of the two octant routes",
    );
    let mut reports = vec![three_d];
    reports.extend(reduced);
    reports.push(agreement);
    reports.push(single_direction_constant(tol)?);
    reports.extend(continuum_limit_check(&[1.0, 0.5, 0.2, 0.1], spectral)?);
    Ok(reports)
}
