//! Capacity-achieving multiplier and the resulting information rates.
//!
//! The optimal input is the thermal state at multiplier λ0, so the rate per
//! unit time is `(λ0·P + ln Z(λ0)/T) / ln 2` with λ0 fixed by the power
//! constraint. For the square guide `ln Z/T = (c/√A)·W(β)` with
//! `β = πλħc/√A`, which makes `R√A/c` a function of `γ = AP/(c²ħ)` alone:
//!
//! ```text
//! W′(β0) = −γ/π,    R√A/c = [γβ0/π + W(β0)] / ln 2
//! ```
//!
//! For `g` species the mode sum is scaled by `g/2` (the tabulated `W`
//! already counts TE and TM).

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::modes::ChannelGeometry;
use crate::spectral::{capacity_sums_with_aspect, CapacitySums, ToleranceConfig};

/// Speed of light and reduced Planck constant, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub c: f64,
    pub hbar: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            c: 299_792_458.0,
            hbar: 1.054_571_817e-34,
        }
    }
}

impl PhysicalConstants {
    /// `c = ħ = 1`.
    pub fn natural() -> Self {
        PhysicalConstants { c: 1.0, hbar: 1.0 }
    }
}

fn check_species(g: u32) -> Result<u32> {
    if g == 1 || g == 2 {
        Ok(g)
    } else {
        Err(Error::InvalidSpecies(g))
    }
}

/// A waveguide driven at average power `power` (watts).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalChannelSpec {
    pub geometry: ChannelGeometry,
    pub power: f64,
    pub species_count: u32,
    pub constants: PhysicalConstants,
}

impl PhysicalChannelSpec {
    /// Both species, CODATA constants.
    pub fn new(geometry: ChannelGeometry, power: f64) -> Result<Self> {
        Self::with(geometry, power, 2, PhysicalConstants::default())
    }

    pub fn with(
        geometry: ChannelGeometry,
        power: f64,
        species_count: u32,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        positive("power", power)?;
        check_species(species_count)?;
        positive("c", constants.c)?;
        positive("hbar", constants.hbar)?;
        Ok(PhysicalChannelSpec {
            geometry,
            power,
            species_count,
            constants,
        })
    }
}

/// The scaled problem state `(γ, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessPoint {
    pub gamma: f64,
    pub beta: f64,
}

impl DimensionlessPoint {
    pub fn new(gamma: f64, beta: f64) -> Result<Self> {
        Ok(DimensionlessPoint {
            gamma: positive("gamma", gamma)?,
            beta: positive("beta", beta)?,
        })
    }

    /// Multiplier λ (1/J) for a guide of area `area`.
    pub fn lambda(&self, area: f64, constants: &PhysicalConstants) -> f64 {
        self.beta * area.sqrt() / (PI * constants.hbar * constants.c)
    }
}

/// Solver output at one value of γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSolution {
    pub gamma: f64,
    pub beta0: f64,
    pub w_at_beta0: f64,
    /// `R√A/c` in bits.
    pub rate_dimensionless: f64,
    pub rate_asymptotic: f64,
    pub ratio: f64,
    /// `|W′(β0) + γ/π|`.
    pub residual: f64,
    /// Number of mode-sum evaluations.
    pub iterations: usize,
}

/// Propagation direction for the single-direction regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionSpec {
    theta: f64,
    phi: f64,
    species_count: u32,
}

impl DirectionSpec {
    pub fn new(theta: f64, phi: f64, species_count: u32) -> Result<Self> {
        if !(0.0..PI / 2.0).contains(&theta) || theta.cos() <= 0.0 {
            return Err(Error::InvalidTheta(theta));
        }
        if !(0.0..=PI / 2.0).contains(&phi) {
            return Err(Error::InvalidPhi(phi));
        }
        check_species(species_count)?;
        Ok(DirectionSpec {
            theta,
            phi,
            species_count,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn species_count(&self) -> u32 {
        self.species_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateMethod {
    Exact,
    Asymptotic,
}

/// `γ = A·P / (c²·ħ)`.
pub fn gamma_of(spec: &PhysicalChannelSpec) -> f64 {
    let k = &spec.constants;
    spec.geometry.area() * spec.power / (k.c * k.c * k.hbar)
}

/// High-power multiplier guess `β* = (gπ⁶/(80γ))^{1/4}`.
pub fn asymptotic_beta(gamma: f64, species_count: u32) -> f64 {
    (f64::from(species_count) * PI.powi(6) / (80.0 * gamma)).powf(0.25)
}

/// Evaluates `(g/2)·W` and its derivatives at one β.
struct ModeSumModel<'a> {
    half_species: f64,
    aspect: f64,
    tol: &'a ToleranceConfig,
    evaluations: usize,
}

impl ModeSumModel<'_> {
    fn at(&mut self, beta: f64) -> Result<CapacitySums> {
        self.evaluations += 1;
        let mut s = capacity_sums_with_aspect(beta, self.aspect, self.tol)?;
        for v in [&mut s.w, &mut s.dw, &mut s.d2w] {
            v.value *= self.half_species;
            v.est_error *= self.half_species;
        }
        if !s.dw.value.is_finite() || s.dw.value >= 0.0 {
            return Err(Error::NonFinite("W'"));
        }
        Ok(s)
    }
}

/// Solves `W′(β0) = −γ/π` for the square guide with both species.
pub fn solve_beta0(gamma: f64, tol: &ToleranceConfig) -> Result<RateSolution> {
    solve_beta0_for(gamma, 2, 1.0, tol)
}

/// Solves for β0 with `g` species and aspect parameter `r = √(L2/L1)`.
///
/// Safeguarded Newton in `ln β` on `ln(−W′) − ln(γ/π)`, which is close to
/// linear with slope −4. Steps are clamped until the root is bracketed;
/// afterwards a step leaving the bracket is replaced by a geometric
/// bisection.
pub fn solve_beta0_for(gamma: f64, species_count: u32, aspect: f64, tol: &ToleranceConfig) -> Result<RateSolution> {
    positive("gamma", gamma)?;
    positive("aspect", aspect)?;
    check_species(species_count)?;
    tol.validate()?;
    let target = gamma / PI;
    let mut model = ModeSumModel {
        half_species: 0.5 * f64::from(species_count),
        aspect,
        tol,
        evaluations: 0,
    };

    let mut beta = asymptotic_beta(gamma, species_count);
    // lo: |W′| > γ/π, hi: |W′| < γ/π
    let mut lo: Option<f64> = None;
    let mut hi: Option<f64> = None;
    for _ in 0..tol.max_iterations {
        let s = model.at(beta)?;
        let residual = s.dw.value + target;
        if residual.abs() <= tol.root_rel_tol * target {
            return Ok(finish(gamma, species_count, beta, &s, model.evaluations));
        }
        if residual < 0.0 {
            lo = Some(beta);
        } else {
            hi = Some(beta);
        }
        if let (Some(l), Some(h)) = (lo, hi) {
            if h / l - 1.0 <= 4.0 * f64::EPSILON {
                return Ok(finish(gamma, species_count, beta, &s, model.evaluations));
            }
        }
        let psi = (-s.dw.value).ln() - target.ln();
        let slope = beta * s.d2w.value / s.dw.value;
        let mut step = -psi / slope;
        if !step.is_finite() || slope >= 0.0 {
            step = if residual < 0.0 { 1.0 } else { -1.0 };
        }
        let mut next = beta * step.clamp(-4f64.ln(), 4f64.ln()).exp();
        match (lo, hi) {
            (Some(l), Some(h)) if !(next > l && next < h) => next = (l * h).sqrt(),
            _ => {}
        }
        beta = next;
        if beta < 1e-300 || !beta.is_finite() {
            break;
        }
    }
    Err(Error::BracketFailure { gamma })
}

fn finish(gamma: f64, species_count: u32, beta0: f64, s: &CapacitySums, iterations: usize) -> RateSolution {
    let rate = (gamma * beta0 / PI + s.w.value) / LN_2;
    let asym = rate_asymptotic_dimensionless(gamma, species_count);
    RateSolution {
        gamma,
        beta0,
        w_at_beta0: s.w.value,
        rate_dimensionless: rate,
        rate_asymptotic: asym,
        ratio: rate / asym,
        residual: (s.dw.value + gamma / PI).abs(),
        iterations,
    }
}

/// Plain geometric bisection on the same equation, to relative bracket
/// width `rel_width`. Slow; used to cross-check the Newton path.
pub fn solve_beta0_bisection(gamma: f64, rel_width: f64, tol: &ToleranceConfig) -> Result<f64> {
    positive("gamma", gamma)?;
    let target = gamma / PI;
    let mut model = ModeSumModel {
        half_species: 1.0,
        aspect: 1.0,
        tol,
        evaluations: 0,
    };
    let guess = asymptotic_beta(gamma, 2);
    let (mut lo, mut hi) = (guess / 4.0, guess * 4.0);
    let mut expansions = 0;
    while model.at(lo)?.dw.value + target >= 0.0 {
        hi = lo;
        lo /= 4.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::BracketFailure { gamma });
        }
    }
    while model.at(hi)?.dw.value + target <= 0.0 {
        lo = hi;
        hi *= 4.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::BracketFailure { gamma });
        }
    }
    while hi / lo - 1.0 > rel_width {
        let mid = (lo * hi).sqrt();
        if model.at(mid)?.dw.value + target < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// `R√A/c` for the square guide with both species.
pub fn rate_dimensionless(gamma: f64, tol: &ToleranceConfig) -> Result<RateSolution> {
    solve_beta0(gamma, tol)
}

/// `(4/(3 ln 2))·(gπ²/80)^{1/4}·γ^{3/4}`.
pub fn rate_asymptotic_dimensionless(gamma: f64, species_count: u32) -> f64 {
    4.0 / (3.0 * LN_2) * (f64::from(species_count) * PI * PI / 80.0).powf(0.25) * gamma.powf(0.75)
}

/// Multimode rate in bits per second.
pub fn rate_multimode_physical(spec: &PhysicalChannelSpec, tol: &ToleranceConfig, method: RateMethod) -> Result<f64> {
    let k = &spec.constants;
    let g = f64::from(spec.species_count);
    let area = spec.geometry.area();
    match method {
        RateMethod::Asymptotic => Ok(4.0 / (3.0 * LN_2)
            * (g * PI * PI * area / (80.0 * k.c * k.c)).powf(0.25)
            * (spec.power / k.hbar).powf(0.75)),
        RateMethod::Exact => {
            let sol = solve_beta0_for(gamma_of(spec), spec.species_count, spec.geometry.aspect(), tol)?;
            Ok(k.c / area.sqrt() * sol.rate_dimensionless)
        }
    }
}

/// High-power multiplier `λ0 = (gπ²A/(80Pħ³c²))^{1/4}` in 1/J.
pub fn lambda0_asymptotic(spec: &PhysicalChannelSpec) -> f64 {
    let k = &spec.constants;
    let g = f64::from(spec.species_count);
    (g * PI * PI * spec.geometry.area() / (80.0 * spec.power * k.hbar.powi(3) * k.c * k.c)).powf(0.25)
}

/// High-power rate of the per-mode, velocity-weighted maximisation:
/// `(4/(3 ln 2))·(gπ²A/(120c²))^{1/4}·(P/ħ)^{3/4}`.
pub fn rate_caves_variant_physical(spec: &PhysicalChannelSpec) -> f64 {
    let k = &spec.constants;
    let g = f64::from(spec.species_count);
    4.0 / (3.0 * LN_2)
        * (g * PI * PI * spec.geometry.area() / (120.0 * k.c * k.c)).powf(0.25)
        * (spec.power / k.hbar).powf(0.75)
}

/// Broadband rate restricted to one propagation direction:
/// `(cos θ / ln 2)·√(πP/(3ħ))`, times √2 with both species.
pub fn rate_single_direction(power_over_hbar: f64, dir: &DirectionSpec) -> Result<f64> {
    positive("power_over_hbar", power_over_hbar)?;
    let species = if dir.species_count == 2 { 2f64.sqrt() } else { 1.0 };
    Ok(dir.theta.cos() / LN_2 * (PI * power_over_hbar / 3.0).sqrt() * species)
}

/// `ln Z/T = π cos²θ / (12 λ ħ)` per species, in units where `ħ = 1`.
pub fn single_direction_log_partition(lambda: f64, dir: &DirectionSpec) -> f64 {
    f64::from(dir.species_count) * PI * dir.theta.cos().powi(2) / (12.0 * lambda)
}
