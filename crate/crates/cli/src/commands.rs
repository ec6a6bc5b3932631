use serde::{Deserialize, Serialize};
use wgrate_core::capacity::{
    gamma_of, rate_multimode_physical, rate_single_direction, solve_beta0_for, PhysicalChannelSpec, PhysicalConstants,
};
use wgrate_core::verify::{self, OracleReport};
use wgrate_core::{ChannelGeometry, DirectionSpec, RateMethod, ToleranceConfig};

use crate::args::{Method, Spacing};
use crate::error::CliError;

/// Below this γ the asymptotic formula is outside its regime.
pub const ASYMPTOTIC_GAMMA_THRESHOLD: f64 = 100.0;

pub const MAX_SWEEP_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepSpec {
    pub fn new(gamma_min: f64, gamma_max: f64, points: usize, spacing: Spacing) -> Result<Self, CliError> {
        if !(gamma_min > 0.0 && gamma_min.is_finite() && gamma_max.is_finite()) {
            return Err(CliError::Usage(format!(
                "gamma range must be positive and finite, got [{gamma_min}, {gamma_max}]"
            )));
        }
        if gamma_min >= gamma_max {
            return Err(CliError::Usage(format!(
                "gamma-min {gamma_min} must be below gamma-max {gamma_max}"
            )));
        }
        if !(2..=MAX_SWEEP_POINTS).contains(&points) {
            return Err(CliError::Usage(format!(
                "points must be in [2, {MAX_SWEEP_POINTS}], got {points}"
            )));
        }
        Ok(SweepSpec {
            gamma_min,
            gamma_max,
            points,
            spacing,
        })
    }

    /// Grid in ascending order, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.gamma_min;
                }
                if i == self.points - 1 {
                    return self.gamma_max;
                }
                let s = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.gamma_min + (self.gamma_max - self.gamma_min) * s,
                    Spacing::Log => {
                        let (lo, hi) = (self.gamma_min.log10(), self.gamma_max.log10());
                        10f64.powf(lo + (hi - lo) * s)
                    }
                }
            })
            .collect()
    }
}

/// One sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub gamma: f64,
    pub beta0: f64,
    pub w: f64,
    pub rate: f64,
    pub rate_asym: f64,
    pub ratio: f64,
    pub residual: f64,
}

pub const CSV_HEADER: &str = "gamma,beta0,w,rate,rate_asym,ratio,residual";

pub fn tolerance(tol: f64) -> Result<ToleranceConfig, CliError> {
    let cfg = ToleranceConfig::with_tolerance(tol);
    cfg.validate()?;
    Ok(cfg)
}

pub fn run_sweep(spec: &SweepSpec, species: u32, tol: &ToleranceConfig) -> Result<Vec<OutputRecord>, CliError> {
    if species != 1 && species != 2 {
        return Err(CliError::Usage(format!("species must be 1 or 2, got {species}")));
    }
    spec.grid()
        .into_iter()
        .enumerate()
        .map(|(row, gamma)| {
            let s = solve_beta0_for(gamma, species, 1.0, tol).map_err(|source| CliError::SweepPoint {
                row,
                gamma,
                source,
            })?;
            Ok(OutputRecord {
                gamma,
                beta0: s.beta0,
                w: s.w_at_beta0,
                rate: s.rate_dimensionless,
                rate_asym: s.rate_asymptotic,
                ratio: s.ratio,
                residual: s.residual,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub gamma: f64,
    pub method: String,
    pub species: u32,
    pub rate_bits_per_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

pub fn run_rate(
    area: f64,
    power: f64,
    method: Method,
    species: u32,
    tol: &ToleranceConfig,
) -> Result<RateReport, CliError> {
    let geometry = ChannelGeometry::square_with_area(area)?;
    let spec = PhysicalChannelSpec::with(geometry, power, species, PhysicalConstants::default())?;
    let gamma = gamma_of(&spec);
    let rate = rate_multimode_physical(&spec, tol, RateMethod::from(method))?;
    let warning = (method == Method::Asymptotic && gamma < ASYMPTOTIC_GAMMA_THRESHOLD).then(|| {
        format!(
            "gamma = {gamma:.3e} is below {ASYMPTOTIC_GAMMA_THRESHOLD}; the asymptotic rate is outside its \
             high-power regime, use --method exact"
        )
    });
    Ok(RateReport {
        gamma,
        method: match method {
            Method::Exact => "exact",
            Method::Asymptotic => "asymptotic",
        }
        .to_string(),
        species,
        rate_bits_per_s: rate,
        warning,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleDirectionReport {
    pub power: f64,
    pub theta: f64,
    pub species: u32,
    pub rate_bits_per_s: f64,
}

pub fn run_single_direction(power: f64, theta: f64, species: u32) -> Result<SingleDirectionReport, CliError> {
    let k = PhysicalConstants::default();
    let dir = DirectionSpec::new(theta, 0.0, species)?;
    let rate = rate_single_direction(power / k.hbar, &dir)?;
    Ok(SingleDirectionReport {
        power,
        theta,
        species,
        rate_bits_per_s: rate,
    })
}

/// Runs the oracle suite. `expected_offset` shifts every expected value and
/// exists only so the failure path can be exercised.
pub fn run_verify(tol: f64, expected_offset: f64) -> Result<Vec<OracleReport>, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("tol must be positive, got {tol}")));
    }
    let reports = verify::default_suite(tol, &ToleranceConfig::default())?;
    Ok(reports
        .into_iter()
        .map(|r| {
            if expected_offset == 0.0 {
                r
            } else {
                OracleReport::new(&r.name, r.computed, r.expected + expected_offset, r.bound, &r.method)
            }
        })
        .collect())
}
