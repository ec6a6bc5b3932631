//! Maximum information rate of an ideal lossless rectangular metallic
//! waveguide under an average-power constraint.
//!
//! The crate is organised bottom-up:
//!
//! * [`dispersion`]: the scaled guided-mode frequency `f(x)`.
//! * [`modes`]: the transverse TE/TM lattice and its degeneracies.
//! * [`spectral`]: the per-mode integrals `F_{n1,n2}(β)` and the mode sum `W(β)`.
//! * [`capacity`]: the multiplier solve and every rate formula.
//! * [`verify`]: independent oracles for the closed-form constants.
//!
//! ```
//! use wgrate_core::{rate_dimensionless, ToleranceConfig};
//!
//! let sol = rate_dimensionless(1e4, &ToleranceConfig::default()).unwrap();
//! assert!(sol.ratio > 0.99 && sol.ratio < 1.0);
//! ```

pub mod capacity;
pub mod dispersion;
pub mod error;
pub mod modes;
pub mod quadrature;
pub mod spectral;
pub mod verify;

pub use capacity::{
    asymptotic_beta, gamma_of, lambda0_asymptotic, rate_asymptotic_dimensionless, rate_caves_variant_physical,
    rate_dimensionless, rate_multimode_physical, rate_single_direction, solve_beta0, solve_beta0_for,
    DimensionlessPoint, DirectionSpec, PhysicalChannelSpec, PhysicalConstants, RateMethod, RateSolution,
};
pub use dispersion::{freq_ratio, WaveTriple};
pub use error::{Error, Result};
pub use modes::{ChannelGeometry, ModeIndex, Species, WeightedTransversePair};
pub use spectral::{capacity_sum, capacity_sum_deriv, CapacitySums, SpectralValue, ToleranceConfig};
pub use verify::OracleReport;
