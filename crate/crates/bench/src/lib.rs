//! Benchmark fixtures for `wgrate-core`. The benches live in `benches/`.

/// β values spanning the low- and high-power regimes of the mode sum.
pub const BETA_GRID: [f64; 4] = [2.0, 0.5, 0.1, 0.03];

/// γ values for the multiplier solve.
pub const GAMMA_GRID: [f64; 4] = [1.0, 1e2, 1e4, 1e6];

/// Arguments of the reduced spectral function across its regimes.
pub const PHI_ARGS: [f64; 4] = [1e-3, 0.1, 1.0, 10.0];
