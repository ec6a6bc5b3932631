//! Per-mode spectral integrals and the truncated transverse mode sum.
//!
//! Every mode integral reduces to one special function of a single
//! variable. Because the dispersion function depends on the transverse
//! indices only through κ = √(n1² + n2²) and is homogeneous of degree one,
//!
//! ```text
//! F_{n1,n2}(β) = ∫₀^∞ dx ln[1/(1 − e^{−β f(n1,n2,x)})] = κ·Φ(βκ)
//! Φ(t) = ∫₀^∞ du ln[1/(1 − e^{−t·g(u)})],   g(u) = (u + √(u² + 4))/2
//! ```
//!
//! Φ and its first two derivatives are integrated in the variable
//! `s = t·g(u)` (so `u = s/t − t/s`): an adaptive Gauss–Kronrod part on
//! `[t, s₀]` and a Gauss–Laguerre tail on `[max(t, s₀), ∞)`.
//!
//! The mode sum `W(β) = Σ_{n1,n2≥1} F + Σ_{n1≥1} F_{n1,0}` is accumulated
//! over κ-shells in ascending order and truncated once an analytic bound
//! on the remaining shells falls below `sum_tail_tol` times the partial sum.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::modes::{ModeIndex, WeightedTransversePair};
use crate::quadrature::{adaptive, laguerre_pair_rules};

/// Start of the Gauss–Laguerre tail in the `s` variable.
const LAGUERRE_START: f64 = 6.0;

/// Numerical tolerances shared by the spectral sums and the root solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative tolerance of each spectral quadrature.
    pub quad_rel_tol: f64,
    /// Mode-sum truncation: tail bound relative to the partial sum.
    pub sum_tail_tol: f64,
    /// Root solve: `|W′(β0) + γ/π| ≤ root_rel_tol · γ/π`.
    pub root_rel_tol: f64,
    /// Hard cap on the transverse cutoff.
    pub max_transverse_cutoff: usize,
    pub max_iterations: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            quad_rel_tol: 1e-10,
            sum_tail_tol: 1e-10,
            root_rel_tol: 1e-10,
            max_transverse_cutoff: 1_000_000,
            max_iterations: 200,
        }
    }
}

impl ToleranceConfig {
    /// Defaults with quadrature and truncation tolerances set to `tol`.
    pub fn with_tolerance(tol: f64) -> Self {
        ToleranceConfig {
            quad_rel_tol: tol,
            sum_tail_tol: tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if !ok(self.quad_rel_tol) {
            return Err(Error::InvalidTolerance("quad_rel_tol must be positive"));
        }
        if !ok(self.sum_tail_tol) {
            return Err(Error::InvalidTolerance("sum_tail_tol must be positive"));
        }
        if !ok(self.root_rel_tol) {
            return Err(Error::InvalidTolerance("root_rel_tol must be positive"));
        }
        if self.max_transverse_cutoff < 1 || self.max_iterations < 1 {
            return Err(Error::InvalidTolerance("cutoff and iteration caps must be at least 1"));
        }
        Ok(())
    }
}

/// A computed spectral quantity with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralValue {
    pub value: f64,
    pub est_error: f64,
    /// Number of Φ evaluations (κ-shells for mode sums).
    pub terms_used: usize,
}

/// Φ(t), Φ′(t), Φ″(t) with per-component error estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub error: [f64; 3],
}

/// −ln(1 − e^{−s}), accurate for small and large `s`.
#[inline]
fn neg_log1m_exp(s: f64) -> f64 {
    if s < std::f64::consts::LN_2 {
        -(-(-s).exp_m1()).ln()
    } else {
        -(-(-s).exp()).ln_1p()
    }
}

fn laguerre_tail(t: f64, start: f64) -> ([f64; 3], [f64; 3]) {
    let (fine, coarse) = laguerre_pair_rules();
    let t2 = t * t;
    let eval = |nodes: &[f64], weights: &[f64]| {
        let mut acc = [0.0; 3];
        for (&x, &w) in nodes.iter().zip(weights) {
            let s = start + x;
            let q = (-s).exp();
            let one_minus_q = -(-s).exp_m1();
            // e^{s}·(−ln(1 − e^{−s}))
            let scaled_log = if q > 0.0 { -(-q).ln_1p() / q } else { 1.0 };
            acc[0] += w * scaled_log * (1.0 + t2 / (s * s));
            acc[1] += w * (s + t2 / s) / one_minus_q;
            acc[2] += w * (s * s + t2) / (one_minus_q * one_minus_q);
        }
        acc
    };
    let hi = eval(&fine.nodes, &fine.weights);
    let lo = eval(&coarse.nodes, &coarse.weights);
    let damp = (-start).exp();
    let scale = [damp / t, -damp / t2, damp / (t2 * t)];
    let mut value = [0.0; 3];
    let mut error = [0.0; 3];
    for k in 0..3 {
        value[k] = scale[k] * hi[k];
        error[k] = (scale[k] * (hi[k] - lo[k])).abs();
    }
    (value, error)
}

/// Φ and its first two derivatives at `t > 0`.
pub fn phi_jet(t: f64, quad_rel_tol: f64) -> Result<PhiJet> {
    positive("t", t)?;
    let mut value = [0.0; 3];
    let mut error = [0.0; 3];
    let tail_start = t.max(LAGUERRE_START);
    if t < LAGUERRE_START {
        let t2 = t * t;
        let t3 = t2 * t;
        let integrand = |s: f64| {
            let em1 = s.exp_m1();
            let one_minus_q = -(-s).exp_m1();
            [
                neg_log1m_exp(s) * (1.0 + t2 / (s * s)) / t,
                -(s + t2 / s) / (t2 * em1),
                (s * s + t2) / (em1 * one_minus_q) / t3,
            ]
        };
        // log-graded panels resolve the ln(1/s) behaviour near s = t
        let mut breaks = vec![t];
        let mut s = t;
        while s * 4.0 < LAGUERRE_START {
            s *= 4.0;
            breaks.push(s);
        }
        breaks.push(LAGUERRE_START);
        let q = adaptive(integrand, &breaks, quad_rel_tol, 0.0, 2000)?;
        value = q.value;
        error = q.error;
    }
    let (tail, tail_err) = laguerre_tail(t, tail_start);
    for k in 0..3 {
        value[k] += tail[k];
        error[k] += tail_err[k];
    }
    if value.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("phi"));
    }
    Ok(PhiJet {
        value: value[0],
        d1: value[1],
        d2: value[2],
        error,
    })
}

/// Φ(t).
pub fn phi(t: f64, tol: &ToleranceConfig) -> Result<SpectralValue> {
    let jet = phi_jet(t, tol.quad_rel_tol)?;
    Ok(SpectralValue {
        value: jet.value,
        est_error: jet.error[0],
        terms_used: 1,
    })
}

/// Φ′(t), always negative.
pub fn phi_deriv(t: f64, tol: &ToleranceConfig) -> Result<SpectralValue> {
    let jet = phi_jet(t, tol.quad_rel_tol)?;
    Ok(SpectralValue {
        value: jet.d1,
        est_error: jet.error[1],
        terms_used: 1,
    })
}

fn pair_kappa(n1: u32, n2: u32) -> Result<f64> {
    if n1 == 0 && n2 == 0 {
        return Err(Error::ExcludedMode);
    }
    Ok(f64::from(n1).hypot(f64::from(n2)))
}

/// `F_{n1,n2}(β) = κ·Φ(βκ)`.
pub fn mode_spectral_term(n1: u32, n2: u32, beta: f64, tol: &ToleranceConfig) -> Result<SpectralValue> {
    let kappa = pair_kappa(n1, n2)?;
    positive("beta", beta)?;
    let jet = phi_jet(beta * kappa, tol.quad_rel_tol)?;
    Ok(SpectralValue {
        value: kappa * jet.value,
        est_error: kappa * jet.error[0],
        terms_used: 1,
    })
}

/// `∂F_{n1,n2}/∂β = κ²·Φ′(βκ)`, always negative.
pub fn mode_spectral_term_deriv(n1: u32, n2: u32, beta: f64, tol: &ToleranceConfig) -> Result<SpectralValue> {
    let kappa = pair_kappa(n1, n2)?;
    positive("beta", beta)?;
    let jet = phi_jet(beta * kappa, tol.quad_rel_tol)?;
    Ok(SpectralValue {
        value: kappa * kappa * jet.d1,
        est_error: kappa * kappa * jet.error[1],
        terms_used: 1,
    })
}

/// Upper bound on `F` for a mode of transverse magnitude `kappa`:
/// `2e^{−βκ} / (β(1 − e^{−βκ}))`.
pub fn term_envelope(kappa: f64, beta: f64) -> f64 {
    let x = beta * kappa;
    2.0 * (-x).exp() / (beta * -(-x).exp_m1())
}

/// Upper bound on `|∂F/∂β|`: `2e^{−βκ}(κ/β + 1/β²) / (1 − e^{−βκ})`.
pub fn deriv_envelope(kappa: f64, beta: f64) -> f64 {
    let x = beta * kappa;
    2.0 * (-x).exp() * (kappa / beta + 1.0 / (beta * beta)) / -(-x).exp_m1()
}

/// Bound on `Σ_{κ>K} w·e^{−βκ}(p0 + p1κ)/D` over the half-weighted lattice,
/// using the counting majorant `N(ρ) ≤ πρ²/4 + cρ` with `c = (r + 1/r)/2`
/// and Abel summation (valid because the envelope is nonincreasing).
fn shell_tail(k: f64, beta: f64, aspect: f64, p0: f64, p1: f64, denom: f64) -> f64 {
    let c = 0.5 * (aspect + 1.0 / aspect);
    let e = (-beta * k).exp();
    let m0 = e / beta;
    let m1 = e * (k / beta + 1.0 / (beta * beta));
    let m2 = e * (k * k / beta + 2.0 * k / (beta * beta) + 2.0 / (beta * beta * beta));
    let boundary = e * (p0 + p1 * k) * (0.25 * PI * k * k + c * k);
    let integral = p0 * c * m0 + (0.5 * PI * p0 + p1 * c) * m1 + 0.5 * PI * p1 * m2;
    (boundary + integral) / denom
}

/// Analytic bounds on the remaining contributions to `W` and `|W′|` from
/// shells with κ > `k`.
pub fn tail_bounds(k: f64, beta: f64, aspect: f64) -> (f64, f64) {
    let denom = -(-beta * k).exp_m1();
    let w = shell_tail(k, beta, aspect, 2.0 / beta, 0.0, denom);
    let dw = shell_tail(k, beta, aspect, 2.0 / (beta * beta), 2.0 / beta, denom);
    (w, dw)
}

/// W(β), W′(β), W″(β) evaluated with a common truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacitySums {
    pub w: SpectralValue,
    pub dw: SpectralValue,
    pub d2w: SpectralValue,
    /// κ cutoff at which the sums were truncated.
    pub cutoff: f64,
}

/// Half-weighted shells `(κ, w)` with `lo < κ ≤ hi` on the square lattice,
/// ascending in κ. Interior pairs weigh 1, each edge pair 1/2.
fn square_shells(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let m_lo = if lo <= 0.0 { 1 } else { (lo * lo).floor() as u64 + 1 };
    let m_hi = (hi * hi).floor() as u64;
    if m_hi < m_lo {
        return Vec::new();
    }
    let span = (m_hi - m_lo + 1) as usize;
    let mut weight = vec![0u32; span];
    let isqrt = |m: u64| {
        let mut r = (m as f64).sqrt() as u64;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        r
    };
    // interior pairs contribute 1, the two edges of a perfect square 1/2 each
    let n_max = isqrt(m_hi);
    for n1 in 1..=n_max {
        let base = n1 * n1;
        if base >= m_hi {
            break;
        }
        let n2_lo = if m_lo <= base + 1 {
            1
        } else {
            isqrt(m_lo - base - 1) + 1
        };
        let n2_hi = isqrt(m_hi - base);
        for n2 in n2_lo..=n2_hi {
            weight[(base + n2 * n2 - m_lo) as usize] += 2;
        }
    }
    for n in isqrt(m_lo - 1) + 1..=n_max {
        weight[(n * n - m_lo) as usize] += 2;
    }
    weight
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0)
        .map(|(i, &w)| (((m_lo + i as u64) as f64).sqrt(), 0.5 * f64::from(w)))
        .collect()
}

/// Shells for a rectangular lattice with transverse magnitude
/// `√((n1·r)² + (n2/r)²)`.
fn rect_shells(lo: f64, hi: f64, aspect: f64) -> Vec<(f64, f64)> {
    let mut points = Vec::new();
    let n1_max = (hi / aspect).floor() as u64;
    for n1 in 0..=n1_max {
        let a = n1 as f64 * aspect;
        let rem = hi * hi - a * a;
        if rem < 0.0 {
            break;
        }
        let n2_max = (rem.sqrt() * aspect).floor() as u64;
        for n2 in 0..=n2_max {
            if n1 == 0 && n2 == 0 {
                continue;
            }
            let kappa = a.hypot(n2 as f64 / aspect);
            if kappa > lo && kappa <= hi {
                let w = if n1 == 0 || n2 == 0 { 0.5 } else { 1.0 };
                points.push((kappa, w));
            }
        }
    }
    points.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut shells: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for (kappa, w) in points {
        match shells.last_mut() {
            Some(last) if last.0 == kappa => last.1 += w,
            _ => shells.push((kappa, w)),
        }
    }
    shells
}

/// W, W′ and W″ for a guide with aspect parameter `r = √(L2/L1)`
/// (`r = 1` is the square guide). All three share one truncation.
pub fn capacity_sums_with_aspect(beta: f64, aspect: f64, tol: &ToleranceConfig) -> Result<CapacitySums> {
    positive("beta", beta)?;
    positive("aspect", aspect)?;
    tol.validate()?;

    // lower estimates of |W| and |W′| used to choose the first cutoff
    let lowest = phi_jet(beta * aspect.min(1.0 / aspect), tol.quad_rel_tol)?;
    let continuum = PI.powi(5) / (120.0 * beta.powi(3));
    let est_w = (0.5 * continuum).max(lowest.value);
    let est_dw = (1.5 * continuum / beta).max(lowest.d1.abs());

    let ladder = |k: f64| k * 1.15 + 1.0;
    let mut cutoff = (2.0_f64).max(1.0 / beta);
    loop {
        let (bw, bdw) = tail_bounds(cutoff, beta, aspect);
        if bw <= tol.sum_tail_tol * est_w && bdw <= tol.sum_tail_tol * est_dw {
            break;
        }
        cutoff = ladder(cutoff);
        if cutoff > tol.max_transverse_cutoff as f64 {
            return Err(Error::CutoffExceeded {
                beta,
                needed: cutoff,
                cap: tol.max_transverse_cutoff,
            });
        }
    }

    let square = aspect == 1.0;
    let mut sums = [0.0; 3];
    let mut errs = [0.0; 3];
    let mut terms = 0usize;
    let mut lower = 0.0;
    loop {
        let shells = if square {
            square_shells(lower, cutoff)
        } else {
            rect_shells(lower, cutoff, aspect)
        };
        for (kappa, weight) in shells {
            let jet = phi_jet(beta * kappa, tol.quad_rel_tol)?;
            let k2 = kappa * kappa;
            sums[0] += weight * kappa * jet.value;
            sums[1] += weight * k2 * jet.d1;
            sums[2] += weight * k2 * kappa * jet.d2;
            errs[0] += weight * kappa * jet.error[0];
            errs[1] += weight * k2 * jet.error[1];
            errs[2] += weight * k2 * kappa * jet.error[2];
            terms += 1;
        }
        let (bw, bdw) = tail_bounds(cutoff, beta, aspect);
        if bw <= tol.sum_tail_tol * sums[0] && bdw <= tol.sum_tail_tol * sums[1].abs() {
            if sums.iter().any(|s| !s.is_finite()) {
                return Err(Error::NonFinite("mode sum"));
            }
            let sv = |value, est_error| SpectralValue {
                value,
                est_error,
                terms_used: terms,
            };
            return Ok(CapacitySums {
                w: sv(sums[0], errs[0] + bw),
                dw: sv(sums[1], errs[1] + bdw),
                d2w: sv(sums[2], errs[2]),
                cutoff,
            });
        }
        lower = cutoff;
        cutoff = ladder(cutoff);
        if cutoff > tol.max_transverse_cutoff as f64 {
            return Err(Error::CutoffExceeded {
                beta,
                needed: cutoff,
                cap: tol.max_transverse_cutoff,
            });
        }
    }
}

/// W, W′ and W″ for the square guide.
pub fn capacity_sums(beta: f64, tol: &ToleranceConfig) -> Result<CapacitySums> {
    capacity_sums_with_aspect(beta, 1.0, tol)
}

/// `W(β) = Σ_{n1,n2≥1} F_{n1,n2}(β) + Σ_{n1≥1} F_{n1,0}(β)`.
pub fn capacity_sum(beta: f64, tol: &ToleranceConfig) -> Result<SpectralValue> {
    capacity_sums(beta, tol).map(|s| s.w)
}

/// `W′(β)`, summed termwise.
pub fn capacity_sum_deriv(beta: f64, tol: &ToleranceConfig) -> Result<SpectralValue> {
    capacity_sums(beta, tol).map(|s| s.dw)
}

/// `(1/2)·Σ degeneracy·F` over an explicit list of pairs, term by term.
pub fn weighted_pair_sum(pairs: &[WeightedTransversePair], beta: f64, tol: &ToleranceConfig) -> Result<f64> {
    let mut total = 0.0;
    for p in pairs {
        total += f64::from(p.degeneracy) * mode_spectral_term(p.n1, p.n2, beta, tol)?.value;
    }
    Ok(0.5 * total)
}

/// `Σ F` over an explicit list of species-labelled modes.
pub fn mode_sum(modes: &[ModeIndex], beta: f64, tol: &ToleranceConfig) -> Result<f64> {
    modes
        .iter()
        .map(|m| mode_spectral_term(m.n1(), m.n2(), beta, tol).map(|v| v.value))
        .sum()
}
