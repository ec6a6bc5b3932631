//! Quadrature rules used by the spectral integrals and the oracles.
//!
//! Two building blocks: a globally adaptive 21-point Gauss–Kronrod
//! integrator over finite panels (vector-valued, so several related
//! integrands share one set of abscissae), and Gauss–Laguerre rules for
//! tails of the form `∫₀^∞ e^{-x} q(x) dx` with smooth `q`.

#![allow(clippy::excessive_precision)]

use std::sync::OnceLock;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_146,
];

/// Result of a (possibly vector-valued) quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
}

/// One 21-point Kronrod panel with the embedded 10-point Gauss estimate.
fn kronrod_panel<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Panel<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    for k in 0..N {
        kronrod[k] = WGK[10] * fc[k];
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let lo = f(centre - dx);
        let hi = f(centre + dx);
        for k in 0..N {
            let pair = lo[k] + hi[k];
            kronrod[k] += WGK[j] * pair;
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * pair;
            }
        }
    }
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for k in 0..N {
        value[k] = kronrod[k] * half;
        error[k] = ((kronrod[k] - gauss[k]) * half).abs();
    }
    Panel { a, b, value, error }
}

/// Globally adaptive Gauss–Kronrod integration of a vector integrand over
/// the interval spanned by `breaks` (ascending). The initial panels are
/// the consecutive break intervals; the panel with the largest normalised
/// error is bisected until every component satisfies
/// `error <= max(abs_tol, rel_tol * |value|)`.
pub fn adaptive<const N: usize, F>(
    mut f: F,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<Quadrature<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    debug_assert!(breaks.len() >= 2);
    let mut panels: Vec<Panel<N>> = breaks.windows(2).map(|w| kronrod_panel(&mut f, w[0], w[1])).collect();
    let mut evaluations = 21 * panels.len();

    loop {
        let (value, error) = totals(&panels);
        let targets: Vec<f64> = value.iter().map(|v| abs_tol.max(rel_tol * v.abs())).collect();
        let converged = (0..N).all(|k| error[k] <= targets[k]);
        if converged {
            return Ok(Quadrature {
                value,
                error,
                evaluations,
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureNonConvergence {
                value: value[0],
                error: error[0],
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let score = (0..N)
                    .map(|k| p.error[k] / targets[k].max(f64::MIN_POSITIVE))
                    .fold(0.0, f64::max);
                (i, score)
            })
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc })
            .0;
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval exhausted at machine resolution
            return Err(Error::QuadratureNonConvergence {
                value: value[0],
                error: error[0],
            });
        }
        panels.push(kronrod_panel(&mut f, p.a, mid));
        panels.push(kronrod_panel(&mut f, mid, p.b));
        evaluations += 42;
    }
}

fn totals<const N: usize>(panels: &[Panel<N>]) -> ([f64; N], [f64; N]) {
    // summed in ascending abscissa so the total does not depend on refinement order
    let mut order: Vec<usize> = (0..panels.len()).collect();
    order.sort_by(|&i, &j| panels[i].a.total_cmp(&panels[j].a));
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for i in order {
        for k in 0..N {
            value[k] += panels[i].value[k];
            error[k] += panels[i].error[k];
        }
    }
    (value, error)
}

/// Scalar adaptive integration over `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature<1>>
where
    F: FnMut(f64) -> f64,
{
    adaptive(move |x| [f(x)], &[a, b], rel_tol, abs_tol, 4000)
}

/// Scalar integration over `[a, ∞)` through the map `x = a + (1 - t)/t`.
pub fn integrate_to_infinity<F>(mut f: F, a: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature<1>>
where
    F: FnMut(f64) -> f64,
{
    let mapped = move |t: f64| {
        let x = a + (1.0 - t) / t;
        let v = f(x) / (t * t);
        [if v.is_finite() { v } else { 0.0 }]
    };
    adaptive(mapped, &[0.0, 0.5, 1.0], rel_tol, abs_tol, 4000)
}

/// Gauss–Laguerre rule for the weight `e^{-x}` on `[0, ∞)`.
#[derive(Debug, Clone)]
pub struct LaguerreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LaguerreRule {
    /// Nodes by Newton iteration on the three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        let mut z = 0.0_f64;
        for i in 0..n {
            z = match i {
                0 => 3.0 / (1.0 + 2.4 * nf),
                1 => z + 15.0 / (1.0 + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
                }
            };
            let mut derivative = 0.0;
            let mut previous = 0.0;
            for _ in 0..100 {
                let (p, pm1) = laguerre_pair(n, z);
                derivative = nf * (p - pm1) / z;
                previous = pm1;
                let step = p / derivative;
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            let (p, pm1) = laguerre_pair(n, z);
            if p.is_finite() {
                derivative = nf * (p - pm1) / z;
                previous = pm1;
            }
            nodes.push(z);
            weights.push(-1.0 / (derivative * nf * previous));
        }
        LaguerreRule { nodes, weights }
    }

    /// Approximates `∫₀^∞ e^{-x} q(x) dx`.
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut q: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * q(x)).sum()
    }
}

/// (L_n(z), L_{n-1}(z)) by upward recurrence.
fn laguerre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, p2)
}

/// Shared 24-point rule (primary) and 16-point rule (error estimate).
pub(crate) fn laguerre_pair_rules() -> &'static (LaguerreRule, LaguerreRule) {
    static RULES: OnceLock<(LaguerreRule, LaguerreRule)> = OnceLock::new();
    RULES.get_or_init(|| (LaguerreRule::new(24), LaguerreRule::new(16)))
}
