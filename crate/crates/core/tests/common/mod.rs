//! Test-only oracles, independent of the library's quadrature paths.
#![allow(dead_code)]

use std::f64::consts::PI;

/// ln[1/(1 − e^{−x})]
pub fn bose(x: f64) -> f64 {
    if x < 0.7 {
        -(-(-x).exp_m1()).ln()
    } else {
        -(-(-x).exp()).ln_1p()
    }
}

/// Σ_{n≥1} n^{−p}: direct sum below N plus an Euler–Maclaurin tail.
pub fn zeta_series(p: i32) -> f64 {
    let n_max = 1000;
    let head: f64 = (1..n_max).rev().map(|n| f64::from(n).powi(-p)).sum();
    let n = f64::from(n_max);
    let q = f64::from(p);
    let tail = n.powi(1 - p) / (q - 1.0) + 0.5 * n.powi(-p) + q * n.powi(-p - 1) / 12.0
        - q * (q + 1.0) * (q + 2.0) * n.powi(-p - 3) / 720.0;
    head + tail
}

/// Exp-sinh rule for ∫₀^∞ h: x = exp((π/2) sinh τ), trapezoid in τ with
/// step halving until two levels agree to `rel`.
pub fn exp_sinh<F: Fn(f64) -> f64>(h: F, rel: f64) -> f64 {
    let node = |tau: f64| {
        let x = (0.5 * PI * tau.sinh()).exp();
        let w = 0.5 * PI * tau.cosh() * x;
        let v = h(x) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let span = 4.5;
    let mut step = 0.5;
    let mut total: f64 = (-9..=9).map(|i| node(i as f64 * step)).sum::<f64>() * step;
    for _ in 0..10 {
        step *= 0.5;
        let mut fresh = 0.0;
        let mut i = 1;
        while (i as f64) * step <= span {
            fresh += node(i as f64 * step) + node(-(i as f64) * step);
            i += 2;
        }
        let refined = 0.5 * total + fresh * step;
        if (refined - total).abs() <= rel * refined.abs() {
            return refined;
        }
        total = refined;
    }
    total
}

/// Exponential integral E₁(x), x > 0.
pub fn e1(x: f64) -> f64 {
    if x <= 1.0 {
        let euler = 0.577_215_664_901_532_9;
        let mut sum = 0.0;
        let mut term = 1.0;
        for n in 1..60 {
            term *= -x / n as f64;
            sum += term / n as f64;
        }
        -euler - x.ln() - sum
    } else {
        // modified Lentz on the continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// E₂(x) = e^{−x} − x·E₁(x).
pub fn e2(x: f64) -> f64 {
    (-x).exp() - x * e1(x)
}

/// Φ(t) = Σ_k (1/k)[e^{−kt}/(kt) + E₂(kt)], from expanding the logarithm
/// and substituting v = g(u). Converges quickly for t ≳ 0.5.
pub fn phi_series(t: f64) -> f64 {
    let mut total = 0.0;
    for k in 1..10_000 {
        let a = k as f64 * t;
        let term = ((-a).exp() / a + e2(a)) / k as f64;
        total += term;
        if term < 1e-18 * total {
            break;
        }
    }
    total
}

/// Φ′(t) = −Σ_k [e^{−kt}(1/(kt) + 1/(kt)²) + E₁(kt)].
pub fn phi_deriv_series(t: f64) -> f64 {
    let mut total = 0.0;
    for k in 1..10_000 {
        let a = k as f64 * t;
        let term = (-a).exp() * (1.0 / a + 1.0 / (a * a)) + e1(a);
        total += term;
        if term < 1e-18 * total {
            break;
        }
    }
    -total
}

/// F_{n1,n2}(β) by brute-force quadrature of the unreduced integrand with
/// the quotient form of the dispersion function.
pub fn mode_term_brute(n1: f64, n2: f64, beta: f64) -> f64 {
    let k2 = n1 * n1 + n2 * n2;
    exp_sinh(
        |x| {
            let f = 2.0 * k2 / (-x + (x * x + 4.0 * k2).sqrt());
            if f.is_finite() {
                bose(beta * f)
            } else {
                0.0
            }
        },
        1e-14,
    )
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}
