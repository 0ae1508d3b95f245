//! `K_ν(x)` from `∫_0^∞ e^{−x cosh t} cosh(νt) dt` by the trapezoidal rule,
//! which converges geometrically for this entire, even integrand.

use num_complex::Complex64;

use super::SpecFunResult;

const LOG_CUTOFF: f64 = 40.0;
const MAX_LEVEL: u32 = 16;

/// `log |integrand|` of the scaled integral, up to `ln 1` from the cosh.
fn log_mag(nr: f64, x: f64, t: f64) -> f64 {
    let s = (0.5 * t).sinh();
    -2.0 * x * s * s + nr * t
}

/// Scaled integrand `e^{x} e^{−x cosh t} cosh(νt)`, no overflow.
fn integrand(nu: Complex64, x: f64, t: f64) -> Complex64 {
    let s = (0.5 * t).sinh();
    let base = -2.0 * x * s * s;
    ((nu * t + base).exp() + (-nu * t + base).exp()) * 0.5
}

/// `(e^x K_ν(x), error bound)` with the trapezoid halved `extra` times beyond convergence.
fn scaled(nu: Complex64, x: f64, extra: u32) -> (Complex64, f64) {
    let nr = nu.re.abs();
    let t_peak = (nr / x).asinh();
    let peak = log_mag(nr, x, t_peak);
    // truncation point: integrand below peak − LOG_CUTOFF
    let mut hi = t_peak + 1.0;
    while log_mag(nr, x, hi) > peak - LOG_CUTOFF {
        hi *= 2.0;
    }
    let mut lo = t_peak;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if log_mag(nr, x, mid) > peak - LOG_CUTOFF {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_max = hi;
    let slope = x * t_max.sinh() - nr;
    let tail = log_mag(nr, x, t_max).exp() / slope.max(1e-300);

    let mut h = (t_max / 8.0).min(0.5);
    let mut n = (t_max / h).ceil() as usize;
    let mut sum = integrand(nu, x, 0.0) * 0.5;
    let mut mag = 0.5 * sum.norm();
    for k in 1..=n {
        let v = integrand(nu, x, k as f64 * h);
        mag += v.norm();
        sum += v;
    }
    let mut prev = sum * h;
    let mut diff = f64::INFINITY;
    let mut converged_at = None;
    for level in 0..MAX_LEVEL {
        h *= 0.5;
        n *= 2;
        for k in (1..=n).step_by(2) {
            let v = integrand(nu, x, k as f64 * h);
            mag += v.norm();
            sum += v;
        }
        let cur = sum * h;
        diff = (cur - prev).norm();
        prev = cur;
        let scale = mag * h;
        if converged_at.is_none() && diff <= 1e-15 * scale {
            converged_at = Some(level);
        }
        if let Some(c) = converged_at {
            if level >= c + extra {
                break;
            }
        }
    }
    let rounding = 16.0 * f64::EPSILON * mag * h;
    (prev, diff + tail + rounding)
}

/// `K_ν(x)` for `x > 0`; real for real or purely imaginary `ν`.
pub fn bessel_k(nu: Complex64, x: f64) -> SpecFunResult {
    assert!(x > 0.0, "bessel_k needs x > 0");
    let (v, e) = scaled(nu, x, 0);
    let damp = (-x).exp();
    let mut value = v * damp;
    if nu.re == 0.0 || nu.im == 0.0 {
        value.im = 0.0;
    }
    SpecFunResult { value, abs_error_bound: e * damp }
}

pub fn bessel_k_c(nu: Complex64, x: f64) -> Complex64 {
    bessel_k(nu, x).value
}

/// `e^x K_ν(x)`, for callers that work in the scaled range.
pub fn bessel_k_scaled(nu: Complex64, x: f64) -> SpecFunResult {
    let (mut v, e) = scaled(nu, x, 0);
    if nu.re == 0.0 || nu.im == 0.0 {
        v.im = 0.0;
    }
    SpecFunResult { value: v, abs_error_bound: e }
}

/// Re-evaluation with one extra halving past convergence, for auditing bounds.
pub fn bessel_k_reference(nu: Complex64, x: f64) -> Complex64 {
    scaled(nu, x, 1).0 * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::quad::composite_gauss;
    use std::f64::consts::PI;

    #[test]
    fn half_integer_closed_form() {
        let k = bessel_k(Complex64::new(0.5, 0.0), 2.0);
        let expect = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!((k.value.re - expect).abs() < 1e-15, "{}", k.value.re - expect);
        assert!(k.abs_error_bound < 1e-12);
    }

    #[test]
    fn k0_against_gauss_oracle() {
        let oracle = composite_gauss(|t| Complex64::new((-2.0 * t.cosh()).exp(), 0.0), 0.0, 6.0, 60, 20).re;
        let k = bessel_k(Complex64::new(0.0, 0.0), 2.0).value.re;
        assert!((k - oracle).abs() < 1e-14);
    }

    #[test]
    fn imaginary_order_is_real_and_matches_oracle() {
        let nu = Complex64::new(0.0, 1.0);
        let (raw, _) = scaled(nu, 1.0, 0);
        assert!(raw.im.abs() < 1e-12 * (1.0f64).exp());
        let oracle = composite_gauss(|t| Complex64::new((-t.cosh()).exp() * t.cos(), 0.0), 0.0, 8.0, 100, 20).re;
        let k = bessel_k(nu, 1.0).value.re;
        assert!((k - oracle).abs() < 1e-13);
    }

    #[test]
    fn small_argument_and_large_order() {
        // K_ν(x) ~ Γ(ν)/2 (2/x)^ν as x → 0
        let k = bessel_k(Complex64::new(10.0, 0.0), 1e-3).value.re;
        let approx = crate::special_functions::gamma::gamma_re(10.0) / 2.0 * 2000f64.powi(10);
        assert!((k / approx - 1.0).abs() < 1e-5);
        let k = bessel_k(Complex64::new(0.0, 25.0), 1e-3);
        assert!(k.value.re.is_finite() && k.abs_error_bound < 1e-12);
    }

    #[test]
    fn positive_and_decreasing() {
        for nu in [0.0, 0.3, 2.5, 7.0] {
            let mut last = f64::INFINITY;
            for i in 1..40 {
                let x = 0.05 * i as f64 * i as f64;
                let k = bessel_k(Complex64::new(nu, 0.0), x).value.re;
                assert!(k > 0.0 && k < last);
                last = k;
            }
        }
    }
}
