//! The bump weight `f_D`, its Mellin transform, and numerical checks of three
//! classical Mellin transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::bessel::bessel_k;
use super::gamma::gamma_c;
use super::quad::{composite_gauss, exp_sinh, tanh_sinh};
use super::SpecFunResult;

/// `f_D(x) = exp(−1/((x−1)(2−x)))` on `(1, 2)`, zero elsewhere.
#[derive(Clone, Copy, Debug, Default)]
pub struct TestWeight;

impl TestWeight {
    pub fn eval(&self, x: f64) -> f64 {
        f_d(x)
    }

    pub fn mellin(&self, s: Complex64) -> SpecFunResult {
        mellin_fd(s)
    }

    pub fn support(&self) -> (f64, f64) {
        (1.0, 2.0)
    }
}

pub fn f_d(x: f64) -> f64 {
    if x <= 1.0 || x >= 2.0 {
        return 0.0;
    }
    (-1.0 / ((x - 1.0) * (2.0 - x))).exp()
}

fn mellin_fd_tol(s: Complex64, tol: f64) -> SpecFunResult {
    let q = tanh_sinh(|x| f_d(x) * ((s - 1.0) * x.ln()).exp(), 1.0, 2.0, tol);
    let bound = q.error + 8.0 * f64::EPSILON * q.value.norm().max(1e-300);
    SpecFunResult { value: q.value, abs_error_bound: bound }
}

/// `f̃_D(s) = ∫ f_D(x) x^{s−1} dx`.
pub fn mellin_fd(s: Complex64) -> SpecFunResult {
    mellin_fd_tol(s, 1e-13)
}

/// Same integral driven to the last quadrature level, used as a reference.
pub fn mellin_fd_reference(s: Complex64) -> Complex64 {
    mellin_fd_tol(s, 0.0).value
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MellinCheck {
    pub identity: String,
    pub sample: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_err: f64,
}

impl MellinCheck {
    fn new(identity: &str, sample: Complex64, lhs: Complex64, rhs: Complex64) -> MellinCheck {
        let rel_err = (lhs - rhs).norm() / lhs.norm().max(rhs.norm());
        MellinCheck { identity: identity.to_string(), sample, lhs, rhs, rel_err }
    }
}

/// `∫_0^∞ K_ν(x) x^{s−1} dx` against `2^{s−2} Γ((s+ν)/2) Γ((s−ν)/2)`.
pub fn check_bessel_mellin(nu: Complex64, s: Complex64) -> MellinCheck {
    // split at 1 so the logarithmic singularity and the exponential tail each get their own map
    let f = |x: f64| bessel_k(nu, x).value * ((s - 1.0) * x.ln()).exp();
    let left = tanh_sinh(f, 0.0, 1.0, 1e-13).value;
    let right = exp_sinh(f, 1.0, 1e-13).value;
    let rhs = Complex64::new(2.0, 0.0).powc(s - 2.0) * gamma_c((s + nu) * 0.5) * gamma_c((s - nu) * 0.5);
    MellinCheck::new("bessel_k", s, left + right, rhs)
}

/// `∫_0^∞ e^{−t²−t^{−2}} t^{s−1} dt` against `K_{s/2}(2)`.
pub fn check_gaussian_mellin(s: Complex64) -> MellinCheck {
    let f = |t: f64| Complex64::new((-t * t - 1.0 / (t * t)).exp(), 0.0) * ((s - 1.0) * t.ln()).exp();
    let lhs = tanh_sinh(f, 0.0, 1.0, 1e-14).value + exp_sinh(f, 1.0, 1e-14).value;
    MellinCheck::new("gaussian", s, lhs, bessel_k(s * 0.5, 2.0).value)
}

/// `∫_0^∞ cos(x) x^{s−1} dx` for `0 < Re s < 1` against `Γ(s) cos(πs/2)`.
///
/// The integral converges only conditionally. It is split at the zeros of cos,
/// and the resulting alternating series of section integrals is summed by
/// repeated averaging of its partial sums.
pub fn check_cosine_mellin(s: Complex64) -> MellinCheck {
    let f = |x: f64| ((s - 1.0) * x.ln()).exp() * x.cos();
    let mut partial = Vec::new();
    let mut acc = tanh_sinh(f, 0.0, 0.5 * PI, 1e-14).value;
    partial.push(acc);
    for k in 1..=60 {
        let a = (k as f64 - 0.5) * PI;
        acc += composite_gauss(f, a, a + PI, 1, 30);
        partial.push(acc);
    }
    let mut row = partial;
    for _ in 0..40 {
        row = row.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    let lhs = row[row.len() - 1];
    let rhs = gamma_c(s) * (s * (PI / 2.0)).cos();
    MellinCheck::new("cosine", s, lhs, rhs)
}

/// Runs the three identities on the given samples: `(ν, s)` pairs for the
/// Bessel identity, `s` values for the Gaussian one, and `s` in `(0, 1)` for
/// the cosine transform.
pub fn check_mellin_identities(
    bessel: &[(Complex64, Complex64)],
    gaussian: &[Complex64],
    cosine: &[Complex64],
) -> Vec<MellinCheck> {
    let mut out = Vec::new();
    out.extend(bessel.iter().map(|&(nu, s)| check_bessel_mellin(nu, s)));
    out.extend(gaussian.iter().map(|&s| check_gaussian_mellin(s)));
    out.extend(cosine.iter().map(|&s| check_cosine_mellin(s)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn bump_support_and_smoothness() {
        assert_eq!(f_d(1.0), 0.0);
        assert_eq!(f_d(2.0), 0.0);
        assert_eq!(f_d(0.5), 0.0);
        assert!(f_d(1.5) > 0.0);
        // one-sided difference quotients vanish at the edges
        for h in [1e-2, 1e-3] {
            assert!(f_d(1.0 + h) / h < 1e-20);
            assert!(f_d(2.0 - h) / h < 1e-20);
        }
    }

    #[test]
    fn mellin_at_one_is_plain_integral() {
        let m = mellin_fd(c(1.0));
        let oracle = composite_gauss(|x| c(f_d(x)), 1.0, 2.0, 200, 20).re;
        assert!((m.value.re - oracle).abs() < 1e-14, "{} {}", m.value.re, oracle);
        assert!((m.value.re - mellin_fd_reference(c(1.0)).re).abs() <= m.abs_error_bound.max(1e-16));
    }

    #[test]
    fn mellin_support_bound() {
        let base = mellin_fd(c(1.0)).value.re;
        for s in [c(-3.0), c(0.5), Complex64::new(2.0, 5.0), c(6.0)] {
            let m = mellin_fd(s).value.norm();
            let bound = base * 2f64.powf(s.re - 1.0).max(1.0);
            assert!(m <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn mellin_is_entire_cauchy() {
        // f̃(s0) = (1/2π) ∫ f̃(s0 + r e^{iφ}) dφ
        let s0 = Complex64::new(0.7, 0.2);
        let r = 0.5;
        let n = 64;
        let mut avg = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let phi = 2.0 * PI * k as f64 / n as f64;
            avg += mellin_fd(s0 + Complex64::from_polar(r, phi)).value;
        }
        avg /= n as f64;
        assert!((avg - mellin_fd(s0).value).norm() < 1e-13);
    }

    #[test]
    fn three_identities() {
        let r = check_bessel_mellin(c(0.0), c(2.0));
        assert!(r.rel_err < 1e-8, "{r:?}");
        let r = check_gaussian_mellin(c(0.0));
        assert!(r.rel_err < 1e-10, "{r:?}");
        let r = check_cosine_mellin(c(0.5));
        assert!(r.rel_err < 1e-6, "{r:?}");
    }
}
