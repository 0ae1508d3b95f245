//! Gamma, zeta, ξ, K-Bessel, divisor sums, the bump test weight and its Mellin
//! transform, plus numerical checks of the standard Mellin identities.

pub mod bessel;
pub mod gamma;
pub mod mellin;
pub mod quad;
pub mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use bessel::{bessel_k, bessel_k_c};
pub use gamma::{gamma, gamma_c, ln_gamma};
pub use mellin::{check_mellin_identities, mellin_fd, MellinCheck, TestWeight};
pub use zeta::{xi, xi_c, zeta, zeta_c};

/// A value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecFunResult {
    pub value: Complex64,
    pub abs_error_bound: f64,
}

impl SpecFunResult {
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// `η_{z/2}(m) = Σ_{ab=m} (a/b)^{z/2}`.
pub fn divisor_eta(z: Complex64, m: u64) -> Complex64 {
    assert!(m >= 1, "divisor_eta needs m >= 1");
    let ln_m = (m as f64).ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for a in divisors(m) {
        let e = 2.0 * (a as f64).ln() - ln_m;
        sum += (z * 0.5 * e).exp();
    }
    sum
}

/// Positive divisors of `n` in increasing order (`n = 0` gives an empty list).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_values() {
        let z = Complex64::new(0.0, 1.0);
        assert!((divisor_eta(z, 1) - 1.0).norm() < 1e-15);
        let e2 = divisor_eta(z, 2);
        assert!((e2.re - 2.0 * (0.5 * 2f64.ln()).cos()).abs() < 1e-14 && e2.im.abs() < 1e-14);
        let z = Complex64::new(0.3, 0.7);
        let lhs = divisor_eta(z, 4) * divisor_eta(z, 9);
        assert!((lhs - divisor_eta(z, 36)).norm() < 1e-13);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert!(divisors(0).is_empty());
    }
}
