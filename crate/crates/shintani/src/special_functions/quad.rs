//! Double-exponential quadrature (tanh-sinh, exp-sinh, sinh-sinh) and
//! Gauss–Legendre rules. Every rule returns the value together with the last
//! level-to-level difference, which is used as the reported error.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
}

impl Quad {
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

#[derive(Clone, Copy, Debug)]
enum Map {
    /// `[a, b]` via `x = c + r tanh(π/2 sinh t)`.
    Finite { a: f64, b: f64 },
    /// `[a, ∞)` via `x = a + exp(π/2 sinh t)`.
    HalfLine { a: f64 },
    /// `(−∞, ∞)` via `x = sinh(π/2 sinh t)`.
    Line,
}

impl Map {
    /// Node and weight at parameter `t`; `None` when the node collides with an endpoint.
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let ds = FRAC_PI_2 * t.cosh();
        match *self {
            Map::Finite { a, b } => {
                let r = 0.5 * (b - a);
                // distance to the nearer endpoint, computed without cancellation
                let e = (-2.0 * s.abs()).exp();
                let delta = r * 2.0 * e / (1.0 + e);
                let x = if s >= 0.0 { b - delta } else { a + delta };
                if x <= a || x >= b {
                    return None;
                }
                let ch = s.cosh();
                Some((x, r * ds / (ch * ch)))
            }
            Map::HalfLine { a } => {
                let e = s.exp();
                let x = a + e;
                if x <= a || !x.is_finite() {
                    return None;
                }
                Some((x, ds * e))
            }
            Map::Line => {
                let x = s.sinh();
                if !x.is_finite() {
                    return None;
                }
                Some((x, ds * s.cosh()))
            }
        }
    }
}

fn de_integrate<F: Fn(f64) -> Complex64>(f: &F, map: Map, tol: f64, max_level: u32) -> Quad {
    let tmax = 4.5;
    let eval = |t: f64| -> Complex64 {
        match map.node(t) {
            Some((x, w)) if w > 0.0 && w.is_finite() => {
                let v = f(x);
                if v.re.is_finite() && v.im.is_finite() {
                    v * w
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            _ => Complex64::new(0.0, 0.0),
        }
    };
    let mut evals = 0usize;
    let mut h = 0.5;
    // level 0: all nodes k h for |k h| <= tmax
    let mut sum = Complex64::new(0.0, 0.0);
    let n0 = (tmax / h) as i64;
    for k in -n0..=n0 {
        sum += eval(k as f64 * h);
        evals += 1;
    }
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for _level in 1..=max_level {
        h *= 0.5;
        let n = (tmax / h) as i64;
        let mut add = Complex64::new(0.0, 0.0);
        for k in (-n..=n).filter(|k| k % 2 != 0) {
            add += eval(k as f64 * h);
            evals += 1;
        }
        sum += add;
        let cur = sum * h;
        err = (cur - prev).norm();
        prev = cur;
        if err <= tol * cur.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Quad { value: prev, error: err, evals }
}

/// `∫_a^b f` by tanh-sinh; integrable endpoint singularities are fine.
pub fn tanh_sinh<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Quad {
    if a == b {
        return Quad { value: Complex64::new(0.0, 0.0), error: 0.0, evals: 0 };
    }
    if a > b {
        let q = tanh_sinh(f, b, a, tol);
        return Quad { value: -q.value, ..q };
    }
    de_integrate(&f, Map::Finite { a, b }, tol, 9)
}

/// `∫_a^∞ f` by exp-sinh, for integrands decaying at least like a power.
pub fn exp_sinh<F: Fn(f64) -> Complex64>(f: F, a: f64, tol: f64) -> Quad {
    de_integrate(&f, Map::HalfLine { a }, tol, 9)
}

/// `∫_{−∞}^{∞} f` by sinh-sinh.
pub fn sinh_sinh<F: Fn(f64) -> Complex64>(f: F, tol: f64) -> Quad {
    de_integrate(&f, Map::Line, tol, 9)
}

pub fn tanh_sinh_re<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let q = tanh_sinh(|x| Complex64::new(f(x), 0.0), a, b, tol);
    (q.value.re, q.error)
}

pub fn exp_sinh_re<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> (f64, f64) {
    let q = exp_sinh(|x| Complex64::new(f(x), 0.0), a, tol);
    (q.value.re, q.error)
}

pub fn sinh_sinh_re<F: Fn(f64) -> f64>(f: F, tol: f64) -> (f64, f64) {
    let q = sinh_sinh(|x| Complex64::new(f(x), 0.0), tol);
    (q.value.re, q.error)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss–Legendre on `[a, b]` with `panels` equal panels of `n` nodes.
pub fn composite_gauss<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize, n: usize) -> Complex64 {
    let (x, w) = gauss_legendre(n);
    let h = (b - a) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for (xi, wi) in x.iter().zip(&w) {
            sum += f(lo + 0.5 * h * (xi + 1.0)) * (0.5 * h * wi);
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_polynomial_and_singular() {
        let (v, _) = tanh_sinh_re(|x| x * x, 0.0, 3.0, 1e-14);
        assert!((v - 9.0).abs() < 1e-13);
        // ∫_0^1 x^{-1/2} = 2
        let (v, _) = tanh_sinh_re(|x| x.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((v - 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn exp_sinh_gamma_integral() {
        // ∫_0^∞ x^{1/2} e^{-x} = Γ(3/2) = √π/2
        let (v, _) = exp_sinh_re(|x| x.sqrt() * (-x).exp(), 0.0, 1e-14);
        assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13, "{v}");
    }

    #[test]
    fn sinh_sinh_gaussian() {
        let (v, _) = sinh_sinh_re(|x| (-x * x).exp(), 1e-14);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_exact_for_low_degree() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}
