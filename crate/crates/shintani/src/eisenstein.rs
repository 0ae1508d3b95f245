//! Real analytic Eisenstein series `E(iγ, τ)` on the modular surface, from its
//! Fourier development
//!
//! `E = t^{1+z} + (ξ(z)/ξ(1+z)) t^{1−z} + (4t/ξ(1+z)) Σ_m η_{z/2}(m) K_{z/2}(2πm t²) cos(2πm u)`
//!
//! with `z = iγ`, `τ = u + i t²`. The `K`-Bessel values come from a per-γ
//! interpolation table whose error is measured when it is built.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cubic_forms::IntMatrix;
use crate::special_functions::bessel::bessel_k_scaled;
use crate::special_functions::{divisor_eta, xi_c};
use crate::Error;

pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-10;

/// Arguments of `K` covered by the interpolation table; outside it `K` is
/// evaluated directly.
const TABLE_LO: f64 = 5.0;
const TABLE_HI: f64 = 80.0;
const TABLE_MAX_NODES: usize = 1 << 17;
const ETA_CACHE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EisensteinParams {
    pub gamma: f64,
    /// Laplace eigenvalue `(1+γ²)/4`.
    pub r: f64,
    pub truncation_tol: f64,
}

impl EisensteinParams {
    pub fn new(gamma: f64, truncation_tol: f64) -> Result<EisensteinParams, Error> {
        if gamma == 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidArgument(format!("gamma must be finite and nonzero, got {gamma}")));
        }
        if !(truncation_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("truncation tolerance must be positive, got {truncation_tol}")));
        }
        Ok(EisensteinParams { gamma, r: (1.0 + gamma * gamma) / 4.0, truncation_tol })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(0.0, self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EisensteinValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// `e^x K_{iν}(x)` on a log-uniform grid over `[TABLE_LO, TABLE_HI]`,
/// interpolated by local cubics.
#[derive(Debug)]
struct KTable {
    log_lo: f64,
    step: f64,
    values: Vec<f64>,
    /// max observed interpolation error at cell midpoints, times a safety factor
    error: f64,
}

impl KTable {
    fn build(nu: f64) -> KTable {
        let log_lo = TABLE_LO.ln();
        let span = TABLE_HI.ln() - log_lo;
        let mut nodes = 2048;
        loop {
            let step = span / (nodes - 1) as f64;
            let values: Vec<f64> =
                (0..nodes).map(|i| direct_scaled(nu, (log_lo + i as f64 * step).exp())).collect();
            let mut table = KTable { log_lo, step, values, error: 0.0 };
            let mut worst: f64 = 0.0;
            let mut scale: f64 = 0.0;
            for i in 0..nodes - 1 {
                let x = (log_lo + (i as f64 + 0.5) * step).exp();
                let exact = direct_scaled(nu, x);
                worst = worst.max((table.interpolate(x) - exact).abs());
                scale = scale.max(exact.abs());
            }
            table.error = 4.0 * worst + 1e-16 * scale;
            if table.error <= 1e-14 * scale || nodes >= TABLE_MAX_NODES {
                return table;
            }
            nodes *= 2;
        }
    }

    fn interpolate(&self, x: f64) -> f64 {
        let pos = (x.ln() - self.log_lo) / self.step;
        let n = self.values.len();
        let i = (pos.floor() as isize).clamp(1, n as isize - 3) as usize;
        let s = pos - i as f64;
        let [p0, p1, p2, p3] = [self.values[i - 1], self.values[i], self.values[i + 1], self.values[i + 2]];
        // Lagrange cubic through nodes −1, 0, 1, 2
        let w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        let w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        let w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        let w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
        w0 * p0 + w1 * p1 + w2 * p2 + w3 * p3
    }
}

fn direct_scaled(nu: f64, x: f64) -> f64 {
    bessel_k_scaled(Complex64::new(0.0, nu), x).value.re
}

fn table_for(nu: f64) -> Arc<KTable> {
    static TABLES: OnceLock<Mutex<HashMap<u64, Arc<KTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let key = nu.abs().to_bits();
    if let Some(t) = tables.lock().expect("table lock").get(&key) {
        return t.clone();
    }
    // built outside the lock so tables for different γ can be built concurrently
    let built = Arc::new(KTable::build(nu.abs()));
    tables.lock().expect("table lock").entry(key).or_insert(built).clone()
}

/// Precomputed constants for one γ.
#[derive(Clone, Debug)]
pub struct Eisenstein {
    params: EisensteinParams,
    z: Complex64,
    ratio: Complex64,
    /// `4/ξ(1+z)`
    scale: Complex64,
    eta: Vec<Complex64>,
    table: Option<Arc<KTable>>,
}

impl Eisenstein {
    /// Evaluator using the interpolation table for `K`.
    pub fn new(params: EisensteinParams) -> Eisenstein {
        let mut e = Eisenstein::direct(params);
        e.table = Some(table_for(params.gamma / 2.0));
        e
    }

    /// Evaluator calling the quadrature for every `K` value. Slower, but smooth
    /// in `τ` to full precision, as finite differences need.
    pub fn direct(params: EisensteinParams) -> Eisenstein {
        let z = params.z();
        let xi1 = xi_c(z + 1.0);
        let eta = (1..=ETA_CACHE as u64).map(|m| divisor_eta(z, m)).collect();
        Eisenstein { params, z, ratio: xi_c(z) / xi1, scale: 4.0 / xi1, eta, table: None }
    }

    pub fn params(&self) -> &EisensteinParams {
        &self.params
    }

    /// `ξ(z)/ξ(1+z)`
    pub fn scattering(&self) -> Complex64 {
        self.ratio
    }

    /// Constant term `t^{1+z} + (ξ(z)/ξ(1+z)) t^{1−z}` at height `y = t²`.
    pub fn constant_term(&self, y: f64) -> Complex64 {
        let t = y.sqrt();
        let lt = t.ln();
        ((1.0 + self.z) * lt).exp() + self.ratio * ((1.0 - self.z) * lt).exp()
    }

    fn eta(&self, m: usize) -> Complex64 {
        if m <= ETA_CACHE {
            self.eta[m - 1]
        } else {
            divisor_eta(self.z, m as u64)
        }
    }

    /// `e^x K_{iγ/2}(x)` and its absolute error.
    fn k_scaled(&self, x: f64) -> (f64, f64) {
        match &self.table {
            Some(t) if (TABLE_LO..=TABLE_HI).contains(&x) => (t.interpolate(x), t.error),
            _ => {
                let r = bessel_k_scaled(Complex64::new(0.0, self.params.gamma / 2.0), x);
                (r.value.re, r.abs_error_bound)
            }
        }
    }

    /// Number of Fourier terms so that the neglected tail is at most `tol` at height `y`.
    fn terms_for(&self, y: f64, tol: f64) -> (usize, f64) {
        let q = (-2.0 * PI * y).exp();
        // tail after M terms: (4/|ξ(1+z)|) e^{−2π(M+1)y}/(1 − e^{−2πy}),
        // from |K_{iν}(x)| ≤ K_0(x) ≤ √(π/2x) e^{−x} and |η(m)| ≤ 2√m
        let c = self.scale.norm() / (1.0 - q);
        let mut m = 0usize;
        let mut tail = c * q;
        while tail > tol {
            m += 1;
            tail *= q;
        }
        (m, tail)
    }

    /// Value at `τ = x + iy`. The Fourier sum runs to the length required by
    /// the truncation tolerance, or to `terms` if that is longer.
    pub fn eval_with(&self, x: f64, y: f64, terms: Option<usize>) -> EisensteinValue {
        let tol = self.params.truncation_tol;
        // half the budget for truncation, the rest for K errors
        let (m_needed, tail) = self.terms_for(y, 0.5 * tol);
        let m_max = terms.unwrap_or(m_needed).max(m_needed);
        let tail = if m_max > m_needed { tail * (-2.0 * PI * y * (m_max - m_needed) as f64).exp() } else { tail };
        let t = y.sqrt();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut k_err = 0.0;
        let mut used = 0;
        for m in 1..=m_max {
            let arg = 2.0 * PI * m as f64 * y;
            let damp = (-arg).exp();
            if damp == 0.0 {
                break;
            }
            let (k, e) = self.k_scaled(arg);
            let eta = self.eta(m);
            sum += eta * (k * damp * (2.0 * PI * m as f64 * x).cos());
            k_err += eta.norm() * e * damp;
            used = m;
        }
        let value = self.constant_term(y) + self.scale * t * sum;
        EisensteinValue { value, terms_used: used, tail_bound: tail + self.scale.norm() * t * k_err }
    }

    pub fn eval(&self, x: f64, y: f64) -> EisensteinValue {
        self.eval_with(x, y, None)
    }
}

/// `E(iγ, τ)` for `τ = (x, y)`, `y > 0`.
pub fn eval_e(params: &EisensteinParams, tau: (f64, f64)) -> Result<EisensteinValue, Error> {
    if !(tau.1 > 0.0) {
        return Err(Error::InvalidArgument(format!("point {tau:?} is not in the upper half plane")));
    }
    EisensteinParams::new(params.gamma, params.truncation_tol)?;
    Ok(Eisenstein::new(*params).eval(tau.0, tau.1))
}

/// `|ξ(1+iγ) E(iγ, τ) − ξ(1−iγ) E(−iγ, τ)|`.
pub fn functional_equation_defect(gamma: f64, tau: (f64, f64)) -> Result<f64, Error> {
    let p = EisensteinParams::new(gamma, DEFAULT_TRUNCATION_TOL)?;
    let m = EisensteinParams::new(-gamma, DEFAULT_TRUNCATION_TOL)?;
    let z = p.z();
    let lhs = xi_c(1.0 + z) * eval_e(&p, tau)?.value;
    let rhs = xi_c(1.0 - z) * eval_e(&m, tau)?.value;
    Ok((lhs - rhs).norm())
}

/// `|E(g·τ) − E(τ)| / |E(τ)|` for `g ∈ SL₂(ℤ)`.
pub fn automorphy_defect(gamma: f64, tau: (f64, f64), g: &IntMatrix) -> Result<f64, Error> {
    if g.det() != 1 {
        return Err(Error::InvalidArgument(format!("{g:?} is not in SL2(Z)")));
    }
    let p = EisensteinParams::new(gamma, 1e-13)?;
    let a = eval_e(&p, tau)?.value;
    let b = eval_e(&p, g.mobius(tau.0, tau.1))?.value;
    Ok((a - b).norm() / a.norm())
}

/// `|−y²ΔE − ((1+γ²)/4)E| / |E|` with the five-point Laplacian of step `h`.
pub fn laplacian_defect(gamma: f64, tau: (f64, f64), h: f64) -> Result<f64, Error> {
    let (x, y) = tau;
    if !(h > 0.0) || y - h <= 0.0 {
        return Err(Error::InvalidArgument(format!("step {h} unusable at {tau:?}")));
    }
    let p = EisensteinParams::new(gamma, 1e-15)?;
    let e = Eisenstein::direct(p);
    let f = |x: f64, y: f64| e.eval(x, y).value;
    let c = f(x, y);
    let lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * c) / (h * h);
    Ok((-y * y * lap - p.r * c).norm() / c.norm())
}
