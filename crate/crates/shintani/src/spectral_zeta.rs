//! Eisenstein-twisted coefficient sequences of the Shintani zeta functions,
//! their partial (Weyl) sums, the closed-form residues at the four poles, and
//! least-squares comparison of the two.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class_enumeration::{enumerate_classes, FormClass};
use crate::cubic_forms::Sign;
use crate::eisenstein::{Eisenstein, EisensteinParams};
use crate::shapes::group_point;
use crate::special_functions::{gamma_c, xi_c, zeta_c};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pole {
    /// `(11 + z)/12`
    ElevenPlus,
    /// `(11 − z)/12`
    ElevenMinus,
    /// `(5 + z)/4`
    FivePlus,
    /// `(5 − z)/4`
    FiveMinus,
}

impl Pole {
    pub const ALL: [Pole; 4] = [Pole::FivePlus, Pole::FiveMinus, Pole::ElevenPlus, Pole::ElevenMinus];

    pub fn location(self, gamma: f64) -> Complex64 {
        let z = Complex64::new(0.0, gamma);
        match self {
            Pole::ElevenPlus => (11.0 + z) / 12.0,
            Pole::ElevenMinus => (11.0 - z) / 12.0,
            Pole::FivePlus => (5.0 + z) / 4.0,
            Pole::FiveMinus => (5.0 - z) / 4.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pole::ElevenPlus => "(11+z)/12",
            Pole::ElevenMinus => "(11-z)/12",
            Pole::FivePlus => "(5+z)/4",
            Pole::FiveMinus => "(5-z)/4",
        }
    }

    /// Poles of the full family, or of the irreducible family when `irreducible_only`.
    pub fn model(irreducible_only: bool) -> &'static [Pole] {
        if irreducible_only {
            &Pole::ALL[2..]
        } else {
            &Pole::ALL
        }
    }
}

fn pow(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

/// Which closed forms to use for the residues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueConvention {
    /// The table exactly as stated in the theorem.
    #[default]
    Stated,
    /// Recomputed from the Σ₂ and Φ₀ integrals: the θ-integral
    /// `∫|sin 2πθ|^{−w} dθ = Γ((1−w)/2)/(√π Γ(1−w/2))` at `w = (1−z)/3`, the
    /// ℒ⁺ factor `3^{3w/4−1}` at that same `w`, and both sheets `x₂ ≷ 0` of
    /// the `a = 0` locus in the `(5±z)/4` terms.
    Rederived,
}

/// Residue at a `+z` pole, as an analytic function of `z`.
fn plus_residue(conv: ResidueConvention, family: Sign, pole: Pole, z: Complex64) -> Complex64 {
    match pole {
        Pole::ElevenPlus | Pole::ElevenMinus => {
            let w = 1.0 - z;
            let theta = match conv {
                ResidueConvention::Stated => gamma_c((4.0 - z) / 6.0) / gamma_c((7.0 - z) / 6.0),
                ResidueConvention::Rederived => gamma_c((2.0 + z) / 6.0) / gamma_c((5.0 + z) / 6.0),
            };
            let core = zeta_c(w / 3.0) * pow(2.0, (z - 1.0) / 6.0) * pow(PI, (2.0 * z + 1.0) / 6.0)
                * (w * (PI / 6.0)).cos()
                * gamma_c(w / 3.0)
                * theta;
            match (family, conv) {
                (Sign::Neg, _) => core / 3.0,
                (Sign::Pos, ResidueConvention::Stated) => core / pow(3.0, (7.0 - z) / 4.0),
                (Sign::Pos, ResidueConvention::Rederived) => core / pow(3.0, (7.0 + z) / 4.0),
            }
        }
        Pole::FivePlus | Pole::FiveMinus => {
            let sheets = match conv {
                ResidueConvention::Stated => 1.0,
                ResidueConvention::Rederived => 2.0,
            };
            let core = sheets * zeta_c(3.0 + z) * pow(2.0, (-5.0 - z) / 2.0);
            match family {
                Sign::Neg => core,
                Sign::Pos => core * pow(3.0, (1.0 + z) / 4.0),
            }
        }
    }
}

/// Residue of `ℒ^±(E, s)` at `pole`, `z = iγ`, from the table as stated. The
/// `−z` poles are the `+z` entries at `−z` multiplied by `ξ(z)/ξ(1+z)`.
pub fn residue(family: Sign, pole: Pole, gamma: f64) -> Result<Complex64, Error> {
    residue_with(ResidueConvention::Stated, family, pole, gamma)
}

pub fn residue_with(conv: ResidueConvention, family: Sign, pole: Pole, gamma: f64) -> Result<Complex64, Error> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!("gamma must be finite and nonzero, got {gamma}")));
    }
    let z = Complex64::new(0.0, gamma);
    let value = match pole {
        Pole::ElevenPlus | Pole::FivePlus => plus_residue(conv, family, pole, z),
        Pole::ElevenMinus | Pole::FiveMinus => xi_c(z) / xi_c(1.0 + z) * plus_residue(conv, family, pole, -z),
    };
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Pole(format!("residue {} at gamma {gamma}", pole.label())));
    }
    Ok(value)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidueTable {
    pub gamma: f64,
    pub convention: ResidueConvention,
    /// `(family, pole, residue)` for both families and all four poles
    pub entries: Vec<(Sign, Pole, Complex64)>,
}

pub fn residue_table(gamma: f64) -> Result<ResidueTable, Error> {
    residue_table_with(ResidueConvention::Stated, gamma)
}

pub fn residue_table_with(conv: ResidueConvention, gamma: f64) -> Result<ResidueTable, Error> {
    let mut entries = Vec::with_capacity(8);
    for family in [Sign::Neg, Sign::Pos] {
        for pole in Pole::ALL {
            entries.push((family, pole, residue_with(conv, family, pole, gamma)?));
        }
    }
    Ok(ResidueTable { gamma, convention: conv, entries })
}

/// `Σ_poles residue · X^ρ / ρ`, over the poles of the full or irreducible family.
pub fn predict_main_terms(family: Sign, irreducible_only: bool, gamma: f64, x: f64) -> Result<Complex64, Error> {
    predict_main_terms_with(ResidueConvention::Stated, family, irreducible_only, gamma, x)
}

pub fn predict_main_terms_with(
    conv: ResidueConvention,
    family: Sign,
    irreducible_only: bool,
    gamma: f64,
    x: f64,
) -> Result<Complex64, Error> {
    let mut total = Complex64::new(0.0, 0.0);
    for &pole in Pole::model(irreducible_only) {
        let rho = pole.location(gamma);
        total += residue_with(conv, family, pole, gamma)? * pow(x, rho) / rho;
    }
    Ok(total)
}

/// Twisted coefficients `c(m) = Σ_i E(g_{i,m}) / |Stab|` for `1 ≤ m ≤ X`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub gamma: f64,
    pub sign: Sign,
    pub irreducible_only: bool,
    pub x_max: u64,
    /// `c[m]`; index 0 unused
    pub c: Vec<Complex64>,
}

impl CoefficientSeries {
    pub fn get(&self, m: u64) -> Complex64 {
        self.c.get(m as usize).copied().unwrap_or_default()
    }
}

/// Builds the coefficients from an existing class list (any classes with
/// `|disc| > X` or of the other sign are ignored).
pub fn coefficients_from_classes(
    gamma: f64,
    sign: Sign,
    x: u64,
    irreducible_only: bool,
    classes: &[FormClass],
) -> Result<CoefficientSeries, Error> {
    let eis = Eisenstein::new(EisensteinParams::new(gamma, crate::eisenstein::DEFAULT_TRUNCATION_TOL)?);
    let selected: Vec<&FormClass> = classes
        .iter()
        .filter(|k| k.sign() == sign && k.disc.unsigned_abs() <= x as u128 && (k.irreducible || !irreducible_only))
        .collect();
    let values: Vec<Result<(usize, Complex64), Error>> = selected
        .par_iter()
        .map(|k| {
            let p = group_point(&k.rep)
                .map_err(|e| Error::Numerical(format!("class {}: {e}", k.rep)))?;
            let weight = match sign {
                Sign::Pos => k.weight(),
                Sign::Neg => 1.0,
            };
            Ok((k.disc.unsigned_abs() as usize, eis.eval(p.x, p.y).value * weight))
        })
        .collect();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); x as usize + 1];
    // sequential accumulation in class order keeps the result deterministic
    for v in values {
        let (m, e) = v?;
        coeffs[m] += e;
    }
    Ok(CoefficientSeries { gamma, sign, irreducible_only, x_max: x, c: coeffs })
}

pub fn build_coefficients(gamma: f64, sign: Sign, x: u64, irreducible_only: bool) -> Result<CoefficientSeries, Error> {
    let classes = enumerate_classes(sign, x as i64, irreducible_only);
    coefficients_from_classes(gamma, sign, x, irreducible_only, &classes)
}

/// Partial sums `S(X) = Σ_{m ≤ X} c(m)` on a grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylSeries {
    pub gamma: f64,
    pub grid: Vec<f64>,
    pub sums: Vec<Complex64>,
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
struct Compensated {
    sum: Complex64,
    comp: Complex64,
}

impl Compensated {
    fn add(&mut self, v: Complex64) {
        let step = |s: &mut f64, c: &mut f64, x: f64| {
            let t = *s + x;
            if s.abs() >= x.abs() {
                *c += (*s - t) + x;
            } else {
                *c += (x - t) + *s;
            }
            *s = t;
        };
        step(&mut self.sum.re, &mut self.comp.re, v.re);
        step(&mut self.sum.im, &mut self.comp.im, v.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

pub fn partial_sums(series: &CoefficientSeries, grid: &[f64]) -> Result<WeylSeries, Error> {
    if grid.iter().any(|&g| !(g > 0.0) || g > series.x_max as f64) {
        return Err(Error::InvalidArgument(format!("grid must lie in (0, {}]", series.x_max)));
    }
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&i, &j| grid[i].total_cmp(&grid[j]));
    let mut sums = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut acc = Compensated::default();
    let mut m = 1usize;
    for i in order {
        let limit = grid[i].floor() as usize;
        while m <= limit {
            acc.add(series.c[m]);
            m += 1;
        }
        sums[i] = acc.value();
    }
    Ok(WeylSeries { gamma: series.gamma, grid: grid.to_vec(), sums })
}

/// `k` points in geometric progression from `a` to `b`.
pub fn geometric_grid(a: f64, b: f64, k: usize) -> Vec<f64> {
    assert!(a > 0.0 && b >= a && k >= 2, "bad geometric grid");
    let r = (b / a).ln() / (k - 1) as f64;
    (0..k).map(|i| if i == k - 1 { b } else { a * (r * i as f64).exp() }).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FitReport {
    pub model_poles: Vec<Complex64>,
    pub amplitudes: Vec<Complex64>,
    /// weighted relative residual `‖W(Aa − S)‖ / ‖W S‖`
    pub residual: f64,
    /// slope of `log|S|` against `log X`
    pub free_slope: f64,
}

/// Least-squares fit `S(X) ≈ Σ_j A_j X^{ρ_j}` with the exponents fixed, rows
/// weighted by `X^{−max Re ρ}`, plus a free power-law slope.
pub fn fit_asymptotics(weyl: &WeylSeries, poles: &[Complex64]) -> Result<FitReport, Error> {
    let n = weyl.grid.len();
    let (lo, hi) = weyl.grid.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    if n < 20 || hi / lo < 100.0 {
        return Err(Error::InvalidArgument(format!("need >= 20 grid points over >= 2 decades, got {n} over [{lo}, {hi}]")));
    }
    if poles.is_empty() {
        return Err(Error::InvalidArgument("empty pole model".into()));
    }
    let top = poles.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    let mut design = DMatrix::<Complex64>::zeros(n, poles.len());
    let mut rhs = DVector::<Complex64>::zeros(n);
    for (i, (&x, &s)) in weyl.grid.iter().zip(&weyl.sums).enumerate() {
        let w = x.powf(-top);
        for (j, &p) in poles.iter().enumerate() {
            design[(i, j)] = pow(x, p) * w;
        }
        rhs[i] = s * w;
    }
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-13 * smax) {
        return Err(Error::Numerical(format!("degenerate design matrix (singular values {smin:e} / {smax:e})")));
    }
    let amps = svd.solve(&rhs, 0.0).map_err(|e| Error::Numerical(e.to_string()))?;
    let resid = (&design * &amps - &rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
    Ok(FitReport {
        model_poles: poles.to_vec(),
        amplitudes: amps.iter().copied().collect(),
        residual: resid,
        free_slope: free_slope(&weyl.grid, &weyl.sums)?,
    })
}

fn free_slope(grid: &[f64], sums: &[Complex64]) -> Result<f64, Error> {
    let pts: Vec<(f64, f64)> =
        grid.iter().zip(sums).filter(|(_, s)| s.norm() > 0.0).map(|(&x, s)| (x.ln(), s.norm().ln())).collect();
    if pts.len() < 2 {
        return Err(Error::Numerical("too few nonzero partial sums for a slope".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// Poles of a family at `γ`.
pub fn model_poles(irreducible_only: bool, gamma: f64) -> Vec<Complex64> {
    Pole::model(irreducible_only).iter().map(|p| p.location(gamma)).collect()
}

/// Mean over the grid of `S(X) X^{−σ} e^{∓iω log X}`, the larger of the two
/// signs, for each frequency `ω`.
pub fn oscillation_projection(weyl: &WeylSeries, sigma: f64, freqs: &[f64]) -> Vec<f64> {
    let n = weyl.grid.len() as f64;
    freqs
        .iter()
        .map(|&w| {
            let mut pos = Complex64::new(0.0, 0.0);
            let mut neg = Complex64::new(0.0, 0.0);
            for (&x, &s) in weyl.grid.iter().zip(&weyl.sums) {
                let l = x.ln();
                let f = s * x.powf(-sigma);
                pos += f * Complex64::from_polar(1.0, -w * l);
                neg += f * Complex64::from_polar(1.0, w * l);
            }
            pos.norm().max(neg.norm()) / n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_pole_entries() {
        let g = 0.7;
        let z = Complex64::new(0.0, g);
        let r = residue(Sign::Neg, Pole::FivePlus, g).unwrap();
        let expect = zeta_c(3.0 + z) * pow(2.0, (-5.0 - z) / 2.0);
        assert!((r - expect).norm() < 1e-15);
        let ratio = residue(Sign::Pos, Pole::FivePlus, g).unwrap() / r;
        assert!((ratio - pow(3.0, (1.0 + z) / 4.0)).norm() < 1e-14);
        let ratio = residue(Sign::Pos, Pole::ElevenPlus, g).unwrap() / residue(Sign::Neg, Pole::ElevenPlus, g).unwrap();
        assert!((ratio - pow(3.0, (z - 3.0) / 4.0)).norm() < 1e-14);
    }

    #[test]
    fn rederived_differs_by_known_factors() {
        let g = 2.2;
        let z = Complex64::new(0.0, g);
        let rd = |f, p| residue_with(ResidueConvention::Rederived, f, p, g).unwrap();
        for f in [Sign::Neg, Sign::Pos] {
            assert!((rd(f, Pole::FiveMinus) / residue(f, Pole::FiveMinus, g).unwrap() - 2.0).norm() < 1e-14);
        }
        let ratio = rd(Sign::Pos, Pole::ElevenPlus) / rd(Sign::Neg, Pole::ElevenPlus);
        assert!((ratio - pow(3.0, (-3.0 - z) / 4.0)).norm() < 1e-14);
        let theta = rd(Sign::Neg, Pole::ElevenPlus) / residue(Sign::Neg, Pole::ElevenPlus, g).unwrap();
        let expect = gamma_c((2.0 + z) / 6.0) * gamma_c((7.0 - z) / 6.0) / (gamma_c((4.0 - z) / 6.0) * gamma_c((5.0 + z) / 6.0));
        assert!((theta - expect).norm() < 1e-13);
    }

    #[test]
    fn small_gamma_limit() {
        let r = residue(Sign::Neg, Pole::FivePlus, 1e-9).unwrap();
        let z3 = 1.2020569031595942;
        assert!((r.re - z3 * 2f64.powf(-2.5)).abs() < 1e-8 && r.im.abs() < 1e-8);
    }

    #[test]
    fn conjugate_prediction() {
        let a = predict_main_terms(Sign::Neg, false, 1.3, 5e4).unwrap();
        let b = predict_main_terms(Sign::Neg, false, -1.3, 5e4).unwrap();
        assert!((a.conj() - b).norm() < 1e-9 * a.norm());
        assert!(residue(Sign::Neg, Pole::FivePlus, 0.0).is_err());
    }

    #[test]
    fn partial_sums_prefix() {
        let mut c = vec![Complex64::new(0.0, 0.0); 11];
        for (m, v) in c.iter_mut().enumerate().skip(3) {
            *v = Complex64::new(m as f64, 1.0);
        }
        let s = CoefficientSeries { gamma: 1.0, sign: Sign::Neg, irreducible_only: false, x_max: 10, c };
        let w = partial_sums(&s, &[10.0, 2.5, 5.0]).unwrap();
        assert_eq!(w.sums[1], Complex64::new(0.0, 0.0));
        assert_eq!(w.sums[2], Complex64::new(12.0, 3.0));
        assert_eq!(w.sums[0], Complex64::new(52.0, 8.0));
        assert!(partial_sums(&s, &[11.0]).is_err());
    }

    #[test]
    fn synthetic_fit() {
        let grid = geometric_grid(1e3, 1e6, 30);
        let p = Complex64::new(1.25, 0.25);
        let sums = grid.iter().map(|&x| pow(x, p)).collect();
        let w = WeylSeries { gamma: 1.0, grid, sums };
        let r = fit_asymptotics(&w, &[p]).unwrap();
        assert!((r.amplitudes[0] - 1.0).norm() < 1e-10 && r.residual < 1e-10);
        assert!((r.free_slope - 1.25).abs() < 1e-10);
        assert!(fit_asymptotics(&w, &[p, p]).is_err());
    }
}
