//! Binary cubic forms `a v³ + b v²w + c vw² + d w³` and the arithmetic around them:
//! discriminant, the alternating pairing, the substitution action of 2×2
//! matrices, the Hessian covariant and the rational-root based predicates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::shapes::quadratic_real_roots;
use crate::special_functions::divisors;
use crate::Error;

/// Integral binary cubic form. Coefficients are `i64`; anything degree four in
/// them is computed in `i128` (or `BigInt` via [`CubicForm::discriminant_big`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Real binary cubic form with the same coefficient roles as [`CubicForm`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealCubicForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Binary quadratic form `a v² + b vw + c w²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// Sign of the discriminant, i.e. which open orbit `V₊` or `V₋` a form lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(disc: i128) -> Option<Sign> {
        match disc.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Pos => "pos",
            Sign::Neg => "neg",
        }
    }

    pub fn factor(self) -> i128 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "pos" | "+" | "plus" => Ok(Sign::Pos),
            "neg" | "-" | "minus" => Ok(Sign::Neg),
            _ => Err(Error::Parse(format!("unknown sign {s:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer 2×2 matrix `[[m00, m01], [m10, m11]]`, used for unimodular substitutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix(pub [[i64; 2]; 2]);

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix([[1, 0], [0, 1]]);
    pub const NEG_IDENTITY: IntMatrix = IntMatrix([[-1, 0], [0, -1]]);
    /// `S = [[0,-1],[1,0]]`.
    pub const S: IntMatrix = IntMatrix([[0, -1], [1, 0]]);
    /// `T = [[1,1],[0,1]]`.
    pub const T: IntMatrix = IntMatrix([[1, 1], [0, 1]]);
    pub const T_INV: IntMatrix = IntMatrix([[1, -1], [0, 1]]);

    pub fn new(m00: i64, m01: i64, m10: i64, m11: i64) -> IntMatrix {
        IntMatrix([[m00, m01], [m10, m11]])
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let (p, q) = (&self.0, &other.0);
        IntMatrix([
            [p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]],
            [p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]],
        ])
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse(&self) -> IntMatrix {
        let det = self.det();
        assert!(det == 1 || det == -1, "inverse of a non-unimodular matrix");
        let m = &self.0;
        IntMatrix([[det * m[1][1], -det * m[0][1]], [-det * m[1][0], det * m[0][0]]])
    }

    pub fn transpose(&self) -> IntMatrix {
        let m = &self.0;
        IntMatrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn to_real(&self) -> GroupElement {
        let m = &self.0;
        GroupElement::new([[m[0][0] as f64, m[0][1] as f64], [m[1][0] as f64, m[1][1] as f64]])
    }

    /// Möbius transformation `z ↦ (m00 z + m01)/(m10 z + m11)`.
    pub fn mobius(&self, x: f64, y: f64) -> (f64, f64) {
        let m = &self.0;
        let (p, q, r, s) = (m[0][0] as f64, m[0][1] as f64, m[1][0] as f64, m[1][1] as f64);
        // (p z + q)/(r z + s) with z = x + iy
        let (nr, ni) = (p * x + q, p * y);
        let (dr, di) = (r * x + s, r * y);
        let den = dr * dr + di * di;
        ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    }
}

/// Real 2×2 matrix, acting on forms by `g·x(v,w) = x((v,w)g)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub m: [[f64; 2]; 2],
}

/// Iwasawa coordinates for `g = d_λ n_u a_t k_θ`, with `n_u = [[1,0],[u,1]]`,
/// `a_t = diag(t, 1/t)`, `k_θ` the rotation by `2πθ` and `d_λ = λ·I`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Iwasawa {
    pub lambda: f64,
    pub t: f64,
    pub u: f64,
    pub theta: f64,
}

impl GroupElement {
    pub fn new(m: [[f64; 2]; 2]) -> GroupElement {
        GroupElement { m }
    }

    pub fn identity() -> GroupElement {
        GroupElement::new([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn d(lambda: f64) -> GroupElement {
        GroupElement::new([[lambda, 0.0], [0.0, lambda]])
    }

    pub fn n(u: f64) -> GroupElement {
        GroupElement::new([[1.0, 0.0], [u, 1.0]])
    }

    pub fn a(t: f64) -> GroupElement {
        GroupElement::new([[t, 0.0], [0.0, 1.0 / t]])
    }

    pub fn k(theta: f64) -> GroupElement {
        let (s, c) = (2.0 * std::f64::consts::PI * theta).sin_cos();
        GroupElement::new([[c, s], [-s, c]])
    }

    /// `d_λ n_u a_t k_θ`.
    pub fn from_iwasawa(iw: &Iwasawa) -> GroupElement {
        GroupElement::d(iw.lambda)
            .mul(&GroupElement::n(iw.u))
            .mul(&GroupElement::a(iw.t))
            .mul(&GroupElement::k(iw.theta))
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        let (p, q) = (&self.m, &o.m);
        GroupElement::new([
            [p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]],
            [p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]],
        ])
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(&self) -> GroupElement {
        let m = &self.m;
        GroupElement::new([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// `χ(g) = det(g)⁶`, the factor by which the discriminant scales.
    pub fn chi(&self) -> f64 {
        self.det().powi(6)
    }

    /// Decompose `g` (det > 0) as `d_λ n_u a_t k_θ`, θ in `[0, 1)`.
    pub fn iwasawa(&self) -> Iwasawa {
        let det = self.det();
        assert!(det > 0.0, "Iwasawa decomposition needs det > 0");
        let lambda = det.sqrt();
        let g = [[self.m[0][0] / lambda, self.m[0][1] / lambda], [self.m[1][0] / lambda, self.m[1][1] / lambda]];
        // g gᵀ = n a aᵀ nᵀ = [[t², u t²], [u t², u² t² + t⁻²]]
        let m11 = g[0][0] * g[0][0] + g[0][1] * g[0][1];
        let m12 = g[0][0] * g[1][0] + g[0][1] * g[1][1];
        let t = m11.sqrt();
        let u = m12 / m11;
        // first row of g is t·(cos, sin)
        let theta = g[0][1].atan2(g[0][0]) / (2.0 * std::f64::consts::PI);
        Iwasawa { lambda, t, u, theta: theta.rem_euclid(1.0) }
    }
}

impl Iwasawa {
    /// Point of the upper half plane attached to the coset `g·SO₂`: the root of the
    /// positive definite form with matrix `g gᵀ`, which is `-u + i/t²`.
    pub fn upper_half_plane_point(&self) -> (f64, f64) {
        (-self.u, 1.0 / (self.t * self.t))
    }
}

impl CubicForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> CubicForm {
        CubicForm { a, b, c, d }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_coeffs(c: [i64; 4]) -> CubicForm {
        CubicForm::new(c[0], c[1], c[2], c[3])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs() == [0; 4]
    }

    pub fn neg(&self) -> CubicForm {
        CubicForm::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn height(&self) -> i64 {
        self.coeffs().iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn to_real(&self) -> RealCubicForm {
        RealCubicForm::new(self.a as f64, self.b as f64, self.c as f64, self.d as f64)
    }

    /// `P = b²c² + 18abcd − 4ac³ − 4b³d − 27a²d²`, exact.
    ///
    /// Computed in `i128`; falls back to big integers when the result would
    /// overflow and panics only if the true value does not fit in `i128`.
    pub fn discriminant(&self) -> i128 {
        match self.discriminant_checked() {
            Some(p) => p,
            None => i128::try_from(self.discriminant_big()).expect("discriminant exceeds i128"),
        }
    }

    fn discriminant_checked(&self) -> Option<i128> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let t1 = b.checked_mul(b)?.checked_mul(c.checked_mul(c)?)?;
        let t2 = a.checked_mul(b)?.checked_mul(c.checked_mul(d)?)?.checked_mul(18)?;
        let t3 = a.checked_mul(c.checked_mul(c)?.checked_mul(c)?)?.checked_mul(4)?;
        let t4 = d.checked_mul(b.checked_mul(b)?.checked_mul(b)?)?.checked_mul(4)?;
        let t5 = a.checked_mul(a)?.checked_mul(d.checked_mul(d)?)?.checked_mul(27)?;
        t1.checked_add(t2)?.checked_sub(t3)?.checked_sub(t4)?.checked_sub(t5)
    }

    pub fn discriminant_big(&self) -> BigInt {
        let (a, b, c, d) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c), BigInt::from(self.d));
        &b * &b * &c * &c + 18 * &a * &b * &c * &d - 4 * &a * &c * &c * &c - 4 * &b * &b * &b * &d - 27 * &a * &a * &d * &d
    }

    /// `f((v,w)g)` for an integer matrix. Panics on coefficient overflow.
    pub fn act(&self, g: &IntMatrix) -> CubicForm {
        let m = &g.0;
        let c = substitute(
            [self.a as i128, self.b as i128, self.c as i128, self.d as i128],
            [m[0][0] as i128, m[0][1] as i128, m[1][0] as i128, m[1][1] as i128],
        );
        let cv = |x: i128| i64::try_from(x).expect("coefficient overflow in act");
        CubicForm::new(cv(c[0]), cv(c[1]), cv(c[2]), cv(c[3]))
    }

    /// Like [`CubicForm::act`] but returns `None` when a coefficient leaves `i64`.
    pub fn try_act(&self, g: &IntMatrix) -> Option<CubicForm> {
        let m = &g.0;
        let c = substitute(
            [self.a as i128, self.b as i128, self.c as i128, self.d as i128],
            [m[0][0] as i128, m[0][1] as i128, m[1][0] as i128, m[1][1] as i128],
        );
        Some(CubicForm::new(
            i64::try_from(c[0]).ok()?,
            i64::try_from(c[1]).ok()?,
            i64::try_from(c[2]).ok()?,
            i64::try_from(c[3]).ok()?,
        ))
    }

    /// Value `f(v, w)`.
    pub fn eval(&self, v: i128, w: i128) -> i128 {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        ((a * v + b * w) * v + c * w * w) * v + d * w * w * w
    }

    /// Hessian covariant `(b²−3ac, bc−9ad, c²−3bd)`; its discriminant is `−3P`.
    pub fn hessian(&self) -> QuadForm {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        QuadForm { a: b * b - 3 * a * c, b: b * c - 9 * a * d, c: c * c - 3 * b * d }
    }

    /// True iff `3 | b` and `3 | c` (the dual lattice `L̂`).
    pub fn is_dual_integral(&self) -> bool {
        self.b % 3 == 0 && self.c % 3 == 0
    }

    /// Rational roots `(v : w)` of `f`, primitive with `w ≥ 0` (and `v = 1` when `w = 0`).
    /// Works for any nonzero form; repeated roots are listed once.
    pub fn rational_roots(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if self.a == 0 {
            out.push((1, 0));
        }
        let q = self.to_real();
        // Candidate real roots of f(v,1) in whichever chart is defined; exact check below.
        let real_roots: Vec<f64> = if self.a != 0 {
            crate::shapes::real_roots(&q)
        } else if self.b != 0 {
            quadratic_real_roots(self.b as f64, self.c as f64, self.d as f64)
        } else if self.c != 0 {
            vec![-(self.d as f64) / (self.c as f64)]
        } else {
            vec![]
        };
        // rational root v/w in lowest terms needs w | leading coefficient
        let lead = [self.a, self.b, self.c, self.d].into_iter().find(|&x| x != 0).unwrap_or(1);
        let lead_abs = lead.unsigned_abs();
        let divisors = divisors(lead_abs);
        for r in real_roots {
            for &w in &divisors {
                let w = w as i64;
                let center = (r * w as f64).round();
                if !center.is_finite() || center.abs() > 4e18 {
                    continue;
                }
                let center = center as i64;
                for v in [center - 1, center, center + 1] {
                    if v.gcd(&w) == 1 && self.eval(v as i128, w as i128) == 0 && !out.contains(&(v, w)) {
                        out.push((v, w));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Irreducible over ℚ: `a ≠ 0` and `f(v,1)` has no rational root. Errors on singular input.
    pub fn is_irreducible(&self) -> Result<bool, Error> {
        if self.discriminant() == 0 {
            return Err(Error::Singular(*self));
        }
        Ok(self.a != 0 && self.rational_roots().is_empty())
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for CubicForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected a,b,c,d but got {s:?}")));
        }
        let mut c = [0i64; 4];
        for (slot, p) in c.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| Error::Parse(format!("bad coefficient {p:?}")))?;
        }
        Ok(CubicForm::from_coeffs(c))
    }
}

impl RealCubicForm {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> RealCubicForm {
        RealCubicForm { a, b, c, d }
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_coeffs(c: [f64; 4]) -> RealCubicForm {
        RealCubicForm::new(c[0], c[1], c[2], c[3])
    }

    pub fn scale(&self, mu: f64) -> RealCubicForm {
        RealCubicForm::new(mu * self.a, mu * self.b, mu * self.c, mu * self.d)
    }

    pub fn discriminant(&self) -> f64 {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        b * b * c * c + 18.0 * a * b * c * d - 4.0 * a * c * c * c - 4.0 * b * b * b * d - 27.0 * a * a * d * d
    }

    pub fn act(&self, g: &GroupElement) -> RealCubicForm {
        let m = &g.m;
        RealCubicForm::from_coeffs(substitute(self.coeffs(), [m[0][0], m[0][1], m[1][0], m[1][1]]))
    }

    pub fn eval(&self, v: f64, w: f64) -> f64 {
        ((self.a * v + self.b * w) * v + self.c * w * w) * v + self.d * w * w * w
    }

    /// Real Hessian `(b²−3ac, bc−9ad, c²−3bd)` as `(A, B, C)`.
    pub fn hessian(&self) -> [f64; 3] {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        [b * b - 3.0 * a * c, b * c - 9.0 * a * d, c * c - 3.0 * b * d]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// The base points `x₊ = (0, 3·108^{-1/4}, 0, −108^{-1/4})` (P = 1) and
/// `x₋ = (0, 2^{-1/2}, 0, 2^{-1/2})` (P = −1).
pub fn base_point(sign: Sign) -> RealCubicForm {
    match sign {
        Sign::Pos => {
            let k = 108f64.powf(-0.25);
            RealCubicForm::new(0.0, 3.0 * k, 0.0, -k)
        }
        Sign::Neg => {
            let k = std::f64::consts::FRAC_1_SQRT_2;
            RealCubicForm::new(0.0, k, 0.0, k)
        }
    }
}

/// Exact `⟨x, y⟩ = x₄y₁ − x₃y₂/3 + x₂y₃/3 − x₁y₄`.
pub fn pairing(x: &CubicForm, y: &CubicForm) -> Ratio<i128> {
    let (x1, x2, x3, x4) = (x.a as i128, x.b as i128, x.c as i128, x.d as i128);
    let (y1, y2, y3, y4) = (y.a as i128, y.b as i128, y.c as i128, y.d as i128);
    Ratio::new(3 * (x4 * y1 - x1 * y4) - x3 * y2 + x2 * y3, 3)
}

pub fn pairing_real(x: &RealCubicForm, y: &RealCubicForm) -> f64 {
    x.d * y.a - x.c * y.b / 3.0 + x.b * y.c / 3.0 - x.a * y.d
}

impl QuadForm {
    pub fn new(a: i128, b: i128, c: i128) -> QuadForm {
        QuadForm { a, b, c }
    }

    /// `D = b² − 4ac`.
    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `Q((v,w)g)`.
    pub fn act(&self, g: &IntMatrix) -> QuadForm {
        let m = &g.0;
        let (p, q, r, s) = (m[0][0] as i128, m[0][1] as i128, m[1][0] as i128, m[1][1] as i128);
        // X = p v + r w, Y = q v + s w
        QuadForm {
            a: self.a * p * p + self.b * p * q + self.c * q * q,
            b: 2 * self.a * p * r + self.b * (p * s + q * r) + 2 * self.c * q * s,
            c: self.a * r * r + self.b * r * s + self.c * s * s,
        }
    }
}

/// `substitute(f, [p,q,r,s])` returns the coefficients of `f(p v + r w, q v + s w)`.
pub(crate) fn substitute<T: Copy + Num>(f: [T; 4], g: [T; 4]) -> [T; 4] {
    let [p, q, r, s] = g;
    let mut out = [T::zero(); 4];
    for (idx, &coef) in f.iter().enumerate() {
        // X^(3-idx) Y^idx with X = p v + r w, Y = q v + s w
        let mut poly = [T::one(), T::zero(), T::zero(), T::zero()];
        for deg in 0..3 {
            let lin = if deg < 3 - idx { [p, r] } else { [q, s] };
            let mut next = [T::zero(); 4];
            for k in 0..=deg {
                next[k] = next[k] + poly[k] * lin[0];
                next[k + 1] = next[k + 1] + poly[k] * lin[1];
            }
            poly = next;
        }
        for k in 0..4 {
            out[k] = out[k] + coef * poly[k];
        }
    }
    out
}
