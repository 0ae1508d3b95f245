//! Lattice shapes of cubic rings, the covariant point of a form in the upper
//! half plane, reduction to the standard fundamental domain, and the Iwasawa
//! solve `d_λ n_u a_t k_θ · x± = x`.

use nalgebra::linalg::Schur;
use nalgebra::{Matrix3, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cubic_forms::{base_point, CubicForm, GroupElement, IntMatrix, Iwasawa, RealCubicForm, Sign};
use crate::Error;

/// A point `x + iy` of the closed standard fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapePoint {
    pub x: f64,
    pub y: f64,
}

impl ShapePoint {
    pub fn distance(&self, o: &ShapePoint) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    /// Mirror image `−x̄`, the shape of the oppositely oriented lattice.
    pub fn folded(&self) -> ShapePoint {
        ShapePoint { x: -self.x.abs(), y: self.y }
    }
}

/// Solution of `d_λ n_u a_t k_θ · x± = x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IwasawaSolution {
    pub lambda: f64,
    pub t: f64,
    pub u: f64,
    pub theta: f64,
    /// max coefficient error relative to `max(1, ‖x‖∞)`
    pub residual: f64,
}

impl IwasawaSolution {
    pub fn iwasawa(&self) -> Iwasawa {
        Iwasawa { lambda: self.lambda, t: self.t, u: self.u, theta: self.theta }
    }

    pub fn group_element(&self) -> GroupElement {
        GroupElement::from_iwasawa(&self.iwasawa())
    }

    /// The upper half plane point `−u + i/t²` of the coset `g·SO₂`.
    pub fn point(&self) -> (f64, f64) {
        self.iwasawa().upper_half_plane_point()
    }
}

/// Multiplication table of the cubic ring with basis `1, ω, θ`:
/// `ωθ = −ad`, `ω² = −ac + bω − aθ`, `θ² = −bd + dω − cθ`.
/// `table[i][j]` is `e_i e_j` in coordinates of `(1, ω, θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingTable {
    pub table: [[[i128; 3]; 3]; 3],
}

impl RingTable {
    pub fn mul(&self, x: [i128; 3], y: [i128; 3]) -> [i128; 3] {
        let mut out = [0i128; 3];
        for i in 0..3 {
            for j in 0..3 {
                let c = x[i] * y[j];
                if c == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += c * self.table[i][j][k];
                }
            }
        }
        out
    }

    /// Trace of multiplication by `x`.
    pub fn trace(&self, x: [i128; 3]) -> i128 {
        (0..3)
            .map(|j| {
                let mut e = [0i128; 3];
                e[j] = 1;
                self.mul(x, e)[j]
            })
            .sum()
    }

    /// Determinant of the trace form `Tr(e_i e_j)`.
    pub fn trace_form_discriminant(&self) -> i128 {
        let mut g = [[0i128; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut ei = [0i128; 3];
                let mut ej = [0i128; 3];
                ei[i] = 1;
                ej[j] = 1;
                g[i][j] = self.trace(self.mul(ei, ej));
            }
        }
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    }

    /// Largest `|(e_i e_j) e_k − e_i (e_j e_k)|` coordinate over basis triples.
    pub fn associativity_defect(&self) -> i128 {
        let mut worst = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let (mut ei, mut ej, mut ek) = ([0i128; 3], [0i128; 3], [0i128; 3]);
                    ei[i] = 1;
                    ej[j] = 1;
                    ek[k] = 1;
                    let l = self.mul(self.mul(ei, ej), ek);
                    let r = self.mul(ei, self.mul(ej, ek));
                    for n in 0..3 {
                        worst = worst.max((l[n] - r[n]).abs());
                    }
                }
            }
        }
        worst
    }
}

pub fn ring_multiplication_table(f: &CubicForm) -> Result<RingTable, Error> {
    if f.discriminant() == 0 {
        return Err(Error::Singular(*f));
    }
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    let one = [1, 0, 0];
    let omega = [0, 1, 0];
    let theta = [0, 0, 1];
    let om_th = [-a * d, 0, 0];
    let om2 = [-a * c, b, -a];
    let th2 = [-b * d, d, -c];
    Ok(RingTable { table: [[one, omega, theta], [omega, om2, om_th], [theta, om_th, th2]] })
}

/// Real roots of a real binary cubic in the chart `w = 1` (roots of `f(x, 1)`);
/// degenerates to the quadratic or linear case when leading coefficients vanish.
pub fn real_roots(f: &RealCubicForm) -> Vec<f64> {
    if f.a == 0.0 {
        return quadratic_real_roots(f.b, f.c, f.d);
    }
    let roots = complex_roots(f);
    let mut best = 0;
    for (i, r) in roots.iter().enumerate() {
        if r.im.abs() < roots[best].im.abs() {
            best = i;
        }
    }
    let mut out: Vec<f64> = roots
        .iter()
        .enumerate()
        .filter(|(i, r)| *i == best || r.im.abs() <= 1e-7 * r.norm().max(1.0))
        .map(|(_, r)| r.re)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// The three complex roots of `f(x, 1)` (`a ≠ 0`): companion-matrix
/// eigenvalues followed by Newton polishing.
pub fn complex_roots(f: &RealCubicForm) -> [Complex64; 3] {
    let (b, c, d) = (f.b / f.a, f.c / f.a, f.d / f.a);
    let m = Matrix3::new(0.0, 0.0, -d, 1.0, 0.0, -c, 0.0, 1.0, -b);
    // the QR iteration need not converge on defective companion matrices (e.g. x³)
    let start = match Schur::try_new(m, f64::EPSILON, 500) {
        Some(s) => {
            let ev = s.complex_eigenvalues();
            [0, 1, 2].map(|i| Complex64::new(ev[i].re, ev[i].im))
        }
        None => deflated_roots(b, c, d),
    };
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (o, z0) in out.iter_mut().zip(start) {
        let mut z = z0;
        for _ in 0..3 {
            let p = ((z + b) * z + c) * z + d;
            let dp = (z * 3.0 + 2.0 * b) * z + c;
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            z -= step;
            if step.norm() <= 1e-16 * z.norm() {
                break;
            }
        }
        *o = z;
    }
    out
}

/// Roots of the monic `x³ + bx² + cx + d`: the real root by bisection,
/// then the quadratic left after dividing it out.
fn deflated_roots(b: f64, c: f64, d: f64) -> [Complex64; 3] {
    let p = |x: f64| ((x + b) * x + c) * x + d;
    // every root lies in |x| ≤ 1 + max(|b|, |c|, |d|)
    let bound = 1.0 + b.abs().max(c.abs()).max(d.abs());
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    // x² + (b + r)x + (c + r(b + r))
    let (qb, qc) = (b + r, c + r * (b + r));
    let disc = Complex64::new(qb * qb - 4.0 * qc, 0.0).sqrt();
    [Complex64::new(r, 0.0), (-qb + disc) * 0.5, (-qb - disc) * 0.5]
}

/// Real roots of `a x² + b x + c` (or of `b x + c` when `a = 0`), in increasing order.
pub fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut out = if q == 0.0 { vec![0.0, 0.0] } else { vec![q / a, c / q] };
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Gauss reduction of `x + iy` to `|x| ≤ 1/2`, `x² + y² ≥ 1`, with `x = 1/2`
/// moved to `−1/2` and arc points with `x > 0` moved to `x < 0`. The witness
/// `m` satisfies `m.mobius(x, y) = (out.x, out.y)`.
pub fn fundamental_domain_reduce(x: f64, y: f64) -> (ShapePoint, IntMatrix) {
    assert!(y > 0.0, "point must lie in the upper half plane");
    const EPS: f64 = 1e-12;
    let mut m = IntMatrix::IDENTITY;
    let (mut px, mut py) = (x, y);
    for _ in 0..10_000 {
        let k = (px + 0.5).floor();
        if k != 0.0 {
            let k = k as i64;
            m = IntMatrix::new(1, -k, 0, 1).mul(&m);
            px -= k as f64;
        }
        let r2 = px * px + py * py;
        if r2 < 1.0 - EPS {
            m = IntMatrix::S.mul(&m);
            px = -px / r2;
            py /= r2;
        } else {
            break;
        }
    }
    // canonical boundary representatives
    if px > 0.5 - EPS {
        m = IntMatrix::T_INV.mul(&m);
        px -= 1.0;
    }
    let r2 = px * px + py * py;
    if px > EPS && r2 < 1.0 + EPS {
        m = IntMatrix::S.mul(&m);
        px = -px / r2;
        py /= r2;
    }
    (ShapePoint { x: px, y: py }, m)
}

/// A form equivalent to `f` with nonzero first coefficient, via `[[1,k],[0,1]]`.
fn with_leading_coefficient(f: &CubicForm) -> CubicForm {
    if f.a != 0 {
        return *f;
    }
    (1..=4)
        .map(|k| f.act(&IntMatrix::new(1, k, 0, 1)))
        .find(|g| g.a != 0)
        .expect("nonzero cubic has at most three roots")
}

/// Shape of the rank-2 lattice obtained by projecting the Minkowski embedding
/// of the ring `⟨1, ω, θ⟩` orthogonally to `1`. The orientation of the lattice
/// is not an invariant of the ring, so the result is folded to `x ≤ 0`.
pub fn shape_point(f: &CubicForm) -> Result<ShapePoint, Error> {
    let disc = f.discriminant();
    if disc == 0 {
        return Err(Error::Singular(*f));
    }
    let g = with_leading_coefficient(f);
    let r = g.to_real();
    let roots = complex_roots(&r);
    // ω ↦ −aρ, θ ↦ −(aρ² + bρ + c) in each complex embedding
    let emb: Vec<[Complex64; 3]> = roots
        .iter()
        .map(|&rho| {
            let om = -rho * r.a;
            let th = -((rho * r.a + r.b) * rho + r.c);
            [Complex64::new(1.0, 0.0), om, th]
        })
        .collect();
    // Hermitian Minkowski form Σ_σ σ(x) conj(σ(y)), real on the ring
    let gram = |i: usize, j: usize| -> f64 { emb.iter().map(|e| (e[i] * e[j].conj()).re).sum() };
    let g01 = gram(0, 1);
    let g02 = gram(0, 2);
    let g11 = gram(1, 1) - g01 * g01 / 3.0;
    let g12 = gram(1, 2) - g01 * g02 / 3.0;
    // the projected Gram determinant is |disc|/3 exactly; using it avoids cancellation
    let det = (disc.unsigned_abs() as f64) / 3.0;
    if !(g11 > 0.0) {
        return Err(Error::Numerical(format!("degenerate Gram matrix for {f}")));
    }
    let (tau_x, tau_y) = (g12 / g11, det.sqrt() / g11);
    let (p, _) = fundamental_domain_reduce(tau_x, tau_y);
    Ok(p.folded())
}

/// Positive definite covariant `(A, B, C)` of `f` whose root is the point of
/// `g·SO₂` for `f = g·x±`: the Hessian when `P > 0`, the definite quadratic
/// factor when `P < 0`.
pub fn covariant_quadratic(f: &RealCubicForm, sign: Sign) -> [f64; 3] {
    match sign {
        Sign::Pos => {
            let h = f.hessian();
            if h[0] < 0.0 {
                [-h[0], -h[1], -h[2]]
            } else {
                h
            }
        }
        Sign::Neg => {
            let q = if f.a == 0.0 {
                [f.b, f.c, f.d]
            } else {
                let rho = real_roots(f)
                    .into_iter()
                    .min_by(|p, q| f.eval(*p, 1.0).abs().total_cmp(&f.eval(*q, 1.0).abs()))
                    .expect("a real cubic has a real root");
                let mid = f.b + f.a * rho;
                // constant term c + bρ + aρ² equals −d/ρ; pick the better conditioned one
                let last = if rho.abs() > 1.0 { -f.d / rho } else { f.c + mid * rho };
                [f.a, mid, last]
            };
            if q[0] < 0.0 || (q[0] == 0.0 && q[2] < 0.0) {
                [-q[0], -q[1], -q[2]]
            } else {
                q
            }
        }
    }
}

/// Root in the upper half plane of `A z² + B z + C`.
pub fn quadratic_root(q: [f64; 3]) -> (f64, f64) {
    let [a, b, c] = q;
    let disc = 4.0 * a * c - b * b;
    (-b / (2.0 * a), disc.max(0.0).sqrt() / (2.0 * a))
}

/// Oriented point of `f` from its covariant, reduced into the fundamental domain.
/// For `f = g·x±` this is the Γ-orbit of `g·i`, the point at which the
/// Eisenstein twist is evaluated.
pub fn group_point(f: &CubicForm) -> Result<ShapePoint, Error> {
    let disc = f.discriminant();
    let sign = Sign::of(disc).ok_or(Error::Singular(*f))?;
    let (x, y) = match sign {
        Sign::Pos => {
            // exact Hessian; disc(H) = −3P < 0
            let h = f.hessian();
            let s = if h.a < 0 { -1.0 } else { 1.0 };
            let det = (3 * disc) as f64;
            (-(h.b as f64) / (2.0 * s * h.a as f64), det.sqrt() / (2.0 * s * h.a as f64))
        }
        Sign::Neg => crate::class_enumeration::negative_covariant_point(f),
    };
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Numerical(format!("covariant root of {f} not in the upper half plane")));
    }
    Ok(fundamental_domain_reduce(x, y).0)
}

fn apply(iw: &Iwasawa, sign: Sign) -> RealCubicForm {
    base_point(sign).act(&GroupElement::from_iwasawa(iw))
}

fn relative_residual(iw: &Iwasawa, sign: Sign, x: &RealCubicForm) -> f64 {
    let y = apply(iw, sign);
    let scale = x.max_abs().max(1.0);
    y.coeffs().iter().zip(x.coeffs()).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max) / scale
}

/// Solve `d_λ n_u a_t k_θ · x± = x` for `(λ, t, u, θ)`.
///
/// `λ = |P|^{1/12}`; `(t, u)` come from the normalized covariant, whose matrix
/// is `g gᵀ`; `θ` is read off `k_θ·x±`; a few Newton steps on the four
/// coefficient equations polish the result. For the positive sign `θ` lies in
/// `[0, 1/3)`.
pub fn solve_group_element(x: &RealCubicForm, sign: Sign) -> Result<IwasawaSolution, Error> {
    let p = x.discriminant();
    if !(p.is_finite()) || p == 0.0 || (p > 0.0) != (sign == Sign::Pos) {
        return Err(Error::InvalidArgument(format!("form with discriminant {p} does not lie in the {sign} orbit")));
    }
    let lambda = p.abs().powf(1.0 / 12.0);
    let y = x.scale(lambda.powi(-3));
    let q = covariant_quadratic(&y, sign);
    let det = q[0] * q[2] - 0.25 * q[1] * q[1];
    if !(det > 0.0) {
        return Err(Error::Numerical("covariant is not definite".into()));
    }
    let nrm = det.sqrt();
    let (m11, m12) = (q[0] / nrm, 0.5 * q[1] / nrm);
    let t = m11.sqrt();
    let u = m12 / m11;
    // k·x± = a_t⁻¹ n_u⁻¹ · y
    let rest = GroupElement::a(1.0 / t).mul(&GroupElement::n(-u));
    let kx = y.act(&rest);
    let theta = match sign {
        Sign::Neg => kx.a.atan2(kx.b) / (2.0 * PI),
        Sign::Pos => kx.a.atan2(kx.b / 3.0) / (6.0 * PI),
    };
    let period = if sign == Sign::Pos { 1.0 / 3.0 } else { 1.0 };
    let mut iw = Iwasawa { lambda, t, u, theta: theta.rem_euclid(period) };
    let mut res = relative_residual(&iw, sign, x);
    for _ in 0..4 {
        if res <= 1e-15 {
            break;
        }
        let Some(next) = newton_step(&iw, sign, x) else { break };
        let next = Iwasawa { theta: next.theta.rem_euclid(period), ..next };
        let r = relative_residual(&next, sign, x);
        if r < res && next.t > 0.0 && next.lambda > 0.0 {
            iw = next;
            res = r;
        } else {
            break;
        }
    }
    if res > 1e-10 {
        return Err(Error::Numerical(format!("Iwasawa solve stalled at residual {res:e}")));
    }
    Ok(IwasawaSolution { lambda: iw.lambda, t: iw.t, u: iw.u, theta: iw.theta, residual: res })
}

fn newton_step(iw: &Iwasawa, sign: Sign, x: &RealCubicForm) -> Option<Iwasawa> {
    let v = [iw.lambda, iw.t, iw.u, iw.theta];
    let to_iw = |v: [f64; 4]| Iwasawa { lambda: v[0], t: v[1], u: v[2], theta: v[3] };
    let f0 = apply(iw, sign);
    let r = Vector4::from_iterator(f0.coeffs().iter().zip(x.coeffs()).map(|(p, q)| p - q));
    let mut jac = Matrix4::zeros();
    for j in 0..4 {
        let h = 1e-6 * v[j].abs().max(1e-3);
        let (mut vp, mut vm) = (v, v);
        vp[j] += h;
        vm[j] -= h;
        let fp = apply(&to_iw(vp), sign).coeffs();
        let fm = apply(&to_iw(vm), sign).coeffs();
        for i in 0..4 {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    let step = jac.lu().solve(&r)?;
    Some(to_iw([v[0] - step[0], v[1] - step[1], v[2] - step[2], v[3] - step[3]]))
}

/// Lower bound `c₀ |disc|^{−1/12}` on `t` for integral forms with `a ≠ 0`,
/// from `|a| = λ³t³|first coefficient of k_θ·x±| ≥ 1`.
pub fn cusp_barrier(sign: Sign, disc: i128) -> f64 {
    let c0 = match sign {
        Sign::Neg => 2f64.powf(1.0 / 6.0),
        Sign::Pos => 108f64.powf(1.0 / 12.0),
    };
    c0 * (disc.unsigned_abs() as f64).powf(-1.0 / 12.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEX: ShapePoint = ShapePoint { x: -0.5, y: 0.866_025_403_784_438_6 };

    #[test]
    fn ring_table_contracts() {
        let t = ring_multiplication_table(&CubicForm::new(1, 0, -1, -1)).unwrap();
        assert_eq!(t.trace_form_discriminant(), -23);
        assert_eq!(t.associativity_defect(), 0);
        assert!(ring_multiplication_table(&CubicForm::new(0, 0, 1, 0)).is_err());
    }

    #[test]
    fn hexagonal_examples() {
        for f in [CubicForm::new(1, 1, -2, -1), CubicForm::new(0, 1, 1, 0)] {
            let p = shape_point(&f).unwrap();
            assert!(p.distance(&HEX) < 1e-9, "{f}: {p:?}");
        }
        let p = group_point(&CubicForm::new(1, 1, -2, -1)).unwrap();
        assert!(p.distance(&HEX) < 1e-9);
    }

    #[test]
    fn reduce_examples() {
        let (p, m) = fundamental_domain_reduce(0.0, 1.0);
        assert_eq!((p.x, p.y, m), (0.0, 1.0, IntMatrix::IDENTITY));
        let (p, m) = fundamental_domain_reduce(5.3, 0.001);
        assert!(p.y > 0.001 && p.x.abs() <= 0.5 && p.x * p.x + p.y * p.y >= 1.0 - 1e-12);
        let (x, y) = m.mobius(5.3, 0.001);
        assert!((x - p.x).abs() < 1e-9 && (y - p.y).abs() < 1e-9);
        let (p, _) = fundamental_domain_reduce(0.5, 2.0);
        assert_eq!(p.x, -0.5);
        let (p, _) = fundamental_domain_reduce(0.6f64.cos(), 0.6f64.sin());
        assert!(p.x < 0.0);
    }

    #[test]
    fn solve_constructed_inputs() {
        let s = solve_group_element(&base_point(Sign::Neg), Sign::Neg).unwrap();
        assert!((s.lambda - 1.0).abs() < 1e-12 && (s.t - 1.0).abs() < 1e-12 && s.u.abs() < 1e-12);
        assert!(s.theta.abs() < 1e-12 || (s.theta - 1.0).abs() < 1e-12);
        let x = base_point(Sign::Neg).act(&GroupElement::a(2.0));
        let s = solve_group_element(&x, Sign::Neg).unwrap();
        assert!((s.t - 2.0).abs() < 1e-12 && s.u.abs() < 1e-12 && (s.lambda - 1.0).abs() < 1e-12);
    }

    #[test]
    fn first_coefficient_formula() {
        for (lambda, t, u, theta) in [(1.3, 0.7, 0.2, 0.11), (0.8, 2.5, -1.1, 0.73)] {
            let iw = Iwasawa { lambda, t, u, theta };
            let x = apply(&iw, Sign::Neg);
            let expect = lambda.powi(3) * t.powi(3) * (2.0 * PI * theta).sin() / 2f64.sqrt();
            assert!((x.a - expect).abs() < 1e-12);
            let s = solve_group_element(&x, Sign::Neg).unwrap();
            assert!((s.t - t).abs() < 1e-10 && (s.u - u).abs() < 1e-10 && (s.theta - theta).abs() < 1e-10);
            let xp = apply(&iw, Sign::Pos);
            let sp = solve_group_element(&xp, Sign::Pos).unwrap();
            assert!((sp.t - t).abs() < 1e-10 && (sp.theta - theta.rem_euclid(1.0 / 3.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn roots() {
        let r = real_roots(&RealCubicForm::new(1.0, -6.0, 11.0, -6.0));
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-13);
        }
        assert_eq!(real_roots(&RealCubicForm::new(1.0, 0.0, -1.0, -1.0)).len(), 1);
        assert_eq!(quadratic_real_roots(1.0, 0.0, -4.0), vec![-2.0, 2.0]);
    }

    #[test]
    fn triple_roots_terminate() {
        for f in [RealCubicForm::new(-7.0, 0.0, 0.0, 0.0), RealCubicForm::new(1.0, -6.0, 12.0, -8.0)] {
            let r = real_roots(&f);
            let want = -f.b / (3.0 * f.a);
            assert!(r.iter().all(|x| (x - want).abs() < 1e-4), "{r:?}");
        }
        assert_eq!(CubicForm::new(-7, 0, 0, 0).rational_roots(), vec![(0, 1)]);
        let d = deflated_roots(-6.0, 11.0, -6.0);
        let mut re: Vec<f64> = d.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!(re.iter().zip([1.0, 2.0, 3.0]).all(|(a, b)| (a - b).abs() < 1e-12));
    }
}
