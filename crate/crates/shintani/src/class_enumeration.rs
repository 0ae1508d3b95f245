//! SL₂(ℤ)-classes of integral binary cubic forms of bounded discriminant.
//!
//! Irreducible classes are found by a coefficient search over forms whose
//! covariant point (Hessian root for `P > 0`, complex root for `P < 0`) lies
//! in the fundamental domain; the representative is the lexicographically
//! smallest such form in the class. Reducible classes come from a sweep of
//! `ℛ = {(0, b, c, d) : 0 ≤ c < 2b}`. An independent orbit-search oracle is
//! provided for cross-checking.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_integer::{Integer, Roots};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cubic_forms::{CubicForm, IntMatrix, QuadForm, Sign};
use crate::shapes::fundamental_domain_reduce;
use crate::Error;

/// Slack used when deciding whether a floating point covariant root is reduced.
pub const DOMAIN_SLACK: f64 = 1e-9;

/// Largest discriminant bound accepted by [`enumerate_oracle`].
pub const ORACLE_GUARD: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormClass {
    pub rep: CubicForm,
    pub disc: i128,
    pub stab_order: u8,
    pub irreducible: bool,
    /// Reducible classes only: whether `c² − 4bd` of the ℛ representative is a square.
    pub square_disc_quadratic: bool,
}

impl FormClass {
    pub fn sign(&self) -> Sign {
        Sign::of(self.disc).expect("classes are nonsingular")
    }

    /// Weight `1/|Stab|` in the twisted sums.
    pub fn weight(&self) -> f64 {
        1.0 / self.stab_order as f64
    }
}

fn order_key(c: &FormClass) -> (u128, CubicForm) {
    (c.disc.unsigned_abs(), c.rep)
}

/// Unimodular matrices with entries in `[−2, 2]`. Any element moving a reduced
/// point to another reduced point (or fixing one) lies in this set.
fn small_unimodular() -> &'static [IntMatrix] {
    static SET: OnceLock<Vec<IntMatrix>> = OnceLock::new();
    SET.get_or_init(|| {
        let mut v = Vec::new();
        for p in -2..=2 {
            for q in -2..=2 {
                for r in -2..=2 {
                    for s in -2..=2 {
                        if p * s - q * r == 1 {
                            v.push(IntMatrix::new(p, q, r, s));
                        }
                    }
                }
            }
        }
        v
    })
}

/// The real root of a monic cubic with a single real root (Cardano, then Newton).
fn single_real_root(b: f64, c: f64, d: f64) -> f64 {
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = 0.25 * q * q + p * p * p / 27.0;
    let y = if disc >= 0.0 {
        let s = disc.sqrt();
        let u = (-0.5 * q - q.signum() * s).cbrt();
        if u == 0.0 {
            0.0
        } else {
            u - p / (3.0 * u)
        }
    } else {
        // three real roots (only from rounding near P = 0); take the largest
        let r = (-p / 3.0).sqrt();
        let phi = (-0.5 * q / (r * r * r)).clamp(-1.0, 1.0).acos() / 3.0;
        2.0 * r * phi.cos()
    };
    let mut x = y - b / 3.0;
    for _ in 0..3 {
        let f = ((x + b) * x + c) * x + d;
        let df = (3.0 * x + 2.0 * b) * x + c;
        if df == 0.0 {
            break;
        }
        let step = f / df;
        x -= step;
        if step.abs() <= 1e-16 * x.abs() {
            break;
        }
    }
    x
}

/// Root in the upper half plane of the definite quadratic factor of a form with
/// `P < 0` (equivalently its non-real root in the chart `w = 1`).
pub fn negative_covariant_point(f: &CubicForm) -> (f64, f64) {
    let (a, b, c, d) = (f.a as f64, f.b as f64, f.c as f64, f.d as f64);
    if f.a == 0 {
        let re = -c / (2.0 * b);
        let im = (4.0 * b * d - c * c).max(0.0).sqrt() / (2.0 * b.abs());
        return (re, im);
    }
    let (bb, cc, dd) = (b / a, c / a, d / a);
    let rho = single_real_root(bb, cc, dd);
    let re = -0.5 * (bb + rho);
    let norm2 = if rho.abs() >= 1.0 { -dd / rho } else { cc + rho * (bb + rho) };
    (re, (norm2 - re * re).max(0.0).sqrt())
}

fn point_reduced(x: f64, y: f64) -> bool {
    x.abs() <= 0.5 + DOMAIN_SLACK && x * x + y * y >= 1.0 - DOMAIN_SLACK
}

fn hessian_reduced(h: &QuadForm) -> bool {
    h.a > 0 && h.b.abs() <= h.a && h.a <= h.c
}

/// Whether the covariant point of `f` lies in the (closed, for `P < 0` slightly
/// enlarged) fundamental domain.
pub fn covariant_reduced(f: &CubicForm, sign: Sign) -> bool {
    match sign {
        Sign::Pos => hessian_reduced(&f.hessian()),
        Sign::Neg => {
            let (x, y) = negative_covariant_point(f);
            point_reduced(x, y)
        }
    }
}

/// `γ` with `γ·h` Gauss reduced, for positive definite `h`.
fn reduce_definite(h: &QuadForm) -> IntMatrix {
    let mut g = IntMatrix::IDENTITY;
    let mut q = *h;
    for _ in 0..10_000 {
        if q.b.abs() > q.a {
            // B + 2Ak ∈ (−A, A]
            let k = Integer::div_floor(&(q.a - q.b), &(2 * q.a));
            let m = IntMatrix::new(1, 0, k as i64, 1);
            q = q.act(&m);
            g = m.mul(&g);
        } else if q.a > q.c {
            q = q.act(&IntMatrix::S);
            g = IntMatrix::S.mul(&g);
        } else {
            break;
        }
    }
    g
}

/// A transform `γ₀` putting the covariant of `f` into the fundamental domain.
fn covariant_transform(f: &CubicForm, sign: Sign) -> IntMatrix {
    match sign {
        Sign::Pos => {
            let h = f.hessian();
            let h = if h.a < 0 { QuadForm::new(-h.a, -h.b, -h.c) } else { h };
            reduce_definite(&h)
        }
        Sign::Neg => {
            // the point moves by (γ⁻¹)ᵀ under f ↦ γ·f
            let (x, y) = negative_covariant_point(f);
            let (_, m) = fundamental_domain_reduce(x, y);
            m.inverse().transpose()
        }
    }
}

struct Reduced {
    base: CubicForm,
    base_transform: IntMatrix,
    /// `(δ·base, δ)` for all small δ keeping the covariant reduced
    candidates: Vec<(CubicForm, IntMatrix)>,
}

fn reduced_candidates(f: &CubicForm, sign: Sign) -> Result<Reduced, Error> {
    let g0 = covariant_transform(f, sign);
    let base = f.try_act(&g0).ok_or_else(|| Error::Numerical(format!("coefficient overflow reducing {f}")))?;
    let mut candidates = Vec::new();
    for d in small_unimodular() {
        if let Some(g) = base.try_act(d) {
            if covariant_reduced(&g, sign) {
                candidates.push((g, *d));
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::Numerical(format!("covariant reduction of {f} found no reduced form")));
    }
    Ok(Reduced { base, base_transform: g0, candidates })
}

/// Canonical representative of the class of a nonsingular form with respect to
/// the covariant scheme, and a transform `γ` with `γ·f = rep`.
fn canonical_covariant(f: &CubicForm) -> Result<(CubicForm, IntMatrix), Error> {
    let sign = Sign::of(f.discriminant()).ok_or(Error::Singular(*f))?;
    let r = reduced_candidates(f, sign)?;
    let (rep, d) = r.candidates.iter().min_by_key(|(g, _)| *g).copied().expect("nonempty");
    Ok((rep, d.mul(&r.base_transform)))
}

/// Canonical SL₂(ℤ) representative of an irreducible form, with a transform
/// `γ` such that `γ·f` is the representative. Two irreducible forms are
/// equivalent iff their representatives coincide.
pub fn canonical_reduce(f: &CubicForm) -> Result<(CubicForm, IntMatrix), Error> {
    if !f.is_irreducible()? {
        return Err(Error::Reducible(*f));
    }
    canonical_covariant(f)
}

/// Canonical representative of any nonsingular form: the covariant scheme for
/// irreducible forms, the smallest ℛ representative for reducible ones.
pub fn canonical_form(f: &CubicForm) -> Result<CubicForm, Error> {
    if f.is_irreducible()? {
        Ok(canonical_reduce(f)?.0)
    } else {
        Ok(reduce_reducible(f)?[0])
    }
}

/// Order (1 or 3) of the stabilizer of `f` in SL₂(ℤ).
pub fn stabilizer_order(f: &CubicForm) -> Result<u8, Error> {
    let sign = Sign::of(f.discriminant()).ok_or(Error::Singular(*f))?;
    if sign == Sign::Neg {
        return Ok(1);
    }
    let r = reduced_candidates(f, sign)?;
    // conjugating a stabilizer of f by γ₀ gives a small matrix fixing the base form
    let n = r.candidates.iter().filter(|(g, _)| *g == r.base).count();
    match n {
        1 | 3 => Ok(n as u8),
        _ => Err(Error::Numerical(format!("unexpected stabilizer order {n} for {f}"))),
    }
}

/// The forms of ℛ equivalent to a reducible nonsingular `f`, sorted: one per
/// rational root of `f`, deduplicated.
pub fn reduce_reducible(f: &CubicForm) -> Result<Vec<CubicForm>, Error> {
    if f.discriminant() == 0 {
        return Err(Error::Singular(*f));
    }
    let roots = f.rational_roots();
    if roots.is_empty() {
        return Err(Error::Irreducible(*f));
    }
    let mut out = Vec::with_capacity(roots.len());
    for (v0, w0) in roots {
        // first row (v0, w0) makes the new leading coefficient f(v0, w0) = 0
        let (g, x, y) = extended_gcd(v0, w0);
        debug_assert_eq!(g, 1);
        // v0·x + w0·y = 1, so s = x, r = −y gives v0 s − w0 r = 1
        let gamma = IntMatrix::new(v0, w0, -y, x);
        let mut h = f.act(&gamma);
        debug_assert_eq!(h.a, 0);
        if h.b < 0 {
            h = h.neg();
        }
        let k = -Integer::div_floor(&h.c, &(2 * h.b));
        h = h.act(&IntMatrix::new(1, 0, k, 1));
        out.push(h);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = n.sqrt();
        r * r == n
    }
}

/// Sup over `θ` of `|coefficient i of k_θ·x±|`.
fn coefficient_sup(sign: Sign) -> [f64; 4] {
    match sign {
        Sign::Neg => [std::f64::consts::FRAC_1_SQRT_2; 4],
        Sign::Pos => {
            let k = 108f64.powf(-0.25);
            [k, 3.0 * k, 3.0 * k, k]
        }
    }
}

/// Coefficient bounds for forms with reduced covariant and `0 < ±P ≤ X`.
#[derive(Clone, Copy, Debug)]
struct SearchBox {
    sign: Sign,
    x: i64,
    lambda3: f64,
    lambda4: f64,
    m: [f64; 4],
    inflate: f64,
    pad: f64,
}

impl SearchBox {
    fn new(sign: Sign, x: i64, inflate: f64, pad: f64) -> SearchBox {
        let xf = x as f64;
        SearchBox { sign, x, lambda3: xf.powf(0.25), lambda4: xf.powf(1.0 / 3.0), m: coefficient_sup(sign), inflate, pad }
    }

    // for a reduced point −u + i/t²: |u| ≤ 1/2 and t² ≤ 2/√3
    fn t_max(&self) -> f64 {
        (4.0f64 / 3.0).powf(0.25) * (1.0 + 1e-6)
    }

    fn a_max(&self) -> i64 {
        (self.inflate * self.m[0] * self.t_max().powi(3) * self.lambda3 + self.pad).floor() as i64
    }

    fn b_max(&self, a: i64) -> i64 {
        (self.inflate * (1.5 * a.abs() as f64 + self.lambda3 * self.m[1] * self.t_max()) + self.pad).floor() as i64
    }

    fn c_range(&self, a: i64, b: i64) -> (i64, i64) {
        let (af, bf) = (a as f64, b as f64);
        let q = |u: f64| 2.0 * u * bf - 3.0 * u * u * af;
        let um = 0.5 + 1e-6;
        let mut lo = q(-um).min(q(um));
        let mut hi = q(-um).max(q(um));
        let vertex = bf / (3.0 * af);
        if vertex.abs() <= um {
            lo = lo.min(q(vertex));
            hi = hi.max(q(vertex));
        }
        let r = self.lambda4 * self.m[2] * self.m[0].cbrt() * af.abs().powf(-1.0 / 3.0) * (1.0 + 1e-6);
        let r = self.inflate * r + self.pad;
        ((lo - r).floor() as i64, (hi + r).ceil() as i64)
    }

    /// Integer `d` ranges with `0 < ±P(a,b,c,d) ≤ X`, slightly padded; exact filtering is up to the caller.
    fn d_ranges(&self, a: i64, b: i64, c: i64) -> Vec<(i64, i64)> {
        // P(d) = −27a²d² + βd + γ
        let (af, bf, cf) = (a as f64, b as f64, c as f64);
        let alpha = 27.0 * af * af;
        let beta = 18.0 * af * bf * cf - 4.0 * bf * bf * bf;
        let gamma = bf * bf * cf * cf - 4.0 * af * cf * cf * cf;
        // {d : P(d) ≥ level}
        let above = |level: f64| -> Option<(f64, f64)> {
            let disc = beta * beta + 4.0 * alpha * (gamma - level);
            if disc < 0.0 {
                return None;
            }
            let s = disc.sqrt();
            Some(((beta - s) / (2.0 * alpha), (beta + s) / (2.0 * alpha)))
        };
        let xf = self.x as f64;
        let mut out = Vec::new();
        let pad = 2.0;
        match self.sign {
            Sign::Neg => {
                let Some((lo, hi)) = above(-xf) else { return out };
                match above(0.0) {
                    None => out.push(((lo - pad).floor() as i64, (hi + pad).ceil() as i64)),
                    Some((z1, z2)) => {
                        out.push(((lo - pad).floor() as i64, (z1 + pad).ceil() as i64));
                        out.push(((z2 - pad).floor() as i64, (hi + pad).ceil() as i64));
                    }
                }
            }
            Sign::Pos => {
                let Some((lo, hi)) = above(1.0 - 0.5) else { return out };
                match above(xf + 0.5) {
                    None => out.push(((lo - pad).floor() as i64, (hi + pad).ceil() as i64)),
                    Some((z1, z2)) => {
                        out.push(((lo - pad).floor() as i64, (z1 + pad).ceil() as i64));
                        out.push(((z2 - pad).floor() as i64, (hi + pad).ceil() as i64));
                    }
                }
            }
        }
        out
    }

    fn describe(&self) -> String {
        format!(
            "|a| <= {:.3}*(4/3)^(3/4)*X^(1/4)+{}; |b| <= {:.3}*(1.5|a| + {:.4}*(4/3)^(1/4)*X^(1/4))+{}; \
             c within {:.3}*X^(1/3)*{:.4}*{:.4}^(1/3)*|a|^(-1/3)+{} of the range of 2ub-3u^2a over |u|<=1/2; \
             d from 0 < {}P <= X",
            self.inflate, self.pad, self.inflate, self.m[1], self.pad, self.inflate, self.m[2], self.m[0], self.pad,
            if self.sign == Sign::Neg { "-" } else { "" }
        )
    }
}

fn in_range(p: i128, sign: Sign, x: i64) -> bool {
    let v = sign.factor() * p;
    v > 0 && v <= x as i128
}

/// All forms with nonzero `a` (both signs of `a` when `negative_a_only` is false) in the box.
fn box_forms<F: Fn(&CubicForm, i128) -> bool + Sync>(sbox: &SearchBox, negative_a_only: bool, keep: F) -> Vec<CubicForm> {
    let amax = sbox.a_max();
    let avals: Vec<i64> =
        if negative_a_only { (-amax..=-1).collect() } else { (-amax..=amax).filter(|&a| a != 0).collect() };
    avals
        .par_iter()
        .flat_map_iter(|&a| {
            let mut out = Vec::new();
            let bm = sbox.b_max(a);
            for b in -bm..=bm {
                let (clo, chi) = sbox.c_range(a, b);
                for c in clo..=chi {
                    for (dlo, dhi) in sbox.d_ranges(a, b, c) {
                        for d in dlo..=dhi {
                            let f = CubicForm::new(a, b, c, d);
                            let p = f.discriminant();
                            if in_range(p, sbox.sign, sbox.x) && keep(&f, p) {
                                out.push(f);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect()
}

fn irreducible_classes(sign: Sign, x: i64) -> Vec<FormClass> {
    let sbox = SearchBox::new(sign, x, 1.0, 1e-9);
    let mut seen = HashSet::new();
    let reps = box_forms(&sbox, true, |f, _| {
        covariant_reduced(f, sign)
            && f.is_irreducible().unwrap_or(false)
            && canonical_covariant(f).map(|(r, _)| r == *f).unwrap_or(false)
    });
    let mut out = Vec::with_capacity(reps.len());
    for f in reps {
        // overlapping d ranges may report a form twice
        if !seen.insert(f) {
            continue;
        }
        let disc = f.discriminant();
        let stab = stabilizer_order(&f).expect("nonsingular");
        out.push(FormClass { rep: f, disc, stab_order: stab, irreducible: true, square_disc_quadratic: false });
    }
    out
}

/// `d` with `1 ≤ ±(4bd − c²) ≤ X/b²`, i.e. `0 < ∓P(0,b,c,d) ≤ X`.
fn reducible_d_range(sign: Sign, b: i64, c: i64, x: i64) -> (i64, i64) {
    let k = x / (b * b);
    let c2 = c * c;
    let q = 4 * b;
    match sign {
        Sign::Neg => (Integer::div_ceil(&(c2 + 1), &q), Integer::div_floor(&(c2 + k), &q)),
        Sign::Pos => (Integer::div_ceil(&(c2 - k), &q), Integer::div_floor(&(c2 - 1), &q)),
    }
}

fn reducible_classes(sign: Sign, x: i64) -> Vec<FormClass> {
    let bmax = (x as i128).sqrt() as i64;
    (1..=bmax)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut out = Vec::new();
            for c in 0..2 * b {
                let (lo, hi) = reducible_d_range(sign, b, c, x);
                for d in lo..=hi {
                    let f = CubicForm::new(0, b, c, d);
                    let q = (c * c - 4 * b * d) as i128;
                    let square = is_square(q);
                    let mut stab = 1;
                    if square {
                        let reps = reduce_reducible(&f).expect("reducible");
                        if reps[0] != f {
                            continue;
                        }
                        if reps.len() == 1 {
                            stab = 3;
                        }
                    }
                    out.push(FormClass {
                        rep: f,
                        disc: f.discriminant(),
                        stab_order: stab,
                        irreducible: false,
                        square_disc_quadratic: square,
                    });
                }
            }
            out
        })
        .collect()
}

/// One [`FormClass`] per SL₂(ℤ)-class with `0 < ±disc ≤ X`, ordered by
/// `(|disc|, rep)`.
pub fn enumerate_classes(sign: Sign, x: i64, irreducible_only: bool) -> Vec<FormClass> {
    assert!(x >= 1, "X must be positive");
    let mut out = irreducible_classes(sign, x);
    if !irreducible_only {
        out.extend(reducible_classes(sign, x));
    }
    out.sort_by_key(order_key);
    out
}

/// A class found by the orbit-search oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleClass {
    pub disc: i128,
    /// smallest box member of the class
    pub rep: CubicForm,
    pub stab_order: u8,
    pub irreducible: bool,
    /// all forms of the search box lying in this class
    pub members: Vec<CubicForm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub sign: Sign,
    pub max_disc: i64,
    pub box_description: String,
    pub box_size: usize,
    pub height_cap: i64,
    pub classes: Vec<OracleClass>,
}

/// Irreducibility by trial of every candidate root `v/w` with `w | a`, `v | d`.
pub fn irreducible_by_trial(f: &CubicForm) -> bool {
    if f.a == 0 || f.d == 0 {
        return false;
    }
    let ws = crate::special_functions::divisors(f.a.unsigned_abs());
    let vs = crate::special_functions::divisors(f.d.unsigned_abs());
    for &w in &ws {
        for &v in &vs {
            for v in [v as i128, -(v as i128)] {
                if f.eval(v, w as i128) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive box scan followed by orbit search with the generators `S`, `T`,
/// `T⁻¹` of SL₂(ℤ), restricted to forms of height at most the stated cap.
/// Classes are the connected components; stabilizers come from the Schreier
/// elements found while closing cycles.
pub fn enumerate_oracle(sign: Sign, x: i64) -> Result<OracleReport, Error> {
    if x > ORACLE_GUARD || x < 1 {
        return Err(Error::Guard(format!("oracle bound {x} (allowed 1..={ORACLE_GUARD})")));
    }
    let sbox = SearchBox::new(sign, x, 1.25, 1.0);
    let mut forms = box_forms(&sbox, false, |_, _| true);
    // a = 0 part: b ≥ 1, −b ≤ c < 2b, d from the discriminant
    let bmax = (x as i128).sqrt() as i64;
    for b in 1..=bmax {
        for c in -b..2 * b {
            let (lo, hi) = reducible_d_range(sign, b, c, x);
            for d in lo..=hi {
                let f = CubicForm::new(0, b, c, d);
                if in_range(f.discriminant(), sign, x) {
                    forms.push(f);
                }
            }
        }
    }
    forms.sort();
    forms.dedup();
    let box_max = forms.iter().map(|f| f.height()).max().unwrap_or(0);
    let cap = (2 * box_max).max(100);
    let in_box: HashSet<CubicForm> = forms.iter().copied().collect();
    let mut assigned: HashSet<CubicForm> = HashSet::new();
    let mut classes = Vec::new();
    let gens = [IntMatrix::S, IntMatrix::T, IntMatrix::T_INV];
    for f0 in &forms {
        if assigned.contains(f0) {
            continue;
        }
        // BFS tracking γ with γ·f0 = node
        let mut reached: HashMap<CubicForm, IntMatrix> = HashMap::new();
        reached.insert(*f0, IntMatrix::IDENTITY);
        let mut queue = VecDeque::from([*f0]);
        let mut stab = 1u8;
        while let Some(node) = queue.pop_front() {
            let gn = reached[&node];
            for g in &gens {
                let Some(next) = node.try_act(g) else { continue };
                if next.height() > cap {
                    continue;
                }
                let path = g.mul(&gn);
                match reached.get(&next) {
                    Some(known) => {
                        // known⁻¹·path fixes f0
                        let s = known.inverse().mul(&path);
                        if s != IntMatrix::IDENTITY {
                            stab = 3;
                        }
                    }
                    None => {
                        reached.insert(next, path);
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut members: Vec<CubicForm> = reached.keys().filter(|g| in_box.contains(g)).copied().collect();
        members.sort();
        for m in &members {
            assigned.insert(*m);
        }
        classes.push(OracleClass {
            disc: f0.discriminant(),
            rep: members[0],
            stab_order: stab,
            irreducible: irreducible_by_trial(f0),
            members,
        });
    }
    classes.sort_by_key(|c| (c.disc.unsigned_abs(), c.rep));
    Ok(OracleReport {
        sign,
        max_disc: x,
        box_description: format!("{}; plus a = 0, 1 <= b <= sqrt(X), -b <= c < 2b", sbox.describe()),
        box_size: forms.len(),
        height_cap: cap,
        classes,
    })
}

/// Checks that `classes` and the oracle describe the same partition: every
/// class representative lies in exactly one oracle class, every oracle class
/// receives exactly one representative, and discriminant, stabilizer order and
/// irreducibility agree. Returns the list of disagreements.
pub fn compare_with_oracle(classes: &[FormClass], oracle: &OracleReport) -> Vec<String> {
    let mut problems = Vec::new();
    let mut owner: HashMap<CubicForm, usize> = HashMap::new();
    for (i, c) in oracle.classes.iter().enumerate() {
        for m in &c.members {
            owner.insert(*m, i);
        }
    }
    let mut hits = vec![0usize; oracle.classes.len()];
    for c in classes {
        match owner.get(&c.rep) {
            None => problems.push(format!("representative {} (disc {}) not found by the oracle", c.rep, c.disc)),
            Some(&i) => {
                hits[i] += 1;
                let o = &oracle.classes[i];
                if o.disc != c.disc || o.stab_order != c.stab_order || o.irreducible != c.irreducible {
                    problems.push(format!(
                        "class of {}: enumeration (disc {}, stab {}, irr {}) vs oracle (disc {}, stab {}, irr {})",
                        c.rep, c.disc, c.stab_order, c.irreducible, o.disc, o.stab_order, o.irreducible
                    ));
                }
            }
        }
    }
    for (i, h) in hits.iter().enumerate() {
        if *h != 1 {
            let o = &oracle.classes[i];
            problems.push(format!("oracle class of {} (disc {}) received {h} representatives", o.rep, o.disc));
        }
    }
    problems
}

/// Component of a singular dual cubic form or a singular dual quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularClassTag {
    Zero,
    /// `γ·(0,0,0,m)`, `m ≥ 1`
    TypeI(i64),
    /// `γ·(0,0,3m,n)`, `m ≥ 1`, `0 ≤ n < 3m`
    TypeII(i64, i64),
    /// `(0,0,ℓ)`, `ℓ ≠ 0`
    QI(i64),
    /// `B⁺_ℤ·(0,2m,n)`, `m ≠ 0`, `0 ≤ n < |2m|`
    QII(i64, i64),
    /// `B⁺_ℤ·ℓ(b², 2bd, d²)`, `ℓ ≠ 0`, `gcd(b,d) = 1`, `0 ≤ d < b`
    QIII(i64, i64, i64),
}

/// Classify a singular dual form (`P = 0`, `3 | b`, `3 | c`). Returns the
/// component and a witness `γ` with `γ·(canonical member) = f`.
pub fn classify_singular_dual(f: &CubicForm) -> Result<(SingularClassTag, IntMatrix), Error> {
    if f.discriminant() != 0 {
        return Err(Error::Nonsingular(f.to_string()));
    }
    if !f.is_dual_integral() {
        return Err(Error::InvalidArgument(format!("{f} is not dual integral")));
    }
    if f.is_zero() {
        return Ok((SingularClassTag::Zero, IntMatrix::IDENTITY));
    }
    // square factor Y = q v + s w
    let (mut q, mut s) = square_factor(f)?;
    // f = Y²·(αv + βw)
    let (alpha, beta) = divide_by_square(f, q, s)?;
    if alpha * s - beta * q == 0 {
        // triple root: f = k·Y³
        let k = if q != 0 { alpha / q } else { beta / s };
        if k < 0 {
            q = -q;
            s = -s;
        }
        let (_, x, y) = extended_gcd(q, s);
        // p s − q r = 1 with (p, r) = (y, −x)
        let gamma = IntMatrix::new(y, q, -x, s);
        return Ok((SingularClassTag::TypeI(k.abs()), gamma));
    }
    let mut det = alpha * s - beta * q;
    if det < 0 {
        q = -q;
        s = -s;
        det = -det;
    }
    if det % 3 != 0 {
        return Err(Error::Numerical(format!("{f} is not in the dual lattice orbit of (0,0,3m,n)")));
    }
    let m = det / 3;
    let (_, x, y) = extended_gcd(q, s);
    let (mut p, mut r) = (y, -x);
    let n = beta * p - alpha * r;
    let k = Integer::div_floor(&n, &(3 * m));
    p += k * q;
    r += k * s;
    let n = n - 3 * m * k;
    Ok((SingularClassTag::TypeII(m, n), IntMatrix::new(p, q, r, s)))
}

/// Primitive `(q, s)` with `(q v + s w)² | f` for a nonzero singular `f`. The
/// Hessian of `Y²L` is a constant times `Y²`; when it vanishes `f` is a cube and
/// its second partials `6a v + 2b w` and `2c v + 6d w` are multiples of `Y`.
fn square_factor(f: &CubicForm) -> Result<(i64, i64), Error> {
    let h = f.hessian();
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    let (q, s) = if h.a != 0 || h.b != 0 || h.c != 0 {
        // κ(q², 2qs, s²): read (q : s) off whichever end is nonzero
        if h.a != 0 {
            (2 * h.a, h.b)
        } else {
            (h.b, 2 * h.c)
        }
    } else if a != 0 || b != 0 {
        (3 * a, b)
    } else {
        (c, 3 * d)
    };
    let g = q.gcd(&s);
    if g == 0 {
        return Err(Error::Numerical(format!("no repeated root found for {f}")));
    }
    let narrow = |x: i128| i64::try_from(x / g).map_err(|_| Error::InvalidArgument(format!("{f} is too large")));
    Ok((narrow(q)?, narrow(s)?))
}

/// `(α, β)` with `f = (q v + s w)²(α v + β w)`.
fn divide_by_square(f: &CubicForm, q: i64, s: i64) -> Result<(i64, i64), Error> {
    let (q, s) = (q as i128, s as i128);
    let (a, b) = (f.a as i128, f.b as i128);
    let (c, d) = (f.c as i128, f.d as i128);
    // a = q²α, d = s²β, with the other coefficient from b or c
    let alpha = if q != 0 { a / (q * q) } else { c / (s * s) };
    let beta = if s != 0 { d / (s * s) } else { b / (q * q) };
    let check = [q * q * alpha, q * q * beta + 2 * q * s * alpha, s * s * alpha + 2 * q * s * beta, s * s * beta];
    if check != [a, b, c, d] {
        return Err(Error::Numerical(format!("{f} is not divisible by ({q}v+{s}w)^2")));
    }
    Ok((alpha as i64, beta as i64))
}

/// Classify a singular dual quadratic form `(a, b, c)` with `b` even under the
/// lower unipotent group `B⁺_ℤ`, acting by `(a, b, c) ↦ (a, b + 2au, au² + bu + c)`.
/// Returns the component and the witness `u`.
pub fn classify_singular_quadratic(q: &QuadForm) -> Result<(SingularClassTag, i64), Error> {
    if q.b % 2 != 0 {
        return Err(Error::InvalidArgument(format!("({}, {}, {}) is not dual integral", q.a, q.b, q.c)));
    }
    if q.discriminant() != 0 && q.a != 0 {
        return Err(Error::Nonsingular(format!("({}, {}, {})", q.a, q.b, q.c)));
    }
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::InvalidArgument("coefficient too large".into()));
    if q.a == 0 {
        if q.b == 0 {
            if q.c == 0 {
                return Ok((SingularClassTag::Zero, 0));
            }
            return Ok((SingularClassTag::QI(narrow(q.c)?), 0));
        }
        // (0, 2m, 2mu + n)
        let two_m = q.b;
        let n = q.c.rem_euclid(two_m.abs());
        let u = (q.c - n) / two_m;
        return Ok((SingularClassTag::QII(narrow(two_m / 2)?, narrow(n)?), narrow(u)?));
    }
    // a ≠ 0, b² = 4ac: q = ℓ(b'v + d'w)² with b' > 0, gcd(b', d') = 1
    let g = q.a.gcd(&q.c).gcd(&(q.b / 2));
    let sgn = q.a.signum();
    let b2 = q.a.abs() / g; // b'² times a square-free leftover
    let bb = b2.sqrt();
    let half = q.b / 2; // ℓ b' d'
    // ℓ = sgn · g / (common square part); find b' with ℓ b'² = a
    let (ell, bprime) = if bb * bb == b2 {
        (sgn * g, bb)
    } else {
        return Err(Error::Numerical(format!("({}, {}, {}) has no square factorization", q.a, q.b, q.c)));
    };
    let dprime = half / (ell * bprime);
    if ell * bprime * bprime != q.a || 2 * ell * bprime * dprime != q.b || ell * dprime * dprime != q.c {
        return Err(Error::Numerical(format!("({}, {}, {}) has no square factorization", q.a, q.b, q.c)));
    }
    let d = dprime.rem_euclid(bprime);
    let u = (dprime - d) / bprime;
    Ok((SingularClassTag::QIII(narrow(ell)?, narrow(bprime)?, narrow(d)?), narrow(u)?))
}
