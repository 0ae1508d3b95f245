//! Acceptance run: one PASS/FAIL line per criterion, with the individual
//! checks listed underneath. Checks marked `known` are numerically faithful
//! implementations of statements that do not hold as written; they are
//! reported but do not fail the run. Every other check must pass.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use shintani::class_enumeration::*;
use shintani::cubic_forms::base_point;
use shintani::eisenstein::{automorphy_defect, functional_equation_defect, laplacian_defect};
use shintani::shapes::{cusp_barrier, group_point, shape_point, solve_group_element};
use shintani::special_functions::bessel::bessel_k;
use shintani::special_functions::mellin::{check_bessel_mellin, check_cosine_mellin, check_gaussian_mellin};
use shintani::special_functions::{xi_c, zeta_c};
use shintani::spectral_zeta::*;
use shintani::{CubicForm, IntMatrix, QuadForm, Sign};
use shintani_cli::suites::run_suite;

struct Check {
    name: String,
    passed: bool,
    detail: String,
    known: bool,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail, known: false }
}

fn known(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail, known: true }
}

fn info(name: &str, detail: String) -> Check {
    Check { name: name.to_string(), passed: true, detail, known: true }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pow(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn exact_arithmetic() -> Vec<Check> {
    let pp = base_point(Sign::Pos).discriminant();
    let pm = base_point(Sign::Neg).discriminant();
    let mut out = vec![
        check("P(x+) = 1", (pp - 1.0).abs() <= 1e-12, format!("{pp:.17}")),
        check("P(x-) = -1", (pm + 1.0).abs() <= 1e-12, format!("{pm:.17}")),
    ];
    let d1 = CubicForm::new(1, 0, -1, -1).discriminant();
    let d2 = CubicForm::new(1, 1, -2, -1).discriminant();
    out.push(check("P(1,0,-1,-1) = -23", d1 == -23, d1.to_string()));
    out.push(check("P(1,1,-2,-1) = 49", d2 == 49, d2.to_string()));
    let mut r = rng(1);
    let mut bad = 0;
    for _ in 0..10_000 {
        let f = CubicForm::new(r.gen_range(-10_000..=10_000), r.gen_range(-10_000..=10_000), r.gen_range(-10_000..=10_000), r.gen_range(-10_000..=10_000));
        let p = f.discriminant();
        // i128 and bignum discriminants must agree too
        if f.hessian().discriminant() != -3 * p || f.discriminant_big() != p.into() {
            bad += 1;
        }
    }
    out.push(check("disc(H) = -3P on 10^4 random forms", bad == 0, format!("{bad} mismatches")));
    out
}

/// Forms of ℛ: `a = 0`, `b ≥ 1`, `0 ≤ c < 2b`.
fn in_region(f: &CubicForm) -> bool {
    f.a == 0 && f.b >= 1 && 0 <= f.c && f.c < 2 * f.b
}

fn enumeration_oracle() -> Vec<Check> {
    [Sign::Neg, Sign::Pos]
        .into_par_iter()
        .flat_map_iter(|sign| {
            let x = 5000;
            let classes = enumerate_classes(sign, x, false);
            let oracle = enumerate_oracle(sign, x).expect("oracle within guard");
            let problems = compare_with_oracle(&classes, &oracle);
            let owner: HashMap<CubicForm, &OracleClass> =
                oracle.classes.iter().flat_map(|o| o.members.iter().map(move |m| (*m, o))).collect();
            let (mut reducible, mut rule_bad, mut stab3) = (0, 0, 0);
            for k in classes.iter().filter(|k| !k.irreducible) {
                reducible += 1;
                let expect = if k.square_disc_quadratic && k.stab_order == 1 { 3 } else { 1 };
                let from_lib = reduce_reducible(&k.rep).map(|v| v.len()).unwrap_or(0);
                let from_oracle = owner.get(&k.rep).map(|o| o.members.iter().filter(|m| in_region(m)).count()).unwrap_or(0);
                if from_lib != expect || from_oracle != expect {
                    rule_bad += 1;
                }
            }
            stab3 += classes.iter().filter(|k| k.stab_order == 3).count();
            vec![
                check(
                    &format!("{} classes vs oracle, |disc| <= {x}", sign.as_str()),
                    problems.is_empty() && classes.len() == oracle.classes.len(),
                    format!("{} classes, {} oracle classes, {} disagreements, {stab3} with stabilizer 3", classes.len(), oracle.classes.len(), problems.len()),
                ),
                check(
                    &format!("{} 1-or-3 rule in R", sign.as_str()),
                    rule_bad == 0,
                    format!("{reducible} reducible classes, {rule_bad} with the wrong number of R members"),
                ),
            ]
        })
        .collect()
}

fn canonical_cubic(tag: SingularClassTag) -> Option<CubicForm> {
    match tag {
        SingularClassTag::Zero => Some(CubicForm::new(0, 0, 0, 0)),
        SingularClassTag::TypeI(m) if m >= 1 => Some(CubicForm::new(0, 0, 0, m)),
        SingularClassTag::TypeII(m, n) if m >= 1 && (0..3 * m).contains(&n) => Some(CubicForm::new(0, 0, 3 * m, n)),
        _ => None,
    }
}

fn canonical_quadratic(tag: SingularClassTag) -> Option<QuadForm> {
    let q = |a: i64, b: i64, c: i64| QuadForm::new(a as i128, b as i128, c as i128);
    match tag {
        SingularClassTag::Zero => Some(q(0, 0, 0)),
        SingularClassTag::QI(l) if l != 0 => Some(q(0, 0, l)),
        SingularClassTag::QII(m, n) if m != 0 && (0..(2 * m).abs()).contains(&n) => Some(q(0, 2 * m, n)),
        SingularClassTag::QIII(l, b, d) if l != 0 && b >= 1 && (0..b).contains(&d) && gcd(b, d) == 1 => {
            Some(q(l * b * b, 2 * l * b * d, l * d * d))
        }
        _ => None,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn shift(q: &QuadForm, u: i128) -> QuadForm {
    QuadForm::new(q.a, q.b + 2 * q.a * u, q.a * u * u + q.b * u + q.c)
}

fn singular_fibrations() -> Vec<Check> {
    // dual cubic forms: 3 | b, 3 | c
    let moves = [IntMatrix::S, IntMatrix::T, IntMatrix::new(2, 1, 1, 1), IntMatrix::new(1, 0, -3, 1)];
    let h = 50i64;
    let tally: Vec<(usize, usize, HashMap<&'static str, usize>)> = (-h..=h)
        .into_par_iter()
        .map(|a| {
            let (mut total, mut bad) = (0, 0);
            let mut kinds: HashMap<&'static str, usize> = HashMap::new();
            for b in (-h..=h).filter(|b| b % 3 == 0) {
                for cc in (-h..=h).filter(|c| c % 3 == 0) {
                    for d in -h..=h {
                        let f = CubicForm::new(a, b, cc, d);
                        if f.discriminant() != 0 {
                            continue;
                        }
                        total += 1;
                        let ok = match classify_singular_dual(&f) {
                            Ok((tag, g)) => {
                                *kinds
                                    .entry(match tag {
                                        SingularClassTag::Zero => "zero",
                                        SingularClassTag::TypeI(_) => "I",
                                        _ => "II",
                                    })
                                    .or_default() += 1;
                                let witness = canonical_cubic(tag).is_some_and(|k| g.det() == 1 && k.act(&g) == f);
                                let fixed = canonical_cubic(tag)
                                    .is_some_and(|k| classify_singular_dual(&k).is_ok_and(|(t, _)| t == tag));
                                let invariant = moves
                                    .iter()
                                    .all(|m| classify_singular_dual(&f.act(m)).is_ok_and(|(t, _)| t == tag));
                                witness && fixed && invariant
                            }
                            Err(_) => false,
                        };
                        if !ok {
                            bad += 1;
                        }
                    }
                }
            }
            (total, bad, kinds)
        })
        .collect();
    let total: usize = tally.iter().map(|t| t.0).sum();
    let bad: usize = tally.iter().map(|t| t.1).sum();
    let mut kinds: HashMap<&str, usize> = HashMap::new();
    for (_, _, k) in &tally {
        for (name, n) in k {
            *kinds.entry(name).or_default() += n;
        }
    }
    let mut out = vec![check(
        "dual cubic forms, max|coeff| <= 50",
        bad == 0 && kinds.get("zero") == Some(&1),
        format!("{total} singular forms ({} Type I, {} Type II), {bad} failures", kinds.get("I").unwrap_or(&0), kinds.get("II").unwrap_or(&0)),
    )];

    // dual quadratic forms: 2 | b; singular means D = 0 or a = 0
    let (mut total, mut bad) = (0, 0);
    for a in -h as i128..=h as i128 {
        for b in (-h as i128..=h as i128).filter(|b| b % 2 == 0) {
            for cc in -h as i128..=h as i128 {
                let q = QuadForm::new(a, b, cc);
                if a != 0 && q.discriminant() != 0 {
                    continue;
                }
                total += 1;
                let ok = match classify_singular_quadratic(&q) {
                    Ok((tag, u)) => {
                        let witness = canonical_quadratic(tag).is_some_and(|k| shift(&k, u as i128) == q);
                        let fixed = canonical_quadratic(tag)
                            .is_some_and(|k| classify_singular_quadratic(&k).is_ok_and(|(t, _)| t == tag));
                        let invariant =
                            [-2, -1, 1, 3].iter().all(|&u| classify_singular_quadratic(&shift(&q, u)).is_ok_and(|(t, _)| t == tag));
                        witness && fixed && invariant
                    }
                    Err(_) => false,
                };
                if !ok {
                    bad += 1;
                }
            }
        }
    }
    out.push(check("dual quadratic forms, height <= 50", bad == 0, format!("{total} singular forms, {bad} failures")));
    out
}

fn special_functions() -> Vec<Check> {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for _ in 0..100 {
        let z = Complex64::new(r.gen_range(-3.0..4.0), r.gen_range(-30.0..30.0));
        let (a, b) = (xi_c(z), xi_c(1.0 - z));
        worst = worst.max((a - b).norm());
        worst_rel = worst_rel.max((a - b).norm() / a.norm());
    }
    let mut out = vec![check("xi(z) = xi(1-z) on 100 samples", worst <= 1e-9, format!("max |defect| {worst:.2e} (relative {worst_rel:.2e})"))];

    let bessel: Vec<_> = [(c(0.0), c(2.0)), (Complex64::new(0.0, 1.5), Complex64::new(1.5, 0.5)), (c(0.4), c(3.0)), (Complex64::new(0.0, 4.0), c(1.0))]
        .iter()
        .map(|&(nu, s)| check_bessel_mellin(nu, s).rel_err)
        .collect();
    let gaussian: Vec<_> = [c(0.0), Complex64::new(1.0, 1.0), c(-2.5), Complex64::new(0.5, -6.0)]
        .iter()
        .map(|&s| check_gaussian_mellin(s).rel_err)
        .collect();
    let cosine: Vec<_> =
        [c(0.5), Complex64::new(0.3, 0.2), c(0.75), Complex64::new(0.6, -1.0)].iter().map(|&s| check_cosine_mellin(s).rel_err).collect();
    for (name, errs, tol) in [("Mellin K_nu", bessel, 1e-8), ("Mellin exp(-t^2-1/t^2)", gaussian, 1e-10), ("Mellin cos", cosine, 1e-6)] {
        let m = errs.iter().cloned().fold(0.0, f64::max);
        out.push(check(name, m <= tol, format!("max rel_err {m:.2e} over {} samples (tolerance {tol:.0e})", errs.len())));
    }

    let mut worst_im: f64 = 0.0;
    for _ in 0..200 {
        let nu = r.gen_range(0.0..50.0);
        let x = 10f64.powf(r.gen_range(-3.0..1.5));
        worst_im = worst_im.max(bessel_k(Complex64::new(0.0, nu), x).value.im.abs());
    }
    out.push(check("K_{i nu}(x) real", worst_im <= 1e-12, format!("max |Im| {worst_im:.2e} over 200 samples")));
    out
}

/// Random word of length `1..=5` in `S`, `T`, `T⁻¹`.
fn random_word(r: &mut ChaCha8Rng) -> IntMatrix {
    let gens = [IntMatrix::S, IntMatrix::T, IntMatrix::T_INV];
    let len = r.gen_range(1..=5);
    (0..len).fold(IntMatrix::IDENTITY, |acc, _| gens[r.gen_range(0..3)].mul(&acc))
}

fn eisenstein() -> Vec<Check> {
    let mut r = rng(5);
    let points: Vec<(f64, (f64, f64))> =
        (0..100).map(|_| (r.gen_range(0.5..8.0), (r.gen_range(-0.5..0.5), r.gen_range(0.3..10.0)))).collect();
    let generators: f64 = points
        .par_iter()
        .map(|&(g, tau)| {
            [IntMatrix::S, IntMatrix::T].iter().map(|m| automorphy_defect(g, tau, m).unwrap()).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let mut words = Vec::new();
    while words.len() < 100 {
        let g = r.gen_range(0.5..8.0);
        let tau = (r.gen_range(-0.5..0.5), r.gen_range(0.5..3.0));
        let m = random_word(&mut r);
        // keep the image away from the real axis, where the series needs many terms
        if m.mobius(tau.0, tau.1).1 >= 0.1 {
            words.push((g, tau, m));
        }
    }
    let word_defect =
        words.par_iter().map(|(g, tau, m)| automorphy_defect(*g, *tau, m).unwrap()).reduce(|| 0.0, f64::max);
    let mut out = vec![
        check("automorphy under S, T at 100 points", generators <= 1e-8, format!("max relative defect {generators:.2e}")),
        check("automorphy under 100 words of length <= 5", word_defect <= 1e-8, format!("max relative defect {word_defect:.2e}")),
    ];

    let gammas = [0.5, 1.0, 2.0, 3.7, 7.0];
    let taus = [(0.0, 1.0), (0.3, 2.0), (-0.5, 0.9), (0.1, 0.6)];
    let fe: Vec<f64> = gammas
        .iter()
        .flat_map(|&g| taus.iter().map(move |&t| (g, t)))
        .map(|(g, t)| functional_equation_defect(g, t).unwrap())
        .collect();
    let m = fe.iter().cloned().fold(0.0, f64::max);
    out.push(check("functional equation at 20 samples", m <= 1e-8, format!("max |defect| {m:.2e}")));

    let lap = [(1.0, (0.0, 1.0)), (2.0, (0.2, 1.5)), (7.0, (0.25, 1.6)), (0.5, (-0.4, 0.9))];
    let d: Vec<f64> = lap.iter().map(|&(g, t)| laplacian_defect(g, t, 1e-3).unwrap()).collect();
    let m = d.iter().cloned().fold(0.0, f64::max);
    out.push(check("Laplacian eigenvalue (1+g^2)/4, h = 1e-3", m <= 1e-4, format!("max relative defect {m:.2e}")));
    // halving h must divide the stencil error by about 4; large steps keep rounding out of it
    let ratios: Vec<f64> =
        lap.iter().map(|&(g, t)| laplacian_defect(g, t, 0.08).unwrap() / laplacian_defect(g, t, 0.04).unwrap()).collect();
    let ok = ratios.iter().all(|q| (3.6..=4.4).contains(q));
    out.push(check("h^2 scaling of the stencil error", ok, format!("defect(0.08)/defect(0.04) = {}", fmt_list(&ratios))));
    out
}

fn fmt_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3}")).collect();
    format!("[{}]", parts.join(", "))
}

fn lemma_quadrature() -> Vec<Check> {
    let mut out = Vec::new();
    for suite in ["eigenvalue", "sigma2", "phi0", "sigma3", "scaling"] {
        let reports = run_suite(suite).expect("suite runs");
        let mut groups: Vec<(String, Vec<&shintani::lemma_verification::VerificationReport>)> = Vec::new();
        for r in &reports {
            match groups.iter_mut().find(|g| g.0 == r.lemma) {
                Some(g) => g.1.push(r),
                None => groups.push((r.lemma.clone(), vec![r])),
            }
        }
        for (lemma, rs) in groups {
            let worst = rs.iter().map(|r| r.rel_err).fold(0.0, f64::max);
            let tol = rs.iter().map(|r| r.tolerance).fold(f64::INFINITY, f64::min);
            let passed = rs.iter().all(|r| r.passed());
            let detail = format!("{} samples, max rel_err {worst:.2e} (tolerance {tol:.0e})", rs.len());
            // the printed closed form carries a wrong θ-integral; the corrected one is checked separately
            if lemma == "sigma2" {
                out.push(known("sigma2, printed closed form", passed, detail));
            } else {
                out.push(check(&lemma, passed, detail));
            }
        }
    }
    out
}

fn residue_table() -> Vec<Check> {
    let gammas: Vec<f64> = (0..20).map(|i| 0.3 + 0.7 * i as f64).collect();
    let mut mirror: f64 = 0.0;
    let mut ratio: f64 = 0.0;
    for &g in &gammas {
        let z = Complex64::new(0.0, g);
        let scatter = xi_c(z) / xi_c(1.0 + z);
        for (plus, minus) in [(Pole::FivePlus, Pole::FiveMinus), (Pole::ElevenPlus, Pole::ElevenMinus)] {
            for fam in [Sign::Neg, Sign::Pos] {
                let lhs = residue(fam, minus, g).unwrap();
                let rhs = scatter * residue(fam, plus, -g).unwrap();
                mirror = mirror.max((lhs - rhs).norm() / lhs.norm());
            }
        }
        let q = |p| residue(Sign::Pos, p, g).unwrap() / residue(Sign::Neg, p, g).unwrap();
        for (p, expect) in [
            (Pole::FivePlus, pow(3.0, (1.0 + z) / 4.0)),
            (Pole::FiveMinus, pow(3.0, (1.0 - z) / 4.0)),
            (Pole::ElevenPlus, pow(3.0, (z - 3.0) / 4.0)),
            (Pole::ElevenMinus, pow(3.0, (-z - 3.0) / 4.0)),
        ] {
            ratio = ratio.max((q(p) - expect).norm() / expect.norm());
        }
    }
    // the (5+z)/4 entry written out independently
    let g = 1.0;
    let z = Complex64::new(0.0, g);
    let direct = zeta_c(3.0 + z) * pow(2.0, (-5.0 - z) / 2.0);
    let entry = (residue(Sign::Neg, Pole::FivePlus, g).unwrap() - direct).norm() / direct.norm();
    vec![
        check("mirror relation at 20 gamma", mirror <= 1e-10, format!("max relative defect {mirror:.2e}")),
        check("L+/L- ratios 3^((1+-z)/4), 3^((+-z-3)/4)", ratio <= 1e-13, format!("max relative defect {ratio:.2e}")),
        check("(5+z)/4 entry", entry <= 1e-14, format!("relative defect {entry:.2e}")),
    ]
}

fn equidistribution() -> Vec<Check> {
    let gamma = 1.0;
    let x = 1_000_000u64;
    let grid = geometric_grid(1e3, 1e6, 50);
    let classes = enumerate_classes(Sign::Neg, x as i64, false);
    let series = |irr| {
        let c = coefficients_from_classes(gamma, Sign::Neg, x, irr, &classes).unwrap();
        partial_sums(&c, &grid).unwrap()
    };
    let full = series(false);
    let irr = series(true);
    let fit_full = fit_asymptotics(&full, &model_poles(false, gamma)).unwrap();
    let fit_irr = fit_asymptotics(&irr, &model_poles(true, gamma)).unwrap();
    let (a, b) = (fit_full.free_slope, fit_irr.free_slope);
    let freqs = [gamma / 4.0, gamma / 8.0, gamma / 2.0, gamma];
    let proj = oscillation_projection(&full, 1.25, &freqs);
    let dominance = proj[1..].iter().map(|p| proj[0] / p).fold(f64::INFINITY, f64::min);

    let amp = |conv| -> Vec<f64> {
        [Pole::FivePlus, Pole::FiveMinus]
            .iter()
            .enumerate()
            .map(|(j, &p)| {
                let predicted = residue_with(conv, Sign::Neg, p, gamma).unwrap() / p.location(gamma);
                fit_full.amplitudes[j].norm() / predicted.norm()
            })
            .collect()
    };
    let stated = amp(ResidueConvention::Stated);
    let rederived = amp(ResidueConvention::Rederived);
    let within = |v: &[f64]| v.iter().all(|q| (0.75..=1.25).contains(q));

    vec![
        known("a. full-family slope in [1.15, 1.35]", (1.15..=1.35).contains(&a), format!("{a:.4}")),
        known(
            "b. irreducible slope in [0.77, 1.02], >= 0.2 below full",
            (0.77..=1.02).contains(&b) && a - b >= 0.2,
            format!("{b:.4}, gap {:.4}", a - b),
        ),
        known("c. projection at gamma/4 dominates by >= 2", dominance >= 2.0, format!("projections at {freqs:?}: {}", fmt_list(&proj))),
        known("d. (5+-z)/4 amplitudes within 25% of |residue/pole|", within(&stated), format!("|fit|/|predicted| = {}", fmt_list(&stated))),
        info(
            "d'. same with the rederived residues",
            format!("|fit|/|predicted| = {} ({})", fmt_list(&rederived), if within(&rederived) { "within 25%" } else { "outside 25%" }),
        ),
        info("fit residuals", format!("full {:.3e}, irreducible {:.3e}", fit_full.residual, fit_irr.residual)),
    ]
}

fn random_irreducible(r: &mut ChaCha8Rng) -> CubicForm {
    loop {
        let f = CubicForm::new(r.gen_range(-12..=12), r.gen_range(-12..=12), r.gen_range(-12..=12), r.gen_range(-12..=12));
        if f.discriminant() != 0 && f.is_irreducible().unwrap_or(false) {
            return f;
        }
    }
}

fn shape_consistency() -> Vec<Check> {
    let mut r = rng(9);
    let forms: Vec<CubicForm> = (0..1000).map(|_| random_irreducible(&mut r)).collect();
    let mut out = Vec::new();
    for sign in [Sign::Pos, Sign::Neg] {
        let dists: Vec<f64> = forms
            .iter()
            .filter(|f| Sign::of(f.discriminant()) == Some(sign))
            .map(|f| shape_point(f).unwrap().folded().distance(&group_point(f).unwrap().folded()))
            .collect();
        let worst = dists.iter().cloned().fold(0.0, f64::max);
        let agree = dists.iter().filter(|&&d| d <= 1e-6).count();
        let detail = format!("{agree}/{} agree, max distance {worst:.2e}", dists.len());
        let passed = worst <= 1e-6;
        let name = format!("lattice shape = group shape, {} forms", sign.as_str());
        // for complex cubic rings the Minkowski lattice shape is not the point of the solved group element
        out.push(match sign {
            Sign::Pos => check(&name, passed, detail),
            Sign::Neg => known(&name, passed, detail),
        });
    }
    let hex = shintani::ShapePoint { x: -0.5, y: 0.75f64.sqrt() };
    for f in [CubicForm::new(1, 1, -2, -1), CubicForm::new(0, 1, 1, 0)] {
        let d = shape_point(&f).unwrap().distance(&hex);
        out.push(check(&format!("shape of ({f}) is hexagonal"), d <= 1e-6, format!("distance {d:.2e}")));
    }
    for sign in [Sign::Neg, Sign::Pos] {
        let classes = enumerate_classes(sign, 10_000, false);
        let with_a: Vec<&FormClass> = classes.iter().filter(|k| k.rep.a != 0).collect();
        let worst = with_a
            .par_iter()
            .map(|k| solve_group_element(&k.rep.to_real(), sign).unwrap().t / cusp_barrier(sign, k.disc))
            .reduce(|| f64::INFINITY, f64::min);
        out.push(check(
            &format!("cusp barrier, {} classes with a != 0, |disc| <= 10^4", sign.as_str()),
            worst >= 1.0 - 1e-12,
            format!("{} classes, min t/barrier {worst:.6}", with_a.len()),
        ));
    }
    out
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as --nocapture; a name filter that
    // does not mention this target skips it
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }
    type Criterion = (&'static str, fn() -> Vec<Check>);
    let criteria: [Criterion; 9] = [
        ("exact arithmetic", exact_arithmetic),
        ("enumeration vs oracle", enumeration_oracle),
        ("singular fibrations", singular_fibrations),
        ("special functions", special_functions),
        ("Eisenstein series", eisenstein),
        ("lemma quadratures", lemma_quadrature),
        ("residue table", residue_table),
        ("equidistribution rate", equidistribution),
        ("shape consistency", shape_consistency),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let checks = run();
        let secs = start.elapsed().as_secs_f64();
        let all = checks.iter().all(|c| c.passed);
        println!("{} criterion {}: {title} ({secs:.1} s)", if all { "PASS" } else { "FAIL" }, i + 1);
        for c in &checks {
            let mark = match (c.passed, c.known) {
                (true, _) => "ok  ",
                (false, true) => "known",
                (false, false) => "FAIL",
            };
            println!("    [{mark}] {}: {}", c.name, c.detail);
            if !c.passed && !c.known {
                unexpected += 1;
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        println!("no unexpected failures");
        ExitCode::SUCCESS
    }
}
