//! Named groups of checks for `verify --suite`, each a list of
//! [`VerificationReport`]s with their own tolerance.

use num_complex::Complex64;
use rayon::prelude::*;
use shintani::class_enumeration::{compare_with_oracle, enumerate_classes, enumerate_oracle};
use shintani::eisenstein::{eval_e, laplacian_defect, EisensteinParams};
use shintani::lemma_verification::*;
use shintani::shapes::{cusp_barrier, group_point, shape_point, solve_group_element};
use shintani::special_functions::mellin::check_mellin_identities;
use shintani::special_functions::xi_c;
use shintani::{CubicForm, IntMatrix, Sign};

use crate::CliError;

pub const SUITES: [&str; 9] = ["eigenvalue", "sigma2", "sigma3", "phi0", "scaling", "mellin", "eisenstein", "shapes", "enumeration"];

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn run_suite(name: &str) -> Result<Vec<VerificationReport>, CliError> {
    match name {
        "eigenvalue" => Ok([c(0.0), Complex64::new(0.0, 1.0), c(0.5)].into_par_iter().map(verify_eigenvalue).collect()),
        "sigma2" => sigma2(),
        "sigma3" => sigma3(),
        "phi0" => Ok(phi0()),
        "scaling" => Ok(scaling()),
        "mellin" => Ok(mellin()),
        "eisenstein" => eisenstein(),
        "shapes" => shapes(),
        "enumeration" => enumeration(),
        other => Err(CliError::Usage(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

const SIGNS: [Sign; 2] = [Sign::Neg, Sign::Pos];

fn sigma2() -> Result<Vec<VerificationReport>, CliError> {
    let zs = [0.25, 0.5, 0.75];
    let mut out: Vec<VerificationReport> = SIGNS
        .iter()
        .flat_map(|&s| zs.iter().map(move |&z| (s, z)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(s, z)| verify_sigma2(z, s))
        .collect::<Result<_, _>>()?;
    for &z in &zs {
        out.push(verify_sigma2_ratio(z)?);
    }
    for &s in &SIGNS {
        for &z in &zs {
            out.push(verify_sigma2_corrected(z, s)?);
        }
    }
    Ok(out)
}

fn sigma3() -> Result<Vec<VerificationReport>, CliError> {
    let mut out: Vec<VerificationReport> = SIGNS.into_par_iter().map(|s| verify_sigma3(0.5, s)).collect::<Result<_, _>>()?;
    out.push(verify_sigma3_scaling(0.5, 2.0));
    Ok(out)
}

fn phi0() -> Vec<VerificationReport> {
    let ss = [0.0, 1.0, 2.0];
    let mut out: Vec<VerificationReport> = SIGNS
        .iter()
        .flat_map(|&sg| ss.iter().map(move |&s| (sg, s)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(sg, s)| verify_phi0(s, sg))
        .collect();
    out.extend(ss.iter().map(|&s| verify_phi0_ratio(s)));
    out
}

fn scaling() -> Vec<VerificationReport> {
    let mut out = vec![verify_sigma2_scaling(0.5, 1.0)];
    out.extend(verify_scaling(0.5, 2.0));
    out.push(verify_fourier_scaling(1.0 / 3.0, [0.3, -0.2, 0.5, 0.1]));
    out.push(verify_sigma3_scaling(0.5, 2.0));
    out
}

fn mellin() -> Vec<VerificationReport> {
    let bessel = [(c(0.0), c(2.0)), (Complex64::new(0.0, 1.5), Complex64::new(1.5, 0.5)), (c(0.4), c(3.0))];
    let gaussian = [c(0.0), Complex64::new(1.0, 1.0), c(-2.5)];
    let cosine = [c(0.5), Complex64::new(0.3, 0.2), c(0.75)];
    check_mellin_identities(&bessel, &gaussian, &cosine)
        .into_iter()
        .map(|m| {
            let tol = match m.identity.as_str() {
                "bessel_k" => 1e-8,
                "gaussian" => 1e-10,
                _ => 1e-6,
            };
            let mut r = VerificationReport::new(
                &format!("mellin_{}", m.identity),
                &[("s_re", m.sample.re), ("s_im", m.sample.im)],
                m.lhs,
                m.rhs,
                0,
                tol,
            );
            r.rel_err = m.rel_err;
            r
        })
        .collect()
}

/// `(γ, τ)` samples for the functional equation.
pub fn eisenstein_samples() -> Vec<(f64, (f64, f64))> {
    let gammas = [0.5, 1.0, 2.0, 3.7, 7.0];
    let taus = [(0.0, 1.0), (0.3, 0.9), (-0.5, 0.75f64.sqrt()), (0.1, 2.5)];
    gammas.iter().flat_map(|&g| taus.iter().map(move |&t| (g, t))).collect()
}

fn eisenstein() -> Result<Vec<VerificationReport>, CliError> {
    let mut out = Vec::new();
    for (g, tau) in eisenstein_samples() {
        let p = EisensteinParams::new(g, 1e-13)?;
        let m = EisensteinParams::new(-g, 1e-13)?;
        let z = p.z();
        let lhs = xi_c(1.0 + z) * eval_e(&p, tau)?.value;
        let rhs = xi_c(1.0 - z) * eval_e(&m, tau)?.value;
        out.push(VerificationReport::new("functional_equation", &[("gamma", g), ("x", tau.0), ("y", tau.1)], lhs, rhs, 0, 1e-8));
    }
    let moves = [IntMatrix::new(0, -1, 1, 0), IntMatrix::new(1, 1, 0, 1), IntMatrix::new(2, 1, 1, 1)];
    for (g, tau) in [(1.0, (0.2, 0.7)), (4.0, (0.45, 1.3))] {
        let p = EisensteinParams::new(g, 1e-13)?;
        let base = eval_e(&p, tau)?.value;
        for m in &moves {
            let moved = eval_e(&p, m.mobius(tau.0, tau.1))?.value;
            out.push(VerificationReport::new("automorphy", &[("gamma", g), ("x", tau.0), ("y", tau.1)], moved, base, 0, 1e-8));
        }
    }
    for (g, tau) in [(1.0, (0.1, 1.1)), (2.0, (-0.3, 0.95)), (7.0, (0.25, 1.6))] {
        let d = laplacian_defect(g, tau, 1e-3)?;
        let mut r = VerificationReport::new("laplacian", &[("gamma", g), ("x", tau.0), ("y", tau.1), ("h", 1e-3)], c(d), c(0.0), 0, 1e-4);
        r.rel_err = d;
        out.push(r);
    }
    Ok(out)
}

fn shapes() -> Result<Vec<VerificationReport>, CliError> {
    let hex = Complex64::new(-0.5, 0.75f64.sqrt());
    let mut out = Vec::new();
    for f in [CubicForm::new(1, 1, -2, -1), CubicForm::new(0, 1, 1, 0)] {
        let p = shape_point(&f)?;
        let coeffs = f.coeffs().map(|v| v as f64);
        let mut r = VerificationReport::new("lattice_shape", &[("a", coeffs[0]), ("b", coeffs[1]), ("c", coeffs[2]), ("d", coeffs[3])], Complex64::new(p.x, p.y), hex, 0, 1e-6);
        r.rel_err = (Complex64::new(p.x, p.y) - hex).norm();
        out.push(r);
    }
    // lattice shape against the point of the group element, positive discriminant
    for f in [CubicForm::new(1, 1, -2, -1), CubicForm::new(1, 0, -3, 1), CubicForm::new(2, 1, -5, -1), CubicForm::new(1, -1, -4, 2)] {
        let l = shape_point(&f)?;
        let g = group_point(&f)?.folded();
        let coeffs = f.coeffs().map(|v| v as f64);
        let mut r = VerificationReport::new("lattice_vs_group", &[("a", coeffs[0]), ("b", coeffs[1]), ("c", coeffs[2]), ("d", coeffs[3])], Complex64::new(l.x, l.y), Complex64::new(g.x, g.y), 0, 1e-6);
        r.rel_err = l.distance(&g);
        out.push(r);
    }
    // cusp barrier on every class with a ≠ 0 up to |disc| ≤ 2000
    for sign in SIGNS {
        let mut worst = f64::INFINITY;
        for k in enumerate_classes(sign, 2000, false).iter().filter(|k| k.rep.a != 0) {
            let sol = solve_group_element(&k.rep.to_real(), sign)?;
            worst = worst.min(sol.t / cusp_barrier(sign, k.disc));
        }
        // ratio t / barrier must be at least 1
        let mut r = VerificationReport::new("cusp_barrier", &[("sign", sign.factor() as f64), ("max_disc", 2000.0)], c(worst), c(1.0), 0, 1e-12);
        r.rel_err = (1.0 - worst).max(0.0);
        out.push(r);
    }
    Ok(out)
}

fn enumeration() -> Result<Vec<VerificationReport>, CliError> {
    let x = 2000;
    SIGNS
        .into_par_iter()
        .map(|sign| {
            let classes = enumerate_classes(sign, x, false);
            let oracle = enumerate_oracle(sign, x)?;
            let problems = compare_with_oracle(&classes, &oracle);
            let mut r = VerificationReport::new(
                "enumeration_oracle",
                &[("sign", sign.factor() as f64), ("max_disc", x as f64)],
                c(classes.len() as f64),
                c(oracle.classes.len() as f64),
                0,
                0.0,
            );
            r.rel_err = problems.len() as f64;
            Ok(r)
        })
        .collect()
}

/// Applies a uniform tolerance override.
pub fn with_tolerance(mut reports: Vec<VerificationReport>, tol: Option<f64>) -> Vec<VerificationReport> {
    if let Some(t) = tol {
        for r in &mut reports {
            r.tolerance = t;
        }
    }
    reports
}
