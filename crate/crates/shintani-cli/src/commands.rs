//! One function per subcommand. Each returns the JSON report for stdout and
//! whether the run counts as a pass.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;
use shintani::class_enumeration::{compare_with_oracle, enumerate_oracle};
use shintani::eisenstein::{eval_e, EisensteinParams};
use shintani::shapes::{group_point, shape_point};
use shintani::spectral_zeta::{
    coefficients_from_classes, fit_asymptotics, model_poles, partial_sums, residue_table_with, residue_with, Pole,
    ResidueConvention, WeylSeries,
};
use shintani::{CubicForm, Sign};

use crate::cache::{cache_path, ensure, CacheAction};
use crate::suites::{run_suite, with_tolerance};
use crate::{fmt_f64, report, sha256_hex, CliError, RunConfig};

pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn pass(report: Value) -> Outcome {
    Outcome { report, passed: true }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct EnumerateResult {
    sign: Sign,
    cache_file: PathBuf,
    action: CacheAction,
    cache_max_disc: i64,
    classes: usize,
    irreducible: usize,
    cache_hash: String,
    oracle_problems: Option<Vec<String>>,
}

pub fn enumerate(config: &RunConfig, signs: &[Sign], oracle: bool) -> Result<Outcome, CliError> {
    config.validate()?;
    let x = config.max_disc.ok_or_else(|| CliError::Usage("--max-disc is required".into()))?;
    let dir = config.cache_dir.clone().unwrap_or_else(crate::cache_dir);
    let mut results = Vec::new();
    for &sign in signs {
        let (cache, action) = ensure(&dir, sign, x, true)?;
        let classes = cache.up_to(x);
        let oracle_problems = if oracle {
            let o = enumerate_oracle(sign, x)?;
            Some(compare_with_oracle(classes, &o))
        } else {
            None
        };
        results.push(EnumerateResult {
            sign,
            cache_file: cache_path(&dir, sign),
            action,
            cache_max_disc: cache.max_disc,
            classes: classes.len(),
            irreducible: classes.iter().filter(|c| c.irreducible).count(),
            cache_hash: cache.content_hash(),
            oracle_problems,
        });
    }
    let passed = results.iter().all(|r| r.oracle_problems.as_ref().is_none_or(|p| p.is_empty()));
    Ok(Outcome { report: report("enumerate", config, &results)?, passed })
}

#[derive(Serialize)]
struct ShapeResult {
    form: String,
    disc: i128,
    shape_x: f64,
    shape_y: f64,
    group_x: f64,
    group_y: f64,
}

pub fn shape_of(config: &RunConfig, form: &CubicForm) -> Result<Outcome, CliError> {
    let p = shape_point(form)?;
    let g = group_point(form)?;
    let r = ShapeResult { form: form.to_string(), disc: form.discriminant(), shape_x: p.x, shape_y: p.y, group_x: g.x, group_y: g.y };
    Ok(pass(report("shape", config, &r)?))
}

#[derive(Serialize)]
struct FileResult {
    out: PathBuf,
    rows: usize,
    file_sha256: String,
}

/// Class CSV of the cache with `shape_x, shape_y` appended.
pub fn shape_table(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    config.validate()?;
    let (sign, x) = match (config.sign, config.max_disc) {
        (Some(s), Some(x)) => (s, x),
        _ => return Err(CliError::Usage("shape needs --form or both --sign and --max-disc".into())),
    };
    let dir = config.cache_dir.clone().unwrap_or_else(crate::cache_dir);
    let (cache, _) = ensure(&dir, sign, x, true)?;
    let mut text = String::from("sign,disc,a,b,c,d,stab,irreducible,square_quad,shape_x,shape_y\n");
    let classes = cache.up_to(x);
    for k in classes {
        let p = shape_point(&k.rep)?;
        let f = k.rep;
        text.push_str(&format!(
            "{sign},{},{},{},{},{},{},{},{},{},{}\n",
            k.disc,
            f.a,
            f.b,
            f.c,
            f.d,
            k.stab_order,
            k.irreducible,
            k.square_disc_quadratic,
            fmt_f64(p.x),
            fmt_f64(p.y)
        ));
    }
    fs::write(out, &text).map_err(|e| io_err(out, e))?;
    let r = FileResult { out: out.to_path_buf(), rows: classes.len(), file_sha256: sha256_hex(text.as_bytes()) };
    Ok(pass(report("shape", config, &r)?))
}

#[derive(Serialize)]
struct EisResult {
    x: f64,
    y: f64,
    value: Complex64,
    terms_used: usize,
    tail_bound: f64,
}

pub fn eis(config: &RunConfig, tau: (f64, f64)) -> Result<Outcome, CliError> {
    config.validate()?;
    let gamma = *config.gamma.first().ok_or_else(|| CliError::Usage("--gamma is required".into()))?;
    let params = EisensteinParams::new(gamma, config.tolerance.unwrap_or(shintani::eisenstein::DEFAULT_TRUNCATION_TOL))?;
    let v = eval_e(&params, tau)?;
    let r = EisResult { x: tau.0, y: tau.1, value: v.value, terms_used: v.terms_used, tail_bound: v.tail_bound };
    Ok(pass(report("eis", config, &r)?))
}

pub const WEYL_TAG: &str = "# shintani-weyl v1";

#[derive(Serialize)]
struct WeylResult {
    out: PathBuf,
    cache_action: CacheAction,
    classes_used: usize,
    points: usize,
    file_sha256: String,
}

pub fn weyl(config: &RunConfig, irreducible_only: bool, out: &Path, allow_build: bool) -> Result<Outcome, CliError> {
    config.validate()?;
    let usage = |m: &str| CliError::Usage(m.to_string());
    let gamma = *config.gamma.first().ok_or_else(|| usage("--gamma is required"))?;
    let sign = config.sign.ok_or_else(|| usage("--sign is required"))?;
    let x = config.max_disc.ok_or_else(|| usage("--max-disc is required"))?;
    let grid = config.grid.ok_or_else(|| usage("--grid is required"))?;
    let dir = config.cache_dir.clone().unwrap_or_else(crate::cache_dir);
    let (cache, action) = ensure(&dir, sign, x, allow_build)?;
    let classes = cache.up_to(x);
    let series = coefficients_from_classes(gamma, sign, x as u64, irreducible_only, classes)?;
    let w = partial_sums(&series, &grid.points())?;
    let text = render_weyl(&w, sign, irreducible_only, x, &cache.content_hash());
    fs::write(out, &text).map_err(|e| io_err(out, e))?;
    let used = classes.iter().filter(|c| c.irreducible || !irreducible_only).count();
    let r = WeylResult { out: out.to_path_buf(), cache_action: action, classes_used: used, points: w.grid.len(), file_sha256: sha256_hex(text.as_bytes()) };
    Ok(pass(report("weyl", config, &r)?))
}

pub fn render_weyl(w: &WeylSeries, sign: Sign, irreducible_only: bool, x: i64, cache_hash: &str) -> String {
    let mut s = format!(
        "{WEYL_TAG}\n# gamma={} sign={sign} irreducible={irreducible_only} max_disc={x} classes_sha256={cache_hash}\nX,re_S,im_S\n",
        w.gamma
    );
    for (g, v) in w.grid.iter().zip(&w.sums) {
        s.push_str(&format!("{},{},{}\n", fmt_f64(*g), fmt_f64(v.re), fmt_f64(v.im)));
    }
    s
}

/// Metadata and data of a Weyl CSV.
pub struct WeylFile {
    pub gamma: Option<f64>,
    pub sign: Option<Sign>,
    pub irreducible: Option<bool>,
    pub grid: Vec<f64>,
    pub sums: Vec<Complex64>,
}

pub fn parse_weyl(text: &str) -> Result<WeylFile, CliError> {
    let bad = |m: String| CliError::Io(format!("weyl file: {m}"));
    let mut file = WeylFile { gamma: None, sign: None, irreducible: None, grid: Vec::new(), sums: Vec::new() };
    for (i, line) in text.lines().enumerate() {
        if let Some(meta) = line.strip_prefix('#') {
            for kv in meta.split_whitespace() {
                match kv.split_once('=') {
                    Some(("gamma", v)) => file.gamma = Some(v.parse().map_err(|e| bad(format!("gamma: {e}")))?),
                    Some(("sign", v)) => file.sign = Some(v.parse().map_err(|e| bad(format!("{e}")))?),
                    Some(("irreducible", v)) => file.irreducible = Some(v.parse().map_err(|e| bad(format!("irreducible: {e}")))?),
                    _ => {}
                }
            }
            continue;
        }
        if line.starts_with("X,") || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<f64> = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(format!("line {}: {e}", i + 1)))?;
        let [x, re, im] = cols.as_slice() else {
            return Err(bad(format!("line {}: expected X,re_S,im_S", i + 1)));
        };
        file.grid.push(*x);
        file.sums.push(Complex64::new(*re, *im));
    }
    Ok(file)
}

#[derive(Serialize)]
struct FitResult {
    convention: ResidueConvention,
    model_poles: Vec<Complex64>,
    amplitudes: Vec<Complex64>,
    residual: f64,
    free_slope: f64,
    /// `residue / pole` for each model pole
    predicted_amplitudes: Vec<Complex64>,
    amplitude_ratios: Vec<Complex64>,
}

pub fn fit(config: &RunConfig, input: &Path, irreducible_flag: bool, conv: ResidueConvention) -> Result<Outcome, CliError> {
    config.validate()?;
    let gamma = *config.gamma.first().ok_or_else(|| CliError::Usage("--gamma is required".into()))?;
    let family = config.sign.ok_or_else(|| CliError::Usage("--family is required".into()))?;
    let text = fs::read_to_string(input).map_err(|e| io_err(input, e))?;
    let file = parse_weyl(&text)?;
    if file.gamma.is_some_and(|g| g != gamma) || file.sign.is_some_and(|s| s != family) {
        return Err(CliError::Usage(format!("{} was computed for other gamma or family", input.display())));
    }
    let irreducible_only = file.irreducible.unwrap_or(irreducible_flag) || irreducible_flag;
    let w = WeylSeries { gamma, grid: file.grid, sums: file.sums };
    let poles = model_poles(irreducible_only, gamma);
    let f = fit_asymptotics(&w, &poles)?;
    let predicted = Pole::model(irreducible_only)
        .iter()
        .map(|&p| Ok(residue_with(conv, family, p, gamma)? / p.location(gamma)))
        .collect::<Result<Vec<_>, shintani::Error>>()?;
    let ratios = f.amplitudes.iter().zip(&predicted).map(|(a, p)| a / p).collect();
    let r = FitResult {
        convention: conv,
        model_poles: f.model_poles,
        amplitudes: f.amplitudes,
        residual: f.residual,
        free_slope: f.free_slope,
        predicted_amplitudes: predicted,
        amplitude_ratios: ratios,
    };
    Ok(pass(report("fit", config, &r)?))
}

#[derive(Serialize)]
struct ResidueRow {
    family: Sign,
    pole: &'static str,
    location: Complex64,
    residue: Complex64,
}

pub fn residues(config: &RunConfig, conv: ResidueConvention) -> Result<Outcome, CliError> {
    config.validate()?;
    let mut rows = Vec::new();
    for &g in &config.gamma {
        let t = residue_table_with(conv, g)?;
        rows.extend(t.entries.iter().map(|&(family, pole, residue)| ResidueRow {
            family,
            pole: pole.label(),
            location: pole.location(g),
            residue,
        }));
    }
    Ok(pass(report("residues", config, &rows)?))
}

pub fn verify(config: &RunConfig, suite: &str) -> Result<Outcome, CliError> {
    config.validate()?;
    let reports = with_tolerance(run_suite(suite)?, config.tolerance);
    let passed = reports.iter().all(|r| r.passed());
    Ok(Outcome { report: report(&format!("verify {suite}"), config, &reports)?, passed })
}
