//! Orchestration behind the `shintani` binary: run configuration, the class
//! cache, the verification suites and JSON/CSV report emission.

pub mod cache;
pub mod commands;
pub mod suites;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};
use shintani::Sign;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Lib(#[from] shintani::Error),
}

impl CliError {
    /// Process exit status: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Fixed float format for CSV output: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `geometric:A:B:K`
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub a: f64,
    pub b: f64,
    pub k: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        shintani::spectral_zeta::geometric_grid(self.a, self.b, self.k)
    }
}

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, a, b, k] = parts.as_slice() else {
            return Err(format!("expected geometric:A:B:K, got {s:?}"));
        };
        if *kind != "geometric" {
            return Err(format!("unknown grid kind {kind:?}"));
        }
        let num = |v: &str| v.parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
        let (a, b) = (num(a)?, num(b)?);
        let k: usize = k.parse().map_err(|e| format!("{k:?}: {e}"))?;
        if !(a > 0.0) || !(b >= a) || k < 2 {
            return Err(format!("need 0 < A <= B and K >= 2 in {s:?}"));
        }
        Ok(GridSpec { a, b, k })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "geometric:{}:{}:{}", self.a, self.b, self.k)
    }
}

/// Settings echoed in every report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub gamma: Vec<f64>,
    pub sign: Option<Sign>,
    pub max_disc: Option<i64>,
    pub grid: Option<GridSpec>,
    pub tolerance: Option<f64>,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
            }
        }
        if let Some(&g) = self.gamma.iter().find(|g| !g.is_finite() || **g == 0.0) {
            return Err(CliError::Usage(format!("gamma must be finite and nonzero, got {g}")));
        }
        if let Some(x) = self.max_disc {
            if x < 1 {
                return Err(CliError::Usage(format!("max-disc must be positive, got {x}")));
            }
            if let Some(g) = self.grid {
                if g.b > x as f64 {
                    return Err(CliError::Usage(format!("grid end {} exceeds max-disc {x}", g.b)));
                }
            }
        }
        Ok(())
    }
}

/// Default cache location, overridden by `SHINTANI_CACHE_DIR`.
pub fn cache_dir() -> PathBuf {
    std::env::var_os("SHINTANI_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("shintani-cache"))
}

#[derive(Serialize)]
struct Unhashed<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    config: &'a C,
    results: &'a R,
}

/// `{command, config, results, content_hash}`, the hash taken over the
/// compact serialization of the other three fields.
pub fn report<C: Serialize, R: Serialize>(command: &str, config: &C, results: &R) -> Result<serde_json::Value, CliError> {
    let body = Unhashed { command, config, results };
    let text = serde_json::to_string(&body).map_err(|e| CliError::Io(e.to_string()))?;
    let mut v = serde_json::to_value(&body).map_err(|e| CliError::Io(e.to_string()))?;
    v["content_hash"] = serde_json::Value::String(sha256_hex(text.as_bytes()));
    Ok(v)
}
