//! Text cache of enumerated classes, one file per sign.
//!
//! ```text
//! # shintani-classes v1
//! # sign=neg max_disc=1000 scheme=hessian-covariant-v1 records=123 sha256=…
//! sign,disc,a,b,c,d,stab,irreducible,square_quad
//! neg,-23,1,0,-1,-1,1,true,false
//! ```
//!
//! The hash covers everything after the meta line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use shintani::class_enumeration::enumerate_classes;
use shintani::{CubicForm, FormClass, Sign};

use crate::{sha256_hex, CliError};

pub const FORMAT_TAG: &str = "# shintani-classes v1";
pub const SCHEME: &str = "hessian-covariant-v1";
const COLUMNS: &str = "sign,disc,a,b,c,d,stab,irreducible,square_quad";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCache {
    pub sign: Sign,
    pub max_disc: i64,
    /// sorted by `(|disc|, rep)`
    pub classes: Vec<FormClass>,
}

/// What [`ensure`] did to satisfy a request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheAction {
    Reused,
    Built,
    Extended,
}

impl ClassCache {
    pub fn build(sign: Sign, max_disc: i64) -> ClassCache {
        ClassCache { sign, max_disc, classes: enumerate_classes(sign, max_disc, false) }
    }

    pub fn body(&self) -> String {
        let mut s = String::with_capacity(40 * (self.classes.len() + 1));
        s.push_str(COLUMNS);
        s.push('\n');
        for c in &self.classes {
            let f = c.rep;
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                self.sign, c.disc, f.a, f.b, f.c, f.d, c.stab_order, c.irreducible, c.square_disc_quadratic
            ));
        }
        s
    }

    pub fn content_hash(&self) -> String {
        sha256_hex(self.body().as_bytes())
    }

    pub fn render(&self) -> String {
        let body = self.body();
        format!(
            "{FORMAT_TAG}\n# sign={} max_disc={} scheme={SCHEME} records={} sha256={}\n{body}",
            self.sign,
            self.max_disc,
            self.classes.len(),
            sha256_hex(body.as_bytes())
        )
    }

    pub fn parse(text: &str) -> Result<ClassCache, CliError> {
        let bad = |msg: String| CliError::Cache(msg);
        let mut lines = text.splitn(3, '\n');
        if lines.next() != Some(FORMAT_TAG) {
            return Err(bad(format!("missing header line {FORMAT_TAG:?}")));
        }
        let meta = lines.next().ok_or_else(|| bad("missing meta line".into()))?;
        let body = lines.next().unwrap_or("");
        let field = |key: &str| -> Result<&str, CliError> {
            meta.trim_start_matches('#')
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| bad(format!("meta line lacks {key}")))
        };
        let sign: Sign = field("sign")?.parse().map_err(|e| bad(format!("{e}")))?;
        let max_disc: i64 = field("max_disc")?.parse().map_err(|e| bad(format!("max_disc: {e}")))?;
        if field("scheme")? != SCHEME {
            return Err(bad(format!("unknown reduction scheme {}", field("scheme")?)));
        }
        let records: usize = field("records")?.parse().map_err(|e| bad(format!("records: {e}")))?;
        let hash = field("sha256")?;
        if sha256_hex(body.as_bytes()) != hash {
            return Err(bad("content hash does not match the body".into()));
        }
        let mut rows = body.lines();
        if rows.next() != Some(COLUMNS) {
            return Err(bad("missing column header".into()));
        }
        let mut classes = Vec::with_capacity(records);
        for (i, row) in rows.enumerate() {
            classes.push(parse_record(row, sign).map_err(|e| bad(format!("record {}: {e}", i + 1)))?);
        }
        if classes.len() != records {
            return Err(bad(format!("meta line promises {records} records, found {}", classes.len())));
        }
        let cache = ClassCache { sign, max_disc, classes };
        cache.check()?;
        Ok(cache)
    }

    fn check(&self) -> Result<(), CliError> {
        if let Some(c) = self.classes.iter().find(|c| c.disc.unsigned_abs() > self.max_disc as u128) {
            return Err(CliError::Cache(format!("class {} exceeds max_disc {}", c.rep, self.max_disc)));
        }
        let key = |c: &FormClass| (c.disc.unsigned_abs(), c.rep);
        if self.classes.windows(2).any(|w| key(&w[0]) >= key(&w[1])) {
            return Err(CliError::Cache("records are not strictly sorted".into()));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<ClassCache, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        ClassCache::parse(&text).map_err(|e| CliError::Cache(format!("{}: {e}", path.display())))
    }

    /// Written through a temporary file and renamed into place.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(io)?;
        }
        let tmp = path.with_extension("csv.tmp");
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(self.render().as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    /// Classes with `|disc| ≤ x`, a prefix of the records.
    pub fn up_to(&self, x: i64) -> &[FormClass] {
        let end = self.classes.partition_point(|c| c.disc.unsigned_abs() <= x as u128);
        &self.classes[..end]
    }
}

fn parse_record(row: &str, sign: Sign) -> Result<FormClass, String> {
    let cols: Vec<&str> = row.split(',').collect();
    if cols.len() != 9 {
        return Err(format!("expected 9 columns, got {}", cols.len()));
    }
    if cols[0] != sign.as_str() {
        return Err(format!("sign {} in a {sign} cache", cols[0]));
    }
    let int = |i: usize| cols[i].parse::<i64>().map_err(|e| format!("column {}: {e}", i + 1));
    let flag = |i: usize| cols[i].parse::<bool>().map_err(|e| format!("column {}: {e}", i + 1));
    let rep = CubicForm::new(int(2)?, int(3)?, int(4)?, int(5)?);
    let disc: i128 = cols[1].parse().map_err(|e| format!("column 2: {e}"))?;
    if rep.discriminant() != disc {
        return Err(format!("disc {disc} does not match {rep}"));
    }
    let stab_order = u8::try_from(int(6)?).map_err(|e| e.to_string())?;
    Ok(FormClass { rep, disc, stab_order, irreducible: flag(7)?, square_disc_quadratic: flag(8)? })
}

pub fn cache_path(dir: &Path, sign: Sign) -> PathBuf {
    dir.join(format!("classes-{sign}.csv"))
}

/// Loads the cache for `sign` and makes sure it covers `|disc| ≤ x`, building
/// or extending it when allowed.
pub fn ensure(dir: &Path, sign: Sign, x: i64, allow_build: bool) -> Result<(ClassCache, CacheAction), CliError> {
    let path = cache_path(dir, sign);
    let existing = if path.exists() { Some(ClassCache::load(&path)?) } else { None };
    match existing {
        Some(c) if c.max_disc >= x => Ok((c, CacheAction::Reused)),
        other => {
            if !allow_build {
                return Err(CliError::Cache(format!("{} does not cover |disc| <= {x}", path.display())));
            }
            let action = if other.is_some() { CacheAction::Extended } else { CacheAction::Built };
            let cache = ClassCache::build(sign, x);
            if let Some(old) = other {
                // records up to the old bound must be reproduced verbatim
                if cache.up_to(old.max_disc) != old.classes.as_slice() {
                    return Err(CliError::Cache(format!("{} disagrees with a fresh enumeration", path.display())));
                }
            }
            cache.write(&path)?;
            Ok((cache, action))
        }
    }
}
