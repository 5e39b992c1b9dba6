//! Append-only result cache.
//!
//! Each line stores one computed value:
//!
//! ```text
//! N polygon dl=0,0,0 dr=1,1,1 dminus=3 dplus=0 0 12 0.1.0
//! W polygon dl=0,0,0 dr=1,1,1 dminus=3 dplus=0 1 6 0.1.0
//! ```
//!
//! that is, whitespace-separated: the kind (`N` or `W`), the polygon in
//! its display form, the parameter (genus or pair count), the value, and
//! the crate version that produced it. A lookup hits only on an exact
//! match of everything but the value, so results from other versions are
//! ignored rather than trusted. Unreadable lines are skipped: a corrupt
//! cache degrades to recomputation, never to a wrong answer.

use std::fs::OpenOptions;
use std::io::{self, Read, Write};
use std::path::Path;

use num_bigint::BigInt;

/// Which invariant a cache line stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheKind {
    Complex,
    Real,
}

impl CacheKind {
    fn tag(self) -> &'static str {
        match self {
            CacheKind::Complex => "N",
            CacheKind::Real => "W",
        }
    }
}

fn key_tokens(kind: CacheKind, polygon_line: &str, param: u64, version: &str) -> Vec<String> {
    let mut t: Vec<String> = vec![kind.tag().to_string()];
    t.extend(polygon_line.split_whitespace().map(str::to_string));
    t.push(param.to_string());
    t.push(version.to_string());
    t
}

/// Splits one cache line into (key tokens, value) if it is well formed.
fn parse_line(line: &str) -> Option<(Vec<String>, BigInt)> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    // kind + 5 polygon tokens + param + value + version.
    if tokens.len() != 9 {
        return None;
    }
    let value: BigInt = tokens[7].parse().ok()?;
    let mut key: Vec<String> = tokens[..7].iter().map(|s| s.to_string()).collect();
    key.push(tokens[8].to_string());
    Some((key, value))
}

/// Looks up a previously stored value. A missing file is an empty cache.
pub fn lookup(
    path: &Path,
    kind: CacheKind,
    polygon_line: &str,
    param: u64,
    version: &str,
) -> io::Result<Option<BigInt>> {
    let mut text = String::new();
    match std::fs::File::open(path) {
        Ok(mut f) => {
            f.read_to_string(&mut text)?;
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    }
    let wanted = key_tokens(kind, polygon_line, param, version);
    for line in text.lines() {
        if let Some((key, value)) = parse_line(line) {
            if key == wanted {
                return Ok(Some(value));
            }
        }
    }
    Ok(None)
}

/// Appends a value unless the same key is already present, creating the
/// file if needed. Re-running the same query therefore leaves the cache
/// byte-identical.
pub fn append_if_absent(
    path: &Path,
    kind: CacheKind,
    polygon_line: &str,
    param: u64,
    value: &BigInt,
    version: &str,
) -> io::Result<()> {
    if lookup(path, kind, polygon_line, param, version)?.is_some() {
        return Ok(());
    }
    let mut key = key_tokens(kind, polygon_line, param, version);
    let version_token = key.pop().expect("version token present");
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{} {} {}", key.join(" "), value, version_token)?;
    Ok(())
}
