//! On-disk Weyl group cache.
//!
//! One file per root system, `weyl-<label>.v<version>.txt`:
//!
//! ```text
//! exw-weyl <version> <label> <rank> <order>
//! gens <entries of r_1 … r_ℓ, row-major>
//! <sign> <entries of w, row-major>
//! ...
//! ```
//!
//! Files are written to a temporary name and renamed into place, so readers
//! never see partial content. Concurrent writers produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{RootSystem, WeylElement};
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "EXW_CACHE_DIR";
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Cache directory: `$EXW_CACHE_DIR`, else `$XDG_CACHE_HOME/exw`, else
/// `$HOME/.cache/exw`. Setting `EXW_CACHE_DIR` to an empty string disables
/// the cache.
pub fn cache_dir() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var(CACHE_ENV) {
        return if dir.is_empty() { None } else { Some(PathBuf::from(dir)) };
    }
    if let Ok(x) = std::env::var("XDG_CACHE_HOME") {
        if !x.is_empty() {
            return Some(PathBuf::from(x).join("exw"));
        }
    }
    std::env::var("HOME").ok().map(|h| PathBuf::from(h).join(".cache").join("exw"))
}

fn file_name(rs: &RootSystem) -> String {
    format!("weyl-{}.v{}.txt", rs.label, CACHE_FORMAT_VERSION)
}

fn flat(m: &[Vec<i64>]) -> String {
    m.iter().flatten().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn gens_line(rs: &RootSystem) -> String {
    let all: Vec<String> = rs.generators.iter().map(|g| flat(g)).collect();
    format!("gens {}", all.join(" "))
}

pub(crate) fn render(rs: &RootSystem, group: &[WeylElement]) -> String {
    let mut s =
        format!("exw-weyl {} {} {} {}\n{}\n", CACHE_FORMAT_VERSION, rs.label, rs.rank, group.len(), gens_line(rs));
    for w in group {
        s.push_str(&format!("{} {}\n", w.sign, flat(&w.matrix)));
    }
    s
}

pub(crate) fn parse(rs: &RootSystem, text: &str) -> Result<Vec<WeylElement>> {
    let bad = |m: &str| Error::Cache(format!("{}: {}", file_name(rs), m));
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty file"))?.split_whitespace().collect();
    let expect_version = CACHE_FORMAT_VERSION.to_string();
    let expect_label = rs.label.to_string();
    let expect_rank = rs.rank.to_string();
    if header.len() != 5
        || header[0] != "exw-weyl"
        || header[1] != expect_version
        || header[2] != expect_label
        || header[3] != expect_rank
    {
        return Err(bad("header mismatch"));
    }
    let count: usize = header[4].parse().map_err(|_| bad("bad count"))?;
    if lines.next() != Some(gens_line(rs).as_str()) {
        return Err(bad("generators differ from the registry"));
    }
    let n = rs.rank;
    let mut out = Vec::with_capacity(count);
    for line in lines {
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("bad entry"))?;
        if nums.len() != 1 + n * n || !(nums[0] == 1 || nums[0] == -1) {
            return Err(bad("malformed element"));
        }
        let matrix = nums[1..].chunks(n).map(|c| c.to_vec()).collect();
        out.push(WeylElement { matrix, sign: nums[0] as i8 });
    }
    if out.len() != count {
        return Err(bad("element count mismatch"));
    }
    Ok(out)
}

pub(crate) fn load_from(dir: &Path, rs: &RootSystem) -> Result<Vec<WeylElement>> {
    let text = fs::read_to_string(dir.join(file_name(rs))).map_err(|e| Error::Cache(e.to_string()))?;
    parse(rs, &text)
}

pub(crate) fn store_to(dir: &Path, rs: &RootSystem, group: &[WeylElement]) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let target = dir.join(file_name(rs));
    let tmp = dir.join(format!("{}.{}.tmp", file_name(rs), std::process::id()));
    {
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(render(rs, group).as_bytes()).map_err(io)?;
    }
    fs::rename(&tmp, &target).map_err(io)
}

pub(crate) fn load(rs: &RootSystem) -> Option<Vec<WeylElement>> {
    load_from(&cache_dir()?, rs).ok()
}

pub(crate) fn store(rs: &RootSystem, group: &[WeylElement]) -> Result<()> {
    match cache_dir() {
        Some(dir) => store_to(&dir, rs, group),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, close_group, Label};

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let rs = build_root_system(Label::B3).unwrap();
        let g = close_group(&rs.generators, 1000).unwrap();
        store_to(dir.path(), &rs, &g).unwrap();
        assert_eq!(load_from(dir.path(), &rs).unwrap(), g);
        let other = build_root_system(Label::G2).unwrap();
        assert!(load_from(dir.path(), &other).is_err());
    }

    #[test]
    fn rejects_tampered_file() {
        let rs = build_root_system(Label::G2).unwrap();
        let g = close_group(&rs.generators, 100).unwrap();
        let text = render(&rs, &g);
        assert!(parse(&rs, &text).is_ok());
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(parse(&rs, &truncated).is_err());
    }
}
