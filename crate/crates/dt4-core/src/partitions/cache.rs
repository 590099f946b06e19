//! On-disk partition lists: `n{N}.txt` with a `# n=N count=C` header and one
//! sorted box list per line.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::solid::{enumerate_solid_partitions, SolidPartition};
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "DT4_CACHE";

/// `DT4_CACHE` if set, else the given default.
pub fn resolve_cache_dir(default: Option<&Path>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| default.map(Path::to_path_buf))
}

fn file_for(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("n{n}.txt"))
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_cache(dir: &Path, n: usize, parts: &[SolidPartition]) -> Result<()> {
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!("n{n}.txt.tmp"));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    writeln!(f, "# n={n} count={}", parts.len()).map_err(io)?;
    for p in parts {
        writeln!(f, "{}", p.id()).map_err(io)?;
    }
    f.flush().map_err(io)?;
    drop(f);
    fs::rename(&tmp, file_for(dir, n)).map_err(io)
}

/// Returns `None` when the file is absent; a malformed or truncated file is an error.
pub fn read_cache(dir: &Path, n: usize) -> Result<Option<Vec<SolidPartition>>> {
    let path = file_for(dir, n);
    let f = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io(e)),
    };
    let mut lines = BufReader::new(f).lines();
    let header = lines.next().ok_or_else(|| Error::Io(format!("{}: empty", path.display())))?.map_err(io)?;
    let count = parse_header(&header, n).ok_or_else(|| Error::Io(format!("{}: bad header", path.display())))?;
    let mut out = Vec::with_capacity(count);
    for line in lines {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let p = SolidPartition::parse_id(&line)?;
        if p.len() != n {
            return Err(Error::Io(format!("{}: partition of wrong size", path.display())));
        }
        out.push(p);
    }
    if out.len() != count {
        return Err(Error::Io(format!("{}: expected {count} partitions, found {}", path.display(), out.len())));
    }
    Ok(Some(out))
}

fn parse_header(h: &str, n: usize) -> Option<usize> {
    let rest = h.strip_prefix("# ")?;
    let mut it = rest.split_whitespace();
    let nn: usize = it.next()?.strip_prefix("n=")?.parse().ok()?;
    let c: usize = it.next()?.strip_prefix("count=")?.parse().ok()?;
    (nn == n).then_some(c)
}

/// Size-n partitions, read from the cache directory if present and written
/// there otherwise.
pub fn solid_partitions_cached(n: usize, dir: Option<&Path>) -> Result<Vec<SolidPartition>> {
    if let Some(d) = dir {
        if let Some(v) = read_cache(d, n)? {
            return Ok(v);
        }
        let v: Vec<_> = enumerate_solid_partitions(n).collect();
        write_cache(d, n, &v)?;
        return Ok(v);
    }
    Ok(enumerate_solid_partitions(n).collect())
}
