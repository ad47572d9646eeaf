//! On-disk cache of the elementary coefficients `α_1 … α_N`.
//!
//! The file starts with the line `# gammatrace elementary v1`, followed by
//! one `j<TAB>num/den` line per coefficient in increasing `j`.
//!
//! Full tables are always re-derived from this sequence, so it is the only
//! state kept between runs.

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use gammatrace_core::solver::{minimal_algorithm, SolverError};
use gammatrace_core::{ElementarySequence, Rational};
use tempfile::NamedTempFile;
use thiserror::Error;

pub const HEADER: &str = "# gammatrace elementary v1";
pub const FILE_NAME: &str = "elementary-v1.tsv";
pub const ENV_VAR: &str = "GAMMATRACE_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: cached values disagree with a fresh computation at j = {j}", path.display())]
    Stale { path: PathBuf, j: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl CacheError {
    fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.to_owned(),
            source,
        }
    }
}

/// Cache directory when none is given explicitly: `$XDG_CACHE_HOME/gammatrace`,
/// then `$HOME/.cache/gammatrace`.
pub fn default_dir() -> Option<PathBuf> {
    let non_empty = |key| std::env::var_os(key).filter(|v| !v.is_empty()).map(PathBuf::from);
    non_empty("XDG_CACHE_HOME")
        .map(|p| p.join("gammatrace"))
        .or_else(|| non_empty("HOME").map(|p| p.join(".cache").join("gammatrace")))
}

pub fn file_in(dir: &Path) -> PathBuf {
    dir.join(FILE_NAME)
}

pub fn render(seq: &ElementarySequence) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (i, a) in seq.as_slice().iter().enumerate() {
        writeln!(out, "{}\t{}/{}", i + 1, a.numer(), a.denom()).expect("writing to a String");
    }
    out
}

/// Parse cache text. `path` is only used in error messages.
pub fn parse(text: &str, path: &Path) -> Result<ElementarySequence, CacheError> {
    let err = |line: usize, message: String| CacheError::Parse {
        path: path.to_owned(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((no, other)) => return Err(err(no, format!("expected header {HEADER:?}, found {other:?}"))),
        None => return Err(err(1, "empty file".into())),
    }
    let mut values = Vec::new();
    for (no, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (j, value) = line
            .split_once('\t')
            .ok_or_else(|| err(no, "expected \"j<TAB>num/den\"".into()))?;
        let j: usize = j.parse().map_err(|_| err(no, format!("bad index {j:?}")))?;
        if j != values.len() + 1 {
            return Err(err(no, format!("expected index {}, found {j}", values.len() + 1)));
        }
        if !value.contains('/') {
            return Err(err(no, format!("expected num/den, found {value:?}")));
        }
        let alpha: Rational = value.parse().map_err(|e| err(no, format!("{e}")))?;
        if j == 1 && !alpha.is_one() {
            return Err(err(no, format!("alpha_1 must be 1, found {alpha}")));
        }
        values.push(alpha);
    }
    Ok(ElementarySequence::new(values)?)
}

/// `Ok(None)` when the file does not exist (cold cache).
pub fn load(path: &Path) -> Result<Option<ElementarySequence>, CacheError> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse(&text, path).map(Some),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(CacheError::io(path, e)),
    }
}

/// Write through a temporary file in the same directory and rename it into
/// place, so readers never see a partial file.
pub fn store(path: &Path, seq: &ElementarySequence) -> Result<(), CacheError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CacheError::io(dir, e))?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CacheError::io(dir, e))?;
    tmp.write_all(render(seq).as_bytes())
        .map_err(|e| CacheError::io(tmp.path(), e))?;
    tmp.as_file().sync_all().map_err(|e| CacheError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CacheError::io(path, e.error))?;
    Ok(())
}

/// Returns whether a file was removed.
pub fn clear(path: &Path) -> Result<bool, CacheError> {
    match std::fs::remove_file(path) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(false),
        Err(e) => Err(CacheError::io(path, e)),
    }
}

/// `α_1 … α_n`, from the cache when it is long enough. Otherwise the
/// minimal algorithm runs, its output is checked against whatever was
/// cached, and the longer sequence is stored.
pub fn elementary_through(path: Option<&Path>, n: usize) -> Result<ElementarySequence, CacheError> {
    let cached = match path {
        Some(p) => load(p)?,
        None => None,
    };
    if let Some(seq) = &cached {
        if seq.len() >= n {
            return Ok(seq.truncated(n));
        }
    }
    let fresh = minimal_algorithm(n)?.elementary;
    if let (Some(p), Some(old)) = (path, &cached) {
        if let Some(j) = old.as_slice().iter().zip(fresh.as_slice()).position(|(a, b)| a != b) {
            return Err(CacheError::Stale {
                path: p.to_owned(),
                j: j + 1,
            });
        }
    }
    if let Some(p) = path {
        store(p, &fresh)?;
    }
    Ok(fresh)
}
