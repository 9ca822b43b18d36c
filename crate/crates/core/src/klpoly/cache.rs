//! Plain-text on-disk form of a [`KlTable`].
//!
//! ```text
//! # weylkl-cache version=1 type=A rank=3 order=24 count=167
//! y=e w=e p=1
//! y=e w=1 p=1
//! ...
//! y=2 w=2.1.3.2 p=1 1
//! ```
//!
//! One record per pair `y <= w`, ordered by `w` then `y` in the canonical
//! length-then-ShortLex order, words 1-based and dot separated. The file
//! contents depend only on the group, so they are byte-reproducible.

use std::io::{BufRead, Write};
use std::sync::Arc;

use num_bigint::BigInt;

use super::{KlError, KlTable};
use crate::coxeter::CoxeterSystem;
use crate::poly::IntPolynomial;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// File name keyed by type, rank and format version, e.g. `A3-v1.klcache`.
pub fn cache_file_name(system: &CoxeterSystem) -> String {
    format!("{}-v{}.klcache", system.name(), CACHE_FORMAT_VERSION)
}

fn dotted(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|&s| (s as usize + 1).to_string()).collect::<Vec<_>>().join(".")
}

fn header(system: &CoxeterSystem, count: usize) -> String {
    format!(
        "# weylkl-cache version={} type={} rank={} order={} count={}",
        CACHE_FORMAT_VERSION,
        system.label(),
        system.rank(),
        system.order(),
        count
    )
}

impl KlTable {
    pub fn write_cache<W: Write>(&self, mut out: W) -> Result<(), KlError> {
        let sys = &self.system;
        writeln!(out, "{}", header(sys, self.nonzero_count()))?;
        for w in 0..sys.order() {
            let ww = dotted(sys.word_at(w));
            for (y, p) in self.rows[w].iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                writeln!(out, "y={} w={} p={}", dotted(sys.word_at(y)), ww, coeffs.join(" "))?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a table written by [`KlTable::write_cache`] for the same system.
    pub fn read_cache<R: BufRead>(system: Arc<CoxeterSystem>, input: R) -> Result<Self, KlError> {
        let mut lines = input.lines();
        let first = lines.next().ok_or_else(|| KlError::Cache("empty file".into()))??;
        let fields: Vec<&str> = first.split_whitespace().collect();
        if fields.len() != 7 || fields[0] != "#" || fields[1] != "weylkl-cache" {
            return Err(KlError::Cache(format!("bad header `{first}`")));
        }
        let count: usize =
            fields[6].strip_prefix("count=").and_then(|c| c.parse().ok()).ok_or_else(|| KlError::Cache("bad record count".into()))?;
        let expected = header(&system, count);
        if first != expected {
            return Err(KlError::CacheMismatch { expected, found: first });
        }

        let n = system.order();
        let mut rows = vec![vec![IntPolynomial::zero(); n]; n];
        let mut seen = 0usize;
        for line in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let bad = || KlError::Cache(format!("bad record `{line}`"));
            let rest = line.strip_prefix("y=").ok_or_else(bad)?;
            let (y, rest) = rest.split_once(" w=").ok_or_else(bad)?;
            let (w, p) = rest.split_once(" p=").ok_or_else(bad)?;
            let yi = parse_dotted(&system, y).ok_or_else(bad)?;
            let wi = parse_dotted(&system, w).ok_or_else(bad)?;
            let coeffs: Vec<BigInt> = p.split_whitespace().map(|c| c.parse::<BigInt>()).collect::<Result<_, _>>().map_err(|_| bad())?;
            rows[wi][yi] = IntPolynomial::from_coeffs(coeffs);
            seen += 1;
        }
        if seen != count {
            return Err(KlError::Cache(format!("header announces {count} records, found {seen}")));
        }
        Ok(KlTable::from_rows(system, rows))
    }
}

fn parse_dotted(system: &CoxeterSystem, s: &str) -> Option<usize> {
    if s == "e" {
        return Some(0);
    }
    let word: Vec<usize> = s.split('.').map(|t| t.parse::<usize>().ok().filter(|&d| d >= 1).map(|d| d - 1)).collect::<Option<_>>()?;
    system.product(&word).ok().map(|e| e.index())
}
