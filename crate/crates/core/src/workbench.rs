//! A system together with its KL table and two-sided cells.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::sync::Arc;

use crate::cells::{CellDecomposition, CellError, CellSide};
use crate::coxeter::{CartanType, CoxeterError, CoxeterSystem};
use crate::homology::{Homology, HomologyError};
use crate::klpoly::{cache_file_name, KlError, KlTable, DEFAULT_KL_CAP};

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error(transparent)]
    Cells(#[from] CellError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Worker threads for the KL table; 1 builds on the calling thread.
    pub threads: usize,
    pub kl_cap: usize,
    /// Read the KL table from here if present, write it otherwise.
    pub cache_dir: Option<PathBuf>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { threads: 1, kl_cap: DEFAULT_KL_CAP, cache_dir: None }
    }
}

pub struct Workbench {
    pub system: Arc<CoxeterSystem>,
    pub kl: KlTable,
    pub cells: CellDecomposition,
    /// Whether the KL table came from the cache.
    pub from_cache: bool,
}

impl Workbench {
    pub fn build(label: CartanType, rank: usize, options: &BuildOptions) -> Result<Self, WorkbenchError> {
        let system = Arc::new(CoxeterSystem::build(label, rank)?);
        Self::from_system(system, options)
    }

    pub fn from_system(system: Arc<CoxeterSystem>, options: &BuildOptions) -> Result<Self, WorkbenchError> {
        let (kl, from_cache) = load_or_build(&system, options)?;
        let cells = CellDecomposition::build(&kl, CellSide::TwoSided)?;
        Ok(Workbench { system, kl, cells, from_cache })
    }

    pub fn homology(&self) -> Homology<'_> {
        Homology::new(&self.kl, &self.cells).expect("two-sided cells")
    }

    pub fn one_sided_cells(&self, side: CellSide) -> Result<CellDecomposition, CellError> {
        if side == CellSide::TwoSided {
            return Ok(self.cells.clone());
        }
        CellDecomposition::build(&self.kl, side)
    }
}

fn load_or_build(system: &Arc<CoxeterSystem>, options: &BuildOptions) -> Result<(KlTable, bool), KlError> {
    if system.order() > options.kl_cap {
        return Err(KlError::TooLarge { order: system.order(), cap: options.kl_cap });
    }
    let Some(dir) = &options.cache_dir else {
        return Ok((KlTable::build_with(system.clone(), options.threads, options.kl_cap)?, false));
    };
    let path = dir.join(cache_file_name(system));
    if path.exists() {
        let table = KlTable::read_cache(system.clone(), BufReader::new(File::open(&path)?))?;
        return Ok((table, true));
    }
    let table = KlTable::build_with(system.clone(), options.threads, options.kl_cap)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("klcache.tmp");
    table.write_cache(BufWriter::new(File::create(&tmp)?))?;
    fs::rename(&tmp, &path)?;
    Ok((table, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let options = BuildOptions { cache_dir: Some(dir.path().to_path_buf()), ..BuildOptions::default() };
        let first = Workbench::build(CartanType::A, 3, &options).unwrap();
        assert!(!first.from_cache);
        let path = dir.path().join("A3-v1.klcache");
        let bytes = fs::read(&path).unwrap();
        let second = Workbench::build(CartanType::A, 3, &options).unwrap();
        assert!(second.from_cache);
        assert_eq!(second.cells.cells(), first.cells.cells());
        fs::remove_file(&path).unwrap();
        Workbench::build(CartanType::A, 3, &options).unwrap();
        assert_eq!(fs::read(&path).unwrap(), bytes);
    }

    #[test]
    fn cap_is_enforced() {
        let options = BuildOptions { kl_cap: 10, ..BuildOptions::default() };
        assert!(matches!(Workbench::build(CartanType::A, 3, &options), Err(WorkbenchError::Kl(KlError::TooLarge { .. }))));
    }
}
