//! Shared helpers for the benchmarks.

use std::path::PathBuf;

use x0plus_core::{fixture_path, load_basis, BasisRecord};

/// The workspace `data/` directory.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn basis(level: u64) -> BasisRecord {
    load_basis(&fixture_path(&data_dir(), level)).expect("fixture loads")
}
