#![allow(dead_code)]

use std::path::PathBuf;

use x0plus_core::{fixture_path, load_basis, BasisRecord};

pub const GENUS3: [u64; 9] = [97, 109, 113, 127, 139, 149, 151, 179, 239];
pub const GENUS4: [u64; 5] = [137, 173, 199, 251, 311];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn basis(level: u64) -> BasisRecord {
    load_basis(&fixture_path(&data_dir(), level)).expect("fixture loads")
}
