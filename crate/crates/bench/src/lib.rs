//! Shared setup for the benchmarks under `benches/`.

use std::path::PathBuf;

use tilting_core::Workspace;

/// Loads one of the workspaces in `crates/core/fixtures`.
pub fn fixture(name: &str) -> Workspace {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    Workspace::load(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}
