//! Regenerates the files in `data/` from the catalog.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("data"));
    std::fs::create_dir_all(&dir)?;
    for (name, doc) in qact::io::catalog() {
        std::fs::write(dir.join(name), serde_json::to_string_pretty(&doc).expect("document serializes") + "\n")?;
    }
    for (name, w) in qact::io::walk_catalog() {
        std::fs::write(dir.join(name), serde_json::to_string_pretty(&w).expect("walk serializes") + "\n")?;
    }
    for (name, v) in qact::io::aux_catalog() {
        std::fs::write(dir.join(name), serde_json::to_string_pretty(&v).expect("json") + "\n")?;
    }
    Ok(())
}
