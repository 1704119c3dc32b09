//! Regenerates the JSON files under `fixtures/` from the instance builders.
//!
//! Run from the workspace root: `cargo run -p hopfpi --example emit_fixtures`.

#![forbid(unsafe_code)]

use std::fs;
use std::path::Path;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    fs::create_dir_all(root.join("tampered"))?;
    for (name, inst) in hopfpi::instances::zoo()? {
        fs::write(
            root.join(format!("{name}.json")),
            hopfpi::format::emit(&inst),
        )?;
    }
    for (name, _, _, inst) in hopfpi::instances::tampered()? {
        fs::write(
            root.join("tampered").join(format!("{name}.json")),
            hopfpi::format::emit(&inst),
        )?;
    }
    Ok(())
}
