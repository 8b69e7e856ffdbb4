//! Writes levels 0 and 1 of the `m = 32` chain as OBJ meshes with core
//! polylines.
//!
//! cargo run --example export_obj -- [output-dir]

use std::path::PathBuf;

use genus2::chain::{build_chain, ChainParams};
use genus2::obj::export_obj;

fn main() -> genus2::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let chain = build_chain(&ChainParams::new(1.0, 0.08, 32, None)?)?;
    for level in [0, 1] {
        let path = dir.join(format!("genus2_level{level}.obj"));
        let s = export_obj(&chain, level, true, &path)?;
        println!(
            "{}: {} groups, {} vertices, {} triangles, {} polylines",
            path.display(),
            s.groups,
            s.vertices,
            s.triangles,
            s.polylines
        );
    }
    Ok(())
}
