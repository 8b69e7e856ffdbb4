//! Saves a chain as a scene file and reads it back, confirming every number
//! survived bit for bit.
//!
//! cargo run --example scene_roundtrip

use genus2::chain::{build_chain, ChainParams};
use genus2::scene::{read_scene, write_scene};

fn main() -> genus2::Result<()> {
    let chain = build_chain(&ChainParams::new(1.0, 0.08, 32, None)?)?;
    let path = std::env::temp_dir().join("genus2_m32.scene");
    write_scene(&chain, &path)?;
    let back = read_scene(&path)?;
    let same = back.maps == chain.maps && back.params == chain.params;
    println!("{} maps written to {}, identical after reading: {same}", back.m(), path.display());
    let text = std::fs::read_to_string(&path)?;
    for line in text.lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
