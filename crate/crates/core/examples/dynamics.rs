//! Escape levels under the inverse-similarity dynamics, plus the radial
//! power-map model outside `B(0, 4)`.
//!
//! cargo run --example dynamics

use std::f64::consts::SQRT_2;

use genus2::chain::{build_chain, ChainParams};
use genus2::sequence::{escape_radius_model, membership, similarity_dimension, PowerMapParams};
use genus2::Vec3;

fn main() -> genus2::Result<()> {
    let params = ChainParams::new(1.0, 0.08, 32, None)?;
    let chain = build_chain(&params)?;
    let hole = Vec3::new(SQRT_2, 0.0, 0.0);
    let samples = [
        ("right hole centre", hole),
        ("image of the left hole under φ1", chain.maps[0].apply_point(&-hole)),
        ("fixed point of φ1", chain.maps[0].fixed_point().expect("contraction")),
        ("fixed point of φ17", chain.maps[16].fixed_point().expect("contraction")),
        ("origin", Vec3::zeros()),
    ];
    for (name, x) in samples {
        println!("{name:32} {:?}", membership(&chain, &x, 12));
    }

    let p = PowerMapParams::new(6)?;
    for t in 0..4 {
        let e = escape_radius_model(4.0, t, &p)?;
        println!("power map d = 6, step {t}: radius {:e} overflow {}", e.radius, e.overflowed);
    }
    println!("similarity dimension (m = 32): {:.7}", similarity_dimension(32, params.k)?);
    Ok(())
}
