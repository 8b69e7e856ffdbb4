//! Three independent linking-number computations on a Hopf pair moved by a
//! random similarity: the Gauss sum, signed crossings of a projection, and
//! piercings of the flat disk spanned by one square.
//!
//! cargo run --example linking

use std::f64::consts::PI;

use genus2::geometry::{PolyLoop, Similarity, Transform};
use genus2::linking::{
    canonical_filling_disk, disk_piercings, gauss_linking_number, linking_number_by_crossings,
    signed_piercing_count,
};
use genus2::Vec3;

fn square(center: Vec3, u: Vec3, v: Vec3) -> genus2::Result<PolyLoop> {
    PolyLoop::new(vec![center + u + v, center - u + v, center - u - v, center + u - v])
}

fn main() -> genus2::Result<()> {
    let a = square(Vec3::zeros(), Vec3::x(), Vec3::y())?;
    let b = square(Vec3::new(1.0, 0.0, 0.0), Vec3::x(), Vec3::z())?;
    let far = square(Vec3::new(5.0, 0.0, 0.0), Vec3::x(), Vec3::z())?;
    let motion = Similarity::rotation_about_line(Vec3::new(0.3, -1.0, 2.0), Vec3::new(1.0, 2.0, 2.0), 0.7 * PI)
        .compose(&Similarity::scaling(2.5)?);

    for (name, other) in [("hopf", &b), ("unlink", &far)] {
        let (p, q) = (a.transformed(&motion), other.transformed(&motion));
        let gauss = gauss_linking_number(&p, &q)?;
        let cross = linking_number_by_crossings(&p, &q)?;
        let disk = canonical_filling_disk(&p)?;
        let pierce = disk_piercings(&disk, &q)?;
        println!(
            "{name:6}: gauss lk {} (residual {:.1e}), crossings lk {} ({} crossings), disk count {}",
            gauss.lk,
            gauss.gauss_residual,
            cross.lk,
            cross.crossings,
            signed_piercing_count(&pierce)
        );
    }
    Ok(())
}
