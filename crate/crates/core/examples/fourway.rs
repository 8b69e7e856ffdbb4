//! The four-way link at the figure-eight crossing, certified at an admissible
//! and at a too-thick `r`.
//!
//! cargo run --example fourway

use genus2::fourway::{build_fourway, max_thickness, min_core_distance, verify_fourway};

fn main() -> genus2::Result<()> {
    let big_r = 1.0;
    let cfg = build_fourway(big_r, 0.08)?;
    println!("upper edge distances:");
    for ((i, j), d) in cfg.upper_segment_distances() {
        println!("  d(L{i}, L{j}) = {d:.10}");
    }
    println!("minimum {:.10}, thickness bound {:.10}", min_core_distance(&cfg), max_thickness(big_r));

    for r in [0.08, 0.10] {
        let report = verify_fourway(&build_fourway(big_r, r)?);
        println!("\nr = {r}\n{report}");
    }
    Ok(())
}
