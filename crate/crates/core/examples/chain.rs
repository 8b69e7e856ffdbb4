//! Builds the level-one chain at the smallest `m` admitted by the crude
//! containment bound and certifies it, then contrasts with `m = 32`.
//!
//! cargo run --release --example chain

use std::time::Instant;

use genus2::chain::{build_chain, minimal_m_for_kbound, verify_chain, ChainCheckOptions, ChainParams};

fn main() -> genus2::Result<()> {
    let (big_r, small_r) = (1.0, 0.08);
    let m = minimal_m_for_kbound(big_r, small_r)?;
    for m in [m, 32] {
        let params = ChainParams::new(big_r, small_r, m, None)?;
        let chain = build_chain(&params)?;
        let t = Instant::now();
        let report = verify_chain(&chain, &ChainCheckOptions::default());
        println!(
            "m = {m}, k = {:.8}, crude bound {}, verified in {:.2?}\n{report}",
            params.k,
            if params.kbound_satisfied() { "holds" } else { "fails" },
            t.elapsed()
        );
    }
    Ok(())
}
