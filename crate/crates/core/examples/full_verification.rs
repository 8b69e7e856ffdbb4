//! The complete certificate for one parameter set, down to depth 2 by default.
//!
//! cargo run --release --example full_verification -- [m] [depth]

use genus2::chain::ChainParams;
use genus2::verify::{run_full_verification, VerifyOptions};

fn main() -> genus2::Result<()> {
    let mut args = std::env::args().skip(1);
    let m = args.next().map_or(Ok(288), |s| s.parse()).expect("m must be an integer");
    let depth = args.next().map_or(Ok(2), |s| s.parse()).expect("depth must be an integer");
    let params = ChainParams::new(1.0, 0.08, m, None)?;
    let report = run_full_verification(&params, depth, &VerifyOptions::default())?;
    print!("{report}");
    Ok(())
}
