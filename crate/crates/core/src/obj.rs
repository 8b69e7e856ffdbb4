//! Wavefront OBJ export: one group per component, each beam a closed box of
//! 8 vertices and 12 outward triangles.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::chain::Chain;
use crate::error::Result;
use crate::geometry::BEAM_TRIANGLES;
use crate::sequence::{expand_level, DEFAULT_LEVEL_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObjStats {
    pub groups: usize,
    pub vertices: usize,
    pub triangles: usize,
    pub polylines: usize,
}

/// OBJ text for all components of `level`; with `cores`, each core square is
/// added as a closed `l` polyline.
pub fn obj_to_string(chain: &Chain, level: usize, cores: bool, budget: u128) -> Result<(String, ObjStats)> {
    let comps = expand_level(chain, level, budget)?;
    let mut out = String::new();
    let mut stats = ObjStats {
        groups: 0,
        vertices: 0,
        triangles: 0,
        polylines: 0,
    };
    writeln!(out, "# level {level}, {} components", comps.len()).unwrap();
    for c in &comps {
        writeln!(out, "g {}", c.address).unwrap();
        stats.groups += 1;
        for beam in c.solid.beams() {
            let base = stats.vertices + 1;
            for v in beam.vertices() {
                writeln!(out, "v {:.12e} {:.12e} {:.12e}", v.x, v.y, v.z).unwrap();
            }
            stats.vertices += 8;
            for t in BEAM_TRIANGLES {
                writeln!(out, "f {} {} {}", base + t[0], base + t[1], base + t[2]).unwrap();
            }
            stats.triangles += 12;
        }
        if cores {
            let (g1, g2) = c.solid.core_loops();
            for g in [g1, g2] {
                let base = stats.vertices + 1;
                for v in g.vertices() {
                    writeln!(out, "v {:.12e} {:.12e} {:.12e}", v.x, v.y, v.z).unwrap();
                }
                stats.vertices += g.len();
                let idx: Vec<String> = (0..g.len()).chain([0]).map(|i| (base + i).to_string()).collect();
                writeln!(out, "l {}", idx.join(" ")).unwrap();
                stats.polylines += 1;
            }
        }
    }
    Ok((out, stats))
}

pub fn export_obj(chain: &Chain, level: usize, cores: bool, path: impl AsRef<Path>) -> Result<ObjStats> {
    let (text, stats) = obj_to_string(chain, level, cores, DEFAULT_LEVEL_BUDGET)?;
    fs::write(path, text)?;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_chain, ChainParams};

    #[test]
    fn counts_and_indices() {
        let c = build_chain(&ChainParams::new(1.0, 0.08, 32, None).unwrap()).unwrap();
        let (text, s) = obj_to_string(&c, 0, false, DEFAULT_LEVEL_BUDGET).unwrap();
        assert_eq!((s.groups, s.vertices, s.triangles), (1, 64, 96));
        assert!(text.contains("\ng X\n"));
        let (text, s) = obj_to_string(&c, 1, true, DEFAULT_LEVEL_BUDGET).unwrap();
        assert_eq!((s.groups, s.vertices - 8 * 32, s.triangles, s.polylines), (32, 2048, 3072, 64));
        let nv = text.lines().filter(|l| l.starts_with("v ")).count();
        assert_eq!(nv, s.vertices);
        for l in text.lines().filter(|l| l.starts_with("f ") || l.starts_with("l ")) {
            for idx in l.split_whitespace().skip(1) {
                let i: usize = idx.parse().unwrap();
                assert!(i >= 1 && i <= nv);
            }
        }
        assert!(text.contains("\ng X_32\n"));
    }
}
