//! Four pairwise Hopf-linked square tori meeting at the figure-eight crossing.
//!
//! The tori are first stood upright with a diagonal on a coordinate axis,
//! then tilted about that axis. `T1, T2` sit on the `x1`-axis and `T3, T4` on
//! the `x2`-axis; the tilted upper core edges `L1..L4` govern the admissible
//! thickness.

use std::f64::consts::{FRAC_PI_8, SQRT_2};

use crate::error::{Error, Result};
use crate::geometry::{PolyLoop, Segment, Similarity, SquareTorusFrame, Transform, Vec3};
use crate::linking::{gauss_linking_number, is_hopf_pair};
use crate::report::{CheckRecord, VerificationReport};

#[derive(Clone, Debug, PartialEq)]
pub struct FourWayConfig {
    pub big_r: f64,
    pub small_r: f64,
    pub tori: [SquareTorusFrame; 4],
    pub cores: [PolyLoop; 4],
    pub upper_segments: [Segment; 4],
}

/// Square torus with one diagonal on `axis` between `axis·lo` and `axis·hi`
/// and the other along `width`.
fn diagonal_torus(axis: Vec3, lo: f64, hi: f64, width: Vec3, big_r: f64, small_r: f64) -> Result<SquareTorusFrame> {
    let center = axis * ((lo + hi) / 2.0);
    let e1 = (axis + width) / SQRT_2;
    let e2 = (width - axis) / SQRT_2;
    SquareTorusFrame::new(center, e1, e2, big_r, small_r)
}

/// Places `T1..T4` and tilts them by `-3π/8`, `3π/8` about the `x1`-axis and
/// `π/8`, `-π/8` about the `x2`-axis.
///
/// The `x2` tilts turn positively about `-x2`; with that sense the upper
/// edges reproduce the reference line equations exactly.
pub fn build_fourway(big_r: f64, small_r: f64) -> Result<FourWayConfig> {
    if !(big_r.is_finite() && small_r > 0.0 && small_r < big_r) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r < R, got R={big_r}, r={small_r}"
        )));
    }
    let q = SQRT_2 * big_r / 4.0;
    let (x1, x2, up) = (Vec3::x(), Vec3::y(), Vec3::z());
    let tilt_x1 = |angle: f64| Similarity::rotation_about_line(Vec3::zeros(), x1, angle);
    let tilt_x2 = |angle: f64| Similarity::rotation_about_line(Vec3::zeros(), -x2, angle);

    let upright = [
        diagonal_torus(x1, -5.0 * q, 3.0 * q, up, big_r, small_r)?,
        diagonal_torus(x1, -3.0 * q, 5.0 * q, up, big_r, small_r)?,
        diagonal_torus(x2, -7.0 * q, q, up, big_r, small_r)?,
        diagonal_torus(x2, -q, 7.0 * q, up, big_r, small_r)?,
    ];
    let tilts = [
        tilt_x1(-3.0 * FRAC_PI_8),
        tilt_x1(3.0 * FRAC_PI_8),
        tilt_x2(FRAC_PI_8),
        tilt_x2(-FRAC_PI_8),
    ];
    let tori: [SquareTorusFrame; 4] = std::array::from_fn(|i| upright[i].transformed(&tilts[i]));
    let cores = tori.each_ref().map(|t| t.core_loop());

    // core vertices are [axis-low end, top, axis-high end, bottom]
    let v = tori.each_ref().map(|t| t.core_vertices());
    let upper_segments = [
        Segment { a: v[0][2], b: v[0][1] },
        Segment { a: v[1][2], b: v[1][1] },
        Segment { a: v[2][2], b: v[2][1] },
        Segment { a: v[3][0], b: v[3][1] },
    ];
    Ok(FourWayConfig {
        big_r,
        small_r,
        tori,
        cores,
        upper_segments,
    })
}

impl FourWayConfig {
    /// Exact distances between `L_i` and `L_j`, `i < j`, in lexicographic
    /// pair order.
    pub fn upper_segment_distances(&self) -> [((usize, usize), f64); 6] {
        let mut out = [((0, 0), 0.0); 6];
        let mut k = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let d = crate::geometry::segment_distance(&self.upper_segments[i], &self.upper_segments[j]);
                out[k] = ((i + 1, j + 1), d);
                k += 1;
            }
        }
        out
    }

    /// Pair `(i, j)` (1-based) realising [`min_core_distance`].
    pub fn closest_upper_pair(&self) -> (usize, usize) {
        self.upper_segment_distances()
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|p| p.0)
            .expect("six pairs")
    }

    /// Distances between the full core squares, pair order as above.
    pub fn core_distances(&self) -> [((usize, usize), f64); 6] {
        let mut out = [((0, 0), 0.0); 6];
        let mut k = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                out[k] = ((i + 1, j + 1), self.cores[i].distance_to(&self.cores[j]));
                k += 1;
            }
        }
        out
    }
}

/// Minimum distance among the upper edges `L1..L4`.
pub fn min_core_distance(cfg: &FourWayConfig) -> f64 {
    cfg.upper_segment_distances()
        .iter()
        .map(|p| p.1)
        .fold(f64::INFINITY, f64::min)
}

/// Closed form `R / (2·sqrt(5/2 + √2))` of the minimal edge distance.
pub fn min_core_distance_closed_form(big_r: f64) -> f64 {
    big_r / (2.0 * (2.5 + SQRT_2).sqrt())
}

/// Largest thickness allowed by the cylinder bound: `R / (4·sqrt(5 + 2√2))`.
pub fn max_thickness(big_r: f64) -> f64 {
    big_r / (4.0 * (5.0 + 2.0 * SQRT_2).sqrt())
}

fn torus_distance(a: &SquareTorusFrame, b: &SquareTorusFrame) -> f64 {
    let mut d = f64::INFINITY;
    for x in a.beams() {
        for y in b.beams() {
            d = d.min(x.distance(&y));
        }
    }
    d
}

/// Certifies the configuration: cylinder bound, exact solid disjointness and
/// pairwise Hopf linking.
pub fn verify_fourway(cfg: &FourWayConfig) -> VerificationReport {
    let mut report = VerificationReport::new();

    let dmin = min_core_distance(cfg);
    let cyl = dmin - 2.0 * SQRT_2 * cfg.small_r;
    let (ci, cj) = cfg.closest_upper_pair();
    report.push(
        CheckRecord::new("fourway.cylinder_bound", cyl > 0.0, cyl).with_detail(format!(
            "min edge distance {dmin:.10} at L{ci},L{cj}; thickness bound {:.10}",
            max_thickness(cfg.big_r)
        )),
    );

    let mut solid_margin = f64::INFINITY;
    let mut touching = Vec::new();
    let mut hopf_failures = Vec::new();
    let mut worst_residual: f64 = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let d = torus_distance(&cfg.tori[i], &cfg.tori[j]);
            solid_margin = solid_margin.min(d);
            if d <= 0.0 {
                touching.push((i + 1, j + 1));
            }
            let hopf = is_hopf_pair(&cfg.cores[i], &cfg.cores[j]).unwrap_or(false);
            if let Ok(lk) = gauss_linking_number(&cfg.cores[i], &cfg.cores[j]) {
                worst_residual = worst_residual.max(lk.gauss_residual);
            }
            if !hopf {
                hopf_failures.push((i + 1, j + 1));
            }
        }
    }
    report.push(
        CheckRecord::new("fourway.solid_disjoint", touching.is_empty(), solid_margin)
            .with_offending(touching),
    );
    let hopf_count = 6 - hopf_failures.len();
    report.push(
        CheckRecord::new(
            "fourway.hopf_pairs",
            hopf_failures.is_empty(),
            crate::linking::GAUSS_RESIDUAL_TOL - worst_residual,
        )
        .with_offending(hopf_failures)
        .with_detail(format!("{hopf_count}/6 pairs with |lk| = 1")),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn upper_edges_match_line_equations() {
        let cfg = build_fourway(1.0, 0.08).unwrap();
        let (s8, c8) = ((PI / 8.0).sin(), (PI / 8.0).cos());
        let q = SQRT_2 / 4.0;
        let want = [
            (Vec3::new(3.0 * q, 0.0, 0.0), Vec3::new(-1.0, c8, s8)),
            (Vec3::new(5.0 * q, 0.0, 0.0), Vec3::new(-1.0, -c8, s8)),
            (Vec3::new(0.0, q, 0.0), Vec3::new(-s8, -1.0, c8)),
            (Vec3::new(0.0, -q, 0.0), Vec3::new(s8, 1.0, c8)),
        ];
        for (seg, (origin, d)) in cfg.upper_segments.iter().zip(want) {
            assert!((seg.a - origin).amax() < 1e-10, "{} vs {origin}", seg.a);
            // parameter range t ∈ [0, √2 R]
            assert!((seg.b - (origin + d * SQRT_2)).amax() < 1e-10);
            assert!(seg.a.z >= 0.0 && seg.b.z >= 0.0);
        }
        // printed decimals
        let l1 = cfg.upper_segments[0].direction() / SQRT_2;
        assert!((l1 - Vec3::new(-1.0, 0.9238795, 0.3826834)).amax() < 1e-7);
        let l3 = cfg.upper_segments[2].direction() / SQRT_2;
        assert!((l3 - Vec3::new(-0.3826834, -1.0, 0.9238795)).amax() < 1e-7);
    }

    #[test]
    fn closed_forms() {
        let cfg = build_fourway(1.0, 0.08).unwrap();
        assert!((min_core_distance(&cfg) - 0.25272446).abs() < 1e-6);
        assert!((min_core_distance(&cfg) - min_core_distance_closed_form(1.0)).abs() < 1e-12);
        assert!((max_thickness(1.0) - 0.08935136).abs() < 1e-6);
        assert!((max_thickness(1.0) - min_core_distance_closed_form(1.0) / (2.0 * SQRT_2)).abs() < 1e-15);
        let cfg2 = build_fourway(2.0, 0.16).unwrap();
        assert!((min_core_distance(&cfg2) - 2.0 * min_core_distance(&cfg)).abs() < 1e-12);
    }

    #[test]
    fn closest_pair_is_l3_l4() {
        // (L1, L2) sit at distance R/2; only (L3, L4) realises the minimum
        let cfg = build_fourway(1.0, 0.08).unwrap();
        assert_eq!(cfg.closest_upper_pair(), (3, 4));
        let d = cfg.upper_segment_distances();
        assert!((d[0].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn admissible_thickness_passes() {
        let report = verify_fourway(&build_fourway(1.0, 0.08).unwrap());
        assert!(report.passed(), "{report}");
        let cyl = report.get("fourway.cylinder_bound").unwrap().margin;
        assert!((cyl - 0.02645029).abs() < 1e-6);
    }

    #[test]
    fn thick_tori_fail_cylinder_bound() {
        let report = verify_fourway(&build_fourway(1.0, 0.10).unwrap());
        assert!(!report.get("fourway.cylinder_bound").unwrap().passed);
    }

    #[test]
    fn invalid_parameters() {
        assert!(build_fourway(1.0, 1.0).is_err());
        assert!(build_fourway(1.0, 0.0).is_err());
    }
}
