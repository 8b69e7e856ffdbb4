//! Integer link invariants of closed polygons.
//!
//! Two independent routes are provided: the Gauss double integral, summed in
//! closed form per segment pair, and half the signed crossing count of a
//! generic projection. Filling disks of square cores give a third view
//! through signed piercing counts.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{PolyLoop, Vec3};

/// Largest accepted distance of a raw Gauss sum from the nearest integer.
pub const GAUSS_RESIDUAL_TOL: f64 = 1e-6;
/// Loops closer than this fraction of their diameter are treated as touching.
pub const CONTACT_TOL: f64 = 1e-9;
/// Directions tried by [`linking_number_by_crossings`] before giving up.
pub const CROSSING_RETRIES: usize = 16;
const CROSSING_SEED: u64 = 0x6c69_6e6b;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkMethod {
    Gauss,
    Crossing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkReport {
    pub lk: i64,
    /// Distance of the raw sum from `lk` (zero for the crossing method).
    pub gauss_residual: f64,
    pub method: LinkMethod,
    /// Number of crossings counted (crossing method only).
    pub crossings: usize,
}

/// Signed solid angle of the spherical triangle spanned by `a, b, c`
/// (Van Oosterom–Strackee).
fn triangle_solid_angle(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let (la, lb, lc) = (a.norm(), b.norm(), c.norm());
    let num = a.dot(&b.cross(c));
    let den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    2.0 * num.atan2(den)
}

/// Contribution of one segment pair to `4π·lk`: the signed area swept on the
/// sphere by the unit difference vector.
fn segment_pair_solid_angle(a0: &Vec3, a1: &Vec3, b0: &Vec3, b1: &Vec3) -> f64 {
    // the differences b - a fill a parallelogram with these corners
    let d00 = b0 - a0;
    let d01 = b1 - a0;
    let d11 = b1 - a1;
    let d10 = b0 - a1;
    triangle_solid_angle(&d00, &d01, &d11) + triangle_solid_angle(&d00, &d11, &d10)
}

fn check_separation(a: &PolyLoop, b: &PolyLoop) -> Result<()> {
    let tol = CONTACT_TOL * a.diameter().max(b.diameter());
    let distance = a.distance_to(b);
    if distance <= tol {
        return Err(Error::LoopsTooClose {
            distance,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Raw Gauss sum, summed in segment index order.
pub fn gauss_sum(a: &PolyLoop, b: &PolyLoop) -> f64 {
    let mut total = 0.0;
    for s in a.segments() {
        for t in b.segments() {
            total += segment_pair_solid_angle(&s.a, &s.b, &t.a, &t.b);
        }
    }
    -total / (4.0 * PI)
}

/// Linking number by the Gauss double integral.
pub fn gauss_linking_number(a: &PolyLoop, b: &PolyLoop) -> Result<LinkReport> {
    check_separation(a, b)?;
    let raw = gauss_sum(a, b);
    let lk = raw.round();
    let residual = (raw - lk).abs();
    if residual >= GAUSS_RESIDUAL_TOL {
        return Err(Error::NonIntegralLinking {
            raw,
            tolerance: GAUSS_RESIDUAL_TOL,
        });
    }
    Ok(LinkReport {
        lk: lk as i64,
        gauss_residual: residual,
        method: LinkMethod::Gauss,
        crossings: 0,
    })
}

fn plane_basis(dir: &Vec3) -> (Vec3, Vec3, Vec3) {
    let n = dir.normalize();
    let helper = if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let u = n.cross(&helper).normalize();
    let w = n.cross(&u);
    (u, w, n)
}

fn cross2(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn point_segment_distance_2d(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let d = (b.0 - a.0, b.1 - a.1);
    let len2 = d.0 * d.0 + d.1 * d.1;
    let t = (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / len2).clamp(0.0, 1.0);
    let q = (a.0 + t * d.0 - p.0, a.1 + t * d.1 - p.1);
    (q.0 * q.0 + q.1 * q.1).sqrt()
}

/// Linking number as half the signed crossing count of the projection onto
/// the plane orthogonal to `dir`.
///
/// Fails with [`Error::DegenerateDirection`] if an edge projects to (almost) a
/// point or a projected vertex lands on a projected edge of the other loop.
pub fn crossing_linking_number(a: &PolyLoop, b: &PolyLoop, dir: &Vec3) -> Result<LinkReport> {
    if dir.norm() == 0.0 || !dir.iter().all(|c| c.is_finite()) {
        return Err(Error::DegenerateDirection("zero projection direction".into()));
    }
    let (u, w, n) = plane_basis(dir);
    let scale = a.diameter().max(b.diameter());
    let tol = CONTACT_TOL * scale;
    let project = |p: &Vec3| (p.dot(&u), p.dot(&w));

    for lp in [a, b] {
        for s in lp.segments() {
            let d = s.direction();
            if d.cross(&n).norm() <= 1e-9 * d.norm() {
                return Err(Error::DegenerateDirection(
                    "an edge is parallel to the projection direction".into(),
                ));
            }
        }
    }
    let pa: Vec<(f64, f64)> = a.vertices().iter().map(project).collect();
    let pb: Vec<(f64, f64)> = b.vertices().iter().map(project).collect();
    for (verts, other) in [(&pa, &pb), (&pb, &pa)] {
        for &p in verts.iter() {
            for j in 0..other.len() {
                if point_segment_distance_2d(p, other[j], other[(j + 1) % other.len()]) <= tol {
                    return Err(Error::DegenerateDirection(
                        "a projected vertex touches a projected edge".into(),
                    ));
                }
            }
        }
    }

    let mut total: i64 = 0;
    let mut crossings = 0;
    for i in 0..pa.len() {
        let (p0, p1) = (pa[i], pa[(i + 1) % pa.len()]);
        let sa = a.segment(i);
        let r = (p1.0 - p0.0, p1.1 - p0.1);
        for j in 0..pb.len() {
            let (q0, q1) = (pb[j], pb[(j + 1) % pb.len()]);
            let sb = b.segment(j);
            let s = (q1.0 - q0.0, q1.1 - q0.1);
            let denom = cross2(r, s);
            if denom == 0.0 {
                continue;
            }
            let qp = (q0.0 - p0.0, q0.1 - p0.1);
            let t_a = cross2(qp, s) / denom;
            let t_b = cross2(qp, r) / denom;
            if !(0.0..=1.0).contains(&t_a) || !(0.0..=1.0).contains(&t_b) {
                continue;
            }
            let depth_a = sa.point_at(t_a).dot(&n);
            let depth_b = sb.point_at(t_b).dot(&n);
            if (depth_a - depth_b).abs() <= tol {
                return Err(Error::LoopsTooClose {
                    distance: (depth_a - depth_b).abs(),
                    tolerance: tol,
                });
            }
            let (over, under) = if depth_a > depth_b {
                (sa.direction(), sb.direction())
            } else {
                (sb.direction(), sa.direction())
            };
            let sign = over.cross(&under).dot(&n);
            total += if sign > 0.0 { 1 } else { -1 };
            crossings += 1;
        }
    }
    if total % 2 != 0 {
        return Err(Error::DegenerateDirection(format!(
            "odd signed crossing sum {total}"
        )));
    }
    Ok(LinkReport {
        lk: total / 2,
        gauss_residual: 0.0,
        method: LinkMethod::Crossing,
        crossings,
    })
}

/// Crossing count along `(0,0,1)` first, then up to [`CROSSING_RETRIES`]
/// seeded pseudo-random directions.
pub fn linking_number_by_crossings(a: &PolyLoop, b: &PolyLoop) -> Result<LinkReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(CROSSING_SEED);
    let mut dir = Vec3::new(0.0, 0.0, 1.0);
    let mut last = None;
    for _ in 0..=CROSSING_RETRIES {
        match crossing_linking_number(a, b, &dir) {
            Err(e @ Error::DegenerateDirection(_)) => last = Some(e),
            other => return other,
        }
        dir = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
    }
    Err(last.expect("at least one attempt"))
}

/// Both loops planar (hence unknotted), simple, and linked once.
pub fn is_hopf_pair(a: &PolyLoop, b: &PolyLoop) -> Result<bool> {
    let lk = gauss_linking_number(a, b)?;
    Ok(lk.lk.abs() == 1 && is_planar_simple(a) && is_planar_simple(b))
}

fn is_planar_simple(l: &PolyLoop) -> bool {
    l.is_planar(1e-9) && PolyLoop::new(l.vertices().to_vec()).is_ok()
}

/// Flat disk bounded by a planar polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarDisk {
    pub origin: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
    /// Unit normal, oriented from the boundary by the right-hand rule.
    pub normal: Vec3,
    pub boundary: PolyLoop,
}

impl PlanarDisk {
    fn local(&self, p: &Vec3) -> (f64, f64) {
        let d = p - self.origin;
        (d.dot(&self.e1), d.dot(&self.e2))
    }

    fn scale(&self) -> f64 {
        self.boundary.diameter()
    }

    /// Whether an in-plane segment meets the closed disk.
    fn meets_segment(&self, a: &Vec3, b: &Vec3, tol: f64) -> bool {
        if self.classify(a, tol) != Some(false) || self.classify(b, tol) != Some(false) {
            return true;
        }
        let (pa, pb) = (self.local(a), self.local(b));
        let poly: Vec<(f64, f64)> = self.boundary.vertices().iter().map(|v| self.local(v)).collect();
        let r = (pb.0 - pa.0, pb.1 - pa.1);
        (0..poly.len()).any(|i| {
            let (q0, q1) = (poly[i], poly[(i + 1) % poly.len()]);
            let s = (q1.0 - q0.0, q1.1 - q0.1);
            let denom = cross2(r, s);
            if denom == 0.0 {
                return false;
            }
            let qp = (q0.0 - pa.0, q0.1 - pa.1);
            let t = cross2(qp, s) / denom;
            let u = cross2(qp, r) / denom;
            (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)
        })
    }

    /// Closed point-in-polygon test for a point of the disk's plane.
    /// Returns `None` when the point is within `tol` of the boundary.
    fn classify(&self, p: &Vec3, tol: f64) -> Option<bool> {
        let q = self.local(p);
        let poly: Vec<(f64, f64)> = self.boundary.vertices().iter().map(|v| self.local(v)).collect();
        let n = poly.len();
        for i in 0..n {
            if point_segment_distance_2d(q, poly[i], poly[(i + 1) % n]) <= tol {
                return None;
            }
        }
        // winding via crossing parity
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            if (a.1 > q.1) != (b.1 > q.1) {
                let x = a.0 + (q.1 - a.1) / (b.1 - a.1) * (b.0 - a.0);
                if q.0 < x {
                    inside = !inside;
                }
            }
        }
        Some(inside)
    }
}

/// The flat square spanning a planar 4-gon.
pub fn canonical_filling_disk(square: &PolyLoop) -> Result<PlanarDisk> {
    if square.len() != 4 {
        return Err(Error::InvalidGeometry(format!(
            "filling disk needs a 4-gon, got {} vertices",
            square.len()
        )));
    }
    if !square.is_planar(1e-9) {
        return Err(Error::InvalidGeometry(format!(
            "boundary is not planar (residual {:e})",
            square.planarity_residual()
        )));
    }
    PolyLoop::new(square.vertices().to_vec())?;
    let normal = square.newell_normal().normalize();
    let origin = square.centroid();
    let e1 = (square.vertices()[0] - origin).normalize();
    let e1 = (e1 - normal * e1.dot(&normal)).normalize();
    let e2 = normal.cross(&e1);
    Ok(PlanarDisk {
        origin,
        e1,
        e2,
        normal,
        boundary: square.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piercing {
    pub point: Vec3,
    /// `+1` when the loop passes from the negative to the positive side of
    /// the disk normal.
    pub sign: i32,
}

/// Points where `l` crosses the closed disk `d`.
///
/// A vertex lying in the disk's plane counts as one crossing when its
/// neighbours sit on opposite sides and as none when they sit on the same
/// side. An edge lying in the plane, or a crossing on the disk's boundary,
/// is rejected as non-generic.
pub fn disk_piercings(d: &PlanarDisk, l: &PolyLoop) -> Result<Vec<Piercing>> {
    let tol = 1e-9 * d.scale();
    let verts = l.vertices();
    let n = verts.len();
    let heights: Vec<f64> = verts.iter().map(|v| (v - d.origin).dot(&d.normal)).collect();
    let side: Vec<i32> = heights
        .iter()
        .map(|h| if h.abs() <= tol { 0 } else if *h > 0.0 { 1 } else { -1 })
        .collect();
    for i in 0..n {
        let j = (i + 1) % n;
        if side[i] == 0 && side[j] == 0 && d.meets_segment(&verts[i], &verts[j], tol) {
            return Err(Error::NonGenericPosition(format!(
                "edge {i} lies in the disk plane and meets the disk"
            )));
        }
    }
    let Some(start) = (0..n).find(|&i| side[i] != 0) else {
        // whole loop in the plane, clear of the disk
        return Ok(Vec::new());
    };

    let mut out = Vec::new();
    let mut record = |p: Vec3, sign: i32| -> Result<()> {
        match d.classify(&p, tol) {
            None => Err(Error::NonGenericPosition(
                "loop meets the disk boundary".into(),
            )),
            Some(true) => {
                out.push(Piercing { point: p, sign });
                Ok(())
            }
            Some(false) => Ok(()),
        }
    };
    // walk once around, starting off the plane so in-plane runs are contiguous
    let mut k = 0;
    while k < n {
        let i = (start + k) % n;
        let j = (i + 1) % n;
        if side[j] == 0 {
            // run of in-plane vertices j..=end, then back off the plane
            let mut len = 1;
            while side[(j + len) % n] == 0 {
                len += 1;
            }
            let after = side[(j + len) % n];
            if after != side[i] {
                // a run longer than one vertex lies clear of the disk, so
                // the touching vertex decides inside/outside
                let p = verts[j] - d.normal * heights[j];
                record(p, after)?;
            }
            k += len + 1;
            continue;
        }
        if side[i] != side[j] {
            let t = heights[i] / (heights[i] - heights[j]);
            let p = verts[i] + (verts[j] - verts[i]) * t;
            record(p, side[j])?;
        }
        k += 1;
    }
    Ok(out)
}

pub fn signed_piercing_count(p: &[Piercing]) -> i64 {
    p.iter().map(|x| x.sign as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_canonical_double_torus, Similarity, Transform};

    fn square_a() -> PolyLoop {
        PolyLoop::new(vec![
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(-1.0, 1.0, 0.0),
            Vec3::new(-1.0, -1.0, 0.0),
            Vec3::new(1.0, -1.0, 0.0),
        ])
        .unwrap()
    }

    fn square_b() -> PolyLoop {
        PolyLoop::new(vec![
            Vec3::new(2.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 1.0),
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, -1.0),
        ])
        .unwrap()
    }

    // Midpoint quadrature of the Gauss integral, the independent reference
    // that pins the sign convention.
    fn gauss_quadrature(a: &PolyLoop, b: &PolyLoop, steps: usize) -> f64 {
        let h = 1.0 / steps as f64;
        let mut acc = 0.0;
        for s in a.segments() {
            for t in b.segments() {
                let (da, db) = (s.direction(), t.direction());
                let cross = da.cross(&db);
                for i in 0..steps {
                    let x = s.point_at((i as f64 + 0.5) * h);
                    for j in 0..steps {
                        let y = t.point_at((j as f64 + 0.5) * h);
                        let r = x - y;
                        acc += r.dot(&cross) / r.norm().powi(3) * h * h;
                    }
                }
            }
        }
        acc / (4.0 * PI)
    }

    #[test]
    fn gauss_sign_matches_quadrature() {
        let q = gauss_quadrature(&square_a(), &square_b(), 200);
        let g = gauss_linking_number(&square_a(), &square_b()).unwrap();
        assert_eq!(g.lk.abs(), 1);
        assert!((q - g.lk as f64).abs() < 1e-2, "quadrature {q}, closed form {}", g.lk);
        assert!(g.gauss_residual < 1e-9);
    }

    #[test]
    fn hopf_pair_crossings() {
        // straight down the x3-axis the second square projects onto a line,
        // so tilt slightly off it
        let dir = Vec3::new(0.01, 0.02, 1.0);
        assert!(crossing_linking_number(&square_a(), &square_b(), &Vec3::z()).is_err());
        let c = crossing_linking_number(&square_a(), &square_b(), &dir).unwrap();
        assert_eq!(c.crossings, 2);
        assert_eq!(c.lk, gauss_linking_number(&square_a(), &square_b()).unwrap().lk);
    }

    #[test]
    fn unlink_by_translation() {
        let b = square_a().transformed(&Similarity::translation_by(Vec3::new(5.0, 0.0, 0.0)));
        assert_eq!(gauss_linking_number(&square_a(), &b).unwrap().lk, 0);
        let c = crossing_linking_number(&square_a(), &b, &Vec3::z()).unwrap();
        assert_eq!((c.lk, c.crossings), (0, 0));
        assert!(!is_hopf_pair(&square_a(), &b).unwrap());
    }

    #[test]
    fn degenerate_direction_rejected() {
        let dir = square_a().segment(0).direction();
        assert!(matches!(
            crossing_linking_number(&square_a(), &square_b(), &dir),
            Err(Error::DegenerateDirection(_))
        ));
        // the retry wrapper recovers
        let lk = linking_number_by_crossings(&square_a(), &square_b()).unwrap();
        assert_eq!(lk.lk.abs(), 1);
    }

    #[test]
    fn touching_loops_rejected() {
        let b = square_a().transformed(&Similarity::translation_by(Vec3::new(2.0, 0.0, 0.0)));
        assert!(matches!(
            gauss_linking_number(&square_a(), &b),
            Err(Error::LoopsTooClose { .. })
        ));
    }

    #[test]
    fn orientation_and_symmetry() {
        let (a, b) = (square_a(), square_b());
        let ab = gauss_linking_number(&a, &b).unwrap().lk;
        assert_eq!(gauss_linking_number(&b, &a).unwrap().lk, ab);
        assert_eq!(gauss_linking_number(&a.reversed(), &b).unwrap().lk, -ab);
    }

    #[test]
    fn hopf_predicate() {
        assert!(is_hopf_pair(&square_a(), &square_b()).unwrap());
    }

    #[test]
    fn filling_disks() {
        let d = canonical_filling_disk(&square_a()).unwrap();
        assert!(d.normal.cross(&Vec3::z()).norm() < 1e-15);
        let p = disk_piercings(&d, &square_b()).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].point.norm() < 1e-15);
        let lk = gauss_linking_number(&square_a(), &square_b()).unwrap().lk;
        assert_eq!(signed_piercing_count(&p), lk);

        let far = square_a().transformed(&Similarity::translation_by(Vec3::new(5.0, 0.0, 0.0)));
        assert!(disk_piercings(&d, &far).unwrap().is_empty());

        let x0 = make_canonical_double_torus(1.0, 0.08).unwrap();
        let g1 = canonical_filling_disk(&x0.core_loops().0).unwrap();
        assert!(g1.normal.cross(&Vec3::z()).norm() < 1e-15);

        let mut bent = square_a().vertices().to_vec();
        bent[0].z = 0.1;
        let bent = PolyLoop::new(bent).unwrap();
        assert!(canonical_filling_disk(&bent).is_err());
    }

    #[test]
    fn in_plane_edge_is_non_generic() {
        let d = canonical_filling_disk(&square_a()).unwrap();
        let lying = PolyLoop::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(0.5, 0.0, 0.0),
            Vec3::new(0.5, 0.0, 1.0),
        ])
        .unwrap();
        assert!(matches!(
            disk_piercings(&d, &lying),
            Err(Error::NonGenericPosition(_))
        ));
    }

    #[test]
    fn vertex_touching_plane() {
        let d = canonical_filling_disk(&square_a()).unwrap();
        // crosses through a vertex sitting at the disk centre
        let through = PolyLoop::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(3.0, 0.5, 1.0),
            Vec3::new(3.0, 0.0, -1.0),
            Vec3::new(-0.5, 0.0, -1.0),
        ])
        .unwrap();
        let p = disk_piercings(&d, &through).unwrap();
        assert_eq!(p.len(), 1);
        // touches the plane at a vertex and bounces back
        let bounce = PolyLoop::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(3.0, 0.5, 1.0),
            Vec3::new(-0.5, 0.0, 1.0),
        ])
        .unwrap();
        assert!(disk_piercings(&d, &bounce).unwrap().is_empty());
    }
}
