use std::f64::consts::SQRT_2;

use super::beam::{Aabb, Beam};
use super::primitives::{PolyLoop, Segment};
use super::similarity::{Similarity, Transform};
use super::Vec3;
use crate::error::{Error, Result};

/// Relative tolerance for geometric coincidence tests (multiplied by `R`).
pub const GEOM_TOL: f64 = 1e-9;
/// Relative slack for closed point membership (multiplied by `R`).
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Solid torus whose core is the square `center ± R·e1 ± R·e2`, thickened by
/// `r` in the sup-metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareTorusFrame {
    pub center: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
    pub big_r: f64,
    pub small_r: f64,
}

impl SquareTorusFrame {
    pub fn new(center: Vec3, e1: Vec3, e2: Vec3, big_r: f64, small_r: f64) -> Result<Self> {
        if !(small_r > 0.0 && small_r < big_r && big_r.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < r < R, got R={big_r}, r={small_r}"
            )));
        }
        let ortho = (e1.norm() - 1.0)
            .abs()
            .max((e2.norm() - 1.0).abs())
            .max(e1.dot(&e2).abs());
        if ortho > 1e-12 {
            return Err(Error::InvalidGeometry(format!(
                "torus frame not orthonormal (residual {ortho:e})"
            )));
        }
        Ok(Self {
            center,
            e1,
            e2,
            big_r,
            small_r,
        })
    }

    pub fn normal(&self) -> Vec3 {
        self.e1.cross(&self.e2)
    }

    /// Core square, starting at `center + R(-e1+e2)` and turning towards `+e1`.
    pub fn core_vertices(&self) -> [Vec3; 4] {
        let (c, a, b) = (self.center, self.e1 * self.big_r, self.e2 * self.big_r);
        [c - a + b, c + a + b, c + a - b, c - a - b]
    }

    pub fn core_loop(&self) -> PolyLoop {
        PolyLoop::new_unchecked(self.core_vertices().to_vec()).expect("square core is a valid loop")
    }

    pub fn core_segments(&self) -> [Segment; 4] {
        let v = self.core_vertices();
        [0, 1, 2, 3].map(|i| Segment {
            a: v[i],
            b: v[(i + 1) % 4],
        })
    }

    /// The four beams of the picture frame; long beams overrun the corners by `r`.
    pub fn beams(&self) -> [Beam; 4] {
        let (big, small) = (self.big_r, self.small_r);
        let frame = [self.e1, self.e2, self.normal()];
        let along_e1 = [big + small, small, small];
        let along_e2 = [small, big + small, small];
        [
            Beam {
                center: self.center + self.e2 * big,
                frame,
                half_extents: along_e1,
            },
            Beam {
                center: self.center - self.e2 * big,
                frame,
                half_extents: along_e1,
            },
            Beam {
                center: self.center + self.e1 * big,
                frame,
                half_extents: along_e2,
            },
            Beam {
                center: self.center - self.e1 * big,
                frame,
                half_extents: along_e2,
            },
        ]
    }

    pub fn contains_point(&self, x: &Vec3) -> bool {
        let tol = MEMBERSHIP_TOL * self.big_r;
        self.beams().iter().any(|b| b.contains(x, tol))
    }
}

impl Transform for SquareTorusFrame {
    fn transformed(&self, s: &Similarity) -> Self {
        SquareTorusFrame {
            center: s.apply_point(&self.center),
            e1: s.apply_direction(&self.e1),
            e2: s.apply_direction(&self.e2),
            big_r: self.big_r * s.scale(),
            small_r: self.small_r * s.scale(),
        }
    }
}

/// Two square solid tori glued at a common corner of their core squares.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleTorus {
    pub lobe1: SquareTorusFrame,
    pub lobe2: SquareTorusFrame,
}

impl DoubleTorus {
    pub fn new(lobe1: SquareTorusFrame, lobe2: SquareTorusFrame) -> Result<Self> {
        let d = DoubleTorus { lobe1, lobe2 };
        let rel = ((lobe1.big_r - lobe2.big_r).abs() / lobe1.big_r)
            .max((lobe1.small_r - lobe2.small_r).abs() / lobe1.small_r);
        if rel > 1e-12 {
            return Err(Error::InvalidGeometry(
                "double torus lobes have different R or r".into(),
            ));
        }
        let shared = d.lobe1_loop().shared_vertex_count(&d.lobe2_loop(), GEOM_TOL * lobe1.big_r);
        if shared != 1 {
            return Err(Error::InvalidGeometry(format!(
                "double torus core squares share {shared} vertices, expected 1"
            )));
        }
        Ok(d)
    }

    pub fn big_r(&self) -> f64 {
        self.lobe1.big_r
    }

    pub fn small_r(&self) -> f64 {
        self.lobe1.small_r
    }

    fn lobe1_loop(&self) -> PolyLoop {
        self.lobe1.core_loop()
    }

    fn lobe2_loop(&self) -> PolyLoop {
        self.lobe2.core_loop()
    }

    /// Core squares `(γ¹, γ²)`.
    pub fn core_loops(&self) -> (PolyLoop, PolyLoop) {
        (self.lobe1_loop(), self.lobe2_loop())
    }

    /// Lobe 1 beams followed by lobe 2 beams.
    pub fn beams(&self) -> [Beam; 8] {
        let a = self.lobe1.beams();
        let b = self.lobe2.beams();
        [a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]]
    }

    pub fn aabb(&self) -> Aabb {
        self.beams()
            .iter()
            .fold(Aabb::empty(), |acc, b| acc.union(&b.aabb()))
    }

    /// Closed membership; points within `1e-12·R` of a face count as inside.
    pub fn contains_point(&self, x: &Vec3) -> bool {
        self.lobe1.contains_point(x) || self.lobe2.contains_point(x)
    }

    /// Largest depth of `x` inside any single beam; a lower bound for the
    /// distance to the boundary of the union when positive.
    pub fn inset(&self, x: &Vec3) -> f64 {
        self.beams()
            .iter()
            .map(|b| b.inset(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Diameter of the solid (largest distance between beam corners).
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Vec3> = self.beams().iter().flat_map(|b| b.vertices()).collect();
        let mut d: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                d = d.max((p - q).norm());
            }
        }
        d
    }
}

impl Transform for DoubleTorus {
    fn transformed(&self, s: &Similarity) -> Self {
        DoubleTorus {
            lobe1: self.lobe1.transformed(s),
            lobe2: self.lobe2.transformed(s),
        }
    }
}

/// The model double torus: shared corner at the origin, lobes along `∓x1`,
/// core in the `x3 = 0` plane.
pub fn make_canonical_double_torus(big_r: f64, small_r: f64) -> Result<DoubleTorus> {
    if !(big_r.is_finite() && small_r > 0.0 && small_r < big_r) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r < R, got R={big_r}, r={small_r}"
        )));
    }
    let e1 = Vec3::new(1.0, 1.0, 0.0) / SQRT_2;
    let e2 = Vec3::new(-1.0, 1.0, 0.0) / SQRT_2;
    let hole = Vec3::new(SQRT_2 * big_r, 0.0, 0.0);
    let right = SquareTorusFrame::new(hole, e1, e2, big_r, small_r)?;
    let left = SquareTorusFrame::new(-hole, -e1, -e2, big_r, small_r)?;
    DoubleTorus::new(left, right)
}

/// Distance between two solids: minimum over the 8×8 beam pairs.
pub fn solid_distance(d1: &DoubleTorus, d2: &DoubleTorus) -> f64 {
    let b1 = d1.beams();
    let b2 = d2.beams();
    let mut best = f64::INFINITY;
    for a in &b1 {
        let aa = a.aabb();
        for b in &b2 {
            // the AABB gap never exceeds the true distance
            if aa.gap(&b.aabb()) >= best {
                continue;
            }
            best = best.min(a.distance(b));
            if best == 0.0 {
                return 0.0;
            }
        }
    }
    best
}

const MAX_SUBDIVISION_DEPTH: u32 = 14;

/// Whether `inner ⊂ outer` (closed solids).
///
/// Every inner beam corner must lie in `outer`; each inner beam is then
/// certified by bisecting it until every piece sits inside a single outer beam.
/// A piece with a corner outside every outer beam refutes containment.
pub fn contains_solid(outer: &DoubleTorus, inner: &DoubleTorus) -> bool {
    containment_margin(outer, inner).is_some()
}

/// `Some(margin)` when `inner ⊂ outer`, where `margin` is the smallest depth of
/// an inner beam corner inside `outer` (non-negative up to the membership slack).
pub fn containment_margin(outer: &DoubleTorus, inner: &DoubleTorus) -> Option<f64> {
    let outer_beams = outer.beams();
    let tol = MEMBERSHIP_TOL * outer.big_r();
    let outer_box = outer.aabb();
    let mut margin = f64::INFINITY;
    for beam in inner.beams() {
        for v in beam.vertices() {
            if !outer_box.contains(&v, tol) || !outer.contains_point(&v) {
                return None;
            }
            margin = margin.min(outer.inset(&v));
        }
        if !certify_beam_inside(&beam, &outer_beams, tol, 0) {
            return None;
        }
    }
    Some(margin)
}

fn certify_beam_inside(piece: &Beam, outer: &[Beam; 8], tol: f64, depth: u32) -> bool {
    let verts = piece.vertices();
    if outer
        .iter()
        .any(|o| verts.iter().all(|v| o.contains(v, tol)))
    {
        return true;
    }
    if verts
        .iter()
        .any(|v| !outer.iter().any(|o| o.contains(v, tol)))
    {
        return false;
    }
    if depth >= MAX_SUBDIVISION_DEPTH {
        return false;
    }
    let axis = (0..3)
        .max_by(|&i, &j| piece.half_extents[i].total_cmp(&piece.half_extents[j]))
        .expect("three axes");
    let mut half = piece.half_extents;
    half[axis] *= 0.5;
    let offset = piece.frame[axis] * half[axis];
    [piece.center - offset, piece.center + offset]
        .iter()
        .all(|&c| {
            let sub = Beam {
                center: c,
                frame: piece.frame,
                half_extents: half,
            };
            certify_beam_inside(&sub, outer, tol, depth + 1)
        })
}
