use super::primitives::{segment_distance, Segment};
use super::similarity::{Similarity, Transform};
use super::Vec3;
use crate::error::{Error, Result};

/// Closed oriented rectangular box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Beam {
    pub center: Vec3,
    pub frame: [Vec3; 3],
    pub half_extents: [f64; 3],
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn empty() -> Self {
        Aabb {
            min: Vec3::repeat(f64::INFINITY),
            max: Vec3::repeat(f64::NEG_INFINITY),
        }
    }

    pub fn union(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: self.min.inf(&other.min),
            max: self.max.sup(&other.max),
        }
    }

    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        (0..3).all(|i| p[i] >= self.min[i] - tol && p[i] <= self.max[i] + tol)
    }

    /// Euclidean gap between the boxes, zero when they overlap.
    pub fn gap(&self, other: &Aabb) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            let d = (other.min[i] - self.max[i]).max(self.min[i] - other.max[i]).max(0.0);
            acc += d * d;
        }
        acc.sqrt()
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }
}

// Corner sign pattern; index bits are (x, y, z).
const CORNER_SIGNS: [[f64; 3]; 8] = [
    [-1.0, -1.0, -1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
    [1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [1.0, 1.0, 1.0],
];

const EDGES: [(usize, usize); 12] = [
    (0, 1),
    (2, 3),
    (4, 5),
    (6, 7),
    (0, 2),
    (1, 3),
    (4, 6),
    (5, 7),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];

/// Outward-facing triangles (counter-clockwise seen from outside) over the
/// corner numbering of [`Beam::vertices`].
pub const BEAM_TRIANGLES: [[usize; 3]; 12] = [
    // -x
    [0, 4, 6],
    [0, 6, 2],
    // +x
    [1, 3, 7],
    [1, 7, 5],
    // -y
    [0, 1, 5],
    [0, 5, 4],
    // +y
    [2, 6, 7],
    [2, 7, 3],
    // -z
    [0, 2, 3],
    [0, 3, 1],
    // +z
    [4, 5, 7],
    [4, 7, 6],
];

impl Beam {
    pub fn new(center: Vec3, frame: [Vec3; 3], half_extents: [f64; 3]) -> Result<Self> {
        if half_extents.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::InvalidGeometry(format!(
                "beam half extents must be positive, got {half_extents:?}"
            )));
        }
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                if (frame[i].dot(&frame[j]) - want).abs() > 1e-12 {
                    return Err(Error::InvalidGeometry("beam frame not orthonormal".into()));
                }
            }
        }
        Ok(Self {
            center,
            frame,
            half_extents,
        })
    }

    pub fn to_local(&self, p: &Vec3) -> Vec3 {
        let d = p - self.center;
        Vec3::new(
            d.dot(&self.frame[0]),
            d.dot(&self.frame[1]),
            d.dot(&self.frame[2]),
        )
    }

    pub fn vertices(&self) -> [Vec3; 8] {
        CORNER_SIGNS.map(|s| {
            self.center
                + self.frame[0] * (s[0] * self.half_extents[0])
                + self.frame[1] * (s[1] * self.half_extents[1])
                + self.frame[2] * (s[2] * self.half_extents[2])
        })
    }

    pub fn edges(&self) -> [Segment; 12] {
        let v = self.vertices();
        EDGES.map(|(i, j)| Segment { a: v[i], b: v[j] })
    }

    /// Closed membership with absolute slack `tol`.
    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        let q = self.to_local(p);
        (0..3).all(|i| q[i].abs() <= self.half_extents[i] + tol)
    }

    /// How far inside the box `p` sits (negative when outside along some axis).
    pub fn inset(&self, p: &Vec3) -> f64 {
        let q = self.to_local(p);
        (0..3)
            .map(|i| self.half_extents[i] - q[i].abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn point_distance(&self, p: &Vec3) -> f64 {
        let q = self.to_local(p);
        let mut acc = 0.0;
        for i in 0..3 {
            let d = (q[i].abs() - self.half_extents[i]).max(0.0);
            acc += d * d;
        }
        acc.sqrt()
    }

    pub fn aabb(&self) -> Aabb {
        let mut ext = Vec3::zeros();
        for i in 0..3 {
            ext += self.frame[i].abs() * self.half_extents[i];
        }
        Aabb {
            min: self.center - ext,
            max: self.center + ext,
        }
    }

    /// Whether the closed segment meets the closed box (slab clipping in the
    /// box frame).
    pub fn intersects_segment(&self, s: &Segment, tol: f64) -> bool {
        let a = self.to_local(&s.a);
        let b = self.to_local(&s.b);
        let d = b - a;
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for i in 0..3 {
            let h = self.half_extents[i] + tol;
            if d[i].abs() < 1e-300 {
                if a[i].abs() > h {
                    return false;
                }
                continue;
            }
            let mut lo = (-h - a[i]) / d[i];
            let mut hi = (h - a[i]) / d[i];
            if lo > hi {
                std::mem::swap(&mut lo, &mut hi);
            }
            t0 = t0.max(lo);
            t1 = t1.min(hi);
            if t0 > t1 {
                return false;
            }
        }
        true
    }

    /// Whether the two closed boxes share a point.
    ///
    /// Two convex polytopes intersect iff a vertex of one lies in the other or
    /// an edge of one meets the other.
    pub fn intersects(&self, other: &Beam) -> bool {
        if self.aabb().gap(&other.aabb()) > 0.0 {
            return false;
        }
        self.vertices().iter().any(|v| other.contains(v, 0.0))
            || other.vertices().iter().any(|v| self.contains(v, 0.0))
            || self.edges().iter().any(|e| other.intersects_segment(e, 0.0))
            || other.edges().iter().any(|e| self.intersects_segment(e, 0.0))
    }

    /// Euclidean distance between the closed boxes, zero when they meet.
    ///
    /// For disjoint convex polytopes the closest pair is realised by a
    /// vertex against the other solid or by an edge against an edge.
    pub fn distance(&self, other: &Beam) -> f64 {
        if self.intersects(other) {
            return 0.0;
        }
        let mut d = f64::INFINITY;
        for v in self.vertices() {
            d = d.min(other.point_distance(&v));
        }
        for v in other.vertices() {
            d = d.min(self.point_distance(&v));
        }
        let oe = other.edges();
        for e in self.edges() {
            for f in &oe {
                d = d.min(segment_distance(&e, f));
            }
        }
        d
    }
}

impl Transform for Beam {
    fn transformed(&self, s: &Similarity) -> Self {
        Beam {
            center: s.apply_point(&self.center),
            frame: self.frame.map(|e| s.apply_direction(&e)),
            half_extents: self.half_extents.map(|h| h * s.scale()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_cube(center: Vec3) -> Beam {
        Beam::new(center, [Vec3::x(), Vec3::y(), Vec3::z()], [0.5; 3]).unwrap()
    }

    #[test]
    fn triangles_face_outward() {
        let b = Beam::new(
            Vec3::new(0.2, -1.0, 3.0),
            [
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(-1.0, 0.0, 0.0),
                Vec3::new(0.0, 0.0, 1.0),
            ],
            [1.0, 2.0, 0.3],
        )
        .unwrap();
        let v = b.vertices();
        for t in BEAM_TRIANGLES {
            let n = (v[t[1]] - v[t[0]]).cross(&(v[t[2]] - v[t[0]]));
            let c = (v[t[0]] + v[t[1]] + v[t[2]]) / 3.0;
            assert!(n.dot(&(c - b.center)) > 0.0);
        }
    }

    #[test]
    fn axis_aligned_distances() {
        let a = unit_cube(Vec3::zeros());
        assert_eq!(a.distance(&unit_cube(Vec3::new(3.0, 0.0, 0.0))), 2.0);
        let d = a.distance(&unit_cube(Vec3::new(2.0, 2.0, 0.0)));
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(a.distance(&unit_cube(Vec3::new(0.5, 0.5, 0.5))), 0.0);
        assert_eq!(a.distance(&a), 0.0);
    }

    #[test]
    fn crossed_bars_intersect_without_vertex_containment() {
        let x = Beam::new(Vec3::zeros(), [Vec3::x(), Vec3::y(), Vec3::z()], [5.0, 0.1, 0.1]).unwrap();
        let y = Beam::new(Vec3::zeros(), [Vec3::x(), Vec3::y(), Vec3::z()], [0.1, 5.0, 0.1]).unwrap();
        assert!(x.intersects(&y));
        let y_up = Beam::new(Vec3::new(0.0, 0.0, 1.0), [Vec3::x(), Vec3::y(), Vec3::z()], [0.1, 5.0, 0.1]).unwrap();
        assert!((x.distance(&y_up) - 0.8).abs() < 1e-15);
    }

    // Sampling oracle: the minimum over sampled point pairs bounds the exact
    // distance from above and converges to it.
    #[test]
    fn distance_matches_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rot = nalgebra::Rotation3::from_euler_angles(
                rng.gen_range(0.0..6.3),
                rng.gen_range(0.0..6.3),
                rng.gen_range(0.0..6.3),
            );
            let m = rot.matrix();
            let frame = [m.column(0).into(), m.column(1).into(), m.column(2).into()];
            let a = unit_cube(Vec3::zeros());
            let b = Beam::new(
                Vec3::new(rng.gen_range(1.5..3.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                frame,
                [rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0)],
            )
            .unwrap();
            let exact = a.distance(&b);
            let sample = |beam: &Beam, rng: &mut ChaCha8Rng| -> Vec3 {
                // surface samples: pin one coordinate to a face
                let mut q = beam.half_extents.map(|h| rng.gen_range(-1.0..=1.0) * h);
                let f = rng.gen_range(0..3);
                q[f] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * beam.half_extents[f];
                beam.center + beam.frame[0] * q[0] + beam.frame[1] * q[1] + beam.frame[2] * q[2]
            };
            let pa: Vec<Vec3> = (0..1500).map(|_| sample(&a, &mut rng)).collect();
            let pb: Vec<Vec3> = (0..1500).map(|_| sample(&b, &mut rng)).collect();
            let mut best = f64::INFINITY;
            for p in &pa {
                for q in &pb {
                    best = best.min((p - q).norm());
                }
            }
            assert!(exact <= best + 1e-12, "exact {exact} above sampled {best}");
            assert!(best - exact < 0.05, "exact {exact} far below sampled {best}");
        }
    }
}
