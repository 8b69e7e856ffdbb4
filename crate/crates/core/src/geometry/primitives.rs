use super::similarity::{Similarity, Transform};
use super::Vec3;
use crate::error::{Error, Result};

/// Closed straight segment `a → b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Vec3,
    pub b: Vec3,
}

impl Segment {
    pub fn new(a: Vec3, b: Vec3) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGeometry("degenerate segment".into()));
        }
        Ok(Self { a, b })
    }

    pub fn direction(&self) -> Vec3 {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.direction().norm()
    }

    pub fn point_at(&self, t: f64) -> Vec3 {
        self.a + self.direction() * t
    }
}

impl Transform for Segment {
    fn transformed(&self, s: &Similarity) -> Self {
        Segment {
            a: s.apply_point(&self.a),
            b: s.apply_point(&self.b),
        }
    }
}

/// Closed polygon; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyLoop {
    vertices: Vec<Vec3>,
}

impl PolyLoop {
    /// Builds a loop, checking vertex count, distinct consecutive vertices and
    /// simplicity (non-adjacent edges stay `1e-9·diameter` apart).
    pub fn new(vertices: Vec<Vec3>) -> Result<Self> {
        let lp = Self::new_unchecked(vertices)?;
        let tol = 1e-9 * lp.diameter();
        let n = lp.vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (si, sj) = (lp.segment(i), lp.segment(j));
                if segment_distance(&si, &sj) <= tol {
                    return Err(Error::InvalidGeometry(format!(
                        "loop is not simple: edges {i} and {j} meet"
                    )));
                }
            }
        }
        // adjacent edges folding back onto each other
        for i in 0..n {
            let u = lp.segment(i).direction();
            let v = lp.segment((i + 1) % n).direction();
            if u.cross(&v).norm() <= 1e-12 * u.norm() * v.norm() && u.dot(&v) < 0.0 {
                return Err(Error::InvalidGeometry(format!(
                    "loop is not simple: edges {i} and {} fold back",
                    (i + 1) % n
                )));
            }
        }
        Ok(lp)
    }

    /// Only checks vertex count and distinct consecutive vertices.
    pub fn new_unchecked(vertices: Vec<Vec3>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidGeometry(format!(
                "loop needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| v.iter().any(|c| !c.is_finite())) {
            return Err(Error::InvalidGeometry("non-finite loop vertex".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidGeometry(format!(
                    "loop vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i`, from vertex `i` to vertex `i+1` (cyclically).
    pub fn segment(&self, i: usize) -> Segment {
        let n = self.vertices.len();
        Segment {
            a: self.vertices[i % n],
            b: self.vertices[(i + 1) % n],
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.vertices.len()).map(move |i| self.segment(i))
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn centroid(&self) -> Vec3 {
        self.vertices.iter().sum::<Vec3>() / self.vertices.len() as f64
    }

    /// Newell normal; its length is twice the projected area.
    pub fn newell_normal(&self) -> Vec3 {
        let n = self.vertices.len();
        let mut acc = Vec3::zeros();
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            acc += p.cross(&q);
        }
        acc
    }

    /// Largest distance of a vertex from the best-fit plane through the
    /// centroid with the Newell normal.
    pub fn planarity_residual(&self) -> f64 {
        let nrm = self.newell_normal();
        let len = nrm.norm();
        if len == 0.0 {
            return f64::INFINITY;
        }
        let n = nrm / len;
        let c = self.centroid();
        self.vertices
            .iter()
            .map(|v| (v - c).dot(&n).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_planar(&self, rel_tol: f64) -> bool {
        self.planarity_residual() <= rel_tol * self.diameter()
    }

    pub fn reversed(&self) -> PolyLoop {
        let mut v = self.vertices.clone();
        v.reverse();
        PolyLoop { vertices: v }
    }

    /// Number of vertices shared with `other` within `tol`.
    pub fn shared_vertex_count(&self, other: &PolyLoop, tol: f64) -> usize {
        self.vertices
            .iter()
            .filter(|a| other.vertices.iter().any(|b| (*a - b).norm() <= tol))
            .count()
    }

    /// Minimum distance between the two polygonal curves.
    pub fn distance_to(&self, other: &PolyLoop) -> f64 {
        let mut d = f64::INFINITY;
        for s in self.segments() {
            for t in other.segments() {
                d = d.min(segment_distance(&s, &t));
            }
        }
        d
    }
}

impl Transform for PolyLoop {
    fn transformed(&self, s: &Similarity) -> Self {
        PolyLoop {
            vertices: self.vertices.iter().map(|v| s.apply_point(v)).collect(),
        }
    }
}

/// Closest points between two segments, returned as parameters `(s, t)`
/// with `s` on `p` and `t` on `q`.
pub fn closest_segment_params(p: &Segment, q: &Segment) -> (f64, f64) {
    let d1 = p.direction();
    let d2 = q.direction();
    let r = p.a - q.a;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let c = d1.dot(&r);
    let b = d1.dot(&d2);
    let denom = a * e - b * b;

    // parallel (or nearly): pick s = 0 and let the clamping below do the rest
    let mut s = if denom > 1e-14 * a * e {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    (s, t)
}

/// Exact (up to rounding) minimum distance between two closed segments.
pub fn segment_distance(p: &Segment, q: &Segment) -> f64 {
    let (s, t) = closest_segment_params(p, q);
    let d = (p.point_at(s) - q.point_at(t)).norm();
    // endpoint fallbacks guard the nearly-parallel branch
    d.min(point_segment_distance(&p.a, q))
        .min(point_segment_distance(&p.b, q))
        .min(point_segment_distance(&q.a, p))
        .min(point_segment_distance(&q.b, p))
}

pub fn point_segment_distance(x: &Vec3, s: &Segment) -> f64 {
    let d = s.direction();
    let t = ((x - s.a).dot(&d) / d.dot(&d)).clamp(0.0, 1.0);
    (x - s.point_at(t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: [f64; 3], b: [f64; 3]) -> Segment {
        Segment::new(Vec3::from(a), Vec3::from(b)).unwrap()
    }

    #[test]
    fn crossing_segments() {
        let p = seg([-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let q = seg([0.0, -1.0, 0.5], [0.0, 1.0, 0.5]);
        assert!((segment_distance(&p, &q) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parallel_and_collinear_segments() {
        let p = seg([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let q = seg([2.0, 0.0, 0.0], [3.0, 0.0, 0.0]);
        assert!((segment_distance(&p, &q) - 1.0).abs() < 1e-15);
        let q = seg([0.5, 2.0, 0.0], [3.0, 2.0, 0.0]);
        assert!((segment_distance(&p, &q) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_regions() {
        let p = seg([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let q = seg([2.0, 1.0, 0.0], [2.0, 3.0, 0.0]);
        assert!((segment_distance(&p, &q) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn loop_validation() {
        let sq = vec![
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(-1.0, 1.0, 0.0),
            Vec3::new(-1.0, -1.0, 0.0),
            Vec3::new(1.0, -1.0, 0.0),
        ];
        let lp = PolyLoop::new(sq.clone()).unwrap();
        assert!(lp.is_planar(1e-9));
        assert!((lp.diameter() - 8f64.sqrt()).abs() < 1e-15);

        let bowtie = vec![sq[0], sq[2], sq[1], sq[3]];
        assert!(PolyLoop::new(bowtie).is_err());
        assert!(PolyLoop::new(vec![sq[0], sq[1]]).is_err());
        assert!(PolyLoop::new(vec![sq[0], sq[0], sq[1]]).is_err());
    }
}
