//! Floating-point model of square solid tori and the similarities acting on them.
//!
//! Everything downstream is a similarity image of the canonical double torus
//! returned by [`make_canonical_double_torus`].

mod beam;
mod primitives;
mod similarity;
mod torus;

pub use beam::{Aabb, Beam, BEAM_TRIANGLES};
pub use primitives::{
    closest_segment_params, point_segment_distance, segment_distance, PolyLoop, Segment,
};
pub use similarity::{orthonormality_residual, Similarity, Transform, ORTHONORMAL_TOL};
pub use torus::{
    containment_margin, contains_solid, make_canonical_double_torus, solid_distance, DoubleTorus,
    SquareTorusFrame, GEOM_TOL, MEMBERSHIP_TOL,
};

pub type Vec3 = nalgebra::Vector3<f64>;

/// Apply a similarity to any supported geometric object.
pub fn apply_similarity<T: Transform>(s: &Similarity, x: &T) -> T {
    x.transformed(s)
}

/// Similarity composition `s1 ∘ s2`.
pub fn compose(s1: &Similarity, s2: &Similarity) -> Similarity {
    s1.compose(s2)
}
