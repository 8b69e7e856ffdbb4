//! Executable geometry for a self-similar genus-2 Cantor set in ℝ³.
//!
//! The set is the limit of a defining sequence of square double tori. This
//! crate builds every stage as explicit similarities of one model solid and
//! certifies the geometric facts the construction relies on: disjointness,
//! containment, Hopf linking of neighbouring core squares, the four-way
//! linking at the figure-eight crossing, and the involution symmetry. It also
//! classifies points by their escape level under the inverse-similarity
//! dynamics whose non-escaping set is the Cantor set.

pub mod chain;
pub mod error;
pub mod fourway;
pub mod geometry;
pub mod linking;
pub mod obj;
pub mod report;
pub mod scene;
pub mod sequence;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::Vec3;
