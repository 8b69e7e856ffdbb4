use nalgebra::{Matrix3, Rotation3, Unit};

use super::Vec3;
use crate::error::{Error, Result};

/// Maximum entry of `RᵀR - I` accepted for a rotation matrix.
pub const ORTHONORMAL_TOL: f64 = 1e-12;

/// Orientation-preserving conformal affine map `x ↦ s·Q·x + t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Similarity {
    scale: f64,
    rotation: Matrix3<f64>,
    translation: Vec3,
}

impl Similarity {
    pub fn new(scale: f64, rotation: Matrix3<f64>, translation: Vec3) -> Result<Self> {
        Self::with_tolerance(scale, rotation, translation, ORTHONORMAL_TOL)
    }

    /// Same as [`Similarity::new`] with a caller-chosen orthonormality tolerance.
    pub fn with_tolerance(
        scale: f64,
        rotation: Matrix3<f64>,
        translation: Vec3,
        tol: f64,
    ) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "similarity scale must be positive and finite, got {scale}"
            )));
        }
        if rotation.iter().chain(translation.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidGeometry(
                "similarity has non-finite entries".into(),
            ));
        }
        let residual = orthonormality_residual(&rotation);
        if residual > tol {
            return Err(Error::InvalidGeometry(format!(
                "rotation is not orthonormal (residual {residual:e})"
            )));
        }
        let det = rotation.determinant();
        if det <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "rotation must preserve orientation (det {det})"
            )));
        }
        Ok(Self {
            scale,
            rotation,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            scale: 1.0,
            rotation: Matrix3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn scaling(scale: f64) -> Result<Self> {
        Self::new(scale, Matrix3::identity(), Vec3::zeros())
    }

    pub fn translation_by(t: Vec3) -> Self {
        Self {
            scale: 1.0,
            rotation: Matrix3::identity(),
            translation: t,
        }
    }

    /// Rigid rotation by `angle` (right-handed) about the line through
    /// `point` with direction `axis`.
    pub fn rotation_about_line(point: Vec3, axis: Vec3, angle: f64) -> Self {
        let rotation = *Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle).matrix();
        Self {
            scale: 1.0,
            rotation,
            translation: point - rotation * point,
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vec3 {
        &self.translation
    }

    pub fn apply_point(&self, x: &Vec3) -> Vec3 {
        self.rotation * x * self.scale + self.translation
    }

    /// Action on displacement vectors (no translation).
    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.rotation * v * self.scale
    }

    /// Action on unit directions: rotation only.
    pub fn apply_direction(&self, v: &Vec3) -> Vec3 {
        self.rotation * v
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity {
            scale: self.scale * other.scale,
            rotation: self.rotation * other.rotation,
            translation: self.apply_point(&other.translation),
        }
    }

    pub fn inverse(&self) -> Similarity {
        let rt = self.rotation.transpose();
        let inv_scale = 1.0 / self.scale;
        Similarity {
            scale: inv_scale,
            rotation: rt,
            translation: -(rt * self.translation) * inv_scale,
        }
    }

    pub fn apply_inverse_point(&self, y: &Vec3) -> Vec3 {
        self.rotation.transpose() * (y - self.translation) / self.scale
    }

    /// Unique fixed point of a contracting similarity, from `(I - sQ)x = t`.
    pub fn fixed_point(&self) -> Option<Vec3> {
        let a = Matrix3::identity() - self.rotation * self.scale;
        a.lu().solve(&self.translation)
    }

    pub fn orthonormality_residual(&self) -> f64 {
        orthonormality_residual(&self.rotation)
    }
}

pub fn orthonormality_residual(q: &Matrix3<f64>) -> f64 {
    (q.transpose() * q - Matrix3::identity()).amax()
}

/// Things a similarity acts on.
pub trait Transform {
    fn transformed(&self, s: &Similarity) -> Self;
}

impl Transform for Vec3 {
    fn transformed(&self, s: &Similarity) -> Self {
        s.apply_point(self)
    }
}
