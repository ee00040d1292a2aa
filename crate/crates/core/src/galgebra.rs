//! Vector algebra of the Galilean 3-space.
//!
//! The metric is degenerate: a vector with nonzero first component is
//! measured by that component alone, an isotropic vector (x = 0) by the
//! Euclidean metric of the yz-plane. The branch is decided by *exact*
//! comparison with zero — numerically produced vectors must be passed
//! through [`GVec3::quantized`] first, so that modelling errors surface
//! instead of being silently thresholded away inside the algebra.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Default epsilon for quantizing the isotropy-deciding component of
/// numerically produced vectors.
pub const DEFAULT_QUANT_EPS: f64 = 1e-12;

/// Affine vector of G₃. `x` is the non-isotropic component; `y`, `z` span
/// the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GVec3 {
    pub const ZERO: GVec3 = GVec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        GVec3 { x, y, z }
    }

    /// An isotropic vector has vanishing first component (exact test).
    pub fn is_isotropic(&self) -> bool {
        self.x == 0.0
    }

    /// Zeroes the x component when `|x| <= eps`, committing the vector to
    /// the isotropic branch of the metric.
    pub fn quantized(self, eps: f64) -> Self {
        if self.x != 0.0 && self.x.abs() <= eps {
            GVec3 { x: 0.0, ..self }
        } else {
            self
        }
    }

    pub fn scale(self, k: f64) -> Self {
        GVec3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for GVec3 {
    type Output = GVec3;
    fn add(self, o: GVec3) -> GVec3 {
        GVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for GVec3 {
    type Output = GVec3;
    fn sub(self, o: GVec3) -> GVec3 {
        GVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for GVec3 {
    type Output = GVec3;
    fn neg(self) -> GVec3 {
        GVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for GVec3 {
    type Output = GVec3;
    fn mul(self, k: f64) -> GVec3 {
        self.scale(k)
    }
}

/// Galilean scalar product: `x1*y1` when either argument is non-isotropic,
/// the Euclidean yz product when both are isotropic.
pub fn galilean_dot(a: GVec3, b: GVec3) -> f64 {
    if a.x != 0.0 || b.x != 0.0 {
        a.x * b.x
    } else {
        a.y * b.y + a.z * b.z
    }
}

/// Galilean cross product: the formal determinant with first row
/// `(0, e2, e3)`. The result is always isotropic.
pub fn galilean_cross(a: GVec3, b: GVec3) -> GVec3 {
    GVec3::new(0.0, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x)
}

/// Galilean norm: `|x|` for non-isotropic vectors, the Euclidean yz length
/// otherwise. Always nonnegative.
pub fn galilean_norm(a: GVec3) -> f64 {
    if a.x != 0.0 {
        a.x.abs()
    } else {
        a.y.hypot(a.z)
    }
}

/// Euclidean length over all three components. Not a Galilean invariant;
/// used for residual measurements where a drifting x component must not
/// hide a yz mismatch.
pub fn euclid_norm(a: GVec3) -> f64 {
    (a.x * a.x + a.y * a.y + a.z * a.z).sqrt()
}

/// The elliptic involution on the direction space of the absolute line:
/// `(0, y, z) -> (0, z, -y)`. Defined only for isotropic vectors.
pub fn elliptic_involution(v: GVec3) -> Result<GVec3> {
    if !v.is_isotropic() {
        return Err(Error::NonIsotropicInput { x: v.x });
    }
    Ok(GVec3::new(0.0, v.z, -v.y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_branches() {
        assert_eq!(galilean_dot(GVec3::new(1.0, 2.0, 3.0), GVec3::new(4.0, 5.0, 6.0)), 4.0);
        assert_eq!(galilean_dot(GVec3::new(0.0, 1.0, 2.0), GVec3::new(0.0, 3.0, 4.0)), 11.0);
        // mixed case: one isotropic argument still selects the x branch
        assert_eq!(galilean_dot(GVec3::new(0.0, 2.0, 3.0), GVec3::new(5.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(
            galilean_cross(GVec3::new(1.0, 0.0, 0.0), GVec3::new(0.0, 1.0, 0.0)),
            GVec3::new(0.0, 0.0, 1.0)
        );
        assert_eq!(
            galilean_cross(GVec3::new(1.0, 2.0, 3.0), GVec3::new(2.0, 4.0, 6.0)),
            GVec3::ZERO
        );
        assert_eq!(
            galilean_cross(GVec3::new(1.0, 5.0, 7.0), GVec3::new(0.0, 3.0, 4.0)),
            GVec3::new(0.0, -4.0, 3.0)
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(galilean_norm(GVec3::new(3.0, 1.0, 2.0)), 3.0);
        assert_eq!(galilean_norm(GVec3::new(0.0, 3.0, 4.0)), 5.0);
        assert_eq!(galilean_norm(GVec3::new(-2.0, 0.0, 0.0)), 2.0);
    }

    #[test]
    fn involution_examples() {
        assert_eq!(
            elliptic_involution(GVec3::new(0.0, 2.0, 5.0)).unwrap(),
            GVec3::new(0.0, 5.0, -2.0)
        );
        assert_eq!(
            elliptic_involution(GVec3::new(0.0, 1.0, 0.0)).unwrap(),
            GVec3::new(0.0, 0.0, -1.0)
        );
        assert!(matches!(
            elliptic_involution(GVec3::new(1.0, 2.0, 3.0)),
            Err(Error::NonIsotropicInput { .. })
        ));
    }

    #[test]
    fn quantization_commits_to_isotropic_branch() {
        let v = GVec3::new(1e-15, 1.0, 0.0);
        assert!(!v.is_isotropic());
        assert!(v.quantized(DEFAULT_QUANT_EPS).is_isotropic());
        // values above eps survive
        assert!(!GVec3::new(1e-9, 1.0, 0.0).quantized(DEFAULT_QUANT_EPS).is_isotropic());
    }
}
