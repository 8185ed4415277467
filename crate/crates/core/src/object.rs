use serde::Serialize;
use std::f64::consts::PI;

use crate::cavity::{BodyGeometry, Shape};
use crate::error::{non_negative, positive, Error, Result};

/// A homogeneous dielectric body with complex permittivity ε₁ + iε₂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DielectricObject {
    pub geometry: BodyGeometry,
    pub density: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl DielectricObject {
    pub fn new(geometry: BodyGeometry, density: f64, eps1: f64, eps2: f64) -> Result<Self> {
        positive("density", density)?;
        non_negative("ε₂", eps2)?;
        if !(eps1.is_finite() && eps1 >= 1.0) {
            return Err(Error::invalid("ε₁", format!("must be ≥ 1, got {eps1}")));
        }
        Ok(DielectricObject {
            geometry,
            density,
            eps1,
            eps2,
        })
    }

    /// Optical-grade fused silica at 1064 nm.
    pub fn fused_silica(geometry: BodyGeometry) -> Self {
        DielectricObject {
            geometry,
            density: 2201.0,
            eps1: 2.1,
            eps2: 2.5e-10,
        }
    }

    pub fn volume(&self) -> f64 {
        self.geometry.volume()
    }

    pub fn mass(&self) -> f64 {
        self.density * self.volume()
    }

    /// Moment of inertia of the rod model, I = R·L·M/4π.
    pub fn moment_of_inertia(&self) -> Result<f64> {
        match self.geometry.shape {
            Shape::Rod { radius, arc, .. } => Ok(radius * arc * self.mass() / (4.0 * PI)),
            Shape::Sphere { .. } => Err(Error::Geometry("moment of inertia is defined for the rod model only".into())),
        }
    }

    pub(crate) fn require_sphere(&self, op: &str) -> Result<f64> {
        match self.geometry.shape {
            Shape::Sphere { radius } => Ok(radius),
            Shape::Rod { .. } => Err(Error::Geometry(format!("{op} is derived for spheres only"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sphere_mass() {
        let obj = DielectricObject::fused_silica(BodyGeometry::sphere(250e-9).unwrap());
        assert!((obj.mass() / 1.44e-16 - 1.0).abs() < 0.01);
        assert!(obj.moment_of_inertia().is_err());
    }

    #[test]
    fn rod_inertia() {
        let geo = BodyGeometry::rod(13e-6, 50e-9, 50e-9).unwrap();
        let obj = DielectricObject::fused_silica(geo);
        let expected = 13e-6 * 50e-9 * obj.mass() / (4.0 * PI);
        assert_eq!(obj.moment_of_inertia().unwrap(), expected);
    }

    #[test]
    fn validates_material() {
        let geo = BodyGeometry::sphere(1e-7).unwrap();
        assert!(DielectricObject::new(geo, 0.0, 2.0, 0.0).is_err());
        assert!(DielectricObject::new(geo, 1.0, 0.9, 0.0).is_err());
        assert!(DielectricObject::new(geo, 1.0, 2.0, -1e-3).is_err());
        assert!(DielectricObject::new(geo, 1.0, 1.0, 0.0).is_ok());
    }
}
