use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{positive, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Shape {
    Sphere {
        radius: f64,
    },
    /// Two opposed cake slices of radius `radius`, thickness `width` (along
    /// the cavity axis) and outer arc length `arc`, meeting on the beam axis.
    Rod {
        radius: f64,
        width: f64,
        arc: f64,
    },
}

/// Centre position (m) and azimuthal orientation (rad) of a body.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Pose {
    pub center: [f64; 3],
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BodyGeometry {
    pub shape: Shape,
    pub pose: Pose,
}

impl BodyGeometry {
    pub fn sphere(radius: f64) -> Result<Self> {
        positive("sphere radius", radius)?;
        Ok(BodyGeometry {
            shape: Shape::Sphere { radius },
            pose: Pose::default(),
        })
    }

    pub fn rod(radius: f64, width: f64, arc: f64) -> Result<Self> {
        positive("rod radius", radius)?;
        positive("rod width", width)?;
        positive("rod arc length", arc)?;
        Ok(BodyGeometry {
            shape: Shape::Rod { radius, width, arc },
            pose: Pose::default(),
        })
    }

    pub fn at(mut self, center: [f64; 3]) -> Self {
        self.pose.center = center;
        self
    }

    pub fn rotated(mut self, phi: f64) -> Self {
        self.pose.phi = phi;
        self
    }

    /// Sphere: 4πR³/3. Rod: R·L·a for the slice pair.
    pub fn volume(&self) -> f64 {
        match self.shape {
            Shape::Sphere { radius } => 4.0 / 3.0 * PI * radius.powi(3),
            Shape::Rod { radius, width, arc } => radius * arc * width,
        }
    }

    pub fn radius(&self) -> f64 {
        match self.shape {
            Shape::Sphere { radius } | Shape::Rod { radius, .. } => radius,
        }
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self.shape, Shape::Sphere { .. })
    }

    /// Half-extent along the cavity axis.
    pub(crate) fn axial_half_extent(&self) -> f64 {
        match self.shape {
            Shape::Sphere { radius } => radius,
            Shape::Rod { width, .. } => 0.5 * width,
        }
    }
}
