use std::f64::consts::PI;

use super::{BodyGeometry, CavityConfig, ModeField, Shape};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_3d, Estimate, Tolerance};

const REL_TOL: f64 = 1e-6;

/// Relative resonance shift (ω_c(q) − ω_c⁰)/ω_c⁰ with its quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftEstimate {
    pub relative: f64,
    pub error: f64,
}

/// First-order shift of a cavity resonance caused by a dielectric body:
///
/// ```text
/// Δω/ω_c⁰ = −(ε_r − 1) ∫_body |φ₀|² / (2 ∫ |φ₀|²)
/// ```
///
/// The numerator is integrated over the body in its natural coordinates
/// (spherical for spheres, cylindrical sector pairs for rods); the
/// denominator comes from [`ModeField::norm_integral`].
pub fn perturbative_shift(
    mode: &ModeField,
    body: &BodyGeometry,
    eps_r: f64,
    cfg: &CavityConfig,
) -> Result<ShiftEstimate> {
    if !(eps_r.is_finite() && eps_r >= 1.0) {
        return Err(Error::invalid("relative permittivity", format!("must be ≥ 1, got {eps_r}")));
    }
    let [cx, cy, cz] = body.pose.center;
    if !(cx.is_finite() && cy.is_finite() && cz.is_finite()) {
        return Err(Error::invalid("body position", "must be finite"));
    }
    if cz.abs() + body.axial_half_extent() > 0.5 * cfg.length() {
        return Err(Error::Regime("body extends beyond the cavity mirrors".into()));
    }
    if eps_r == 1.0 {
        return Ok(ShiftEstimate {
            relative: 0.0,
            error: 0.0,
        });
    }

    let overlap = body_overlap(mode, body)?;
    let scale = -(eps_r - 1.0) / (2.0 * mode.norm_integral(cfg.length()));
    Ok(ShiftEstimate {
        relative: scale * overlap.value,
        error: scale.abs() * overlap.error,
    })
}

/// ∫_body |φ₀(r)|² dr.
fn body_overlap(mode: &ModeField, body: &BodyGeometry) -> Result<Estimate> {
    let [cx, cy, cz] = body.pose.center;
    let tol = Tolerance::relative(REL_TOL);
    match body.shape {
        Shape::Sphere { radius } => integrate_3d(
            |r, theta, azimuth| {
                let (st, ct) = theta.sin_cos();
                let (sa, ca) = azimuth.sin_cos();
                let p = [cx + r * st * ca, cy + r * st * sa, cz + r * ct];
                mode.intensity(p) * r * r * st
            },
            (0.0, radius),
            |_| (0.0, PI),
            |_, _| (0.0, 2.0 * PI),
            tol,
        ),
        Shape::Rod { radius, width, arc } => {
            let opening = arc / radius;
            let mut total = Estimate { value: 0.0, error: 0.0 };
            for k in 0..2 {
                let mid = body.pose.phi + f64::from(k) * PI;
                let part = integrate_3d(
                    |r, phi, dz| {
                        let (s, c) = phi.sin_cos();
                        mode.intensity([cx + r * c, cy + r * s, cz + dz]) * r
                    },
                    (0.0, radius),
                    |_| (mid - 0.5 * opening, mid + 0.5 * opening),
                    |_, _| (-0.5 * width, 0.5 * width),
                    tol,
                )?;
                total.value += part.value;
                total.error += part.error;
            }
            Ok(total)
        }
    }
}
