use serde::Serialize;
use std::f64::consts::PI;

use super::CavityConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModeLabel {
    Tem00,
    /// Counter-rotating LG_{ℓ0} and LG_{-ℓ0} superposed into an azimuthal
    /// standing wave cos²(ℓφ).
    LgPair { ell: u8 },
}

/// Intensity |φ₀(r)|² of a catalog cavity mode near the cavity centre.
///
/// The transverse profile is evaluated at the beam waist (Gaussian envelope
/// curvature along the axis is ignored). Normalization is arbitrary; only
/// ratios against [`ModeField::norm_integral`] matter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeField {
    pub label: ModeLabel,
    pub waist: f64,
    pub wavenumber: f64,
    /// Standing-wave shift along z: intensity ∝ cos²(k(z − z_offset)).
    pub z_offset: f64,
    /// Azimuthal shift for LG pairs: intensity ∝ cos²(ℓ(φ − phi_offset)).
    pub phi_offset: f64,
}

impl ModeField {
    pub fn tem00(cfg: &CavityConfig) -> Self {
        ModeField {
            label: ModeLabel::Tem00,
            waist: cfg.waist(),
            wavenumber: cfg.wavenumber(),
            z_offset: 0.0,
            phi_offset: 0.0,
        }
    }

    pub fn lg_pair(cfg: &CavityConfig, ell: u8) -> Result<Self> {
        if !(ell == 1 || ell == 2) {
            return Err(Error::invalid("LG order", format!("ℓ must be 1 or 2, got {ell}")));
        }
        Ok(ModeField {
            label: ModeLabel::LgPair { ell },
            waist: cfg.waist(),
            wavenumber: cfg.wavenumber(),
            z_offset: 0.0,
            phi_offset: 0.0,
        })
    }

    pub fn with_offsets(mut self, z_offset: f64, phi_offset: f64) -> Self {
        self.z_offset = z_offset;
        self.phi_offset = phi_offset;
        self
    }

    pub fn intensity(&self, p: [f64; 3]) -> f64 {
        let [x, y, z] = p;
        let axial = (self.wavenumber * (z - self.z_offset)).cos().powi(2);
        let u = 2.0 * (x * x + y * y) / (self.waist * self.waist);
        let transverse = match self.label {
            ModeLabel::Tem00 => (-u).exp(),
            ModeLabel::LgPair { ell } => {
                let phi = y.atan2(x);
                let azimuthal = (f64::from(ell) * (phi - self.phi_offset)).cos().powi(2);
                u.powi(i32::from(ell)) * (-u).exp() * azimuthal
            }
        };
        transverse * axial
    }

    /// Transverse integral ∫|φ₀|² dx dy of the profile at the waist.
    pub fn transverse_integral(&self) -> f64 {
        let w2 = self.waist * self.waist;
        match self.label {
            ModeLabel::Tem00 => PI * w2 / 2.0,
            // ∫ u^ℓ e^{-u} r dr = (W²/4)·ℓ!, and ∫ cos²(ℓφ) dφ = π
            ModeLabel::LgPair { ell } => PI * w2 / 4.0 * if ell == 1 { 1.0 } else { 2.0 },
        }
    }

    /// Mode-volume integral used as the denominator of the perturbative shift.
    ///
    /// The longitudinal factor is the full length `d`, which is the
    /// normalization under which the closed-form sphere and rod profiles hold.
    pub fn norm_integral(&self, cavity_length: f64) -> f64 {
        self.transverse_integral() * cavity_length
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, Tolerance};

    fn cfg() -> CavityConfig {
        CavityConfig::new(4e-3, 1e5, 1064e-9).unwrap()
    }

    #[test]
    fn lg_azimuthal_standing_wave() {
        let m = ModeField::lg_pair(&cfg(), 2).unwrap();
        let r = m.waist / 2.0;
        let on = m.intensity([r, 0.0, 0.0]);
        let node = m.intensity([r * (PI / 4.0).cos(), r * (PI / 4.0).sin(), 0.0]);
        assert!(on > 0.0);
        assert!(node.abs() < 1e-15 * on);
    }

    #[test]
    fn rejects_unsupported_order() {
        assert!(ModeField::lg_pair(&cfg(), 3).is_err());
    }

    #[test]
    fn transverse_integrals_match_quadrature() {
        for mode in [
            ModeField::tem00(&cfg()),
            ModeField::lg_pair(&cfg(), 1).unwrap(),
            ModeField::lg_pair(&cfg(), 2).unwrap(),
        ] {
            let w = mode.waist;
            let radial = integrate(
                |r| {
                    let u = 2.0 * r * r / (w * w);
                    let p = match mode.label {
                        ModeLabel::Tem00 => 1.0,
                        ModeLabel::LgPair { ell } => u.powi(i32::from(ell)),
                    };
                    p * (-u).exp() * r
                },
                0.0,
                8.0 * w,
                Tolerance::relative(1e-12),
            )
            .unwrap()
            .value;
            let azimuthal = match mode.label {
                ModeLabel::Tem00 => 2.0 * PI,
                ModeLabel::LgPair { .. } => PI,
            };
            let q = radial * azimuthal;
            assert!((q / mode.transverse_integral() - 1.0).abs() < 1e-10);
        }
    }
}
