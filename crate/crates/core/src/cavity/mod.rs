//! Cavity geometry and the perturbative resonance shift of a dielectric body.

mod body;
mod diff;
mod mode;
mod shift;

pub use body::{BodyGeometry, Pose, Shape};
pub use diff::{numeric_derivatives, Derivatives};
pub use mode::{ModeField, ModeLabel};
pub use shift::{perturbative_shift, ShiftEstimate};

use serde::Serialize;
use std::f64::consts::{PI, TAU};

use crate::constants::{AngularFrequency, SPEED_OF_LIGHT};
use crate::error::{positive, Error, Result};

/// A two-mirror cavity of length `d` and finesse `F` resonant at `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityConfig {
    length: f64,
    finesse: f64,
    wavelength: f64,
}

/// Quantities that follow from a [`CavityConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityDerived {
    pub omega_c0: AngularFrequency,
    pub kappa: AngularFrequency,
    /// Confocal waist at the cavity centre, m.
    pub waist: f64,
}

impl CavityConfig {
    pub fn new(length: f64, finesse: f64, wavelength: f64) -> Result<Self> {
        positive("cavity length", length)?;
        positive("wavelength", wavelength)?;
        if !(finesse.is_finite() && finesse > 1.0) {
            return Err(Error::invalid("finesse", format!("must exceed 1, got {finesse}")));
        }
        Ok(CavityConfig {
            length,
            finesse,
            wavelength,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn finesse(&self) -> f64 {
        self.finesse
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Empty-cavity resonance ω_c⁰ = 2πc/λ.
    pub fn omega_c0(&self) -> AngularFrequency {
        AngularFrequency::from_rad_per_s(TAU * SPEED_OF_LIGHT / self.wavelength)
    }

    /// Field decay rate κ = cπ/(2Fd).
    pub fn kappa(&self) -> AngularFrequency {
        AngularFrequency::from_rad_per_s(SPEED_OF_LIGHT * PI / (2.0 * self.finesse * self.length))
    }

    /// Confocal waist W = √(λd/2π).
    pub fn waist(&self) -> f64 {
        (self.wavelength * self.length / TAU).sqrt()
    }

    /// Standing-wave wavenumber ω_c⁰/c.
    pub fn wavenumber(&self) -> f64 {
        TAU / self.wavelength
    }

    pub fn derived(&self) -> CavityDerived {
        CavityDerived {
            omega_c0: self.omega_c0(),
            kappa: self.kappa(),
            waist: self.waist(),
        }
    }
}

pub fn derived_cavity_quantities(cfg: &CavityConfig) -> CavityDerived {
    cfg.derived()
}
