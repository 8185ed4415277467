//! Physical constants and the few unit conversions used at I/O boundaries.
//!
//! Everything inside the crate is SI with angular frequencies in rad/s.
//! Hz and Torr only appear where values enter or leave the program.
//!
//! | constant | value | unit |
//! |----------|-------|------|
//! | ħ        | 1.054571817e-34 | J·s |
//! | c        | 299 792 458 | m/s |
//! | k_B      | 1.380649e-23 | J/K |
//! | σ_SB     | 5.670374419e-8 | W·m⁻²·K⁻⁴ |
//! | u        | 1.66053906660e-27 | kg |
//! | 1 Torr   | 133.322 | Pa |

use std::f64::consts::TAU;
use std::fmt;

use serde::Serialize;

use crate::error::{non_negative, Result};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const STEFAN_BOLTZMANN: f64 = 5.670_374_419e-8;
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
pub const PA_PER_TORR: f64 = 133.322;

/// The constants above as one record, for callers that want to pass them around.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
    pub sigma_sb: f64,
    pub amu: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: SPEED_OF_LIGHT,
        k_b: BOLTZMANN,
        sigma_sb: STEFAN_BOLTZMANN,
        amu: ATOMIC_MASS_UNIT,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

/// An angular frequency in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct AngularFrequency(f64);

impl AngularFrequency {
    pub const ZERO: AngularFrequency = AngularFrequency(0.0);

    pub const fn from_rad_per_s(omega: f64) -> Self {
        AngularFrequency(omega)
    }

    pub fn from_hz(f: f64) -> Self {
        AngularFrequency(TAU * f)
    }

    pub const fn rad_per_s(self) -> f64 {
        self.0
    }

    pub fn hz(self) -> f64 {
        self.0 / TAU
    }
}

impl fmt::Display for AngularFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2π×{:.6e} Hz", self.hz())
    }
}

/// A gas pressure, stored in Pa.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct Pressure(f64);

impl Pressure {
    pub fn from_pa(pa: f64) -> Result<Self> {
        non_negative("pressure", pa).map(Pressure)
    }

    pub fn from_torr(torr: f64) -> Result<Self> {
        torr_to_pa(torr).map(Pressure)
    }

    pub const fn pa(self) -> f64 {
        self.0
    }

    pub fn torr(self) -> f64 {
        self.0 / PA_PER_TORR
    }
}

pub fn torr_to_pa(torr: f64) -> Result<f64> {
    non_negative("pressure in Torr", torr).map(|p| p * PA_PER_TORR)
}

pub fn hz_to_angular(f: f64) -> AngularFrequency {
    AngularFrequency::from_hz(f)
}

pub fn angular_to_hz(omega: AngularFrequency) -> f64 {
    omega.hz()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn torr_conversion() {
        assert_eq!(torr_to_pa(0.0).unwrap(), 0.0);
        assert_eq!(torr_to_pa(1.0).unwrap(), 133.322);
        assert_relative_eq!(torr_to_pa(1e-6).unwrap(), 1.33322e-4, max_relative = 1e-15);
        assert!(torr_to_pa(-1.0).is_err());
        assert!(Pressure::from_torr(-1e-9).is_err());
    }

    #[test]
    fn hz_conversion() {
        assert_eq!(hz_to_angular(0.0).rad_per_s(), 0.0);
        assert_relative_eq!(hz_to_angular(188e3).rad_per_s(), 1.1812e6, max_relative = 1e-4);
        assert_relative_eq!(hz_to_angular(1.0 / TAU).rad_per_s(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn constants_positive() {
        let k = PhysicalConstants::CODATA;
        for v in [k.hbar, k.c, k.k_b, k.sigma_sb, k.amu] {
            assert!(v > 0.0);
        }
    }

    proptest! {
        #[test]
        fn hz_round_trip(f in -1e12f64..1e12) {
            let back = angular_to_hz(hz_to_angular(f));
            prop_assert!((back - f).abs() <= 4.0 * f64::EPSILON * f.abs());
        }

        #[test]
        fn torr_is_additive(a in 0.0f64..1e3, b in 0.0f64..1e3) {
            let lhs = torr_to_pa(a + b).unwrap();
            let rhs = torr_to_pa(a).unwrap() + torr_to_pa(b).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
        }
    }
}
