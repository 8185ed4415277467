//! Rod model in counter-rotating Laguerre–Gauss mode pairs, and two-mode
//! self-trapping of its translation or rotation.
//!
//! The rod is two opposed cake slices of radius R = W/2 meeting on the beam
//! axis. In an LG_{ℓ0} pair its resonance shift is
//!
//! ```text
//! Δω_ℓ(φ, z) = −ω_c⁰ V (ε₁ − 1) C_ℓ cos²(k(z − z_ℓ)) cos²(ℓ(φ − φ_ℓ)) / (π W² d)
//! ```
//!
//! with C₁ = 4 − 6/√e and C₂ = 4 − 13/(2√e). Two such modes, one ℓ = 1 and
//! one ℓ = 2, are offset from each other so that at the chosen equilibrium the
//! linear forces along the cooled coordinate cancel while both curvatures trap.

use serde::{Deserialize, Serialize};
use std::f64::consts::{E, FRAC_PI_4, FRAC_PI_8, PI};

use crate::cavity::{numeric_derivatives, CavityConfig, Shape};
use crate::constants::{AngularFrequency, HBAR, SPEED_OF_LIGHT};
use crate::error::{positive, Error, Result};
use crate::object::DielectricObject;
use crate::sphere::{ground_state_size, OptomechParams};

const BALANCE_TOL: f64 = 1e-10;

/// Overlap constant C_ℓ of a rod spanning 0 ≤ r ≤ W/2 with an LG_{ℓ0} pair.
pub fn lg_constant(ell: u8) -> Result<f64> {
    let inv_sqrt_e = 1.0 / E.sqrt();
    match ell {
        1 => Ok(4.0 - 6.0 * inv_sqrt_e),
        2 => Ok(4.0 - 6.5 * inv_sqrt_e),
        _ => Err(Error::invalid("LG order", format!("ℓ must be 1 or 2, got {ell}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LgPairProfile {
    pub ell: u8,
    pub offset_z: f64,
    pub offset_phi: f64,
}

impl LgPairProfile {
    pub fn new(ell: u8, offset_z: f64, offset_phi: f64) -> Result<Self> {
        lg_constant(ell)?;
        Ok(LgPairProfile {
            ell,
            offset_z,
            offset_phi,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CooledDof {
    Translation,
    Rotation,
}

/// Mode layout and equilibrium for one self-trapping configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfTrapConfig {
    pub pair1: LgPairProfile,
    pub pair2: LgPairProfile,
    pub phi0: f64,
    pub z0: f64,
    pub dof: CooledDof,
}

impl SelfTrapConfig {
    /// Mode 1 shifted by cπ/4ω_c⁰ along z; equilibrium at φ₀ = 0, z₀ = cπ/8ω_c⁰.
    pub fn translation(cfg: &CavityConfig) -> Self {
        let k = cfg.wavenumber();
        SelfTrapConfig {
            pair1: LgPairProfile { ell: 1, offset_z: FRAC_PI_4 / k, offset_phi: 0.0 },
            pair2: LgPairProfile { ell: 2, offset_z: 0.0, offset_phi: 0.0 },
            phi0: 0.0,
            z0: FRAC_PI_8 / k,
            dof: CooledDof::Translation,
        }
    }

    /// Mode 1 rotated by π/4; equilibrium at φ₀ = 7π/12, z₀ = 0.
    pub fn rotation(_cfg: &CavityConfig) -> Self {
        SelfTrapConfig {
            pair1: LgPairProfile { ell: 1, offset_z: 0.0, offset_phi: -FRAC_PI_4 },
            pair2: LgPairProfile { ell: 2, offset_z: 0.0, offset_phi: 0.0 },
            phi0: 7.0 * PI / 12.0,
            z0: 0.0,
            dof: CooledDof::Rotation,
        }
    }

    pub fn for_dof(cfg: &CavityConfig, dof: CooledDof) -> Self {
        match dof {
            CooledDof::Translation => Self::translation(cfg),
            CooledDof::Rotation => Self::rotation(cfg),
        }
    }
}

fn rod_shift_scale(obj: &DielectricObject, cfg: &CavityConfig) -> Result<f64> {
    let Shape::Rod { radius, width, .. } = obj.geometry.shape else {
        return Err(Error::Geometry("LG-pair profiles are derived for the rod model only".into()));
    };
    let half_waist = 0.5 * cfg.waist();
    if (radius - half_waist).abs() > 1e-2 * half_waist {
        return Err(Error::Regime(format!(
            "rod radius {radius:e} m must equal half the waist ({half_waist:e} m)"
        )));
    }
    if width > 1e-2 * cfg.length() {
        return Err(Error::Regime(format!("rod width {width:e} m is not small against the cavity length")));
    }
    let w = cfg.waist();
    Ok(obj.volume() * (obj.eps1 - 1.0) / (PI * w * w * cfg.length()))
}

/// ω_{c,ℓ}(φ, z) − ω_c⁰ in rad/s.
pub fn rod_frequency_shift(
    obj: &DielectricObject,
    cfg: &CavityConfig,
    pair: &LgPairProfile,
    phi: f64,
    z: f64,
) -> Result<f64> {
    let scale = rod_shift_scale(obj, cfg)?;
    let c = lg_constant(pair.ell)?;
    Ok(shift_unchecked(scale * c * cfg.omega_c0().rad_per_s(), cfg.wavenumber(), pair, phi, z))
}

#[inline]
fn shift_unchecked(amplitude: f64, k: f64, pair: &LgPairProfile, phi: f64, z: f64) -> f64 {
    let axial = (k * (z - pair.offset_z)).cos().powi(2);
    let azimuthal = (f64::from(pair.ell) * (phi - pair.offset_phi)).cos().powi(2);
    -amplitude * axial * azimuthal
}

pub fn rod_frequency_profile(
    obj: &DielectricObject,
    cfg: &CavityConfig,
    pair: &LgPairProfile,
    phi: f64,
    z: f64,
) -> Result<AngularFrequency> {
    let shift = rod_frequency_shift(obj, cfg, pair, phi, z)?;
    Ok(AngularFrequency::from_rad_per_s(cfg.omega_c0().rad_per_s() + shift))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfTrapSolution {
    pub dof: CooledDof,
    pub mode1_photons: f64,
    pub mode2_photons: f64,
    /// |α₂|²/|α₁|² fixed by the force balance along the cooled coordinate.
    pub alpha_ratio_sq: f64,
    pub omega_t_z: AngularFrequency,
    pub omega_t_phi: AngularFrequency,
    /// Mode-1 slope ∂_z ω_{c,1}, rad/(s·m).
    pub xi_z: f64,
    /// Mode-1 slope ∂_φ ω_{c,1}, rad/(s·rad).
    pub xi_phi: f64,
    pub delta_1: AngularFrequency,
    pub delta_2: AngularFrequency,
    /// |n₁ω′₁ + n₂ω′₂| / (n₁|ω′₁|) along the cooled coordinate.
    pub balance_residual: f64,
}

impl SelfTrapSolution {
    pub fn cooled_frequency(&self) -> AngularFrequency {
        match self.dof {
            CooledDof::Translation => self.omega_t_z,
            CooledDof::Rotation => self.omega_t_phi,
        }
    }

    pub fn cooled_xi(&self) -> f64 {
        match self.dof {
            CooledDof::Translation => self.xi_z,
            CooledDof::Rotation => self.xi_phi,
        }
    }

    /// Coupling record for the cooled coordinate, with mode 1 as the drive.
    ///
    /// Translation uses z_m = √(ħ/2Mω_t,z); rotation uses φ_m = √(ħ/2Iω_t,φ).
    pub fn optomech_params(&self, obj: &DielectricObject, detuning: AngularFrequency) -> Result<OptomechParams> {
        let omega_t = self.cooled_frequency();
        let inertia = match self.dof {
            CooledDof::Translation => obj.mass(),
            CooledDof::Rotation => obj.moment_of_inertia()?,
        };
        let qm = ground_state_size(inertia, omega_t);
        Ok(OptomechParams::from_parts(
            omega_t,
            self.cooled_xi(),
            qm,
            self.mode1_photons.sqrt(),
            self.delta_1,
            detuning,
        ))
    }
}

/// Solves the two-mode self-trap for a rod at `equilibrium = (φ₀, z₀)`.
///
/// `mode1_photons` is |α₁|²; |α₂|² follows from the balance condition
/// |α₁|²ω′₁ = −|α₂|²ω′₂ along the cooled coordinate. Trap curvatures come
/// from numerical second derivatives of the exact profiles.
pub fn solve_self_trap(
    obj: &DielectricObject,
    cfg: &CavityConfig,
    pair1: &LgPairProfile,
    pair2: &LgPairProfile,
    equilibrium: (f64, f64),
    dof: CooledDof,
    mode1_photons: f64,
) -> Result<SelfTrapSolution> {
    let scale = rod_shift_scale(obj, cfg)?;
    positive("mode-1 photon number", mode1_photons)?;
    let omega0 = cfg.omega_c0().rad_per_s();
    let k = cfg.wavenumber();
    let amp1 = scale * lg_constant(pair1.ell)? * omega0;
    let amp2 = scale * lg_constant(pair2.ell)? * omega0;
    let (phi0, z0) = equilibrium;

    let hz = 1e-4 * cfg.wavelength();
    let hphi = 1e-4;
    let along_z = |amp: f64, pair: &LgPairProfile| {
        numeric_derivatives(|z| shift_unchecked(amp, k, pair, phi0, z), z0, hz)
    };
    let along_phi = |amp: f64, pair: &LgPairProfile| {
        numeric_derivatives(|phi| shift_unchecked(amp, k, pair, phi, z0), phi0, hphi)
    };
    let z1 = along_z(amp1, pair1)?;
    let z2 = along_z(amp2, pair2)?;
    let p1 = along_phi(amp1, pair1)?;
    let p2 = along_phi(amp2, pair2)?;

    let (s1, s2) = match dof {
        CooledDof::Translation => (z1.first, z2.first),
        CooledDof::Rotation => (p1.first, p2.first),
    };
    let ratio = -s1 / s2;
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::NoTrapping(format!(
            "force balance has no positive photon ratio (ω′₁ = {s1:e}, ω′₂ = {s2:e})"
        )));
    }
    let n1 = mode1_photons;
    let n2 = ratio * n1;
    let balance_residual = (n1 * s1 + n2 * s2).abs() / (n1 * s1.abs());
    if balance_residual > BALANCE_TOL {
        return Err(Error::Derivative(format!("force balance residual {balance_residual:e}")));
    }

    let curv_z = n1 * z1.second + n2 * z2.second;
    let curv_phi = n1 * p1.second + n2 * p2.second;
    if !(curv_z > 0.0) {
        return Err(Error::NoTrapping(format!("axial curvature sum {curv_z:e} is not positive")));
    }
    if !(curv_phi > 0.0) {
        return Err(Error::NoTrapping(format!("azimuthal curvature sum {curv_phi:e} is not positive")));
    }
    let omega_t_z = (HBAR * curv_z / obj.mass()).sqrt();
    let omega_t_phi = (HBAR * curv_phi / obj.moment_of_inertia()?).sqrt();

    Ok(SelfTrapSolution {
        dof,
        mode1_photons: n1,
        mode2_photons: n2,
        alpha_ratio_sq: ratio,
        omega_t_z: AngularFrequency::from_rad_per_s(omega_t_z),
        omega_t_phi: AngularFrequency::from_rad_per_s(omega_t_phi),
        xi_z: z1.first,
        xi_phi: p1.first,
        delta_1: AngularFrequency::from_rad_per_s(shift_unchecked(amp1, k, pair1, phi0, z0)),
        delta_2: AngularFrequency::from_rad_per_s(shift_unchecked(amp2, k, pair2, phi0, z0)),
        balance_residual,
    })
}

/// Convenience wrapper using the standard layout for `dof`.
pub fn solve_self_trap_for(
    obj: &DielectricObject,
    cfg: &CavityConfig,
    dof: CooledDof,
    mode1_photons: f64,
) -> Result<SelfTrapSolution> {
    let layout = SelfTrapConfig::for_dof(cfg, dof);
    solve_self_trap(
        obj,
        cfg,
        &layout.pair1,
        &layout.pair2,
        (layout.phi0, layout.z0),
        dof,
        mode1_photons,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RodCoupling {
    pub dof: CooledDof,
    pub xi_z: f64,
    pub xi_phi: f64,
}

/// Closed-form mode-1 slopes at each configuration's equilibrium.
///
/// Translation: ξ_z = −(ω_c⁰)² C₁ (ε₁−1) V / (c √2 d π W²), ξ_φ = 0.
/// Rotation: ξ_φ = −ω_c⁰ C₁ √3 (ε₁−1) V / (2 d π W²), ξ_z = 0.
pub fn rod_coupling_constants(obj: &DielectricObject, cfg: &CavityConfig, dof: CooledDof) -> Result<RodCoupling> {
    let scale = rod_shift_scale(obj, cfg)?;
    let c1 = lg_constant(1)?;
    let omega0 = cfg.omega_c0().rad_per_s();
    Ok(match dof {
        CooledDof::Translation => RodCoupling {
            dof,
            xi_z: -omega0 * omega0 * c1 * scale / (SPEED_OF_LIGHT * 2f64.sqrt()),
            xi_phi: 0.0,
        },
        CooledDof::Rotation => RodCoupling {
            dof,
            xi_z: 0.0,
            xi_phi: -omega0 * c1 * 3f64.sqrt() * scale / 2.0,
        },
    })
}
