//! Closed-form optomechanics of a dielectric sphere in a TEM00 mode, trapped
//! by an external tweezer.

use serde::Serialize;
use std::f64::consts::PI;

use crate::cavity::CavityConfig;
use crate::constants::{AngularFrequency, HBAR, SPEED_OF_LIGHT};
use crate::error::{non_negative, positive, Error, Result};
use crate::object::DielectricObject;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TweezerConfig {
    /// Peak intensity I₀, W/m².
    pub intensity: f64,
    /// Tweezer waist W₀, m.
    pub waist: f64,
}

impl TweezerConfig {
    pub fn new(intensity: f64, waist: f64) -> Result<Self> {
        positive("tweezer intensity", intensity)?;
        positive("tweezer waist", waist)?;
        Ok(TweezerConfig { intensity, waist })
    }
}

/// Detuning Δ = ω_c − ω_L of the cavity drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Detuning {
    /// Δ = ω_t, the lower motional sideband.
    RedSideband,
    Fixed(AngularFrequency),
}

impl Detuning {
    pub fn resolve(self, omega_t: AngularFrequency) -> AngularFrequency {
        match self {
            Detuning::RedSideband => omega_t,
            Detuning::Fixed(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriveConfig {
    /// Laser power P, W.
    pub power: f64,
    pub detuning: Detuning,
    pub laser_omega: AngularFrequency,
}

impl DriveConfig {
    pub fn new(power: f64, detuning: Detuning, laser_omega: AngularFrequency) -> Result<Self> {
        non_negative("drive power", power)?;
        positive("laser frequency", laser_omega.rad_per_s())?;
        Ok(DriveConfig {
            power,
            detuning,
            laser_omega,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntracavityField {
    /// Drive strength |E| = √(2Pκ/ħω_L), s⁻¹.
    pub e_abs: f64,
    /// |α| = √n_ph.
    pub alpha_abs: f64,
}

/// Source of the mechanical trap frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrapSource {
    Tweezer(TweezerConfig),
    /// A frequency obtained elsewhere (e.g. from two-mode self-trapping).
    Frequency(AngularFrequency),
}

/// The full coupling record for one scenario.
///
/// For rotational degrees of freedom `zm` is the angular ground-state size
/// φ_m = √(ħ/2Iω_t) and `xi0` is in rad/(s·rad).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptomechParams {
    pub omega_t: AngularFrequency,
    pub xi0: f64,
    pub zm: f64,
    pub g0: AngularFrequency,
    pub alpha_abs: f64,
    pub g: AngularFrequency,
    pub delta_shift: AngularFrequency,
    pub detuning: AngularFrequency,
    pub beta: f64,
}

impl OptomechParams {
    /// Assembles g₀ = q_m ξ₀, g = |α| g₀ and β = −q_m ξ₀ |α|²/ω_t.
    pub fn from_parts(
        omega_t: AngularFrequency,
        xi0: f64,
        zm: f64,
        alpha_abs: f64,
        delta_shift: AngularFrequency,
        detuning: AngularFrequency,
    ) -> Self {
        let g0 = zm * xi0;
        OptomechParams {
            omega_t,
            xi0,
            zm,
            g0: AngularFrequency::from_rad_per_s(g0),
            alpha_abs,
            g: AngularFrequency::from_rad_per_s(alpha_abs * g0),
            delta_shift,
            detuning,
            beta: -g0 * alpha_abs * alpha_abs / omega_t.rad_per_s(),
        }
    }
}

/// Ground-state size √(ħ/2mω) for mass (or moment of inertia) `m`.
pub fn ground_state_size(m: f64, omega_t: AngularFrequency) -> f64 {
    (HBAR / (2.0 * m * omega_t.rad_per_s())).sqrt()
}

fn sphere_shift_scale(obj: &DielectricObject, cfg: &CavityConfig) -> Result<f64> {
    let radius = obj.require_sphere("the TEM00 sphere profile")?;
    let w = cfg.waist();
    if radius >= w {
        return Err(Error::Regime(format!(
            "sphere radius {radius:e} m is not smaller than the waist {w:e} m"
        )));
    }
    Ok(obj.volume() * (obj.eps1 - 1.0) / (PI * w * w * cfg.length()))
}

/// ω_c(r) − ω_c⁰ for a sphere centred at `pos`, in rad/s.
///
/// Kept separate from [`sphere_frequency_profile`] so derivatives can be taken
/// without cancelling against the ~10¹⁵ rad/s carrier.
pub fn sphere_frequency_shift(obj: &DielectricObject, cfg: &CavityConfig, pos: [f64; 3]) -> Result<f64> {
    let scale = sphere_shift_scale(obj, cfg)?;
    let [x, y, z] = pos;
    let w2 = cfg.waist().powi(2);
    let transverse = (w2 - 2.0 * (x * x + y * y)) / w2;
    let axial = (cfg.wavenumber() * z).cos().powi(2);
    Ok(-cfg.omega_c0().rad_per_s() * scale * transverse * axial)
}

pub fn sphere_frequency_profile(
    obj: &DielectricObject,
    cfg: &CavityConfig,
    pos: [f64; 3],
) -> Result<AngularFrequency> {
    let shift = sphere_frequency_shift(obj, cfg, pos)?;
    Ok(AngularFrequency::from_rad_per_s(cfg.omega_c0().rad_per_s() + shift))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereCoupling {
    /// ∂ω_c/∂z at the equilibrium, rad/(s·m).
    pub xi0: f64,
    /// Static shift δ = ω_c(r₀) − ω_c⁰.
    pub delta_shift: AngularFrequency,
    /// Equilibrium position on axis, z₀ = cπ/4ω_c⁰.
    pub z0: f64,
}

/// ξ₀ and δ for a sphere held on axis at the maximum slope of the standing wave.
pub fn sphere_linear_coupling(obj: &DielectricObject, cfg: &CavityConfig) -> Result<SphereCoupling> {
    let scale = sphere_shift_scale(obj, cfg)?;
    let omega0 = cfg.omega_c0().rad_per_s();
    Ok(SphereCoupling {
        xi0: omega0 * omega0 * scale / SPEED_OF_LIGHT,
        delta_shift: AngularFrequency::from_rad_per_s(-0.5 * omega0 * scale),
        z0: SPEED_OF_LIGHT * PI / (4.0 * omega0),
    })
}

/// Rayleigh-regime tweezer frequency ω_t² = (6/ρc)·((ε₁−1)/(ε₁+2))·I₀/W₀².
pub fn tweezer_trap_frequency(obj: &DielectricObject, tw: &TweezerConfig) -> Result<AngularFrequency> {
    if obj.eps1 <= 1.0 {
        return Err(Error::Regime("ε₁ ≤ 1 gives no gradient trapping".into()));
    }
    let polar = (obj.eps1 - 1.0) / (obj.eps1 + 2.0);
    let omega2 = 6.0 / (obj.density * SPEED_OF_LIGHT) * polar * tw.intensity / (tw.waist * tw.waist);
    Ok(AngularFrequency::from_rad_per_s(omega2.sqrt()))
}

/// Steady-state intracavity amplitude for a drive of power `power` detuned by
/// `detuning`: |E| = √(2Pκ/ħω_L), |α| = |E|/√(Δ² + κ²).
pub fn intracavity_amplitude(
    power: f64,
    detuning: AngularFrequency,
    laser_omega: AngularFrequency,
    kappa: AngularFrequency,
) -> Result<IntracavityField> {
    non_negative("drive power", power)?;
    let k = positive("κ", kappa.rad_per_s())?;
    let wl = positive("laser frequency", laser_omega.rad_per_s())?;
    let e_abs = (2.0 * power * k / (HBAR * wl)).sqrt();
    let d = detuning.rad_per_s();
    Ok(IntracavityField {
        e_abs,
        alpha_abs: e_abs / (d * d + k * k).sqrt(),
    })
}

/// Coupling record for a tweezer- or externally-trapped sphere at z₀ = cπ/4ω_c⁰.
pub fn assemble_optomech_params(
    obj: &DielectricObject,
    cfg: &CavityConfig,
    trap: TrapSource,
    drive: &DriveConfig,
) -> Result<OptomechParams> {
    let omega_t = match trap {
        TrapSource::Tweezer(tw) => tweezer_trap_frequency(obj, &tw)?,
        TrapSource::Frequency(w) => w,
    };
    positive("trap frequency", omega_t.rad_per_s())?;
    let coupling = sphere_linear_coupling(obj, cfg)?;
    let detuning = drive.detuning.resolve(omega_t);
    let field = intracavity_amplitude(drive.power, detuning, drive.laser_omega, cfg.kappa())?;
    let zm = ground_state_size(obj.mass(), omega_t);
    Ok(OptomechParams::from_parts(
        omega_t,
        coupling.xi0,
        zm,
        field.alpha_abs,
        coupling.delta_shift,
        detuning,
    ))
}
