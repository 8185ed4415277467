//! Background-gas heating, damping and decoherence, and the internal
//! temperature reached under laser absorption.

use serde::Serialize;
use std::f64::consts::PI;

use crate::constants::{AngularFrequency, Pressure, ATOMIC_MASS_UNIT, BOLTZMANN, HBAR, STEFAN_BOLTZMANN};
use crate::error::{non_negative, positive, Error, Result};
use crate::object::DielectricObject;

/// Mean mass of an air molecule, in atomic mass units.
pub const AIR_MOLECULE_MASS_U: f64 = 28.6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GasEnvironment {
    pub pressure: Pressure,
    /// Gas temperature, K.
    pub temperature: f64,
    /// Molecule mass, kg.
    pub molecule_mass: f64,
}

impl GasEnvironment {
    pub fn new(pressure: Pressure, temperature: f64, molecule_mass: f64) -> Result<Self> {
        positive("gas temperature", temperature)?;
        positive("molecule mass", molecule_mass)?;
        Ok(GasEnvironment {
            pressure,
            temperature,
            molecule_mass,
        })
    }

    /// Room-temperature air at the given pressure.
    pub fn air(pressure: Pressure) -> Self {
        GasEnvironment {
            pressure,
            temperature: 300.0,
            molecule_mass: AIR_MOLECULE_MASS_U * ATOMIC_MASS_UNIT,
        }
    }

    /// v̄ = √(3k_BT/m).
    pub fn mean_velocity(&self) -> f64 {
        (3.0 * BOLTZMANN * self.temperature / self.molecule_mass).sqrt()
    }

    pub fn with_pressure(mut self, pressure: Pressure) -> Self {
        self.pressure = pressure;
        self
    }
}

/// Kinetic-theory damping rate γ = 4πR²P/(Mv̄), 1/s.
pub fn gas_damping(obj: &DielectricObject, env: &GasEnvironment) -> Result<f64> {
    let r = obj.require_sphere("gas damping")?;
    Ok(4.0 * PI * r * r * env.pressure.pa() / (obj.mass() * env.mean_velocity()))
}

/// Mechanical quality factor ω_t/γ.
pub fn quality_factor(omega_t: AngularFrequency, gamma: f64) -> Result<f64> {
    non_negative("damping rate", gamma)?;
    if gamma == 0.0 {
        return Err(Error::UnboundedQuality);
    }
    Ok(omega_t.rad_per_s() / gamma)
}

/// Energy picked up from the gas after time `t`, starting from rest:
/// ΔE(t) = M·(D/2γ)·(1 − e^{−2γt}) with D = 2k_BTγ/M.
pub fn thermalization_energy(env: &GasEnvironment, gamma: f64, t: f64) -> f64 {
    BOLTZMANN * env.temperature * -(-2.0 * gamma * t).exp_m1()
}

/// Velocity-diffusion strength D = 2k_BTγ/M, m²/s³.
pub fn noise_strength(env: &GasEnvironment, gamma: f64, mass: f64) -> f64 {
    2.0 * BOLTZMANN * env.temperature * gamma / mass
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatingBound {
    /// Time to absorb one quantum ħω_t, −log(1 − ħω/k_BT)/2γ.
    pub t_star: f64,
    /// The ħω ≪ k_BT form ħω/(2γk_BT).
    pub t_star_linear: f64,
    /// t*·Γ.
    pub ratio: f64,
    pub bound_satisfied: bool,
    /// 3MΓħω/(8mv̄πR²), Pa.
    pub p_max: f64,
    /// P_max per unit cooling rate in 1/s, Pa·s.
    pub p_max_per_rate: f64,
    /// P_max per unit Γ when Γ is read as an angular rate, Pa·s/rad.
    pub p_max_per_angular_rate: f64,
}

/// Factor by which t*Γ must exceed one for the bound to count as satisfied.
pub const HEATING_MARGIN: f64 = 10.0;

pub fn heating_time_and_bound(
    obj: &DielectricObject,
    env: &GasEnvironment,
    omega_t: AngularFrequency,
    cooling_rate: f64,
) -> Result<HeatingBound> {
    let r = obj.require_sphere("the heating bound")?;
    positive("trap frequency", omega_t.rad_per_s())?;
    non_negative("cooling rate", cooling_rate)?;
    let quantum = HBAR * omega_t.rad_per_s();
    let thermal = BOLTZMANN * env.temperature;
    if quantum >= thermal {
        return Err(Error::Regime(format!(
            "ħω_t = {quantum:.3e} J is not below k_BT = {thermal:.3e} J"
        )));
    }
    let gamma = gas_damping(obj, env)?;
    let (t_star, t_star_linear) = if gamma == 0.0 {
        (f64::INFINITY, f64::INFINITY)
    } else {
        (
            -(-quantum / thermal).ln_1p() / (2.0 * gamma),
            quantum / (2.0 * gamma * thermal),
        )
    };
    let ratio = t_star * cooling_rate;
    let per_rate = 3.0 * obj.mass() * quantum / (8.0 * env.molecule_mass * env.mean_velocity() * PI * r * r);
    Ok(HeatingBound {
        t_star,
        t_star_linear,
        ratio,
        bound_satisfied: ratio >= HEATING_MARGIN,
        p_max: per_rate * cooling_rate,
        p_max_per_rate: per_rate,
        p_max_per_angular_rate: per_rate / (2.0 * PI),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecoherenceRates {
    /// Localization rate Λ = 3mv̄PπR²/ħ², 1/(m²·s).
    pub lambda: f64,
    /// Γ_dec = Λ z_m².
    pub gamma_dec: f64,
    /// Γ₊ = 2γk_BT/ħω_t, the inverse one-quantum heating time.
    pub gamma_plus: f64,
    pub ratio: f64,
}

pub fn decoherence_rates(
    obj: &DielectricObject,
    env: &GasEnvironment,
    omega_t: AngularFrequency,
    z_m: f64,
) -> Result<DecoherenceRates> {
    let r = obj.require_sphere("the localization rate")?;
    positive("trap frequency", omega_t.rad_per_s())?;
    positive("ground-state size", z_m)?;
    let lambda = 3.0 * env.molecule_mass * env.mean_velocity() * env.pressure.pa() * PI * r * r / (HBAR * HBAR);
    let gamma_dec = lambda * z_m * z_m;
    let gamma = gas_damping(obj, env)?;
    let gamma_plus = 2.0 * gamma * BOLTZMANN * env.temperature / (HBAR * omega_t.rad_per_s());
    let ratio = if gamma_plus > 0.0 { gamma_dec / gamma_plus } else { 9.0 / 16.0 };
    Ok(DecoherenceRates {
        lambda,
        gamma_dec,
        gamma_plus,
        ratio,
    })
}

/// Everything the gas does to a trapped sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecoherenceBudget {
    pub gamma: f64,
    pub t_star: f64,
    /// Pa per unit cooling rate (1/s).
    pub pressure_bound: f64,
    /// Pa per unit angular cooling rate.
    pub pressure_bound_angular: f64,
    /// ω_t/γ; infinite in vacuum.
    pub q_factor: f64,
    pub lambda: f64,
    pub gamma_dec: f64,
    pub gamma_plus: f64,
    pub noise_strength: f64,
}

pub fn decoherence_budget(
    obj: &DielectricObject,
    env: &GasEnvironment,
    omega_t: AngularFrequency,
    z_m: f64,
) -> Result<DecoherenceBudget> {
    let gamma = gas_damping(obj, env)?;
    let heating = heating_time_and_bound(obj, env, omega_t, 0.0)?;
    let rates = decoherence_rates(obj, env, omega_t, z_m)?;
    let q_factor = match quality_factor(omega_t, gamma) {
        Ok(q) => q,
        Err(Error::UnboundedQuality) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    Ok(DecoherenceBudget {
        gamma,
        t_star: heating.t_star,
        pressure_bound: heating.p_max_per_rate,
        pressure_bound_angular: heating.p_max_per_angular_rate,
        q_factor,
        lambda: rates.lambda,
        gamma_dec: rates.gamma_dec,
        gamma_plus: rates.gamma_plus,
        noise_strength: noise_strength(env, gamma, obj.mass()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalInput {
    /// Illuminating intensity I₀, W/m².
    pub intensity: f64,
    pub emissivity: f64,
    /// Environment temperature, K.
    pub t_env: f64,
}

impl ThermalInput {
    pub fn new(intensity: f64, emissivity: f64, t_env: f64) -> Result<Self> {
        non_negative("intensity", intensity)?;
        positive("environment temperature", t_env)?;
        if !(emissivity > 0.0 && emissivity <= 1.0) {
            return Err(Error::invalid("emissivity", format!("must lie in (0, 1], got {emissivity}")));
        }
        Ok(ThermalInput {
            intensity,
            emissivity,
            t_env,
        })
    }
}

/// Absorbed-power coefficient: T⁴ − T_env⁴ = I₀ × this.
fn absorption_coefficient(obj: &DielectricObject, emissivity: f64, lambda_l: f64) -> Result<f64> {
    let r = obj.require_sphere("the bulk temperature")?;
    positive("wavelength", lambda_l)?;
    let (e1, e2) = (obj.eps1, obj.eps2);
    Ok(4.0 * PI.powi(3) * r / (emissivity * STEFAN_BOLTZMANN * lambda_l) * 3.0 * e2 / ((e1 + 2.0).powi(2) + e2 * e2))
}

/// Steady-state internal temperature where absorbed laser power equals
/// black-body emission.
pub fn bulk_temperature(obj: &DielectricObject, th: &ThermalInput, lambda_l: f64) -> Result<f64> {
    let heating = th.intensity * absorption_coefficient(obj, th.emissivity, lambda_l)?;
    if heating == 0.0 {
        return Ok(th.t_env);
    }
    Ok((heating + th.t_env.powi(4)).powf(0.25))
}

/// The intensity that raises the bulk temperature by `delta_t` above `t_env`.
pub fn intensity_for_heating(
    obj: &DielectricObject,
    emissivity: f64,
    t_env: f64,
    delta_t: f64,
    lambda_l: f64,
) -> Result<f64> {
    non_negative("temperature rise", delta_t)?;
    let th = ThermalInput::new(0.0, emissivity, t_env)?;
    let coeff = absorption_coefficient(obj, th.emissivity, lambda_l)?;
    if coeff == 0.0 {
        return Err(Error::Regime("a lossless dielectric does not heat".into()));
    }
    Ok(((t_env + delta_t).powi(4) - t_env.powi(4)) / coeff)
}
