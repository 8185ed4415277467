//! Full-pipeline evaluation of a scenario into a feasibility report.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::cavity::CavityConfig;
use crate::constants::{AngularFrequency, Pressure};
use crate::environment::{bulk_temperature, decoherence_budget, gas_damping, heating_time_and_bound, DecoherenceBudget};
use crate::error::{positive, Error, Result, StageExt};
use crate::object::DielectricObject;
use crate::pulse::{find_swap_time, phonon_trace, PulseProtocol};
use crate::rod::{solve_self_trap_for, CooledDof, SelfTrapSolution};
use crate::scenario::{canonical_axis, Scenario, ShapeKind, Thresholds, TrapSection, AXES};
use crate::sphere::{assemble_optomech_params, intracavity_amplitude, OptomechParams, TrapSource};

/// Upper bound on the finesse before scattering by a sphere of radius `r`
/// dominates the mirror losses: W²/R².
pub fn scattering_finesse_bound(waist: f64, radius: f64) -> Result<f64> {
    positive("radius", radius)?;
    Ok((waist / radius).powi(2))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub shape: ShapeKind,
    /// Internal temperature under tweezer illumination, K (spheres only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bulk_temperature_k: Option<f64>,
    /// ω_t/γ (spheres only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_factor: Option<f64>,
    pub cavity: CavityReport,
    pub optomech: OptomechReport,
    pub good_cavity: GoodCavity,
    pub strong_coupling: StrongCoupling,
    pub rwa: Rwa,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scattering_finesse: Option<ScatteringFinesse>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pressure: Option<PressureCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decoherence: Option<DecoherenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_trap: Option<SelfTrapReport>,
    pub swap: SwapReport,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityReport {
    pub optical_frequency_hz: f64,
    pub kappa_hz: f64,
    pub waist_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptomechReport {
    pub omega_t_hz: f64,
    /// ξ/2π along the cooled coordinate, Hz per metre (per radian for rotation).
    pub xi_hz: f64,
    /// Ground-state size, m (rad for rotation).
    pub zero_point: f64,
    pub g0_hz: f64,
    pub photons: f64,
    /// Signed like ξ; the regime checks use |g|.
    pub g_hz: f64,
    pub static_shift_hz: f64,
    pub detuning_hz: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodCavity {
    pub ok: bool,
    pub kappa_over_omega_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrongCoupling {
    pub ok: bool,
    pub g_over_kappa: f64,
    /// Infinite without gas damping.
    pub g_over_gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rwa {
    pub ok: bool,
    pub omega_t_over_g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringFinesse {
    pub ok: bool,
    pub finesse_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureCheck {
    pub ok: bool,
    pub pressure_torr: f64,
    pub p_max_torr: f64,
    pub heating_ok: bool,
    /// t*·Γ.
    pub heating_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecoherenceReport {
    pub gamma_per_s: f64,
    pub t_star_s: f64,
    /// P_max per unit cooling rate in 1/s.
    pub pressure_bound_torr_s: f64,
    /// P_max per unit cooling rate read as an angular rate.
    pub pressure_bound_angular_torr_s: f64,
    pub lambda_per_m2_s: f64,
    pub gamma_dec_per_s: f64,
    pub gamma_plus_per_s: f64,
    pub noise_strength_m2_per_s3: f64,
}

impl From<&DecoherenceBudget> for DecoherenceReport {
    fn from(b: &DecoherenceBudget) -> Self {
        let torr = |pa: f64| pa / crate::constants::PA_PER_TORR;
        DecoherenceReport {
            gamma_per_s: b.gamma,
            t_star_s: b.t_star,
            pressure_bound_torr_s: torr(b.pressure_bound),
            pressure_bound_angular_torr_s: torr(b.pressure_bound_angular),
            lambda_per_m2_s: b.lambda,
            gamma_dec_per_s: b.gamma_dec,
            gamma_plus_per_s: b.gamma_plus,
            noise_strength_m2_per_s3: b.noise_strength,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfTrapReport {
    pub configuration: CooledDof,
    pub omega_t_z_hz: f64,
    pub omega_t_phi_hz: f64,
    pub mode1_photons: f64,
    pub mode2_photons: f64,
    pub xi_z_hz_per_m: f64,
    pub xi_phi_hz_per_rad: f64,
    pub static_shift_1_hz: f64,
    pub static_shift_2_hz: f64,
}

impl From<&SelfTrapSolution> for SelfTrapReport {
    fn from(s: &SelfTrapSolution) -> Self {
        SelfTrapReport {
            configuration: s.dof,
            omega_t_z_hz: s.omega_t_z.hz(),
            omega_t_phi_hz: s.omega_t_phi.hz(),
            mode1_photons: s.mode1_photons,
            mode2_photons: s.mode2_photons,
            xi_z_hz_per_m: s.xi_z / (2.0 * PI),
            xi_phi_hz_per_rad: s.xi_phi / (2.0 * PI),
            static_shift_1_hz: s.delta_1.hz(),
            static_shift_2_hz: s.delta_2.hz(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwapReport {
    pub g_over_kappa: f64,
    pub sigma_over_kappa: f64,
    pub gamma_over_kappa: f64,
    pub peak_phonons: f64,
    /// Absent when the oscillator never picks up a phonon.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swap_time_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swap_time_kappa: Option<f64>,
}

/// The coupling stage shared by the report and the trace command.
struct Coupled {
    cfg: CavityConfig,
    obj: DielectricObject,
    params: OptomechParams,
    self_trap: Option<SelfTrapSolution>,
    gas_gamma: Option<f64>,
}

fn couple(s: &Scenario) -> Result<Coupled> {
    let cfg = s.cavity_config().stage("cavity")?;
    let obj = s.object(&cfg).stage("object")?;
    let drive = s.drive(&cfg).stage("drive")?;
    let (params, self_trap) = match (s.object.shape, s.trap) {
        (ShapeKind::Sphere, TrapSection::Tweezer { .. }) => {
            let tw = s.tweezer().stage("trap")?.expect("tweezer section");
            let p = assemble_optomech_params(&obj, &cfg, TrapSource::Tweezer(tw), &drive).stage("coupling")?;
            (p, None)
        }
        (ShapeKind::Rod, TrapSection::SelfTrap { configuration }) => {
            let detuning = drive.detuning.resolve(AngularFrequency::ZERO);
            let field = intracavity_amplitude(drive.power, detuning, drive.laser_omega, cfg.kappa()).stage("drive")?;
            let n1 = field.alpha_abs * field.alpha_abs;
            let sol = solve_self_trap_for(&obj, &cfg, configuration, n1).stage("self-trap")?;
            let p = sol.optomech_params(&obj, detuning).stage("coupling")?;
            (p, Some(sol))
        }
        (ShapeKind::Sphere, TrapSection::SelfTrap { .. }) => {
            return Err(Error::Geometry("self-trapping is modelled for rods only".into())).stage("trap")
        }
        (ShapeKind::Rod, TrapSection::Tweezer { .. }) => {
            return Err(Error::Geometry("the tweezer trap is modelled for spheres only".into())).stage("trap")
        }
    };
    let gas_gamma = match s.object.shape {
        ShapeKind::Sphere => Some(gas_damping(&obj, &s.gas().stage("gas")?).stage("gas")?),
        ShapeKind::Rod => None,
    };
    Ok(Coupled {
        cfg,
        obj,
        params,
        self_trap,
        gas_gamma,
    })
}

fn protocol_from(s: &Scenario, c: &Coupled, g_over_kappa: Option<f64>, sigma_over_kappa: Option<f64>) -> Result<PulseProtocol> {
    let kappa = c.cfg.kappa().rad_per_s();
    let p = &s.protocol;
    let g_abs = c.params.g.rad_per_s().abs();
    let g_over_kappa = g_over_kappa.or(p.g_over_kappa).unwrap_or(g_abs / kappa);
    let sigma = sigma_over_kappa.unwrap_or(p.sigma_over_kappa);
    let gamma = p.gamma_over_kappa.unwrap_or(c.gas_gamma.unwrap_or(0.0) / kappa);
    let protocol = PulseProtocol::in_kappa_units(kappa, g_over_kappa, sigma, gamma, p.delay_kappa, p.t_max_kappa, p.points)?;
    Ok(protocol.with_rwa_ratio(c.params.omega_t.rad_per_s() / (g_over_kappa * kappa)))
}

/// The single-photon protocol implied by a scenario, with optional overrides.
pub fn scenario_protocol(s: &Scenario, g_over_kappa: Option<f64>, sigma_over_kappa: Option<f64>) -> Result<PulseProtocol> {
    let c = couple(s)?;
    protocol_from(s, &c, g_over_kappa, sigma_over_kappa).stage("protocol")
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

pub fn evaluate_scenario(s: &Scenario) -> Result<FeasibilityReport> {
    let c = couple(s)?;
    let th = s.thresholds;
    let kappa = c.cfg.kappa().rad_per_s();
    let omega_t = c.params.omega_t;
    let g = c.params.g.rad_per_s().abs();

    let mut q_factor = None;
    let mut decoherence = None;
    let mut pressure = None;
    let mut bulk_temperature_k = None;
    let mut scattering_finesse = None;
    if let ShapeKind::Sphere = s.object.shape {
        let gas = s.gas().stage("gas")?;
        let budget = decoherence_budget(&c.obj, &gas, omega_t, c.params.zm).stage("decoherence")?;
        let bound = heating_time_and_bound(&c.obj, &gas, omega_t, s.gas.cooling_rate_per_s).stage("decoherence")?;
        q_factor = Some(budget.q_factor);
        decoherence = Some(DecoherenceReport::from(&budget));
        let p_max = Pressure::from_pa(bound.p_max).stage("decoherence")?.torr();
        pressure = Some(PressureCheck {
            ok: gas.pressure.torr() * th.pressure_margin <= p_max,
            pressure_torr: gas.pressure.torr(),
            p_max_torr: p_max,
            heating_ok: bound.ratio >= th.heating_margin,
            heating_ratio: bound.ratio,
        });
        if let Some(input) = s.thermal().stage("thermal")? {
            bulk_temperature_k = Some(bulk_temperature(&c.obj, &input, c.cfg.wavelength()).stage("thermal")?);
        }
        let finesse_max = scattering_finesse_bound(c.cfg.waist(), c.obj.geometry.radius()).stage("object")?;
        scattering_finesse = Some(ScatteringFinesse {
            ok: c.cfg.finesse() <= finesse_max,
            finesse_max,
        });
    }

    let g_over_kappa = g / kappa;
    let g_over_gamma = ratio(g, c.gas_gamma.unwrap_or(0.0));
    let omega_t_over_g = ratio(omega_t.rad_per_s(), g);

    let protocol = protocol_from(s, &c, None, None).stage("protocol")?;
    let trace = phonon_trace(&protocol).stage("protocol")?;
    let swap_time = match find_swap_time(&trace) {
        Ok(t) => Some(t),
        Err(Error::NoSwap) => None,
        Err(e) => return Err(e).stage("protocol"),
    };

    Ok(FeasibilityReport {
        shape: s.object.shape,
        bulk_temperature_k,
        q_factor,
        cavity: CavityReport {
            optical_frequency_hz: c.cfg.omega_c0().hz(),
            kappa_hz: c.cfg.kappa().hz(),
            waist_m: c.cfg.waist(),
        },
        optomech: OptomechReport {
            omega_t_hz: omega_t.hz(),
            xi_hz: c.params.xi0 / (2.0 * PI),
            zero_point: c.params.zm,
            g0_hz: c.params.g0.hz(),
            photons: c.params.alpha_abs * c.params.alpha_abs,
            g_hz: c.params.g.hz(),
            static_shift_hz: c.params.delta_shift.hz(),
            detuning_hz: c.params.detuning.hz(),
            beta: c.params.beta,
        },
        good_cavity: GoodCavity {
            ok: omega_t.rad_per_s() > th.good_cavity * kappa,
            kappa_over_omega_t: kappa / omega_t.rad_per_s(),
        },
        strong_coupling: StrongCoupling {
            ok: g_over_kappa >= th.coupling_over_kappa && g_over_gamma >= th.coupling_over_gamma,
            g_over_kappa,
            g_over_gamma,
        },
        rwa: Rwa {
            ok: omega_t_over_g >= th.rwa_margin,
            omega_t_over_g,
        },
        scattering_finesse,
        pressure,
        decoherence,
        self_trap: c.self_trap.as_ref().map(SelfTrapReport::from),
        swap: SwapReport {
            g_over_kappa: protocol.g / kappa,
            sigma_over_kappa: protocol.sigma / kappa,
            gamma_over_kappa: protocol.gamma / kappa,
            peak_phonons: trace.peak_value,
            swap_time_s: swap_time,
            swap_time_kappa: swap_time.map(|t| t * kappa),
        },
        thresholds: th,
    })
}

/// One report per value, in input order.
pub fn sweep(s: &Scenario, axis: &str, values: &[f64]) -> Result<Vec<FeasibilityReport>> {
    canonical_axis(axis)?;
    values
        .par_iter()
        .map(|&v| s.with_axis(axis, v).and_then(|s| evaluate_scenario(&s)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub report: FeasibilityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub axis: &'static str,
    pub unit: &'static str,
    pub points: Vec<SweepPoint>,
}

pub fn sweep_output(s: &Scenario, axis: &str, values: &[f64]) -> Result<SweepOutput> {
    let canon = canonical_axis(axis)?;
    let unit = AXES.iter().find(|a| a.0 == canon).map(|a| a.2).unwrap_or("");
    let reports = sweep(s, axis, values)?;
    Ok(SweepOutput {
        axis: canon,
        unit,
        points: values
            .iter()
            .zip(reports)
            .map(|(&value, report)| SweepPoint { value, report })
            .collect(),
    })
}

/// Rounds to six significant figures.
pub fn round_sig6(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.5e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

fn scalar(v: &toml::Value) -> String {
    match v {
        toml::Value::Float(x) if x.is_finite() => format!("{x:.5e}"),
        toml::Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", inner.join(", "))
        }
        other => other.to_string(),
    }
}

fn is_table_array(v: &toml::Value) -> bool {
    matches!(v, toml::Value::Array(a) if !a.is_empty() && a.iter().all(toml::Value::is_table))
}

fn emit_table(out: &mut String, path: &str, table: &toml::Table) {
    for (k, v) in table {
        if !v.is_table() && !is_table_array(v) {
            out.push_str(&format!("{k} = {}\n", scalar(v)));
        }
    }
    for (k, v) in table {
        let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
        match v {
            toml::Value::Table(t) => {
                out.push_str(&format!("\n[{sub}]\n"));
                emit_table(out, &sub, t);
            }
            toml::Value::Array(items) if is_table_array(v) => {
                for item in items {
                    out.push_str(&format!("\n[[{sub}]]\n"));
                    emit_table(out, &sub, item.as_table().expect("checked"));
                }
            }
            _ => {}
        }
    }
}

/// TOML rendering with every float written to six significant figures.
pub fn to_toml_sig6<T: Serialize>(value: &T) -> Result<String> {
    let v = toml::Value::try_from(value).map_err(|e| Error::Scenario(format!("serializing report: {e}")))?;
    let table = v
        .as_table()
        .ok_or_else(|| Error::Scenario("a report must serialize to a table".into()))?;
    let mut out = String::new();
    emit_table(&mut out, "", table);
    Ok(out.trim_start().to_string())
}
