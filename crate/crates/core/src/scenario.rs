//! Scenario documents.
//!
//! A scenario is a TOML file with the sections `cavity`, `object`, `trap`,
//! `drive`, and optionally `gas`, `thermal`, `protocol` and `thresholds`.
//! Every key carries its unit in the name; frequencies are in Hz and
//! pressures in Torr, and are converted to rad/s and Pa on the way in.
//!
//! ```toml
//! [cavity]
//! length_m = 4e-3
//! finesse = 1e5
//! wavelength_m = 1064e-9
//!
//! [object]
//! shape = "sphere"
//! radius_m = 250e-9
//!
//! [trap]
//! kind = "tweezer"
//! intensity_w_m2 = 2e12
//! waist_m = 1e-6
//!
//! [drive]
//! power_w = 5e-4
//!
//! [gas]
//! pressure_torr = 1e-6
//! ```

use serde::{Deserialize, Serialize};

use crate::cavity::{BodyGeometry, CavityConfig};
use crate::constants::{AngularFrequency, Pressure, ATOMIC_MASS_UNIT};
use crate::environment::{GasEnvironment, ThermalInput, AIR_MOLECULE_MASS_U};
use crate::error::{Error, Result};
use crate::object::DielectricObject;
use crate::rod::CooledDof;
use crate::sphere::{Detuning, DriveConfig, TweezerConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub cavity: CavitySection,
    pub object: ObjectSection,
    pub trap: TrapSection,
    pub drive: DriveSection,
    #[serde(default)]
    pub gas: GasSection,
    #[serde(default)]
    pub thermal: ThermalSection,
    #[serde(default)]
    pub protocol: ProtocolSection,
    #[serde(default)]
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySection {
    pub length_m: f64,
    pub finesse: f64,
    pub wavelength_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Sphere,
    Rod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSection {
    pub shape: ShapeKind,
    /// Required for spheres; defaults to half the cavity waist for rods.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_m: Option<f64>,
    #[serde(default = "silica_density")]
    pub density_kg_m3: f64,
    #[serde(default = "silica_eps1")]
    pub eps1: f64,
    #[serde(default = "silica_eps2")]
    pub eps2: f64,
}

fn silica_density() -> f64 {
    2201.0
}
fn silica_eps1() -> f64 {
    2.1
}
fn silica_eps2() -> f64 {
    2.5e-10
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TrapSection {
    Tweezer { intensity_w_m2: f64, waist_m: f64 },
    SelfTrap { configuration: CooledDof },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSection {
    /// Power into the coupling mode (mode 1 for a self-trapped rod).
    pub power_w: f64,
    /// Δ/2π. Defaults to the red sideband for spheres and to resonance for rods.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detuning_hz: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasSection {
    #[serde(default = "default_pressure")]
    pub pressure_torr: f64,
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    #[serde(default = "default_molecule_mass")]
    pub molecule_mass_u: f64,
    /// Γ used in the ground-state cooling bound, 1/s.
    #[serde(default = "default_cooling_rate")]
    pub cooling_rate_per_s: f64,
}

fn default_pressure() -> f64 {
    1e-6
}
fn default_temperature() -> f64 {
    300.0
}
fn default_molecule_mass() -> f64 {
    AIR_MOLECULE_MASS_U
}
fn default_cooling_rate() -> f64 {
    1e5
}

impl Default for GasSection {
    fn default() -> Self {
        GasSection {
            pressure_torr: default_pressure(),
            temperature_k: default_temperature(),
            molecule_mass_u: default_molecule_mass(),
            cooling_rate_per_s: default_cooling_rate(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalSection {
    /// Defaults to the tweezer intensity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intensity_w_m2: Option<f64>,
    #[serde(default = "default_emissivity")]
    pub emissivity: f64,
    #[serde(default = "default_temperature")]
    pub t_env_k: f64,
}

fn default_emissivity() -> f64 {
    1.0
}

impl Default for ThermalSection {
    fn default() -> Self {
        ThermalSection {
            intensity_w_m2: None,
            emissivity: default_emissivity(),
            t_env_k: default_temperature(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    /// Defaults to the coupling computed for the scenario.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_over_kappa: Option<f64>,
    #[serde(default = "default_sigma")]
    pub sigma_over_kappa: f64,
    /// Defaults to the gas damping rate (zero for rods).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_over_kappa: Option<f64>,
    #[serde(default = "default_delay")]
    pub delay_kappa: f64,
    #[serde(default = "default_t_max")]
    pub t_max_kappa: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_sigma() -> f64 {
    5.6
}
fn default_delay() -> f64 {
    5.0
}
fn default_t_max() -> f64 {
    20.0
}
fn default_points() -> usize {
    2000
}

impl Default for ProtocolSection {
    fn default() -> Self {
        ProtocolSection {
            g_over_kappa: None,
            sigma_over_kappa: default_sigma(),
            gamma_over_kappa: None,
            delay_kappa: default_delay(),
            t_max_kappa: default_t_max(),
            points: default_points(),
        }
    }
}

/// Factors that turn the qualitative regime inequalities into flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// Good cavity: ω_t > this × κ.
    #[serde(default = "one")]
    pub good_cavity: f64,
    /// Strong coupling: g ≥ this × κ.
    #[serde(default = "half")]
    pub coupling_over_kappa: f64,
    /// Strong coupling: g ≥ this × γ.
    #[serde(default = "ten")]
    pub coupling_over_gamma: f64,
    /// Pressure: P ≤ P_max / this.
    #[serde(default = "ten")]
    pub pressure_margin: f64,
    /// Heating: t*·Γ ≥ this.
    #[serde(default = "ten")]
    pub heating_margin: f64,
    /// Rotating-wave approximation: ω_t ≥ this × g.
    #[serde(default = "ten")]
    pub rwa_margin: f64,
}

fn one() -> f64 {
    1.0
}
fn half() -> f64 {
    0.5
}
fn ten() -> f64 {
    10.0
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            good_cavity: 1.0,
            coupling_over_kappa: 0.5,
            coupling_over_gamma: 10.0,
            pressure_margin: 10.0,
            heating_margin: 10.0,
            rwa_margin: 10.0,
        }
    }
}

pub const PRESET_NAMES: [&str; 3] = ["sphere-appendix-h", "rod-translation", "rod-rotation"];

/// Sweepable axes: canonical name, aliases, and the unit of the values.
pub const AXES: &[(&str, &[&str], &str)] = &[
    ("power", &["P", "power_w", "drive.power_w"], "W"),
    ("pressure", &["pressure_torr", "gas.pressure_torr"], "Torr"),
    ("radius", &["R", "radius_m", "object.radius_m"], "m"),
    ("finesse", &["F", "cavity.finesse"], ""),
    ("length", &["d", "length_m", "cavity.length_m"], "m"),
    ("wavelength", &["lambda", "wavelength_m", "cavity.wavelength_m"], "m"),
    ("detuning", &["detuning_hz", "drive.detuning_hz"], "Hz"),
    ("tweezer_intensity", &["I0", "trap.intensity_w_m2"], "W/m²"),
    ("temperature", &["T", "temperature_k", "gas.temperature_k"], "K"),
    ("cooling_rate", &["Gamma", "cooling_rate_per_s", "gas.cooling_rate_per_s"], "1/s"),
    ("sigma", &["σ", "sigma_over_kappa", "protocol.sigma_over_kappa"], "κ"),
    ("g_over_kappa", &["g/κ", "g/kappa", "protocol.g_over_kappa"], "κ"),
];

/// Resolves an axis name or alias to its canonical name.
pub fn canonical_axis(name: &str) -> Result<&'static str> {
    AXES.iter()
        .find(|(canon, aliases, _)| *canon == name || aliases.contains(&name))
        .map(|(canon, _, _)| *canon)
        .ok_or_else(|| Error::UnknownAxis(name.to_string()))
}

impl Scenario {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Scenario(e.message().to_string()))
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Scenario(e.to_string()))
    }

    /// One of [`PRESET_NAMES`].
    pub fn preset(name: &str) -> Result<Self> {
        let cavity = CavitySection {
            length_m: 4e-3,
            finesse: 1e5,
            wavelength_m: 1064e-9,
        };
        let rod = |dof| Scenario {
            cavity,
            object: ObjectSection {
                shape: ShapeKind::Rod,
                radius_m: None,
                width_m: Some(50e-9),
                arc_m: Some(50e-9),
                density_kg_m3: silica_density(),
                eps1: silica_eps1(),
                eps2: silica_eps2(),
            },
            trap: TrapSection::SelfTrap { configuration: dof },
            drive: DriveSection {
                power_w: 4e-3,
                detuning_hz: None,
            },
            gas: GasSection::default(),
            thermal: ThermalSection::default(),
            protocol: ProtocolSection::default(),
            thresholds: Thresholds::default(),
        };
        match name {
            "sphere-appendix-h" => Ok(Scenario {
                cavity,
                object: ObjectSection {
                    shape: ShapeKind::Sphere,
                    radius_m: Some(250e-9),
                    width_m: None,
                    arc_m: None,
                    density_kg_m3: silica_density(),
                    eps1: silica_eps1(),
                    eps2: silica_eps2(),
                },
                trap: TrapSection::Tweezer {
                    intensity_w_m2: 2e12,
                    waist_m: 1e-6,
                },
                drive: DriveSection {
                    power_w: 5e-4,
                    detuning_hz: None,
                },
                gas: GasSection::default(),
                thermal: ThermalSection::default(),
                protocol: ProtocolSection::default(),
                thresholds: Thresholds::default(),
            }),
            "rod-translation" => Ok(rod(CooledDof::Translation)),
            "rod-rotation" => Ok(rod(CooledDof::Rotation)),
            _ => Err(Error::Scenario(format!(
                "unknown preset `{name}` (available: {})",
                PRESET_NAMES.join(", ")
            ))),
        }
    }

    /// Copy of the scenario with one axis set to `value`.
    pub fn with_axis(&self, axis: &str, value: f64) -> Result<Self> {
        let mut s = self.clone();
        match canonical_axis(axis)? {
            "power" => s.drive.power_w = value,
            "pressure" => s.gas.pressure_torr = value,
            "radius" => s.object.radius_m = Some(value),
            "finesse" => s.cavity.finesse = value,
            "length" => s.cavity.length_m = value,
            "wavelength" => s.cavity.wavelength_m = value,
            "detuning" => s.drive.detuning_hz = Some(value),
            "tweezer_intensity" => match &mut s.trap {
                TrapSection::Tweezer { intensity_w_m2, .. } => *intensity_w_m2 = value,
                TrapSection::SelfTrap { .. } => {
                    return Err(Error::Scenario("a self-trapped scenario has no tweezer intensity".into()))
                }
            },
            "temperature" => s.gas.temperature_k = value,
            "cooling_rate" => s.gas.cooling_rate_per_s = value,
            "sigma" => s.protocol.sigma_over_kappa = value,
            "g_over_kappa" => s.protocol.g_over_kappa = Some(value),
            other => unreachable!("axis table and setter disagree on `{other}`"),
        }
        Ok(s)
    }

    pub fn cavity_config(&self) -> Result<CavityConfig> {
        let c = &self.cavity;
        CavityConfig::new(c.length_m, c.finesse, c.wavelength_m)
    }

    pub fn object(&self, cfg: &CavityConfig) -> Result<DielectricObject> {
        let o = &self.object;
        let geometry = match o.shape {
            ShapeKind::Sphere => {
                let r = o
                    .radius_m
                    .ok_or_else(|| Error::invalid("object", "a sphere needs radius_m"))?;
                BodyGeometry::sphere(r)?
            }
            ShapeKind::Rod => {
                let width = o.width_m.ok_or_else(|| Error::invalid("object", "a rod needs width_m"))?;
                let arc = o.arc_m.ok_or_else(|| Error::invalid("object", "a rod needs arc_m"))?;
                BodyGeometry::rod(o.radius_m.unwrap_or(0.5 * cfg.waist()), width, arc)?
            }
        };
        DielectricObject::new(geometry, o.density_kg_m3, o.eps1, o.eps2)
    }

    pub fn tweezer(&self) -> Result<Option<TweezerConfig>> {
        match self.trap {
            TrapSection::Tweezer { intensity_w_m2, waist_m } => TweezerConfig::new(intensity_w_m2, waist_m).map(Some),
            TrapSection::SelfTrap { .. } => Ok(None),
        }
    }

    pub fn drive(&self, cfg: &CavityConfig) -> Result<DriveConfig> {
        let detuning = match (self.drive.detuning_hz, self.object.shape) {
            (Some(hz), _) => Detuning::Fixed(AngularFrequency::from_hz(hz)),
            (None, ShapeKind::Sphere) => Detuning::RedSideband,
            (None, ShapeKind::Rod) => Detuning::Fixed(AngularFrequency::ZERO),
        };
        DriveConfig::new(self.drive.power_w, detuning, cfg.omega_c0())
    }

    pub fn gas(&self) -> Result<GasEnvironment> {
        let g = &self.gas;
        GasEnvironment::new(
            Pressure::from_torr(g.pressure_torr)?,
            g.temperature_k,
            g.molecule_mass_u * ATOMIC_MASS_UNIT,
        )
    }

    /// `None` when no intensity is given and there is no tweezer to borrow it from.
    pub fn thermal(&self) -> Result<Option<ThermalInput>> {
        let intensity = match (self.thermal.intensity_w_m2, self.trap) {
            (Some(i), _) => i,
            (None, TrapSection::Tweezer { intensity_w_m2, .. }) => intensity_w_m2,
            (None, TrapSection::SelfTrap { .. }) => return Ok(None),
        };
        ThermalInput::new(intensity, self.thermal.emissivity, self.thermal.t_env_k).map(Some)
    }
}
