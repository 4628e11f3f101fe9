//! Flat `key = value` run configuration.
//!
//! One key per line, `#` starts a comment, blank lines are ignored. Keys
//! are case-sensitive. Physical quantities are read in the units listed
//! by [`units_help`] and converted once, here.

use std::fmt::Write as _;
use std::path::PathBuf;

use thiserror::Error;
use tridot::dynamics::NoiseMode;
use tridot::model::{Configuration, PhysicalParams, RingLength, Transition};
use crate::output::sig12;
use tridot::units::{MASS_DENSITY_PER_G_CM3, MEV_PER_EV, MEV_PER_UEV, NM_PER_PS_PER_CM_PER_S};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown key: {0}")]
    UnknownKey(String),
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: key {key} given twice")]
    Duplicate { line: usize, key: String },
    #[error("invalid value for {key}: {value:?} ({reason})")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
}

/// A physical key: name, unit in the file, factor to internal units.
struct PhysicalKey {
    name: &'static str,
    unit: &'static str,
    factor: f64,
    get: fn(&PhysicalParams) -> f64,
    set: fn(&mut PhysicalParams, f64),
}

const PHYSICAL_KEYS: [PhysicalKey; 11] = [
    PhysicalKey { name: "omega_a", unit: "eV", factor: MEV_PER_EV, get: |p| p.omega_a, set: |p, v| p.omega_a = v },
    PhysicalKey { name: "V_F", unit: "meV", factor: 1.0, get: |p| p.v_f, set: |p, v| p.v_f = v },
    PhysicalKey { name: "V_xx", unit: "meV", factor: 1.0, get: |p| p.v_xx, set: |p, v| p.v_xx = v },
    PhysicalKey { name: "Omega", unit: "meV", factor: 1.0, get: |p| p.omega, set: |p, v| p.omega = v },
    PhysicalKey { name: "Gamma", unit: "ueV", factor: MEV_PER_UEV, get: |p| p.gamma, set: |p, v| p.gamma = v },
    PhysicalKey { name: "l_e", unit: "nm", factor: 1.0, get: |p| p.l_e, set: |p, v| p.l_e = v },
    PhysicalKey { name: "l_h", unit: "nm", factor: 1.0, get: |p| p.l_h, set: |p, v| p.l_h = v },
    // Kept in g/cm³; the form factor applies MASS_DENSITY_PER_G_CM3.
    PhysicalKey { name: "mu", unit: "g/cm3", factor: 1.0, get: |p| p.mu, set: |p, v| p.mu = v },
    PhysicalKey { name: "c_s", unit: "cm/s", factor: NM_PER_PS_PER_CM_PER_S, get: |p| p.c_s, set: |p, v| p.c_s = v },
    PhysicalKey { name: "D_e", unit: "eV", factor: MEV_PER_EV, get: |p| p.d_e, set: |p, v| p.d_e = v },
    PhysicalKey { name: "D_h", unit: "eV", factor: MEV_PER_EV, get: |p| p.d_h, set: |p, v| p.d_h = v },
];

const OTHER_KEYS: [&str; 9] = [
    "configuration",
    "transition",
    "noise",
    "temperatures",
    "t_max",
    "dt",
    "output",
    "seed",
    "ring_d_meaning",
];

/// Printed under `--help`.
pub fn units_help() -> String {
    let mut s = String::from("Config file keys (key = value, # comments):\n");
    let defaults = PhysicalParams::default();
    for k in &PHYSICAL_KEYS {
        let _ = writeln!(
            s,
            "  {:<8} [{:<5}] default {:<10} x {:e} -> internal",
            k.name,
            k.unit,
            sig12((k.get)(&defaults) / k.factor),
            k.factor
        );
    }
    let _ = writeln!(
        s,
        "  internal units: meV, nm, ps, K; c_s 4.8e5 cm/s = 4.8 nm/ps; \
         mu enters the form factor as 1 g/cm3 = {:.3} meV ps^2 nm^-5",
        MASS_DENSITY_PER_G_CM3
    );
    s.push_str(
        "  configuration ring|line, transition high|low, noise none|spontaneous|full,\n  \
         temperatures K list (comma separated), t_max ps, dt ps, output path,\n  \
         seed integer, ring_d_meaning radius|spacing",
    );
    s
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Internal units. `temperature` is overwritten per run.
    pub params: PhysicalParams,
    pub configuration: Configuration,
    pub transition: Transition,
    pub noise: NoiseMode,
    /// Kelvin; one output per entry.
    pub temperatures: Vec<f64>,
    /// Defaults to 2.5 gate times.
    pub t_max: Option<f64>,
    /// Defaults to a 2000th of the gate time.
    pub dt: Option<f64>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub ring_length: RingLength,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: PhysicalParams::default(),
            configuration: Configuration::Ring,
            transition: Transition::HighLevel,
            noise: NoiseMode::Full,
            temperatures: vec![0.0],
            t_max: None,
            dt: None,
            output: None,
            seed: 0,
            ring_length: RingLength::Radius,
        }
    }
}

fn invalid(key: &str, value: &str, reason: impl ToString) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_owned(),
        value: value.to_owned(),
        reason: reason.to_string(),
    }
}

fn number(key: &str, value: &str) -> Result<f64, ConfigError> {
    let x: f64 = value.parse().map_err(|e| invalid(key, value, e))?;
    if !x.is_finite() {
        return Err(invalid(key, value, "not finite"));
    }
    Ok(x)
}

pub fn parse_temperatures(value: &str) -> Result<Vec<f64>, ConfigError> {
    let temps = value
        .split(',')
        .map(|t| number("temperatures", t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(t) = temps.iter().find(|t| **t < 0.0) {
        return Err(invalid("temperatures", value, format!("{t} K is negative")));
    }
    Ok(temps)
}

fn positive(key: &str, value: &str) -> Result<f64, ConfigError> {
    let x = number(key, value)?;
    if x <= 0.0 {
        return Err(invalid(key, value, "must be positive"));
    }
    Ok(x)
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen: Vec<String> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Malformed {
                    line: n + 1,
                    text: raw.to_owned(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError::Duplicate {
                    line: n + 1,
                    key: key.to_owned(),
                });
            }
            cfg.set(key, value)?;
            seen.push(key.to_owned());
        }
        Ok(cfg)
    }

    /// Applies one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if let Some(k) = PHYSICAL_KEYS.iter().find(|k| k.name == key) {
            (k.set)(&mut self.params, number(key, value)? * k.factor);
            return Ok(());
        }
        match key {
            "configuration" => self.configuration = value.parse().map_err(|e| invalid(key, value, e))?,
            "transition" => self.transition = value.parse().map_err(|e| invalid(key, value, e))?,
            "noise" => self.noise = value.parse().map_err(|e| invalid(key, value, e))?,
            "temperatures" => self.temperatures = parse_temperatures(value)?,
            "t_max" => self.t_max = Some(positive(key, value)?),
            "dt" => self.dt = Some(positive(key, value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            "seed" => self.seed = value.parse().map_err(|e| invalid(key, value, e))?,
            "ring_d_meaning" => self.ring_length = value.parse().map_err(|e| invalid(key, value, e))?,
            _ => return Err(ConfigError::UnknownKey(key.to_owned())),
        }
        Ok(())
    }

    /// Every key with its value in file units, as `key = value` lines.
    pub fn echo(&self) -> Vec<String> {
        let mut out: Vec<String> = PHYSICAL_KEYS
            .iter()
            .map(|k| {
                let internal = (k.get)(&self.params);
                format!("{} = {} [{}] (internal {})", k.name, sig12(internal / k.factor), k.unit, sig12(internal))
            })
            .collect();
        let temps: Vec<String> = self.temperatures.iter().map(|t| t.to_string()).collect();
        let opt = |x: Option<f64>| x.map_or("default".to_owned(), |v| v.to_string());
        out.extend([
            format!("configuration = {}", self.configuration),
            format!("transition = {}", self.transition),
            format!("noise = {}", self.noise),
            format!("temperatures = {}", temps.join(",")),
            format!("t_max = {}", opt(self.t_max)),
            format!("dt = {}", opt(self.dt)),
            format!(
                "output = {}",
                self.output.as_ref().map_or("default".into(), |p| p.display().to_string())
            ),
            format!("seed = {}", self.seed),
            format!("ring_d_meaning = {}", self.ring_length),
        ]);
        out
    }

    pub fn keys() -> impl Iterator<Item = &'static str> {
        PHYSICAL_KEYS.iter().map(|k| k.name).chain(OTHER_KEYS)
    }
}
