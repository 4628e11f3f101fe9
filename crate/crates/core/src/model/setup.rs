use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use super::{ModelError, PhysicalParams};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Spatial arrangement of the three dots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    /// Equilateral triangle, every pair Förster-coupled.
    Ring,
    /// Chain 1–2–3, nearest neighbours coupled.
    Line,
}

/// Which single-exciton eigenstate the laser is tuned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transition {
    /// Highest bright eigenstate Ψ₄.
    HighLevel,
    /// Lowest bright eigenstate Ψ₂ (line only).
    LowLevel,
}

/// What the length `d` in the ring spectral densities refers to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RingLength {
    /// Center-to-dot distance, √3 nm.
    #[default]
    Radius,
    /// Dot-to-dot distance, 3 nm.
    Spacing,
}

impl Configuration {
    /// Förster-coupled dot pairs (0-based).
    pub fn coupled_pairs(self) -> &'static [(usize, usize)] {
        match self {
            Self::Ring => &[(0, 1), (1, 2), (0, 2)],
            Self::Line => &[(0, 1), (1, 2)],
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ring => "ring",
            Self::Line => "line",
        })
    }
}

impl FromStr for Configuration {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ring" => Ok(Self::Ring),
            "line" => Ok(Self::Line),
            _ => Err(ModelError::UnknownName {
                kind: "configuration",
                value: s.to_owned(),
            }),
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::HighLevel => "high",
            Self::LowLevel => "low",
        })
    }
}

impl FromStr for Transition {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "high" | "high-level" | "up" => Ok(Self::HighLevel),
            "low" | "low-level" | "down" => Ok(Self::LowLevel),
            _ => Err(ModelError::UnknownName {
                kind: "transition",
                value: s.to_owned(),
            }),
        }
    }
}

impl fmt::Display for RingLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Radius => "radius",
            Self::Spacing => "spacing",
        })
    }
}

impl FromStr for RingLength {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "radius" => Ok(Self::Radius),
            "spacing" => Ok(Self::Spacing),
            _ => Err(ModelError::UnknownName {
                kind: "ring_d_meaning",
                value: s.to_owned(),
            }),
        }
    }
}

/// Collective enhancement of the Rabi coupling between |↑↑↑⟩ and the
/// auxiliary exciton eigenstate.
pub fn character_factor(configuration: Configuration, transition: Transition) -> Result<f64, ModelError> {
    match (configuration, transition) {
        (Configuration::Ring, Transition::HighLevel) => Ok(SQRT_3),
        (Configuration::Ring, Transition::LowLevel) => Err(ModelError::TransitionUnavailable),
        (Configuration::Line, Transition::LowLevel) => Ok(1.0 - SQRT_2 / 2.0),
        (Configuration::Line, Transition::HighLevel) => Ok(1.0 + SQRT_2 / 2.0),
    }
}

/// Everything fixed by choosing a configuration and a resonant transition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateSetup {
    pub configuration: Configuration,
    pub transition: Transition,
    /// Character factor α.
    pub alpha: f64,
    /// Laser frequency ω_l (meV), resonant with the auxiliary state.
    pub omega_l: f64,
    /// Dot coordinates (nm).
    pub dot_positions: [[f64; 3]; 3],
    /// Length entering the spectral densities (nm).
    pub d: f64,
}

impl GateSetup {
    pub fn new(
        configuration: Configuration,
        transition: Transition,
        params: &PhysicalParams,
    ) -> Result<Self, ModelError> {
        Self::with_ring_length(configuration, transition, params, RingLength::default())
    }

    pub fn with_ring_length(
        configuration: Configuration,
        transition: Transition,
        params: &PhysicalParams,
        ring_length: RingLength,
    ) -> Result<Self, ModelError> {
        let alpha = character_factor(configuration, transition)?;
        let (omega_l, dot_positions, d) = match configuration {
            Configuration::Ring => {
                let r = SQRT_3;
                let positions = [
                    [-r / 2.0, -SQRT_3 * r / 2.0, 0.0],
                    [r, 0.0, 0.0],
                    [-r / 2.0, SQRT_3 * r / 2.0, 0.0],
                ];
                let d = match ring_length {
                    RingLength::Radius => r,
                    RingLength::Spacing => SQRT_3 * r,
                };
                (params.omega_a + 2.0 * params.v_f, positions, d)
            }
            Configuration::Line => {
                let d = 3.0;
                let positions = [[-d, 0.0, 0.0], [0.0, 0.0, 0.0], [d, 0.0, 0.0]];
                let shift = SQRT_2 * params.v_f;
                let omega_l = match transition {
                    Transition::LowLevel => params.omega_a - shift,
                    Transition::HighLevel => params.omega_a + shift,
                };
                (omega_l, positions, d)
            }
        };
        Ok(Self {
            configuration,
            transition,
            alpha,
            omega_l,
            dot_positions,
            d,
        })
    }

    /// The three (configuration, transition) cases in figure order:
    /// ring, line/high, line/low.
    pub fn all(params: &PhysicalParams) -> [Self; 3] {
        [
            Self::new(Configuration::Ring, Transition::HighLevel, params),
            Self::new(Configuration::Line, Transition::HighLevel, params),
            Self::new(Configuration::Line, Transition::LowLevel, params),
        ]
        .map(|s| s.expect("valid combinations"))
    }

    pub fn inter_dot_distance(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.dot_positions[i], self.dot_positions[j]);
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    pub fn name(&self) -> String {
        format!("{}/{}", self.configuration, self.transition)
    }
}
