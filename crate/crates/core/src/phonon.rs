//! Longitudinal-acoustic phonon bath: form factor, spectral densities,
//! Bose occupation and the Lindblad channels in the dressed basis.
//!
//! Every spectral density is a geometry factor times the common form factor
//!
//! ```text
//! 𝔾(ω) = ω³ / (K μ c_s⁵) · [D_e exp(−(ω l_e / 2c_s)²) − D_h exp(−(ω l_h / 2c_s)²)]²
//! ```
//!
//! with `K = 8π²` for the ring tables and `K = 2π` for the line tables.
//! Energies enter as `ω = E/ħ`, which makes `𝔾` itself an energy.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{
    analytic_eigenstates, dressed_energies, dressed_vector, simulation_basis, Configuration,
    GateSetup, PhysicalParams, Transition,
};
use crate::tensorlab::{DissipativeTerm, OperatorMatrix};
use crate::units::{HBAR, K_B, MASS_DENSITY_PER_G_CM3};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum PhononError {
    #[error("transition energy must be positive and finite, got {0} meV")]
    NonPositiveFrequency(f64),
    #[error("temperature must be finite and non-negative, got {0} K")]
    InvalidTemperature(f64),
    #[error("unknown spectral branch {0:?}")]
    UnknownBranch(String),
    #[error("branch {branch} does not belong to the {configuration} configuration")]
    BranchMismatch {
        branch: SpectralBranch,
        configuration: Configuration,
    },
    #[error("channel {label}: tabulated jump is not downhill (gap {gap} meV)")]
    NotLowering { label: String, gap: f64 },
    #[error("transition not available for ring")]
    TransitionUnavailable,
}

/// Bose–Einstein occupation `1/(exp(ω/k_B T) − 1)`, exactly zero at T = 0.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64, PhononError> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(PhononError::NonPositiveFrequency(omega));
    }
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(PhononError::InvalidTemperature(temperature));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega / (K_B * temperature)).exp_m1())
}

/// Normalization of the form factor used by a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormFactorConvention {
    /// `K = 8π²`.
    RingTable,
    /// `K = 2π`.
    LineTable,
}

impl FormFactorConvention {
    pub fn denominator(self) -> f64 {
        match self {
            Self::RingTable => 8.0 * PI * PI,
            Self::LineTable => 2.0 * PI,
        }
    }

    pub fn for_configuration(configuration: Configuration) -> Self {
        match configuration {
            Configuration::Ring => Self::RingTable,
            Configuration::Line => Self::LineTable,
        }
    }
}

/// Material constants entering `𝔾(ω)`, in the units of
/// [`PhysicalParams`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormFactorParams {
    pub mu: f64,
    pub c_s: f64,
    pub d_e: f64,
    pub d_h: f64,
    pub l_e: f64,
    pub l_h: f64,
    pub convention: FormFactorConvention,
}

impl FormFactorParams {
    pub fn new(params: &PhysicalParams, convention: FormFactorConvention) -> Self {
        Self {
            mu: params.mu,
            c_s: params.c_s,
            d_e: params.d_e,
            d_h: params.d_h,
            l_e: params.l_e,
            l_h: params.l_h,
            convention,
        }
    }
}

/// `𝔾(ω)` in meV for a transition energy `omega` in meV.
pub fn form_factor(omega: f64, p: &FormFactorParams) -> f64 {
    let w = omega / HBAR;
    let cutoff = |l: f64| (-(w * l / (2.0 * p.c_s)).powi(2)).exp();
    let bracket = p.d_e * cutoff(p.l_e) - p.d_h * cutoff(p.l_h);
    let mu = p.mu * MASS_DENSITY_PER_G_CM3;
    w.powi(3) * bracket * bracket / (p.convention.denominator() * mu * p.c_s.powi(5))
}

/// One geometry factor from the spectral-density tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectralBranch {
    /// Ring: `8π𝔾 [1 − sin(√3 qd)/(√3 qd)]`.
    RingSinc,
    /// Ring: `3π𝔾 (qd)² [4 − (3/5)(qd)²]`.
    RingQuadratic,
    /// Ring: `3π𝔾 [12 − 4(qd)² + (3/5)(qd)⁴]`.
    RingQuartic,
    /// Line: `2 sin(qd) 𝔾`.
    LineSine,
    /// Line: `4 sin²(qd/2) 𝔾`.
    LineSineSquared,
    /// Line: `4 cos²(qd/2) 𝔾`.
    LineCosineSquared,
}

impl SpectralBranch {
    pub const ALL: [Self; 6] = [
        Self::RingSinc,
        Self::RingQuadratic,
        Self::RingQuartic,
        Self::LineSine,
        Self::LineSineSquared,
        Self::LineCosineSquared,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::RingSinc => "ring-1",
            Self::RingQuadratic => "ring-2",
            Self::RingQuartic => "ring-3",
            Self::LineSine => "line-1",
            Self::LineSineSquared => "line-2",
            Self::LineCosineSquared => "line-3",
        }
    }

    pub fn configuration(self) -> Configuration {
        match self {
            Self::RingSinc | Self::RingQuadratic | Self::RingQuartic => Configuration::Ring,
            _ => Configuration::Line,
        }
    }

    /// Geometry factor multiplying `𝔾`, as a function of `x = |q| d`.
    pub fn geometry_factor(self, x: f64) -> f64 {
        let x2 = x * x;
        match self {
            Self::RingSinc => {
                let y = SQRT_3 * x;
                // 1 − sin(y)/y without cancellation at small y.
                let one_minus_sinc = if y < 1e-3 {
                    y * y / 6.0 - y.powi(4) / 120.0
                } else {
                    1.0 - y.sin() / y
                };
                8.0 * PI * one_minus_sinc
            }
            Self::RingQuadratic => 3.0 * PI * x2 * (4.0 - 0.6 * x2),
            Self::RingQuartic => 3.0 * PI * (12.0 - 4.0 * x2 + 0.6 * x2 * x2),
            Self::LineSine => 2.0 * x.sin(),
            Self::LineSineSquared => 4.0 * (0.5 * x).sin().powi(2),
            Self::LineCosineSquared => 4.0 * (0.5 * x).cos().powi(2),
        }
    }
}

impl fmt::Display for SpectralBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SpectralBranch {
    type Err = PhononError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|b| b.id() == s)
            .ok_or_else(|| PhononError::UnknownBranch(s.to_owned()))
    }
}

/// A spectral density value. Truncated expansions can go negative outside
/// their range; those are clamped to zero and flagged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralValue {
    /// `max(raw, 0)`, meV.
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
}

/// `J(ω)` for one table branch, with `|q| = ω/(ħ c_s)`.
pub fn spectral_density(
    params: &PhysicalParams,
    setup: &GateSetup,
    branch: SpectralBranch,
    omega: f64,
) -> Result<SpectralValue, PhononError> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(PhononError::NonPositiveFrequency(omega));
    }
    if branch.configuration() != setup.configuration {
        return Err(PhononError::BranchMismatch {
            branch,
            configuration: setup.configuration,
        });
    }
    let ff = FormFactorParams::new(params, FormFactorConvention::for_configuration(setup.configuration));
    let q = omega / (HBAR * params.c_s);
    let raw = branch.geometry_factor(q * setup.d) * form_factor(omega, &ff);
    Ok(SpectralValue {
        value: raw.max(0.0),
        raw,
        clamped: raw < 0.0,
    })
}

/// Frequency as printed in the tables: `a·V_F + b·αΩ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TabulatedFrequency {
    pub v_f_multiple: f64,
    pub alpha_omega_multiple: f64,
}

impl TabulatedFrequency {
    pub fn evaluate(&self, params: &PhysicalParams, setup: &GateSetup) -> f64 {
        self.v_f_multiple * params.v_f + self.alpha_omega_multiple * setup.alpha * params.omega
    }
}

/// One row of a channel table: `prefactor · |Φ_target⟩⟨Φ_source|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub branch: SpectralBranch,
    pub prefactor: f64,
    pub target: usize,
    pub source: usize,
    pub tabulated: TabulatedFrequency,
}

const fn spec(branch: SpectralBranch, prefactor: f64, target: usize, source: usize, a: f64, b: f64) -> ChannelSpec {
    ChannelSpec {
        branch,
        prefactor,
        target,
        source,
        tabulated: TabulatedFrequency {
            v_f_multiple: a,
            alpha_omega_multiple: b,
        },
    }
}

const INV_2_SQRT_3: f64 = 1.0 / (2.0 * SQRT_3);
const INV_2_SQRT_2: f64 = 1.0 / (2.0 * SQRT_2);
const INV_4_SQRT_2: f64 = 1.0 / (4.0 * SQRT_2);
const TWO_SQRT_2: f64 = 2.0 * SQRT_2;

use SpectralBranch::*;

const RING_TABLE: [ChannelSpec; 5] = [
    spec(RingSinc, INV_2_SQRT_3, 2, 4, 3.0, 0.5),
    spec(RingSinc, INV_2_SQRT_3, 2, 1, 3.0, -0.5),
    spec(RingQuadratic, 1.0 / 6.0, 3, 4, 3.0, 0.5),
    spec(RingQuadratic, 1.0 / 6.0, 3, 1, 3.0, -0.5),
    spec(RingQuartic, 1.0 / 6.0, 1, 4, 0.0, 1.0),
];

const LINE_LOW_TABLE: [ChannelSpec; 6] = [
    spec(LineSine, 0.25, 1, 3, SQRT_2, 0.5),
    spec(LineSine, 0.25, 2, 3, SQRT_2, 0.0),
    spec(LineSine, INV_2_SQRT_2, 3, 4, SQRT_2, -0.5),
    spec(LineSineSquared, INV_4_SQRT_2, 1, 4, TWO_SQRT_2, 0.5),
    spec(LineSineSquared, INV_4_SQRT_2, 2, 4, TWO_SQRT_2, -0.5),
    spec(LineCosineSquared, 0.125, 1, 2, 0.0, 1.0),
];

const LINE_HIGH_TABLE: [ChannelSpec; 6] = [
    spec(LineSine, INV_2_SQRT_2, 2, 3, SQRT_2, 0.5),
    spec(LineSine, 0.25, 3, 4, SQRT_2, 0.0),
    spec(LineSine, 0.25, 3, 1, SQRT_2, -0.5),
    spec(LineSineSquared, INV_4_SQRT_2, 2, 4, TWO_SQRT_2, 0.5),
    spec(LineSineSquared, INV_4_SQRT_2, 2, 1, TWO_SQRT_2, -0.5),
    spec(LineCosineSquared, 0.125, 1, 4, 0.0, 1.0),
];

/// Channel rows for a configuration and transition strategy.
pub fn channel_table(setup: &GateSetup) -> Result<&'static [ChannelSpec], PhononError> {
    match (setup.configuration, setup.transition) {
        (Configuration::Ring, Transition::HighLevel) => Ok(&RING_TABLE),
        (Configuration::Ring, Transition::LowLevel) => Err(PhononError::TransitionUnavailable),
        (Configuration::Line, Transition::LowLevel) => Ok(&LINE_LOW_TABLE),
        (Configuration::Line, Transition::HighLevel) => Ok(&LINE_HIGH_TABLE),
    }
}

/// A phonon-assisted jump between dressed states.
#[derive(Clone, Debug)]
pub struct PhononChannel {
    pub label: String,
    pub spec: ChannelSpec,
    /// Downward transition energy `E_source − E_target` (meV).
    pub omega: f64,
    /// The printed table frequency for this row (meV).
    pub tabulated_omega: f64,
    /// Spectral density at `omega` (meV).
    pub j: f64,
    /// True when the branch polynomial went negative and `j` was clamped.
    pub clamped: bool,
    /// Bose occupation at `omega`.
    pub n: f64,
    /// `prefactor · |Φ_target⟩⟨Φ_source|` on the simulation basis.
    pub op: OperatorMatrix,
}

impl PhononChannel {
    /// Emission rate `J (N + 1) / ħ` multiplying `D[L]` (1/ps).
    pub fn emission_rate(&self) -> f64 {
        self.j * (self.n + 1.0) / HBAR
    }

    /// Absorption rate `J N / ħ` multiplying `D[L†]` (1/ps).
    pub fn absorption_rate(&self) -> f64 {
        self.j * self.n / HBAR
    }

    /// The two Lindblad terms of this channel.
    pub fn terms(&self) -> [DissipativeTerm; 2] {
        [
            DissipativeTerm {
                label: format!("{} emission", self.label),
                rate: self.emission_rate(),
                op: self.op.clone(),
            },
            DissipativeTerm {
                label: format!("{} absorption", self.label),
                rate: self.absorption_rate(),
                op: self.op.dagger(),
            },
        ]
    }
}

/// All phonon channels for a setup at `params.temperature`.
pub fn build_channels(params: &PhysicalParams, setup: &GateSetup) -> Result<Vec<PhononChannel>, PhononError> {
    let table = channel_table(setup)?;
    let basis = simulation_basis(setup);
    let sector = analytic_eigenstates(setup);
    let energies = dressed_energies(params, setup);
    table
        .iter()
        .map(|row| {
            let label = format!(
                "{} {:.6}|Phi{}><Phi{}|",
                row.branch, row.prefactor, row.target, row.source
            );
            let gap = energies[row.source - 1] - energies[row.target - 1];
            if !(gap > 0.0) {
                return Err(PhononError::NotLowering { label, gap });
            }
            let j = spectral_density(params, setup, row.branch, gap)?;
            let n = thermal_occupation(gap, params.temperature)?;
            let ket = dressed_vector(&sector, row.target);
            let bra = dressed_vector(&sector, row.source);
            let op = OperatorMatrix::outer(&basis, &ket, &bra).scale(Complex64::new(row.prefactor, 0.0));
            Ok(PhononChannel {
                label,
                spec: *row,
                omega: gap,
                tabulated_omega: row.tabulated.evaluate(params, setup),
                j: j.value,
                clamped: j.clamped,
                n,
                op,
            })
        })
        .collect()
}
