//! Internal unit system: energies in meV, times in ps, lengths in nm,
//! temperatures in K. Masses follow as meV·ps²/nm².

/// Reduced Planck constant, meV·ps.
pub const HBAR: f64 = 0.658_211_956_9;

/// Boltzmann constant, meV/K.
pub const K_B: f64 = 0.086_173_33;

/// meV per eV.
pub const MEV_PER_EV: f64 = 1.0e3;

/// meV per µeV.
pub const MEV_PER_UEV: f64 = 1.0e-3;

/// (nm/ps) per (cm/s).
pub const NM_PER_PS_PER_CM_PER_S: f64 = 1.0e-5;

/// One meV in joules.
pub const JOULE_PER_MEV: f64 = 1.602_176_634e-22;

/// Internal mass density (meV·ps²/nm⁵) per g/cm³.
///
/// 1 g/cm³ = 1e-24 kg/nm³ and the internal mass unit is
/// 1 meV·ps²/nm² = `JOULE_PER_MEV` · 1e-6 kg.
pub const MASS_DENSITY_PER_G_CM3: f64 = 1.0e-24 / (JOULE_PER_MEV * 1.0e-6);

/// Angular frequency (1/ps) of an energy in meV.
pub fn angular_frequency(energy: f64) -> f64 {
    energy / HBAR
}
