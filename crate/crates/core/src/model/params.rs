use std::fmt;

use super::ModelError;

/// Material and drive constants, in meV / nm / ps / K.
///
/// `Default` gives the InAs/GaAs parameter set used throughout: Förster
/// transfer 0.85 meV, exciton energy 1.1 eV, biexciton shift 5 meV,
/// radiative width 1.6 µeV, localization lengths 2.16 / 1.44 nm, density
/// 5.3 g/cm³, sound velocity 4.8 nm/ps and drive 0.1 meV.
///
/// The deformation potentials default to the commonly quoted GaAs values
/// D_e = −14.6 eV and D_h = −4.8 eV. They are inputs, not derived here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    /// Exciton energy ω_a (meV).
    pub omega_a: f64,
    /// Förster transfer V_F (meV).
    pub v_f: f64,
    /// Biexciton shift V_xx of two neighbouring excitons (meV).
    pub v_xx: f64,
    /// Drive coupling Ω (meV).
    pub omega: f64,
    /// Radiative decay width Γ (meV).
    pub gamma: f64,
    /// Electron localization length (nm).
    pub l_e: f64,
    /// Hole localization length (nm).
    pub l_h: f64,
    /// Mass density (g/cm³).
    pub mu: f64,
    /// Longitudinal sound velocity (nm/ps).
    pub c_s: f64,
    /// Electron deformation potential (meV).
    pub d_e: f64,
    /// Hole deformation potential (meV).
    pub d_h: f64,
    /// Bath temperature (K).
    pub temperature: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            omega_a: 1100.0,
            v_f: 0.85,
            v_xx: 5.0,
            omega: 0.1,
            gamma: 0.0016,
            l_e: 2.16,
            l_h: 1.44,
            mu: 5.3,
            c_s: 4.8,
            d_e: -14_600.0,
            d_h: -4_800.0,
            temperature: 0.0,
        }
    }
}

/// Soft violation of the `Ω ≪ V_F ≪ V_xx` hierarchy that the effective
/// model relies on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HierarchyWarning {
    /// `Ω > V_F / 3`.
    DriveNotWeak { omega: f64, v_f: f64 },
    /// `V_F > V_xx / 3`.
    FoersterNotWeak { v_f: f64, v_xx: f64 },
}

impl fmt::Display for HierarchyWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DriveNotWeak { omega, v_f } => write!(
                f,
                "hierarchy warning: Omega = {omega} meV exceeds V_F/3 = {} meV; off-resonant transitions are not negligible",
                v_f / 3.0
            ),
            Self::FoersterNotWeak { v_f, v_xx } => write!(
                f,
                "hierarchy warning: V_F = {v_f} meV exceeds V_xx/3 = {} meV; multi-exciton states are not well separated",
                v_xx / 3.0
            ),
        }
    }
}

impl PhysicalParams {
    /// Checks hard constraints and returns the soft hierarchy warnings.
    pub fn validate(&self) -> Result<Vec<HierarchyWarning>, ModelError> {
        let positive = [
            ("omega_a", self.omega_a),
            ("V_F", self.v_f),
            ("V_xx", self.v_xx),
            ("Omega", self.omega),
            ("Gamma", self.gamma),
            ("l_e", self.l_e),
            ("l_h", self.l_h),
            ("mu", self.mu),
            ("c_s", self.c_s),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::InvalidParameter {
                    name,
                    value,
                    reason: "must be positive and finite",
                });
            }
        }
        for (name, value) in [("D_e", self.d_e), ("D_h", self.d_h)] {
            if !value.is_finite() {
                return Err(ModelError::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(ModelError::InvalidParameter {
                name: "T",
                value: self.temperature,
                reason: "must be finite and non-negative",
            });
        }
        let mut warnings = Vec::new();
        if self.omega > self.v_f / 3.0 {
            warnings.push(HierarchyWarning::DriveNotWeak {
                omega: self.omega,
                v_f: self.v_f,
            });
        }
        if self.v_f > self.v_xx / 3.0 {
            warnings.push(HierarchyWarning::FoersterNotWeak {
                v_f: self.v_f,
                v_xx: self.v_xx,
            });
        }
        Ok(warnings)
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_without_warnings() {
        assert_eq!(PhysicalParams::default().validate().unwrap(), vec![]);
    }

    #[test]
    fn strong_drive_warns() {
        let p = PhysicalParams {
            omega: 0.85,
            ..PhysicalParams::default()
        };
        let w = p.validate().unwrap();
        assert!(matches!(w[..], [HierarchyWarning::DriveNotWeak { .. }]));
        assert!(w[0].to_string().contains("hierarchy warning"));
    }

    #[test]
    fn strong_foerster_warns() {
        let p = PhysicalParams {
            v_f: 2.0,
            ..PhysicalParams::default()
        };
        assert!(p
            .validate()
            .unwrap()
            .contains(&HierarchyWarning::FoersterNotWeak { v_f: 2.0, v_xx: 5.0 }));
    }

    #[test]
    fn non_positive_length_rejected() {
        let p = PhysicalParams {
            l_e: 0.0,
            ..PhysicalParams::default()
        };
        let err = p.validate().unwrap_err();
        assert!(err.to_string().contains("l_e"));
    }

    #[test]
    fn negative_temperature_rejected() {
        assert!(PhysicalParams::default().with_temperature(-1.0).validate().is_err());
    }
}
