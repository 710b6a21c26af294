//! Thin lossy interface layers and their field weights.

use crate::error::ValidationErrors;
use crate::units::NM;

/// Substrate permittivity plus the three interface oxides.
///
/// The interfaces are metal–air (MA), metal–substrate (MS) and
/// substrate–air (SA). Thicknesses are in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricStack {
    pub eps_s: f64,
    pub eps_ma: f64,
    pub eps_ms: f64,
    pub eps_sa: f64,
    pub t_ma: f64,
    pub t_ms: f64,
    pub t_sa: f64,
    pub tan_ma: f64,
    pub tan_ms: f64,
    pub tan_sa: f64,
}

/// Default loss tangent for an amorphous interface oxide.
pub const DEFAULT_TAN_DELTA: f64 = 0.002;

impl Default for DielectricStack {
    /// Sapphire/silicon-like substrate with 2 nm alumina-like oxides.
    fn default() -> Self {
        Self::uniform_oxide(11.7, 9.8, 9.8, 3.8, 2.0 * NM, DEFAULT_TAN_DELTA)
    }
}

impl DielectricStack {
    pub fn uniform_oxide(eps_s: f64, eps_ma: f64, eps_ms: f64, eps_sa: f64, t: f64, tan: f64) -> Self {
        DielectricStack {
            eps_s,
            eps_ma,
            eps_ms,
            eps_sa,
            t_ma: t,
            t_ms: t,
            t_sa: t,
            tan_ma: tan,
            tan_ms: tan,
            tan_sa: tan,
        }
    }

    /// All permittivities 10, 3 nm oxides, tan δ = 0.002.
    pub fn uniform_ten() -> Self {
        Self::uniform_oxide(10.0, 10.0, 10.0, 10.0, 3.0 * NM, 0.002)
    }

    /// Same layers with every oxide thickness multiplied by `f`.
    pub fn scaled_thickness(&self, f: f64) -> Self {
        DielectricStack { t_ma: self.t_ma * f, t_ms: self.t_ms * f, t_sa: self.t_sa * f, ..*self }
    }

    /// Thin-film regime: each oxide must stay below this fraction of the
    /// metal thickness of any structure using the stack.
    pub const MAX_OXIDE_TO_METAL: f64 = 0.1;

    pub fn validate(&self) -> ValidationErrors {
        let mut errs = ValidationErrors::default();
        for (name, v) in [("eps_s", self.eps_s), ("eps_ma", self.eps_ma), ("eps_ms", self.eps_ms), ("eps_sa", self.eps_sa)] {
            if !(v >= 1.0 && v.is_finite()) {
                errs.push(name, "relative permittivity must be >= 1");
            }
        }
        for (name, v) in [("t_ma", self.t_ma), ("t_ms", self.t_ms), ("t_sa", self.t_sa)] {
            if !(v > 0.0 && v.is_finite()) {
                errs.push(name, "oxide thickness must be > 0");
            }
        }
        for (name, v) in [("tan_ma", self.tan_ma), ("tan_ms", self.tan_ms), ("tan_sa", self.tan_sa)] {
            if !(v >= 0.0 && v.is_finite()) {
                errs.push(name, "loss tangent must be >= 0");
            }
        }
        errs
    }

    /// Checks the thin-layer assumption against a metal thickness.
    pub fn validate_against_metal(&self, t_metal: f64) -> ValidationErrors {
        let mut errs = ValidationErrors::default();
        let cap = Self::MAX_OXIDE_TO_METAL * t_metal;
        for (name, v) in [("t_ma", self.t_ma), ("t_ms", self.t_ms), ("t_sa", self.t_sa)] {
            if v > cap {
                errs.push(name, alloc::format!("oxide {v:e} m is not thin against metal thickness {t_metal:e} m"));
            }
        }
        errs
    }

    pub fn weights(&self) -> InterfaceWeights {
        interface_weights(self)
    }
}

/// Field-energy weights of the three interfaces relative to vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceWeights {
    pub ma: f64,
    pub ms: f64,
    pub sa: f64,
}

/// `(1/ε_MA, ε_s²/ε_MS, ε_SA)`.
///
/// Normal fields on the metal surfaces are reduced by the oxide permittivity
/// (and raised by ε_s on the substrate side); the SA field is tangential and
/// continuous, so its energy scales with ε_SA.
pub fn interface_weights(stack: &DielectricStack) -> InterfaceWeights {
    InterfaceWeights {
        ma: 1.0 / stack.eps_ma,
        ms: stack.eps_s * stack.eps_s / stack.eps_ms,
        sa: stack.eps_sa,
    }
}
