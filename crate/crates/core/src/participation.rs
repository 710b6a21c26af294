//! From surface energies to participation ratios.
//!
//! For a structure with total surface energies `U^m` (metal, both faces)
//! and `U^s` (substrate), normalised as `u = U/(ε V²)`, the bracketed
//! integrals entering the participation ratios are
//!
//! ```text
//! B_MA = B_MS = u_m      (each metal face carries U^m/2, bracket divides by εV²/2)
//! B_SA        = 2 u_s
//! p_i         = w_i · t_i / L · B_i
//! ```
//!
//! with `w = (1/ε_MA, ε_s²/ε_MS, ε_SA)` and `L = C/ε0`. The parallel plate
//! bypasses the metal/substrate split and supplies `B_MA` directly.

use crate::stack::{interface_weights, DielectricStack};
use crate::structure::StructureKind;
use crate::units::{Capacitance, Length};

/// Additive finite-thickness corrections to the logarithmic edge term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerConstants {
    pub metal: f64,
    pub substrate: f64,
}

impl CornerConstants {
    pub const DEFAULT: CornerConstants = CornerConstants { metal: 5.0, substrate: 1.6 };
    /// Thin-film limit used when comparing against zero-thickness solves.
    pub const ZERO: CornerConstants = CornerConstants { metal: 0.0, substrate: 0.0 };
}

impl Default for CornerConstants {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// How the metal corner energy is shared between the air and substrate faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CornerMode {
    /// Each face gets half of the metal energy.
    #[default]
    Halves,
    /// Air face sees 1.5 c_m, substrate face 0.5 c_m.
    SideSplit,
}

/// `(1.5 c_m, 0.5 c_m)`: the air side collects both faces of the top corner
/// and the outside of the bottom one.
pub fn corner_split_mode(c_m: f64) -> (f64, f64) {
    (1.5 * c_m, 0.5 * c_m)
}

/// Normalised surface energies `U/(ε V²)`.
///
/// Totals for finite structures (dimensionless); per unit length (1/m)
/// for the 2-D cross-section helpers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceEnergyPair {
    pub u_metal: f64,
    pub u_substrate: f64,
    pub corners: CornerConstants,
}

/// Dimensionless bracket integrals per interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceIntegrals {
    pub ma: f64,
    pub ms: f64,
    pub sa: f64,
}

impl SurfaceIntegrals {
    /// Applies the bracket convention to an energy model evaluated at
    /// arbitrary metal corner constants.
    pub fn from_energy_model<F>(energy: F, corners: CornerConstants, mode: CornerMode) -> SurfaceIntegrals
    where
        F: Fn(CornerConstants) -> SurfaceEnergyPair,
    {
        let base = energy(corners);
        match mode {
            CornerMode::Halves => SurfaceIntegrals { ma: base.u_metal, ms: base.u_metal, sa: 2.0 * base.u_substrate },
            CornerMode::SideSplit => {
                let (c_air, c_sub) = corner_split_mode(corners.metal);
                let air = energy(CornerConstants { metal: c_air, ..corners });
                let sub = energy(CornerConstants { metal: c_sub, ..corners });
                SurfaceIntegrals { ma: air.u_metal, ms: sub.u_metal, sa: 2.0 * base.u_substrate }
            }
        }
    }
}

/// Participation ratios and capacitance of one structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticipationBreakdown {
    pub kind: StructureKind,
    pub p_ma: f64,
    pub p_ms: f64,
    pub p_sa: f64,
    pub capacitance: Capacitance,
}

impl ParticipationBreakdown {
    /// `Σ p_i tan δ_i`.
    pub fn loss(&self, stack: &DielectricStack) -> f64 {
        self.p_ma * stack.tan_ma + self.p_ms * stack.tan_ms + self.p_sa * stack.tan_sa
    }

    pub fn total(&self) -> f64 {
        self.p_ma + self.p_ms + self.p_sa
    }

    /// Re-normalise to another capacitance length.
    pub fn renormalized(&self, from: Length, to: Length) -> ParticipationBreakdown {
        let f = from.0 / to.0;
        ParticipationBreakdown { p_ma: self.p_ma * f, p_ms: self.p_ms * f, p_sa: self.p_sa * f, ..*self }
    }
}

/// `p_i = w_i t_i B_i / L`.
pub fn participations(
    kind: StructureKind,
    integrals: SurfaceIntegrals,
    stack: &DielectricStack,
    length: Length,
    capacitance: Capacitance,
) -> ParticipationBreakdown {
    let w = interface_weights(stack);
    let l = length.0;
    ParticipationBreakdown {
        kind,
        p_ma: w.ma * stack.t_ma / l * integrals.ma,
        p_ms: w.ms * stack.t_ms / l * integrals.ms,
        p_sa: w.sa * stack.t_sa / l * integrals.sa,
        capacitance,
    }
}
