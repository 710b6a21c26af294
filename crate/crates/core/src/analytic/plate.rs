//! Differential parallel-plate capacitor.
//!
//! Two plates of area ℓw face a common plane across gap s; the two halves
//! sit in series, hence `C_p = ½ ε0 ℓ w / s`. The field V/s fills the
//! vacuum gap, so only the metal–air interfaces carry energy.

use crate::error::Error;
use crate::participation::{participations, CornerConstants, ParticipationBreakdown, SurfaceEnergyPair, SurfaceIntegrals};
use crate::stack::DielectricStack;
use crate::structure::{ParallelPlate, StructureKind, StructureSpec};
use crate::units::{Capacitance, Length, EPS0};

pub fn capacitance(p: &ParallelPlate) -> Capacitance {
    Capacitance(0.5 * EPS0 * p.length * p.w / p.s)
}

/// Both facing plate surfaces at field V/s: `u_m = ℓ w / s²`.
pub fn energies(p: &ParallelPlate, corners: CornerConstants) -> SurfaceEnergyPair {
    SurfaceEnergyPair { u_metal: p.length * p.w / (p.s * p.s), u_substrate: 0.0, corners }
}

/// `p_MA = (1/ε_MA)(t_MA/L)(ℓw/s²)`; MS and SA are zero.
pub fn parallel_plate(p: &ParallelPlate, stack: &DielectricStack, length: Length) -> Result<ParticipationBreakdown, Error> {
    StructureSpec::ParallelPlate(*p).validate().into_result()?;
    let u = energies(p, CornerConstants::ZERO).u_metal;
    let integrals = SurfaceIntegrals { ma: u, ms: 0.0, sa: 0.0 };
    Ok(participations(StructureKind::ParallelPlate, integrals, stack, length, capacitance(p)))
}
