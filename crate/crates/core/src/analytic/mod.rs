//! Closed-form fields, surface energies, capacitances and participations.
//!
//! Energies follow one normalisation throughout: `u = U/(ε V²)` with V the
//! full differential drive. Structure totals are dimensionless (already
//! multiplied by ℓ); the coax helpers return values per unit length.

pub mod coax;
pub mod coplanar;
pub mod ground;
pub mod plate;
pub mod ribbon;
pub mod wire;

pub use coax::{
    coax_fields_and_energies, corner_energy_constant, corner_field, edge_enhancement, flat_coax_energies,
    flat_coax_field, flat_coax_voltage_integral, CoaxSolution, EdgeEnhancement,
};
pub use coplanar::{coplanar, CoplanarResult};
pub use ground::{ribbon_with_ground, RibbonWithGroundResult};
pub use plate::parallel_plate;
pub use ribbon::{ribbon, ribbon_self_capacitance_participation, s_a, RibbonResult, Sections};
pub use wire::{
    integrand_optimum, optimize_taper_slope, straight_tapered_crossover, straight_wire, tapered_wire, TaperOptimum,
    WireResult,
};

use crate::error::Error;
use crate::participation::{
    participations, CornerConstants, CornerMode, ParticipationBreakdown, SurfaceEnergyPair, SurfaceIntegrals,
};
use crate::stack::DielectricStack;
use crate::structure::StructureSpec;
use crate::units::{Capacitance, Length};
use alloc::vec::Vec;

/// Which surface a field sample lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Metal,
    Substrate,
    Inner,
    Center,
    Outer,
    Ground,
}

/// Sampled |E|/V along a surface, truncated at the t/2 cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile {
    pub side: Side,
    pub x: Vec<f64>,
    pub e_over_v: Vec<f64>,
}

impl FieldProfile {
    pub(crate) fn sample<F: Fn(f64) -> f64>(side: Side, lo: f64, hi: f64, n: usize, f: F) -> FieldProfile {
        let x = edge_graded(lo, hi, n);
        let e_over_v = x.iter().map(|&x| f(x)).collect();
        FieldProfile { side, x, e_over_v }
    }
}

/// `n` points on `[lo, hi]` bunched toward both ends (cosine spacing).
pub fn edge_graded(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return alloc::vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| {
            let th = core::f64::consts::PI * i as f64 / (n - 1) as f64;
            lo + (hi - lo) * 0.5 * (1.0 - libm::cos(th))
        })
        .collect()
}

/// Corner treatment used by every closed-form evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AnalyticOptions {
    pub corners: CornerConstants,
    pub mode: CornerMode,
}

/// `[(ε_s + 1)/2]`: half the field sits in vacuum, half in the substrate.
pub fn effective_permittivity(eps_s: f64) -> f64 {
    0.5 * (eps_s + 1.0)
}

/// Capacitance of any structure on a substrate of relative permittivity `eps_s`.
pub fn capacitance(spec: &StructureSpec, eps_s: f64) -> Result<Capacitance, Error> {
    spec.validate().into_result()?;
    Ok(match spec {
        StructureSpec::ParallelPlate(p) => plate::capacitance(p),
        StructureSpec::Ribbon(r) => ribbon::capacitance(r, eps_s)?,
        StructureSpec::Coplanar(c) => coplanar::capacitance(c, eps_s)?,
        StructureSpec::RibbonWithGround(g) => ground::capacitance(g, eps_s)?,
        StructureSpec::StraightWire(w) => wire::straight_capacitance(w, eps_s),
        StructureSpec::TaperedWire(w) => wire::tapered_capacitance(w, eps_s),
    })
}

/// Total normalised surface energies (metal faces, substrate) at the given
/// corner constants.
pub fn surface_energy(spec: &StructureSpec, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    spec.validate().into_result()?;
    match spec {
        StructureSpec::ParallelPlate(p) => Ok(plate::energies(p, corners)),
        StructureSpec::Ribbon(r) => ribbon::energies(r, corners),
        StructureSpec::Coplanar(c) => coplanar::energies(c, corners),
        StructureSpec::RibbonWithGround(g) => ground::energies(g, corners),
        StructureSpec::StraightWire(w) => Ok(wire::straight_energies(w, corners)),
        StructureSpec::TaperedWire(w) => Ok(wire::tapered_energies(w, corners)),
    }
}

/// Bracket integrals; the plate has only a metal–air term.
pub fn surface_integrals(spec: &StructureSpec, opts: &AnalyticOptions) -> Result<SurfaceIntegrals, Error> {
    let e = |c: CornerConstants| surface_energy(spec, c);
    // surface a validation error once, then evaluate infallibly
    e(opts.corners)?;
    let mut s = SurfaceIntegrals::from_energy_model(|c| e(c).expect("validated"), opts.corners, opts.mode);
    if let StructureSpec::ParallelPlate(_) = spec {
        s.ms = 0.0;
        s.sa = 0.0;
        if opts.mode == CornerMode::SideSplit {
            s.ma = e(opts.corners)?.u_metal;
        }
    }
    Ok(s)
}

/// Participation ratios of one structure normalised by `length = C/ε0`.
pub fn evaluate(
    spec: &StructureSpec,
    stack: &DielectricStack,
    length: Length,
    opts: &AnalyticOptions,
) -> Result<ParticipationBreakdown, Error> {
    let integrals = surface_integrals(spec, opts)?;
    let c = capacitance(spec, stack.eps_s)?;
    Ok(participations(spec.kind(), integrals, stack, length, c))
}
