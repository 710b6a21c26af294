//! Junction wires: two leads of length d each, meeting at the junction.
//!
//! A flat wire of half-width r̄ at distance y from the junction looks like
//! a flat coax of shield radius 2y, so its field envelope is
//! `E_fw = ½ V / (r̄ ln(4y/r̄))` and the metal energy is a line integral
//!
//! ```text
//! U^m = 2 ε V² ∫_{2r̄}^{d} (ln(4r̄/t) + c_m) / (4 r̄ ln²(4y/r̄)) dy
//!     ≈ (ε V²/2) (ln(4r̄/t) + c_m) / ln²(d/r̄) · d/r̄
//! ```
//!
//! Tapering lets r̄ follow y, `r̄(y) = max(r̄0, (y − 5t) S)`, turning the
//! linear growth in d into a logarithmic one.

use super::{effective_permittivity, AnalyticOptions};
use crate::error::Error;
use crate::optimize::{bisect, golden_section};
use crate::participation::{CornerConstants, ParticipationBreakdown, SurfaceEnergyPair};
use crate::quad::integrate_pieces;
use crate::stack::DielectricStack;
use crate::structure::{StraightWire, StructureSpec, TaperedWire, MAX_TAPER_SLOPE};
use crate::units::{Capacitance, Length, EPS0};
use alloc::vec::Vec;
use libm::{log, sqrt};

pub const STRAIGHT_CAP_COEFF: f64 = 4.1;
pub const TAPERED_CAP_COEFF: f64 = 3.5;
pub const TAPERED_METAL_COEFF: f64 = 0.68;
pub const TAPERED_SUBSTRATE_COEFF: f64 = 0.29;
/// Taper starts this many film thicknesses from the junction.
pub const TAPER_START: f64 = 5.0;
/// Slope search interval for the taper optimiser.
pub const SLOPE_RANGE: (f64, f64) = (0.05, MAX_TAPER_SLOPE);

const QUAD_REL: f64 = 1e-10;

/// Surface field per volt of a round wire of radius r at distance y.
pub fn cylinder_field(r: f64, y: f64) -> f64 {
    0.5 / (r * log(2.0 * y / r))
}

/// Centre-line field envelope per volt of a flat wire of half-width r̄.
pub fn flat_wire_field(rbar: f64, y: f64) -> f64 {
    0.5 / (rbar * log(4.0 * y / rbar))
}

/// Metal line energy per unit length of both wires, normalised by ε V².
pub fn metal_line_energy(rbar: f64, y: f64, t: f64, c_m: f64) -> f64 {
    let lg = log(4.0 * y / rbar);
    2.0 * (log(4.0 * rbar / t) + c_m) / (4.0 * rbar * lg * lg)
}

/// Substrate line energy of both wires: a quarter of the flat-coax value at R = 2y.
pub fn substrate_line_energy(rbar: f64, y: f64, t: f64, c_s: f64) -> f64 {
    let lg = log(4.0 * y / rbar);
    2.0 * (log(4.0 * rbar / t) + c_s - rbar / y) / (8.0 * rbar * lg * lg)
}

pub fn straight_capacitance(w: &StraightWire, eps_s: f64) -> Capacitance {
    Capacitance(STRAIGHT_CAP_COEFF * effective_permittivity(eps_s) * EPS0 * w.d / log(w.d / w.r))
}

/// Closed-form totals; `u_m = ½ (ln(4r̄/t) + c_m)/ln²(d/r̄) · d/r̄`, `u_s` half of that with c_s.
pub fn straight_energies(w: &StraightWire, corners: CornerConstants) -> SurfaceEnergyPair {
    let l = log(w.d / w.r);
    let base = log(4.0 * w.r / w.t);
    let scale = w.d / w.r / (l * l);
    SurfaceEnergyPair {
        u_metal: 0.5 * (base + corners.metal) * scale,
        u_substrate: 0.25 * (base + corners.substrate) * scale,
        corners,
    }
}

/// Direct quadrature of the line integrals from 2r̄ to d.
pub fn straight_energy_integral(w: &StraightWire, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    let pts = [2.0 * w.r, w.d];
    let um = integrate_pieces(|y| metal_line_energy(w.r, y, w.t, corners.metal), &pts, 0.0, QUAD_REL)?;
    let us = integrate_pieces(|y| substrate_line_energy(w.r, y, w.t, corners.substrate), &pts, 0.0, QUAD_REL)?;
    Ok(SurfaceEnergyPair { u_metal: um, u_substrate: us, corners })
}

/// `max(r̄0, (y − 5t) S)`.
pub fn taper_half_width(r0: f64, slope: f64, t: f64, y: f64) -> f64 {
    r0.max((y - TAPER_START * t) * slope)
}

pub fn tapered_capacitance(w: &TaperedWire, eps_s: f64) -> Capacitance {
    Capacitance(TAPERED_CAP_COEFF * effective_permittivity(eps_s) * EPS0 * sqrt(w.slope) * w.d)
}

fn tapered_fit(w: &TaperedWire, coeff: f64, c: f64) -> f64 {
    let l4 = log(4.0 / w.slope);
    coeff * log(w.d / w.r0) / w.slope * (log(4.0 * w.slope * w.d / w.t) + c) / (l4 * l4)
}

/// Closed-form fits with prefactors 0.68 (metal) and 0.29 (substrate).
pub fn tapered_energies(w: &TaperedWire, corners: CornerConstants) -> SurfaceEnergyPair {
    SurfaceEnergyPair {
        u_metal: tapered_fit(w, TAPERED_METAL_COEFF, corners.metal),
        u_substrate: tapered_fit(w, TAPERED_SUBSTRATE_COEFF, corners.substrate),
        corners,
    }
}

/// Line integrals over the tapered profile, from 2r̄0 (as for the straight
/// wire) to d, split at the start of the taper.
pub fn tapered_energy_integral(w: &TaperedWire, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    let y0 = 2.0 * w.r0;
    let kink = TAPER_START * w.t + w.r0 / w.slope;
    let mut pts = alloc::vec![y0];
    if kink > y0 && kink < w.d {
        pts.push(kink);
    }
    pts.push(w.d);
    let r = |y: f64| taper_half_width(w.r0, w.slope, w.t, y);
    let um = integrate_pieces(|y| metal_line_energy(r(y), y, w.t, corners.metal), &pts, 0.0, QUAD_REL)?;
    let us = integrate_pieces(|y| substrate_line_energy(r(y), y, w.t, corners.substrate), &pts, 0.0, QUAD_REL)?;
    Ok(SurfaceEnergyPair { u_metal: um, u_substrate: us, corners })
}

/// Half-width ratio r̄/y that minimises the metal line energy at distance y.
pub fn integrand_optimum(y: f64, t: f64, c_m: f64) -> f64 {
    golden_section(|rho| metal_line_energy(rho * y, y, t, c_m), 0.02, 1.5, 1e-10).0
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaperOptimum {
    pub slope: f64,
    pub energy: f64,
    /// (S, u_metal) from the numeric integral, ascending in S.
    pub curve: Vec<(f64, f64)>,
}

impl TaperOptimum {
    /// Energy at `slope` relative to the optimum, from the same integral.
    pub fn relative_energy(&self, w: &TaperedWire, slope: f64, corners: CornerConstants) -> Result<f64, Error> {
        let e = tapered_energy_integral(&TaperedWire { slope, ..*w }, corners)?.u_metal;
        Ok(e / self.energy)
    }
}

/// Minimises the integrated metal energy over S ∈ [0.05, 0.45].
pub fn optimize_taper_slope(r0: f64, d: f64, t: f64, corners: CornerConstants) -> Result<TaperOptimum, Error> {
    let base = TaperedWire { r0, slope: MAX_TAPER_SLOPE, d, t };
    StructureSpec::TaperedWire(base).validate().into_result()?;
    let energy = |s: f64| {
        tapered_energy_integral(&TaperedWire { slope: s, ..base }, corners)
            .map(|e| e.u_metal)
            .unwrap_or(f64::INFINITY)
    };
    let (lo, hi) = SLOPE_RANGE;
    let (slope, e) = golden_section(energy, lo, hi, 1e-6);
    let n = 41;
    let curve = (0..n)
        .map(|i| {
            let s = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            (s, energy(s))
        })
        .collect();
    Ok(TaperOptimum { slope, energy: e, curve })
}

/// Wire length at which the closed-form tapered metal energy drops below
/// the straight one (r̄ = r̄0).
pub fn straight_tapered_crossover(r0: f64, t: f64, slope: f64, corners: CornerConstants) -> Option<f64> {
    let diff = |ln_d: f64| {
        let d = libm::exp(ln_d);
        let s = straight_energies(&StraightWire { r: r0, d, t }, corners).u_metal;
        let tw = tapered_energies(&TaperedWire { r0, slope, d, t }, corners).u_metal;
        tw - s
    };
    // scan down from long wires for the last sign change, then refine
    let lo = log((2.0 * r0).max(TAPER_START * t) * 1.01);
    let hi = lo + log(1e5);
    let n = 400;
    let at = |i: usize| lo + (hi - lo) * i as f64 / n as f64;
    if diff(at(n)) >= 0.0 {
        return None;
    }
    let i = (0..n).rev().find(|&i| diff(at(i)) >= 0.0)?;
    bisect(diff, at(i), at(i + 1), 1e-12).map(libm::exp)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WireResult {
    pub breakdown: ParticipationBreakdown,
    pub capacitance: Capacitance,
    pub energies: SurfaceEnergyPair,
}

pub fn straight_wire(w: &StraightWire, stack: &DielectricStack, length: Length, opts: &AnalyticOptions) -> Result<WireResult, Error> {
    let breakdown = super::evaluate(&StructureSpec::StraightWire(*w), stack, length, opts)?;
    Ok(WireResult { breakdown, capacitance: breakdown.capacitance, energies: straight_energies(w, opts.corners) })
}

pub fn tapered_wire(w: &TaperedWire, stack: &DielectricStack, length: Length, opts: &AnalyticOptions) -> Result<WireResult, Error> {
    let breakdown = super::evaluate(&StructureSpec::TaperedWire(*w), stack, length, opts)?;
    Ok(WireResult { breakdown, capacitance: breakdown.capacitance, energies: tapered_energies(w, opts.corners) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    const C: CornerConstants = CornerConstants::DEFAULT;

    #[test]
    fn field_forms() {
        assert!((cylinder_field(0.1, 10.0) - 0.5 / (0.1 * 200f64.ln())).abs() < 1e-15);
        assert!((flat_wire_field(0.1, 10.0) - 0.5 / (0.1 * 400f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn line_energy_is_quarter_flat_coax() {
        // ¼ of U_f^m/ℓ at R = 2y, times 2 wires
        let (r, y, t) = (0.1, 7.0, 0.05);
        let e = crate::analytic::flat_coax_energies(r, 2.0 * y, t, C).unwrap();
        assert!((metal_line_energy(r, y, t, 5.0) / (0.5 * e.u_metal) - 1.0).abs() < 1e-13);
        assert!((substrate_line_energy(r, y, t, 1.6) / (0.5 * e.u_substrate) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn straight_integral_by_independent_rule() {
        // Simpson on a log grid as the oracle
        let w = StraightWire { r: 0.1, d: 50.0, t: 0.1 };
        let n = 20000;
        let (a, b) = ((2.0 * w.r).ln(), w.d.ln());
        let h = (b - a) / n as f64;
        let f = |u: f64| {
            let y = u.exp();
            metal_line_energy(w.r, y, w.t, 5.0) * y
        };
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let simpson = s * h / 3.0;
        let q = straight_energy_integral(&w, C).unwrap().u_metal;
        assert!((q / simpson - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_length_wire_has_no_energy() {
        let w = StraightWire { r: 0.1, d: 0.2 + 1e-9, t: 0.1 };
        assert!(straight_energy_integral(&w, C).unwrap().u_metal < 1e-6);
    }

    #[test]
    fn taper_profile_and_integral_reduce_to_straight() {
        assert_eq!(taper_half_width(0.1, 0.4, 0.1, 0.3), 0.1);
        assert!((taper_half_width(0.1, 0.4, 0.1, 10.5) - 4.0).abs() < 1e-12);
        // before the taper starts both wires are identical
        let d = TAPER_START * 0.1 + 0.1 / 0.4 - 1e-9;
        let s = straight_energy_integral(&StraightWire { r: 0.1, d, t: 0.1 }, C).unwrap();
        let tw = tapered_energy_integral(&TaperedWire { r0: 0.1, slope: 0.4, d, t: 0.1 }, C).unwrap();
        assert!((s.u_metal / tw.u_metal - 1.0).abs() < 1e-9);
    }

    #[test]
    fn integrand_optimum_matches_brute_force() {
        for yt in [10.0, 100.0, 1000.0] {
            let rho = integrand_optimum(yt * 0.1, 0.1, 5.0);
            let mut best = (0.0, f64::INFINITY);
            for i in 200..15000 {
                let r = i as f64 * 1e-4;
                let e = metal_line_energy(r * yt * 0.1, yt * 0.1, 0.1, 5.0);
                if e < best.1 {
                    best = (r, e);
                }
            }
            assert!((rho - best.0).abs() < 2e-4, "y/t={yt}: {rho} vs {}", best.0);
        }
    }

    #[test]
    fn crossover_and_ordering() {
        let d = straight_tapered_crossover(0.1, 0.1, 0.4, C).unwrap();
        assert!(d > 5.0 && d < 15.0, "{d}");
        for d in [10.0, 20.0, 100.0, 1000.0] {
            let s = straight_energies(&StraightWire { r: 0.1, d, t: 0.1 }, C).u_metal;
            let tw = tapered_energies(&TaperedWire { r0: 0.1, slope: 0.4, d, t: 0.1 }, C).u_metal;
            assert!(tw < s, "d={d}");
        }
    }

    #[test]
    fn capacitances() {
        let w = StraightWire { r: 0.1e-6, d: 50e-6, t: 0.1e-6 };
        let c = straight_capacitance(&w, 11.7).0;
        assert!((c - 4.1 * 6.35 * EPS0 * 50e-6 / 500f64.ln()).abs() < 1e-25);
        let tw = TaperedWire { r0: 0.1e-6, slope: 0.4, d: 50e-6, t: 0.1e-6 };
        assert!((tapered_capacitance(&tw, 1.0).0 - 3.5 * EPS0 * 0.4f64.sqrt() * 50e-6).abs() < 1e-25);
    }

    #[test]
    fn quadrature_helper_agrees() {
        let v = integrate(|y| metal_line_energy(0.1, y, 0.1, 0.0), 0.2, 5.0, 0.0, 1e-12).unwrap();
        let w = StraightWire { r: 0.1, d: 5.0, t: 0.1 };
        let e = straight_energy_integral(&w, CornerConstants { metal: 0.0, substrate: 0.0 }).unwrap();
        assert!((v - e.u_metal).abs() < 1e-9 * v);
    }
}
