//! Ribbon with a surrounding ground plane at |x| > c.
//!
//! Fit forms built on the ribbon and coplanar solutions:
//!
//! ```text
//! |E_rg|² = |E_r|² c² / |x² − c²|
//! C_rg    = C_r / [1 − (x_e/c)²]^0.23,         x_e = b − 0.15 (b − 1.2a)
//! U^m/ℓ   = ε V² [0.98 S_a(a,b,c_m) / (2K²(a/b) a) + 1.70 S_ao(b,c,c_m) / (2K'²(b/c) b)]
//! U^s/ℓ   = ε V² [0.95 S_a(a,b,c_s) / (4K²(a/b) a) + 0.80 S_a(b,c,c_s) / (4K'²(b/c) b)]
//! ```

use super::ribbon::{self, s_a};
use super::{AnalyticOptions, FieldProfile, Side};
use crate::error::{domain, Error};
use crate::participation::{CornerConstants, ParticipationBreakdown, SurfaceEnergyPair};
use crate::special::{k_modulus, k_prime_modulus};
use crate::stack::DielectricStack;
use crate::structure::{Ribbon, RibbonWithGround, StructureSpec};
use crate::units::{Capacitance, Length};
use alloc::vec;
use alloc::vec::Vec;
use libm::{log, pow, sqrt};

pub const CAP_EXPONENT: f64 = 0.23;
pub const METAL_INNER: f64 = 0.98;
pub const METAL_OUTER: f64 = 1.70;
pub const SUBSTRATE_INNER: f64 = 0.95;
pub const SUBSTRATE_OUTER: f64 = 0.80;

/// Outer-metal edge integral of the coplanar section between b and c.
pub fn s_ao(b: f64, c: f64, t: f64, c_m: f64) -> f64 {
    (log((c - b) / (c + b)) + (b / c) * (log(4.0 * c / t) + c_m)) / (2.0 * (1.0 - b * b / (c * c)))
}

/// Effective edge position entering the capacitance fit.
pub fn x_e(a: f64, b: f64) -> f64 {
    b - 0.15 * (b - 1.2 * a)
}

fn as_ribbon(g: &RibbonWithGround) -> Ribbon {
    Ribbon { a: g.a, b: g.b, length: g.length, t: g.t }
}

pub fn capacitance(g: &RibbonWithGround, eps_s: f64) -> Result<Capacitance, Error> {
    let cr = ribbon::capacitance(&as_ribbon(g), eps_s)?;
    let xe = x_e(g.a, g.b);
    let arg = 1.0 - (xe / g.c) * (xe / g.c);
    if !(arg > 0.0) {
        return Err(domain("ribbon with ground capacitance", g.c, "c > x_e"));
    }
    Ok(Capacitance(cr.0 / pow(arg, CAP_EXPONENT)))
}

pub fn energies(g: &RibbonWithGround, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    let k = k_modulus(g.a / g.b)?;
    let kpo = k_prime_modulus(g.b / g.c)?;
    let (a, b, c, t, l) = (g.a, g.b, g.c, g.t, g.length);
    let metal = METAL_INNER / (2.0 * k * k) * s_a(a, b, t, corners.metal) / a
        + METAL_OUTER / (2.0 * kpo * kpo) * s_ao(b, c, t, corners.metal) / b;
    let substrate = SUBSTRATE_INNER / (4.0 * k * k) * s_a(a, b, t, corners.substrate) / a
        + SUBSTRATE_OUTER / (4.0 * kpo * kpo) * s_a(b, c, t, corners.substrate) / b;
    Ok(SurfaceEnergyPair { u_metal: l * metal, u_substrate: l * substrate, corners })
}

pub fn field(g: &RibbonWithGround, x: f64) -> Result<f64, Error> {
    let er = ribbon::field(&as_ribbon(g), x)?;
    let d = (x * x - g.c * g.c).abs();
    if d == 0.0 {
        return Err(domain("ribbon with ground field", x, "x != ±c"));
    }
    Ok(er * g.c / sqrt(d))
}

pub fn field_profiles(g: &RibbonWithGround, n: usize) -> Result<Vec<FieldProfile>, Error> {
    let h = g.t / 2.0;
    field(g, 0.0)?;
    let f = |x: f64| field(g, x).unwrap_or(f64::INFINITY);
    Ok(vec![
        FieldProfile::sample(Side::Inner, 0.0, g.a - h, n, f),
        FieldProfile::sample(Side::Center, g.a + h, g.b - h, n, f),
        FieldProfile::sample(Side::Outer, g.b + h, g.c - h, n, f),
        FieldProfile::sample(Side::Ground, g.c + h, g.c + 10.0 * g.b, n, f),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct RibbonWithGroundResult {
    pub breakdown: ParticipationBreakdown,
    pub energies: SurfaceEnergyPair,
    pub profiles: Vec<FieldProfile>,
}

pub fn ribbon_with_ground(
    g: &RibbonWithGround,
    stack: &DielectricStack,
    length: Length,
    opts: &AnalyticOptions,
) -> Result<RibbonWithGroundResult, Error> {
    let breakdown = super::evaluate(&StructureSpec::RibbonWithGround(*g), stack, length, opts)?;
    Ok(RibbonWithGroundResult { breakdown, energies: energies(g, opts.corners)?, profiles: field_profiles(g, 65)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: f64, c: f64) -> RibbonWithGround {
        RibbonWithGround { a, b: 100.0, c, length: 1000.0, t: 0.1 }
    }

    #[test]
    fn distant_ground_recovers_ribbon() {
        let g = spec(50.0, 1e9);
        let cr = ribbon::capacitance(&as_ribbon(&g), 11.7).unwrap().0;
        assert!((capacitance(&g, 11.7).unwrap().0 / cr - 1.0).abs() < 1e-12);
        let outer = METAL_OUTER / 2.0 * s_ao(100.0, 1e9, 0.1, 5.0) / 100.0 / k_prime_modulus(1e-7).unwrap().powi(2);
        assert!(outer < 1e-3 * energies(&g, CornerConstants::DEFAULT).unwrap().u_metal / 1000.0);
    }

    #[test]
    fn capacitance_decreases_toward_ribbon() {
        let cr = ribbon::capacitance(&as_ribbon(&spec(25.0, 200.0)), 1.0).unwrap().0;
        let mut prev = f64::INFINITY;
        for i in 0..=30 {
            let rel = 0.1 + i as f64 * 0.1;
            let c = capacitance(&spec(25.0, 100.0 * (1.0 + rel)), 1.0).unwrap().0;
            assert!(c < prev && c > cr);
            prev = c;
        }
    }

    #[test]
    fn ground_inside_outer_edge_rejected() {
        let g = spec(50.0, 90.0);
        assert!(!StructureSpec::RibbonWithGround(g).validate().is_empty());
    }
}
