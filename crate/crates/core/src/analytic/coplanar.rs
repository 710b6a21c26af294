//! Coplanar capacitor: pad |x| < a in a ground opening |x| < b.
//!
//! The dual of the ribbon with metal and gap exchanged, so K ↔ K'.
//! Differential drive puts two such capacitors in series:
//!
//! ```text
//! C_c    = ½ [(ε_s+1)/2] ε0 ℓ 4 C_K(a/b)
//! |E_c|² = (V/2K')² b² / |(x²−a²)(x²−b²)|
//! U^m/ℓ  = ε V² S_a(c_m) / (K'² a),    U^s/ℓ = ε V² S_a(c_s) / (2K'² a)
//! ```
//!
//! Single-ended drops the ½ from C and doubles the energies.

use super::ribbon::s_a;
use super::{effective_permittivity, AnalyticOptions, FieldProfile, Side};
use crate::error::{domain, Error};
use crate::participation::{CornerConstants, ParticipationBreakdown, SurfaceEnergyPair};
use crate::special::{ck_ratio, k_prime_modulus};
use crate::stack::DielectricStack;
use crate::structure::{Coplanar, StructureSpec};
use crate::units::{Capacitance, Length, EPS0};
use alloc::vec;
use alloc::vec::Vec;
use libm::sqrt;

fn drive_factor(c: &Coplanar) -> f64 {
    if c.single_ended {
        1.0
    } else {
        0.5
    }
}

pub fn capacitance(c: &Coplanar, eps_s: f64) -> Result<Capacitance, Error> {
    Ok(Capacitance(drive_factor(c) * effective_permittivity(eps_s) * EPS0 * c.length * 4.0 * ck_ratio(c.a / c.b)?))
}

pub fn energies(c: &Coplanar, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    let kp = k_prime_modulus(c.a / c.b)?;
    let m = 2.0 * drive_factor(c);
    Ok(SurfaceEnergyPair {
        u_metal: m * c.length * s_a(c.a, c.b, c.t, corners.metal) / (kp * kp * c.a),
        u_substrate: m * c.length * s_a(c.a, c.b, c.t, corners.substrate) / (2.0 * kp * kp * c.a),
        corners,
    })
}

/// |E|/V across one coplanar gap; the voltage across it is V/2
/// (differential) or V (single-ended).
pub fn field(c: &Coplanar, x: f64) -> Result<f64, Error> {
    let kp = k_prime_modulus(c.a / c.b)?;
    let d = ((x * x - c.a * c.a) * (x * x - c.b * c.b)).abs();
    if d == 0.0 {
        return Err(domain("coplanar field", x, "x off the metal edges"));
    }
    Ok(drive_factor(c) / kp * c.b / sqrt(d))
}

pub fn field_profiles(c: &Coplanar, n: usize) -> Result<Vec<FieldProfile>, Error> {
    let h = c.t / 2.0;
    field(c, 0.0)?;
    let f = |x: f64| field(c, x).unwrap_or(f64::INFINITY);
    Ok(vec![
        FieldProfile::sample(Side::Inner, 0.0, c.a - h, n, f),
        FieldProfile::sample(Side::Center, c.a + h, c.b - h, n, f),
        FieldProfile::sample(Side::Outer, c.b + h, 10.0 * c.b, n, f),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoplanarResult {
    pub breakdown: ParticipationBreakdown,
    pub energies: SurfaceEnergyPair,
    pub profiles: Vec<FieldProfile>,
}

pub fn coplanar(c: &Coplanar, stack: &DielectricStack, length: Length, opts: &AnalyticOptions) -> Result<CoplanarResult, Error> {
    let breakdown = super::evaluate(&StructureSpec::Coplanar(*c), stack, length, opts)?;
    Ok(CoplanarResult { breakdown, energies: energies(c, opts.corners)?, profiles: field_profiles(c, 65)? })
}
