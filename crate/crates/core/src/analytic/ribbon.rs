//! Differential ribbon capacitor: strips at a < |x| < b driven ±V/2.
//!
//! ```text
//! C_r     = [(ε_s+1)/2] ε0 ℓ / C_K(a/b),      C_K = K/K'
//! |E_r|²  = (V/2K)² b² / |(x²−a²)(x²−b²)|
//! U^m/ℓ   = ε V² S_a(c_m) / (2K² a)
//! U^s/ℓ   = ε V² S_a(c_s) / (4K² a)
//! ```

use super::{effective_permittivity, AnalyticOptions, FieldProfile, Side};
use crate::error::{domain, Error};
use crate::participation::{corner_split_mode, CornerConstants, CornerMode, ParticipationBreakdown, SurfaceEnergyPair};
use crate::special::{ck_ratio, k_modulus, k_prime_modulus};
use crate::stack::{interface_weights, DielectricStack};
use crate::structure::{Ribbon, StructureSpec};
use crate::units::{Capacitance, Length, EPS0};
use alloc::vec;
use alloc::vec::Vec;
use libm::{log, sqrt};

/// Dimensionless edge integral with corner constant `c`; `S_a/a = S_c`.
pub fn s_a(a: f64, b: f64, t: f64, c: f64) -> f64 {
    let gap = log((b - a) / (b + a));
    let num = (log(4.0 * a / t) + c + gap) + (a / b) * (log(4.0 * b / t) + c + gap);
    num / (2.0 * (1.0 - a * a / (b * b)))
}

/// Field-squared integrals over the inner, centre and outer sections (1/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sections {
    pub inner: f64,
    pub center: f64,
    pub outer: f64,
}

/// Leading-order closed forms, for which `center = inner + outer` holds
/// identically.
pub fn sections_approx(a: f64, b: f64, t: f64) -> Sections {
    let den = 2.0 * (1.0 - a * a / (b * b));
    let gap = log((b - a) / (b + a));
    let l4a = log(4.0 * a / t);
    let l4b = log(4.0 * b / t);
    Sections {
        inner: (l4a / a + gap / b) / den,
        center: ((l4a + gap) / a + (l4b + gap) / b) / den,
        outer: (gap / a + l4b / b) / den,
    }
}

// G' = b²/((a²−x²)(b²−x²)) on each section up to sign; G(0) = G(∞) = 0
fn antiderivative(a: f64, b: f64, x: f64) -> f64 {
    let la = log(((a + x) / (a - x)).abs()) / a;
    let lb = log(((b + x) / (b - x)).abs()) / b;
    (la - lb) / (2.0 * (1.0 - a * a / (b * b)))
}

/// Exact section integrals with the t/2 cutoffs.
pub fn sections_exact(a: f64, b: f64, t: f64) -> Result<Sections, Error> {
    if !(0.0 < a && a < b && t > 0.0 && a + t / 2.0 < b - t / 2.0 && t < 2.0 * a) {
        return Err(domain("ribbon sections", t, "0 < a < b with the cutoffs inside the gap"));
    }
    let g = |x| antiderivative(a, b, x);
    Ok(Sections {
        inner: g(a - t / 2.0),
        center: g(a + t / 2.0) - g(b - t / 2.0),
        outer: -g(b + t / 2.0),
    })
}

pub fn capacitance(r: &Ribbon, eps_s: f64) -> Result<Capacitance, Error> {
    Ok(Capacitance(effective_permittivity(eps_s) * EPS0 * r.length / ck_ratio(r.a / r.b)?))
}

pub fn energies(r: &Ribbon, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    let k = k_modulus(r.a / r.b)?;
    Ok(SurfaceEnergyPair {
        u_metal: r.length * s_a(r.a, r.b, r.t, corners.metal) / (2.0 * k * k * r.a),
        u_substrate: r.length * s_a(r.a, r.b, r.t, corners.substrate) / (4.0 * k * k * r.a),
        corners,
    })
}

/// |E|/V on the surface at lateral position x.
pub fn field(r: &Ribbon, x: f64) -> Result<f64, Error> {
    let k = k_modulus(r.a / r.b)?;
    let d = ((x * x - r.a * r.a) * (x * x - r.b * r.b)).abs();
    if d == 0.0 {
        return Err(domain("ribbon field", x, "x off the metal edges"));
    }
    Ok(0.5 / k * r.b / sqrt(d))
}

/// Inner, centre and outer profiles, cut off at t/2 from each edge; the
/// outer section is sampled to 10 b.
pub fn field_profiles(r: &Ribbon, n: usize) -> Result<Vec<FieldProfile>, Error> {
    let h = r.t / 2.0;
    let f = |x: f64| field(r, x).unwrap_or(f64::INFINITY);
    field(r, 0.0)?;
    Ok(vec![
        FieldProfile::sample(Side::Inner, 0.0, r.a - h, n, f),
        FieldProfile::sample(Side::Center, r.a + h, r.b - h, n, f),
        FieldProfile::sample(Side::Outer, r.b + h, 10.0 * r.b, n, f),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct RibbonResult {
    pub breakdown: ParticipationBreakdown,
    pub energies: SurfaceEnergyPair,
    pub profiles: Vec<FieldProfile>,
}

pub fn ribbon(r: &Ribbon, stack: &DielectricStack, length: Length, opts: &AnalyticOptions) -> Result<RibbonResult, Error> {
    let spec = StructureSpec::Ribbon(*r);
    let breakdown = super::evaluate(&spec, stack, length, opts)?;
    Ok(RibbonResult { breakdown, energies: energies(r, opts.corners)?, profiles: field_profiles(r, 65)? })
}

/// Participation of a ribbon carrying the whole qubit capacitance:
///
/// ```text
/// p_i(C_r) = w_i t_i / (a (ε_s+1)/2) · ½ S_a(c) / (K K')
/// ```
///
/// Independent of ℓ; identical for the coplanar dual.
pub fn ribbon_self_capacitance_participation(
    r: &Ribbon,
    stack: &DielectricStack,
    opts: &AnalyticOptions,
) -> Result<ParticipationBreakdown, Error> {
    StructureSpec::Ribbon(*r).validate().into_result()?;
    let k = r.a / r.b;
    let kk = k_modulus(k)? * k_prime_modulus(k)?;
    let w = interface_weights(stack);
    let (c_air, c_sub) = match opts.mode {
        CornerMode::Halves => (opts.corners.metal, opts.corners.metal),
        CornerMode::SideSplit => corner_split_mode(opts.corners.metal),
    };
    let f = |c: f64| 0.5 * s_a(r.a, r.b, r.t, c) / (kk * r.a * effective_permittivity(stack.eps_s));
    let c = capacitance(r, stack.eps_s)?;
    Ok(ParticipationBreakdown {
        kind: crate::structure::StructureKind::Ribbon,
        p_ma: w.ma * stack.t_ma * f(c_air),
        p_ms: w.ms * stack.t_ms * f(c_sub),
        p_sa: w.sa * stack.t_sa * f(opts.corners.substrate),
        capacitance: c,
    })
}
