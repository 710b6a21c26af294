//! Round and flat coax: the reference fields behind every edge formula.
//!
//! ```text
//! coax       E_c = V / (r ln(R/r)),            E(x) = E_c r/x
//! flat coax  E_f = V / (r̄ ln(2R/r̄)),           E(x) = E_f √(r̄/|r̄+x|) √(r̄/|r̄−x|)
//! U_f^m/ℓ = ε E_f² r̄ [ln(4r̄/t) + c_m]
//! U_f^s/ℓ = ε E_f² (r̄/2) [ln(4r̄/t) + c_s − 2r̄/R]
//! ```

use super::{FieldProfile, Side};
use crate::error::{domain, Error};
use crate::participation::{CornerConstants, SurfaceEnergyPair};
use core::f64::consts::PI;
use libm::{acosh, log, pow, sqrt};

/// Exponent of the field near a 90° outside corner.
pub const CORNER_EXPONENT: f64 = -1.0 / 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CoaxSolution {
    /// Surface field of the inner conductor per volt, 1/m.
    pub e_c: f64,
    /// Field along the substrate cut, r ≤ x ≤ R.
    pub profile: FieldProfile,
    /// Per unit length, 1/m.
    pub energies: SurfaceEnergyPair,
}

pub fn coax_fields_and_energies(r: f64, big_r: f64) -> Result<CoaxSolution, Error> {
    if !(r > 0.0 && r < big_r) {
        return Err(domain("coax", r, "0 < r < R"));
    }
    let e_c = 1.0 / (r * log(big_r / r));
    let profile = FieldProfile::sample(Side::Substrate, r, big_r, 64, |x| e_c * r / x);
    let energies = SurfaceEnergyPair {
        u_metal: e_c * e_c * r * PI,
        u_substrate: e_c * e_c * r * (1.0 - r / big_r),
        corners: CornerConstants::ZERO,
    };
    Ok(CoaxSolution { e_c, profile, energies })
}

/// Centre field of the flat coax, V/m per volt.
pub fn flat_coax_center_field(rbar: f64, big_r: f64) -> f64 {
    1.0 / (rbar * log(2.0 * big_r / rbar))
}

/// |E|/V at lateral position `x` for a strip of half-width r̄ in a shield of radius R.
pub fn flat_coax_field(x: f64, rbar: f64, big_r: f64) -> Result<f64, Error> {
    if !(rbar > 0.0 && big_r > 2.0 * rbar) {
        return Err(domain("flat_coax_field", big_r, "R > 2 r̄"));
    }
    let gap = (rbar - x.abs()).abs();
    if gap == 0.0 {
        return Err(domain("flat_coax_field", x, "x != ±r̄"));
    }
    let e0 = flat_coax_center_field(rbar, big_r);
    Ok(e0 * sqrt(rbar / (rbar + x).abs()) * sqrt(rbar / (rbar - x).abs()))
}

/// `∫_{r̄}^{R} E_f(x) dx / V = acosh(R/r̄) / ln(2R/r̄) = 1 + O(r̄²/R²)`.
pub fn flat_coax_voltage_integral(rbar: f64, big_r: f64) -> f64 {
    acosh(big_r / rbar) / log(2.0 * big_r / rbar)
}

/// Metal and substrate line energies per unit length, normalised by ε V².
pub fn flat_coax_energies(rbar: f64, big_r: f64, t: f64, corners: CornerConstants) -> Result<SurfaceEnergyPair, Error> {
    if !(t > 0.0 && t < rbar) {
        return Err(domain("flat_coax_energies", t, "0 < t < r̄"));
    }
    if !(big_r > 2.0 * rbar) {
        return Err(domain("flat_coax_energies", big_r, "R > 2 r̄"));
    }
    let e0 = flat_coax_center_field(rbar, big_r);
    let lg = log(4.0 * rbar / t);
    Ok(SurfaceEnergyPair {
        u_metal: e0 * e0 * rbar * (lg + corners.metal),
        u_substrate: e0 * e0 * 0.5 * rbar * (lg + corners.substrate - 2.0 * rbar / big_r),
        corners,
    })
}

/// Corner field at distance `r_c ≤ t/2`, matched to `e_cut` at t/2.
pub fn corner_field(e_cut: f64, r_c: f64, t: f64) -> Result<f64, Error> {
    if !(r_c > 0.0 && r_c <= 0.5 * t) {
        return Err(domain("corner_field", r_c, "0 < r_c <= t/2"));
    }
    Ok(e_cut * pow(r_c / (0.5 * t), CORNER_EXPONENT))
}

/// `2/(1 + 2p)`: energy of 4 corners × 2 faces in units of ε E_f² r̄.
pub fn corner_energy_constant(p: f64) -> f64 {
    2.0 / (1.0 + 2.0 * p)
}

/// Flat versus round metal energy at equal surface field scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeEnhancement {
    /// `(ln(4r̄/t) + c_m)/π`.
    pub ratio: f64,
    /// `ln(4r̄/t)`.
    pub log_factor: f64,
    /// Fraction of the flat metal energy carried by the corner term.
    pub corner_share: f64,
}

pub fn edge_enhancement(rbar: f64, t: f64, c_m: f64) -> Result<EdgeEnhancement, Error> {
    if !(t > 0.0 && t < rbar) {
        return Err(domain("edge_enhancement", t, "0 < t < r̄"));
    }
    let log_factor = log(4.0 * rbar / t);
    let bracket = log_factor + c_m;
    Ok(EdgeEnhancement { ratio: bracket / PI, log_factor, corner_share: c_m / bracket })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    const UM: f64 = 1e-6;

    #[test]
    fn coax_values() {
        let s = coax_fields_and_energies(10.0 * UM, 100.0 * UM).unwrap();
        assert!((s.e_c * 10.0 * UM - 1.0 / 10f64.ln()).abs() < 1e-15);
        let far = coax_fields_and_energies(1.0, 1e12).unwrap();
        assert!((far.energies.u_substrate / (far.e_c * far.e_c) - 1.0).abs() < 1e-11);
        assert!(coax_fields_and_energies(2.0, 1.0).is_err());
    }

    #[test]
    fn coax_substrate_energy_by_quadrature() {
        let (r, big) = (1.0, 7.0);
        let s = coax_fields_and_energies(r, big).unwrap();
        let q = quad::integrate(|x| (s.e_c * r / x).powi(2), r, big, 1e-14, 1e-13).unwrap();
        assert!((q - s.energies.u_substrate).abs() < 1e-12);
    }

    #[test]
    fn flat_field_center_and_singularity() {
        let e = flat_coax_field(0.0, 10.0, 100.0).unwrap();
        assert_eq!(e, flat_coax_center_field(10.0, 100.0));
        assert!(flat_coax_field(10.0, 10.0, 100.0).is_err());
        assert!(flat_coax_field(0.0, 10.0, 15.0).is_err());
    }

    #[test]
    fn voltage_integral() {
        for ratio in [3.0, 10.0, 30.0, 100.0] {
            let (rb, big): (f64, f64) = (1.0, ratio);
            // x = r̄ + s² removes the edge singularity
            let q = quad::integrate(
                |s| 2.0 * s * flat_coax_field(rb + s * s, rb, big).unwrap(),
                0.0,
                (big - rb).sqrt(),
                1e-13,
                1e-13,
            )
            .unwrap();
            let closed = flat_coax_voltage_integral(rb, big);
            assert!((q - closed).abs() < 1e-8, "{q} {closed}");
            let dev = (closed - 1.0).abs();
            assert!(dev < (rb / big).powi(2), "R/r̄={ratio}: {dev}");
        }
    }

    #[test]
    fn flat_energy_ratio_example() {
        let e = flat_coax_energies(10.0, 100.0, 0.1, CornerConstants::DEFAULT).unwrap();
        let r = e.u_metal / e.u_substrate;
        let expect = 2.0 * (400f64.ln() + 5.0) / (400f64.ln() + 1.6 - 0.2);
        assert!((r - expect).abs() < 1e-12);
        assert!(flat_coax_energies(1.0, 10.0, 1.0, CornerConstants::DEFAULT).is_err());
    }

    #[test]
    fn cutoff_log_matches_integral() {
        // 4 ∫_0^{r̄−t/2} r̄²/(r̄²−x²) dx ≈ 2 r̄ ln(4r̄/t)
        let (rb, t) = (1.0, 1e-3);
        let q = quad::integrate(|x| rb * rb / (rb * rb - x * x), 0.0, rb - t / 2.0, 1e-13, 1e-13).unwrap();
        assert!((4.0 * q / (2.0 * rb) - (4.0 * rb / t).ln()).abs() < 1e-3);
    }

    #[test]
    fn corner_field_scaling() {
        assert_eq!(corner_field(3.0, 0.05, 0.1).unwrap(), 3.0);
        assert!((corner_field(1.0, 0.1 / 16.0, 0.1).unwrap() - 2.0).abs() < 1e-12);
        assert!(corner_field(1.0, 0.06, 0.1).is_err());
        assert!((corner_energy_constant(CORNER_EXPONENT) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn corner_constant_by_integration() {
        // (ε/2) E_f² (r̄/t) 8 ∫_0^{t/2} (2r_c/t)^{2p} dr_c in units of ε E_f² r̄, any t
        for t in [0.01, 0.1, 1.0] {
            let p = CORNER_EXPONENT;
            let q = quad::integrate(|rc| libm::pow(2.0 * rc / t, 2.0 * p), 0.0, t / 2.0, 1e-12, 1e-10).unwrap();
            let c = 0.5 / t * 8.0 * q;
            assert!((c - 6.0).abs() < 1e-4, "t={t}: {c}");
        }
    }

    #[test]
    fn edge_ratio() {
        let e = edge_enhancement(50.0, 0.1, 5.0).unwrap();
        assert!((e.log_factor - 2000f64.ln()).abs() < 1e-12);
        assert!((e.ratio - (2000f64.ln() + 5.0) / PI).abs() < 1e-12);
    }
}
