//! Finite-thickness corner constants from flat-coax solves.
//!
//! ```text
//! c_m = U^m / (E_f² r̄)   − ln(4r̄/t)
//! c_s = U^s / (E_f² r̄/2) − ln(4r̄/t) + 2r̄/R
//! ```
//!
//! with `E_f = 1/(r̄ ln(2R/r̄))` the centre field at unit drive. U^s is the
//! field energy on the midplane outside the conductor, one side.

use crate::error::BemError;
use crate::field::{line_energy, metal_energy};
use crate::mesh::{flat_coax, EdgeStyle, Grading};
use crate::solve::solve_mesh;
use rayon::prelude::*;
use surfloss_core::analytic::coax::flat_coax_center_field;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerOptions {
    /// Shield radius over r̄.
    pub shield_ratio: f64,
    /// Smallest element over t.
    pub h_min_over_t: f64,
    /// Largest element over r̄.
    pub h_max_over_r: f64,
    pub outer_elements: usize,
    pub line_points: usize,
    /// Divides all element sizes (convergence studies).
    pub mesh_scale: f64,
}

impl Default for CornerOptions {
    fn default() -> Self {
        CornerOptions {
            shield_ratio: 10.0,
            h_min_over_t: 0.01,
            h_max_over_r: 0.02,
            outer_elements: 400,
            line_points: 4000,
            mesh_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerConstant {
    pub t_over_r: f64,
    pub edge: EdgeStyle,
    pub c_m: f64,
    pub c_s: f64,
    pub unknowns: usize,
}

pub fn extract_corner_constant(edge: EdgeStyle, t_over_r: f64, opts: &CornerOptions) -> Result<CornerConstant, BemError> {
    if !(t_over_r > 0.0 && t_over_r < 1.0) {
        return Err(BemError::Mesh(format!("t/r̄ = {t_over_r} outside (0, 1)")));
    }
    let rbar = 1.0;
    let t = t_over_r * rbar;
    let big_r = opts.shield_ratio * rbar;
    let g = Grading { ratio: Grading::RATIO, h_min: opts.h_min_over_t * t, h_max: opts.h_max_over_r * rbar }
        .refined(opts.mesh_scale);
    let n_outer = (opts.outer_elements as f64 * opts.mesh_scale).round() as usize;
    let mesh = flat_coax(rbar, t, big_r, edge, &g, n_outer);
    let sol = solve_mesh(&mesh)?;
    let ef = flat_coax_center_field(rbar, big_r);
    let lg = (4.0 * rbar / t).ln();
    let u_m = metal_energy(&mesh, &sol, &[0], 0.0);
    let u_s = line_energy(&mesh, &sol, rbar, big_r, 0.0, opts.line_points);
    Ok(CornerConstant {
        t_over_r,
        edge,
        c_m: u_m / (ef * ef * rbar) - lg,
        c_s: u_s / (ef * ef * rbar / 2.0) - lg + 2.0 * rbar / big_r,
        unknowns: mesh.len(),
    })
}

/// Sweep over thicknesses, solved concurrently.
pub fn corner_constant_curve(edge: EdgeStyle, t_over_r: &[f64], opts: &CornerOptions) -> Result<Vec<CornerConstant>, BemError> {
    t_over_r.par_iter().map(|&x| extract_corner_constant(edge, x, opts)).collect()
}
