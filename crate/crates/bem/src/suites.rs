//! Formula-versus-solver checks.

use crate::corner::{extract_corner_constant, CornerOptions};
use crate::error::BemError;
use crate::field::{strip_energies, surface_field};
use crate::mesh::{coax, cylinder_wire, flat_coax, flat_wire, ribbon, EdgeStyle, Grading, Kernel, Surface, WireMeshSpec};
use crate::solve::solve_mesh;
use rayon::prelude::*;
use std::f64::consts::PI;
use surfloss_core::analytic::coax::{flat_coax_center_field, flat_coax_field};
use surfloss_core::analytic::wire::{cylinder_field, flat_wire_field};
use surfloss_core::analytic::{ground, ribbon as rib};
use surfloss_core::special::ck_ratio;
use surfloss_core::structure::{Ribbon, RibbonWithGround};
use surfloss_core::{CornerConstants, EPS0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Coax,
    FlatCoax,
    Corner,
    RibbonGround,
    CylWire,
    FlatWire,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Coax, Suite::FlatCoax, Suite::Corner, Suite::RibbonGround, Suite::CylWire, Suite::FlatWire];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coax => "coax",
            Suite::FlatCoax => "flat-coax",
            Suite::Corner => "corner",
            Suite::RibbonGround => "ribbon-ground",
            Suite::CylWire => "cyl-wire",
            Suite::FlatWire => "flat-wire",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// One comparison. `error` is relative to `reference` unless the check is
/// a band, in which case it is the absolute distance from the centre.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn relative(name: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Check {
        let error = (computed / reference - 1.0).abs();
        Check { name: name.into(), computed, reference, error, tolerance, pass: error <= tolerance }
    }

    pub fn band(name: impl Into<String>, computed: f64, centre: f64, half_width: f64) -> Check {
        let error = (computed - centre).abs();
        Check { name: name.into(), computed, reference: centre, error, tolerance: half_width, pass: error <= half_width }
    }

    /// Worst relative deviation over a sampled curve.
    pub fn worst(name: impl Into<String>, pairs: &[(f64, f64)], tolerance: f64) -> Check {
        let (c, r) = pairs
            .iter()
            .copied()
            .max_by(|a, b| (a.0 / a.1 - 1.0).abs().total_cmp(&(b.0 / b.1 - 1.0).abs()))
            .unwrap_or((f64::NAN, f64::NAN));
        Check::relative(name, c, r, tolerance)
    }
}

/// Thin-film thickness used by the planar suites, in μm.
pub const FILM_T: f64 = 0.1;
/// Ribbon-with-ground sweep.
pub const GROUND_A: [f64; 3] = [25.0, 50.0, 70.0];
pub const GROUND_GAPS: [f64; 4] = [0.1, 0.3, 1.0, 3.0];
pub const CORNER_T_OVER_R: [f64; 5] = [0.02, 0.05, 0.1, 0.2, 0.5];

fn coax_checks(scale: f64) -> Result<Vec<Check>, BemError> {
    let exact = 2.0 * PI / 10f64.ln();
    let n = (1000.0 * scale).round() as usize;
    let c1 = solve_mesh(&coax(10.0, 100.0, n))?.capacitance;
    let c2 = solve_mesh(&coax(10.0, 100.0, 2 * n))?.capacitance;
    Ok(vec![
        Check::relative("coax capacitance r=10 R=100", c1, exact, 0.005),
        Check::relative("coax mesh doubling", c2, c1, 0.005),
    ])
}

/// Thin flat coax: surface field and metal energy with the t/2 cutoff.
pub fn flat_coax_checks(scale: f64) -> Result<Vec<Check>, BemError> {
    let (rbar, big_r, t) = (10.0, 100.0, FILM_T);
    let g = Grading { ratio: Grading::RATIO, h_min: t / 20.0, h_max: 0.02 * rbar }.refined(scale);
    let mesh = flat_coax(rbar, 0.0, big_r, EdgeStyle::Square, &g, (400.0 * scale).round() as usize);
    let sol = solve_mesh(&mesh)?;
    let mut pairs = Vec::new();
    for i in 0..mesh.len() {
        let e = &mesh.elements[i];
        let x = e.center()[0];
        if e.surface == Surface::Strip && x.abs() <= rbar - t / 2.0 {
            pairs.push((surface_field(&mesh, &sol, i), flat_coax_field(x, rbar, big_r)?));
        }
    }
    let en = strip_energies(&mesh, &sol, t / 2.0, &[], 0);
    let ef = flat_coax_center_field(rbar, big_r);
    let u_formula = ef * ef * rbar * (4.0 * rbar / t).ln();
    Ok(vec![
        Check::worst("flat-coax surface field", &pairs, 0.03),
        Check::relative("flat-coax metal energy", en.metal, u_formula, 0.03),
    ])
}

fn corner_checks(scale: f64) -> Result<Vec<Check>, BemError> {
    let opts = CornerOptions { mesh_scale: scale, ..Default::default() };
    let jobs: Vec<(EdgeStyle, f64)> = [EdgeStyle::Square, EdgeStyle::Semicircular]
        .into_iter()
        .flat_map(|e| CORNER_T_OVER_R.into_iter().map(move |x| (e, x)))
        .collect();
    let res = jobs.par_iter().map(|&(e, x)| extract_corner_constant(e, x, &opts)).collect::<Result<Vec<_>, _>>()?;
    let (sq, semi) = res.split_at(CORNER_T_OVER_R.len());
    let mut out = Vec::new();
    for (s, c) in sq.iter().zip(semi) {
        out.push(Check::band(format!("c_m square t/r={}", s.t_over_r), s.c_m, 5.0, 0.5));
        out.push(Check::band(format!("c_s square t/r={}", s.t_over_r), s.c_s, 1.6, 0.3));
        let below = c.c_m < s.c_m;
        out.push(Check {
            name: format!("c_m semicircular below square t/r={}", s.t_over_r),
            computed: c.c_m,
            reference: s.c_m,
            error: c.c_m - s.c_m,
            tolerance: 0.0,
            pass: below,
        });
    }
    Ok(out)
}

/// BEM capacitance and energies of the ribbon with ground, in units of
/// ε0 = 1 per unit length (μm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub capacitance: f64,
    pub u_metal: f64,
    pub u_substrate: f64,
    pub estimated_error: f64,
}

/// Thin differential ribbon, optionally with ground at c; b in μm.
pub fn ribbon_ground_point(a: f64, b: f64, c: Option<f64>, scale: f64) -> Result<GroundPoint, BemError> {
    let t = FILM_T;
    let g = Grading { ratio: Grading::RATIO, h_min: t / 20.0, h_max: (b - a) / 50.0 }.refined(scale);
    let mesh = ribbon(a, b, &g, c.map(|c| (c, c + 200.0 * b)));
    let sol = solve_mesh(&mesh)?;
    let outer = [b + t / 2.0, c.map_or(b + 1e4 * b, |c| c - t / 2.0)];
    let en = strip_energies(&mesh, &sol, t / 2.0, &[[0.0, a - t / 2.0], outer], 3000);
    Ok(GroundPoint {
        a,
        b,
        c: c.unwrap_or(f64::INFINITY),
        capacitance: sol.capacitance,
        u_metal: en.metal,
        u_substrate: en.substrate,
        estimated_error: en.estimated_error,
    })
}

fn ribbon_ground_checks(scale: f64) -> Result<Vec<Check>, BemError> {
    let b = 100.0;
    let t = FILM_T;
    let plain = ribbon_ground_point(50.0, b, None, scale)?;
    let r = Ribbon { a: 50.0, b, length: 1.0, t };
    let e = rib::energies(&r, CornerConstants::ZERO)?;
    let mut out = vec![
        Check::relative("ribbon capacitance a=50 b=100", plain.capacitance, 1.0 / ck_ratio(0.5)?, 0.01),
        Check::relative("ribbon metal energy", plain.u_metal, e.u_metal, 0.05),
        Check::relative("ribbon substrate energy", plain.u_substrate, e.u_substrate, 0.05),
    ];
    let jobs: Vec<(f64, f64)> = GROUND_A.iter().flat_map(|&a| GROUND_GAPS.iter().map(move |&f| (a, f))).collect();
    let pts = jobs
        .par_iter()
        .map(|&(a, f)| ribbon_ground_point(a, b, Some(b * (1.0 + f)), scale))
        .collect::<Result<Vec<_>, _>>()?;
    for p in pts {
        let g = RibbonWithGround { a: p.a, b, c: p.c, length: 1.0, t };
        let fit_c = ground::capacitance(&g, 1.0)?.0 / EPS0;
        let fit = ground::energies(&g, CornerConstants::ZERO)?;
        let tag = format!("a={} (c-b)/b={:.1}", p.a, (p.c - b) / b);
        out.push(Check::relative(format!("ribbon-ground capacitance {tag}"), p.capacitance, fit_c, 0.05));
        out.push(Check::relative(format!("ribbon-ground metal energy {tag}"), p.u_metal, fit.u_metal, 0.05));
        out.push(Check::relative(format!("ribbon-ground substrate energy {tag}"), p.u_substrate, fit.u_substrate, 0.05));
    }
    Ok(out)
}

/// Solver field against the closed-form envelope on y ∈ [2r̄0, 0.9d].
pub fn wire_field_pairs(kernel: Kernel, slope: f64, scale: f64) -> Result<Vec<(f64, f64, f64)>, BemError> {
    let w = WireMeshSpec { r0: 0.1, slope, d: 100.0, gap: 0.1, t: 0.1 };
    let g = Grading { ratio: Grading::RATIO, h_min: w.r0 / 20.0, h_max: w.r0 }.refined(scale);
    let mesh = if kernel == Kernel::Ring { cylinder_wire(&w, &g) } else { flat_wire(&w, &g) };
    let sol = solve_mesh(&mesh)?;
    let mut out = Vec::new();
    for i in 0..mesh.len() / 2 {
        let e = &mesh.elements[i];
        let y = e.center()[1];
        if !(2.0 * w.r0..=0.9 * w.d).contains(&y) {
            continue;
        }
        let (bem, formula) = match kernel {
            Kernel::Ring if e.surface == Surface::Lateral => (surface_field(&mesh, &sol, i), cylinder_field(e.center()[0], y)),
            Kernel::FlatWire => (surface_field(&mesh, &sol, i), flat_wire_field(e.half_width, y)),
            _ => continue,
        };
        out.push((y, bem, formula));
    }
    Ok(out)
}

fn wire_checks(kernel: Kernel, scale: f64) -> Result<Vec<Check>, BemError> {
    let name = if kernel == Kernel::Ring { "cylinder" } else { "flat" };
    let slopes = [0.0, 0.2];
    let res = slopes.par_iter().map(|&s| wire_field_pairs(kernel, s, scale)).collect::<Result<Vec<_>, _>>()?;
    Ok(slopes
        .iter()
        .zip(res)
        .map(|(s, pairs)| {
            let p: Vec<(f64, f64)> = pairs.iter().map(|p| (p.1, p.2)).collect();
            Check::worst(format!("{name} wire field S={s} on [2r, 0.9d]"), &p, 0.05)
        })
        .collect())
}

pub fn run_suite(suite: Suite, mesh_scale: f64) -> Result<Vec<Check>, BemError> {
    if !(mesh_scale > 0.0 && mesh_scale.is_finite()) {
        return Err(BemError::Mesh(format!("mesh scale {mesh_scale} must be > 0")));
    }
    match suite {
        Suite::Coax => coax_checks(mesh_scale),
        Suite::FlatCoax => flat_coax_checks(mesh_scale),
        Suite::Corner => corner_checks(mesh_scale),
        Suite::RibbonGround => ribbon_ground_checks(mesh_scale),
        Suite::CylWire => wire_checks(Kernel::Ring, mesh_scale),
        Suite::FlatWire => wire_checks(Kernel::FlatWire, mesh_scale),
    }
}
