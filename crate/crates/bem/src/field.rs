//! Surface fields and surface energies from a charge solution (ε = 1).

use crate::kernels::segment_field;
use crate::mesh::{Kernel, Mesh, Surface};
use crate::solve::ChargeSolution;
use std::f64::consts::PI;

/// Extra weight on elements touching a square corner: with σ ∝ s^(−1/3)
/// the exact ∫σ² over the element is 4/3 of the piecewise-constant value.
pub const CORNER_ENERGY_FACTOR: f64 = 4.0 / 3.0;

/// |E| just outside element i. Zero-thickness strips report the per-face
/// value σ/2.
pub fn surface_field(mesh: &Mesh, sol: &ChargeSolution, i: usize) -> f64 {
    let e = &mesh.elements[i];
    let q = sol.charges[i].abs();
    let w = e.width();
    match mesh.kernel {
        Kernel::Planar if e.surface == Surface::Strip => 0.5 * q / w,
        Kernel::Planar => q / w,
        Kernel::Ring => q / (2.0 * PI * e.center()[0] * w),
        Kernel::FlatWire => q / (2.0 * PI * e.half_width * w),
    }
}

/// Field vector at an arbitrary point of a planar solution.
pub fn field_at(mesh: &Mesh, sol: &ChargeSolution, p: [f64; 2]) -> [f64; 2] {
    mesh.elements.iter().zip(&sol.charges).fold([0.0, 0.0], |acc, (e, q)| {
        let f = segment_field(p, e);
        [acc[0] + q * f[0], acc[1] + q * f[1]]
    })
}

fn clipped(lo: f64, hi: f64, cut: f64, strips: &[[f64; 2]]) -> f64 {
    strips
        .iter()
        .map(|s| (hi.min(s[1] - cut) - lo.max(s[0] + cut)).max(0.0))
        .sum()
}

/// Energy on the metal faces, `½ Σ ∫E² ds` over both faces.
///
/// Thin strips are integrated up to `cutoff` (t/2) from each strip end;
/// closed conductors take every element of the given electrodes.
pub fn metal_energy(mesh: &Mesh, sol: &ChargeSolution, electrodes: &[usize], cutoff: f64) -> f64 {
    mesh.elements
        .iter()
        .enumerate()
        .filter(|(_, e)| electrodes.contains(&e.electrode))
        .map(|(i, e)| {
            let w = e.width();
            let sig = sol.charges[i] / w;
            if e.surface == Surface::Strip {
                let (lo, hi) = (e.a[0].min(e.b[0]), e.a[0].max(e.b[0]));
                // two faces at σ/2 each
                0.25 * sig * sig * clipped(lo, hi, cutoff, &mesh.strips)
            } else {
                let fac = if e.corner { CORNER_ENERGY_FACTOR } else { 1.0 };
                0.5 * fac * sig * sig * w
            }
        })
        .sum()
}

/// Breakpoints on `[x0, x1]` graded geometrically toward both ends,
/// starting at `first` (relative to the interval length).
pub fn graded_line(x0: f64, x1: f64, n: usize, first: f64) -> Vec<f64> {
    let len = x1 - x0;
    let half = n / 2;
    let mut u: Vec<f64> = (0..half)
        .map(|k| first * len * (0.5 / first).powf(k as f64 / (half - 1) as f64))
        .collect();
    u.insert(0, 0.0);
    let mut pts: Vec<f64> = u.iter().map(|u| x0 + u).chain(u.iter().map(|u| x1 - u)).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * len.abs());
    pts
}

/// `∫ |E|² dx` along the horizontal line y from x0 to x1 (midpoint rule on a
/// graded grid).
pub fn line_energy(mesh: &Mesh, sol: &ChargeSolution, x0: f64, x1: f64, y: f64, n: usize) -> f64 {
    let pts = graded_line(x0, x1, n, 1e-7);
    use rayon::prelude::*;
    pts.par_windows(2)
        .map(|w| {
            let f = field_at(mesh, sol, [0.5 * (w[0] + w[1]), y]);
            (f[0] * f[0] + f[1] * f[1]) * (w[1] - w[0])
        })
        .sum()
}

/// Surface-field samples of a solution: (position, |E|) per element.
pub fn field_profile(mesh: &Mesh, sol: &ChargeSolution, surface: Surface) -> Vec<([f64; 2], f64)> {
    (0..mesh.len())
        .filter(|&i| mesh.elements[i].surface == surface)
        .map(|i| (mesh.elements[i].center(), surface_field(mesh, sol, i)))
        .collect()
}

/// Metal and substrate energies with an accuracy warning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripEnergies {
    pub metal: f64,
    pub substrate: f64,
    /// Share of the metal energy carried by elements that straddle a
    /// cutoff and are wider than it; large values mean the edge mesh is too
    /// coarse for the cutoff.
    pub estimated_error: f64,
}

impl StripEnergies {
    pub const WARN_ABOVE: f64 = 0.005;

    pub fn warning(&self) -> Option<String> {
        (self.estimated_error > Self::WARN_ABOVE).then(|| {
            format!("edge mesh coarser than the cutoff: estimated energy error {:.2}%", 100.0 * self.estimated_error)
        })
    }
}

/// Energies of a zero-thickness planar solution: film faces with the t/2
/// cutoff (shields excluded), plus `∫E²` on the substrate over the given gaps.
pub fn strip_energies(mesh: &Mesh, sol: &ChargeSolution, cutoff: f64, gaps: &[[f64; 2]], points: usize) -> StripEnergies {
    let mut films: Vec<usize> =
        mesh.elements.iter().filter(|e| e.surface == Surface::Strip).map(|e| e.electrode).collect();
    films.dedup();
    let metal = metal_energy(mesh, sol, &films, cutoff);
    let straddling: f64 = mesh
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| e.surface == Surface::Strip && e.width() > cutoff)
        .filter(|(_, e)| {
            let (lo, hi) = (e.a[0].min(e.b[0]), e.a[0].max(e.b[0]));
            mesh.strips.iter().any(|s| [s[0] + cutoff, s[1] - cutoff].iter().any(|&x| lo < x && x < hi))
        })
        .map(|(i, e)| {
            let sig = sol.charges[i] / e.width();
            0.25 * sig * sig * e.width()
        })
        .sum();
    let substrate = gaps.iter().map(|g| line_energy(mesh, sol, g[0], g[1], 0.0, points)).sum();
    StripEnergies { metal, substrate, estimated_error: straddling / metal }
}
