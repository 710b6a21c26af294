//! Potential coefficient matrices.
//!
//! `M[i][j]` is the mean potential over element i due to a unit total
//! charge spread uniformly over element j, in units with ε = 1.
//!
//! ```text
//! planar     G = ln(1/ρ) / 2π
//! ring       G = K(−4 r r'/ρ²) / (2π² ρ)
//! flat wire  G = K(−r̄²/y²) / (2π² |y|)   (ring kernel at radius r̄/2)
//! ```

use crate::error::BemError;
use crate::mesh::{Element, Kernel, Mesh};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;
use surfloss_core::quad::gauss_legendre;
use surfloss_core::special::ellipk_neg;

/// Dense solves above this size are refused.
pub const MAX_UNKNOWNS: usize = 20_000;

/// Pairs closer than this many element widths use the refined rules.
const NEAR_PLANAR: f64 = 10.0;
const NEAR_RING: f64 = 3.0;

/// Dense symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialMatrix {
    pub kernel: Kernel,
    pub n: usize,
    pub data: Vec<f64>,
}

impl PotentialMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Largest |M_ij − M_ji| relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst / scale
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        self.data.par_chunks(self.n).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

struct Rules {
    outer: (Vec<f64>, Vec<f64>),
    inner: (Vec<f64>, Vec<f64>),
}

fn unit_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    (x.iter().map(|x| 0.5 * (x + 1.0)).collect(), w.iter().map(|w| 0.5 * w).collect())
}

fn rules() -> &'static Rules {
    static R: OnceLock<Rules> = OnceLock::new();
    R.get_or_init(|| Rules { outer: unit_rule(4), inner: unit_rule(12) })
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Point potential of a unit line charge.
pub fn planar_green(rho: f64) -> f64 {
    -rho.ln() / (2.0 * PI)
}

/// Point potential of a unit ring charge at (r', z') seen from (r, z).
pub fn ring_green(p: [f64; 2], q: [f64; 2]) -> f64 {
    let rho2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2);
    ellipk_neg(4.0 * p[0] * q[0] / rho2) / (2.0 * PI * PI * rho2.sqrt())
}

/// Point potential between flat-wire centre-line stations.
pub fn flat_green(y: f64, rbar: f64) -> f64 {
    ellipk_neg(rbar * rbar / (y * y)) / (2.0 * PI * PI * y.abs())
}

/// Local frame of `p` relative to a segment: (along, signed normal).
fn local(p: [f64; 2], e: &Element) -> (f64, f64, f64) {
    let w = e.width();
    let t = [(e.b[0] - e.a[0]) / w, (e.b[1] - e.a[1]) / w];
    let d = [p[0] - e.a[0], p[1] - e.a[1]];
    (d[0] * t[0] + d[1] * t[1], d[1] * t[0] - d[0] * t[1], w)
}

/// `∫₀^w ln(1/|P − X(s)|) ds`.
pub fn segment_log_integral(p: [f64; 2], e: &Element) -> f64 {
    let (along, h, w) = local(p, e);
    let h = h.abs();
    let f = |u: f64| {
        let r2 = u * u + h * h;
        let lg = if r2 > 0.0 { 0.5 * u * r2.ln() } else { 0.0 };
        let at = if h > 0.0 { h * (u / h).atan() } else { 0.0 };
        lg - u + at
    };
    -(f(w - along) - f(-along))
}

/// Field at `p` of a unit total charge on a planar element, ε = 1.
pub fn segment_field(p: [f64; 2], e: &Element) -> [f64; 2] {
    let (along, h, w) = local(p, e);
    let lam = 1.0 / (2.0 * PI * w);
    let et = 0.5 * ((along * along + h * h) / ((along - w).powi(2) + h * h)).ln();
    let en = h.atan2(along - w) - h.atan2(along);
    let t = [(e.b[0] - e.a[0]) / w, (e.b[1] - e.a[1]) / w];
    let n = [-t[1], t[0]];
    [lam * (et * t[0] + en * n[0]), lam * (et * t[1] + en * n[1])]
}

fn planar_entry(ei: &Element, ej: &Element, near: bool) -> f64 {
    let wj = ej.width();
    let v = if near {
        let (x, w) = &rules().outer;
        x.iter().zip(w).map(|(&s, &g)| g * segment_log_integral(ei.point(s), ej)).sum::<f64>()
    } else {
        segment_log_integral(ei.center(), ej)
    };
    v / (wj * 2.0 * PI)
}

/// Where a ring-type kernel sees element charge: (r, z).
fn ring_point(e: &Element, kernel: Kernel, s: f64) -> [f64; 2] {
    match kernel {
        Kernel::FlatWire => [0.5 * e.half_width, e.point(s)[1]],
        _ => e.point(s),
    }
}

/// Mean over element j of G(P, ·), split at the foot of P with `s = L u²`.
fn ring_average(p: [f64; 2], ej: &Element, kernel: Kernel) -> f64 {
    let (along, _, w) = local(p, ej);
    let s0 = along.clamp(0.0, w);
    let (x, wt) = &rules().inner;
    let mut tot = 0.0;
    for hi in [0.0, w] {
        let len = hi - s0;
        if len.abs() < 1e-300 {
            continue;
        }
        for (&u, &g) in x.iter().zip(wt) {
            let s = s0 + len * u * u;
            tot += g * 2.0 * len.abs() * u * ring_green(p, ring_point(ej, kernel, s / w));
        }
    }
    tot / w
}

fn ring_entry(ei: &Element, ej: &Element, kernel: Kernel, near: bool) -> f64 {
    if !near {
        return ring_green(ring_point(ei, kernel, 0.5), ring_point(ej, kernel, 0.5));
    }
    let (small, big) = if ei.width() <= ej.width() { (ei, ej) } else { (ej, ei) };
    let (x, w) = &rules().outer;
    x.iter().zip(w).map(|(&s, &g)| g * ring_average(ring_point(small, kernel, s), big, kernel)).sum()
}

fn check(mesh: &Mesh) -> Result<(), BemError> {
    mesh.validate()?;
    let n = mesh.len();
    if n > MAX_UNKNOWNS {
        return Err(BemError::TooLarge { unknowns: n, cap: MAX_UNKNOWNS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let key = |e: &Element| (e.center()[0], e.center()[1], e.half_width);
    order.sort_by(|&i, &j| key(&mesh.elements[i]).partial_cmp(&key(&mesh.elements[j])).unwrap());
    for w in order.windows(2) {
        let (a, b) = (&mesh.elements[w[0]], &mesh.elements[w[1]]);
        if key(a) == key(b) && dist(a.a, b.a) + dist(a.b, b.b) < 1e-12 * a.width().max(b.width()) {
            return Err(BemError::Coincident { i: w[0].min(w[1]), j: w[0].max(w[1]) });
        }
    }
    Ok(())
}

/// Assembles the matrix for the mesh's kernel; rows in parallel, upper
/// triangle computed once and mirrored.
pub fn build_matrix(mesh: &Mesh) -> Result<PotentialMatrix, BemError> {
    check(mesh)?;
    let n = mesh.len();
    let els = &mesh.elements;
    let kernel = mesh.kernel;
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let ei = &els[i];
            (i..n)
                .map(|j| {
                    let ej = &els[j];
                    let reach = ei.width().max(ej.width());
                    match kernel {
                        Kernel::Planar if i == j => (1.5 - ei.width().ln()) / (2.0 * PI),
                        Kernel::Planar => {
                            let near = dist(ei.center(), ej.center()) < NEAR_PLANAR * reach;
                            0.5 * (planar_entry(ei, ej, near) + planar_entry(ej, ei, near))
                        }
                        _ => {
                            let pi = ring_point(ei, kernel, 0.5);
                            let pj = ring_point(ej, kernel, 0.5);
                            ring_entry(ei, ej, kernel, i == j || dist(pi, pj) < NEAR_RING * reach)
                        }
                    }
                })
                .collect()
        })
        .collect();
    let mut data = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            let j = i + k;
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(PotentialMatrix { kernel, n, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Surface;

    fn seg(a: [f64; 2], b: [f64; 2]) -> Element {
        Element { a, b, electrode: 0, surface: Surface::Strip, corner: false, half_width: 0.0 }
    }

    #[test]
    fn log_integral_by_quadrature() {
        let e = seg([0.0, 0.0], [0.7, 0.3]);
        for p in [[0.2, 0.5], [1.0, -0.4], [0.35, 0.15 + 1e-3]] {
            let n = 200_000;
            let w = e.width();
            let q: f64 = (0..n)
                .map(|k| {
                    let x = e.point((k as f64 + 0.5) / n as f64);
                    -dist(p, x).ln() * w / n as f64
                })
                .sum();
            assert!((segment_log_integral(p, &e) - q).abs() < 1e-6, "{p:?}");
        }
    }

    #[test]
    fn self_term_is_mean_self_potential() {
        // ∫∫ ln(1/|s−s'|) ds ds' / w² = 3/2 − ln w
        let w: f64 = 0.37;
        let e = seg([0.0, 0.0], [w, 0.0]);
        let n = 4000;
        let mean: f64 = (0..n).map(|k| segment_log_integral(e.point((k as f64 + 0.5) / n as f64), &e)).sum::<f64>()
            / (n as f64 * w);
        assert!((mean - (1.5 - w.ln())).abs() < 1e-5);
    }

    #[test]
    fn field_is_minus_gradient() {
        let e = seg([0.1, -0.2], [0.6, 0.4]);
        let p = [0.9, 0.05];
        let h = 1e-6;
        let phi = |x: [f64; 2]| segment_log_integral(x, &e) / (2.0 * PI * e.width());
        let f = segment_field(p, &e);
        let gx = -(phi([p[0] + h, p[1]]) - phi([p[0] - h, p[1]])) / (2.0 * h);
        let gy = -(phi([p[0], p[1] + h]) - phi([p[0], p[1] - h])) / (2.0 * h);
        assert!((f[0] - gx).abs() < 1e-7 && (f[1] - gy).abs() < 1e-7);
    }

    #[test]
    fn far_field_limits() {
        let rho: f64 = 1e4;
        let g = ring_green([0.3, 0.0], [0.2, rho]);
        assert!((g * 4.0 * PI * rho - 1.0).abs() < 1e-6);
        assert!((flat_green(rho, 0.5) * 4.0 * PI * rho - 1.0).abs() < 1e-6);
        // flat kernel is the ring kernel at radius r̄/2
        assert!((flat_green(0.7, 0.5) - ring_green([0.25, 0.0], [0.25, 0.7])).abs() < 1e-15);
        assert!((planar_green(2.0) + 2f64.ln() / (2.0 * PI)).abs() < 1e-15);
    }
}
