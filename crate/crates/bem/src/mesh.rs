//! Boundary meshes for the three kernels.
//!
//! Planar meshes live in the x–y cross-section, ring meshes in the r–z
//! half-plane (a = (r, z)), and flat-wire meshes on the centre line
//! (a = (0, y)) with a half-width per element.

use crate::error::BemError;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Planar,
    Ring,
    FlatWire,
}

/// Where an element sits; used for energy bookkeeping and CSV tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    /// Zero-thickness film, charge shared by both faces.
    Strip,
    Top,
    Bottom,
    Edge,
    Arc,
    /// Enclosing shield.
    Outer,
    Cap,
    Lateral,
    Centerline,
}

impl Surface {
    pub fn label(self) -> &'static str {
        match self {
            Surface::Strip => "strip",
            Surface::Top => "top",
            Surface::Bottom => "bottom",
            Surface::Edge => "edge",
            Surface::Arc => "arc",
            Surface::Outer => "outer",
            Surface::Cap => "cap",
            Surface::Lateral => "lateral",
            Surface::Centerline => "centerline",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub electrode: usize,
    pub surface: Surface,
    /// Touches a square 90° corner.
    pub corner: bool,
    /// Flat-wire half-width r̄; zero otherwise.
    pub half_width: f64,
}

impl Element {
    fn new(a: [f64; 2], b: [f64; 2], electrode: usize, surface: Surface) -> Self {
        Element { a, b, electrode, surface, corner: false, half_width: 0.0 }
    }

    pub fn width(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    pub fn center(&self) -> [f64; 2] {
        self.point(0.5)
    }

    pub fn point(&self, s: f64) -> [f64; 2] {
        [self.a[0] + s * (self.b[0] - self.a[0]), self.a[1] + s * (self.b[1] - self.a[1])]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub kernel: Kernel,
    pub elements: Vec<Element>,
    /// Drive voltage of each electrode.
    pub voltages: Vec<f64>,
    /// Zero-thickness strips as x-intervals, for the t/2 energy cutoff.
    pub strips: Vec<[f64; 2]>,
}

impl Mesh {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn validate(&self) -> Result<(), BemError> {
        if self.is_empty() {
            return Err(BemError::Mesh("no elements".into()));
        }
        for (i, e) in self.elements.iter().enumerate() {
            let size = e.width();
            if !(size > 0.0 && size.is_finite()) {
                return Err(BemError::Degenerate { index: i, size });
            }
            if self.kernel == Kernel::FlatWire && !(e.half_width > 0.0) {
                return Err(BemError::Degenerate { index: i, size: e.half_width });
            }
            if e.electrode >= self.voltages.len() {
                return Err(BemError::Mesh(format!("element {i} refers to missing electrode {}", e.electrode)));
            }
        }
        Ok(())
    }
}

/// Geometric grading toward edges and corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grading {
    pub ratio: f64,
    pub h_min: f64,
    pub h_max: f64,
}

impl Grading {
    pub const RATIO: f64 = 1.15;

    /// `min(t/20, gap/200)` at the edges.
    pub fn for_film(t: f64, gap: f64, h_max: f64) -> Self {
        Grading { ratio: Self::RATIO, h_min: (t / 20.0).min(gap / 200.0), h_max }
    }

    /// Finer mesh: sizes divided by `scale`, ratio brought closer to one.
    pub fn refined(self, scale: f64) -> Self {
        Grading { ratio: self.ratio.powf(1.0 / scale), h_min: self.h_min / scale, h_max: self.h_max / scale }
    }
}

/// Breakpoints on `[0, len]`, growing by `ratio` from `h_min` up to `h_max`
/// away from one or both ends.
pub fn graded_breakpoints(len: f64, g: &Grading, both_ends: bool) -> Vec<f64> {
    let side = |limit: f64| {
        let mut pts = vec![0.0];
        let mut h = g.h_min;
        while pts[pts.len() - 1] + h < limit && h < g.h_max {
            pts.push(pts[pts.len() - 1] + h);
            h *= g.ratio;
        }
        let last = pts[pts.len() - 1];
        let n = ((limit - last) / g.h_max).ceil().max(1.0) as usize;
        for k in 1..=n {
            pts.push(last + (limit - last) * k as f64 / n as f64);
        }
        pts
    };
    if !both_ends {
        return side(len);
    }
    let left = side(0.5 * len);
    let mut out = left.clone();
    for x in left.iter().rev().skip(1) {
        out.push(len - x);
    }
    out
}

fn polyline(p0: [f64; 2], p1: [f64; 2], bps: &[f64], electrode: usize, surface: Surface) -> Vec<Element> {
    let len = (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
    let d = [(p1[0] - p0[0]) / len, (p1[1] - p0[1]) / len];
    bps.windows(2)
        .map(|w| {
            Element::new(
                [p0[0] + w[0] * d[0], p0[1] + w[0] * d[1]],
                [p0[0] + w[1] * d[0], p0[1] + w[1] * d[1]],
                electrode,
                surface,
            )
        })
        .collect()
}

fn circle(radius: f64, n: usize, electrode: usize, surface: Surface) -> Vec<Element> {
    let p = |k: usize| {
        let th = 2.0 * PI * k as f64 / n as f64;
        [radius * th.cos(), radius * th.sin()]
    };
    (0..n).map(|k| Element::new(p(k), p(k + 1), electrode, surface)).collect()
}

/// Round coax: inner conductor at 1 V, shield at 0.
pub fn coax(r: f64, big_r: f64, n: usize) -> Mesh {
    let mut elements = circle(r, n, 0, Surface::Lateral);
    elements.extend(circle(big_r, n, 1, Surface::Outer));
    Mesh { kernel: Kernel::Planar, elements, voltages: vec![1.0, 0.0], strips: vec![] }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStyle {
    Square,
    Semicircular,
}

/// Flat inner conductor of half-width r̄ and thickness t (t = 0 for a
/// zero-thickness strip) centred in a round shield of radius R.
pub fn flat_coax(rbar: f64, t: f64, big_r: f64, edge: EdgeStyle, g: &Grading, n_outer: usize) -> Mesh {
    let mut elements = Vec::new();
    let mut strips = Vec::new();
    if t == 0.0 {
        let bps = graded_breakpoints(2.0 * rbar, g, true);
        elements.extend(polyline([-rbar, 0.0], [rbar, 0.0], &bps, 0, Surface::Strip));
        strips.push([-rbar, rbar]);
    } else if edge == EdgeStyle::Square {
        let h = 0.5 * t;
        let corners = [[-rbar, -h], [rbar, -h], [rbar, h], [-rbar, h]];
        let faces = [Surface::Bottom, Surface::Edge, Surface::Top, Surface::Edge];
        for k in 0..4 {
            let (p0, p1) = (corners[k], corners[(k + 1) % 4]);
            let len = (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
            let gk = Grading { h_max: g.h_max.min(0.25 * len), ..*g };
            let mut side = polyline(p0, p1, &graded_breakpoints(len, &gk, true), 0, faces[k]);
            let n = side.len();
            side[0].corner = true;
            side[n - 1].corner = true;
            elements.extend(side);
        }
    } else {
        let h = 0.5 * t;
        let x0 = rbar - h;
        let bps = graded_breakpoints(2.0 * x0, g, true);
        elements.extend(polyline([-x0, -h], [x0, -h], &bps, 0, Surface::Bottom));
        let n_arc = ((PI * h) / (2.0 * g.h_min)).ceil().clamp(24.0, 400.0) as usize;
        for (cx, th0) in [(x0, -0.5 * PI), (-x0, 0.5 * PI)] {
            let p = |k: usize| {
                let th = th0 + PI * k as f64 / n_arc as f64;
                [cx + h * th.cos(), h * th.sin()]
            };
            if cx > 0.0 {
                elements.extend((0..n_arc).map(|k| Element::new(p(k), p(k + 1), 0, Surface::Arc)));
                elements.extend(polyline([x0, h], [-x0, h], &bps, 0, Surface::Top));
            } else {
                elements.extend((0..n_arc).map(|k| Element::new(p(k), p(k + 1), 0, Surface::Arc)));
            }
        }
    }
    elements.extend(circle(big_r, n_outer, 1, Surface::Outer));
    Mesh { kernel: Kernel::Planar, elements, voltages: vec![1.0, 0.0], strips }
}

fn mirror_x(e: &Element, electrode: usize) -> Element {
    Element { a: [-e.b[0], e.b[1]], b: [-e.a[0], e.a[1]], electrode, ..*e }
}

/// Zero-thickness differential ribbon at ±V/2 on a < |x| < b, optionally
/// with grounded planes on c < |x| < far. The negative side is an exact
/// mirror so that the charge comes out antisymmetric.
pub fn ribbon(a: f64, b: f64, g: &Grading, ground: Option<(f64, f64)>) -> Mesh {
    let bps = graded_breakpoints(b - a, g, true);
    let mut right = polyline([a, 0.0], [b, 0.0], &bps, 0, Surface::Strip);
    let mut strips = vec![[a, b], [-b, -a]];
    let mut voltages = vec![0.5, -0.5];
    if let Some((c, far)) = ground {
        let open = Grading { h_max: f64::INFINITY, ..*g };
        let bps = graded_breakpoints(far - c, &open, false);
        right.extend(polyline([c, 0.0], [far, 0.0], &bps, 2, Surface::Strip));
        strips.push([c, far]);
        strips.push([-far, -c]);
        voltages.push(0.0);
    }
    let left: Vec<Element> =
        right.iter().map(|e| mirror_x(e, if e.electrode == 0 { 1 } else { e.electrode })).collect();
    right.extend(left);
    Mesh { kernel: Kernel::Planar, elements: right, voltages, strips }
}

/// Junction wire pair along the axis: radius profile `max(r0, (z − 5t)S)`
/// from the junction gap to d, with flat end caps; ±V/2 drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireMeshSpec {
    pub r0: f64,
    pub slope: f64,
    pub d: f64,
    /// Half the junction gap: wires start at |z| = gap.
    pub gap: f64,
    pub t: f64,
}

impl WireMeshSpec {
    pub fn radius(&self, z: f64) -> f64 {
        if self.slope > 0.0 {
            self.r0.max((z - 5.0 * self.t) * self.slope)
        } else {
            self.r0
        }
    }

    fn kink(&self) -> f64 {
        if self.slope > 0.0 {
            (5.0 * self.t + self.r0 / self.slope).clamp(self.gap, self.d)
        } else {
            self.d
        }
    }
}

fn mirror_z(e: &Element) -> Element {
    Element { a: [e.b[0], -e.b[1]], b: [e.a[0], -e.a[1]], electrode: 1, ..*e }
}

/// Axisymmetric mesh in the r–z half-plane.
pub fn cylinder_wire(w: &WireMeshSpec, g: &Grading) -> Mesh {
    let mut half = Vec::new();
    half.extend(polyline([0.0, w.gap], [w.r0, w.gap], &graded_breakpoints(w.r0, g, true), 0, Surface::Cap));
    let zk = w.kink();
    if zk > w.gap {
        half.extend(polyline([w.r0, w.gap], [w.r0, zk], &graded_breakpoints(zk - w.gap, g, true), 0, Surface::Lateral));
    }
    if zk < w.d {
        let mut z = zk;
        while z < w.d * (1.0 - 1e-12) {
            let h = g.h_max.max(0.5 * w.radius(z)).min(w.d - z);
            half.push(Element::new([w.radius(z), z], [w.radius(z + h), z + h], 0, Surface::Lateral));
            z += h;
        }
    }
    let r_end = w.radius(w.d);
    let cap = Grading { h_max: g.h_max.max(r_end / 20.0), ..*g };
    half.extend(polyline([r_end, w.d], [0.0, w.d], &graded_breakpoints(r_end, &cap, true), 0, Surface::Cap));
    let mut elements = half.clone();
    elements.extend(half.iter().map(mirror_z));
    Mesh { kernel: Kernel::Ring, elements, voltages: vec![0.5, -0.5], strips: vec![] }
}

/// Centre-line mesh of a flat wire pair with the same profile.
pub fn flat_wire(w: &WireMeshSpec, g: &Grading) -> Mesh {
    let zk = w.kink();
    let mut bps: Vec<f64> = graded_breakpoints(zk - w.gap, g, true).iter().map(|x| w.gap + x).collect();
    if zk < w.d {
        let mut z = zk;
        while z < w.d * (1.0 - 1e-12) {
            let h = g.h_max.max(0.5 * w.radius(z)).min(w.d - z);
            z += h;
            bps.push(z);
        }
    }
    let mut elements = Vec::with_capacity(2 * bps.len());
    for s in bps.windows(2) {
        let mut e = Element::new([0.0, s[0]], [0.0, s[1]], 0, Surface::Centerline);
        e.half_width = w.radius(0.5 * (s[0] + s[1]));
        elements.push(e);
    }
    let mirrored: Vec<Element> = elements.iter().map(mirror_z).collect();
    elements.extend(mirrored);
    Mesh { kernel: Kernel::FlatWire, elements, voltages: vec![0.5, -0.5], strips: vec![] }
}
