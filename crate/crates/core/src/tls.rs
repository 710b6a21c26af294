//! Two-level-state observables.
//!
//! A TLS at a point with field-per-volt `E/V` can split the qubit line by at
//! most `S_max = 74 MHz · √(2 pF / C) · (2 nm · E/V)`. Sorting surface
//! patches by `S_max` and accumulating their (oxide-scaled) area gives the
//! spectrum `A(S)`; the density of the largest splittings is
//! `ρ ≈ 0.5 /(μm² GHz) · ΔA`.

use crate::analytic::coax::corner_field;
use crate::analytic::coplanar;
use crate::analytic::ribbon;
use crate::analytic::wire::{flat_wire_field, taper_half_width};
use crate::error::{domain, Error};
use crate::quad::{integrate, integrate_pieces};
use crate::special::{ck_ratio, k_prime_modulus};
use crate::stack::DielectricStack;
use crate::structure::{Coplanar, ParallelPlate, Ribbon, StructureSpec};
use crate::units::{Capacitance, Frequency, NM, PF, UM};
use alloc::vec::Vec;
use libm::{exp, log, sqrt};

/// Measured reference: 74 MHz for a 2 nm junction oxide on a 2 pF qubit.
pub const S_REF_HZ: f64 = 74e6;
pub const C_REF: f64 = 2.0 * PF;
pub const D_REF: f64 = 2.0 * NM;
/// Splittings per μm² per GHz near the top of the log-normal distribution.
pub const DENSITY_PER_UM2_GHZ: f64 = 0.5;

/// `E² / √(1 + E²/E_s²)`.
pub fn saturate(e_sq: f64, e_s: f64) -> f64 {
    e_sq / sqrt(1.0 + e_sq / (e_s * e_s))
}

/// Largest splitting for field-per-volt `e_over_v` (1/m).
pub fn s_max(e_over_v: f64, c: Capacitance) -> Frequency {
    Frequency(S_REF_HZ * sqrt(C_REF / c.0) * D_REF * e_over_v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsOptions {
    /// Oxide thickness; areas scale by `t_ox / 2 nm`.
    pub oxide_thickness: f64,
    /// Field multiplier at the interface; defaults to ε_s/ε_MS.
    pub interface_weight: Option<f64>,
    pub density_per_um2_ghz: f64,
    pub span_ghz: f64,
}

impl Default for TlsOptions {
    fn default() -> Self {
        TlsOptions { oxide_thickness: 3.0 * NM, interface_weight: None, density_per_um2_ghz: DENSITY_PER_UM2_GHZ, span_ghz: 2.0 }
    }
}

impl TlsOptions {
    pub fn area_scale(&self) -> f64 {
        self.oxide_thickness / D_REF
    }

    pub fn weight(&self, stack: &DielectricStack) -> f64 {
        self.interface_weight.unwrap_or(stack.eps_s / stack.eps_ms)
    }

    /// Area at which one splitting is expected inside the span.
    pub fn observable_area_um2(&self) -> f64 {
        1.0 / (self.density_per_um2_ghz * self.span_ghz)
    }
}

/// `(S_max, cumulative area)` pairs, S descending, area ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct TlsSpectrum {
    pub s_max_hz: Vec<f64>,
    pub area_um2: Vec<f64>,
    /// Where each point comes from: r_c for ribbons, y for wires (m).
    pub position: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsSummary {
    pub observable_area_um2: f64,
    pub s_max_hz: f64,
    pub band_hz: (f64, f64),
    pub density_per_ghz: f64,
    pub mean_spacing_mhz: f64,
}

fn interp_loglog(x: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    if x0 == x1 {
        return y0;
    }
    let f = (log(x) - log(x0)) / (log(x1) - log(x0));
    exp(log(y0) + f * (log(y1) - log(y0)))
}

impl TlsSpectrum {
    /// Sorts raw `(S, dA, position)` patches and accumulates areas.
    pub fn from_patches(mut patches: Vec<(f64, f64, f64)>) -> TlsSpectrum {
        patches.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.2.total_cmp(&b.2)));
        let mut acc = 0.0;
        let mut s = Vec::with_capacity(patches.len());
        let mut a = Vec::with_capacity(patches.len());
        let mut p = Vec::with_capacity(patches.len());
        for (sm, da, pos) in patches {
            if !(da > 0.0) {
                continue;
            }
            acc += da;
            s.push(sm);
            a.push(acc);
            p.push(pos);
        }
        TlsSpectrum { s_max_hz: s, area_um2: a, position: p }
    }

    pub fn len(&self) -> usize {
        self.s_max_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_max_hz.is_empty()
    }

    /// Largest splitting still available once `area` has been accumulated.
    pub fn s_at_area(&self, area_um2: f64) -> Result<f64, Error> {
        let (lo, hi) = (self.area_um2[0], *self.area_um2.last().unwrap_or(&0.0));
        if !(area_um2 >= lo && area_um2 <= hi) {
            return Err(Error::Range { what: "spectrum area", value: area_um2, lo, hi });
        }
        let i = self.area_um2.partition_point(|&a| a < area_um2).max(1);
        Ok(interp_loglog(area_um2, self.area_um2[i - 1], self.area_um2[i], self.s_max_hz[i - 1], self.s_max_hz[i]))
    }

    /// Cumulative area of patches with splitting ≥ `s`.
    pub fn area_at(&self, s_hz: f64) -> Result<f64, Error> {
        let hi = self.s_max_hz[0];
        let lo = *self.s_max_hz.last().unwrap_or(&0.0);
        if !(s_hz >= lo && s_hz <= hi) {
            return Err(Error::Range { what: "spectrum splitting", value: s_hz, lo, hi });
        }
        let i = self.s_max_hz.partition_point(|&s| s > s_hz).max(1).min(self.len() - 1);
        Ok(interp_loglog(s_hz, self.s_max_hz[i - 1], self.s_max_hz[i], self.area_um2[i - 1], self.area_um2[i]))
    }

    /// Position of the patch reached at cumulative `area`.
    pub fn position_at_area(&self, area_um2: f64) -> f64 {
        let i = self.area_um2.partition_point(|&a| a < area_um2).min(self.len() - 1);
        self.position[i]
    }

    /// Area-weighted median position of all patches with splitting ≥ `s`.
    pub fn median_position_above(&self, s_hz: f64) -> f64 {
        let n = self.s_max_hz.partition_point(|&s| s >= s_hz).max(1);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| self.position[i].total_cmp(&self.position[j]));
        let total = self.area_um2[n - 1];
        let mut acc = 0.0;
        for i in idx {
            let da = self.area_um2[i] - if i == 0 { 0.0 } else { self.area_um2[i - 1] };
            acc += da;
            if acc >= 0.5 * total {
                return self.position[i];
            }
        }
        self.position[n - 1]
    }

    /// At most `n` points, log-spaced in area, for export.
    pub fn resampled(&self, n: usize) -> TlsSpectrum {
        if self.len() <= n || n < 2 {
            return self.clone();
        }
        let (a0, a1) = (self.area_um2[0], self.area_um2[self.len() - 1]);
        let mut out = TlsSpectrum { s_max_hz: Vec::new(), area_um2: Vec::new(), position: Vec::new() };
        let mut last = usize::MAX;
        for k in 0..n {
            let a = exp(log(a0) + (log(a1) - log(a0)) * k as f64 / (n - 1) as f64);
            let i = self.area_um2.partition_point(|&x| x < a).min(self.len() - 1);
            if i != last {
                out.s_max_hz.push(self.s_max_hz[i]);
                out.area_um2.push(self.area_um2[i]);
                out.position.push(self.position[i]);
                last = i;
            }
        }
        out
    }

    /// Observable splitting, its band and spacing for the given protocol.
    pub fn summary(&self, opts: &TlsOptions) -> Result<TlsSummary, Error> {
        let a_obs = opts.observable_area_um2();
        let s = self.s_at_area(a_obs)?;
        let band = (s / 3.0, s);
        let rho = splitting_density(self, band.0, band.1, opts.density_per_um2_ghz)?;
        Ok(TlsSummary {
            observable_area_um2: a_obs,
            s_max_hz: s,
            band_hz: band,
            density_per_ghz: rho,
            mean_spacing_mhz: 1e3 / rho,
        })
    }
}

/// Splittings per GHz with sizes in `[s1, s2]`: `density · [A(s1) − A(s2)]`.
pub fn splitting_density(spec: &TlsSpectrum, s1: f64, s2: f64, density_per_um2_ghz: f64) -> Result<f64, Error> {
    if !(s1 < s2) {
        return Err(domain("splitting_density", s1, "S1 < S2"));
    }
    Ok(density_per_um2_ghz * (spec.area_at(s1)? - spec.area_at(s2)?))
}

/// Ribbon MS spectrum versus distance r_c from the inner edge.
///
/// Above t/2 the conformal field applies (∼ r_c^−½); below it the corner
/// law (∼ r_c^−⅓) matched at t/2. Area is `r_c · 2ℓ · t_ox/2 nm`.
pub fn ribbon_tls_profile(
    r: &Ribbon,
    stack: &DielectricStack,
    c: Capacitance,
    opts: &TlsOptions,
    points: usize,
) -> Result<TlsSpectrum, Error> {
    StructureSpec::Ribbon(*r).validate().into_result()?;
    let w = opts.weight(stack);
    let h = 0.5 * r.t;
    let e_cut = ribbon::field(r, r.a + h)?;
    let r_lo = 1e-6 * h;
    // the field keeps falling until about mid-gap
    let r_hi = 0.5 * (r.b - r.a);
    let mut patches = Vec::with_capacity(points);
    let mut prev = 0.0;
    for i in 0..points {
        let rc = exp(log(r_lo) + (log(r_hi) - log(r_lo)) * i as f64 / (points - 1) as f64);
        let e = if rc < h { corner_field(e_cut, rc, r.t)? } else { ribbon::field(r, r.a + rc)? };
        let area = rc * 2.0 * r.length * opts.area_scale() / (UM * UM);
        patches.push((s_max(w * e, c).0, area - prev, rc));
        prev = area;
    }
    Ok(TlsSpectrum::from_patches(patches))
}

/// Flat junction-wire geometry for the TLS map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireTlsGeometry {
    pub r0: f64,
    /// 0 for a straight wire.
    pub slope: f64,
    pub d: f64,
    pub t: f64,
}

impl WireTlsGeometry {
    pub fn from_spec(spec: &StructureSpec) -> Option<WireTlsGeometry> {
        match *spec {
            StructureSpec::StraightWire(w) => Some(WireTlsGeometry { r0: w.r, slope: 0.0, d: w.d, t: w.t }),
            StructureSpec::TaperedWire(w) => Some(WireTlsGeometry { r0: w.r0, slope: w.slope, d: w.d, t: w.t }),
            _ => None,
        }
    }

    fn half_width(&self, y: f64) -> f64 {
        if self.slope > 0.0 {
            taper_half_width(self.r0, self.slope, self.t, y)
        } else {
            self.r0
        }
    }
}

/// MS spectrum of both wires.
///
/// The wire is cut into `sections` strips along y (log-spaced). Across each
/// strip the flat-strip profile `E = E_fw(y)/sin θ`, `x = −r̄ cos θ`, gives
/// the area above a field `E'` in closed form, `2r̄(1 − √(1 − q²))` with
/// `q = E_fw/E'`, so only the y discretisation is numerical.
pub fn wire_tls_spectrum(
    g: &WireTlsGeometry,
    stack: &DielectricStack,
    c: Capacitance,
    opts: &TlsOptions,
    sections: usize,
) -> Result<TlsSpectrum, Error> {
    if sections < 10_000 {
        return Err(domain("wire_tls_spectrum", sections as f64, "at least 1e4 sections"));
    }
    if !(g.d > 2.0 * g.r0 && g.r0 > 0.0) {
        return Err(domain("wire_tls_spectrum", g.d, "d > 2 r̄0 > 0"));
    }
    let per_volt = s_max(opts.weight(stack), c).0;
    let scale = opts.area_scale() / (UM * UM);
    let (y0, y1) = (2.0 * g.r0, g.d);
    let ln = log(y1 / y0);
    // (two-wire area weight, half-width, S at the strip centre, y)
    let strips: Vec<(f64, f64, f64, f64)> = (0..sections)
        .map(|j| {
            let ya = y0 * exp(ln * j as f64 / sections as f64);
            let yb = y0 * exp(ln * (j + 1) as f64 / sections as f64);
            let y = sqrt(ya * yb);
            let rb = g.half_width(y);
            (2.0 * (yb - ya) * scale, rb, per_volt * flat_wire_field(rb, y), y)
        })
        .collect();
    let s_lo = strips.iter().map(|s| s.2).fold(f64::INFINITY, f64::min);
    let s_hi = 1e4 * strips.iter().map(|s| s.2).fold(0.0, f64::max);
    let mut out = TlsSpectrum { s_max_hz: Vec::new(), area_um2: Vec::new(), position: Vec::new() };
    let (mut a_prev, mut ya_prev) = (0.0, 0.0);
    for k in 0..WIRE_SPECTRUM_POINTS {
        let s = exp(log(s_hi) + (log(s_lo) - log(s_hi)) * k as f64 / (WIRE_SPECTRUM_POINTS - 1) as f64);
        let (mut a, mut ya) = (0.0, 0.0);
        for &(wy, rb, s0, y) in &strips {
            let q = s0 / s;
            let width = if q >= 1.0 { 2.0 * rb } else { 2.0 * rb * (q * q / (1.0 + sqrt(1.0 - q * q))) };
            a += wy * width;
            ya += wy * width * y;
        }
        if a > a_prev {
            out.s_max_hz.push(s);
            out.area_um2.push(a);
            out.position.push((ya - ya_prev) / (a - a_prev));
            a_prev = a;
            ya_prev = ya;
        }
    }
    Ok(out)
}

/// S grid resolution of wire spectra (log-spaced over four decades).
pub const WIRE_SPECTRUM_POINTS: usize = 800;

/// Parallel plate: field V/(s ε_MA) over an area `t_ox/2 nm · ℓ w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateSplitting {
    pub effective_distance: f64,
    pub s_max: Frequency,
    pub area_um2: f64,
}

pub fn parallel_plate_splitting(p: &ParallelPlate, stack: &DielectricStack, c: Capacitance, opts: &TlsOptions) -> PlateSplitting {
    let deff = p.s * stack.eps_ma;
    PlateSplitting {
        effective_distance: deff,
        s_max: s_max(1.0 / deff, c),
        area_um2: opts.area_scale() * p.length * p.w / (UM * UM),
    }
}

/// Surface or volume saturation integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationKind {
    Surface,
    Volume,
}

/// Loss-weighted energy versus saturation field for one geometry.
///
/// Values are `∫ saturate(|E|²)` normalised by ε (V²/m for surfaces with the
/// ½ε prefactor folded in, V² for volumes), per unit length.
#[derive(Debug, Clone, PartialEq)]
pub struct SaturationCurve {
    pub kind: SaturationKind,
    pub a: f64,
    pub e_s: Vec<f64>,
    pub energy: Vec<f64>,
    /// `(3 E_c(0), unsaturated energy)` marker.
    pub crossover: (f64, f64),
}

const SAT_REL: f64 = 1e-8;

/// Single-ended coplanar surface field per volt anywhere in the plane.
fn coplanar_plane_field(cp: &Coplanar, kp: f64, x: f64, y: f64) -> f64 {
    let d = |x0: f64| sqrt((x - x0) * (x - x0) + y * y);
    cp.b / (kp * sqrt(d(cp.a) * d(-cp.a) * d(cp.b) * d(-cp.b)))
}

/// Surface integral over the metal faces (top and bottom, both sides),
/// thin-film cutoff at t/2 and no corner term.
pub fn saturated_surface_energy(cp: &Coplanar, voltage: f64, e_s: f64) -> Result<f64, Error> {
    let h = 0.5 * cp.t;
    let f = |x: f64| {
        let e = voltage * coplanar::field(cp, x).unwrap_or(0.0);
        saturate(e * e, e_s)
    };
    let inner = integrate(f, 0.0, cp.a - h, 0.0, SAT_REL)?;
    let near = integrate(f, cp.b + h, 2.0 * cp.b, 0.0, SAT_REL)?;
    let far = integrate(|u: f64| f(2.0 * cp.b / (1.0 - u)) * 2.0 * cp.b / ((1.0 - u) * (1.0 - u)), 0.0, 1.0, 0.0, SAT_REL)?;
    // (ε/2)·4 faces → 2 ∫
    Ok(2.0 * (inner + near + far))
}

/// `∫∫ saturate(|E|²) dA` over the whole plane (vacuum on both sides).
pub fn saturated_volume_energy(cp: &Coplanar, voltage: f64, e_s: f64) -> Result<f64, Error> {
    let kp = k_prime_modulus(cp.a / cp.b)?;
    let b = cp.b;
    let inner_y = |x: f64| {
        let g = |y: f64| {
            let e = voltage * coplanar_plane_field(cp, kp, x, y);
            saturate(e * e, e_s)
        };
        let near = integrate(g, 0.0, b, 0.0, SAT_REL).unwrap_or(f64::NAN);
        let far = integrate(|u: f64| g(b / (1.0 - u)) * b / ((1.0 - u) * (1.0 - u)), 0.0, 1.0, 0.0, SAT_REL)
            .unwrap_or(f64::NAN);
        near + far
    };
    let body = integrate_pieces(inner_y, &[0.0, cp.a, cp.b, 2.0 * cp.b], 0.0, SAT_REL)?;
    let tail = integrate(
        |u: f64| inner_y(2.0 * b / (1.0 - u)) * 2.0 * b / ((1.0 - u) * (1.0 - u)),
        0.0,
        1.0,
        0.0,
        SAT_REL,
    )?;
    let v = 4.0 * (body + tail);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NoConvergence { what: "saturated_volume_energy", iterations: 0 })
    }
}

/// Saturation curves for single-ended coplanar resonators driven at `voltage`.
pub fn saturation_sweep(
    specs: &[Coplanar],
    e_s_grid: &[f64],
    voltage: f64,
    kind: SaturationKind,
) -> Result<Vec<SaturationCurve>, Error> {
    let mut out = Vec::with_capacity(specs.len());
    for cp in specs {
        let cp = Coplanar { single_ended: true, ..*cp };
        StructureSpec::Coplanar(cp).validate().into_result()?;
        let mut energy = Vec::with_capacity(e_s_grid.len());
        for &es in e_s_grid {
            energy.push(match kind {
                SaturationKind::Surface => saturated_surface_energy(&cp, voltage, es)?,
                SaturationKind::Volume => saturated_volume_energy(&cp, voltage, es)?,
            });
        }
        let e0 = voltage * coplanar::field(&cp, 0.0)?;
        let plateau = match kind {
            // unsaturated single-ended metal energy with the thin-film cutoff
            SaturationKind::Surface => saturated_surface_energy(&cp, voltage, f64::INFINITY)?,
            SaturationKind::Volume => 4.0 * ck_ratio(cp.a / cp.b)? * voltage * voltage,
        };
        out.push(SaturationCurve { kind, a: cp.a, e_s: e_s_grid.to_vec(), energy, crossover: (3.0 * e0, plateau) });
    }
    Ok(out)
}
