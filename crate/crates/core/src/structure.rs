//! Qubit capacitor and junction-wire geometries.
//!
//! All lengths in metres. Ribbon-type structures are described by the
//! half-width `a` of the inner strip (or half the centre gap), the outer
//! edge `b`, and optionally a ground edge `c`, all measured from the
//! symmetry line. `length` is the extent ℓ along the translation axis.

use crate::error::ValidationErrors;

/// Two facing plates a distance `s` apart, width `w`, length ℓ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelPlate {
    pub s: f64,
    pub w: f64,
    pub length: f64,
}

/// Two coplanar strips occupying a < |x| < b, driven differentially.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ribbon {
    pub a: f64,
    pub b: f64,
    pub length: f64,
    pub t: f64,
}

/// Centre strip |x| < a inside a ground plane |x| > b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coplanar {
    pub a: f64,
    pub b: f64,
    pub length: f64,
    pub t: f64,
    pub single_ended: bool,
}

/// Ribbon with a surrounding ground plane at |x| > c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RibbonWithGround {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub length: f64,
    pub t: f64,
}

/// Two thin wires of half-width r̄ and length d meeting at the junction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightWire {
    pub r: f64,
    pub d: f64,
    pub t: f64,
}

/// Wires whose half-width grows as `max(r̄0, (y − 5t)·S)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaperedWire {
    pub r0: f64,
    pub slope: f64,
    pub d: f64,
    pub t: f64,
}

/// Steeper tapers barely lower the field, so slopes are capped here.
pub const MAX_TAPER_SLOPE: f64 = 0.45;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureKind {
    ParallelPlate,
    Ribbon,
    Coplanar,
    RibbonWithGround,
    StraightWire,
    TaperedWire,
}

impl StructureKind {
    pub fn label(self) -> &'static str {
        match self {
            StructureKind::ParallelPlate => "parallel plate",
            StructureKind::Ribbon => "ribbon",
            StructureKind::Coplanar => "coplanar",
            StructureKind::RibbonWithGround => "ribbon with ground",
            StructureKind::StraightWire => "straight wires",
            StructureKind::TaperedWire => "tapered wires",
        }
    }

    pub fn is_wire(self) -> bool {
        matches!(self, StructureKind::StraightWire | StructureKind::TaperedWire)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StructureSpec {
    ParallelPlate(ParallelPlate),
    Ribbon(Ribbon),
    Coplanar(Coplanar),
    RibbonWithGround(RibbonWithGround),
    StraightWire(StraightWire),
    TaperedWire(TaperedWire),
}

fn positive(errs: &mut ValidationErrors, name: &str, v: f64) {
    if !(v > 0.0 && v.is_finite()) {
        errs.push(name, "must be a positive finite length");
    }
}

impl StructureSpec {
    pub fn kind(&self) -> StructureKind {
        match self {
            StructureSpec::ParallelPlate(_) => StructureKind::ParallelPlate,
            StructureSpec::Ribbon(_) => StructureKind::Ribbon,
            StructureSpec::Coplanar(_) => StructureKind::Coplanar,
            StructureSpec::RibbonWithGround(_) => StructureKind::RibbonWithGround,
            StructureSpec::StraightWire(_) => StructureKind::StraightWire,
            StructureSpec::TaperedWire(_) => StructureKind::TaperedWire,
        }
    }

    /// Metal film thickness; the plate model has none.
    pub fn metal_thickness(&self) -> Option<f64> {
        match self {
            StructureSpec::ParallelPlate(_) => None,
            StructureSpec::Ribbon(r) => Some(r.t),
            StructureSpec::Coplanar(c) => Some(c.t),
            StructureSpec::RibbonWithGround(g) => Some(g.t),
            StructureSpec::StraightWire(w) => Some(w.t),
            StructureSpec::TaperedWire(w) => Some(w.t),
        }
    }

    /// Every violated invariant, not just the first.
    pub fn validate(&self) -> ValidationErrors {
        let mut e = ValidationErrors::default();
        match *self {
            StructureSpec::ParallelPlate(p) => {
                positive(&mut e, "s", p.s);
                positive(&mut e, "w", p.w);
                positive(&mut e, "length", p.length);
                if p.s > 0.0 && p.w > 0.0 && p.s >= p.w {
                    e.push("s", "plate separation must be small against the width");
                }
            }
            StructureSpec::Ribbon(Ribbon { a, b, length, t })
            | StructureSpec::Coplanar(Coplanar { a, b, length, t, .. }) => {
                positive(&mut e, "a", a);
                positive(&mut e, "b", b);
                positive(&mut e, "length", length);
                positive(&mut e, "t", t);
                if a >= b {
                    e.push("a", "inner edge a must be below outer edge b");
                }
                if t >= a {
                    e.push("t", "metal thickness must be below a");
                }
            }
            StructureSpec::RibbonWithGround(g) => {
                positive(&mut e, "a", g.a);
                positive(&mut e, "b", g.b);
                positive(&mut e, "c", g.c);
                positive(&mut e, "length", g.length);
                positive(&mut e, "t", g.t);
                if g.a >= g.b {
                    e.push("a", "inner edge a must be below outer edge b");
                }
                if g.c <= g.b {
                    e.push("c", "ground edge c must lie beyond b");
                }
                if g.t >= g.a {
                    e.push("t", "metal thickness must be below a");
                }
            }
            StructureSpec::StraightWire(w) => {
                positive(&mut e, "r", w.r);
                positive(&mut e, "d", w.d);
                positive(&mut e, "t", w.t);
                if w.d <= 2.0 * w.r {
                    e.push("d", "wire length must exceed 2 r");
                }
                if w.t > 2.0 * w.r {
                    e.push("t", "metal thickness must not exceed the wire width 2 r");
                }
            }
            StructureSpec::TaperedWire(w) => {
                positive(&mut e, "r0", w.r0);
                positive(&mut e, "d", w.d);
                positive(&mut e, "t", w.t);
                if !(w.slope > 0.0) {
                    e.push("slope", "taper slope must be > 0");
                } else if w.slope > MAX_TAPER_SLOPE {
                    e.push("slope", "taper slope above 0.45 does not lower the field further");
                }
                if w.d <= 5.0 * w.t {
                    e.push("d", "wire length must exceed 5 t, where the taper starts");
                }
            }
        }
        e
    }

    /// Same shape with every geometric length multiplied by `f`.
    pub fn scaled(&self, f: f64) -> StructureSpec {
        match *self {
            StructureSpec::ParallelPlate(p) => StructureSpec::ParallelPlate(ParallelPlate { s: p.s * f, w: p.w * f, length: p.length * f }),
            StructureSpec::Ribbon(r) => StructureSpec::Ribbon(Ribbon { a: r.a * f, b: r.b * f, length: r.length * f, t: r.t * f }),
            StructureSpec::Coplanar(c) => StructureSpec::Coplanar(Coplanar { a: c.a * f, b: c.b * f, length: c.length * f, t: c.t * f, ..c }),
            StructureSpec::RibbonWithGround(g) => StructureSpec::RibbonWithGround(RibbonWithGround {
                a: g.a * f,
                b: g.b * f,
                c: g.c * f,
                length: g.length * f,
                t: g.t * f,
            }),
            StructureSpec::StraightWire(w) => StructureSpec::StraightWire(StraightWire { r: w.r * f, d: w.d * f, t: w.t * f }),
            StructureSpec::TaperedWire(w) => StructureSpec::TaperedWire(TaperedWire { r0: w.r0 * f, d: w.d * f, t: w.t * f, ..w }),
        }
    }
}
