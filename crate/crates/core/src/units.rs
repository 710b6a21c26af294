//! SI newtypes for the few quantities that cross module boundaries.
//!
//! Geometry inside structure specs is plain `f64` metres; these wrappers
//! are used where a bare number would be ambiguous (capacitance versus
//! its equivalent length, splitting frequencies, areas in spectra).

use core::ops::{Add, Mul};

/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;

pub const UM: f64 = 1e-6;
pub const NM: f64 = 1e-9;
pub const FF: f64 = 1e-15;
pub const PF: f64 = 1e-12;

macro_rules! si_newtype {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
        pub struct $name(pub f64);

        impl $name {
            pub const fn si(self) -> f64 {
                self.0
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                $name(self.0 * rhs)
            }
        }
    };
}

si_newtype!(
    /// Metres.
    Length
);
si_newtype!(
    /// Square metres.
    Area
);
si_newtype!(
    /// V/m, or 1/m when normalised per volt.
    Field
);
si_newtype!(
    /// Joules (per metre for 2-D cross sections).
    Energy
);
si_newtype!(
    /// Farads.
    Capacitance
);
si_newtype!(
    /// Hertz.
    Frequency
);

impl Length {
    pub fn from_um(v: f64) -> Self {
        Length(v * UM)
    }
    pub fn um(self) -> f64 {
        self.0 / UM
    }
    pub fn mm(self) -> f64 {
        self.0 * 1e3
    }
}

impl Area {
    pub fn from_um2(v: f64) -> Self {
        Area(v * UM * UM)
    }
    pub fn um2(self) -> f64 {
        self.0 / (UM * UM)
    }
}

impl Capacitance {
    pub fn from_ff(v: f64) -> Self {
        Capacitance(v * FF)
    }
    pub fn from_pf(v: f64) -> Self {
        Capacitance(v * PF)
    }
    pub fn ff(self) -> f64 {
        self.0 / FF
    }
}

impl Frequency {
    pub fn from_mhz(v: f64) -> Self {
        Frequency(v * 1e6)
    }
    pub fn khz(self) -> f64 {
        self.0 / 1e3
    }
    pub fn mhz(self) -> f64 {
        self.0 / 1e6
    }
}

/// `C = ε0 L`: the length whose vacuum permittivity equals the capacitance.
pub fn capacitance_to_length(c: Capacitance) -> Length {
    Length(c.0 / EPS0)
}

/// Inverse of [`capacitance_to_length`].
pub fn length_to_capacitance(l: Length) -> Capacitance {
    Capacitance(l.0 * EPS0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hundred_femtofarad_is_eleven_mm() {
        let l = capacitance_to_length(Capacitance::from_ff(100.0));
        assert!((l.mm() - 11.3).abs() < 0.05, "{}", l.mm());
        assert!((l.mm() - 100e-15 / 8.8541878128e-12 * 1e3).abs() < 1e-12);
    }

    #[test]
    fn identity_and_two_pf() {
        assert!((capacitance_to_length(Capacitance(EPS0)).0 - 1.0).abs() < 1e-15);
        let l = capacitance_to_length(Capacitance::from_pf(2.0));
        assert!((l.mm() - 225.9).abs() < 0.05);
        assert!((length_to_capacitance(l).0 / 2e-12 - 1.0).abs() < 1e-15);
    }
}
