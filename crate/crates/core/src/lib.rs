//! Closed-form electrostatics for superconducting qubit surface loss.
//!
//! Everything here is pure arithmetic on SI values: complete elliptic
//! integrals, the conformal-mapping fields of the standard capacitor
//! geometries, surface energies with finite-thickness corner constants,
//! participation ratios, and two-level-state splitting estimates.
//!
//! The crate is `no_std` (it needs `alloc` for profiles and spectra).
//! Enable the `std` feature to get `std::error::Error` impls.
#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
pub mod design;
pub mod error;
pub mod optimize;
pub mod participation;
pub mod quad;
pub mod special;
pub mod stack;
pub mod structure;
pub mod tls;
pub mod units;

pub use design::{assemble_design, AssemblyOptions, DesignAssembly, Normalization};
pub use error::{Error, ValidationError, ValidationErrors};
pub use participation::{
    CornerConstants, CornerMode, ParticipationBreakdown, SurfaceEnergyPair, SurfaceIntegrals,
};
pub use stack::{DielectricStack, InterfaceWeights};
pub use structure::{StructureKind, StructureSpec};
pub use units::{capacitance_to_length, Area, Capacitance, Energy, Field, Frequency, Length, EPS0};
