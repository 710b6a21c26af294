//! Surface-charge electrostatics used to check the closed forms.
//!
//! Conductor surfaces are cut into straight elements carrying uniform
//! charge; a dense potential matrix maps charges to element potentials and
//! `q = M⁻¹ V` gives charges, capacitances, surface fields and energies.
//! Three kernels cover planar cross-sections, axisymmetric wires and flat
//! wires. All solves use ε = 1; scale by the dielectric afterwards.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corner;
pub mod dump;
pub mod error;
pub mod field;
pub mod kernels;
pub mod mesh;
pub mod solve;
pub mod suites;

pub use corner::{corner_constant_curve, extract_corner_constant, CornerConstant, CornerOptions};
pub use error::BemError;
pub use kernels::{build_matrix, PotentialMatrix, MAX_UNKNOWNS};
pub use mesh::{EdgeStyle, Element, Grading, Kernel, Mesh, Surface};
pub use solve::{solve, solve_mesh, ChargeSolution, Factorization};
pub use suites::{run_suite, Check, Suite};
