//! Multi-structure designs sharing one qubit capacitance.
//!
//! Participation ratios normalise by the total capacitor energy, so every
//! structure in a design is evaluated with the same `L = C/ε0`.

use crate::analytic::{self, AnalyticOptions};
use crate::error::{Error, ValidationErrors};
use crate::participation::ParticipationBreakdown;
use crate::stack::DielectricStack;
use crate::structure::StructureSpec;
use crate::units::{capacitance_to_length, Capacitance, Length};
use alloc::format;
use alloc::vec::Vec;

/// Where the shared capacitance comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Sum of structure capacitances; wires optional.
    Sum { include_wires: bool },
    /// A fixed qubit capacitance, e.g. 100 fF for side-by-side comparisons.
    Fixed(Capacitance),
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::Sum { include_wires: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AssemblyOptions {
    pub analytic: AnalyticOptions,
    pub normalization: Normalization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignAssembly {
    pub structures: Vec<StructureSpec>,
    pub capacitance: Capacitance,
    pub length: Length,
    pub breakdowns: Vec<ParticipationBreakdown>,
    pub total_loss: f64,
}

impl DesignAssembly {
    pub fn totals(&self) -> (f64, f64, f64) {
        self.breakdowns.iter().fold((0.0, 0.0, 0.0), |t, b| (t.0 + b.p_ma, t.1 + b.p_ms, t.2 + b.p_sa))
    }
}

/// Validates everything first (errors are collected), then evaluates each
/// structure at the shared L.
pub fn assemble_design(
    structures: &[StructureSpec],
    stack: &DielectricStack,
    opts: &AssemblyOptions,
) -> Result<DesignAssembly, Error> {
    let mut errs = ValidationErrors::default();
    if structures.is_empty() {
        errs.push("structures", "design needs at least one structure");
    }
    errs.extend_prefixed("stack", stack.validate());
    for (i, s) in structures.iter().enumerate() {
        let prefix = format!("structures[{i}]");
        errs.extend_prefixed(&prefix, s.validate());
        if let Some(t) = s.metal_thickness() {
            errs.extend_prefixed("stack", stack.validate_against_metal(t));
        }
    }
    if let Normalization::Fixed(c) = opts.normalization {
        if !(c.0 > 0.0 && c.0.is_finite()) {
            errs.push("capacitance", "target capacitance must be > 0");
        }
    }
    errs.into_result()?;

    let caps = structures
        .iter()
        .map(|s| analytic::capacitance(s, stack.eps_s))
        .collect::<Result<Vec<_>, _>>()?;
    let capacitance = match opts.normalization {
        Normalization::Fixed(c) => c,
        Normalization::Sum { include_wires } => Capacitance(
            structures
                .iter()
                .zip(&caps)
                .filter(|(s, _)| include_wires || !s.kind().is_wire())
                .map(|(_, c)| c.0)
                .sum(),
        ),
    };
    if !(capacitance.0 > 0.0) {
        let mut e = ValidationErrors::default();
        e.push("structures", "no capacitance left to normalise by (wires excluded?)");
        return Err(Error::Validation(e));
    }
    let length = capacitance_to_length(capacitance);
    let breakdowns = structures
        .iter()
        .map(|s| analytic::evaluate(s, stack, length, &opts.analytic))
        .collect::<Result<Vec<_>, _>>()?;
    let total_loss = breakdowns.iter().map(|b| b.loss(stack)).sum();
    Ok(DesignAssembly { structures: structures.to_vec(), capacitance, length, breakdowns, total_loss })
}
