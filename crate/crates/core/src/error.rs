use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One failed invariant, addressed by a dotted field path.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// All problems found in one validation pass.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl ValidationErrors {
    pub fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.0.push(ValidationError { field: field.into(), message: message.into() });
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: ValidationErrors) {
        for e in other.0 {
            let field = if prefix.is_empty() { e.field } else { alloc::format!("{prefix}.{}", e.field) };
            self.0.push(ValidationError { field, message: e.message });
        }
    }

    pub fn into_result(self) -> Result<(), Error> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what}: argument {value} outside domain ({expected})")]
    Domain { what: &'static str, value: f64, expected: &'static str },
    #[error("invalid input: {0}")]
    Validation(ValidationErrors),
    #[error("{what}: {value} outside tabulated range [{lo}, {hi}]")]
    Range { what: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("{what}: no convergence after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
}

pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain { what, value, expected }
}
