use surfloss_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BemError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("mesh has {unknowns} unknowns; the dense solver is capped at {cap}, coarsen the grading")]
    TooLarge { unknowns: usize, cap: usize },
    #[error("elements {i} and {j} coincide")]
    Coincident { i: usize, j: usize },
    #[error("element {index} has non-positive size {size}")]
    Degenerate { index: usize, size: f64 },
    #[error("mesh: {0}")]
    Mesh(String),
    #[error("linear solve failed: relative residual {residual:e}, condition estimate {condition:e}")]
    Solve { residual: f64, condition: f64 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
