// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("{what} is not Hermitian (residual {residual:e})")]
    NotHermitian { what: String, residual: f64 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("basis is not orthonormal under Tr(X_i X_j) = 2 delta_ij (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("sum of squared generators is not proportional to the identity; block constants {values:?}")]
    NotProportionalToIdentity { values: Vec<f64> },

    #[error("basis is not pseudo-orthonormal: Killing form is not a multiple of the identity")]
    NotPseudoOrthonormal,

    #[error("coefficient matrix has eigenvalue {min_eigenvalue:e} < 0")]
    UnphysicalCoefficients { min_eigenvalue: f64 },

    #[error("positivity lost at t = {time}: smallest eigenvalue {min_eigenvalue:e} (step too large?)")]
    PositivityViolation { time: f64, min_eigenvalue: f64 },

    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
