//! Bounding-pair configurations and their Johnson images.
//!
//! A bounding pair in standard position is recorded homologically by a
//! support set `S` and a class index `j`, with `τ = (Σ_{i∈S} a_i∧b_i) ∧ a_j`.
//! Abelian cycles of disjoint pairs map to wedges of these under `ψₙ`; the
//! contraction pipelines `Φₙ`, `Ψₙ` and the certificates built on them are
//! all exact.

mod config;
mod pipeline;
mod witnesses;

use thiserror::Error;

use crate::symplectic::SymplecticError;
use crate::tensor::TensorError;

pub use config::{
    glue_product, lagrangian_certificate, psi2_tensor, psi_image, random_configuration, rho,
    sample_configurations, sigma, tau_bp, BPConfiguration, StandardBoundingPair, TrulyNestedFamily,
};
pub use pipeline::{lemma42_scalar, phi_pipeline, psi_pipeline, psi_scalar, Lemma42Certificate};
pub use witnesses::{
    claim51_check, claim52_closed_form, claim52_coefficient, claim52_coefficient_with_cap,
    psi2_fundamental, theorem1_witness, theorem1_witness_with_cap, theorem2_pipeline, Block,
    Psi2Certificate, Theorem1Certificate, Theorem2Certificate, CLAIM52_SIGN,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JohnsonError {
    #[error(
        "invariant `indices in range` violated: handle {index} does not exist at genus {genus}"
    )]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("invariant `class outside support` violated: class index {0} lies in its own support")]
    ClassInSupport(usize),
    #[error("invariant `distinct class indices` violated: class index {0} is used twice")]
    RepeatedClass(usize),
    #[error("invariant `disjoint or nested` violated by pairs {first} and {second}")]
    Incompatible { first: usize, second: usize },
    #[error("invariant `lagrangian certificate` violated by pair {0}")]
    NotLagrangian(usize),
    #[error("invariant `nesting chain` violated at pair {0}")]
    NotNested(usize),
    #[error("pipeline output is not proportional to the expected direction: {0}")]
    NotProportional(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

impl JohnsonError {
    /// Name of the configuration invariant this error reports, if any.
    pub fn invariant(&self) -> Option<&'static str> {
        Some(match self {
            JohnsonError::IndexOutOfRange { .. } => "indices in range",
            JohnsonError::ClassInSupport(_) => "class outside support",
            JohnsonError::RepeatedClass(_) => "distinct class indices",
            JohnsonError::Incompatible { .. } => "disjoint or nested",
            JohnsonError::NotLagrangian(_) => "lagrangian certificate",
            JohnsonError::NotNested(_) => "nesting chain",
            _ => return None,
        })
    }
}
