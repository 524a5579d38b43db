//! Representation theory of Sp(2g).

mod decompose;
mod dimension;
mod lemma21;
mod partition;
mod schur_weyl;
pub mod weights;
mod young;

use thiserror::Error;

use crate::symplectic::SymplecticError;
use crate::tensor::TensorError;

pub use decompose::{decompose, decompose_with_cap, DecompositionReport};
pub use dimension::{symmetric_group_dimension, weyl_dimension, IrrepLabel};
pub use lemma21::{a_word, lemma21_reduce, replay, ReductionStep};
pub use partition::{Partition, PartitionError};
pub use schur_weyl::{
    schur_weyl_check, schur_weyl_sum, traceless_dimension_by_insertion,
    traceless_dimension_by_kernel, SchurWeylCheck,
};
pub use weights::{character_estimate, freudenthal, shape_character, weight_multiplicities};
pub use young::{generator_tensor, young_symmetrizer_apply, YoungTableau};

#[derive(Debug, Error)]
pub enum RepError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("estimated {estimated} weight-table entries exceeds the cap of {cap}")]
    TermCap { estimated: u128, cap: u64 },
    #[error("multiplicity overflowed u64")]
    Overflow,
    #[error("{0}")]
    Domain(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
