//! Exact-arithmetic engine for symplectic multilinear algebra and the
//! images of Torelli abelian cycles under the Johnson homomorphism.
//!
//! The crate is organised bottom-up:
//!
//! * [`symplectic`]: the genus-`g` symplectic space, its basis labels, the
//!   pairing and the elementary symplectic transvections.
//! * [`tensor`]: sparse tensors over exact rationals living in composite
//!   shapes built from `H`, exterior powers and tensor products, together
//!   with contractions, group actions and torus-weight analysis.
//! * [`reptheory`]: partitions, Weyl and hook-length dimensions, Freudenthal
//!   multiplicities, decompositions into irreducibles and Young symmetrizers.
//! * [`johnson`]: bounding-pair configurations, their `ψₙ` images, the
//!   contraction pipelines `Φₙ`/`Ψₙ` and the executable certificates built
//!   on top of them.
//!
//! All scalars are [`Scalar`] (big rationals); nothing in the crate touches
//! floating point.

pub mod johnson;
pub mod linalg;
pub mod par;
pub mod reptheory;
pub mod symplectic;
pub mod tensor;

pub use num_bigint::{BigInt, BigUint};

/// Exact rational scalar used for every coefficient.
pub type Scalar = num_rational::BigRational;

/// Default cap on the number of sparse terms an operation may produce.
pub const DEFAULT_TERM_CAP: u64 = 10_000_000;

/// Convenience constructor for integral scalars.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Convenience constructor for `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}
